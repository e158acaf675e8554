//! Truncated asymptotic expansions in powers of `1/n`.
//!
//! An [`AsymptoticSeries`] stores `c_0 + c_1/n + ... + c_K/n^K` and stands
//! for that sum plus `O(n^-(K+1))`. Coefficients are either exact rationals
//! or [`ParamPoly`] values, i.e. polynomials in the family parameters `a`
//! and `b`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, rat, to_fraction_string, Rational};

/// Default truncation order for internal expansions.
pub const DEFAULT_ORDER: usize = 8;

/// Highest power of the digamma tail that is stored.
pub const DIGAMMA_MAX_ORDER: usize = 6;

const PARAM_DEGREE_BOUND: u32 = 2;

/// Coefficient ring of an [`AsymptoticSeries`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Zero {
    fn from_rational(q: Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn try_mul(&self, other: &Self) -> Result<Self>;
}

impl Coefficient for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
}

/// Polynomial in the formal symbols `a`, `b` with total degree at most 2.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamPoly {
    // (deg_a, deg_b) -> coefficient; zero coefficients are never stored.
    terms: BTreeMap<(u32, u32), Rational>,
}

impl ParamPoly {
    pub fn constant(q: Rational) -> Self {
        let mut p = ParamPoly::default();
        p.insert((0, 0), q);
        p
    }

    /// The symbol `a`.
    pub fn a() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    /// The symbol `b`.
    pub fn b() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn monomial(deg_a: u32, deg_b: u32, coeff: Rational) -> Self {
        assert!(
            deg_a + deg_b <= PARAM_DEGREE_BOUND,
            "parameter degree bound exceeded"
        );
        let mut p = ParamPoly::default();
        p.insert((deg_a, deg_b), coeff);
        p
    }

    /// `ca*a + cb*b + c0`.
    pub fn linear(ca: Rational, cb: Rational, c0: Rational) -> Self {
        let mut p = ParamPoly::default();
        p.insert((1, 0), ca);
        p.insert((0, 1), cb);
        p.insert((0, 0), c0);
        p
    }

    fn insert(&mut self, key: (u32, u32), coeff: Rational) {
        if coeff.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, coeff);
        }
    }

    pub fn coeff(&self, deg_a: u32, deg_b: u32) -> Rational {
        self.terms
            .get(&(deg_a, deg_b))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.coeff(0, 0)),
            _ => None,
        }
    }

    /// `(coefficient of a, coefficient of b, constant)` when the degree is
    /// at most one.
    pub fn linear_parts(&self) -> Option<(Rational, Rational, Rational)> {
        if self.degree().unwrap_or(0) > 1 {
            return None;
        }
        Some((self.coeff(1, 0), self.coeff(0, 1), self.coeff(0, 0)))
    }

    pub fn depends_on_a(&self) -> bool {
        self.terms.keys().any(|(i, _)| *i > 0)
    }

    pub fn depends_on_b(&self) -> bool {
        self.terms.keys().any(|(_, j)| *j > 0)
    }

    /// Substitutes the given values; unspecified symbols stay formal.
    pub fn substitute(&self, a: Option<&Rational>, b: Option<&Rational>) -> ParamPoly {
        let mut out = ParamPoly::default();
        for (&(i, j), c) in &self.terms {
            let mut coeff = c.clone();
            let (mut ei, mut ej) = (i, j);
            if let Some(a) = a {
                coeff *= crate::rational::pow(a, i);
                ei = 0;
            }
            if let Some(b) = b {
                coeff *= crate::rational::pow(b, j);
                ej = 0;
            }
            let prev = out.coeff(ei, ej);
            out.insert((ei, ej), prev + coeff);
        }
        out
    }

    /// Numeric value once both symbols are given.
    pub fn evaluate(&self, a: &Rational, b: &Rational) -> Rational {
        self.substitute(Some(a), Some(b))
            .as_constant()
            .expect("fully substituted")
    }
}

impl Zero for ParamPoly {
    fn zero() -> Self {
        ParamPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::ops::Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, other: ParamPoly) -> ParamPoly {
        self.plus(&other)
    }
}

impl Coefficient for ParamPoly {
    fn from_rational(q: Rational) -> Self {
        ParamPoly::constant(q)
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            let prev = out.coeff(k.0, k.1);
            out.insert(k, prev + c);
        }
        out
    }
    fn negate(&self) -> Self {
        self.scale(&-Rational::one())
    }
    fn scale(&self, q: &Rational) -> Self {
        let mut out = ParamPoly::default();
        for (&k, c) in &self.terms {
            out.insert(k, c * q);
        }
        out
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        let mut out = ParamPoly::default();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let key = (i1 + i2, j1 + j2);
                if key.0 + key.1 > PARAM_DEGREE_BOUND {
                    return Err(Error::DegreeOverflow(key.0 + key.1));
                }
                let prev = out.coeff(key.0, key.1);
                out.insert(key, prev + c1 * c2);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest degree first, `a` before `b`, constant last.
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|x, y| (y.0 + y.1).cmp(&(x.0 + x.1)).then(y.0.cmp(&x.0)));
        let mut first = true;
        for (i, j) in keys {
            let c = &self.terms[&(i, j)];
            let symbol = match (i, j) {
                (0, 0) => String::new(),
                (1, 0) => "a".into(),
                (0, 1) => "b".into(),
                (2, 0) => "a^2".into(),
                (0, 2) => "b^2".into(),
                _ => "a*b".into(),
            };
            let mag = c.abs();
            let body = if symbol.is_empty() {
                to_fraction_string(&mag)
            } else if mag.is_one() {
                symbol
            } else {
                format!("{}*{}", to_fraction_string(&mag), symbol)
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// `sum_{k=0}^{K} c_k n^-k + O(n^-(K+1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> AsymptoticSeries<C> {
    pub fn zero(order: usize) -> Self {
        AsymptoticSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    /// Series from coefficients `c_0, c_1, ...`, padded or truncated to `order`.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        AsymptoticSeries { coeffs }
    }

    /// `c / n^k`.
    pub fn monomial(k: usize, c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `n^-k`; zero above the truncation order.
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient.
    pub fn k_min(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.k_min().is_none()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k].plus(&other.coeffs[k]))
            .collect();
        AsymptoticSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        AsymptoticSeries {
            coeffs: self.coeffs.iter().map(C::negate).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        AsymptoticSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
        }
    }

    /// Multiplies every coefficient by the same ring element.
    pub fn scale_by(&self, c: &C) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.try_mul(c))
            .collect::<Result<_>>()?;
        Ok(AsymptoticSeries { coeffs })
    }

    /// Cauchy product truncated at `min(K1, K2)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let order = self.order().min(other.order());
        let mut coeffs = vec![C::zero(); order + 1];
        for (i, x) in self.coeffs.iter().enumerate().take(order + 1) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if y.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].plus(&x.try_mul(y)?);
            }
        }
        Ok(AsymptoticSeries { coeffs })
    }

    /// Expansion of `n -> S(n + 1)` in powers of `1/n`, truncated at `order`.
    ///
    /// Uses `(n+1)^-k = sum_j binom(-k, j) n^-(k+j)`.
    pub fn shift_index(&self, order: usize) -> Self {
        let order = order.min(self.order());
        let mut out = Self::zero(order);
        for (k, c) in self.coeffs.iter().enumerate().take(order + 1) {
            if c.is_zero() {
                continue;
            }
            if k == 0 {
                out.coeffs[0] = out.coeffs[0].plus(c);
                continue;
            }
            // binom(-k, j) = (-1)^j binom(k+j-1, j), built incrementally.
            let mut binom = Rational::one();
            for j in 0..=(order - k) {
                if j > 0 {
                    binom = -binom * int((k + j - 1) as i64) / int(j as i64);
                }
                out.coeffs[k + j] = out.coeffs[k + j].plus(&c.scale(&binom));
            }
        }
        out
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> AsymptoticSeries<D> {
        AsymptoticSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Nonzero `(k, c_k)` pairs in ascending `k`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl AsymptoticSeries<Rational> {
    pub fn lift(&self) -> AsymptoticSeries<ParamPoly> {
        self.map(|c| ParamPoly::constant(c.clone()))
    }
}

impl AsymptoticSeries<ParamPoly> {
    /// Substitutes both parameters, giving a rational series.
    pub fn substitute(&self, a: &Rational, b: &Rational) -> AsymptoticSeries<Rational> {
        self.map(|c| c.evaluate(a, b))
    }

    /// Substitutes any subset of the parameters.
    pub fn substitute_partial(&self, a: Option<&Rational>, b: Option<&Rational>) -> Self {
        self.map(|c| c.substitute(a, b))
    }

    /// Rational series when no coefficient depends on `a` or `b`.
    pub fn as_rational(&self) -> Option<AsymptoticSeries<Rational>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(ParamPoly::as_constant)
            .collect::<Option<Vec<_>>>()?;
        Some(AsymptoticSeries { coeffs })
    }
}

impl<C: Coefficient> fmt::Display for AsymptoticSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})/n")?,
                _ => write!(f, "({c})/n^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(n^-{})", self.order() + 1)
    }
}

/// `1/(n + c) = sum_{k>=1} (-c)^(k-1) n^-k`.
pub fn expand_reciprocal_shift(c: &Rational, order: usize) -> Result<AsymptoticSeries<Rational>> {
    if order < 1 {
        return Err(Error::UnsupportedOrder {
            requested: order,
            max: usize::MAX,
        });
    }
    let mut s = AsymptoticSeries::zero(order);
    let mut power = Rational::one();
    for k in 1..=order {
        s.coeffs[k] = power.clone();
        power *= -c;
    }
    Ok(s)
}

/// `ln((n + c)/n) = sum_{k>=1} (-1)^(k+1) c^k / (k n^k)`.
pub fn expand_log_ratio(c: &Rational, order: usize) -> Result<AsymptoticSeries<Rational>> {
    if order < 1 {
        return Err(Error::UnsupportedOrder {
            requested: order,
            max: usize::MAX,
        });
    }
    let mut s = AsymptoticSeries::zero(order);
    let mut power = c.clone();
    for k in 1..=order {
        let sign = if k % 2 == 1 {
            Rational::one()
        } else {
            -Rational::one()
        };
        s.coeffs[k] = sign * &power / int(k as i64);
        power *= c;
    }
    Ok(s)
}

/// `v_n - v_{n+1}` for `v_n(a,b) = H_{n-2} + (an+b)/(n(n-1)) - ln n`, with
/// `a`, `b` drawn from any coefficient ring.
///
/// Built from the four pieces
/// `(an+b)/(n(n-1)) - 1/(n-1) - (a(n+1)+b)/(n(n+1)) - ln(n/(n+1))`,
/// where the third is the first shifted by one index.
pub fn difference_expansion<C: Coefficient>(
    a: &C,
    b: &C,
    order: usize,
) -> Result<AsymptoticSeries<C>> {
    if order < 2 {
        return Err(Error::Domain(format!(
            "difference expansion needs order >= 2, got {order}"
        )));
    }
    let lift = |s: AsymptoticSeries<Rational>| s.map(|q| C::from_rational(q.clone()));
    let recip_prev = lift(expand_reciprocal_shift(&rat(-1, 1), order)?);
    // (an + b)/(n(n-1)) = (a + b/n) * 1/(n-1)
    let numerator = AsymptoticSeries::from_coeffs(vec![a.clone(), b.clone()], order);
    let fraction = numerator.mul(&recip_prev)?;
    let shifted = fraction.shift_index(order);
    let log_term = lift(expand_log_ratio(&Rational::one(), order)?);
    Ok(fraction.sub(&recip_prev).sub(&shifted).add(&log_term))
}

/// Symbolic `v_n - v_{n+1}` with [`ParamPoly`] coefficients.
pub fn difference_expansion_v(order: usize) -> Result<AsymptoticSeries<ParamPoly>> {
    difference_expansion(&ParamPoly::a(), &ParamPoly::b(), order)
}

/// `psi(z) - ln z = -1/(2z) - 1/(12z^2) + 1/(120z^4) - 1/(252z^6) + ...`
pub fn digamma_tail(order: usize) -> Result<AsymptoticSeries<Rational>> {
    if order > DIGAMMA_MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            requested: order,
            max: DIGAMMA_MAX_ORDER,
        });
    }
    let known = [
        Rational::zero(),
        rat(-1, 2),
        rat(-1, 12),
        Rational::zero(),
        rat(1, 120),
        Rational::zero(),
        rat(-1, 252),
    ];
    Ok(AsymptoticSeries::from_coeffs(
        known[..=order].to_vec(),
        order,
    ))
}

/// `gamma_n - gamma` where `gamma_n = H_n - ln n`, from `H_n = gamma + 1/n + psi(n)`.
pub fn gamma_n_expansion(order: usize) -> Result<AsymptoticSeries<Rational>> {
    let tail = digamma_tail(order)?;
    Ok(tail.add(&AsymptoticSeries::monomial(1, Rational::one(), order)))
}

/// `v_n(a,b) - gamma = (gamma_n - gamma) + (an+b)/(n(n-1)) - 1/(n-1) - 1/n`.
pub fn family_deviation_expansion<C: Coefficient>(
    a: &C,
    b: &C,
    order: usize,
) -> Result<AsymptoticSeries<C>> {
    let lift = |s: AsymptoticSeries<Rational>| s.map(|q| C::from_rational(q.clone()));
    let base = lift(gamma_n_expansion(order)?);
    let recip_prev = lift(expand_reciprocal_shift(&rat(-1, 1), order)?);
    let numerator = AsymptoticSeries::from_coeffs(vec![a.clone(), b.clone()], order);
    let fraction = numerator.mul(&recip_prev)?;
    let inv_n = AsymptoticSeries::monomial(1, C::from_rational(Rational::one()), order);
    Ok(base.add(&fraction).sub(&recip_prev).sub(&inv_n))
}
