//! Exact univariate polynomials, rational functions and positivity
//! certificates.
//!
//! A polynomial whose expansion in powers of `(x - c)` has only nonnegative
//! coefficients (and is not identically zero) is strictly positive on
//! `(c, inf)`. [`positivity_certificate`] produces that expansion; it never
//! claims a polynomial is *not* positive.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, rat, to_fraction_string, Rational};
use crate::real::BigReal;

/// Dense polynomial over the rationals, ascending powers, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `x - c`.
    pub fn linear_root(c: &Rational) -> Self {
        Self::new(vec![-c.clone(), Rational::one()])
    }

    /// `sum_k d_k (x - c)^k` expanded in powers of `x`.
    pub fn from_shifted(shifted: &[Rational], c: &Rational) -> Self {
        taylor_shift(&Self::new(shifted.to_vec()), &-c.clone())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` standing in for the zero polynomial's `-inf`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn evaluate_real(&self, x: &BigReal) -> BigReal {
        let p = x.prec();
        self.coeffs.iter().rev().fold(BigReal::zero(p), |acc, c| {
            &(&acc * x) + &BigReal::from_rational(c, p)
        })
    }

    /// Same polynomial scaled to leading coefficient one.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let d_deg = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(d_deg)];
        while rem.len() > d_deg && !rem.is_empty() {
            let shift = rem.len() - 1 - d_deg;
            let factor = rem.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &factor * c;
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = to_fraction_string(&c.abs());
            let unit = c.abs().is_one();
            let body = match k {
                0 => mag,
                1 if unit => "x".to_string(),
                1 => format!("{mag}*x"),
                _ if unit => format!("x^{k}"),
                _ => format!("{mag}*x^{k}"),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                write!(f, "{}{body}", if c.is_negative() { "-" } else { "" })?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        self + &-other
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

/// Coefficients `d_k` with `p(x) = sum_k d_k (x - c)^k`, i.e. the
/// coefficients of `p(y + c)`.
pub fn taylor_shift(p: &Polynomial, c: &Rational) -> Polynomial {
    let mut a = p.coeffs.clone();
    let n = a.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let add = c * &a[j + 1];
            a[j] += add;
        }
    }
    Polynomial::new(a)
}

/// Quotient of polynomials in canonical form: no common factor, monic
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain(
                "rational function with zero denominator".into(),
            ));
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: Polynomial::constant(Rational::one()),
            });
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let lead = den.leading();
        Ok(RationalFunction {
            num: num.scale(&(Rational::one() / &lead)),
            den: den.monic(),
        })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::constant(Rational::one()),
        }
    }

    /// `c / q(x)`.
    pub fn reciprocal_of(q: Polynomial, c: Rational) -> Result<Self> {
        Self::new(Polynomial::constant(c), q)
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.num.scale(q), self.den.clone()).expect("nonzero denominator")
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(num, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.evaluate(x);
        if d.is_zero() {
            return Err(Error::Domain(format!(
                "pole at x = {}",
                to_fraction_string(x)
            )));
        }
        Ok(self.num.evaluate(x) / d)
    }

    pub fn evaluate_real(&self, x: &BigReal) -> Result<BigReal> {
        self.num
            .evaluate_real(x)
            .checked_div(&self.den.evaluate_real(x))
    }

    /// Limit at `+inf` when it is finite.
    pub fn limit_at_infinity(&self) -> Option<Rational> {
        let (dn, dd) = (self.num.degree(), self.den.degree().expect("nonzero"));
        match dn {
            None => Some(Rational::zero()),
            Some(d) if d < dd => Some(Rational::zero()),
            Some(d) if d == dd => Some(self.num.leading() / self.den.leading()),
            _ => None,
        }
    }

    /// `self == P / Q` as an identity, checked by cross-multiplication.
    pub fn equals_quotient(&self, p: &Polynomial, q: &Polynomial) -> bool {
        &self.num * q == p * &self.den
    }
}

/// Shifted coefficients proving `p(x) > 0` on `(c, inf)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityCertificate {
    pub c: Rational,
    pub shifted: Vec<Rational>,
}

impl PositivityCertificate {
    /// Positivity also holds at `x = c` itself.
    pub fn includes_endpoint(&self) -> bool {
        self.shifted.first().is_some_and(|d| d.is_positive())
    }

    /// Re-checks the certificate against `p` from scratch.
    pub fn verify(&self, p: &Polynomial) -> bool {
        let expected = taylor_shift(p, &self.c);
        expected.coeffs() == self.shifted.as_slice()
            && self.shifted.iter().all(|d| !d.is_negative())
            && self.shifted.iter().any(|d| d.is_positive())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateOutcome {
    Certified(PositivityCertificate),
    /// A shifted coefficient is negative; inconclusive, not a disproof.
    Refused {
        shifted: Vec<Rational>,
        first_negative: usize,
    },
}

impl CertificateOutcome {
    pub fn certificate(&self) -> Option<&PositivityCertificate> {
        match self {
            CertificateOutcome::Certified(c) => Some(c),
            CertificateOutcome::Refused { .. } => None,
        }
    }
}

pub fn positivity_certificate(p: &Polynomial, c: &Rational) -> CertificateOutcome {
    let shifted = taylor_shift(p, c).coeffs;
    match shifted.iter().position(Signed::is_negative) {
        Some(first_negative) => CertificateOutcome::Refused {
            shifted,
            first_negative,
        },
        None if shifted.is_empty() => CertificateOutcome::Refused {
            shifted,
            first_negative: 0,
        },
        None => CertificateOutcome::Certified(PositivityCertificate {
            c: c.clone(),
            shifted,
        }),
    }
}

/// The two auxiliary functions whose signs drive the monotonicity of the
/// error sequences `z_n` and `t_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Coefficient 11/120; governs `z_n`.
    F,
    /// Coefficient 13/120; governs `t_n`.
    G,
}

impl Variant {
    fn quartic_coefficient(self) -> i64 {
        match self {
            Variant::F => 11,
            Variant::G => 13,
        }
    }

    /// Left end of the interval where the derivative sign is certified.
    pub fn certified_from(self) -> Rational {
        match self {
            Variant::F => int(1),
            Variant::G => int(9),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::F => "f",
            Variant::G => "g",
        }
    }

    fn sequence_name(self) -> &'static str {
        match self {
            Variant::F => "z_n",
            Variant::G => "t_n",
        }
    }
}

/// Term of an elementary function built from rational functions and one
/// logarithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Rational(RationalFunction),
    /// `coeff * ln(arg(x))`.
    Log {
        coeff: Rational,
        arg: RationalFunction,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryFunction {
    pub terms: Vec<Term>,
}

impl ElementaryFunction {
    /// Exact derivative; `d/dx ln r = r'/r` keeps it rational.
    pub fn derivative(&self) -> RationalFunction {
        let zero = RationalFunction::from_polynomial(Polynomial::zero());
        self.terms.iter().fold(zero, |acc, term| {
            let d = match term {
                Term::Rational(r) => r.derivative(),
                Term::Log { coeff, arg } => {
                    let inv =
                        RationalFunction::new(arg.denominator().clone(), arg.numerator().clone())
                            .expect("log argument is not identically zero");
                    arg.derivative().mul(&inv).scale(coeff)
                }
            };
            acc.add(&d)
        })
    }

    /// Every term tends to zero at `+inf`: rational terms by degree, log
    /// terms because their argument tends to one.
    pub fn vanishes_at_infinity(&self) -> bool {
        self.terms.iter().all(|term| match term {
            Term::Rational(r) => r.limit_at_infinity() == Some(Rational::zero()),
            Term::Log { arg, .. } => arg.limit_at_infinity() == Some(Rational::one()),
        })
    }

    pub fn evaluate(&self, x: &BigReal) -> Result<BigReal> {
        let mut acc = BigReal::zero(x.prec());
        for term in &self.terms {
            let v = match term {
                Term::Rational(r) => r.evaluate_real(x)?,
                Term::Log { coeff, arg } => arg.evaluate_real(x)?.ln()?.mul_rational(coeff),
            };
            acc = &acc + &v;
        }
        Ok(acc)
    }
}

fn shifted_power(c: i64, exp: u32) -> Polynomial {
    Polynomial::linear_root(&int(-c)).pow(exp)
}

/// `f(x)` (variant F) or `g(x)` (variant G): the increment of `z_n` or `t_n`
/// as a function of a real variable.
pub fn difference_function(variant: Variant) -> ElementaryFunction {
    let q = variant.quartic_coefficient();
    let recip = |c: i64, exp: u32, coeff: Rational| {
        Term::Rational(
            RationalFunction::reciprocal_of(shifted_power(c, exp), coeff).expect("nonzero"),
        )
    };
    let log_arg =
        RationalFunction::new(Polynomial::from_ints(&[1, 1]), Polynomial::x()).expect("nonzero");
    ElementaryFunction {
        terms: vec![
            recip(0, 1, rat(2, 3)),
            recip(-1, 1, rat(-1, 12)),
            recip(1, 1, rat(5, 12)),
            Term::Log {
                coeff: int(-1),
                arg: log_arg,
            },
            recip(1, 3, rat(-1, 12)),
            recip(1, 4, rat(-q, 120)),
            recip(0, 3, rat(1, 12)),
            recip(0, 4, rat(q, 120)),
        ],
    }
}

/// `P(x)`, printed in powers of `(x - 1)`.
pub fn polynomial_p() -> Polynomial {
    Polynomial::from_shifted(&[160, 1200, 2348, 2055, 875, 150].map(int), &int(1))
}

/// `Q(x)`, printed in powers of `(x - 9)`.
pub fn polynomial_q() -> Polynomial {
    Polynomial::from_shifted(
        &[772_064, 1_725_456, 802_376, 164_805, 17_405, 930, 20].map(int),
        &int(9),
    )
}

/// `60 x^5 (x-1)^2 (x+1)^5`.
pub fn derivative_denominator() -> Polynomial {
    let x5 = Polynomial::x().pow(5);
    let xm = shifted_power(-1, 2);
    let xp = shifted_power(1, 5);
    (&(&x5 * &xm) * &xp).scale(&int(60))
}

/// Exact `f'(x)` or `g'(x)` in canonical form.
pub fn derivative_of_f(variant: Variant) -> RationalFunction {
    difference_function(variant).derivative()
}

/// Chain of facts establishing the sign of `f` (or `g`) and hence the
/// monotonicity of `z_n` (or `t_n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailVerdict {
    pub variant: Variant,
    pub derivative: RationalFunction,
    /// +1 when the derivative is positive on `(c, inf)`, -1 when negative.
    pub derivative_sign: i32,
    pub numerator_certificate: PositivityCertificate,
    pub denominator_certificate: PositivityCertificate,
    pub vanishes_at_infinity: bool,
    /// Sign of the function itself on `(c, inf)`.
    pub function_sign: i32,
    /// First integer index covered by the monotonicity claim.
    pub sequence_from: u64,
    pub conclusion: String,
}

pub fn tail_sign_verdict(variant: Variant) -> Result<TailVerdict> {
    let c = variant.certified_from();
    let derivative = derivative_of_f(variant);
    let denominator_certificate = positivity_certificate(derivative.denominator(), &c)
        .certificate()
        .cloned()
        .ok_or_else(|| {
            Error::MissingCertificate(format!("{}' denominator at {}", variant.name(), c))
        })?;
    let (derivative_sign, numerator_certificate) =
        match positivity_certificate(derivative.numerator(), &c).certificate() {
            Some(cert) => (1, cert.clone()),
            None => match positivity_certificate(&-derivative.numerator(), &c).certificate() {
                Some(cert) => (-1, cert.clone()),
                None => {
                    return Err(Error::MissingCertificate(format!(
                        "no sign certificate for the numerator of {}' on ({c}, inf)",
                        variant.name()
                    )))
                }
            },
        };
    let function = difference_function(variant);
    let vanishes_at_infinity = function.vanishes_at_infinity();
    if !vanishes_at_infinity {
        return Err(Error::MissingCertificate(format!(
            "{} does not vanish at infinity",
            variant.name()
        )));
    }
    // Monotone towards a zero limit: increasing means negative, decreasing
    // means positive.
    let function_sign = -derivative_sign;
    // The closed endpoint is covered only where the function is continuous.
    let c_int = c.to_integer().try_into().unwrap_or(0u64);
    let sequence_from = if denominator_certificate.includes_endpoint() {
        c_int
    } else {
        c_int + 1
    };
    let direction = if function_sign < 0 {
        "decreasing"
    } else {
        "increasing"
    };
    let conclusion = format!(
        "{} strictly {direction} for n >= {sequence_from}",
        variant.sequence_name()
    );
    Ok(TailVerdict {
        variant,
        derivative,
        derivative_sign,
        numerator_certificate,
        denominator_certificate,
        vanishes_at_infinity,
        function_sign,
        sequence_from,
        conclusion,
    })
}
