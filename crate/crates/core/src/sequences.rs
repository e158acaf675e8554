//! Evaluators for the sequences converging to gamma.
//!
//! Every sequence has the shape `H_m + correction - ln(log_argument)`, which
//! [`split_eval`] exposes directly so that identities between sequences can
//! be checked in exact arithmetic.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::harmonic::{
    harmonic_exact_from_zero, harmonic_float_from_zero, working_precision, HarmonicAccumulator,
};
use crate::rational::{int, parse_rational, rat, to_fraction_string, Rational};
use crate::real::BigReal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceKind {
    /// `gamma_n = H_n - ln n`.
    GammaN,
    /// `R_n = H_n - ln(n + 1/2)`.
    DeTempleR,
    /// `V_n = H_{n-1} + 1/(2n) - ln n`.
    VernescuV,
    /// `mu_n(a,b) = H_{n-1} + 1/(an) - ln(n + b)`.
    MuFamily { a: Rational, b: Rational },
    /// `v_n(a,b) = H_{n-2} + (an+b)/(n(n-1)) - ln n`.
    VFamily { a: Rational, b: Rational },
    /// `s_n = H_{n-2} + 13/(12(n-1)) + 5/(12n) - ln n`.
    SOptimal,
    /// `mu_n(6 + 2 sqrt6, -1/sqrt6)`.
    UPlus,
    /// `mu_n(6 - 2 sqrt6, 1/sqrt6)`.
    UMinus,
}

impl SequenceKind {
    /// Short identifier used on the command line.
    pub fn id(&self) -> &'static str {
        match self {
            SequenceKind::GammaN => "gamma",
            SequenceKind::DeTempleR => "r",
            SequenceKind::VernescuV => "v",
            SequenceKind::MuFamily { .. } => "mu",
            SequenceKind::VFamily { .. } => "vfam",
            SequenceKind::SOptimal => "s",
            SequenceKind::UPlus => "uplus",
            SequenceKind::UMinus => "uminus",
        }
    }

    /// Builds a kind from its identifier; `mu` and `vfam` need `a` and `b`.
    pub fn from_id(id: &str, a: Option<&str>, b: Option<&str>) -> Result<Self> {
        let params = || -> Result<(Rational, Rational)> {
            match (a, b) {
                (Some(a), Some(b)) => Ok((parse_rational(a)?, parse_rational(b)?)),
                _ => domain(format!("sequence `{id}` needs both --a and --b")),
            }
        };
        Ok(match id {
            "gamma" => SequenceKind::GammaN,
            "r" => SequenceKind::DeTempleR,
            "v" => SequenceKind::VernescuV,
            "s" => SequenceKind::SOptimal,
            "uplus" => SequenceKind::UPlus,
            "uminus" => SequenceKind::UMinus,
            "mu" => {
                let (a, b) = params()?;
                if a.is_zero() {
                    return domain("mu_n(a,b) needs a != 0");
                }
                SequenceKind::MuFamily { a, b }
            }
            "vfam" => {
                let (a, b) = params()?;
                SequenceKind::VFamily { a, b }
            }
            other => return domain(format!("unknown sequence `{other}`")),
        })
    }

    /// Smallest index at which the sequence is defined.
    pub fn n_min(&self) -> u64 {
        match self {
            SequenceKind::VFamily { .. } | SequenceKind::SOptimal => 3,
            _ => 1,
        }
    }

    /// Index `m` of the harmonic prefix `H_m` at position `n`.
    fn harmonic_index(&self, n: u64) -> u64 {
        match self {
            SequenceKind::GammaN | SequenceKind::DeTempleR => n,
            SequenceKind::VernescuV
            | SequenceKind::MuFamily { .. }
            | SequenceKind::UPlus
            | SequenceKind::UMinus => n - 1,
            SequenceKind::VFamily { .. } | SequenceKind::SOptimal => n - 2,
        }
    }

    fn check_index(&self, n: u64) -> Result<()> {
        if n >= self.n_min() {
            return Ok(());
        }
        match self {
            SequenceKind::VFamily { .. } | SequenceKind::SOptimal => domain(format!(
                "{} is defined for n >= 3 (v_0, v_1, v_2 are left as conventions), got n = {n}",
                self.id()
            )),
            _ => domain(format!("{} needs n >= 1", self.id())),
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceKind::MuFamily { a, b } | SequenceKind::VFamily { a, b } => write!(
                f,
                "{}({}, {})",
                self.id(),
                to_fraction_string(a),
                to_fraction_string(b)
            ),
            _ => f.write_str(self.id()),
        }
    }
}

/// Either an exact rational or a certified enclosure.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx(BigReal),
}

impl Scalar {
    pub fn to_real(&self, p: u32) -> BigReal {
        match self {
            Scalar::Exact(q) => BigReal::from_rational(q, p),
            Scalar::Approx(x) => x.round_to(p),
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Approx(_) => None,
        }
    }
}

/// `value = rational_part - ln(log_argument)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitValue {
    pub n: u64,
    pub rational_part: Scalar,
    pub log_argument: Scalar,
}

impl SplitValue {
    pub fn value(&self, p: u32) -> Result<BigReal> {
        let w = p + 32;
        let v = &self.rational_part.to_real(w) - &self.log_argument.to_real(w).ln()?;
        Ok(v.round_to(p))
    }
}

/// Harmonic prefix index, correction term and log argument at `n`.
struct Parts {
    harmonic_index: u64,
    correction: Scalar,
    log_argument: Scalar,
}

fn sqrt6(p: u32) -> BigReal {
    BigReal::from_int(6, p).sqrt().expect("6 > 0")
}

fn parts(kind: &SequenceKind, n: u64, p: u32) -> Result<Parts> {
    kind.check_index(n)?;
    let nn = n as i64;
    let n_r = int(nn);
    let exact = |correction: Rational, arg: Rational| Parts {
        harmonic_index: kind.harmonic_index(n),
        correction: Scalar::Exact(correction),
        log_argument: Scalar::Exact(arg),
    };
    Ok(match kind {
        SequenceKind::GammaN => exact(Rational::zero(), n_r),
        SequenceKind::DeTempleR => exact(Rational::zero(), n_r + rat(1, 2)),
        SequenceKind::VernescuV => exact(rat(1, 2 * nn), n_r),
        SequenceKind::MuFamily { a, b } => {
            if a.is_zero() {
                return domain("mu_n(a,b) needs a != 0");
            }
            let arg = &n_r + b;
            if arg <= Rational::zero() {
                return domain(format!("mu_n(a,b) needs n + b > 0, got n = {n}"));
            }
            exact(Rational::one() / (a * &n_r), arg)
        }
        SequenceKind::VFamily { a, b } => {
            exact((a * &n_r + b) / (&n_r * (&n_r - Rational::one())), n_r)
        }
        SequenceKind::SOptimal => exact(rat(13, 12 * (nn - 1)) + rat(5, 12 * nn), n_r),
        SequenceKind::UPlus | SequenceKind::UMinus => {
            let sign = if *kind == SequenceKind::UPlus { 1 } else { -1 };
            let r6 = sqrt6(p);
            let a = &BigReal::from_int(6, p) + &(&r6 * &BigReal::from_int(2 * sign, p));
            let b = BigReal::from_int(-sign, p).checked_div(&r6)?;
            let correction = (&a * &BigReal::from_int(nn, p)).recip()?;
            let arg = &BigReal::from_int(nn, p) + &b;
            Parts {
                harmonic_index: kind.harmonic_index(n),
                correction: Scalar::Approx(correction),
                log_argument: Scalar::Approx(arg),
            }
        }
    })
}

/// Exact decomposition `rational_part - ln(log_argument)` of the `n`-th term.
///
/// Irrational parameters (the u-variants) are enclosed at precision `p`;
/// every other kind is exact.
pub fn split_eval(kind: &SequenceKind, n: u64, p: u32) -> Result<SplitValue> {
    let parts = parts(kind, n, p)?;
    let h = harmonic_exact_from_zero(parts.harmonic_index);
    let rational_part = match parts.correction {
        Scalar::Exact(c) => Scalar::Exact(h + c),
        Scalar::Approx(c) => Scalar::Approx(&BigReal::from_rational(&h, p) + &c),
    };
    Ok(SplitValue {
        n,
        rational_part,
        log_argument: parts.log_argument,
    })
}

fn assemble(parts: &Parts, harmonic: &BigReal, w: u32) -> Result<BigReal> {
    let v = harmonic + &parts.correction.to_real(w);
    Ok(&v - &parts.log_argument.to_real(w).ln()?)
}

/// Certified value of the `n`-th term with relative error at most `2^(1-p)`.
pub fn eval(kind: &SequenceKind, n: u64, p: u32) -> Result<BigReal> {
    let w = working_precision(p, n);
    let parts = parts(kind, n, w)?;
    let h = harmonic_float_from_zero(parts.harmonic_index, w);
    Ok(assemble(&parts, &h, w)?.round_to(p))
}

/// Evaluates a sequence at ascending indices, sharing one running harmonic
/// sum. Values are left at working precision.
#[derive(Debug, Clone)]
pub struct SequenceWalker {
    kind: SequenceKind,
    acc: HarmonicAccumulator,
    w: u32,
}

impl SequenceWalker {
    /// Walker good for indices up to `n_max` at precision `p`.
    pub fn new(kind: SequenceKind, p: u32, n_max: u64) -> Self {
        let w = working_precision(p, n_max);
        SequenceWalker {
            kind,
            acc: HarmonicAccumulator::new(w + 8),
            w,
        }
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    /// Value at `n`; indices must not decrease between calls.
    pub fn value_at(&mut self, n: u64) -> Result<BigReal> {
        let parts = parts(&self.kind, n, self.w)?;
        if parts.harmonic_index < self.acc.index() {
            return Err(Error::Domain(
                "sequence walker indices must be ascending".into(),
            ));
        }
        self.acc.advance_to(parts.harmonic_index);
        assemble(&parts, &self.acc.value(self.w), self.w)
    }
}

/// `((a-3/2)n^2 + (b+5/12)n + 1/12) / (n^2 (n-1))`, the leading part of
/// `v_n(a,b) - gamma`.
pub fn error_fraction(a: &Rational, b: &Rational, n: u64) -> Result<Rational> {
    if n < 2 {
        return domain(format!("error fraction needs n >= 2, got {n}"));
    }
    let n = int(n as i64);
    let num = (a - rat(3, 2)) * &n * &n + (b + rat(5, 12)) * &n + rat(1, 12);
    let den = &n * &n * (&n - Rational::one());
    Ok(num / den)
}

/// Checks `(an+b)/(n(n-1)) - 1/(n-1) - 1/n + 1/(2n) - 1/(12n^2) = error_fraction(a,b,n)`
/// exactly.
pub fn verify_error_identity(a: &Rational, b: &Rational, n: u64) -> Result<bool> {
    let rhs = error_fraction(a, b, n)?;
    let n = int(n as i64);
    let one = Rational::one();
    let lhs = (a * &n + b) / (&n * (&n - &one)) - &one / (&n - &one) - &one / &n
        + &one / (int(2) * &n)
        - &one / (int(12) * &n * &n);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_one() {
        let s = split_eval(&SequenceKind::GammaN, 1, 64).unwrap();
        assert_eq!(s.rational_part, Scalar::Exact(int(1)));
        assert_eq!(s.log_argument, Scalar::Exact(int(1)));
        let v = eval(&SequenceKind::GammaN, 1, 64).unwrap();
        assert!(v.width().is_zero());
        assert!(v.contains(&int(1)));
    }

    #[test]
    fn s_optimal_split() {
        for n in [3u64, 4, 10, 57] {
            let s = split_eval(&SequenceKind::SOptimal, n, 64).unwrap();
            let nn = n as i64;
            let expected =
                harmonic_exact_from_zero(n - 2) + rat(13, 12 * (nn - 1)) + rat(5, 12 * nn);
            assert_eq!(s.rational_part, Scalar::Exact(expected));
            assert_eq!(s.log_argument, Scalar::Exact(int(nn)));
        }
    }

    #[test]
    fn index_domain() {
        for kind in [
            SequenceKind::SOptimal,
            SequenceKind::VFamily {
                a: int(1),
                b: int(0),
            },
        ] {
            for n in 0..3 {
                assert!(matches!(split_eval(&kind, n, 64), Err(Error::Domain(_))));
            }
        }
        assert!(eval(&SequenceKind::GammaN, 0, 64).is_err());
        let mu = SequenceKind::MuFamily {
            a: int(1),
            b: int(-3),
        };
        assert!(eval(&mu, 2, 64).is_err());
        assert!(eval(&mu, 4, 64).is_ok());
        assert!(SequenceKind::from_id("mu", Some("0"), Some("1")).is_err());
        assert!(SequenceKind::from_id("vfam", Some("1"), None).is_err());
        assert!(SequenceKind::from_id("zeta", None, None).is_err());
    }

    #[test]
    fn detemple_first_term() {
        let v = eval(&SequenceKind::DeTempleR, 1, 128).unwrap();
        let direct =
            &BigReal::from_int(1, 160) - &BigReal::from_rational(&rat(3, 2), 160).ln().unwrap();
        assert!(v.overlaps(&direct));
        assert!(v.rel_error() <= 2f64.powi(-127));
    }

    #[test]
    fn named_members_of_families() {
        let v = SequenceKind::MuFamily {
            a: int(2),
            b: int(0),
        };
        let r = SequenceKind::MuFamily {
            a: int(1),
            b: rat(1, 2),
        };
        for n in 1..40 {
            assert_eq!(
                split_eval(&v, n, 64).unwrap(),
                split_eval(&SequenceKind::VernescuV, n, 64).unwrap()
            );
            // mu_n(1, 1/2) = H_{n-1} + 1/n - ln(n + 1/2) = R_n
            assert_eq!(
                split_eval(&r, n, 64).unwrap(),
                split_eval(&SequenceKind::DeTempleR, n, 64).unwrap()
            );
        }
    }

    #[test]
    fn error_fraction_values() {
        assert_eq!(
            error_fraction(&rat(3, 2), &rat(-5, 12), 10).unwrap(),
            rat(1, 10800)
        );
        assert_eq!(error_fraction(&int(2), &int(-1), 4).unwrap(), rat(23, 192));
        assert!(error_fraction(&int(2), &int(-1), 1).is_err());
        assert!(verify_error_identity(&rat(3, 2), &rat(-5, 12), 7).unwrap());
        assert!(verify_error_identity(&int(2), &int(-1), 5).unwrap());
        assert!(verify_error_identity(&int(0), &int(0), 3).unwrap());
    }

    #[test]
    fn u_variants_are_enclosures() {
        for kind in [SequenceKind::UPlus, SequenceKind::UMinus] {
            let v = eval(&kind, 20, 128).unwrap();
            assert!(v.rel_error() <= 2f64.powi(-127));
            let g = crate::gamma::gamma_reference(128);
            let dev = (&v - g.value()).abs().hi().to_f64();
            // converges like n^-3
            assert!(dev < 1e-4, "{kind}: {dev}");
        }
    }

    #[test]
    fn walker_matches_eval() {
        let mut walker = SequenceWalker::new(SequenceKind::SOptimal, 128, 400);
        for n in (3..400).step_by(37) {
            let a = walker.value_at(n).unwrap();
            let b = eval(&SequenceKind::SOptimal, n, 128).unwrap();
            assert!(a.overlaps(&b));
            assert!(a.rel_error() < 2f64.powi(-150));
        }
        assert!(walker.value_at(5).is_err());
    }
}
