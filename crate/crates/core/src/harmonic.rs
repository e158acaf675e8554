//! Harmonic numbers `H_n = 1 + 1/2 + ... + 1/n`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::rational::Rational;
use crate::real::{BigReal, Dyadic};

/// `sum_{k=lo}^{hi-1} 1/k` as an unreduced fraction, by binary splitting.
fn split_sum(lo: u64, hi: u64) -> (BigInt, BigInt) {
    if hi - lo == 1 {
        return (BigInt::one(), BigInt::from(lo));
    }
    let mid = lo + (hi - lo) / 2;
    let (n1, d1) = split_sum(lo, mid);
    let (n2, d2) = split_sum(mid, hi);
    (n1 * &d2 + n2 * &d1, d1 * d2)
}

/// Exact `H_n` for `n >= 1`.
pub fn harmonic_exact(n: u64) -> Result<Rational> {
    if n == 0 {
        return domain("harmonic number needs n >= 1");
    }
    let (num, den) = split_sum(1, n + 1);
    Ok(Rational::new(num, den))
}

/// `H_m` with `H_0 = 0`, used by the sequence evaluators.
pub(crate) fn harmonic_exact_from_zero(m: u64) -> Rational {
    if m == 0 {
        Rational::zero()
    } else {
        harmonic_exact(m).expect("m >= 1")
    }
}

pub(crate) fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Guard precision for composite evaluations involving `n` summands.
pub fn working_precision(p: u32, n: u64) -> u32 {
    p + 32 + ceil_log2(n.max(1))
}

/// Running fixed-point enclosure of `H_m`.
///
/// Each step adds `floor(2^w / k)`; with `r` inexact quotients so far the
/// stored integer `S` satisfies `S <= H_m * 2^w <= S + r`.
#[derive(Debug, Clone)]
pub struct HarmonicAccumulator {
    w: u32,
    one: BigUint,
    sum: BigUint,
    m: u64,
    inexact: u64,
}

impl HarmonicAccumulator {
    /// Starts at `H_0 = 0` with `w` fractional bits.
    pub fn new(w: u32) -> Self {
        HarmonicAccumulator {
            w,
            one: BigUint::one() << w,
            sum: BigUint::zero(),
            m: 0,
            inexact: 0,
        }
    }

    pub fn index(&self) -> u64 {
        self.m
    }

    pub fn fraction_bits(&self) -> u32 {
        self.w
    }

    /// Advances to `H_m`; `m` must not be behind the current index.
    pub fn advance_to(&mut self, m: u64) {
        assert!(m >= self.m, "harmonic accumulator cannot move backwards");
        while self.m < m {
            self.m += 1;
            let (q, r) = self.one.div_rem(&BigUint::from(self.m));
            self.sum += q;
            if !r.is_zero() {
                self.inexact += 1;
            }
        }
    }

    /// Enclosure of the current `H_m` at precision `p`.
    pub fn value(&self, p: u32) -> BigReal {
        let lo = Dyadic::new(BigInt::from(self.sum.clone()), -(self.w as i64));
        let hi = Dyadic::new(BigInt::from(&self.sum + self.inexact), -(self.w as i64));
        BigReal::from_bounds(lo, hi, p).expect("ordered bounds")
    }
}

/// Certified `H_n` at precision `p`: relative half-width at most `2^(1-p)`.
pub fn harmonic_float(n: u64, p: u32) -> Result<BigReal> {
    if n == 0 {
        return domain("harmonic number needs n >= 1");
    }
    let mut acc = HarmonicAccumulator::new(working_precision(p, n));
    acc.advance_to(n);
    Ok(acc.value(p))
}

/// Certified `H_m` for `m >= 0` at precision `p`.
pub(crate) fn harmonic_float_from_zero(m: u64, p: u32) -> BigReal {
    if m == 0 {
        BigReal::zero(p)
    } else {
        harmonic_float(m, p).expect("m >= 1")
    }
}
