//! Certified arbitrary-precision reals.
//!
//! A [`BigReal`] is a closed interval `[lo, hi]` with dyadic endpoints
//! (`mantissa * 2^exponent`). Every operation rounds its endpoints outward,
//! so the true result of the corresponding exact computation always lies in
//! the returned interval. The precision `p` controls the mantissa length of
//! the endpoints: a point input evaluated at precision `p` yields an
//! interval whose half-width is at most `2^(1-p)` relative to its magnitude.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::rational::{floor_log2, Rational};

pub const MIN_PRECISION: u32 = 32;

/// Rounding direction for a single endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
    Nearest,
}

/// `mantissa * 2^exponent`, kept with an odd mantissa (or zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn shr_floor(m: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    if m.sign() != Sign::Minus {
        m >> s
    } else {
        let mag: BigUint = m.magnitude() - 1u32;
        -BigInt::from((mag >> s) + 1u32)
    }
}

fn shr_ceil(m: &BigInt, s: u64) -> BigInt {
    -shr_floor(&-m, s)
}

fn shr_nearest(m: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    shr_floor(&(m + (BigInt::one() << (s - 1))), s)
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::new(v.into(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Rounds to at most `bits` mantissa bits in the given direction.
    pub fn round(&self, bits: u32, dir: Round) -> Dyadic {
        let have = self.bits();
        if have <= bits as u64 {
            return self.clone();
        }
        let s = have - bits as u64;
        let m = match dir {
            Round::Down => shr_floor(&self.mant, s),
            Round::Up => shr_ceil(&self.mant, s),
            Round::Nearest => shr_nearest(&self.mant, s),
        };
        Dyadic::new(m, self.exp + s as i64)
    }

    pub fn add_exact(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn mul_exact(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// `self * 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Directed quotient with `bits` mantissa bits. Panics on a zero divisor.
    pub fn div(&self, other: &Dyadic, bits: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let k = (bits as i64 + 2 + other.bits() as i64 - self.bits() as i64).max(0) as u64;
        let num = &self.mant << k;
        let q = match dir {
            Round::Down => num.div_floor(&other.mant),
            Round::Up => -(-num).div_floor(&other.mant),
            Round::Nearest => {
                let (q, r) = num.div_mod_floor(&other.mant);
                if (r << 1u32).abs() >= other.mant.abs() {
                    q + 1
                } else {
                    q
                }
            }
        };
        Dyadic::new(q, self.exp - other.exp - k as i64).round(bits, dir)
    }

    pub fn from_rational(q: &Rational, bits: u32, dir: Round) -> Dyadic {
        let num = Dyadic::from_int(q.numer().clone());
        let den = Dyadic::from_int(q.denom().clone());
        if q.denom().is_one() {
            return num.round(bits, dir);
        }
        num.div(&den, bits, dir)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Nearest);
        let m = r.mant.to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(r.exp.clamp(-2000, 2000) as i32)
    }

    /// Floor of `self * 2^w` as an integer.
    pub fn to_fixed_floor(&self, w: i64) -> BigInt {
        let e = self.exp + w;
        if e >= 0 {
            &self.mant << e as u64
        } else {
            shr_floor(&self.mant, (-e) as u64)
        }
    }

    pub fn to_fixed_ceil(&self, w: i64) -> BigInt {
        -self.neg().to_fixed_floor(w)
    }

    /// Scientific notation with `digits` significant digits, rounded in
    /// the given direction.
    pub fn to_sci_string(&self, digits: usize, dir: Round) -> String {
        format_sci(&self.to_rational(), digits, dir)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb || sa == 0 {
            return sa.cmp(&sb);
        }
        // Same nonzero sign: compare magnitudes via leading-bit position first.
        let top_a = self.exp + self.bits() as i64;
        let top_b = other.exp + other.bits() as i64;
        let mag = if top_a != top_b {
            top_a.cmp(&top_b)
        } else {
            let e = self.exp.min(other.exp);
            let a = self.mant.magnitude() << (self.exp - e) as u64;
            let b = other.mant.magnitude() << (other.exp - e) as u64;
            a.cmp(&b)
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

/// Scientific notation `d.ddd…e±X` with `digits` significant digits.
pub fn format_sci(q: &Rational, digits: usize, dir: Round) -> String {
    let digits = digits.max(1);
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let mag = q.abs();
    // Directed rounding of |q| is the opposite direction for negatives.
    let mag_dir = match (dir, neg) {
        (Round::Down, true) => Round::Up,
        (Round::Up, true) => Round::Down,
        (d, _) => d,
    };
    let ten = BigInt::from(10u32);
    let mut e10 = ((floor_log2(&mag) as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while mag >= pow10(e10 + 1) {
        e10 += 1;
    }
    while mag < pow10(e10) {
        e10 -= 1;
    }
    let scaled = &mag / pow10(e10 - digits as i64 + 1);
    let mut m = match mag_dir {
        Round::Down => scaled.floor().to_integer(),
        Round::Up => scaled.ceil().to_integer(),
        Round::Nearest => scaled.round().to_integer(),
    };
    if m >= num_traits::pow(ten.clone(), digits) {
        m /= &ten;
        e10 += 1;
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

/// A real number known to lie in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigReal {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

fn mant_bits(prec: u32) -> u32 {
    prec + 1
}

impl BigReal {
    fn make(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        let bits = mant_bits(prec);
        BigReal {
            lo: lo.round(bits, Round::Down),
            hi: hi.round(bits, Round::Up),
            prec,
        }
    }

    /// Interval from explicit bounds; fails when `lo > hi`.
    pub fn from_bounds(lo: Dyadic, hi: Dyadic, prec: u32) -> Result<Self> {
        if lo > hi {
            return domain("interval lower bound exceeds upper bound");
        }
        Ok(Self::make(lo, hi, prec.max(MIN_PRECISION)))
    }

    pub fn from_dyadic(d: Dyadic, prec: u32) -> Self {
        Self::make(d.clone(), d, prec.max(MIN_PRECISION))
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::from_dyadic(Dyadic::from_int(v), prec)
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let bits = mant_bits(prec);
        BigReal {
            lo: Dyadic::from_rational(q, bits, Round::Down),
            hi: Dyadic::from_rational(q, bits, Round::Up),
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_int(0, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add_exact(&self.hi).mul_pow2(-1)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.add_exact(&self.lo.neg())
    }

    /// Half-width divided by the smallest magnitude in the interval
    /// (infinite when the interval touches zero).
    pub fn rel_error(&self) -> f64 {
        if self.lo.signum() != self.hi.signum() || self.lo.is_zero() {
            return if self.width().is_zero() {
                0.0
            } else {
                f64::INFINITY
            };
        }
        let min_mag = if self.lo.signum() > 0 {
            &self.lo
        } else {
            &self.hi
        }
        .abs();
        let w = self.width().mul_pow2(-1);
        w.div(&min_mag, 64, Round::Up).to_f64()
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// Re-rounds outward to precision `p`.
    pub fn round_to(&self, prec: u32) -> Self {
        Self::make(self.lo.clone(), self.hi.clone(), prec.max(MIN_PRECISION))
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        self.round_to(prec)
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    pub fn contains_dyadic(&self, d: &Dyadic) -> bool {
        self.lo <= *d && *d <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &BigReal) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &BigReal) -> bool {
        other.certainly_lt(self)
    }

    pub fn certainly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn certainly_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &BigReal) -> BigReal {
        BigReal {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn overlaps(&self, other: &BigReal) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    fn joint_prec(&self, other: &BigReal) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn abs(&self) -> BigReal {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            -self
        } else {
            let hi = self.lo.abs().max(self.hi.abs());
            BigReal {
                lo: Dyadic::zero(),
                hi,
                prec: self.prec,
            }
        }
    }

    pub fn recip(&self) -> Result<BigReal> {
        BigReal::from_int(1, self.prec).checked_div(self)
    }

    /// Quotient; fails when the divisor interval contains zero.
    pub fn checked_div(&self, other: &BigReal) -> Result<BigReal> {
        if other.contains_zero() {
            return domain("division by an interval containing zero");
        }
        let prec = self.joint_prec(other);
        let bits = mant_bits(prec);
        let cands_lo = [
            self.lo.div(&other.lo, bits, Round::Down),
            self.lo.div(&other.hi, bits, Round::Down),
            self.hi.div(&other.lo, bits, Round::Down),
            self.hi.div(&other.hi, bits, Round::Down),
        ];
        let cands_hi = [
            self.lo.div(&other.lo, bits, Round::Up),
            self.lo.div(&other.hi, bits, Round::Up),
            self.hi.div(&other.lo, bits, Round::Up),
            self.hi.div(&other.hi, bits, Round::Up),
        ];
        let lo = cands_lo.into_iter().min().unwrap();
        let hi = cands_hi.into_iter().max().unwrap();
        Ok(BigReal { lo, hi, prec })
    }

    pub fn powi(&self, exp: u32) -> BigReal {
        let mut acc = BigReal::from_int(1, self.prec);
        for _ in 0..exp {
            acc = &acc * self;
        }
        if exp.is_multiple_of(2) && self.contains_zero() {
            // Even powers are nonnegative even when the base straddles zero.
            let hi = acc.hi.clone();
            return BigReal {
                lo: Dyadic::zero(),
                hi,
                prec: self.prec,
            };
        }
        acc
    }

    pub fn mul_rational(&self, q: &Rational) -> BigReal {
        self * &BigReal::from_rational(q, self.prec)
    }

    pub fn add_rational(&self, q: &Rational) -> BigReal {
        self + &BigReal::from_rational(q, self.prec)
    }

    /// Natural logarithm; see [`ln_real`].
    pub fn ln(&self) -> Result<BigReal> {
        ln_real(self, self.prec)
    }

    /// Square root; the interval must be nonnegative.
    pub fn sqrt(&self) -> Result<BigReal> {
        if self.lo.signum() < 0 {
            return domain("square root of a negative interval");
        }
        let bits = mant_bits(self.prec);
        Ok(BigReal {
            lo: sqrt_dyadic(&self.lo, bits, Round::Down),
            hi: sqrt_dyadic(&self.hi, bits, Round::Up),
            prec: self.prec,
        })
    }

    /// Decimal rendering `[lo, hi]` with `digits` significant digits.
    pub fn to_interval_string(&self, digits: usize) -> String {
        format!(
            "[{}, {}]",
            self.lo.to_sci_string(digits, Round::Down),
            self.hi.to_sci_string(digits, Round::Up)
        )
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec as f64 * std::f64::consts::LOG10_2)
            .floor()
            .max(1.0) as usize;
        f.write_str(&self.mid().to_sci_string(digits, Round::Nearest))
    }
}

fn sqrt_dyadic(d: &Dyadic, bits: u32, dir: Round) -> Dyadic {
    if d.is_zero() {
        return Dyadic::zero();
    }
    let m = d.mant.magnitude().clone();
    // Scale so the radicand has at least 2*bits+4 bits and an even exponent.
    let mut s = (2 * bits as i64 + 4 - m.bits() as i64).max(0);
    if (d.exp - s) % 2 != 0 {
        s += 1;
    }
    let scaled: BigUint = m << s as u64;
    let r = scaled.sqrt();
    let exact = &r * &r == scaled;
    let r = match dir {
        Round::Up if !exact => r + 1u32,
        _ => r,
    };
    Dyadic::new(BigInt::from(r), (d.exp - s) / 2).round(bits, dir)
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -&self
    }
}

impl Add for &BigReal {
    type Output = BigReal;
    fn add(self, other: &BigReal) -> BigReal {
        BigReal::make(
            self.lo.add_exact(&other.lo),
            self.hi.add_exact(&other.hi),
            self.joint_prec(other),
        )
    }
}

impl Sub for &BigReal {
    type Output = BigReal;
    fn sub(self, other: &BigReal) -> BigReal {
        BigReal::make(
            self.lo.add_exact(&other.hi.neg()),
            self.hi.add_exact(&other.lo.neg()),
            self.joint_prec(other),
        )
    }
}

impl Mul for &BigReal {
    type Output = BigReal;
    fn mul(self, other: &BigReal) -> BigReal {
        let products = [
            self.lo.mul_exact(&other.lo),
            self.lo.mul_exact(&other.hi),
            self.hi.mul_exact(&other.lo),
            self.hi.mul_exact(&other.hi),
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        BigReal::make(lo, hi, self.joint_prec(other))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BigReal {
            type Output = BigReal;
            fn $m(self, other: BigReal) -> BigReal { (&self).$m(&other) }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, other: &BigReal) -> BigReal { (&self).$m(other) }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $m(self, other: BigReal) -> BigReal { self.$m(&other) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

// ---------------------------------------------------------------------------
// Logarithm
// ---------------------------------------------------------------------------

/// Bounds `[lo, hi]` on `atanh(num/den) * 2^w` for `0 <= num/den <= 1/2`.
///
/// Terms `z^(2j+1)/(2j+1)` are accumulated with floor rounding; the `j`-th
/// power carries at most `j+1` ulps of error and each quotient one more. The
/// omitted tail is at most `z^(2J+1) / ((2J+1)(1-z^2)) <= 2 z^(2J+1)/(2J+1)`.
fn atanh_fixed(num: &BigUint, den: &BigUint, w: u64) -> (BigUint, BigUint) {
    debug_assert!(num * 2u32 <= *den);
    let num2 = num * num;
    let den2 = den * den;
    let mut power: BigUint = (num << w) / den; // floor(z * 2^w)
    let mut sum = BigUint::zero();
    let mut j: u64 = 0;
    let mut slack: u64 = 0;
    loop {
        if power.is_zero() {
            // z^(2j+1) * 2^w <= j+1, so the remaining tail is a few ulps.
            let tail = (BigUint::from(j + 1) * 2u32) / (2 * j + 1) + 1u32;
            return (sum.clone(), sum + tail + slack);
        }
        sum += &power / (2 * j + 1);
        slack += 2;
        power = (power * &num2) / &den2;
        j += 1;
    }
}

/// Bounds on `ln(2) * 2^w`.
fn ln2_fixed(w: u64) -> (BigUint, BigUint) {
    let (lo, hi) = atanh_fixed(&BigUint::one(), &BigUint::from(3u32), w);
    (lo << 1u32, hi << 1u32)
}

/// Certified bounds on `ln(d)` for a positive dyadic, as dyadics.
fn ln_dyadic(d: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    debug_assert!(d.signum() > 0);
    let m = d.mant.magnitude();
    let b = m.bits() as i64;
    // x = m / 2^b in [1/2, 1); move it into [1/sqrt2, sqrt2).
    let mut shift = b;
    if (m * m) << 1u32 < BigUint::one() << (2 * b) as u64 {
        shift -= 1;
    }
    let k = d.exp + shift;
    let base = BigUint::one() << shift as u64;
    let (z_num, z_neg) = if *m >= base {
        (m - &base, false)
    } else {
        (&base - m, true)
    };
    let z_den = m + &base;
    if k == 0 && z_num.is_zero() {
        return (Dyadic::zero(), Dyadic::zero());
    }
    // Extra bits so the absolute error is small relative to |ln d|.
    let magnitude_bits = if k == 0 {
        z_den.bits() as i64 - z_num.bits() as i64 + 2
    } else {
        2
    };
    let k_bits = 64 - k.unsigned_abs().leading_zeros() as i64;
    let w = (prec as i64 + 16 + magnitude_bits + k_bits) as u64;

    let (a_lo, a_hi) = if z_num.is_zero() {
        (BigUint::zero(), BigUint::zero())
    } else {
        atanh_fixed(&z_num, &z_den, w)
    };
    let (a_lo, a_hi) = (BigInt::from(a_lo) << 1u32, BigInt::from(a_hi) << 1u32);
    let (lnx_lo, lnx_hi) = if z_neg { (-a_hi, -a_lo) } else { (a_lo, a_hi) };
    let (k_lo, k_hi) = if k == 0 {
        (BigInt::zero(), BigInt::zero())
    } else {
        let (l_lo, l_hi) = ln2_fixed(w);
        let kk = BigInt::from(k);
        if k > 0 {
            (&kk * BigInt::from(l_lo), &kk * BigInt::from(l_hi))
        } else {
            (&kk * BigInt::from(l_hi), &kk * BigInt::from(l_lo))
        }
    };
    let lo = Dyadic::new(lnx_lo + k_lo, -(w as i64));
    let hi = Dyadic::new(lnx_hi + k_hi, -(w as i64));
    (lo, hi)
}

/// Natural logarithm of a positive interval at precision `prec`.
///
/// The result encloses `ln` of every point in `x`. For a point input the
/// relative half-width is at most `2^(1-prec)`.
pub fn ln_real(x: &BigReal, prec: u32) -> Result<BigReal> {
    if x.lo.signum() <= 0 {
        return domain("logarithm of a non-positive value");
    }
    let prec = prec.max(MIN_PRECISION);
    let (lo, hi) = if x.lo == x.hi {
        ln_dyadic(&x.lo, prec)
    } else {
        (ln_dyadic(&x.lo, prec).0, ln_dyadic(&x.hi, prec).1)
    };
    Ok(BigReal::make(lo, hi, prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn dy(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn rounding_directions() {
        let d = dy(0b1011, 0); // 11
        assert_eq!(d.round(2, Round::Down), dy(2, 2));
        assert_eq!(d.round(2, Round::Up), dy(3, 2));
        let n = dy(-11, 0);
        assert_eq!(n.round(2, Round::Down), dy(-3, 2));
        assert_eq!(n.round(2, Round::Up), dy(-2, 2));
    }

    #[test]
    fn ordering() {
        assert!(dy(3, -1) < dy(2, 0));
        assert!(dy(-3, -1) > dy(-2, 0));
        assert!(dy(-1, 10) < Dyadic::zero());
        assert_eq!(dy(4, 0), dy(1, 2));
    }

    #[test]
    fn rational_enclosure() {
        let third = BigReal::from_rational(&rat(1, 3), 64);
        assert!(third.contains(&rat(1, 3)));
        assert!(third.rel_error() <= 2f64.powi(-63));
        let one = BigReal::from_rational(&int(1), 64);
        assert!(one.width().is_zero());
    }

    #[test]
    fn division_contains_quotient() {
        let a = BigReal::from_rational(&rat(22, 7), 80);
        let b = BigReal::from_rational(&rat(-3, 11), 80);
        let q = a.checked_div(&b).unwrap();
        assert!(q.contains(&(rat(22, 7) / rat(-3, 11))));
        assert!(a.checked_div(&BigReal::zero(64)).is_err());
    }

    #[test]
    fn ln_of_one_is_exact_zero() {
        let r = BigReal::from_int(1, 64).ln().unwrap();
        assert!(r.width().is_zero());
        assert!(r.lo().is_zero());
    }

    #[test]
    fn ln_rejects_nonpositive() {
        assert!(BigReal::from_int(0, 64).ln().is_err());
        assert!(BigReal::from_int(-2, 64).ln().is_err());
    }

    #[test]
    fn ln_near_one_keeps_relative_precision() {
        let x = BigReal::from_rational(&(int(1) + rat(1, 1 << 40)), 96);
        let l = x.ln().unwrap();
        assert!(l.certainly_positive());
        assert!(l.rel_error() <= 2f64.powi(-95), "{}", l.rel_error());
    }

    #[test]
    fn sqrt_six() {
        let s = BigReal::from_int(6, 128).sqrt().unwrap();
        let sq = &s * &s;
        assert!(sq.contains(&int(6)));
        assert!(s.rel_error() <= 2f64.powi(-127));
        let four = BigReal::from_int(4, 64).sqrt().unwrap();
        assert!(four.width().is_zero());
        assert!(BigReal::from_int(-1, 64).sqrt().is_err());
    }

    #[test]
    fn sci_formatting() {
        assert_eq!(format_sci(&rat(1, 3), 5, Round::Down), "3.3333e-1");
        assert_eq!(format_sci(&rat(1, 3), 5, Round::Up), "3.3334e-1");
        assert_eq!(format_sci(&rat(-1, 3), 5, Round::Down), "-3.3334e-1");
        assert_eq!(format_sci(&int(1), 3, Round::Nearest), "1.00e0");
        assert_eq!(format_sci(&rat(999999, 1000), 3, Round::Up), "1.00e3");
        assert_eq!(format_sci(&int(12345), 2, Round::Nearest), "1.2e4");
    }

    proptest! {
        #[test]
        fn ln_product_rule(a in 1u64..1_000_000, b in 1u64..1_000_000, c in 1u64..1000, d in 1u64..1000) {
            let p = 96;
            let x = BigReal::from_rational(&rat(a as i64, c as i64), p);
            let y = BigReal::from_rational(&rat(b as i64, d as i64), p);
            let xy = &x * &y;
            let lhs = xy.ln().unwrap() - x.ln().unwrap() - y.ln().unwrap();
            prop_assert!(lhs.contains_zero());
            let scale = xy.ln().unwrap().abs().hi().to_f64().max(f64::MIN_POSITIVE);
            let bound = 3.0 * 2f64.powi(1 - p as i32) * scale;
            prop_assert!(lhs.abs().hi().to_f64() <= bound.max(2f64.powi(-(p as i32))),
                "{} > {}", lhs.abs().hi().to_f64(), bound);
        }

        #[test]
        fn arithmetic_encloses_exact(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let (x, y) = (rat(a, b), rat(c, d));
            let (rx, ry) = (BigReal::from_rational(&x, 40), BigReal::from_rational(&y, 40));
            prop_assert!((&rx + &ry).contains(&(&x + &y)));
            prop_assert!((&rx - &ry).contains(&(&x - &y)));
            prop_assert!((&rx * &ry).contains(&(&x * &y)));
            if c != 0 {
                prop_assert!(rx.checked_div(&ry).unwrap().contains(&(&x / &y)));
            }
        }
    }
}
