//! Certified enclosures of the Euler-Mascheroni constant.
//!
//! Two independent routes are available:
//!
//! * [`gamma_bootstrap`] evaluates the optimal sequence
//!   `s_N = H_{N-2} + 13/(12(N-1)) + 5/(12N) - ln N` and uses the two-sided
//!   bound `1/(12N^3) + 11/(120N^4) < s_N - gamma < 1/(12N^3) + 13/(120N^4)`
//!   (valid for `N >= 9`), giving width `1/(60N^4)`.
//! * [`gamma_series`] uses
//!   `gamma = sum_{k>=1} (-1)^(k-1) N^k / (k k!) - ln N - E1(N)` with
//!   `0 < E1(N) < e^-N / N < (10/27)^N / N`.
//!
//! [`gamma_reference`] picks the bootstrap whenever its `N` stays small and
//! falls back to the series otherwise. Results are memoized per precision.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::harmonic::{harmonic_float_from_zero, working_precision};
use crate::rational::{int, pow, rat, Rational};
use crate::real::{BigReal, Dyadic, MIN_PRECISION};

/// Largest bootstrap index `gamma_reference` is willing to sum directly.
pub const MAX_BOOTSTRAP_N: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnclosureMethod {
    /// Bounds on `s_N - gamma` at index `n`.
    Bootstrap { n: u64 },
    /// Alternating series at argument `n`, truncated after `terms` terms.
    Series { n: u64, terms: u64 },
}

/// Certified interval containing the Euler-Mascheroni constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    value: BigReal,
    method: EnclosureMethod,
}

impl Enclosure {
    pub fn value(&self) -> &BigReal {
        &self.value
    }

    pub fn method(&self) -> EnclosureMethod {
        self.method
    }

    pub fn lo(&self) -> &Dyadic {
        self.value.lo()
    }

    pub fn hi(&self) -> &Dyadic {
        self.value.hi()
    }

    pub fn width(&self) -> Dyadic {
        self.value.width()
    }

    pub fn mid(&self) -> Dyadic {
        self.value.mid()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.value.contains(q)
    }

    /// Whether the decimal string (e.g. `"0.5772156649"`), read as an exact
    /// rational, lies inside.
    pub fn contains_decimal(&self, digits: &str) -> Result<bool> {
        Ok(self.contains(&parse_decimal(digits)?))
    }

    /// Whether every point of the enclosure starts with the given decimal
    /// digits, i.e. the enclosure lies in `[d, d + 10^-k)` for a `k`-digit
    /// fractional part. This certifies a truncated digit string.
    pub fn certifies_digits(&self, digits: &str) -> Result<bool> {
        let (lo, hi) = truncation_interval(digits)?;
        Ok(lo <= self.lo().to_rational() && self.hi().to_rational() < hi)
    }

    /// Whether the enclosure meets `[d, d + 10^-k)`.
    pub fn consistent_with_digits(&self, digits: &str) -> Result<bool> {
        let (lo, hi) = truncation_interval(digits)?;
        Ok(lo <= self.hi().to_rational() && self.lo().to_rational() < hi)
    }
}

/// `[d, d + 10^-k)` for a nonnegative decimal `d` with `k` fractional digits.
fn truncation_interval(digits: &str) -> Result<(Rational, Rational)> {
    let d = parse_decimal(digits)?;
    if d < Rational::zero() {
        return domain("digit prefixes must be nonnegative");
    }
    let k = digits
        .trim()
        .replace(',', ".")
        .split_once('.')
        .map_or(0, |(_, f)| f.len());
    let ulp = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10u32), k));
    Ok((d.clone(), d + ulp))
}

/// Parses a plain decimal such as `0.57721` or `0,57721` exactly.
pub fn parse_decimal(text: &str) -> Result<Rational> {
    let text = text.trim().replace(',', ".");
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, text.clone()),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((&body, ""));
    if whole.is_empty() && frac.is_empty()
        || !whole
            .bytes()
            .chain(frac.bytes())
            .all(|c| c.is_ascii_digit())
    {
        return domain(format!("`{text}` is not a decimal number"));
    }
    let digits: BigInt = format!("{whole}{frac}").parse().expect("ascii digits");
    let scale = num_traits::pow(BigInt::from(10u32), frac.len());
    let q = Rational::new(digits, scale);
    Ok(if neg { -q } else { q })
}

/// Smallest power of two `N >= 16` with `1/(60 N^4) <= 2^(1-p)`, or `None`
/// when it does not fit in a `u64`.
pub fn bootstrap_index(p: u32) -> Option<u64> {
    let mut n: u64 = 16;
    // 60 N^4 >= 2^(p-1)
    loop {
        let lhs = BigUint::from(60u32) * num_traits::pow(BigUint::from(n), 4);
        if lhs >= BigUint::one() << (p.saturating_sub(1)) {
            return Some(n);
        }
        n = n.checked_mul(2)?;
    }
}

/// Enclosure from the optimal sequence at index `n >= 9`.
pub fn gamma_bootstrap(n: u64, p: u32) -> Result<Enclosure> {
    if n < 9 {
        return domain("the two-sided bound on s_n - gamma needs n >= 9");
    }
    let p = p.max(MIN_PRECISION);
    let w = working_precision(p, n);
    let h = harmonic_float_from_zero(n - 2, w);
    let nn = n as i64;
    let correction = rat(13, 12 * (nn - 1)) + rat(5, 12 * nn);
    let s = &h.add_rational(&correction) - &BigReal::from_int(nn, w).ln()?;
    let n_r = int(nn);
    let cubic = Rational::one() / (int(12) * pow(&n_r, 3));
    let quartic = Rational::one() / (int(120) * pow(&n_r, 4));
    let lo = &s - &BigReal::from_rational(&(&cubic + &quartic * int(13)), w);
    let hi = &s - &BigReal::from_rational(&(&cubic + &quartic * int(11)), w);
    let value = BigReal::from_bounds(lo.lo().clone(), hi.hi().clone(), p)?;
    Ok(Enclosure {
        value,
        method: EnclosureMethod::Bootstrap { n },
    })
}

/// Enclosure from the exponential-integral series with absolute accuracy
/// better than `2^-(p+8)`.
pub fn gamma_series(p: u32) -> Result<Enclosure> {
    let p = p.max(MIN_PRECISION);
    let target = p as f64 + 8.0;
    // (10/27)^N / N <= 2^-target
    let mut n: u64 = 2;
    while (n as f64) * (27f64 / 10.0).log2() + (n as f64).log2() < target + 1.0 {
        n += 1;
    }
    let w: u64 = p as u64 + 24 + 64 - (n * 4).leading_zeros() as u64;
    let scale = BigInt::one() << w;
    let big_n = BigInt::from(n);

    // term_k = N^k / (k * k!), accumulated as floor(term_k * 2^w) with sign.
    let mut sum = BigInt::zero();
    let mut n_pow = BigInt::one();
    let mut fact = BigInt::one();
    let mut k: u64 = 0;
    loop {
        k += 1;
        n_pow *= &big_n;
        fact *= BigInt::from(k);
        let term = (&n_pow * &scale) / (&fact * BigInt::from(k));
        // Past k = N the terms decrease; once a term floors to zero the
        // alternating tail is below one ulp.
        if k > n && term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let terms = k - 1;
    // Per-term floor error below one ulp, tail below one more.
    let slack = BigInt::from(terms + 1);
    let wp = p + 32;
    let series = BigReal::from_bounds(
        Dyadic::new(&sum - &slack, -(w as i64)),
        Dyadic::new(&sum + &slack, -(w as i64)),
        wp,
    )?;
    let ln_n = BigReal::from_int(n as i64, wp).ln()?;
    let e1_bound = pow(&rat(10, 27), n as u32) / int(n as i64);
    let e1 = BigReal::from_bounds(
        Dyadic::zero(),
        BigReal::from_rational(&e1_bound, wp).hi().clone(),
        wp,
    )?;
    let g = &(&series - &ln_n) - &e1;
    Ok(Enclosure {
        value: g.round_to(p),
        method: EnclosureMethod::Series { n, terms },
    })
}

fn cache() -> &'static Mutex<HashMap<u32, Enclosure>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Enclosure>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Certified enclosure of gamma with width at most `2^(2-p)`.
pub fn gamma_reference(p: u32) -> Enclosure {
    let p = p.max(MIN_PRECISION);
    if let Some(hit) = cache().lock().expect("gamma cache").get(&p) {
        return hit.clone();
    }
    let enclosure = match bootstrap_index(p).filter(|&n| n <= MAX_BOOTSTRAP_N) {
        Some(n) => gamma_bootstrap(n, p),
        None => gamma_series(p),
    }
    .expect("valid parameters");
    cache()
        .lock()
        .expect("gamma cache")
        .insert(p, enclosure.clone());
    enclosure
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIGITS: &str = "0.57721566490153286";

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("0,5").unwrap(), rat(1, 2));
        assert_eq!(parse_decimal("-1.25").unwrap(), rat(-5, 4));
        assert!(parse_decimal("abc").is_err());
    }

    #[test]
    fn bootstrap_index_rule() {
        assert_eq!(bootstrap_index(64), Some(1 << 15));
        assert_eq!(bootstrap_index(1024), None);
        for p in [40u32, 64, 70, 100] {
            let n = bootstrap_index(p).unwrap();
            let ok = |n: u64| 60.0 * (n as f64).powi(4) >= 2f64.powi(p as i32 - 1);
            assert!(ok(n) && !ok(n / 2));
        }
    }

    #[test]
    fn bootstrap_at_ten_contains_digits() {
        let e = gamma_bootstrap(10, 128).unwrap();
        assert!(e.contains_decimal(DIGITS).unwrap());
        let w = e.width().to_f64();
        assert!(w <= 1.0 / (60.0 * 1e4) * (1.0 + 1e-9));
        assert!(gamma_bootstrap(8, 64).is_err());
    }

    #[test]
    fn reference_64() {
        let e = gamma_reference(64);
        assert_eq!(e.method(), EnclosureMethod::Bootstrap { n: 1 << 15 });
        assert!(e.certifies_digits(DIGITS).unwrap());
        assert!(e.width() <= Dyadic::new(BigInt::one(), -62));
        // The printed digits are a truncation: gamma exceeds them by ~6e-19,
        // more than the enclosure width, so the rational itself is excluded.
        assert!(!e.contains_decimal(DIGITS).unwrap());
    }

    #[test]
    fn reference_widths() {
        for p in [32u32, 48, 80, 128, 192, 256] {
            let e = gamma_reference(p);
            assert!(e.lo() < e.hi());
            assert!(
                e.width() <= Dyadic::new(BigInt::one(), 2 - p as i64),
                "p={p}"
            );
            assert!(e.consistent_with_digits(DIGITS).unwrap());
            if p >= 64 {
                assert!(e.certifies_digits(DIGITS).unwrap());
            }
        }
    }

    #[test]
    fn routes_agree() {
        let series = gamma_series(64).unwrap();
        let boot = gamma_bootstrap(1 << 15, 64).unwrap();
        assert!(series.value().overlaps(boot.value()));
        assert!(series.value().contains_dyadic(&boot.mid()));
    }

    #[test]
    fn nested_refinement() {
        let precisions = [48u32, 64, 96, 128, 192];
        for pair in precisions.windows(2) {
            let loose = gamma_reference(pair[0]);
            let tight = gamma_reference(pair[1]);
            assert!(loose.value().contains_dyadic(&tight.mid()));
        }
    }
}
