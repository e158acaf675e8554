//! Catalog of two-sided inequalities for `x_n - gamma`, checked with
//! interval arithmetic against a certified enclosure of gamma.
//!
//! Every inequality is strict. A side is certified only when the intervals
//! for the bound and for the deviation are disjoint; touching or
//! overlapping intervals give [`Holds::Undecided`], never a silent pass.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::gamma::gamma_reference;
use crate::harmonic::working_precision;
use crate::rational::{int, rat, Rational};
use crate::real::BigReal;
use crate::sequences::{eval, SequenceKind, SequenceWalker};

/// Highest precision a sweep escalates to before giving up on a row.
pub const PRECISION_CAP: u32 = 1024;

/// Precision-dependent inputs shared by every bound.
#[derive(Debug, Clone)]
pub struct BoundContext {
    pub p: u32,
    pub gamma: BigReal,
}

impl BoundContext {
    pub fn new(p: u32) -> Self {
        BoundContext {
            p,
            gamma: gamma_reference(p).value().clone(),
        }
    }

    fn q(&self, q: Rational) -> BigReal {
        BigReal::from_rational(&q, self.p)
    }
}

#[derive(Clone, Copy)]
pub enum BoundFn {
    Exact(fn(u64) -> Rational),
    Real(fn(&BoundContext, u64) -> Result<BigReal>),
}

impl BoundFn {
    pub fn eval(&self, ctx: &BoundContext, n: u64) -> Result<BigReal> {
        match self {
            BoundFn::Exact(f) => Ok(ctx.q(f(n))),
            BoundFn::Real(f) => f(ctx, n),
        }
    }

    pub fn exact(&self, n: u64) -> Option<Rational> {
        match self {
            BoundFn::Exact(f) => Some(f(n)),
            BoundFn::Real(_) => None,
        }
    }
}

impl fmt::Debug for BoundFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundFn::Exact(_) => "Exact(..)",
            BoundFn::Real(_) => "Real(..)",
        })
    }
}

/// Which sequence an entry bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    GammaN,
    DeTempleR,
    SOptimal,
}

impl Target {
    pub fn kind(self) -> SequenceKind {
        match self {
            Target::GammaN => SequenceKind::GammaN,
            Target::DeTempleR => SequenceKind::DeTempleR,
            Target::SOptimal => SequenceKind::SOptimal,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundEntry {
    pub id: &'static str,
    pub target: Target,
    pub lower: BoundFn,
    pub upper: BoundFn,
    pub lower_n_min: u64,
    pub upper_n_min: u64,
    /// Human-readable `lower < x_n - gamma < upper`.
    pub formula: &'static str,
    pub note: Option<&'static str>,
}

impl BoundEntry {
    pub fn n_min(&self) -> u64 {
        self.lower_n_min.max(self.upper_n_min)
    }
}

/// Sides of an entry under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Both,
    Lower,
    Upper,
}

impl Side {
    fn has_lower(self) -> bool {
        self != Side::Upper
    }

    fn has_upper(self) -> bool {
        self != Side::Lower
    }
}

/// An entry together with the sides being checked.
#[derive(Debug, Clone)]
pub struct Selection {
    pub entry: BoundEntry,
    pub side: Side,
}

impl Selection {
    pub fn n_min(&self) -> u64 {
        match self.side {
            Side::Both => self.entry.n_min(),
            Side::Lower => self.entry.lower_n_min,
            Side::Upper => self.entry.upper_n_min,
        }
    }

    pub fn label(&self) -> String {
        match self.side {
            Side::Both => self.entry.id.to_string(),
            Side::Lower => format!("{}-lower", self.entry.id),
            Side::Upper => format!("{}-upper", self.entry.id),
        }
    }
}

fn r(n: u64) -> Rational {
    int(n as i64)
}

fn inv(q: Rational) -> Rational {
    Rational::one() / q
}

/// `1/(24 m^2) - 7/(960 m^4) + 31/(8064 m^6)` with `m = n + 1/2`, optionally
/// minus `127/(30720 m^8)`.
fn chen_mortici(n: u64, with_last: bool) -> Rational {
    let m = r(n) + rat(1, 2);
    let m2 = &m * &m;
    let m4 = &m2 * &m2;
    let m6 = &m4 * &m2;
    let base = inv(int(24) * &m2) - rat(7, 960) / &m4 + rat(31, 8064) / &m6;
    if with_last {
        base - rat(127, 30720) / (&m4 * &m4)
    } else {
        base
    }
}

fn karatsuba(n: u64, with_last: bool) -> Rational {
    let n = r(n);
    let n2 = &n * &n;
    let base = inv(int(2) * &n) - inv(int(12) * &n2) + inv(int(120) * &n2 * &n2);
    if with_last {
        base - inv(int(126) * &n2 * &n2 * &n2)
    } else {
        base
    }
}

fn one_minus_gamma(ctx: &BoundContext) -> BigReal {
    &BigReal::from_int(1, ctx.p) - &ctx.gamma
}

/// `1/sqrt(24(1 - gamma - ln(3/2))) - 1`.
fn chen_shift(ctx: &BoundContext) -> Result<BigReal> {
    let ln = ctx.q(rat(3, 2)).ln()?;
    let radicand = (&one_minus_gamma(ctx) - &ln).mul_rational(&int(24));
    Ok(&radicand.sqrt()?.recip()? - &BigReal::from_int(1, ctx.p))
}

fn s_bound(n: u64, quartic: i64) -> Rational {
    let n = r(n);
    let n3 = &n * &n * &n;
    inv(int(12) * &n3) + rat(quartic, 120) / (&n3 * &n)
}

/// The fourteen catalog entries in presentation order.
pub fn catalog() -> Vec<BoundEntry> {
    use BoundFn::{Exact, Real};
    use Target::*;
    vec![
        BoundEntry {
            id: "tims-tyrrell",
            target: GammaN,
            lower: Exact(|n| inv(int(2) * r(n + 1))),
            upper: Exact(|n| inv(int(2) * r(n - 1))),
            lower_n_min: 1,
            upper_n_min: 2,
            formula: "1/(2(n+1)) < gamma_n - gamma < 1/(2(n-1))",
            note: Some("upper bound undefined at n = 1"),
        },
        BoundEntry {
            id: "young",
            target: GammaN,
            lower: Exact(|n| inv(int(2) * r(n + 1))),
            upper: Exact(|n| inv(int(2) * r(n))),
            lower_n_min: 1,
            upper_n_min: 1,
            formula: "1/(2(n+1)) < gamma_n - gamma < 1/(2n)",
            note: None,
        },
        BoundEntry {
            id: "anderson",
            target: GammaN,
            lower: Real(|ctx, n| Ok(one_minus_gamma(ctx).mul_rational(&inv(r(n))))),
            upper: Exact(|n| inv(int(2) * r(n))),
            lower_n_min: 2,
            upper_n_min: 1,
            formula: "(1-gamma)/n < gamma_n - gamma < 1/(2n)",
            note: Some("lower bound is an equality at n = 1"),
        },
        BoundEntry {
            id: "mortici-vernescu",
            target: GammaN,
            lower: Exact(|n| inv(r(2 * n + 1))),
            upper: Exact(|n| inv(int(2) * r(n))),
            lower_n_min: 1,
            upper_n_min: 1,
            formula: "1/(2n+1) < gamma_n - gamma < 1/(2n)",
            note: None,
        },
        BoundEntry {
            id: "toth",
            target: GammaN,
            lower: Exact(|n| inv(int(2) * r(n) + rat(2, 5))),
            upper: Exact(|n| inv(int(2) * r(n) + rat(1, 3))),
            lower_n_min: 1,
            upper_n_min: 1,
            formula: "1/(2n+2/5) < gamma_n - gamma < 1/(2n+1/3)",
            note: None,
        },
        BoundEntry {
            id: "alzer-chen-qi",
            target: GammaN,
            lower: Real(|ctx, n| {
                let two_gamma_m1 = &ctx.gamma.mul_rational(&int(2)) - &BigReal::from_int(1, ctx.p);
                let shift = two_gamma_m1.checked_div(&one_minus_gamma(ctx))?;
                (&BigReal::from_int(2 * n as i64, ctx.p) + &shift).recip()
            }),
            upper: Exact(|n| inv(int(2) * r(n) + rat(1, 3))),
            lower_n_min: 2,
            upper_n_min: 1,
            formula: "1/(2n+(2gamma-1)/(1-gamma)) < gamma_n - gamma < 1/(2n+1/3)",
            note: Some("lower bound is an equality at n = 1"),
        },
        BoundEntry {
            id: "qiu-vuorinen",
            target: GammaN,
            lower: Exact(|n| inv(int(2) * r(n)) - rat(1, 2) / (r(n) * r(n))),
            upper: Real(|ctx, n| {
                let beta = ctx.gamma.add_rational(&rat(-1, 2));
                Ok(&ctx.q(inv(int(2) * r(n))) - &beta.mul_rational(&inv(r(n) * r(n))))
            }),
            lower_n_min: 1,
            upper_n_min: 2,
            formula: "1/(2n) - alpha/n^2 < gamma_n - gamma < 1/(2n) - beta/n^2, alpha = 1/2, beta = gamma - 1/2",
            note: Some("upper bound is an equality at n = 1"),
        },
        BoundEntry {
            id: "franel",
            target: GammaN,
            lower: Exact(|n| inv(int(2) * r(n)) - inv(int(8) * r(n) * r(n))),
            upper: Exact(|n| inv(int(2) * r(n))),
            lower_n_min: 1,
            upper_n_min: 1,
            formula: "1/(2n) - 1/(8n^2) < gamma_n - gamma < 1/(2n)",
            note: None,
        },
        BoundEntry {
            id: "karatsuba",
            target: GammaN,
            lower: Exact(|n| karatsuba(n, true)),
            upper: Exact(|n| karatsuba(n, false)),
            lower_n_min: 1,
            upper_n_min: 1,
            formula: "1/(2n) - 1/(12n^2) + 1/(120n^4) - 1/(126n^6) < gamma_n - gamma < 1/(2n) - 1/(12n^2) + 1/(120n^4)",
            note: Some(
                "the asymptotic expansion has -1/(252n^6); the 1/(126n^6) term is kept as stated and is a weaker, still valid lower bound",
            ),
        },
        BoundEntry {
            id: "mortici",
            target: GammaN,
            lower: Exact(|n| inv(int(2) * r(n) + rat(1, 3) + inv(int(18) * r(n)))),
            upper: Exact(|n| inv(int(2) * r(n) + rat(1, 3) + inv(int(32) * r(n)))),
            lower_n_min: 1,
            upper_n_min: 1,
            formula: "1/(2n+1/3+1/(18n)) < gamma_n - gamma < 1/(2n+1/3+1/(32n))",
            note: None,
        },
        BoundEntry {
            id: "detemple",
            target: DeTempleR,
            lower: Exact(|n| inv(int(24) * r(n + 1) * r(n + 1))),
            upper: Exact(|n| inv(int(24) * r(n) * r(n))),
            lower_n_min: 1,
            upper_n_min: 1,
            formula: "1/(24(n+1)^2) < R_n - gamma < 1/(24n^2)",
            note: None,
        },
        BoundEntry {
            id: "chen",
            target: DeTempleR,
            lower: Real(|ctx, n| {
                let m = &BigReal::from_int(n as i64, ctx.p) + &chen_shift(ctx)?;
                (&m * &m).mul_rational(&int(24)).recip()
            }),
            upper: Exact(|n| {
                let m = r(n) + rat(1, 2);
                inv(int(24) * &m * &m)
            }),
            lower_n_min: 2,
            upper_n_min: 1,
            formula: "1/(24(n+a)^2) < R_n - gamma < 1/(24(n+b)^2), a = 1/sqrt(24(1-gamma-ln(3/2))) - 1, b = 1/2",
            note: Some("lower bound is an equality at n = 1 by the choice of a"),
        },
        BoundEntry {
            id: "chen-mortici",
            target: DeTempleR,
            lower: Exact(|n| chen_mortici(n, true)),
            upper: Exact(|n| chen_mortici(n, false)),
            lower_n_min: 1,
            upper_n_min: 1,
            formula: "1/(24m^2) - (7/960)/m^4 + (31/8064)/m^6 - (127/30720)/m^8 < R_n - gamma < 1/(24m^2) - (7/960)/m^4 + (31/8064)/m^6, m = n+1/2",
            note: None,
        },
        BoundEntry {
            id: "theorem22",
            target: SOptimal,
            lower: Exact(|n| s_bound(n, 11)),
            upper: Exact(|n| s_bound(n, 13)),
            lower_n_min: 3,
            upper_n_min: 9,
            formula: "1/(12n^3) + 11/(120n^4) < s_n - gamma < 1/(12n^3) + 13/(120n^4)",
            note: Some("lower bound holds from n = 3, upper from n = 9"),
        },
    ]
}

/// Entries that exist only to exercise verdict handling: one is false at
/// every `n`, the other is an equality at its only index.
#[cfg(feature = "fixtures")]
pub fn fixtures() -> Vec<BoundEntry> {
    vec![
        BoundEntry {
            id: "fixture-falsified",
            target: Target::GammaN,
            lower: BoundFn::Exact(|_| int(0)),
            upper: BoundFn::Exact(|n| inv(int(4) * r(n))),
            lower_n_min: 1,
            upper_n_min: 1,
            formula: "0 < gamma_n - gamma < 1/(4n)",
            note: Some("false for every n"),
        },
        BoundEntry {
            id: "fixture-equality",
            target: Target::GammaN,
            lower: BoundFn::Real(|ctx, n| Ok(one_minus_gamma(ctx).mul_rational(&inv(r(n))))),
            upper: BoundFn::Exact(|n| inv(int(2) * r(n))),
            lower_n_min: 1,
            upper_n_min: 1,
            formula: "(1-gamma)/n < gamma_n - gamma < 1/(2n)",
            note: Some("equality at n = 1, never decidable there"),
        },
    ]
}

fn all_entries() -> Vec<BoundEntry> {
    #[allow(unused_mut)]
    let mut entries = catalog();
    #[cfg(feature = "fixtures")]
    entries.extend(fixtures());
    entries
}

/// Resolves `id`, `id-lower` or `id-upper`.
pub fn lookup(id: &str) -> Result<Selection> {
    let entries = all_entries();
    let find = |name: &str| entries.iter().find(|e| e.id == name).cloned();
    if let Some(entry) = find(id) {
        return Ok(Selection {
            entry,
            side: Side::Both,
        });
    }
    for (suffix, side) in [("-lower", Side::Lower), ("-upper", Side::Upper)] {
        if let Some(entry) = id.strip_suffix(suffix).and_then(find) {
            return Ok(Selection { entry, side });
        }
    }
    Err(Error::UnknownEntry(id.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Holds {
    CertifiedTrue,
    CertifiedFalse,
    Undecided,
}

impl Holds {
    pub fn as_str(self) -> &'static str {
        match self {
            Holds::CertifiedTrue => "certified-true",
            Holds::CertifiedFalse => "certified-false",
            Holds::Undecided => "undecided",
        }
    }

    fn combine(self, other: Holds) -> Holds {
        use Holds::*;
        match (self, other) {
            (CertifiedFalse, _) | (_, CertifiedFalse) => CertifiedFalse,
            (CertifiedTrue, CertifiedTrue) => CertifiedTrue,
            _ => Undecided,
        }
    }
}

impl fmt::Display for Holds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub n: u64,
    pub holds: Holds,
    /// Enclosure of `x_n - gamma`.
    pub value: BigReal,
    pub lower: Option<BigReal>,
    pub upper: Option<BigReal>,
    /// `value - lower`.
    pub margin_lower: Option<BigReal>,
    /// `upper - value`.
    pub margin_upper: Option<BigReal>,
    /// Precision that produced this verdict.
    pub precision: u32,
}

impl Verdict {
    /// Margin on the side closest to failing.
    pub fn margin(&self) -> BigReal {
        match (&self.margin_lower, &self.margin_upper) {
            (Some(l), Some(u)) => {
                if l.lo() <= u.lo() {
                    l.clone()
                } else {
                    u.clone()
                }
            }
            (Some(m), None) | (None, Some(m)) => m.clone(),
            (None, None) => unreachable!("a selection has at least one side"),
        }
    }
}

fn side_holds(margin: &BigReal) -> Holds {
    if margin.certainly_positive() {
        Holds::CertifiedTrue
    } else if margin.hi().signum() <= 0 {
        Holds::CertifiedFalse
    } else {
        Holds::Undecided
    }
}

fn judge(sel: &Selection, ctx: &BoundContext, n: u64, x_n: &BigReal) -> Result<Verdict> {
    let value = x_n - &ctx.gamma;
    let mut holds = Holds::CertifiedTrue;
    let (mut lower, mut upper, mut margin_lower, mut margin_upper) = (None, None, None, None);
    if sel.side.has_lower() {
        let b = sel.entry.lower.eval(ctx, n)?;
        let m = &value - &b;
        holds = holds.combine(side_holds(&m));
        lower = Some(b);
        margin_lower = Some(m);
    }
    if sel.side.has_upper() {
        let b = sel.entry.upper.eval(ctx, n)?;
        let m = &b - &value;
        holds = holds.combine(side_holds(&m));
        upper = Some(b);
        margin_upper = Some(m);
    }
    Ok(Verdict {
        n,
        holds,
        value,
        lower,
        upper,
        margin_lower,
        margin_upper,
        precision: ctx.p,
    })
}

fn check_index(sel: &Selection, n: u64) -> Result<()> {
    if n < sel.n_min() {
        return Err(Error::Domain(format!(
            "{} applies from n = {}, got n = {n}",
            sel.label(),
            sel.n_min()
        )));
    }
    Ok(())
}

/// Verdict at a single `n` and precision, without escalation.
pub fn check(sel: &Selection, n: u64, p: u32) -> Result<Verdict> {
    check_index(sel, n)?;
    let ctx = BoundContext::new(p);
    let x_n = eval(&sel.entry.target.kind(), n, working_precision(p, n))?;
    judge(sel, &ctx, n, &x_n)
}

/// Re-checks an undecided row at doubled precision until it resolves or the
/// cap is reached.
pub fn check_escalating(sel: &Selection, n: u64, p: u32, cap: u32) -> Result<Verdict> {
    let mut verdict = check(sel, n, p)?;
    let mut q = p;
    while verdict.holds == Holds::Undecided && q < cap {
        q = (q * 2).min(cap);
        verdict = check(sel, n, q)?;
    }
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub label: String,
    pub precision: u32,
    pub rows: Vec<Verdict>,
}

impl SweepReport {
    pub fn count(&self, holds: Holds) -> usize {
        self.rows.iter().filter(|v| v.holds == holds).count()
    }

    pub fn all_true(&self) -> bool {
        self.count(Holds::CertifiedTrue) == self.rows.len()
    }

    /// Overall outcome: any false row wins over undecided rows.
    pub fn outcome(&self) -> Holds {
        self.rows
            .iter()
            .fold(Holds::CertifiedTrue, |acc, v| acc.combine(v.holds))
    }

    /// Row with the smallest margin, by lower endpoint.
    pub fn min_margin(&self) -> Option<(u64, BigReal)> {
        self.rows
            .iter()
            .map(|v| (v.n, v.margin()))
            .min_by(|a, b| a.1.lo().cmp(b.1.lo()))
    }

    pub fn max_precision(&self) -> u32 {
        self.rows
            .iter()
            .map(|v| v.precision)
            .max()
            .unwrap_or(self.precision)
    }
}

/// Verdicts for every `n` in `[from, to]`, escalating precision on
/// undecided rows up to [`PRECISION_CAP`].
pub fn sweep(sel: &Selection, from: u64, to: u64, p: u32) -> Result<SweepReport> {
    sweep_with_cap(sel, from, to, p, PRECISION_CAP.max(p))
}

pub fn sweep_with_cap(
    sel: &Selection,
    from: u64,
    to: u64,
    p: u32,
    cap: u32,
) -> Result<SweepReport> {
    check_index(sel, from)?;
    if to < from {
        return Err(Error::Domain(format!("empty sweep range [{from}, {to}]")));
    }
    let ctx = BoundContext::new(p);
    let mut walker = SequenceWalker::new(sel.entry.target.kind(), p, to);
    let mut rows = Vec::with_capacity((to - from + 1) as usize);
    for n in from..=to {
        let mut verdict = judge(sel, &ctx, n, &walker.value_at(n)?)?;
        if verdict.holds == Holds::Undecided && p < cap {
            verdict = check_escalating(sel, n, (p * 2).min(cap), cap)?;
        }
        rows.push(verdict);
    }
    Ok(SweepReport {
        label: sel.label(),
        precision: p,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        let cat = catalog();
        assert_eq!(cat.len(), 14);
        let mut ids: Vec<_> = cat.iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 14);
        let t22 = lookup("theorem22").unwrap();
        assert_eq!((t22.entry.lower_n_min, t22.entry.upper_n_min), (3, 9));
        assert_eq!(lookup("theorem22-lower").unwrap().n_min(), 3);
        assert_eq!(lookup("theorem22-upper").unwrap().side, Side::Upper);
        assert!(matches!(lookup("nope"), Err(Error::UnknownEntry(_))));
        assert!(lookup("karatsuba")
            .unwrap()
            .entry
            .note
            .unwrap()
            .contains("252"));
    }

    #[test]
    fn transcribed_values() {
        let toth = lookup("toth").unwrap().entry;
        assert_eq!(toth.lower.exact(2), Some(rat(5, 22)));
        assert_eq!(toth.upper.exact(2), Some(rat(3, 13)));
        let k = lookup("karatsuba").unwrap().entry;
        let gap = k.upper.exact(3).unwrap() - k.lower.exact(3).unwrap();
        assert_eq!(gap, rat(1, 126 * 729));
        let cm = lookup("chen-mortici").unwrap().entry;
        // m = 3/2: (127/30720) / (3/2)^8
        assert_eq!(
            cm.upper.exact(1).unwrap() - cm.lower.exact(1).unwrap(),
            rat(127 * 256, 30720 * 6561)
        );
    }

    #[test]
    fn chen_constant() {
        let ctx = BoundContext::new(128);
        let a = chen_shift(&ctx).unwrap();
        assert!((a.to_f64() - 0.551_065).abs() < 1e-6);
    }

    #[test]
    fn single_checks() {
        let young = lookup("young").unwrap();
        assert_eq!(check(&young, 5, 128).unwrap().holds, Holds::CertifiedTrue);
        let t22 = lookup("theorem22").unwrap();
        assert_eq!(check(&t22, 9, 192).unwrap().holds, Holds::CertifiedTrue);
        assert_eq!(
            check(&lookup("theorem22-lower").unwrap(), 3, 192)
                .unwrap()
                .holds,
            Holds::CertifiedTrue
        );
        assert!(matches!(check(&t22, 8, 192), Err(Error::Domain(_))));
    }

    #[test]
    fn equality_cases_are_not_certified() {
        // Below n_min the one-sided checks still run: n = 1 is an equality.
        let entry = lookup("anderson").unwrap().entry;
        let sel = Selection {
            entry: BoundEntry {
                lower_n_min: 1,
                ..entry
            },
            side: Side::Lower,
        };
        let v = check_escalating(&sel, 1, 64, 256).unwrap();
        assert_eq!(v.holds, Holds::Undecided);
        assert_eq!(v.precision, 256);
    }

    #[test]
    fn self_consistency() {
        for entry in catalog() {
            let ctx = BoundContext::new(128);
            for n in entry.n_min()..=1000 {
                match (entry.lower.exact(n), entry.upper.exact(n)) {
                    (Some(lo), Some(hi)) => assert!(lo < hi, "{} at {n}", entry.id),
                    _ => {
                        let lo = entry.lower.eval(&ctx, n).unwrap();
                        let hi = entry.upper.eval(&ctx, n).unwrap();
                        assert!(lo.certainly_lt(&hi), "{} at {n}", entry.id);
                    }
                }
            }
        }
    }

    #[test]
    fn short_sweeps() {
        for id in ["mortici-vernescu", "franel", "chen"] {
            let sel = lookup(id).unwrap();
            let report = sweep(&sel, sel.n_min(), 200, 128).unwrap();
            assert!(report.all_true(), "{id}");
        }
        let sel = lookup("theorem22").unwrap();
        let report = sweep(&sel, 9, 100, 192).unwrap();
        assert!(report.all_true());
        assert_eq!(report.min_margin().unwrap().0, 100);
    }

    #[test]
    fn raising_precision_keeps_true_verdicts() {
        let sel = lookup("chen-mortici").unwrap();
        for n in [1, 10, 100] {
            let lo = check(&sel, n, 96).unwrap().holds;
            let hi = check(&sel, n, 256).unwrap().holds;
            assert!(lo != Holds::CertifiedFalse);
            assert_eq!(hi, Holds::CertifiedTrue);
        }
    }
}
