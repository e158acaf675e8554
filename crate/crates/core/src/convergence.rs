//! Convergence rates from exact difference expansions and from numeric fits,
//! and the parameter optimizer for the `v` family.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{int, to_fraction_string, Rational};
use crate::sequences::{eval, SequenceKind};
use crate::series::{difference_expansion_v, AsymptoticSeries};

/// If `n^k (x_n - x_{n+1}) -> l` with `k > 1`, then
/// `n^(k-1) (x_n - x) -> l / (k-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RateReport {
    /// Order of the difference sequence.
    pub k: usize,
    pub l: Rational,
    /// `k - 1`.
    pub sequence_rate: usize,
    pub sequence_limit: Rational,
}

pub fn rate_from_series(series: &AsymptoticSeries<Rational>) -> Result<RateReport> {
    let (k, l) = series
        .terms()
        .find(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .ok_or_else(|| {
            Error::Inconclusive(format!(
                "all coefficients vanish through n^-{}; rate lies beyond the truncation",
                series.order()
            ))
        })?;
    if k < 2 {
        return Err(Error::Domain(format!(
            "leading term n^-{k} does not give a convergent sequence"
        )));
    }
    let sequence_limit = &l / int(k as i64 - 1);
    Ok(RateReport {
        k,
        l,
        sequence_rate: k - 1,
        sequence_limit,
    })
}

/// Least-squares fit of `log|x_n - x_{n+1}|` against `log n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalRate {
    /// Negated slope: the estimated difference order.
    pub order: f64,
    /// Root-mean-square deviation from the fitted line.
    pub residual: f64,
    pub points: Vec<(u64, f64)>,
}

impl EmpiricalRate {
    pub const RESIDUAL_LIMIT: f64 = 0.1;

    pub fn reliable(&self) -> bool {
        self.residual <= Self::RESIDUAL_LIMIT
    }

    /// Estimated rate of `x_n` itself.
    pub fn sequence_rate(&self) -> f64 {
        self.order - 1.0
    }
}

/// Significant bits the difference must keep at every grid point.
pub const MIN_SIGNIFICANT_BITS: u32 = 16;

/// `start, start*factor, ...` up to and including `stop`.
pub fn geometric_grid(start: u64, stop: u64, factor: u64) -> Result<Vec<u64>> {
    if start == 0 || factor < 2 || stop < start {
        return Err(Error::Domain(format!(
            "grid needs 1 <= start <= stop and factor >= 2 (got {start}, {stop}, {factor})"
        )));
    }
    let mut grid = vec![start];
    while let Some(next) = grid
        .last()
        .unwrap()
        .checked_mul(factor)
        .filter(|&v| v <= stop)
    {
        grid.push(next);
    }
    Ok(grid)
}

pub fn empirical_rate(kind: &SequenceKind, grid: &[u64], p: u32) -> Result<EmpiricalRate> {
    if grid.len() < 4 {
        return Err(Error::Domain(format!(
            "rate grid needs at least 4 points, got {}",
            grid.len()
        )));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(
            "rate grid must be strictly increasing".into(),
        ));
    }
    if grid[0] < kind.n_min() {
        return Err(Error::Domain(format!(
            "{kind} is defined from n = {}",
            kind.n_min()
        )));
    }
    let mut points = Vec::with_capacity(grid.len());
    for &n in grid {
        let d = &eval(kind, n, p)? - &eval(kind, n + 1, p)?;
        if d.contains_zero() || d.rel_error() > (-(MIN_SIGNIFICANT_BITS as f64)).exp2() {
            return Err(Error::Precision(format!(
                "x_n - x_(n+1) at n = {n} keeps fewer than {MIN_SIGNIFICANT_BITS} significant bits at p = {p}"
            )));
        }
        points.push((n, d.to_f64().abs()));
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, d)| d.ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
        .sum();
    Ok(EmpiricalRate {
        order: -slope,
        residual: (sse / m).sqrt(),
        points,
    })
}

/// Parameters cancelling the two leading difference coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub a: Rational,
    pub b: Rational,
    /// Index of the first coefficient that survives.
    pub next_index: usize,
    pub next_coeff: Rational,
    pub rate: RateReport,
}

/// Solves `coeff(n^-2) = coeff(n^-3) = 0` for `(a, b)` in the `v` family.
pub fn optimize_parameters(order: usize) -> Result<Optimum> {
    if order < 4 {
        return Err(Error::Domain(format!(
            "optimizer needs order >= 4, got {order}"
        )));
    }
    let symbolic = difference_expansion_v(order)?;
    let row = |k: usize| {
        symbolic.coeff(k).linear_parts().ok_or_else(|| {
            Error::NoOptimum(format!(
                "coefficient of n^-{k} is not linear in (a, b): {}",
                symbolic.coeff(k)
            ))
        })
    };
    let (a2, b2, c2) = row(2)?;
    let (a3, b3, c3) = row(3)?;
    let det = &a2 * &b3 - &a3 * &b2;
    if det.is_zero() {
        return Err(Error::NoOptimum(
            "leading coefficients do not determine (a, b)".into(),
        ));
    }
    let a = (&b2 * &c3 - &b3 * &c2) / &det;
    let b = (&a3 * &c2 - &a2 * &c3) / &det;
    let reduced = symbolic.substitute(&a, &b);
    let rate = rate_from_series(&reduced)?;
    if rate.k < 4 {
        return Err(Error::NoOptimum(format!(
            "solution leaves n^-{} nonzero",
            rate.k
        )));
    }
    Ok(Optimum {
        a,
        b,
        next_index: rate.k,
        next_coeff: rate.l.clone(),
        rate,
    })
}

impl std::fmt::Display for RateReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "difference order {} (limit {}), sequence rate {} (limit {})",
            self.k,
            to_fraction_string(&self.l),
            self.sequence_rate,
            to_fraction_string(&self.sequence_limit)
        )
    }
}
