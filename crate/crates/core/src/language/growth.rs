//! Finite-horizon growth statistics of a complexity table.
//!
//! Every figure here is an estimate at the table's horizon; nothing is a
//! limit. `subquadratic_proxy` in particular is `min P(n)/n^2` over the
//! table, a stand-in for the `liminf` that cannot be decided from finitely
//! many values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shortest table accepted by [`growth_report`].
pub const MIN_GROWTH_TABLE: usize = 8;

/// Relative residual gap below which the growth fit declines to choose.
pub const CLASS_SEPARATION: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PansiotClass {
    Const,
    Linear,
    NLogLogN,
    NLogN,
    Quadratic,
    Exponential,
    Unclassified,
}

impl PansiotClass {
    /// Const and Linear are the classes with an unambiguous subquadratic verdict at desk scale.
    pub fn is_at_most_linear(self) -> bool {
        matches!(self, PansiotClass::Const | PansiotClass::Linear)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MorseHedlund {
    /// Least `n` with `P(n) <= n`.
    ForcedPeriodic(usize),
    AperiodicConsistent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassFit {
    pub class: PansiotClass,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    /// `P(1), ..., P(n_max)`.
    pub table: Vec<u64>,
    pub horizon: usize,
    /// `ln P(n_max) / n_max`, in nats.
    pub entropy_estimate: f64,
    pub upper_poly_estimate: f64,
    pub lower_poly_estimate: f64,
    /// First `n` of the window used for the polynomial estimates and the class fit.
    pub tail_start: usize,
    pub pansiot_class: PansiotClass,
    pub fits: Vec<ClassFit>,
    pub subquadratic_proxy: f64,
    pub subquadratic_proxy_at: usize,
}

fn check_table(table: &[u64]) -> Result<()> {
    if let Some(i) = table.windows(2).position(|w| w[1] < w[0]) {
        return Err(Error::MalformedTable(i + 2));
    }
    if let Some(i) = table.iter().position(|&p| p == 0) {
        return Err(Error::MalformedTable(i + 1));
    }
    Ok(())
}

pub fn morse_hedlund_classify(table: &[u64]) -> Result<MorseHedlund> {
    if table.is_empty() {
        return Err(Error::TableTooShort { len: 0, min: 1 });
    }
    check_table(table)?;
    Ok(table
        .iter()
        .enumerate()
        .find(|&(i, &p)| p <= (i + 1) as u64)
        .map(|(i, _)| MorseHedlund::ForcedPeriodic(i + 1))
        .unwrap_or(MorseHedlund::AperiodicConsistent))
}

/// Sum of squared deviations of `ln P(n) - ln f(n)` from its mean.
fn shape_residual(points: &[(f64, f64)], log_shape: impl Fn(f64) -> f64) -> f64 {
    let d: Vec<f64> = points.iter().map(|&(n, lp)| lp - log_shape(n)).collect();
    let mean = d.iter().sum::<f64>() / d.len() as f64;
    d.iter().map(|x| (x - mean) * (x - mean)).sum()
}

pub fn growth_report(table: &[u64]) -> Result<GrowthReport> {
    if table.len() < MIN_GROWTH_TABLE {
        return Err(Error::TableTooShort { len: table.len(), min: MIN_GROWTH_TABLE });
    }
    check_table(table)?;
    let n_max = table.len();
    let p = |n: usize| table[n - 1] as f64;

    let entropy_estimate = p(n_max).ln() / n_max as f64;

    let tail_start = n_max.div_ceil(2).max(3);
    let ratios: Vec<f64> = (tail_start..=n_max).map(|n| p(n).ln() / (n as f64).ln()).collect();
    let upper_poly_estimate = ratios.iter().copied().fold(f64::MIN, f64::max);
    let lower_poly_estimate = ratios.iter().copied().fold(f64::MAX, f64::min);

    let points: Vec<(f64, f64)> = (tail_start..=n_max).map(|n| (n as f64, p(n).ln())).collect();
    let mut fits = vec![
        ClassFit { class: PansiotClass::Const, residual: shape_residual(&points, |_| 0.0) },
        ClassFit { class: PansiotClass::Linear, residual: shape_residual(&points, f64::ln) },
        ClassFit {
            class: PansiotClass::NLogLogN,
            residual: shape_residual(&points, |n| n.ln() + n.ln().ln().ln()),
        },
        ClassFit {
            class: PansiotClass::NLogN,
            residual: shape_residual(&points, |n| n.ln() + n.ln().ln()),
        },
        ClassFit { class: PansiotClass::Quadratic, residual: shape_residual(&points, |n| 2.0 * n.ln()) },
    ];
    // The exponential shape takes its rate from the entropy estimate; at
    // rate zero it would coincide with Const.
    if entropy_estimate > 0.0 {
        fits.push(ClassFit {
            class: PansiotClass::Exponential,
            residual: shape_residual(&points, |n| entropy_estimate * n),
        });
    }

    let mut ranked: Vec<&ClassFit> = fits.iter().collect();
    ranked.sort_by(|a, b| a.residual.total_cmp(&b.residual).then(a.class.cmp(&b.class)));
    let (best, second) = (ranked[0], ranked[1]);
    let separated = second.residual > 0.0 && (second.residual - best.residual) / second.residual >= CLASS_SEPARATION;
    let pansiot_class = if separated { best.class } else { PansiotClass::Unclassified };

    let (subquadratic_proxy_at, subquadratic_proxy) = (1..=n_max)
        .map(|n| (n, p(n) / (n * n) as f64))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");

    Ok(GrowthReport {
        table: table.to_vec(),
        horizon: n_max,
        entropy_estimate,
        upper_poly_estimate,
        lower_poly_estimate,
        tail_start,
        pansiot_class,
        fits,
        subquadratic_proxy,
        subquadratic_proxy_at,
    })
}
