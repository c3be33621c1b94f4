//! Experiment orchestration: per-spec pipelines and the combined report.
//!
//! For each spec the pipeline is: complexity table, growth report,
//! transitivity, automorphisms of the configured range, their orders modulo
//! the shift, and rectangle-count checks on the configured grid. Specs run in
//! parallel; a failing spec records its error and the others are unaffected.

mod config;
mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{
    enumerate_automorphisms, AutomorphismCertificate, CodeFile, OrderModShift, SearchLimits, SearchStats,
};
use crate::error::Result;
use crate::language::{growth_report, morse_hedlund_classify, GrowthReport, MorseHedlund, Subshift, Transitivity};
use crate::two_dim::{certify_period, qz_verdict, rect_complexity, seed_len, PeriodSearch, PeriodVector, QzVerdict};

pub use config::{default_aut_range, ExperimentConfig, Format, Horizons, NamedSpec, OutputConfig, SpecEntry, BUNDLED_CONFIG};
pub use report::{complexity_csv, emit_report, render_json, render_text, CONVENTIONS};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AutomorphismEntry {
    pub code: CodeFile,
    pub inverse: CodeFile,
    pub order: OrderModShift,
    pub period: Option<PeriodVector>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AutomorphismSummary {
    pub range: usize,
    pub max_inv_range: usize,
    pub depth: usize,
    /// Endomorphy is exact at this depth (full shift or SFT).
    pub exact: bool,
    pub count: usize,
    pub stats: SearchStats,
    pub entries: Vec<AutomorphismEntry>,
}

/// Rectangle count of one automorphism on one `n x k` window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectCheck {
    pub automorphism: usize,
    pub n: usize,
    pub k: usize,
    pub count: u64,
    /// `P_X(2Nk - 2N + n)`.
    pub bound: u64,
    pub bound_holds: bool,
    pub qz: QzVerdict,
}

/// `P(n, 1) = P_X(n)` for the identity row count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCheck {
    pub automorphism: usize,
    pub n: usize,
    pub count: u64,
    pub complexity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecVerdict {
    AllPeriodicModShift { max_b: usize },
    /// Indices of automorphisms whose order search hit its bounds.
    Inconclusive { bound_exhausted: Vec<usize> },
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecReport {
    pub name: String,
    pub description: String,
    pub kind: String,
    pub complexity: Option<Vec<u64>>,
    pub morse_hedlund: Option<MorseHedlund>,
    pub growth: Option<GrowthReport>,
    pub transitivity: Option<Transitivity>,
    pub automorphisms: Option<AutomorphismSummary>,
    pub rect_checks: Vec<RectCheck>,
    pub row_checks: Vec<RowCheck>,
    pub notes: Vec<String>,
    pub error: Option<String>,
    pub verdict: SpecVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OverallVerdict {
    AllPeriodicModShift { max_b: usize },
    Inconclusive {
        /// `spec#index` of each automorphism without a found order.
        bound_exhausted: Vec<String>,
        failed_specs: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub conventions: Vec<String>,
    pub horizons: Horizons,
    pub specs: Vec<SpecReport>,
    pub verdict: OverallVerdict,
}

impl TheoremReport {
    pub fn spec(&self, name: &str) -> Option<&SpecReport> {
        self.specs.iter().find(|s| s.name == name)
    }

    pub fn bound_violations(&self) -> usize {
        self.specs.iter().flat_map(|s| &s.rect_checks).filter(|c| !c.bound_holds).count()
    }

    pub fn has_failures(&self) -> bool {
        self.specs.iter().any(|s| s.error.is_some())
    }
}

/// Runs every spec of `config`. Never fails as a whole: per-spec errors are
/// recorded in that spec's report.
pub fn run_experiment(config: &ExperimentConfig) -> Result<TheoremReport> {
    let specs = config.resolved_specs()?;
    let h = &config.horizons;
    let specs: Vec<SpecReport> = specs.par_iter().map(|s| run_spec(s, h)).collect();

    let mut bound_exhausted = Vec::new();
    let mut failed_specs = Vec::new();
    for s in &specs {
        match &s.verdict {
            SpecVerdict::AllPeriodicModShift { .. } => {}
            SpecVerdict::Inconclusive { bound_exhausted: b } => {
                bound_exhausted.extend(b.iter().map(|i| format!("{}#{i}", s.name)));
            }
            SpecVerdict::Failed => failed_specs.push(s.name.clone()),
        }
    }
    let verdict = if bound_exhausted.is_empty() && failed_specs.is_empty() {
        OverallVerdict::AllPeriodicModShift { max_b: h.max_b }
    } else {
        OverallVerdict::Inconclusive { bound_exhausted, failed_specs }
    };
    Ok(TheoremReport {
        conventions: CONVENTIONS.iter().map(|s| s.to_string()).collect(),
        horizons: h.clone(),
        specs,
        verdict,
    })
}

fn run_spec(named: &NamedSpec, h: &Horizons) -> SpecReport {
    let mut report = SpecReport {
        name: named.name.clone(),
        description: named.spec.to_string(),
        kind: named.spec.kind_name().to_string(),
        complexity: None,
        morse_hedlund: None,
        growth: None,
        transitivity: None,
        automorphisms: None,
        rect_checks: Vec::new(),
        row_checks: Vec::new(),
        notes: Vec::new(),
        error: None,
        verdict: SpecVerdict::Failed,
    };
    if let Err(e) = fill_spec(named, h, &mut report) {
        report.error = Some(e.to_string());
        report.verdict = SpecVerdict::Failed;
    }
    report
}

fn fill_spec(named: &NamedSpec, h: &Horizons, report: &mut SpecReport) -> Result<()> {
    let shift = Subshift::new(named.spec.clone())?.with_word_cap(h.word_cap);

    let table = shift.complexity_table(h.n_max)?;
    report.complexity = Some(table.clone());
    report.morse_hedlund = Some(morse_hedlund_classify(&table)?);
    let growth = growth_report(&table)?;
    let positive_entropy = growth.pansiot_class == crate::language::PansiotClass::Exponential;
    report.growth = Some(growth);
    report.transitivity = Some(shift.transitivity());

    let range = named.aut_range;
    let depth = h.depth.unwrap_or_else(|| named.spec.default_depth(range));
    let exact = named.spec.has_exact_endomorphy_bound();
    let search = enumerate_automorphisms(&shift, range, h.max_inv_range, depth, SearchLimits { max_nodes: h.max_nodes })?;
    if exact {
        report.notes.push(format!(
            "endomorphy is exact at depth {depth} (at least F_max + 2N for this shift)"
        ));
    } else {
        report.notes.push(format!(
            "endomorphy verified to depth {depth}; this is evidence, not a proof, for {} shifts",
            named.spec.kind_name()
        ));
    }
    if positive_entropy {
        report.notes.push(format!(
            "range-{range} slice only: the automorphism group of a positive-entropy shift is far larger, \
             and on full shifts it contains elements of infinite order modulo the shift at larger ranges"
        ));
    }

    let mut entries = Vec::new();
    let mut exhausted = Vec::new();
    for (i, cert) in search.certificates.iter().enumerate() {
        let period = certify_period(&shift, cert, h.max_b, h.max_a)?;
        let (order, period) = match period {
            PeriodSearch::Found(v) => (OrderModShift::Found { b: v.b as usize, a: v.a }, Some(v)),
            PeriodSearch::BoundExhausted { max_b, max_a } => {
                exhausted.push(i);
                (OrderModShift::BoundExhausted { max_b, max_a }, None)
            }
        };
        entries.push(AutomorphismEntry {
            code: CodeFile::from_code(&cert.code),
            inverse: CodeFile::from_code(&cert.inverse),
            order,
            period,
        });
    }

    for (i, cert) in search.certificates.iter().enumerate() {
        rect_checks(&shift, i, cert, h, report)?;
    }

    report.automorphisms = Some(AutomorphismSummary {
        range,
        max_inv_range: h.max_inv_range,
        depth,
        exact,
        count: search.certificates.len(),
        stats: search.stats,
        entries,
    });
    report.verdict = if exhausted.is_empty() {
        SpecVerdict::AllPeriodicModShift { max_b: h.max_b }
    } else {
        SpecVerdict::Inconclusive { bound_exhausted: exhausted }
    };
    Ok(())
}

fn rect_checks(
    shift: &Subshift,
    index: usize,
    cert: &AutomorphismCertificate,
    h: &Horizons,
    report: &mut SpecReport,
) -> Result<()> {
    let code = &cert.code;
    for &n in &h.rect_grid {
        let count = rect_complexity(shift, code, n, 1)?;
        report.row_checks.push(RowCheck { automorphism: index, n, count, complexity: shift.complexity(n)? });
        for &k in &h.rect_grid {
            let count = rect_complexity(shift, code, n, k)?;
            let bound = shift.complexity(seed_len(code.range(), n, k))?;
            report.rect_checks.push(RectCheck {
                automorphism: index,
                n,
                k,
                count,
                bound,
                bound_holds: count <= bound,
                qz: qz_verdict(count, n, k),
            });
        }
    }
    Ok(())
}
