//! Report files. All output is a pure function of the report, so identical
//! runs give byte-identical files.
//!
//! CSV files:
//! - `complexity_<spec>.csv`: header `n,P`, one row per length;
//! - `automorphisms.csv`: `spec,index,range,inverse_range,b,a,period_a,period_b`,
//!   with empty order fields when the search hit its bounds;
//! - `rectangles.csv`: `spec,automorphism,n,k,count,bound,bound_holds,qz`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::codes::OrderModShift;
use crate::error::{Error, Result};

use super::{Format, OverallVerdict, SpecVerdict, TheoremReport};

pub const CONVENTIONS: [&str; 3] = [
    "shift: (sigma x)(i) = x(i+1)",
    "order (b, a): least b >= 1, then least |a| (positive first), with sigma^a phi^b = id",
    "period vector (a, b): eta(i+a, j+b) = eta(i, j) where eta(i, j) = (phi^j x)(i), i.e. S^a T^b eta = eta",
];

pub fn render_json(report: &TheoremReport) -> Result<String> {
    serde_json::to_string_pretty(report).map(|mut s| {
        s.push('\n');
        s
    })
    .map_err(|e| Error::Io(e.to_string()))
}

/// `n,P` header followed by one line per length, starting at 1.
pub fn complexity_csv(table: &[u64]) -> String {
    let mut out = String::from("n,P\n");
    for (i, p) in table.iter().enumerate() {
        let _ = writeln!(out, "{},{p}", i + 1);
    }
    out
}

fn automorphisms_csv(report: &TheoremReport) -> String {
    let mut out = String::from("spec,index,range,inverse_range,b,a,period_a,period_b\n");
    for s in &report.specs {
        let Some(a) = &s.automorphisms else { continue };
        for (i, e) in a.entries.iter().enumerate() {
            let order = match e.order {
                OrderModShift::Found { b, a } => format!("{b},{a}"),
                OrderModShift::BoundExhausted { .. } => ",".into(),
            };
            let period = e.period.map_or(",".into(), |v| format!("{},{}", v.a, v.b));
            let _ = writeln!(out, "{},{i},{},{},{order},{period}", s.name, e.code.range, e.inverse.range);
        }
    }
    out
}

fn rectangles_csv(report: &TheoremReport) -> String {
    let mut out = String::from("spec,automorphism,n,k,count,bound,bound_holds,qz\n");
    for s in &report.specs {
        for c in &s.rect_checks {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{:?}",
                s.name, c.automorphism, c.n, c.k, c.count, c.bound, c.bound_holds, c.qz
            );
        }
    }
    out
}

pub fn render_text(report: &TheoremReport) -> String {
    let mut out = String::new();
    let h = &report.horizons;
    out.push_str("Conventions\n");
    for c in &report.conventions {
        let _ = writeln!(out, "  {c}");
    }
    let _ = writeln!(
        out,
        "\nHorizons: n_max {}, max inverse range {}, max_b {}, max_a {}, rect grid {:?}\n",
        h.n_max, h.max_inv_range, h.max_b, h.max_a, h.rect_grid
    );
    for s in &report.specs {
        let _ = writeln!(out, "[{}] {}", s.name, s.description);
        if let Some(t) = &s.complexity {
            let shown: Vec<String> = t.iter().take(12).map(u64::to_string).collect();
            let more = if t.len() > 12 { ", ..." } else { "" };
            let _ = writeln!(out, "  P(1..{}) = {}{more}", t.len(), shown.join(", "));
        }
        if let Some(m) = &s.morse_hedlund {
            let _ = writeln!(out, "  Morse-Hedlund: {m:?}");
        }
        if let Some(g) = &s.growth {
            let _ = writeln!(
                out,
                "  growth: {:?}, entropy estimate {:.6}, polynomial exponent in [{:.4}, {:.4}], min P(n)/n^2 = {:.6} at n = {}",
                g.pansiot_class,
                g.entropy_estimate,
                g.lower_poly_estimate,
                g.upper_poly_estimate,
                g.subquadratic_proxy,
                g.subquadratic_proxy_at
            );
        }
        if let Some(t) = &s.transitivity {
            let _ = writeln!(out, "  transitivity: {t:?}");
        }
        if let Some(a) = &s.automorphisms {
            let _ = writeln!(
                out,
                "  automorphisms of range {} (inverse range <= {}): {}  [{} endomorphisms, {} non-injective, {} non-surjective, {} inverse bound exhausted]",
                a.range,
                a.max_inv_range,
                a.count,
                a.stats.endomorphisms,
                a.stats.proved_non_injective,
                a.stats.proved_non_surjective,
                a.stats.inverse_bound_exhausted
            );
            for (i, e) in a.entries.iter().enumerate() {
                let order = match e.order {
                    OrderModShift::Found { b, a } => format!("order (b, a) = ({b}, {a})"),
                    OrderModShift::BoundExhausted { max_b, max_a } => {
                        format!("no order with b <= {max_b}, |a| <= {max_a}")
                    }
                };
                let period = e.period.map_or(String::new(), |v| format!(", period vector {v}"));
                let _ = writeln!(out, "    #{i}: inverse range {}, {order}{period}", e.inverse.range);
            }
        }
        if !s.rect_checks.is_empty() {
            let held = s.rect_checks.iter().filter(|c| c.bound_holds).count();
            let triggered = s.rect_checks.iter().filter(|c| c.qz == crate::two_dim::QzVerdict::Triggered).count();
            let rows = s.row_checks.iter().filter(|c| c.count == c.complexity).count();
            let _ = writeln!(
                out,
                "  rectangles: bound held on {held}/{} windows, threshold met on {triggered}, P(n,1) = P(n) on {rows}/{}",
                s.rect_checks.len(),
                s.row_checks.len()
            );
        }
        for n in &s.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        if let Some(e) = &s.error {
            let _ = writeln!(out, "  error: {e}");
        }
        let verdict = match &s.verdict {
            SpecVerdict::AllPeriodicModShift { max_b } => format!("all periodic modulo the shift (b <= {max_b})"),
            SpecVerdict::Inconclusive { bound_exhausted } => format!("inconclusive, bounds exhausted for {bound_exhausted:?}"),
            SpecVerdict::Failed => "failed".into(),
        };
        let _ = writeln!(out, "  verdict: {verdict}\n");
    }
    let overall = match &report.verdict {
        OverallVerdict::AllPeriodicModShift { max_b } => {
            format!("every enumerated automorphism has finite order modulo the shift (b <= {max_b})")
        }
        OverallVerdict::Inconclusive { bound_exhausted, failed_specs } => {
            format!("inconclusive; bounds exhausted: {bound_exhausted:?}; failed specs: {failed_specs:?}")
        }
    };
    let _ = writeln!(out, "Overall: {overall}");
    out
}

fn write(dir: &Path, name: &str, body: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    written.push(path);
    Ok(())
}

/// Writes the requested formats into `dir` and returns the files written.
pub fn emit_report(report: &TheoremReport, dir: &Path, formats: &[Format]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut formats = formats.to_vec();
    formats.sort();
    formats.dedup();
    let mut written = Vec::new();
    for f in formats {
        match f {
            Format::Json => write(dir, "report.json", &render_json(report)?, &mut written)?,
            Format::Text => write(dir, "report.txt", &render_text(report), &mut written)?,
            Format::Csv => {
                for s in &report.specs {
                    if let Some(t) = &s.complexity {
                        write(dir, &format!("complexity_{}.csv", s.name), &complexity_csv(t), &mut written)?;
                    }
                }
                write(dir, "automorphisms.csv", &automorphisms_csv(report), &mut written)?;
                write(dir, "rectangles.csv", &rectangles_csv(report), &mut written)?;
            }
        }
    }
    Ok(written)
}
