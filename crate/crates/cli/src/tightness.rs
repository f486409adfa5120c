//! Bound/λ₂ ratios across deterministic graph families.

use algconn_core::bounds::{BoundKind, GraphAnalysis};
use algconn_core::graph::{generate, Family};
use serde::Serialize;

use crate::campaign::EllPolicy;
use crate::report::fmt_g12;
use crate::CliError;

/// Ratios above `1 + RATIO_SLACK` would contradict a bound.
pub const RATIO_SLACK: f64 = 1e-9;

pub const FAMILIES: [Family; 4] = [Family::Path, Family::Cycle, Family::Star, Family::Complete];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TightnessRecord {
    /// e.g. `path(5)`.
    pub graph: String,
    pub family: &'static str,
    pub n: usize,
    pub ell: usize,
    pub bound: &'static str,
    pub ratio: f64,
}

impl TightnessRecord {
    pub fn is_sound(&self) -> bool {
        self.ratio <= 1.0 + RATIO_SLACK
    }
}

/// Every applicable bound for every family member `3..=n_max` and every ℓ in
/// the policy, sorted by ratio descending (ties keep generation order).
pub fn run_tightness(
    families: &[Family],
    n_max: usize,
    policy: EllPolicy,
) -> Result<Vec<TightnessRecord>, CliError> {
    if n_max < 3 {
        return Err(CliError::Config(format!(
            "n-max must be at least 3, got {n_max}"
        )));
    }
    let mut records = Vec::new();
    for &family in families {
        for n in 3..=n_max {
            let g = generate(family, n)?;
            let analysis = GraphAnalysis::new(&g)?;
            for ell in policy.values(analysis.diameter(), n) {
                let report = analysis.report(ell)?;
                for kind in BoundKind::ALL {
                    if let Some(b) = report.value(kind) {
                        records.push(TightnessRecord {
                            graph: format!("{}({n})", family.name()),
                            family: family.name(),
                            n,
                            ell,
                            bound: kind.name(),
                            ratio: b / report.lambda2,
                        });
                    }
                }
            }
        }
    }
    records.sort_by(|a, b| b.ratio.total_cmp(&a.ratio));
    Ok(records)
}

pub fn to_csv(records: &[TightnessRecord]) -> String {
    let mut out = String::from("graph,family,n,ell,bound,ratio\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.graph,
            r.family,
            r.n,
            r.ell,
            r.bound,
            fmt_g12(r.ratio)
        ));
    }
    out
}

pub fn to_json(records: &[TightnessRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("plain data");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(recs: &[TightnessRecord], family: &str, n: usize, ell: usize, bound: &str) -> f64 {
        recs.iter()
            .find(|r| r.family == family && r.n == n && r.ell == ell && r.bound == bound)
            .unwrap_or_else(|| panic!("missing {family}({n}) ell={ell} {bound}"))
            .ratio
    }

    #[test]
    fn complete_and_star_s1_ratios() {
        let recs = run_tightness(&[Family::Complete, Family::Star], 8, EllPolicy::All).unwrap();
        for n in 3..=8 {
            assert!((ratio(&recs, "complete", n, 2, "s1") - 1.0).abs() < 1e-9);
            assert!((ratio(&recs, "star", n, 2, "s1") - 1.0).abs() < 1e-9);
        }
        assert!(recs.iter().all(TightnessRecord::is_sound));
    }

    #[test]
    fn p3_g2_is_tight() {
        let recs = run_tightness(&[Family::Path], 6, EllPolicy::All).unwrap();
        assert!((ratio(&recs, "path", 3, 2, "g2") - 1.0).abs() < 1e-9);
        assert!(recs.windows(2).all(|w| w[0].ratio >= w[1].ratio));
    }

    #[test]
    fn n_max_checked() {
        assert!(run_tightness(&FAMILIES, 2, EllPolicy::All).is_err());
    }
}
