//! Randomized verification campaigns.
//!
//! Each trial draws a graph, evaluates every bound for each ℓ in the policy,
//! and (for connected graphs) both PSD certificates and the eigenvalue chain.
//! Trials run in parallel; per-trial seeds are drawn up front from the
//! campaign seed and results are folded in trial order, so the summary is
//! byte-identical for a fixed configuration.

use algconn_core::bounds::BOUND_RTOL;
use algconn_core::bounds::{BoundKind, BoundReport, GraphAnalysis};
use algconn_core::certify::{certify_g1_matrix_with, certify_g2_matrix_with, check_chain_with};
use algconn_core::graph::{generate, seeded_rng, Family, Graph};
use algconn_core::spectral::PSD_RTOL;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::CliError;

/// Which ℓ values to check for each graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EllPolicy {
    Fixed(usize),
    /// `2..=max(2, d)` for connected graphs, `2..=max(2, n - 1)` otherwise.
    All,
}

impl EllPolicy {
    pub fn values(self, diameter: Option<usize>, n: usize) -> Vec<usize> {
        match self {
            EllPolicy::Fixed(ell) => vec![ell],
            EllPolicy::All => {
                let top = diameter.unwrap_or(n.saturating_sub(1)).max(2);
                (2..=top).collect()
            }
        }
    }
}

impl std::str::FromStr for EllPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(EllPolicy::All);
        }
        match s.parse::<usize>() {
            Ok(ell) if ell >= 2 => Ok(EllPolicy::Fixed(ell)),
            Ok(ell) => Err(format!("ell must be at least 2, got {ell}")),
            Err(_) => Err(format!("expected `all` or an integer >= 2, got `{s}`")),
        }
    }
}

/// Graph source for a campaign. Seeded families get a fresh seed per trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphSource {
    ErdosRenyi { n: usize, p: f64 },
    RandomTree { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Star { n: usize },
}

impl GraphSource {
    pub fn generate(&self, seed: u64) -> Result<Graph, CliError> {
        let (family, n) = match *self {
            GraphSource::ErdosRenyi { n, p } => (Family::ErdosRenyi { p, seed }, n),
            GraphSource::RandomTree { n } => (Family::RandomTree { seed }, n),
            GraphSource::Path { n } => (Family::Path, n),
            GraphSource::Cycle { n } => (Family::Cycle, n),
            GraphSource::Complete { n } => (Family::Complete, n),
            GraphSource::Star { n } => (Family::Star, n),
        };
        Ok(generate(family, n)?)
    }

    fn n(&self) -> usize {
        match *self {
            GraphSource::ErdosRenyi { n, .. }
            | GraphSource::RandomTree { n }
            | GraphSource::Path { n }
            | GraphSource::Cycle { n }
            | GraphSource::Complete { n }
            | GraphSource::Star { n } => n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignConfig {
    pub source: GraphSource,
    pub trials: usize,
    pub seed: u64,
    pub ell: EllPolicy,
    /// Soundness slack: a bound fails if it exceeds `λ₂ + bound_rtol * max(1, λ₂)`.
    pub bound_rtol: f64,
    /// PSD tolerance factor: `psd_rtol * max(1, ||M||∞)`.
    pub psd_rtol: f64,
}

impl CampaignConfig {
    pub fn new(source: GraphSource, trials: usize, seed: u64, ell: EllPolicy) -> Self {
        Self {
            source,
            trials,
            seed,
            ell,
            bound_rtol: BOUND_RTOL,
            psd_rtol: PSD_RTOL,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.trials == 0 {
            return bad("trial count must be at least 1".into());
        }
        if self.source.n() < 2 {
            return bad(format!("need n >= 2, got {}", self.source.n()));
        }
        if let GraphSource::ErdosRenyi { p, .. } = self.source {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("edge probability {p} outside [0, 1]"));
            }
        }
        if let GraphSource::Cycle { n } = self.source {
            if n < 3 {
                return bad(format!("cycle needs n >= 3, got {n}"));
            }
        }
        for (name, v) in [("bound_rtol", self.bound_rtol), ("psd_rtol", self.psd_rtol)] {
            if !(v >= 0.0 && v.is_finite()) {
                return bad(format!("{name} must be a finite non-negative number"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub trial: usize,
    pub ell: usize,
    pub check: String,
    pub detail: String,
    pub graph: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstInstance {
    pub trial: usize,
    pub ell: usize,
    pub slack: f64,
    pub lambda2: f64,
    pub bound: f64,
    pub graph: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundStats {
    pub bound: &'static str,
    pub evaluated: usize,
    pub tight: usize,
    pub min_slack: Option<f64>,
    pub mean_slack: Option<f64>,
    pub worst: Option<WorstInstance>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub config: CampaignConfig,
    pub trials_run: usize,
    pub connected_trials: usize,
    pub instances: usize,
    pub certificates: usize,
    pub violations: usize,
    pub bounds: Vec<BoundStats>,
    pub violation_list: Vec<Violation>,
}

impl CampaignSummary {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }
}

/// Everything observed for one generated graph.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub trial: usize,
    pub graph: Graph,
    pub connected: bool,
    pub reports: Vec<BoundReport>,
    pub certificates: usize,
    pub violations: Vec<Violation>,
}

/// Checks one graph under the campaign tolerances.
pub fn check_graph(
    trial: usize,
    g: &Graph,
    policy: EllPolicy,
    bound_rtol: f64,
    psd_rtol: f64,
) -> Result<TrialOutcome, CliError> {
    let analysis = GraphAnalysis::new(g)?;
    let connected = analysis.is_connected();
    let mut reports = Vec::new();
    let mut violations = Vec::new();
    let mut certificates = 0;
    let mut fail = |ell: usize, check: &str, detail: String| {
        violations.push(Violation {
            trial,
            ell,
            check: check.to_string(),
            detail,
            graph: g.to_edge_list(),
        })
    };

    for ell in policy.values(analysis.diameter(), g.n()) {
        let r = analysis.report(ell)?;
        let tol = bound_rtol * r.lambda2.max(1.0);
        for kind in BoundKind::ALL {
            if let (Some(b), Some(s)) = (r.value(kind), r.slack(kind)) {
                if s < -tol {
                    fail(
                        ell,
                        kind.name(),
                        format!("bound {b} exceeds lambda2 {}", r.lambda2),
                    );
                }
            }
        }

        if !connected {
            if r.s_ell != 0 {
                fail(
                    ell,
                    "s_ell",
                    format!("disconnected graph has s_ell = {}", r.s_ell),
                );
            }
            for kind in [BoundKind::G1, BoundKind::G2] {
                if r.value(kind) != Some(0.0) {
                    fail(
                        ell,
                        kind.name(),
                        format!("expected 0, got {:?}", r.value(kind)),
                    );
                }
            }
            reports.push(r);
            continue;
        }

        let d = analysis.distances();
        for (name, cert) in [
            (
                "certificate_g1",
                certify_g1_matrix_with(g, d, ell, psd_rtol)?,
            ),
            (
                "certificate_g2",
                certify_g2_matrix_with(g, d, ell, psd_rtol)?,
            ),
        ] {
            certificates += 1;
            if !cert.is_psd() {
                fail(
                    ell,
                    name,
                    format!(
                        "min eigenvalue {} below -{}",
                        cert.min_eigenvalue, cert.tolerance
                    ),
                );
            }
        }

        let chain = check_chain_with(g, d, ell)?;
        for (i, holds) in chain.links_hold.iter().enumerate() {
            if !holds {
                fail(ell, &format!("chain_link_{}", i + 1), format!("{chain:?}"));
            }
        }
        let g1 = r.value(BoundKind::G1).expect("g1 always applicable");
        let implied = chain.implied_bound();
        if (implied - g1).abs() > 1e-12 * g1.abs().max(f64::MIN_POSITIVE) {
            fail(
                ell,
                "chain_consistency",
                format!("s_ell/gamma {implied} vs bound_g1 {g1}"),
            );
        }
        reports.push(r);
    }

    Ok(TrialOutcome {
        trial,
        graph: g.clone(),
        connected,
        reports,
        certificates,
        violations,
    })
}

pub fn run_verify(config: &CampaignConfig) -> Result<CampaignSummary, CliError> {
    config.validate()?;
    let mut rng = seeded_rng(config.seed);
    let seeds: Vec<u64> = (0..config.trials).map(|_| rng.gen()).collect();
    let outcomes: Vec<TrialOutcome> = seeds
        .par_iter()
        .enumerate()
        .map(|(trial, &seed)| {
            let g = config.source.generate(seed)?;
            check_graph(trial, &g, config.ell, config.bound_rtol, config.psd_rtol)
        })
        .collect::<Result<_, _>>()?;
    Ok(summarize(config, &outcomes))
}

pub fn summarize(config: &CampaignConfig, outcomes: &[TrialOutcome]) -> CampaignSummary {
    let mut bounds: Vec<BoundStats> = BoundKind::ALL
        .iter()
        .map(|k| BoundStats {
            bound: k.name(),
            evaluated: 0,
            tight: 0,
            min_slack: None,
            mean_slack: None,
            worst: None,
        })
        .collect();
    let mut slack_sums = [0.0f64; 7];
    let mut instances = 0;
    let mut certificates = 0;
    let mut violation_list = Vec::new();

    for o in outcomes {
        certificates += o.certificates;
        violation_list.extend(o.violations.iter().cloned());
        for r in &o.reports {
            instances += 1;
            for kind in BoundKind::ALL {
                let (Some(bound), Some(slack)) = (r.value(kind), r.slack(kind)) else {
                    continue;
                };
                let i = kind.index();
                let stats = &mut bounds[i];
                stats.evaluated += 1;
                stats.tight += r.is_tight(kind) as usize;
                slack_sums[i] += slack;
                if stats.min_slack.is_none_or(|m| slack < m) {
                    stats.min_slack = Some(slack);
                    stats.worst = Some(WorstInstance {
                        trial: o.trial,
                        ell: r.ell,
                        slack,
                        lambda2: r.lambda2,
                        bound,
                        graph: o.graph.to_edge_list(),
                    });
                }
            }
        }
    }
    for (stats, sum) in bounds.iter_mut().zip(slack_sums) {
        if stats.evaluated > 0 {
            stats.mean_slack = Some(sum / stats.evaluated as f64);
        }
    }

    CampaignSummary {
        config: config.clone(),
        trials_run: outcomes.len(),
        connected_trials: outcomes.iter().filter(|o| o.connected).count(),
        instances,
        certificates,
        violations: violation_list.len(),
        bounds,
        violation_list,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_policy_parsing() {
        assert_eq!("all".parse::<EllPolicy>(), Ok(EllPolicy::All));
        assert_eq!("3".parse::<EllPolicy>(), Ok(EllPolicy::Fixed(3)));
        assert!("1".parse::<EllPolicy>().is_err());
        assert!("x".parse::<EllPolicy>().is_err());
    }

    #[test]
    fn ell_policy_ranges() {
        assert_eq!(EllPolicy::All.values(Some(4), 10), vec![2, 3, 4]);
        assert_eq!(EllPolicy::All.values(Some(1), 10), vec![2]);
        assert_eq!(EllPolicy::All.values(None, 5), vec![2, 3, 4]);
        assert_eq!(EllPolicy::Fixed(7).values(Some(2), 10), vec![7]);
    }

    #[test]
    fn zero_trials_rejected() {
        let cfg = CampaignConfig::new(GraphSource::RandomTree { n: 10 }, 0, 7, EllPolicy::All);
        assert!(matches!(run_verify(&cfg), Err(CliError::Config(_))));
    }

    #[test]
    fn small_campaign_is_clean_and_deterministic() {
        let cfg = CampaignConfig::new(
            GraphSource::ErdosRenyi { n: 9, p: 0.3 },
            40,
            42,
            EllPolicy::All,
        );
        let a = run_verify(&cfg).unwrap();
        assert!(a.passed(), "{:#?}", a.violation_list);
        assert_eq!(a.trials_run, 40);
        assert!(a.connected_trials > 0 && a.connected_trials < 40);
        assert_eq!(a.to_json(), run_verify(&cfg).unwrap().to_json());
    }

    #[test]
    fn disconnected_trials_skip_certificates() {
        let cfg = CampaignConfig::new(
            GraphSource::ErdosRenyi { n: 8, p: 0.0 },
            3,
            1,
            EllPolicy::All,
        );
        let s = run_verify(&cfg).unwrap();
        assert!(s.passed());
        assert_eq!(s.connected_trials, 0);
        assert_eq!(s.certificates, 0);
        assert!(s.instances > 0);
    }

    #[test]
    fn absurd_tolerance_produces_violations() {
        // a negative-slack threshold of -1 flags every bound with slack below 1
        let g = algconn_core::graph::generate(Family::Path, 4).unwrap();
        let o = check_graph(0, &g, EllPolicy::Fixed(3), -1.0, PSD_RTOL).unwrap();
        assert!(!o.violations.is_empty());
    }
}
