//! Lower bounds on the algebraic connectivity λ₂ and a per-graph report
//! comparing them with the exact value.
//!
//! With `s_ℓ` the number of nodes of eccentricity at most `ℓ`:
//!
//! ```text
//! s1          λ₂ ≥ s₁
//! s2_over_n   λ₂ ≥ s₂ / n
//! g1          λ₂ ≥ s_ℓ / γ(n, ℓ),  γ(n, ℓ) = (ℓ - 2 + 4/n) n² / 4,  ℓ ≥ 2
//! g1_diam     λ₂ ≥ 4 / ((d - 2 + 4/n) n)          (g1 at ℓ = d)
//! mohar       λ₂ ≥ 4 / (d n)
//! g2          λ₂ ≥ s_ℓ / (1 + ℓ (e(G^ℓ) - m))
//! lu          λ₂ ≥ n / (1 + d e(Ḡ))
//! ```
//!
//! Denominators are formed in integer arithmetic where possible so that
//! the `ℓ = 2` reduction of `g1` to `s₂ / n` is exact.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::metrics::{
    all_pairs_distances, count_s_ell, eccentricity_profile, power_graph, Distance, DistanceMatrix,
    EccentricityProfile,
};
use crate::spectral::{lambda2, SpectralError};

/// Relative tolerance for soundness checks and tightness flags.
pub const BOUND_RTOL: f64 = 1e-9;

/// `BOUND_RTOL * max(1, λ₂)`.
pub fn bound_tolerance(lambda2: f64) -> f64 {
    BOUND_RTOL * lambda2.max(1.0)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("need at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("ell = {ell} out of range (must be >= {min})")]
    EllOutOfRange { ell: usize, min: usize },
    #[error("diameter undefined for disconnected graph")]
    DiameterUndefined,
    #[error("diameter must be at least 1, got {0}")]
    DiameterOutOfRange(usize),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    S1,
    S2OverN,
    G1,
    G1Diam,
    Mohar,
    G2,
    Lu,
}

impl BoundKind {
    /// Report order.
    pub const ALL: [BoundKind; 7] = [
        BoundKind::S1,
        BoundKind::S2OverN,
        BoundKind::G1,
        BoundKind::G1Diam,
        BoundKind::Mohar,
        BoundKind::G2,
        BoundKind::Lu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::S1 => "s1",
            BoundKind::S2OverN => "s2_over_n",
            BoundKind::G1 => "g1",
            BoundKind::G1Diam => "g1_diam",
            BoundKind::Mohar => "mohar",
            BoundKind::G2 => "g2",
            BoundKind::Lu => "lu",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Whether the bound needs a finite diameter.
    pub fn needs_diameter(self) -> bool {
        matches!(self, BoundKind::G1Diam | BoundKind::Mohar | BoundKind::Lu)
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_n(n: usize) -> Result<(), BoundError> {
    if n < 2 {
        Err(BoundError::TooFewNodes(n))
    } else {
        Ok(())
    }
}

fn finite_diameter(d: Distance) -> Result<usize, BoundError> {
    match d {
        Distance::Finite(0) => Err(BoundError::DiameterOutOfRange(0)),
        Distance::Finite(d) => Ok(d),
        Distance::Unreachable => Err(BoundError::DiameterUndefined),
    }
}

/// `γ(n, ℓ) = (ℓ - 2 + 4/n) n² / 4`, computed as `((ℓ - 2) n² + 4n) / 4`.
pub fn gamma(n: usize, ell: usize) -> Result<f64, BoundError> {
    check_n(n)?;
    if ell < 2 {
        return Err(BoundError::EllOutOfRange { ell, min: 2 });
    }
    let n = n as f64;
    Ok(((ell - 2) as f64 * n * n + 4.0 * n) / 4.0)
}

pub fn bound_s1(s1: usize) -> f64 {
    s1 as f64
}

pub fn bound_s2_over_n(n: usize, s2: usize) -> Result<f64, BoundError> {
    check_n(n)?;
    Ok(s2 as f64 / n as f64)
}

/// `s_ℓ / γ(n, ℓ)`; accepts any `ℓ >= 2`, including `ℓ` beyond the diameter.
pub fn bound_g1(n: usize, ell: usize, s_ell: usize) -> Result<f64, BoundError> {
    debug_assert!(s_ell <= n);
    Ok(s_ell as f64 / gamma(n, ell)?)
}

/// `g1` at `ℓ = d`, where `s_d = n`. A diameter of 1 only occurs for `K_n`,
/// which is outside the `ℓ >= 2` range of `g1`; there the bound falls back
/// to `s₁ = n`.
pub fn bound_g1_diam(n: usize, d: Distance) -> Result<f64, BoundError> {
    check_n(n)?;
    let d = finite_diameter(d)?;
    if d == 1 {
        return Ok(n as f64);
    }
    let n = n as f64;
    Ok(4.0 / ((d - 2) as f64 * n + 4.0))
}

pub fn bound_mohar(n: usize, d: Distance) -> Result<f64, BoundError> {
    check_n(n)?;
    let d = finite_diameter(d)?;
    Ok(4.0 / (d as f64 * n as f64))
}

/// `s_ℓ / (1 + ℓ (e(G^ℓ) - m))`. At `ℓ = 1` this is exactly `s₁`.
///
/// Panics if `e_power < m`, which cannot happen for a genuine power graph.
pub fn bound_g2(s_ell: usize, ell: usize, e_power: usize, m: usize) -> f64 {
    assert!(e_power >= m, "e(G^ell) = {e_power} below m = {m}");
    s_ell as f64 / (1 + ell * (e_power - m)) as f64
}

pub fn bound_lu(n: usize, d: Distance, e_complement: usize) -> Result<f64, BoundError> {
    check_n(n)?;
    let d = finite_diameter(d)?;
    Ok(n as f64 / (1 + d * e_complement) as f64)
}

/// All bounds for one graph and one `ℓ`, against the exact λ₂.
///
/// Diameter-based bounds are `None` ("not applicable") on disconnected graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub ell: usize,
    pub s1: usize,
    pub s2: usize,
    pub s_ell: usize,
    /// `None` when disconnected.
    pub diameter: Option<usize>,
    pub e_power: usize,
    pub e_complement: usize,
    pub lambda2: f64,
    /// Indexed by [`BoundKind::index`].
    pub values: [Option<f64>; 7],
    /// `λ₂ - bound`.
    pub slacks: [Option<f64>; 7],
    pub tight: [bool; 7],
}

impl BoundReport {
    pub fn value(&self, kind: BoundKind) -> Option<f64> {
        self.values[kind.index()]
    }

    pub fn slack(&self, kind: BoundKind) -> Option<f64> {
        self.slacks[kind.index()]
    }

    pub fn is_tight(&self, kind: BoundKind) -> bool {
        self.tight[kind.index()]
    }

    pub fn tolerance(&self) -> f64 {
        bound_tolerance(self.lambda2)
    }

    pub fn tight_kinds(&self) -> Vec<BoundKind> {
        BoundKind::ALL
            .into_iter()
            .filter(|k| self.is_tight(*k))
            .collect()
    }

    /// Bounds exceeding `λ₂ + tol`. Empty whenever the theorems hold.
    pub fn violations(&self) -> Vec<BoundKind> {
        let tol = self.tolerance();
        BoundKind::ALL
            .into_iter()
            .filter(|k| matches!(self.slack(*k), Some(s) if s < -tol))
            .collect()
    }
}

/// ℓ-independent quantities of a graph, computed once and reused across ℓ.
#[derive(Debug, Clone)]
pub struct GraphAnalysis<'g> {
    graph: &'g Graph,
    distances: DistanceMatrix,
    profile: EccentricityProfile,
    lambda2: f64,
    e_complement: usize,
}

impl<'g> GraphAnalysis<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self, BoundError> {
        check_n(graph.n())?;
        let distances = all_pairs_distances(graph);
        let profile = eccentricity_profile(&distances);
        let lambda2 = lambda2(graph)?;
        let n = graph.n();
        let e_complement = n * (n - 1) / 2 - graph.m();
        Ok(Self {
            graph,
            distances,
            profile,
            lambda2,
            e_complement,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.distances
    }

    pub fn profile(&self) -> &EccentricityProfile {
        &self.profile
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn is_connected(&self) -> bool {
        self.profile.is_connected()
    }

    pub fn diameter(&self) -> Option<usize> {
        self.profile.diameter.finite()
    }

    pub fn s_ell(&self, ell: usize) -> usize {
        count_s_ell(&self.profile, ell)
    }

    pub fn power(&self, ell: usize) -> Graph {
        power_graph(self.graph, &self.distances, ell)
    }

    pub fn report(&self, ell: usize) -> Result<BoundReport, BoundError> {
        if ell < 2 {
            return Err(BoundError::EllOutOfRange { ell, min: 2 });
        }
        let g = self.graph;
        let (n, m) = (g.n(), g.m());
        let s1 = self.s_ell(1);
        let s2 = self.s_ell(2);
        let s_ell = self.s_ell(ell);
        let e_power = self.power(ell).m();
        let d = self.profile.diameter;
        let diameter_based = |r: Result<f64, BoundError>| match r {
            Ok(x) => Ok(Some(x)),
            Err(BoundError::DiameterUndefined) => Ok(None),
            Err(e) => Err(e),
        };

        let mut values = [None; 7];
        values[BoundKind::S1.index()] = Some(bound_s1(s1));
        values[BoundKind::S2OverN.index()] = Some(bound_s2_over_n(n, s2)?);
        values[BoundKind::G1.index()] = Some(bound_g1(n, ell, s_ell)?);
        values[BoundKind::G1Diam.index()] = diameter_based(bound_g1_diam(n, d))?;
        values[BoundKind::Mohar.index()] = diameter_based(bound_mohar(n, d))?;
        values[BoundKind::G2.index()] = Some(bound_g2(s_ell, ell, e_power, m));
        values[BoundKind::Lu.index()] = diameter_based(bound_lu(n, d, self.e_complement))?;

        let lambda2 = self.lambda2;
        let tol = bound_tolerance(lambda2);
        let slacks = values.map(|v| v.map(|b| lambda2 - b));
        let tight = slacks.map(|s| matches!(s, Some(s) if s <= tol));

        Ok(BoundReport {
            n,
            m,
            ell,
            s1,
            s2,
            s_ell,
            diameter: d.finite(),
            e_power,
            e_complement: self.e_complement,
            lambda2,
            values,
            slacks,
            tight,
        })
    }
}

pub fn evaluate_all(g: &Graph, ell: usize) -> Result<BoundReport, BoundError> {
    GraphAnalysis::new(g)?.report(ell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::spectral::laplacian_spectrum;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(4, 3).unwrap(), 8.0);
        assert_eq!(gamma(4, 2).unwrap(), 4.0);
        assert_eq!(gamma(10, 5).unwrap(), 85.0);
        for n in 2..50 {
            assert_eq!(gamma(n, 2).unwrap(), n as f64);
        }
        assert!(matches!(
            gamma(4, 1),
            Err(BoundError::EllOutOfRange { ell: 1, min: 2 })
        ));
        assert!(matches!(gamma(1, 3), Err(BoundError::TooFewNodes(1))));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(bound_g1(4, 3, 4).unwrap(), 0.5);
        assert_eq!(bound_g1(7, 4, 0).unwrap(), 0.0);
        assert_eq!(bound_g1(9, 2, 5).unwrap(), 5.0 / 9.0);
        assert!(bound_g1(9, 1, 5).is_err());

        assert_eq!(bound_g1_diam(4, Distance::Finite(3)).unwrap(), 0.5);
        assert_eq!(bound_g1_diam(4, Distance::Finite(2)).unwrap(), 1.0);
        assert!(matches!(
            bound_g1_diam(4, Distance::Unreachable),
            Err(BoundError::DiameterUndefined)
        ));

        assert!(close(
            bound_mohar(4, Distance::Finite(3)).unwrap(),
            1.0 / 3.0
        ));
        assert_eq!(bound_mohar(4, Distance::Finite(1)).unwrap(), 1.0);
        assert_eq!(bound_mohar(5, Distance::Finite(2)).unwrap(), 0.4);
        assert!(bound_mohar(5, Distance::Unreachable).is_err());

        assert_eq!(bound_g2(3, 2, 3, 2), 1.0);
        assert_eq!(bound_g2(2, 2, 5, 3), 0.4);
        assert_eq!(bound_g2(3, 1, 7, 7), bound_s1(3));

        assert_eq!(bound_lu(3, Distance::Finite(2), 1).unwrap(), 1.0);
        assert_eq!(bound_lu(4, Distance::Finite(1), 0).unwrap(), 4.0);
        assert_eq!(bound_lu(4, Distance::Finite(3), 3).unwrap(), 0.4);
        assert!(bound_lu(4, Distance::Unreachable, 3).is_err());
    }

    #[test]
    fn s1_examples_against_spectra() {
        let k4 = generate(Family::Complete, 4).unwrap();
        let star = generate(Family::Star, 4).unwrap();
        let p4 = generate(Family::Path, 4).unwrap();
        assert_eq!(bound_s1(k4.count_universal()), 4.0);
        assert_eq!(bound_s1(star.count_universal()), 1.0);
        assert_eq!(bound_s1(p4.count_universal()), 0.0);

        let spec = laplacian_spectrum(&star).unwrap().eigenvalues;
        for (got, want) in spec.iter().zip([0.0, 1.0, 1.0, 4.0]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn report_path4() {
        let r = evaluate_all(&generate(Family::Path, 4).unwrap(), 3).unwrap();
        assert!((r.lambda2 - (2.0 - 2f64.sqrt())).abs() < 1e-9);
        assert_eq!((r.s1, r.s2, r.s_ell), (0, 2, 4));
        assert_eq!(r.diameter, Some(3));
        assert_eq!((r.e_power, r.e_complement), (6, 3));
        assert_eq!(r.value(BoundKind::G1), Some(0.5));
        assert!(close(r.value(BoundKind::Mohar).unwrap(), 1.0 / 3.0));
        assert!(close(r.value(BoundKind::G2).unwrap(), 0.4));
        assert!(close(r.value(BoundKind::Lu).unwrap(), 0.4));
        assert_eq!(r.value(BoundKind::G1Diam), Some(0.5));
        assert!(r.violations().is_empty());
    }

    #[test]
    fn report_complete() {
        let r = evaluate_all(&generate(Family::Complete, 4).unwrap(), 2).unwrap();
        for k in BoundKind::ALL {
            assert!(r.value(k).unwrap() <= 4.0 + 1e-9, "{k}");
        }
        assert_eq!(r.value(BoundKind::S1), Some(4.0));
        assert!(r.is_tight(BoundKind::S1));
        assert!(r.tight_kinds().contains(&BoundKind::S1));
    }

    #[test]
    fn report_disconnected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let r = evaluate_all(&g, 2).unwrap();
        assert!(r.lambda2.abs() < 1e-9);
        assert_eq!(r.value(BoundKind::G1), Some(0.0));
        assert_eq!(r.value(BoundKind::G2), Some(0.0));
        assert_eq!(r.diameter, None);
        for k in BoundKind::ALL.into_iter().filter(|k| k.needs_diameter()) {
            assert_eq!(r.value(k), None);
            assert!(!r.is_tight(k));
        }
        assert!(r.violations().is_empty());
    }

    #[test]
    fn report_rejects_bad_input() {
        assert!(matches!(
            evaluate_all(&Graph::empty(1).unwrap(), 2),
            Err(BoundError::TooFewNodes(1))
        ));
        let p4 = generate(Family::Path, 4).unwrap();
        assert!(matches!(
            evaluate_all(&p4, 1),
            Err(BoundError::EllOutOfRange { .. })
        ));
    }

    #[test]
    fn ell_beyond_diameter_makes_power_complete() {
        let p4 = generate(Family::Path, 4).unwrap();
        let r = evaluate_all(&p4, 9).unwrap();
        assert_eq!(r.s_ell, 4);
        assert_eq!(r.e_power, 6);
        assert!(r.violations().is_empty());
    }
}
