//! Numerical certificates for the matrix inequalities behind the `g1` and
//! `g2` bounds:
//!
//! * `γ(n, ℓ) L(G) - L(G^ℓ) ⪰ 0` for connected `G`, `ℓ >= 2`;
//! * `(1 + ℓ (e(G^ℓ) - m)) L(G) - L(G^ℓ) ⪰ 0` for any `G`, `ℓ >= 1`;
//!
//! and the eigenvalue chain `λ₂(G) ≥ λ₂(G^ℓ)/γ ≥ s₁(G^ℓ)/γ = s_ℓ(G)/γ`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{bound_tolerance, gamma, BoundError};
use crate::graph::Graph;
use crate::metrics::{
    all_pairs_distances, count_s_ell, eccentricity_profile, power_graph, DistanceMatrix,
};
use crate::spectral::{
    is_psd, lambda2, laplacian, psd_tolerance, CertificateResult, SpectralError, PSD_RTOL,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("need at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("ell = {ell} out of range (must be >= {min})")]
    EllOutOfRange { ell: usize, min: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

impl From<BoundError> for CertifyError {
    fn from(e: BoundError) -> Self {
        match e {
            BoundError::TooFewNodes(n) => CertifyError::TooFewNodes(n),
            BoundError::EllOutOfRange { ell, min } => CertifyError::EllOutOfRange { ell, min },
            BoundError::Spectral(s) => CertifyError::Spectral(s),
            // gamma never reports diameter problems
            BoundError::DiameterUndefined | BoundError::DiameterOutOfRange(_) => {
                CertifyError::Disconnected
            }
        }
    }
}

fn check_graph(g: &Graph, ell: usize, min_ell: usize) -> Result<(), CertifyError> {
    if g.n() < 2 {
        return Err(CertifyError::TooFewNodes(g.n()));
    }
    if ell < min_ell {
        return Err(CertifyError::EllOutOfRange { ell, min: min_ell });
    }
    Ok(())
}

fn require_connected(d: &DistanceMatrix) -> Result<(), CertifyError> {
    if eccentricity_profile(d).is_connected() {
        Ok(())
    } else {
        Err(CertifyError::Disconnected)
    }
}

pub fn certify_g1_matrix(g: &Graph, ell: usize) -> Result<CertificateResult, CertifyError> {
    certify_g1_matrix_with(g, &all_pairs_distances(g), ell, PSD_RTOL)
}

/// PSD certificate for `γ(n, ℓ) L(G) - L(G^ℓ)`, reusing precomputed distances.
/// The tolerance is `psd_rtol * max(1, ||M||∞)`.
pub fn certify_g1_matrix_with(
    g: &Graph,
    d: &DistanceMatrix,
    ell: usize,
    psd_rtol: f64,
) -> Result<CertificateResult, CertifyError> {
    check_graph(g, ell, 2)?;
    require_connected(d)?;
    let gamma = gamma(g.n(), ell)?;
    let power = power_graph(g, d, ell);
    let m = laplacian(g).scaled_minus(gamma, &laplacian(&power));
    Ok(is_psd(&m, psd_tolerance(&m, psd_rtol))?)
}

pub fn certify_g2_matrix(g: &Graph, ell: usize) -> Result<CertificateResult, CertifyError> {
    certify_g2_matrix_with(g, &all_pairs_distances(g), ell, PSD_RTOL)
}

/// PSD certificate for `(1 + ℓ (e(G^ℓ) - m)) L(G) - L(G^ℓ)`.
pub fn certify_g2_matrix_with(
    g: &Graph,
    d: &DistanceMatrix,
    ell: usize,
    psd_rtol: f64,
) -> Result<CertificateResult, CertifyError> {
    check_graph(g, ell, 1)?;
    let power = power_graph(g, d, ell);
    let scale = (1 + ell * (power.m() - g.m())) as f64;
    let m = laplacian(g).scaled_minus(scale, &laplacian(&power));
    Ok(is_psd(&m, psd_tolerance(&m, psd_rtol))?)
}

/// The three links of `λ₂(G) ≥ λ₂(G^ℓ)/γ ≥ s₁(G^ℓ)/γ = s_ℓ/γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub lambda2_g: f64,
    pub lambda2_power: f64,
    pub gamma_val: f64,
    pub s1_power: usize,
    pub s_ell: usize,
    /// `[λ₂(G) ≥ λ₂(G^ℓ)/γ - tol, λ₂(G^ℓ) ≥ s₁(G^ℓ) - tol, s₁(G^ℓ) = s_ℓ]`.
    pub links_hold: [bool; 3],
}

impl ChainCheck {
    pub fn all_hold(&self) -> bool {
        self.links_hold.iter().all(|&b| b)
    }

    /// The `g1` bound as the chain sees it, `s_ℓ / γ`.
    pub fn implied_bound(&self) -> f64 {
        self.s_ell as f64 / self.gamma_val
    }
}

pub fn check_chain(g: &Graph, ell: usize) -> Result<ChainCheck, CertifyError> {
    check_chain_with(g, &all_pairs_distances(g), ell)
}

pub fn check_chain_with(
    g: &Graph,
    d: &DistanceMatrix,
    ell: usize,
) -> Result<ChainCheck, CertifyError> {
    check_graph(g, ell, 2)?;
    require_connected(d)?;
    let gamma_val = gamma(g.n(), ell)?;
    let power = power_graph(g, d, ell);
    let lambda2_g = lambda2(g)?;
    let lambda2_power = lambda2(&power)?;
    let s1_power = power.count_universal();
    let s_ell = count_s_ell(&eccentricity_profile(d), ell);

    let links_hold = [
        lambda2_g >= lambda2_power / gamma_val - bound_tolerance(lambda2_g),
        lambda2_power >= s1_power as f64 - bound_tolerance(lambda2_power),
        s1_power == s_ell,
    ];
    Ok(ChainCheck {
        lambda2_g,
        lambda2_power,
        gamma_val,
        s1_power,
        s_ell,
        links_hold,
    })
}
