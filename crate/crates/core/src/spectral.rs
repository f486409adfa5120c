//! Dense symmetric eigenproblems: Laplacians, cyclic Jacobi, PSD certificates.
//!
//! Every decomposition records its residual `||AQ - QΛ||∞` and orthogonality
//! error `||QᵀQ - I||∞`. The worst values seen in the process are kept in a
//! global watermark (see [`numerics_watermark`]) so verification campaigns can
//! audit every matrix they touched without threading diagnostics through
//! every call.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Relative off-diagonal Frobenius threshold at which Jacobi stops.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
/// Hard cap on cyclic sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Relative factor of the default PSD tolerance `rtol * max(1, ||A||∞)`.
pub const PSD_RTOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix dimension must be at least 1")]
    Empty,
    #[error("expected {expected} entries for an n x n matrix, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },
    #[error(
        "Jacobi did not converge after {sweeps} sweeps: off-diagonal norm {off_norm:e} > {threshold:e}"
    )]
    NoConvergence {
        sweeps: usize,
        off_norm: f64,
        threshold: f64,
    },
    #[error("algebraic connectivity undefined for n = {0} (need n >= 2)")]
    Lambda2Undefined(usize),
    #[error("PSD tolerance must be non-negative, got {0}")]
    NegativeTolerance(f64),
}

/// Dense symmetric matrix in full row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m.data[i * m.n + i] = x;
        }
        m
    }

    /// Fills entry `(i, j)` and its mirror from `f(i, j)` for `i <= j`.
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                m.data[i * n + j] = x;
                m.data[j * n + i] = x;
            }
        }
        m
    }

    /// Row-major entries; rejected unless exactly symmetric.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self, SpectralError> {
        if data.len() != n * n {
            return Err(SpectralError::DimensionMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                if data[i * n + j] != data[j * n + i] {
                    return Err(SpectralError::Asymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// `alpha * self - other`.
    pub fn scaled_minus(&self, alpha: f64, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        SymMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| alpha * a - b)
                .collect(),
        }
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

fn off_diagonal_norm(data: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let x = data[i * n + j];
            sum += 2.0 * x * x;
        }
    }
    sum.sqrt()
}

/// `L = D - A`.
pub fn laplacian(g: &Graph) -> SymMatrix {
    let n = g.n();
    let mut m = SymMatrix::zeros(n);
    for u in 0..n {
        m.data[u * n + u] = g.degree(u) as f64;
        for &v in g.neighbors(u) {
            m.data[u * n + v] = -1.0;
        }
    }
    m
}

/// Sorted spectrum with eigenvectors and accuracy diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSummary {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `max_k ||A v_k - λ_k v_k||∞`.
    pub residual: f64,
    /// `||AQ - QΛ||∞` as a matrix norm (max absolute row sum).
    pub residual_matrix: f64,
    /// `||QᵀQ - I||∞` as a matrix norm.
    pub orthogonality: f64,
    /// `||A||∞` of the decomposed matrix.
    pub norm_inf: f64,
    pub sweeps: usize,
    /// Column `k` is the unit eigenvector of `eigenvalues[k]`.
    vectors: Vec<Vec<f64>>,
}

impl SpectralSummary {
    pub fn lambda2(&self) -> Option<f64> {
        self.eigenvalues.get(1).copied()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.vectors[k]
    }

    /// Residual scaled by `max(1, ||A||∞)`.
    pub fn relative_residual(&self) -> f64 {
        self.residual_matrix / self.norm_inf.max(1.0)
    }
}

/// Jacobi parameters. [`Default`] gives the crate-wide policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiOptions {
    pub tolerance: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        Self {
            tolerance: JACOBI_TOLERANCE,
            max_sweeps: JACOBI_MAX_SWEEPS,
        }
    }
}

pub fn eigen_decompose(a: &SymMatrix) -> Result<SpectralSummary, SpectralError> {
    eigen_decompose_with(a, JacobiOptions::default())
}

/// Row-cyclic Jacobi. Stops once the off-diagonal Frobenius norm drops to
/// `tolerance * ||A||_F`; fails if that has not happened after `max_sweeps`.
pub fn eigen_decompose_with(
    a: &SymMatrix,
    opts: JacobiOptions,
) -> Result<SpectralSummary, SpectralError> {
    let n = a.n;
    if n == 0 {
        return Err(SpectralError::Empty);
    }
    let threshold = opts.tolerance * a.norm_frobenius();
    let mut w = a.data.clone();
    // row-major, column k of V is eigenvector k
    let mut v = SymMatrix::identity(n).data;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&w, n);
        if off <= threshold {
            break;
        }
        if sweeps == opts.max_sweeps {
            return Err(SpectralError::NoConvergence {
                sweeps,
                off_norm: off,
                threshold,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut w, &mut v, n, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[i * n + i].total_cmp(&w[j * n + j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| w[k * n + k]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();

    let summary = diagnose(a, eigenvalues, vectors, sweeps);
    record_watermark(&summary);
    Ok(summary)
}

/// Applies the rotation in plane `(p, q)` that zeroes `w[p][q]`, accumulating into `v`.
fn rotate(w: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = w[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = w[p * n + p];
    let aqq = w[q * n + q];
    let tau = (aqq - app) / (2.0 * apq);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    w[p * n + p] = app - t * apq;
    w[q * n + q] = aqq + t * apq;
    w[p * n + q] = 0.0;
    w[q * n + p] = 0.0;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = w[k * n + p];
        let akq = w[k * n + q];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        w[k * n + p] = new_kp;
        w[p * n + k] = new_kp;
        w[k * n + q] = new_kq;
        w[q * n + k] = new_kq;
    }
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

fn diagnose(
    a: &SymMatrix,
    eigenvalues: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    sweeps: usize,
) -> SpectralSummary {
    let n = a.n;
    // r[i][k] = (A v_k)_i - λ_k v_k[i]
    let mut residual = 0.0f64;
    let mut row_sums = vec![0.0f64; n];
    for (k, vk) in vectors.iter().enumerate() {
        let mut col_max = 0.0f64;
        for (i, row_sum) in row_sums.iter_mut().enumerate() {
            let av: f64 = a.row(i).iter().zip(vk).map(|(x, y)| x * y).sum();
            let r = (av - eigenvalues[k] * vk[i]).abs();
            col_max = col_max.max(r);
            *row_sum += r;
        }
        residual = residual.max(col_max);
    }
    let residual_matrix = row_sums.into_iter().fold(0.0, f64::max);

    let mut orthogonality = 0.0f64;
    for i in 0..n {
        let row: f64 = (0..n)
            .map(|j| {
                let dot: f64 = vectors[i].iter().zip(&vectors[j]).map(|(x, y)| x * y).sum();
                (dot - if i == j { 1.0 } else { 0.0 }).abs()
            })
            .sum();
        orthogonality = orthogonality.max(row);
    }

    SpectralSummary {
        eigenvalues,
        residual,
        residual_matrix,
        orthogonality,
        norm_inf: a.norm_inf(),
        sweeps,
        vectors,
    }
}

/// Second-smallest Laplacian eigenvalue.
pub fn lambda2(g: &Graph) -> Result<f64, SpectralError> {
    laplacian_spectrum(g).map(|s| s.eigenvalues[1])
}

/// Full Laplacian spectrum; requires `n >= 2`.
pub fn laplacian_spectrum(g: &Graph) -> Result<SpectralSummary, SpectralError> {
    if g.n() < 2 {
        return Err(SpectralError::Lambda2Undefined(g.n()));
    }
    eigen_decompose(&laplacian(g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Psd,
    NotPsd,
}

/// PSD verdict together with the numbers it was decided on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificateResult {
    pub min_eigenvalue: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl CertificateResult {
    pub fn is_psd(&self) -> bool {
        self.verdict == Verdict::Psd
    }
}

/// `rtol * max(1, ||A||∞)`.
pub fn psd_tolerance(a: &SymMatrix, rtol: f64) -> f64 {
    rtol * a.norm_inf().max(1.0)
}

pub fn default_psd_tolerance(a: &SymMatrix) -> f64 {
    psd_tolerance(a, PSD_RTOL)
}

pub fn is_psd(a: &SymMatrix, tol: f64) -> Result<CertificateResult, SpectralError> {
    if tol.is_nan() || tol < 0.0 {
        return Err(SpectralError::NegativeTolerance(tol));
    }
    let min_eigenvalue = eigen_decompose(a)?.min_eigenvalue();
    let verdict = if min_eigenvalue >= -tol {
        Verdict::Psd
    } else {
        Verdict::NotPsd
    };
    Ok(CertificateResult {
        min_eigenvalue,
        tolerance: tol,
        verdict,
    })
}

pub fn is_psd_default(a: &SymMatrix) -> Result<CertificateResult, SpectralError> {
    is_psd(a, default_psd_tolerance(a))
}

static DECOMPOSITIONS: AtomicU64 = AtomicU64::new(0);
static WORST_RESIDUAL: AtomicU64 = AtomicU64::new(0);
static WORST_ORTHOGONALITY: AtomicU64 = AtomicU64::new(0);

/// Worst accuracy diagnostics over every decomposition since the last reset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericsWatermark {
    pub decompositions: u64,
    /// Largest `||AQ - QΛ||∞ / max(1, ||A||∞)`.
    pub worst_relative_residual: f64,
    /// Largest `||QᵀQ - I||∞`.
    pub worst_orthogonality: f64,
}

// Non-negative f64 values order the same as their bit patterns, and NaN
// lands above every finite value.
fn record_watermark(s: &SpectralSummary) {
    DECOMPOSITIONS.fetch_add(1, Ordering::Relaxed);
    WORST_RESIDUAL.fetch_max(s.relative_residual().abs().to_bits(), Ordering::Relaxed);
    WORST_ORTHOGONALITY.fetch_max(s.orthogonality.abs().to_bits(), Ordering::Relaxed);
}

pub fn numerics_watermark() -> NumericsWatermark {
    NumericsWatermark {
        decompositions: DECOMPOSITIONS.load(Ordering::Relaxed),
        worst_relative_residual: f64::from_bits(WORST_RESIDUAL.load(Ordering::Relaxed)),
        worst_orthogonality: f64::from_bits(WORST_ORTHOGONALITY.load(Ordering::Relaxed)),
    }
}

pub fn reset_numerics_watermark() {
    DECOMPOSITIONS.store(0, Ordering::Relaxed);
    WORST_RESIDUAL.store(0, Ordering::Relaxed);
    WORST_ORTHOGONALITY.store(0, Ordering::Relaxed);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    /// Roots of det(L(P3) - xI) = -x^3 + 4x^2 - 3x, found by bisection on the
    /// cofactor expansion rather than by any eigensolver.
    fn p3_characteristic_roots() -> Vec<f64> {
        let l = [[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]];
        let det = |x: f64| {
            let m = |i: usize, j: usize| l[i][j] - if i == j { x } else { 0.0 };
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        };
        // brackets isolating one sign change each
        [(-0.5, 0.5), (0.5, 2.0), (2.0, 4.0)]
            .iter()
            .map(|&(mut lo, mut hi)| {
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if det(lo).signum() == det(mid).signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }

    #[test]
    fn laplacian_entries() {
        let l = laplacian(&Graph::from_edges(2, [(0, 1)]).unwrap());
        assert_eq!(
            l,
            SymMatrix::from_row_major(2, vec![1.0, -1.0, -1.0, 1.0]).unwrap()
        );

        let l = laplacian(&generate(Family::Complete, 3).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.get(i, j), if i == j { 2.0 } else { -1.0 });
            }
        }

        let g = generate(Family::ErdosRenyi { p: 0.5, seed: 11 }, 9).unwrap();
        let l = laplacian(&g);
        for i in 0..9 {
            assert_eq!(l.row(i).iter().sum::<f64>(), 0.0);
        }
    }

    #[test]
    fn p3_spectrum_matches_characteristic_polynomial() {
        let oracle = p3_characteristic_roots();
        for (x, want) in oracle.iter().zip([0.0, 1.0, 3.0]) {
            assert!((x - want).abs() < 1e-12);
        }
        let s = eigen_decompose(&laplacian(&generate(Family::Path, 3).unwrap())).unwrap();
        for (got, want) in s.eigenvalues.iter().zip(&oracle) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn zero_matrix() {
        let s = eigen_decompose(&SymMatrix::zeros(3)).unwrap();
        assert_eq!(s.eigenvalues, vec![0.0; 3]);
        assert_eq!(s.sweeps, 0);
    }

    #[test]
    fn path4_lambda2_closed_form() {
        let want = 4.0 * (std::f64::consts::PI / 8.0).sin().powi(2);
        assert!((want - (2.0 - 2f64.sqrt())).abs() < 1e-15);
        let got = lambda2(&generate(Family::Path, 4).unwrap()).unwrap();
        assert!((got - want).abs() < 1e-9);
    }

    #[test]
    fn lambda2_examples() {
        assert!((lambda2(&generate(Family::Complete, 4).unwrap()).unwrap() - 4.0).abs() < 1e-9);
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(lambda2(&two).unwrap().abs() < 1e-9);
        let c5 = 2.0 * (1.0 - (2.0 * std::f64::consts::PI / 5.0).cos());
        assert!((lambda2(&generate(Family::Cycle, 5).unwrap()).unwrap() - c5).abs() < 1e-9);
        assert!(matches!(
            lambda2(&Graph::empty(1).unwrap()),
            Err(SpectralError::Lambda2Undefined(1))
        ));
    }

    #[test]
    fn connected_null_vector_is_constant() {
        let g = generate(Family::ErdosRenyi { p: 1.0, seed: 0 }, 6).unwrap();
        let s = laplacian_spectrum(&g).unwrap();
        let v = s.eigenvector(0);
        let spread =
            v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread <= 1e-7);
    }

    #[test]
    fn psd_examples() {
        let c = is_psd(&SymMatrix::identity(3), 1e-8).unwrap();
        assert_eq!(c.verdict, Verdict::Psd);
        assert!((c.min_eigenvalue - 1.0).abs() < 1e-15);

        let c = is_psd(&SymMatrix::from_diagonal(&[1.0, -1.0]), 1e-8).unwrap();
        assert_eq!(c.verdict, Verdict::NotPsd);
        assert_eq!(c.min_eigenvalue, -1.0);

        let p4 = generate(Family::Path, 4).unwrap();
        let k4 = generate(Family::Complete, 4).unwrap();
        let m = laplacian(&p4).scaled_minus(8.0, &laplacian(&k4));
        let c = is_psd_default(&m).unwrap();
        assert!(c.is_psd(), "{c:?}");
        assert_eq!(c.tolerance, 1e-8 * m.norm_inf());

        assert!(is_psd(&SymMatrix::identity(2), -1.0).is_err());
    }

    #[test]
    fn sweep_cap_is_reported() {
        let a = SymMatrix::from_row_major(2, vec![1.0, 2.0, 2.0, 3.0]).unwrap();
        let err = eigen_decompose_with(
            &a,
            JacobiOptions {
                max_sweeps: 0,
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(
            err,
            SpectralError::NoConvergence { sweeps: 0, .. }
        ));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SymMatrix::from_row_major(2, vec![0.0, 1.0, 2.0, 0.0]),
            Err(SpectralError::Asymmetric { row: 0, col: 1 })
        ));
        assert!(SymMatrix::from_row_major(2, vec![0.0; 3]).is_err());
        assert_eq!(
            eigen_decompose(&SymMatrix::zeros(0)),
            Err(SpectralError::Empty)
        );
    }
}
