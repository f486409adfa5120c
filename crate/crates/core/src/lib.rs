//! Eccentricity-based lower bounds on the algebraic connectivity λ₂ of a graph.
//!
//! The crate computes `s_ℓ` (the number of nodes of eccentricity at most ℓ),
//! graph powers `G^ℓ` and exact Laplacian spectra, evaluates a family of lower
//! bounds on λ₂ built from them, and numerically certifies the matrix
//! inequalities those bounds rest on.
//!
//! ```
//! use algconn_core::{bounds::evaluate_all, graph::{generate, Family}};
//!
//! let p4 = generate(Family::Path, 4).unwrap();
//! let report = evaluate_all(&p4, 3).unwrap();
//! assert_eq!(report.value(algconn_core::bounds::BoundKind::G1), Some(0.5));
//! assert!(report.violations().is_empty());
//! ```

pub mod bounds;
pub mod certify;
pub mod graph;
pub mod metrics;
pub mod spectral;

pub use bounds::{evaluate_all, BoundKind, BoundReport, GraphAnalysis};
pub use certify::{certify_g1_matrix, certify_g2_matrix, check_chain, ChainCheck};
pub use graph::{generate, Family, Graph};
pub use metrics::{Distance, DistanceMatrix, EccentricityProfile};
pub use spectral::{CertificateResult, SpectralSummary, SymMatrix, Verdict};
