//! Command implementations behind the `algconn` binary.
//!
//! Exit-code contract: 0 success, 1 verification violation, 2 usage or
//! input error.

pub mod campaign;
pub mod report;
pub mod tightness;

use std::path::{Path, PathBuf};

use algconn_core::bounds::{evaluate_all, BoundError, BoundReport};
use algconn_core::graph::{Graph, GraphError, ParseError};
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Certify(#[from] algconn_core::certify::CertifyError),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        EXIT_USAGE
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Graph::parse_edge_list(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn analyze_graph(g: &Graph, ell: usize) -> Result<BoundReport, CliError> {
    Ok(evaluate_all(g, ell)?)
}

/// Report bytes for `analyze`.
pub fn cmd_analyze(path: &Path, ell: usize, format: Format) -> Result<String, CliError> {
    let report = analyze_graph(&read_graph(path)?, ell)?;
    Ok(match format {
        Format::Csv => report::csv_document(&report),
        Format::Json => report::json_document(&report),
    })
}

/// Edge list of `G^ell`.
pub fn cmd_power(path: &Path, ell: usize) -> Result<String, CliError> {
    let g = read_graph(path)?;
    if ell < 1 {
        return Err(CliError::Config("ell must be at least 1".into()));
    }
    let d = algconn_core::metrics::all_pairs_distances(&g);
    Ok(algconn_core::metrics::power_graph(&g, &d, ell).to_edge_list())
}
