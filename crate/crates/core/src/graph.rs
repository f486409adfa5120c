//! Simple undirected graphs: construction, edge-list I/O, generators and complement.
//!
//! Nodes are `0..n`. Adjacency lists are kept sorted and deduplicated, so
//! membership tests are a binary search and iteration order is deterministic.

use std::fmt;
use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_pcg::Pcg32;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or validating a [`Graph`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("node index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("invalid node count {n} for family {family}")]
    InvalidSize { family: &'static str, n: usize },
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Edge-list parse failure, always tied to a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line `n <count>`")]
    MissingHeader,
    #[error("malformed header `{0}`, expected `n <count>`")]
    BadHeader(String),
    #[error("node count must be at least 1")]
    ZeroNodes,
    #[error("malformed edge line `{0}`, expected `u v`")]
    BadEdge(String),
    #[error("node index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Self {
            adjacency: vec![Vec::new(); n],
            m: 0,
        })
    }

    /// Builds a graph from an edge iterator. Duplicate and reversed pairs collapse
    /// into one edge; self-loops and out-of-range indices are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for index in [u, v] {
                if index >= n {
                    return Err(GraphError::IndexOutOfRange { index, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adjacency))
    }

    fn from_raw_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let m = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Self { adjacency, m }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Number of nodes adjacent to every other node.
    pub fn count_universal(&self) -> usize {
        let n = self.n();
        (0..n).filter(|&v| self.degree(v) == n - 1).count()
    }

    /// Checks simplicity, symmetry and the edge count.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.n();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut degree_sum = 0;
        for (u, list) in self.adjacency.iter().enumerate() {
            degree_sum += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GraphError::Invariant(format!(
                    "adjacency of node {u} is not strictly increasing"
                )));
            }
            for &v in list {
                if v >= n {
                    return Err(GraphError::IndexOutOfRange { index: v, n });
                }
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if !self.has_edge(v, u) {
                    return Err(GraphError::Invariant(format!(
                        "edge {u}-{v} is not mirrored"
                    )));
                }
            }
        }
        if degree_sum != 2 * self.m {
            return Err(GraphError::Invariant(format!(
                "edge count {} disagrees with degree sum {}",
                self.m, degree_sum
            )));
        }
        Ok(())
    }

    /// Graph on the same nodes containing exactly the non-edges of `self`.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adjacency = (0..n)
            .map(|u| {
                let own = &self.adjacency[u];
                (0..n)
                    .filter(|&v| v != u && own.binary_search(&v).is_err())
                    .collect()
            })
            .collect();
        Self::from_raw_adjacency(adjacency)
    }

    /// Parses the edge-list text format:
    ///
    /// ```text
    /// # comment
    /// n 4
    /// 0 1
    /// 1 2
    /// ```
    ///
    /// Lines starting with `#` and blank lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |kind| ParseError {
                line: line_no,
                kind,
            };
            let mut fields = line.split_whitespace();
            match n {
                None => {
                    let count = match (fields.next(), fields.next(), fields.next()) {
                        (Some("n"), Some(count), None) => count.parse::<usize>().ok(),
                        _ => None,
                    }
                    .ok_or_else(|| err(ParseErrorKind::BadHeader(line.to_string())))?;
                    if count == 0 {
                        return Err(err(ParseErrorKind::ZeroNodes));
                    }
                    n = Some(count);
                }
                Some(count) => {
                    let (u, v) = match (fields.next(), fields.next(), fields.next()) {
                        (Some(a), Some(b), None) => {
                            match (a.parse::<usize>(), b.parse::<usize>()) {
                                (Ok(u), Ok(v)) => (u, v),
                                _ => return Err(err(ParseErrorKind::BadEdge(line.to_string()))),
                            }
                        }
                        _ => return Err(err(ParseErrorKind::BadEdge(line.to_string()))),
                    };
                    for index in [u, v] {
                        if index >= count {
                            return Err(err(ParseErrorKind::IndexOutOfRange { index, n: count }));
                        }
                    }
                    if u == v {
                        return Err(err(ParseErrorKind::SelfLoop(u)));
                    }
                    edges.push((u, v));
                }
            }
        }
        let n = n.ok_or(ParseError {
            line: last_line.max(1),
            kind: ParseErrorKind::MissingHeader,
        })?;
        // indices and loops were checked above
        Ok(Graph::from_edges(n, edges).expect("validated edge list"))
    }

    /// Serializes in the format accepted by [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Generator families for test corpora.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    /// Node 0 is the center.
    Star,
    /// G(n, p); every pair is included independently with probability `p`.
    ErdosRenyi {
        p: f64,
        seed: u64,
    },
    /// Uniform labeled tree, decoded from a random Prüfer sequence.
    RandomTree {
        seed: u64,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::ErdosRenyi { .. } => "erdos_renyi",
            Family::RandomTree { .. } => "random_tree",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::ErdosRenyi { p, seed } => write!(f, "erdos_renyi(p={p}, seed={seed})"),
            Family::RandomTree { seed } => write!(f, "random_tree(seed={seed})"),
            other => f.write_str(other.name()),
        }
    }
}

/// The random source used by every seeded generator: PCG-XSH-RR 64/32
/// (64-bit LCG state, 32-bit output), seeded through `SeedableRng::seed_from_u64`.
pub type SeededRng = Pcg32;

pub fn seeded_rng(seed: u64) -> SeededRng {
    Pcg32::seed_from_u64(seed)
}

/// Builds the `n`-node member of `family`. Deterministic for a fixed seed.
pub fn generate(family: Family, n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidSize {
            family: family.name(),
            n,
        });
    }
    match family {
        Family::Path => Graph::from_edges(n, (1..n).map(|v| (v - 1, v))),
        Family::Cycle => {
            if n < 3 {
                return Err(GraphError::InvalidSize {
                    family: family.name(),
                    n,
                });
            }
            Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
        }
        Family::Complete => {
            Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        Family::Star => Graph::from_edges(n, (1..n).map(|v| (0, v))),
        Family::ErdosRenyi { p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(GraphError::InvalidProbability(p));
            }
            let mut rng = seeded_rng(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges)
        }
        Family::RandomTree { seed } => {
            let mut rng = seeded_rng(seed);
            let sequence: Vec<usize> = if n >= 2 {
                (0..n - 2).map(|_| rng.gen_range(0..n)).collect()
            } else {
                Vec::new()
            };
            Graph::from_edges(n, prufer_edges(n, &sequence))
        }
    }
}

/// Decodes a Prüfer sequence of length `n - 2` into the `n - 1` tree edges.
pub fn prufer_edges(n: usize, sequence: &[usize]) -> Vec<(usize, usize)> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    if n < 2 {
        return Vec::new();
    }
    debug_assert_eq!(sequence.len(), n - 2);
    let mut degree = vec![1usize; n];
    for &v in sequence {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in sequence {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    edges
}
