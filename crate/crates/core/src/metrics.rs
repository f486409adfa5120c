//! Shortest-path distances, eccentricities, `s_ell` counts and graph powers.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Unweighted shortest-path length. `Unreachable` orders above every finite
/// distance, so `max` over a row yields the eccentricity directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    /// True for a finite distance `<= bound`.
    pub fn within(self, bound: usize) -> bool {
        matches!(self, Distance::Finite(d) if d <= bound)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("inf"),
        }
    }
}

/// Dense `n x n` table of shortest-path distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Distance {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Distance] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    /// Wraps a precomputed table. Panics if the length is not `n * n`.
    pub fn from_rows(n: usize, dist: Vec<Distance>) -> Self {
        assert_eq!(dist.len(), n * n, "distance table must be n x n");
        Self { n, dist }
    }
}

/// All-pairs distances by one breadth-first search per source.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let rows: Vec<Vec<Distance>> = (0..n).into_par_iter().map(|s| bfs(g, s)).collect();
    DistanceMatrix {
        n,
        dist: rows.into_iter().flatten().collect(),
    }
}

fn bfs(g: &Graph, source: usize) -> Vec<Distance> {
    let mut dist = vec![Distance::Unreachable; g.n()];
    let mut queue = VecDeque::new();
    dist[source] = Distance::Finite(0);
    queue.push_back((source, 0));
    while let Some((u, d)) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == Distance::Unreachable {
                dist[v] = Distance::Finite(d + 1);
                queue.push_back((v, d + 1));
            }
        }
    }
    dist
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EccentricityProfile {
    pub ecc: Vec<Distance>,
    pub diameter: Distance,
}

impl EccentricityProfile {
    pub fn is_connected(&self) -> bool {
        self.diameter.is_finite()
    }
}

pub fn eccentricity_profile(d: &DistanceMatrix) -> EccentricityProfile {
    let ecc: Vec<Distance> = (0..d.n())
        .map(|i| {
            d.row(i)
                .iter()
                .copied()
                .max()
                .unwrap_or(Distance::Finite(0))
        })
        .collect();
    let diameter = ecc.iter().copied().max().unwrap_or(Distance::Finite(0));
    EccentricityProfile { ecc, diameter }
}

/// Number of nodes with eccentricity at most `ell`; zero for disconnected graphs.
pub fn count_s_ell(profile: &EccentricityProfile, ell: usize) -> usize {
    profile.ecc.iter().filter(|e| e.within(ell)).count()
}

/// The `ell`-th power: `{i, j}` is an edge iff `1 <= dist(i, j) <= ell`.
pub fn power_graph(g: &Graph, d: &DistanceMatrix, ell: usize) -> Graph {
    debug_assert_eq!(g.n(), d.n());
    let n = d.n();
    let edges = (0..n).flat_map(|i| {
        (i + 1..n)
            .filter(move |&j| d.get(i, j).within(ell))
            .map(move |j| (i, j))
    });
    Graph::from_edges(n, edges).expect("distance table indices are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use Distance::{Finite, Unreachable};

    fn two_edges() -> Graph {
        Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn path_distances() {
        let d = all_pairs_distances(&generate(Family::Path, 4).unwrap());
        assert_eq!(d.get(0, 3), Finite(3));
        assert_eq!(d.get(3, 0), Finite(3));
        assert_eq!(d.get(2, 2), Finite(0));
    }

    #[test]
    fn disconnected_distances() {
        let d = all_pairs_distances(&two_edges());
        assert_eq!(d.get(0, 2), Unreachable);
        assert_eq!(d.get(0, 1), Finite(1));
    }

    #[test]
    fn cycle_wraps() {
        let d = all_pairs_distances(&generate(Family::Cycle, 5).unwrap());
        assert_eq!(d.get(0, 2), Finite(2));
        assert_eq!(d.get(0, 3), Finite(2));
    }

    #[test]
    fn eccentricities() {
        let p4 = generate(Family::Path, 4).unwrap();
        let e = eccentricity_profile(&all_pairs_distances(&p4));
        assert_eq!(e.ecc, vec![Finite(3), Finite(2), Finite(2), Finite(3)]);
        assert_eq!(e.diameter, Finite(3));

        let k4 = generate(Family::Complete, 4).unwrap();
        let e = eccentricity_profile(&all_pairs_distances(&k4));
        assert_eq!(e.ecc, vec![Finite(1); 4]);
        assert_eq!(e.diameter, Finite(1));

        let e = eccentricity_profile(&all_pairs_distances(&two_edges()));
        assert_eq!(e.ecc, vec![Unreachable; 4]);
        assert!(!e.is_connected());
    }

    #[test]
    fn single_node_profile() {
        let g = Graph::empty(1).unwrap();
        let e = eccentricity_profile(&all_pairs_distances(&g));
        assert_eq!(e.diameter, Finite(0));
        assert_eq!(count_s_ell(&e, 1), 1);
    }

    #[test]
    fn s_ell_counts() {
        let p4 = generate(Family::Path, 4).unwrap();
        let e = eccentricity_profile(&all_pairs_distances(&p4));
        assert_eq!(count_s_ell(&e, 1), 0);
        assert_eq!(count_s_ell(&e, 2), 2);
        assert_eq!(count_s_ell(&e, 3), 4);

        let e = eccentricity_profile(&all_pairs_distances(&two_edges()));
        for ell in 1..6 {
            assert_eq!(count_s_ell(&e, ell), 0);
        }
    }

    #[test]
    fn path_powers() {
        let p4 = generate(Family::Path, 4).unwrap();
        let d = all_pairs_distances(&p4);
        let sq = power_graph(&p4, &d, 2);
        assert_eq!(
            sq.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
        );
        assert_eq!(
            power_graph(&p4, &d, 3),
            generate(Family::Complete, 4).unwrap()
        );
        assert_eq!(power_graph(&p4, &d, 1), p4);
    }

    #[test]
    fn disconnected_power_stays_within_components() {
        let g = two_edges();
        let d = all_pairs_distances(&g);
        assert_eq!(power_graph(&g, &d, 5), g);
    }
}
