//! Simple connected graphs on vertices `1..=n`, their Laplacians, and the
//! graph operations whose Laplacian simplices are related in a controlled way.

mod io;
mod ops;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, IntMatrix};

pub use io::{parse_edge_list, write_edge_list};
pub use ops::leaf_move_row_operations;

/// A simple connected graph with vertex set `{1, …, n}`.
///
/// Edges are stored as sorted pairs `(u, v)` with `u < v`, so iteration and
/// serialization order are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::new(raw.n, raw.edges.iter().map(|&[u, v]| (u, v)))
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    /// Validates and builds a graph. Self-loops, repeated edges, labels out of
    /// range and disconnected graphs are all rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Domain(format!("self-loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::Domain(format!("edge {{{u},{v}}} outside 1..={n}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::Domain(format!("repeated edge {{{u},{v}}}")));
            }
        }
        let g = Graph { n, edges: set };
        if !g.is_connected() {
            return Err(Error::Domain("graph is not connected".into()));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n + 1];
        let mut queue = VecDeque::from([1]);
        seen[1] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    /// Connected and 2-regular on at least three vertices.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && (1..=self.n).all(|v| self.degree(v) == 2)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    /// Degree matrix minus adjacency matrix; row `i - 1` belongs to vertex `i`.
    pub fn laplacian(&self) -> IntMatrix {
        let mut l = IntMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            let (a, b) = (u - 1, v - 1);
            l[(a, a)] += 1;
            l[(b, b)] += 1;
            l[(a, b)] -= 1;
            l[(b, a)] -= 1;
        }
        l
    }

    /// Number of spanning trees κ, computed as the cofactor `det L(n | n)`.
    pub fn spanning_tree_count(&self) -> BigInt {
        let last = self.n - 1;
        let reduced = self.laplacian().delete(&[last], &[last]);
        determinant(&reduced).expect("reduced Laplacian is square")
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|i| (i, i + 1)))
    }

    /// Cycle labelled cyclically: `{1,2}, {2,3}, …, {n,1}`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("a cycle needs n >= 3, got {n}")));
        }
        Graph::new(n, (1..=n).map(|i| (i, i % n + 1)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Graph::new(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))))
    }

    /// Star with centre 1.
    pub fn star(n: usize) -> Result<Self> {
        Graph::new(n, (2..=n).map(|j| (1, j)))
    }

    /// Uniform random labelled tree, decoded from a random Prüfer sequence.
    pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n <= 2 {
            return Graph::path(n);
        }
        let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
        let mut degree = vec![1usize; n + 1];
        for &c in &code {
            degree[c] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &c in &code {
            let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf exists");
            edges.push((leaf, c));
            degree[leaf] -= 1;
            degree[c] -= 1;
        }
        let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        Graph::new(n, edges)
    }

    /// Random connected graph: a random spanning tree plus each remaining pair
    /// independently with probability `extra`.
    pub fn random_connected<R: Rng + ?Sized>(n: usize, extra: f64, rng: &mut R) -> Result<Self> {
        let tree = Graph::random_tree(n, rng)?;
        let mut edges: Vec<(usize, usize)> = tree.edges().collect();
        let mut pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| !tree.has_edge(i, j))
            .collect();
        pairs.shuffle(rng);
        edges.extend(pairs.into_iter().filter(|_| rng.gen_bool(extra)));
        Graph::new(n, edges)
    }

    /// Builds a named family member. `seed` only matters for random trees.
    pub fn family(kind: Family, n: usize, seed: Option<u64>) -> Result<Self> {
        match kind {
            Family::Path => Graph::path(n),
            Family::Cycle => Graph::cycle(n),
            Family::Complete => Graph::complete(n),
            Family::Star => Graph::star(n),
            Family::RandomTree => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(DEFAULT_SEED));
                Graph::random_tree(n, &mut rng)
            }
        }
    }
}

/// Seed used whenever a random construction is requested without one.
pub const DEFAULT_SEED: u64 = 0x05ee_d1a9;

/// Named graph families reachable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    RandomTree,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::Star,
        Family::RandomTree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::RandomTree => "random_tree",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s || f.name().replace('_', "-") == s)
            .ok_or_else(|| Error::Domain(format!("unknown graph family '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn l(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(Graph::new(0, []).is_err());
        assert!(Graph::new(3, [(1, 1), (2, 3)]).is_err());
        assert!(Graph::new(3, [(1, 2), (2, 1), (2, 3)]).is_err());
        assert!(Graph::new(3, [(1, 4)]).is_err());
        assert!(matches!(Graph::new(4, [(1, 2), (3, 4)]), Err(Error::Domain(_))));
        assert!(Graph::cycle(2).is_err());
    }

    #[test]
    fn laplacians_of_small_graphs() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(
            c5.laplacian(),
            l(&[
                &[2, -1, 0, 0, -1],
                &[-1, 2, -1, 0, 0],
                &[0, -1, 2, -1, 0],
                &[0, 0, -1, 2, -1],
                &[-1, 0, 0, -1, 2],
            ])
        );
        assert_eq!(
            Graph::complete(3).unwrap().laplacian(),
            l(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])
        );
        assert_eq!(
            Graph::path(3).unwrap().laplacian(),
            l(&[&[1, -1, 0], &[-1, 2, -1], &[0, -1, 1]])
        );
    }

    #[test]
    fn spanning_tree_counts() {
        for n in 3..=9 {
            assert_eq!(Graph::cycle(n).unwrap().spanning_tree_count(), BigInt::from(n));
        }
        for n in 1..=7u32 {
            let expect = if n == 1 {
                BigInt::one()
            } else {
                BigInt::from(n).pow(n - 2)
            };
            assert_eq!(Graph::complete(n as usize).unwrap().spanning_tree_count(), expect);
        }
        assert!(Graph::star(6).unwrap().spanning_tree_count().is_one());
    }

    #[test]
    fn all_cofactors_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let g = Graph::random_connected(6, 0.4, &mut rng).unwrap();
            let lap = g.laplacian();
            let kappa = g.spanning_tree_count();
            for i in 0..6 {
                for j in 0..6 {
                    let m = crate::linalg::minor(&lap, &[i], &[j]).unwrap();
                    let c = if (i + j) % 2 == 0 { m } else { -m };
                    assert_eq!(c, kappa);
                }
            }
        }
    }

    #[test]
    fn families() {
        let c5 = Graph::family(Family::Cycle, 5, None).unwrap();
        assert_eq!(
            c5.edges().collect::<Vec<_>>(),
            vec![(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]
        );
        assert_eq!(Graph::family(Family::Complete, 4, None).unwrap().edge_count(), 6);
        let t = Graph::family(Family::RandomTree, 8, Some(3)).unwrap();
        assert_eq!(t.edge_count(), 7);
        assert_eq!(t, Graph::family(Family::RandomTree, 8, Some(3)).unwrap());
        assert!(Graph::family(Family::Cycle, 2, None).is_err());
        assert_eq!("random_tree".parse::<Family>().unwrap(), Family::RandomTree);
        assert!("wheel".parse::<Family>().is_err());
    }

    #[test]
    fn shape_predicates() {
        assert!(Graph::cycle(4).unwrap().is_cycle());
        assert!(!Graph::path(4).unwrap().is_cycle());
        assert!(Graph::complete(3).unwrap().is_cycle());
        assert!(Graph::star(5).unwrap().is_tree());
        assert!(Graph::complete(1).unwrap().is_complete());
    }

    #[test]
    fn json_roundtrip_validates() {
        let g = Graph::cycle(4).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":4,"edges":[[1,2],[1,4],[2,3],[3,4]]}"#);
        assert_eq!(serde_json::from_str::<Graph>(&s).unwrap(), g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":4,"edges":[[1,2]]}"#).is_err());
    }
}
