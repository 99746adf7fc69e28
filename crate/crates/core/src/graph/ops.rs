use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::Graph;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

impl Graph {
    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::Domain(format!("vertex {v} not in 1..={}", self.n)));
        }
        Ok(())
    }

    /// Whiskered graph `W(G)`: vertex `n + i` is a pendant attached to `i`.
    pub fn whisker(&self) -> Graph {
        let n = self.n;
        let edges = self.edges().chain((1..=n).map(|i| (i, n + i)));
        Graph::new(2 * n, edges).expect("whiskering preserves connectivity")
    }

    /// Joins two graphs on the same number of vertices by the edge
    /// `{i, n + other_i}`; the second graph is relabelled to `n+1..=2n`.
    pub fn bridge(&self, other: &Graph, i: usize, other_i: usize) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::Domain(format!(
                "bridge needs equal vertex counts, got {} and {}",
                self.n, other.n
            )));
        }
        self.check_vertex(i)?;
        other.check_vertex(other_i)?;
        let n = self.n;
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + n, v + n)))
            .chain(std::iter::once((i, n + other_i)));
        Graph::new(2 * n, edges)
    }

    /// Attaches a path of `k` new vertices `n+1, …, n+k` hanging from `v`.
    pub fn attach_path(&self, v: usize, k: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        if k == 0 {
            return Err(Error::Domain("attach_path needs k >= 1".into()));
        }
        let n = self.n;
        let tail = std::iter::once((v, n + 1)).chain((n + 1..n + k).map(|u| (u, u + 1)));
        Graph::new(n + k, self.edges().chain(tail))
    }

    /// Attaches `tree` (on `k + 1` vertices) by identifying its vertex `root`
    /// with `v`. The other tree vertices become `n+1, …, n+k` in label order.
    pub fn attach_tree(&self, v: usize, tree: &Graph, root: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        tree.check_vertex(root)?;
        if !tree.is_tree() {
            return Err(Error::Domain("attached graph is not a tree".into()));
        }
        if tree.n < 2 {
            return Err(Error::Domain("attached tree needs at least one new vertex".into()));
        }
        let n = self.n;
        let relabel = |u: usize| match u.cmp(&root) {
            std::cmp::Ordering::Equal => v,
            std::cmp::Ordering::Less => n + u,
            std::cmp::Ordering::Greater => n + u - 1,
        };
        let added = tree.edges().map(|(a, b)| (relabel(a), relabel(b)));
        Graph::new(n + tree.n - 1, self.edges().chain(added))
    }

    /// Moves every edge crossing the cut `(A, V \ A)` from `x` to the leaf `y`.
    ///
    /// Requires `x, y ∈ A`, `y` a leaf whose only neighbour is `x`, and every
    /// crossing edge incident to `x`.
    pub fn leaf_move(&self, a: &BTreeSet<usize>, x: usize, y: usize) -> Result<Graph> {
        let moved = self.check_leaf_move(a, x, y)?;
        let edges = self
            .edges()
            .filter(|&(u, v)| !(moved.contains(&u) && v == x || moved.contains(&v) && u == x))
            .chain(moved.iter().map(|&b| (y, b)));
        Graph::new(self.n, edges)
    }

    /// Returns the B-side endpoints of the crossing edges.
    fn check_leaf_move(&self, a: &BTreeSet<usize>, x: usize, y: usize) -> Result<Vec<usize>> {
        for &v in a {
            self.check_vertex(v)?;
        }
        if !a.contains(&x) || !a.contains(&y) {
            return Err(Error::Domain("x and y must both lie in A".into()));
        }
        if x == y || self.neighbors(y) != [x] {
            return Err(Error::Domain(format!("{y} is not a leaf hanging from {x}")));
        }
        let mut moved = Vec::new();
        for (u, v) in self.edges() {
            let (inside, outside) = match (a.contains(&u), a.contains(&v)) {
                (true, false) => (u, v),
                (false, true) => (v, u),
                _ => continue,
            };
            if inside != x {
                return Err(Error::Domain(format!(
                    "cut edge {{{u},{v}}} is not incident to {x}"
                )));
            }
            moved.push(outside);
        }
        Ok(moved)
    }
}

/// The unimodular matrix `U` with `U · L(G) = L(G')` for a leaf move, built
/// from the explicit row operations:
///
/// * `r'_i = r_i − r_y` for B-vertices adjacent to `x`,
/// * `r'_x = r_x + Σ_{j∈B} r_j`,
/// * `r'_y = (k+1) r_y − Σ_{j∈B} r_j`, `k` the number of moved edges,
/// * every other row unchanged.
pub fn leaf_move_row_operations(
    g: &Graph,
    a: &BTreeSet<usize>,
    x: usize,
    y: usize,
) -> Result<IntMatrix> {
    let moved = g.check_leaf_move(a, x, y)?;
    let n = g.n();
    let b: Vec<usize> = (1..=n).filter(|v| !a.contains(v)).collect();
    let mut u = IntMatrix::identity(n);
    for &i in &moved {
        u[(i - 1, y - 1)] = BigInt::from(-1);
    }
    for &j in &b {
        u[(x - 1, j - 1)] = BigInt::from(1);
        u[(y - 1, j - 1)] = BigInt::from(-1);
    }
    u[(y - 1, y - 1)] = BigInt::from(moved.len() + 1);
    Ok(u)
}
