//! Lattice simplices, and the Laplacian simplex `T_G` of a connected graph.
//!
//! A [`LatticeSimplex`] is stored as its `(d+1) × d` vertex matrix, one vertex
//! per row. [`LaplacianSimplex`] adds the graph and its spanning-tree count,
//! using the vertex matrix `L_B = L · A` where `A` is the `n × (n-1)` matrix
//! with `a_ij = 1` for `i <= j` (the Laplacian in the basis
//! `e_1 - e_2, …, e_{n-1} - e_n` of the sum-zero hyperplane).

use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{
    cofactor_matrix, determinant, gcd_all, is_primitive, is_unimodular, solve_exact, IntMatrix,
    RatVector,
};
use crate::par::{self, Execution};

/// Facet data for the facet opposite one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetData {
    /// Solution of `V(i | ∅) · v = 𝟙`: the vertex of the dual polytope.
    pub dual_vertex: RatVector,
    /// Primitive integer normal `a` with `a · x = c` on the facet.
    pub primitive_normal: Vec<BigInt>,
    /// The integral distance `c` of the facet hyperplane from the origin.
    pub local_index: BigInt,
}

/// Full-dimensional lattice simplex in `R^d` given by `d + 1` vertex rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSimplex {
    vertices: IntMatrix,
    homogenized: IntMatrix,
    det: BigInt,
}

impl LatticeSimplex {
    pub fn new(vertices: IntMatrix) -> Result<Self> {
        if vertices.rows() != vertices.cols() + 1 {
            return Err(Error::Shape(format!(
                "a d-simplex needs (d+1) x d vertices, got {}x{}",
                vertices.rows(),
                vertices.cols()
            )));
        }
        let homogenized = vertices.with_ones_column();
        let det = determinant(&homogenized)?;
        if det.is_zero() {
            return Err(Error::Domain("vertices are affinely dependent".into()));
        }
        Ok(Self {
            vertices,
            homogenized,
            det,
        })
    }

    /// `S_d(1) = conv(e_1, …, e_d, -𝟙)`.
    pub fn canonical_tree_simplex(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        let mut v = IntMatrix::zeros(d + 1, d);
        for i in 0..d {
            v[(i, i)] = BigInt::one();
            v[(d, i)] = -BigInt::one();
        }
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.vertices.cols()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.rows()
    }

    pub fn vertices(&self) -> &IntMatrix {
        &self.vertices
    }

    /// `[V | 𝟙]`, whose rows are the lifted vertices `(v_i, 1)`.
    pub fn homogenized(&self) -> &IntMatrix {
        &self.homogenized
    }

    /// Signed `det [V | 𝟙]`.
    pub fn signed_det(&self) -> &BigInt {
        &self.det
    }

    /// `|det [V | 𝟙]|`, equal to `d! · vol`.
    pub fn normalized_volume(&self) -> BigInt {
        self.det.abs()
    }

    /// Barycentric coordinates `λ` with `λ · [V | 𝟙] = (x, t)`.
    pub fn barycentric(&self, point: &[BigInt], height: &BigInt) -> Result<RatVector> {
        let mut rhs: Vec<BigInt> = point.to_vec();
        rhs.push(height.clone());
        solve_exact(&self.homogenized.transpose(), &RatVector::from_integers(&rhs))
    }

    /// True iff the origin is a strictly positive combination of the vertices.
    pub fn contains_origin_interior(&self) -> bool {
        let zero = vec![BigInt::zero(); self.dim()];
        self.barycentric(&zero, &BigInt::one())
            .map(|l| l.entries().iter().all(Signed::is_positive))
            .unwrap_or(false)
    }

    /// Facet data for each vertex `i` (the facet not containing it). Fails
    /// with [`Error::Singular`] if some facet hyperplane passes through 0.
    pub fn facets(&self) -> Result<Vec<FacetData>> {
        self.facets_with(Execution::default())
    }

    pub fn facets_with(&self, exec: Execution) -> Result<Vec<FacetData>> {
        par::map_range(self.vertex_count(), exec, |i| self.facet(i))
            .into_iter()
            .collect()
    }

    fn facet(&self, i: usize) -> Result<FacetData> {
        let sub = self.vertices.delete(&[i], &[]);
        let dual = solve_exact(&sub, &RatVector::ones(sub.rows()))?;
        let (den, scaled) = dual.clear_denominators();
        let g = gcd_all(&scaled);
        Ok(FacetData {
            primitive_normal: scaled.iter().map(|x| x / &g).collect(),
            local_index: den / g,
            dual_vertex: dual,
        })
    }

    /// Origin interior and every dual vertex integral.
    pub fn is_reflexive(&self) -> bool {
        self.contains_origin_interior()
            && self
                .facets()
                .is_ok_and(|fs| fs.iter().all(|f| f.dual_vertex.is_integral()))
    }

    /// `Some(ℓ)` when the origin is interior, every vertex is primitive and
    /// every facet has local index `ℓ`.
    pub fn ell_reflexive_index(&self) -> Option<BigInt> {
        if !self.contains_origin_interior() {
            return None;
        }
        let primitive = self
            .vertices
            .row_iter()
            .all(|r| is_primitive(r).unwrap_or(false));
        if !primitive {
            return None;
        }
        let facets = self.facets().ok()?;
        let ell = facets.first()?.local_index.clone();
        facets
            .iter()
            .all(|f| f.local_index == ell)
            .then_some(ell)
    }
}

/// The `n × (n-1)` change-of-basis matrix with ones on and above the diagonal.
pub fn basis_change_matrix(n: usize) -> IntMatrix {
    let mut a = IntMatrix::zeros(n, n.saturating_sub(1));
    for i in 0..n {
        for j in i..n.saturating_sub(1) {
            a[(i, j)] = BigInt::one();
        }
    }
    a
}

/// The Laplacian simplex `T_G = conv(rows of L_B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianSimplex {
    graph: Graph,
    kappa: BigInt,
    simplex: LatticeSimplex,
}

impl LaplacianSimplex {
    /// Builds `T_G` and checks the structural identities: columns of `L_B`
    /// sum to zero and `|det [L_B | 𝟙]| = n·κ`.
    pub fn build(graph: &Graph) -> Result<Self> {
        let n = graph.n();
        if n < 2 {
            return Err(Error::Domain(
                "Laplacian simplices need at least 2 vertices".into(),
            ));
        }
        let lb = graph.laplacian().mul(&basis_change_matrix(n))?;
        for c in 0..lb.cols() {
            let s: BigInt = lb.column(c).iter().sum();
            if !s.is_zero() {
                return Err(Error::Inconsistency(format!("column {c} of L_B sums to {s}")));
            }
        }
        let kappa = graph.spanning_tree_count();
        let simplex = LatticeSimplex::new(lb)?;
        let expect = BigInt::from(n) * &kappa;
        if simplex.normalized_volume() != expect {
            return Err(Error::Inconsistency(format!(
                "normalized volume {} differs from n*kappa = {expect}",
                simplex.normalized_volume()
            )));
        }
        Ok(Self {
            graph: graph.clone(),
            kappa,
            simplex,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn kappa(&self) -> &BigInt {
        &self.kappa
    }

    pub fn simplex(&self) -> &LatticeSimplex {
        &self.simplex
    }

    /// Reflexivity via cofactors: for every `i` and column `j`, κ divides the
    /// column sum of the cofactor matrix of `L_B(i | ∅)`. Independent of the
    /// dual-vertex solve used by [`LatticeSimplex::is_reflexive`].
    pub fn cofactor_reflexivity_test(&self) -> bool {
        self.cofactor_reflexivity_test_with(Execution::default())
    }

    pub fn cofactor_reflexivity_test_with(&self, exec: Execution) -> bool {
        let lb = self.simplex.vertices();
        par::map_range(lb.rows(), exec, |i| {
            let c = cofactor_matrix(&lb.delete(&[i], &[])).expect("square submatrix");
            (0..c.cols()).all(|j| {
                let s: BigInt = c.column(j).iter().sum();
                s.is_multiple_of(&self.kappa)
            })
        })
        .into_iter()
        .all(|ok| ok)
    }
}

impl Deref for LaplacianSimplex {
    type Target = LatticeSimplex;

    fn deref(&self) -> &LatticeSimplex {
        &self.simplex
    }
}

/// Checks a unimodular-equivalence certificate between two vertex matrices:
/// `U` unimodular and `row_{perm[i]}(second) = row_i(first) · U` for all `i`.
pub fn verify_equivalence_certificate(
    first: &IntMatrix,
    second: &IntMatrix,
    u: &IntMatrix,
    perm: &[usize],
) -> Result<bool> {
    let d = first.cols();
    if second.rows() != first.rows()
        || second.cols() != d
        || u.rows() != d
        || u.cols() != d
        || perm.len() != first.rows()
    {
        return Err(Error::Shape("certificate shapes do not match".into()));
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Shape("perm is not a permutation".into()));
        }
    }
    if !is_unimodular(u)? {
        return Ok(false);
    }
    let image = first.mul(u)?;
    Ok((0..first.rows()).all(|i| image.row(i) == second.row(perm[i])))
}

/// The matrix `U` with `L(i) · U = L(j)`, where `L(k)` deletes column `k` of
/// an `n`-vertex Laplacian (vertices 1-based). Column `k` of `U` is the unit
/// vector locating the same Laplacian column in `L(i)`, or `-𝟙` for the
/// column `i` that `L(i)` lacks (Laplacian rows sum to zero).
pub fn column_deletion_transform(n: usize, i: usize, j: usize) -> Result<IntMatrix> {
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::Domain(format!("columns {i}, {j} not in 1..={n}")));
    }
    let kept_i: Vec<usize> = (1..=n).filter(|&c| c != i).collect();
    let kept_j: Vec<usize> = (1..=n).filter(|&c| c != j).collect();
    let mut u = IntMatrix::zeros(n - 1, n - 1);
    for (k, c) in kept_j.iter().enumerate() {
        match kept_i.iter().position(|x| x == c) {
            Some(l) => u[(l, k)] = BigInt::one(),
            None => {
                for l in 0..n - 1 {
                    u[(l, k)] = -BigInt::one();
                }
            }
        }
    }
    Ok(u)
}

/// Rational entries of a dual vertex as `(numerator, denominator)` pairs.
pub fn rational_pairs(v: &RatVector) -> Vec<(BigInt, BigInt)> {
    v.entries()
        .iter()
        .map(|q: &BigRational| (q.numer().clone(), q.denom().clone()))
        .collect()
}
