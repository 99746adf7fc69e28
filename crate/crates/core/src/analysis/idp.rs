//! Integer decomposition property for lattice simplices.
//!
//! Points of `cone(S × {1})` are handled in the coordinates
//! `w = (x, h) · adj(M) · sign(det M) = |det M| · λ`, in which cone
//! membership is `w >= 0` and height is `∑ w / |det M|`. Every lattice point
//! of the cone is a parallelepiped point plus a nonnegative integer
//! combination of the lifted vertices, so `S` has IDP iff each parallelepiped
//! point of height `h >= 2` is a sum of `h` lattice points of `S × {1}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::config::Config;
use crate::ehrhart::{check_cap, lattice_points, Cokernel};
use crate::error::{Error, Result};
use crate::linalg::adjugate;
use crate::simplex::LatticeSimplex;

type Coords = Vec<i128>;

fn narrow(x: &BigInt) -> Result<i128> {
    x.to_i128()
        .ok_or_else(|| Error::Domain("coordinates too large for the IDP search".into()))
}

struct Search {
    generators: Vec<Coords>,
    memo: HashMap<Coords, bool>,
}

impl Search {
    /// Whether `w` at height `h` is a sum of `h` generators.
    fn decomposable(&mut self, w: &Coords, h: usize) -> bool {
        if h <= 1 {
            return true;
        }
        if let Some(&known) = self.memo.get(w) {
            return known;
        }
        let mut found = false;
        for k in 0..self.generators.len() {
            let g = &self.generators[k];
            if w.iter().zip(g).all(|(a, b)| a >= b) {
                let rest: Coords = w.iter().zip(g).map(|(a, b)| a - b).collect();
                if self.decomposable(&rest, h - 1) {
                    found = true;
                    break;
                }
            }
        }
        self.memo.insert(w.clone(), found);
        found
    }
}

/// Decides IDP. Fails with a feasibility error when the normalized volume
/// exceeds `cfg.idp_cap`.
pub fn is_idp(s: &LatticeSimplex, cfg: &Config) -> Result<bool> {
    let volume = s.normalized_volume();
    check_cap(&volume, cfg.idp_cap, "IDP check")?;
    let cokernel = Cokernel::new(s, u64::MAX)?;
    let vol = narrow(&volume)?;
    let modulus = cokernel.modulus() as i128;

    let sign = if s.signed_det().is_negative() { -BigInt::one() } else { BigInt::one() };
    let weights = adjugate(s.homogenized())?;
    let generators = lattice_points(s, cfg)?
        .into_iter()
        .map(|mut p| {
            p.push(BigInt::one());
            weights
                .left_mul_vec(&p)
                .expect("shapes agree")
                .iter()
                .map(|x| narrow(&(x * &sign)))
                .collect::<Result<Coords>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut search = Search {
        generators,
        memo: HashMap::new(),
    };
    for b in cokernel.numerators(cfg) {
        let w: Coords = b.iter().map(|&x| x as i128 * vol / modulus).collect();
        let height = (w.iter().sum::<i128>() / vol) as usize;
        if !search.decomposable(&w, height) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::linalg::IntMatrix;
    use crate::simplex::LaplacianSimplex;

    fn idp(g: Graph) -> bool {
        is_idp(&LaplacianSimplex::build(&g).unwrap(), &Config::default()).unwrap()
    }

    #[test]
    fn known_cases() {
        assert!(idp(Graph::complete(3).unwrap()));
        assert!(idp(Graph::complete(4).unwrap()));
        assert!(!idp(Graph::cycle(5).unwrap()));
        assert!(idp(Graph::star(5).unwrap()));
    }

    #[test]
    fn sparse_simplex_is_not_idp() {
        // conv(0, e1, e2, (1,1,2)) has h* = (1, 0, 1) and is not IDP
        let v = IntMatrix::from_rows(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 2]]).unwrap();
        let s = LatticeSimplex::new(v).unwrap();
        assert!(!is_idp(&s, &Config::default()).unwrap());
        let unit = LatticeSimplex::canonical_tree_simplex(3).unwrap();
        assert!(is_idp(&unit, &Config::default()).unwrap());
    }

    #[test]
    fn cap() {
        let s = LaplacianSimplex::build(&Graph::complete(4).unwrap()).unwrap();
        let cfg = Config { idp_cap: 63, ..Config::default() };
        assert!(matches!(is_idp(&s, &cfg), Err(Error::Infeasible { what: "IDP check", .. })));
    }
}
