//! Properties of h*-vectors and Laplacian simplices.

mod idp;
mod regression;
mod report;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::config::Config;
use crate::ehrhart::{hstar, HStarVector};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::determinant;
use crate::simplex::{basis_change_matrix, LaplacianSimplex};

pub use idp::is_idp;
pub use regression::{
    paper_regression, sweep_graphs, CaseOutcome, Fault, Group, RegressionOptions,
    RegressionReport,
};
pub use report::{analyze, PropertyReport};

impl AsRef<[BigInt]> for HStarVector {
    fn as_ref(&self) -> &[BigInt] {
        &self.entries
    }
}

/// Entries weakly increase and then weakly decrease.
pub fn is_unimodal(h: impl AsRef<[BigInt]>) -> bool {
    let h = h.as_ref();
    let peak = h.windows(2).take_while(|w| w[0] <= w[1]).count();
    h[peak..].windows(2).all(|w| w[0] >= w[1])
}

/// `h_i = h_{d-i}` for all `i`.
pub fn is_symmetric(h: impl AsRef<[BigInt]>) -> bool {
    let h = h.as_ref();
    h.iter().eq(h.iter().rev())
}

/// Whether `κ` divides `n · det L_B(i, n | j)` for all `i, j` in `1..n`,
/// where `L_B(i, n | j)` deletes rows `i`, `n` and column `j`.
pub fn bridge_division_condition(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Domain("needs at least 2 vertices".into()));
    }
    let lb = g.laplacian().mul(&basis_change_matrix(n))?;
    let kappa = g.spanning_tree_count();
    let nb = BigInt::from(n);
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let m = determinant(&lb.delete(&[i, n - 1], &[j]))?;
            if !(&nb * m).is_multiple_of(&kappa) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..).take_while(|p| p * p <= n).find(|p| n.is_multiple_of(*p)).unwrap_or(n)
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

/// Checks the odd-cycle h*-vector against its predicted shape: ones at
/// indices below `m = (n - n/p)/2` (`p` the least prime factor) and
/// symmetrically at the top, `h_m > 1`, middle entry at least `n·φ(n) + 1`,
/// and exactly `(1, …, 1, n² - n + 1, 1, …, 1)` for prime `n`.
pub fn verify_prime_cycle_formula(n: usize, cfg: &Config) -> Result<bool> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Domain(format!("needs odd n >= 3, got {n}")));
    }
    let s = LaplacianSimplex::build(&Graph::cycle(n)?)?;
    let h = hstar(&s, None, cfg)?.entries;
    let d = n - 1;
    let p = smallest_prime_factor(n);
    let m = (n - n / p) / 2;
    let one = BigInt::one();
    let edges_ok = (0..m).all(|i| h[i] == one && h[d - i] == one);
    let rises = h[m] > one;
    let middle_ok = h[d / 2] >= BigInt::from(n * euler_phi(n) + 1);
    let prime_ok = p != n
        || h.iter()
            .enumerate()
            .all(|(i, x)| *x == if i == d / 2 { BigInt::from(n * n - n + 1) } else { one.clone() });
    Ok(edges_ok && rises && middle_ok && prime_ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(v(&[1, 1, 21, 1, 1])));
        assert!(is_unimodal(v(&[1, 1, 1])));
        assert!(is_unimodal(v(&[3, 2, 1])));
        assert!(is_unimodal(v(&[])));
        assert!(!is_unimodal(v(&[1, 2, 1, 2, 1])));
        assert!(!is_unimodal(v(&[2, 1, 2])));
    }

    #[test]
    fn symmetry() {
        assert!(is_symmetric(v(&[1, 7, 1])));
        assert!(is_symmetric(v(&[1, 1, 1, 1])));
        assert!(!is_symmetric(v(&[1, 3, 2])));
        let c4 = LaplacianSimplex::build(&Graph::cycle(4).unwrap()).unwrap();
        let h = hstar(&c4, None, &Config::default()).unwrap();
        assert_eq!(h.sum(), 16.into());
        assert!(!is_symmetric(&h));
    }

    #[test]
    fn division_condition() {
        for n in 3..=8 {
            assert!(bridge_division_condition(&Graph::cycle(n).unwrap()).unwrap());
        }
        for n in 2..=6 {
            assert!(bridge_division_condition(&Graph::complete(n).unwrap()).unwrap());
        }
        assert!(bridge_division_condition(&Graph::path(3).unwrap()).unwrap());
        assert!(bridge_division_condition(&Graph::complete(1).unwrap()).is_err());
    }

    #[test]
    fn prime_cycle_formula() {
        let cfg = Config::default();
        for n in [3, 5, 7, 9, 11, 15] {
            assert!(verify_prime_cycle_formula(n, &cfg).unwrap(), "n = {n}");
        }
        assert!(verify_prime_cycle_formula(8, &cfg).is_err());
        assert_eq!(smallest_prime_factor(15), 3);
        assert_eq!(smallest_prime_factor(49), 7);
        assert_eq!(smallest_prime_factor(13), 13);
        assert_eq!(euler_phi(9), 6);
    }
}
