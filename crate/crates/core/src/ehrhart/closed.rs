//! Closed forms for trees, odd cycles and complete graphs.

use num_bigint::BigInt;
use num_traits::One;

use super::{HStarVector, Strategy};
use crate::error::{Error, Result};
use crate::linalg::binomial;

/// All ones of length `n`: every tree simplex is equivalent to
/// `conv(e_1, …, e_{n-1}, -𝟙)`.
pub fn hstar_tree(n: usize) -> Result<HStarVector> {
    if n < 2 {
        return Err(Error::Domain(format!("trees need n >= 2, got {n}")));
    }
    Ok(HStarVector::new(vec![BigInt::one(); n], Strategy::TreeClosedForm))
}

/// Height histogram over `(α, β) ∈ (ℤ/n)²` of
/// `h(α, β) = (1/n) ∑_{j<n} ((α + jβ) mod n)`, odd `n` only.
pub fn hstar_cycle_closed_form(n: usize) -> Result<HStarVector> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "the cycle closed form needs odd n >= 3, got {n}"
        )));
    }
    let mut hist = vec![0u64; n];
    for alpha in 0..n {
        for beta in 0..n {
            let sum: usize = (0..n).map(|j| (alpha + j * beta) % n).sum();
            if !sum.is_multiple_of(n) {
                return Err(Error::Inconsistency(format!(
                    "height of ({alpha}, {beta}) is not an integer"
                )));
            }
            hist[sum / n] += 1;
        }
    }
    Ok(HStarVector::new(
        hist.into_iter().map(BigInt::from).collect(),
        Strategy::CycleClosedForm,
    ))
}

/// Entry `i` counts weak compositions of `i·n` into `n` parts in `[0, n-1]`:
/// `∑_k (-1)^k C(n, k) C(in - kn + n - 1, n - 1)`.
pub fn hstar_complete(n: usize) -> Result<HStarVector> {
    if n < 2 {
        return Err(Error::Domain(format!("complete graphs need n >= 2, got {n}")));
    }
    let nb = BigInt::from(n);
    let entries = (0..n)
        .map(|i| {
            (0..=i)
                .map(|k| {
                    let term = binomial(&nb, k)
                        * binomial(&BigInt::from((i - k) * n + n - 1), n - 1);
                    if k % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    Ok(HStarVector::new(entries, Strategy::CompleteCompositions))
}
