//! h*-vectors and Ehrhart polynomials.

mod closed;
mod dilate;
mod fpp;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{binomial, solve_exact, IntMatrix, RatVector};
use crate::simplex::{LaplacianSimplex, LatticeSimplex};

pub use closed::{hstar_complete, hstar_cycle_closed_form, hstar_tree};
pub(crate) use fpp::{check_cap, Cokernel};
pub use fpp::{fpp_height_counts, fpp_points, FppPoint, FppPoints};
pub use dilate::{count_dilate_points, lattice_points};

/// How an h*-vector was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    GenericSnf,
    CycleClosedForm,
    CompleteCompositions,
    TreeClosedForm,
    DilateInterpolation,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::GenericSnf,
        Strategy::CycleClosedForm,
        Strategy::CompleteCompositions,
        Strategy::TreeClosedForm,
        Strategy::DilateInterpolation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::GenericSnf => "generic_snf",
            Strategy::CycleClosedForm => "cycle_closed_form",
            Strategy::CompleteCompositions => "complete_compositions",
            Strategy::TreeClosedForm => "tree_closed_form",
            Strategy::DilateInterpolation => "dilate_interpolation",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        Strategy::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::Domain(format!("unknown strategy '{s}'")))
    }
}

/// `(h*_0, …, h*_d)` with the method that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HStarVector {
    #[serde(with = "crate::bigjson::vec")]
    pub entries: Vec<BigInt>,
    pub strategy: Strategy,
}

impl HStarVector {
    pub fn new(entries: Vec<BigInt>, strategy: Strategy) -> Self {
        Self { entries, strategy }
    }

    pub fn from_counts(counts: &[u64], strategy: Strategy) -> Self {
        Self::new(counts.iter().map(|&c| c.into()).collect(), strategy)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dimension `d` of the polytope, one less than the length.
    pub fn dim(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    /// `∑ h*_i`, the normalized volume.
    pub fn sum(&self) -> BigInt {
        self.entries.iter().sum()
    }
}

impl fmt::Display for HStarVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// h* of any lattice simplex from the heights of its parallelepiped points.
pub fn hstar_generic(s: &LatticeSimplex, cfg: &Config) -> Result<HStarVector> {
    Ok(HStarVector::from_counts(
        &fpp_height_counts(s, cfg)?,
        Strategy::GenericSnf,
    ))
}

/// h* from `L(0), …, L(d)` counted by the dilate scan.
pub fn hstar_by_dilates(s: &LatticeSimplex, cfg: &Config) -> Result<HStarVector> {
    let counts = (0..=s.dim() as u64)
        .map(|t| count_dilate_points(s, t, cfg))
        .collect::<Result<Vec<_>>>()?;
    hstar_from_counts(&counts)
}

/// The strategy picked when none is requested.
pub fn preferred_strategy(s: &LaplacianSimplex, cfg: &Config) -> Strategy {
    let g = s.graph();
    if !cfg.fast_paths {
        Strategy::GenericSnf
    } else if g.is_tree() {
        Strategy::TreeClosedForm
    } else if g.is_cycle() && g.n() % 2 == 1 {
        Strategy::CycleClosedForm
    } else if g.is_complete() {
        Strategy::CompleteCompositions
    } else {
        Strategy::GenericSnf
    }
}

/// h*-vector of `T_G`, by the requested strategy or the fastest applicable.
pub fn hstar(s: &LaplacianSimplex, strategy: Option<Strategy>, cfg: &Config) -> Result<HStarVector> {
    let strategy = strategy.unwrap_or_else(|| preferred_strategy(s, cfg));
    let g = s.graph();
    let n = g.n();
    let inapplicable = |what: &str| Err(Error::Domain(format!("{strategy} needs {what}")));
    match strategy {
        Strategy::GenericSnf => hstar_generic(s, cfg),
        Strategy::DilateInterpolation => hstar_by_dilates(s, cfg),
        Strategy::TreeClosedForm if g.is_tree() => hstar_tree(n),
        Strategy::TreeClosedForm => inapplicable("a tree"),
        Strategy::CycleClosedForm if g.is_cycle() && n % 2 == 1 => hstar_cycle_closed_form(n),
        Strategy::CycleClosedForm => inapplicable("an odd cycle"),
        Strategy::CompleteCompositions if g.is_complete() => hstar_complete(n),
        Strategy::CompleteCompositions => inapplicable("a complete graph"),
    }
}

/// `L(t) = ∑_i h*_i C(t + d - i, d)`.
pub fn ehrhart_eval(h: &HStarVector, t: u64) -> BigInt {
    let d = h.dim();
    h.entries
        .iter()
        .enumerate()
        .map(|(i, hi)| hi * binomial(&(BigInt::from(t) + d - i), d))
        .sum()
}

/// Inverts `L(t) = ∑_i h*_i C(t + d - i, d)` for `t = 0..=d` given the `d + 1`
/// counts. A non-integral or negative solution is reported as an
/// inconsistency.
pub fn hstar_from_counts(counts: &[BigInt]) -> Result<HStarVector> {
    if counts.is_empty() {
        return Err(Error::Domain("need at least one count".into()));
    }
    let d = counts.len() - 1;
    let mut m = IntMatrix::zeros(d + 1, d + 1);
    for t in 0..=d {
        for i in 0..=d {
            m[(t, i)] = binomial(&BigInt::from(t + d - i), d);
        }
    }
    let rhs = RatVector::new(counts.iter().cloned().map(BigRational::from).collect());
    let h = solve_exact(&m, &rhs)?;
    let entries = h.to_integers().ok_or_else(|| {
        Error::Inconsistency(format!("counts {counts:?} give a non-integral h*: {h}"))
    })?;
    if entries.iter().any(|x| x.is_negative()) {
        return Err(Error::Inconsistency(format!(
            "counts {counts:?} give a negative h*: {h}"
        )));
    }
    Ok(HStarVector::new(entries, Strategy::DilateInterpolation))
}
