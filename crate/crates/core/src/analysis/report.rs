use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{is_idp, is_symmetric, is_unimodal};
use crate::config::Config;
use crate::ehrhart::{hstar, HStarVector, Strategy};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::simplex::LaplacianSimplex;

/// Everything computed about one graph. Fields that could not be computed
/// within the configured caps are `None` and explained in `notes`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub graph: Graph,
    pub n: usize,
    #[serde(with = "crate::bigjson")]
    pub kappa: BigInt,
    #[serde(with = "crate::bigjson")]
    pub volume: BigInt,
    #[serde(with = "opt_vec")]
    pub hstar: Option<Vec<BigInt>>,
    pub strategy: Option<Strategy>,
    pub reflexive: bool,
    #[serde(with = "crate::bigjson::option")]
    pub ell: Option<BigInt>,
    pub symmetric: Option<bool>,
    pub unimodal: Option<bool>,
    pub idp: Option<bool>,
    pub notes: Vec<String>,
}

mod opt_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(serde::Serialize, Deserialize)]
    #[serde(transparent)]
    struct Wrap(#[serde(with = "crate::bigjson::vec")] Vec<BigInt>);

    pub fn serialize<S: Serializer>(x: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&Wrap(v.clone())),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

impl PropertyReport {
    pub fn hstar_vector(&self) -> Option<HStarVector> {
        Some(HStarVector::new(self.hstar.clone()?, self.strategy?))
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }
}

fn skipped(what: &str, err: &Error) -> String {
    format!("{what} skipped: {err}")
}

/// Computes the full report. Cap overruns leave fields empty; violated
/// structural identities are errors.
pub fn analyze(g: &Graph, strategy: Option<Strategy>, cfg: &Config) -> Result<PropertyReport> {
    let s = LaplacianSimplex::build(g)?;
    let mut notes = Vec::new();
    let volume = s.normalized_volume();

    let reflexive = s.is_reflexive();
    if reflexive != s.cofactor_reflexivity_test() {
        return Err(Error::Inconsistency(
            "dual-vertex and cofactor reflexivity tests disagree".into(),
        ));
    }
    let ell = s.ell_reflexive_index();

    let h = match hstar(&s, strategy, cfg) {
        Ok(h) => Some(h),
        Err(e @ Error::Infeasible { .. }) => {
            notes.push(skipped("h*", &e));
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(h) = &h {
        if h.sum() != volume {
            return Err(Error::Inconsistency(format!(
                "sum of h* {h} is not the normalized volume {volume}"
            )));
        }
        if h.entries.first() != Some(&BigInt::one()) || h.entries.iter().any(|x| x < &BigInt::one()) {
            return Err(Error::Inconsistency(format!("h* {h} has an entry below 1 or h*_0 != 1")));
        }
        if s.contains_origin_interior() && is_symmetric(h) != reflexive {
            return Err(Error::Inconsistency(format!(
                "h* {h} symmetry disagrees with reflexive = {reflexive}"
            )));
        }
    }

    let idp = match is_idp(&s, cfg) {
        Ok(b) => Some(b),
        Err(e @ Error::Infeasible { .. }) => {
            notes.push(skipped("idp", &e));
            None
        }
        Err(e) => return Err(e),
    };

    Ok(PropertyReport {
        id: None,
        graph: g.clone(),
        n: g.n(),
        kappa: s.kappa().clone(),
        volume,
        symmetric: h.as_ref().map(is_symmetric),
        unimodal: h.as_ref().map(is_unimodal),
        strategy: h.as_ref().map(|h| h.strategy),
        hstar: h.map(|h| h.entries),
        reflexive,
        ell,
        idp,
        notes,
    })
}
