//! Named checks of every published value and structural claim, run as one
//! suite.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{bridge_division_condition, is_idp, is_symmetric, is_unimodal, verify_prime_cycle_formula};
use crate::config::Config;
use crate::ehrhart::{
    ehrhart_eval, hstar, hstar_by_dilates, hstar_complete, hstar_cycle_closed_form, hstar_generic,
    lattice_points, HStarVector,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, DEFAULT_SEED};
use crate::linalg::{binomial, IntMatrix, RatVector};
use crate::par;
use crate::simplex::{verify_equivalence_certificate, LaplacianSimplex, LatticeSimplex};

/// Families of checks selectable with a filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Cycles,
    Complete,
    Trees,
    Whiskers,
    Bridges,
    Operations,
    Random,
}

impl Group {
    pub const ALL: [Group; 7] = [
        Group::Cycles,
        Group::Complete,
        Group::Trees,
        Group::Whiskers,
        Group::Bridges,
        Group::Operations,
        Group::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Cycles => "cycles",
            Group::Complete => "complete",
            Group::Trees => "trees",
            Group::Whiskers => "whiskers",
            Group::Bridges => "bridges",
            Group::Operations => "operations",
            Group::Random => "random",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Group::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown check group '{s}'")))
    }
}

/// Deliberate defects for exercising the failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Every spanning-tree count the suite compares against is off by one.
    SkewKappa,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kappa" => Ok(Fault::SkewKappa),
            _ => Err(Error::Domain(format!("unknown fault '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegressionOptions {
    pub only: Option<Group>,
    /// Seed of the random trees and random graphs.
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for RegressionOptions {
    fn default() -> Self {
        Self {
            only: None,
            seed: DEFAULT_SEED,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub name: String,
    pub group: Group,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegressionReport {
    pub seed: u64,
    pub cases: Vec<CaseOutcome>,
    pub notes: Vec<String>,
}

impl RegressionReport {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }
}

impl fmt::Display for RegressionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{status} {}", c.name)?;
            } else {
                writeln!(f, "{status} {}: {}", c.name, c.detail)?;
            }
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        write!(
            f,
            "{} passed, {} failed (seed {})",
            self.cases.len() - self.failures(),
            self.failures(),
            self.seed
        )
    }
}

type Outcome = std::result::Result<Option<String>, String>;

struct Ctx<'a> {
    cfg: &'a Config,
    fault: Option<Fault>,
}

struct Case {
    name: String,
    group: Group,
    check: Box<dyn Fn(&Ctx) -> Outcome + Send + Sync>,
}

fn case(group: Group, name: impl Into<String>, check: impl Fn(&Ctx) -> Outcome + Send + Sync + 'static) -> Case {
    Case {
        name: name.into(),
        group,
        check: Box::new(check),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| x.into()).collect()
}

fn shown(xs: &[BigInt]) -> String {
    HStarVector::new(xs.to_vec(), crate::ehrhart::Strategy::GenericSnf).to_string()
}

fn err(e: Error) -> String {
    e.to_string()
}

impl Ctx<'_> {
    fn simplex(&self, g: &Graph) -> std::result::Result<LaplacianSimplex, String> {
        LaplacianSimplex::build(g).map_err(err)
    }

    fn kappa(&self, s: &LaplacianSimplex) -> BigInt {
        match self.fault {
            Some(Fault::SkewKappa) => s.kappa() + 1,
            None => s.kappa().clone(),
        }
    }

    /// h* by the configured strategy, checked against `n·κ`.
    fn hstar(&self, s: &LaplacianSimplex) -> std::result::Result<Vec<BigInt>, String> {
        let h = hstar(s, None, self.cfg).map_err(err)?;
        self.check_volume(s, &h.entries)?;
        Ok(h.entries)
    }

    fn check_volume(&self, s: &LaplacianSimplex, h: &[BigInt]) -> std::result::Result<(), String> {
        let expect = BigInt::from(s.graph().n()) * self.kappa(s);
        let sum: BigInt = h.iter().sum();
        ensure(sum == expect && s.normalized_volume() == expect, || {
            format!(
                "volume {} and sum of h* {sum} should both equal n*kappa = {expect}",
                s.normalized_volume()
            )
        })
    }

    fn expect_hstar(&self, g: &Graph, want: &[BigInt]) -> std::result::Result<(), String> {
        let s = self.simplex(g)?;
        let got = self.hstar(&s)?;
        ensure(got == want, || format!("h* = {}, expected {}", shown(&got), shown(want)))?;
        let generic = hstar_generic(&s, self.cfg).map_err(err)?;
        ensure(generic.entries == want, || {
            format!("generic h* = {generic}, expected {}", shown(want))
        })
    }
}

fn cycle(n: usize) -> Graph {
    Graph::cycle(n).expect("n >= 3")
}

fn complete(n: usize) -> Graph {
    Graph::complete(n).expect("n >= 1")
}

fn prime_cycle_shape(n: usize) -> Vec<BigInt> {
    (0..n)
        .map(|i| if i == (n - 1) / 2 { BigInt::from(n * n - n + 1) } else { BigInt::one() })
        .collect()
}

/// Seeded random connected graphs on 2 to `max_n` vertices.
pub fn sweep_graphs(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            Graph::random_connected(n, 0.35, &mut rng).expect("n >= 2")
        })
        .collect()
}

fn random_trees(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            Graph::random_tree(n, &mut rng).expect("n >= 2")
        })
        .collect()
}

fn cycle_cases(cases: &mut Vec<Case>) {
    let g = Group::Cycles;
    cases.push(case(g, "cycle-5-hstar", |ctx| {
        let want = ints(&[1, 1, 21, 1, 1]);
        ctx.expect_hstar(&cycle(5), &want)?;
        let closed = hstar_cycle_closed_form(5).map_err(err)?;
        ensure(closed.entries == want, || format!("closed form gives {closed}"))?;
        Ok(None)
    }));
    for n in [3, 5, 7, 11] {
        cases.push(case(g, format!("cycle-{n}-prime-shape"), move |ctx| {
            ctx.expect_hstar(&cycle(n), &prime_cycle_shape(n))?;
            ensure(verify_prime_cycle_formula(n, ctx.cfg).map_err(err)?, || {
                "shape check rejected".into()
            })?;
            Ok(None)
        }));
    }
    cases.push(case(g, "cycle-9-composite", |ctx| {
        let want = ints(&[1, 1, 1, 7, 61, 7, 1, 1, 1]);
        ctx.expect_hstar(&cycle(9), &want)?;
        let closed = hstar_cycle_closed_form(9).map_err(err)?;
        ensure(closed.entries == want, || format!("closed form gives {closed}"))?;
        ensure(verify_prime_cycle_formula(9, ctx.cfg).map_err(err)?, || "shape check rejected".into())?;
        Ok(None)
    }));
    cases.push(case(g, "cycle-15-first-nontrivial-index", |ctx| {
        let s = ctx.simplex(&cycle(15))?;
        let h = ctx.hstar(&s)?;
        let first = h.iter().position(|x| !x.is_one());
        ensure(first == Some(5), || format!("first entry above 1 at {first:?}, expected 5"))?;
        ensure(verify_prime_cycle_formula(15, ctx.cfg).map_err(err)?, || "shape check rejected".into())?;
        Ok(None)
    }));
    for n in 3..=9 {
        cases.push(case(g, format!("cycle-{n}-reflexivity"), move |ctx| {
            let s = ctx.simplex(&cycle(n))?;
            ensure(s.is_reflexive() == (n % 2 == 1), || {
                format!("reflexive = {}, expected {}", s.is_reflexive(), n % 2 == 1)
            })?;
            let want = BigInt::from(if n % 2 == 1 { 1 } else { 2 });
            let ell = s.ell_reflexive_index();
            ensure(ell.as_ref() == Some(&want), || format!("index {ell:?}, expected {want}"))?;
            Ok(None)
        }));
    }
    cases.push(case(g, "cycle-dual-vertices", |ctx| {
        let duals = |n: usize| -> std::result::Result<Vec<RatVector>, String> {
            let s = ctx.simplex(&cycle(n))?;
            Ok(s.facets().map_err(err)?.into_iter().map(|f| f.dual_vertex).collect())
        };
        let c3: BTreeSet<String> = duals(3)?.iter().map(|v| v.to_string()).collect();
        let want: BTreeSet<String> = ["(-1, 0)", "(1, -1)", "(0, 1)"].map(String::from).into();
        ensure(c3 == want, || format!("C_3 duals {c3:?}"))?;
        let v5 = RatVector::from_integers(&[-2, -1, 0, 1]);
        ensure(duals(5)?.contains(&v5), || format!("C_5 duals lack {v5}"))?;
        let v4 = RatVector::from_fractions(&[(-3, 2), (-1, 2), (1, 2)]);
        ensure(duals(4)?.contains(&v4), || format!("C_4 duals lack {v4}"))?;
        Ok(None)
    }));
    cases.push(case(g, "cycle-odd-unimodal", |ctx| {
        for n in (3..=11).step_by(2) {
            let h = ctx.hstar(&ctx.simplex(&cycle(n))?)?;
            ensure(is_unimodal(&h), || format!("C_{n}: {} not unimodal", shown(&h)))?;
        }
        Ok(None)
    }));
    for n in [5, 7] {
        cases.push(case(g, format!("cycle-{n}-not-idp"), move |ctx| {
            let idp = is_idp(ctx.simplex(&cycle(n))?.simplex(), ctx.cfg).map_err(err)?;
            ensure(!idp, || "checker found IDP".into())?;
            Ok(None)
        }));
    }
    cases.push(case(g, "cycle-3-idp-agrees-with-complete-3", |ctx| {
        let c3 = is_idp(ctx.simplex(&cycle(3))?.simplex(), ctx.cfg).map_err(err)?;
        let k3 = is_idp(ctx.simplex(&complete(3))?.simplex(), ctx.cfg).map_err(err)?;
        ensure(c3 == k3, || format!("C_3 gives {c3}, K_3 gives {k3}"))?;
        Ok(Some(format!(
            "C_3 is K_3; the checker reports IDP = {c3} for it, so the odd-cycle \
             non-IDP statement is not asserted at n = 3 (h*_1 = 7, not 1)"
        )))
    }));
    cases.push(case(g, "cycle-division-condition", |_| {
        for n in 3..=9 {
            ensure(bridge_division_condition(&cycle(n)).map_err(err)?, || format!("fails for C_{n}"))?;
        }
        Ok(None)
    }));
}

fn complete_cases(cases: &mut Vec<Case>) {
    let g = Group::Complete;
    for (n, want) in [(3, vec![1, 7, 1]), (4, vec![1, 31, 31, 1])] {
        cases.push(case(g, format!("complete-{n}-hstar"), move |ctx| {
            let want = ints(&want);
            ctx.expect_hstar(&complete(n), &want)?;
            let closed = hstar_complete(n).map_err(err)?;
            ensure(closed.entries == want, || format!("composition count gives {closed}"))?;
            Ok(None)
        }));
    }
    cases.push(case(g, "complete-ehrhart-polynomial", |ctx| {
        for n in 2..=5 {
            let h = HStarVector::new(ctx.hstar(&ctx.simplex(&complete(n))?)?, crate::ehrhart::Strategy::GenericSnf);
            for t in 0..=4u64 {
                let want = binomial(&BigInt::from(t as usize * n + n - 1), n - 1);
                let got = ehrhart_eval(&h, t);
                ensure(got == want, || format!("K_{n}, t = {t}: L = {got}, expected {want}"))?;
            }
        }
        Ok(None)
    }));
    cases.push(case(g, "complete-reflexive", |ctx| {
        for n in 2..=6 {
            ensure(ctx.simplex(&complete(n))?.is_reflexive(), || format!("K_{n} not reflexive"))?;
        }
        Ok(None)
    }));
    for n in 3..=5 {
        cases.push(case(g, format!("complete-{n}-idp"), move |ctx| {
            let idp = is_idp(ctx.simplex(&complete(n))?.simplex(), ctx.cfg).map_err(err)?;
            ensure(idp, || "checker found a non-decomposable point".into())?;
            Ok(None)
        }));
    }
    cases.push(case(g, "complete-unimodal", |ctx| {
        for n in 2..=6 {
            let h = ctx.hstar(&ctx.simplex(&complete(n))?)?;
            ensure(is_unimodal(&h), || format!("K_{n}: {} not unimodal", shown(&h)))?;
        }
        Ok(None)
    }));
    cases.push(case(g, "complete-division-condition", |_| {
        for n in 2..=7 {
            ensure(bridge_division_condition(&complete(n)).map_err(err)?, || format!("fails for K_{n}"))?;
        }
        Ok(None)
    }));
}

fn tree_cases(cases: &mut Vec<Case>, seed: u64) {
    let g = Group::Trees;
    cases.push(case(g, "trees-random-hstar", move |ctx| {
        for t in random_trees(20, 8, seed) {
            let n = t.n();
            let s = ctx.simplex(&t)?;
            let ones = vec![BigInt::one(); n];
            ctx.expect_hstar(&t, &ones)?;
            ctx.check_volume(&s, &ones)?;
            ensure(s.normalized_volume() == BigInt::from(n), || format!("tree {t:?} volume"))?;
            ensure(s.is_reflexive(), || format!("tree {t:?} not reflexive"))?;
            ensure(is_unimodal(&ones), || "constant vector not unimodal".into())?;
        }
        Ok(None)
    }));
    cases.push(case(g, "trees-idp", move |ctx| {
        for t in random_trees(5, 7, seed ^ 1) {
            ensure(is_idp(ctx.simplex(&t)?.simplex(), ctx.cfg).map_err(err)?, || format!("tree {t:?} not IDP"))?;
        }
        Ok(None)
    }));
    cases.push(case(g, "trees-equivalent-to-unit-simplex", |ctx| {
        for k in 2..=8 {
            let p = ctx.simplex(&Graph::path(k).map_err(err)?)?;
            let canon = LatticeSimplex::canonical_tree_simplex(k - 1).map_err(err)?;
            let mut lower = IntMatrix::zeros(k - 1, k - 1);
            for r in 0..k - 1 {
                for c in 0..=r {
                    lower[(r, c)] = BigInt::one();
                }
            }
            let perm: Vec<usize> = (0..k).collect();
            let ok = verify_equivalence_certificate(p.vertices(), canon.vertices(), &lower, &perm).map_err(err)?;
            ensure(ok, || format!("P_{k} certificate rejected"))?;
        }
        Ok(None)
    }));
}

fn whisker_cases(cases: &mut Vec<Case>) {
    for n in [4, 6] {
        cases.push(case(Group::Whiskers, format!("whiskered-cycle-{n}-reflexive"), move |ctx| {
            let s = ctx.simplex(&cycle(n).whisker())?;
            ensure(s.is_reflexive(), || "not reflexive".into())?;
            let h = ctx.hstar(&s)?;
            ensure(is_symmetric(&h), || format!("h* {} not symmetric", shown(&h)))?;
            Ok(None)
        }));
    }
}

fn bridge_cases(cases: &mut Vec<Case>) {
    for n in [3, 5] {
        cases.push(case(Group::Bridges, format!("bridge-cycle-{n}-complete-{n}-reflexive"), move |ctx| {
            let (a, b) = (cycle(n), complete(n));
            for (name, x) in [("cycle", &a), ("complete", &b)] {
                ensure(ctx.simplex(x)?.is_reflexive(), || format!("{name} operand not reflexive"))?;
                ensure(bridge_division_condition(x).map_err(err)?, || {
                    format!("{name} operand fails the division condition")
                })?;
            }
            let h = a.bridge(&b, 1, 1).map_err(err)?;
            let s = ctx.simplex(&h)?;
            ensure(s.is_reflexive(), || "bridge not reflexive".into())?;
            let hs = ctx.hstar(&s)?;
            ensure(is_symmetric(&hs), || format!("h* {} not symmetric", shown(&hs)))?;
            Ok(None)
        }));
    }
}

fn operation_cases(cases: &mut Vec<Case>, seed: u64) {
    let g = Group::Operations;
    cases.push(case(g, "leaf-move-wedge-to-bridge", |ctx| {
        // C_3 on {1,2,5} and K_3 on {3,4,5} share 5, with leaf 6 on 5
        let wedge = Graph::new(6, [(1, 2), (2, 5), (1, 5), (3, 4), (3, 5), (4, 5), (5, 6)]).map_err(err)?;
        let a: BTreeSet<usize> = [1, 2, 5, 6].into();
        let moved = wedge.leaf_move(&a, 5, 6).map_err(err)?;
        let bridge = cycle(3).bridge(&complete(3), 3, 3).map_err(err)?;
        let (s1, s2) = (ctx.simplex(&wedge)?, ctx.simplex(&moved)?);
        ensure(s1.normalized_volume() == s2.normalized_volume(), || "volumes differ".into())?;
        let (h1, h2) = (ctx.hstar(&s1)?, ctx.hstar(&s2)?);
        ensure(h1 == h2, || format!("h* {} before, {} after", shown(&h1), shown(&h2)))?;
        let h3 = ctx.hstar(&ctx.simplex(&bridge)?)?;
        ensure(h2 == h3, || format!("moved graph {} vs bridge {}", shown(&h2), shown(&h3)))?;
        Ok(None)
    }));
    cases.push(case(g, "attach-path-vs-tree", move |ctx| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        for base in [cycle(4), complete(3), cycle(5)] {
            for k in 1..=3 {
                let v = rng.gen_range(1..=base.n());
                let tree = Graph::random_tree(k + 1, &mut rng).map_err(err)?;
                let root = rng.gen_range(1..=k + 1);
                let p = ctx.simplex(&base.attach_path(v, k).map_err(err)?)?;
                let t = ctx.simplex(&base.attach_tree(v, &tree, root).map_err(err)?)?;
                ensure(p.normalized_volume() == t.normalized_volume(), || "volumes differ".into())?;
                let (hp, ht) = (ctx.hstar(&p)?, ctx.hstar(&t)?);
                ensure(hp == ht, || format!("path {} vs tree {}", shown(&hp), shown(&ht)))?;
            }
        }
        Ok(None)
    }));
}

fn random_cases(cases: &mut Vec<Case>, seed: u64) {
    for (i, graph) in sweep_graphs(25, 6, seed).into_iter().enumerate() {
        cases.push(case(Group::Random, format!("random-{i:02}-cross-methods"), move |ctx| {
            let s = ctx.simplex(&graph)?;
            let h = hstar_generic(&s, ctx.cfg).map_err(err)?;
            ctx.check_volume(&s, &h.entries)?;
            let by_counts = hstar_by_dilates(&s, ctx.cfg).map_err(err)?;
            ensure(by_counts.entries == h.entries, || format!("generic {h}, dilates {by_counts}"))?;
            let reflexive = s.is_reflexive();
            ensure(reflexive == s.cofactor_reflexivity_test(), || "reflexivity tests disagree".into())?;
            ensure(is_symmetric(&h) == reflexive, || format!("h* {h} vs reflexive = {reflexive}"))?;
            let points = lattice_points(&s, ctx.cfg).map_err(err)?.len();
            let h1 = h.entries.get(1).cloned().unwrap_or_default();
            ensure(h1 == BigInt::from(points - graph.n()), || {
                format!("h*_1 = {h1} but {points} lattice points")
            })?;
            Ok(None)
        }));
    }
}

/// Runs the suite. Cases may run in parallel; outcomes are sorted by name.
pub fn paper_regression(opts: &RegressionOptions, cfg: &Config) -> RegressionReport {
    let mut cases = Vec::new();
    cycle_cases(&mut cases);
    complete_cases(&mut cases);
    tree_cases(&mut cases, opts.seed);
    whisker_cases(&mut cases);
    bridge_cases(&mut cases);
    operation_cases(&mut cases, opts.seed);
    random_cases(&mut cases, opts.seed);
    cases.retain(|c| opts.only.is_none_or(|g| g == c.group));

    let ctx = Ctx {
        cfg,
        fault: opts.fault,
    };
    let results = par::map_slice(&cases, cfg.execution, |c| {
        let outcome = (c.check)(&ctx);
        (c.name.clone(), c.group, outcome)
    });
    let mut outcomes = Vec::with_capacity(results.len());
    let mut notes = Vec::new();
    for (name, group, outcome) in results {
        let (passed, detail) = match outcome {
            Ok(note) => {
                notes.extend(note.map(|n| format!("{name}: {n}")));
                (true, String::new())
            }
            Err(detail) => (false, detail),
        };
        outcomes.push(CaseOutcome { name, group, passed, detail });
    }
    outcomes.sort_by(|a, b| a.name.cmp(&b.name));
    notes.sort();
    RegressionReport {
        seed: opts.seed,
        cases: outcomes,
        notes,
    }
}
