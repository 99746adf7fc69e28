//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact.

use std::collections::BTreeSet;
use std::process::ExitCode;

use lapsim_core::analysis::{is_idp, is_symmetric, is_unimodal, sweep_graphs};
use lapsim_core::ehrhart::{
    count_dilate_points, ehrhart_eval, hstar, hstar_by_dilates, hstar_complete,
    hstar_cycle_closed_form, hstar_generic, lattice_points, HStarVector, Strategy,
};
use lapsim_core::graph::Graph;
use lapsim_core::linalg::RatVector;
use lapsim_core::simplex::LaplacianSimplex;
use lapsim_core::Config;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

const SEED: u64 = 20_240_917;

fn ints(xs: &[u64]) -> Vec<BigInt> {
    xs.iter().map(|&x| x.into()).collect()
}

fn simplex(g: &Graph) -> Result<LaplacianSimplex, String> {
    LaplacianSimplex::build(g).map_err(|e| e.to_string())
}

fn generic(g: &Graph) -> Result<Vec<BigInt>, String> {
    let s = simplex(g)?;
    hstar_generic(&s, &Config::default())
        .map(|h| h.entries)
        .map_err(|e| e.to_string())
}

fn same(what: &str, got: &[BigInt], want: &[BigInt]) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn holds(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn cycle(n: usize) -> Graph {
    Graph::cycle(n).unwrap()
}

fn complete(n: usize) -> Graph {
    Graph::complete(n).unwrap()
}

fn c1_cycle_five() -> Check {
    let want = ints(&[1, 1, 21, 1, 1]);
    same("generic", &generic(&cycle(5))?, &want)?;
    same("closed form", &hstar_cycle_closed_form(5).unwrap().entries, &want)
}

fn c2_prime_cycles() -> Check {
    for n in [3usize, 5, 7, 11] {
        let want: Vec<BigInt> = (0..n)
            .map(|i| BigInt::from(if i == (n - 1) / 2 { n * n - n + 1 } else { 1 }))
            .collect();
        same(&format!("C_{n} generic"), &generic(&cycle(n))?, &want)?;
        same(&format!("C_{n} closed form"), &hstar_cycle_closed_form(n).unwrap().entries, &want)?;
    }
    Ok(())
}

fn c3_cycle_nine() -> Check {
    let want = ints(&[1, 1, 1, 7, 61, 7, 1, 1, 1]);
    let oracle = generic(&cycle(9))?;
    same("generic", &oracle, &want)?;
    let closed = hstar_cycle_closed_form(9).unwrap().entries;
    same("closed form", &closed, &oracle)?;
    let first = closed.iter().position(|x| *x != BigInt::from(1));
    let p = (2..=9usize).find(|p| 9 % p == 0).unwrap();
    let m = (9 - 9 / p) / 2;
    holds(first == Some(m), || format!("first entry above 1 at {first:?}, expected {m}"))?;
    let phi9 = (1..=9u64).filter(|k| num_integer::gcd(*k, 9) == 1).count() as u64;
    holds(closed[4] == BigInt::from(61) && closed[4] >= BigInt::from(9 * phi9 + 1) && 9 * phi9 + 1 == 55, || {
        format!("middle entry {} vs bound {}", closed[4], 9 * phi9 + 1)
    })
}

fn c4_trees() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cfg = Config::default();
    for _ in 0..20 {
        let n = rng.gen_range(2..=8);
        let t = Graph::random_tree(n, &mut rng).unwrap();
        let s = simplex(&t)?;
        let ones = vec![BigInt::from(1); n];
        same(&format!("tree {t:?} generic"), &generic(&t)?, &ones)?;
        same(&format!("tree {t:?} default"), &hstar(&s, None, &cfg).unwrap().entries, &ones)?;
        holds(s.normalized_volume() == BigInt::from(n), || format!("tree {t:?} volume"))?;
        holds(s.is_reflexive(), || format!("tree {t:?} not reflexive"))?;
    }
    Ok(())
}

/// `C(a, b)` by direct multiplication.
fn choose(a: u64, b: u64) -> BigInt {
    (0..b).fold(BigInt::from(1), |acc, i| acc * (a - i) / (i + 1))
}

fn c5_complete() -> Check {
    for (n, want) in [(3, ints(&[1, 7, 1])), (4, ints(&[1, 31, 31, 1]))] {
        let oracle = generic(&complete(n))?;
        same(&format!("K_{n} generic"), &oracle, &want)?;
        same(&format!("K_{n} compositions"), &hstar_complete(n).unwrap().entries, &oracle)?;
    }
    for n in 2..=5u64 {
        let h = hstar_complete(n as usize).unwrap();
        for t in 0..=4u64 {
            let want = choose(t * n + n - 1, n - 1);
            let got = ehrhart_eval(&h, t);
            holds(got == want, || format!("K_{n}, t = {t}: L = {got}, expected {want}"))?;
        }
    }
    // the polynomial also matches direct lattice-point counts
    let s = simplex(&complete(3))?;
    let direct = count_dilate_points(&s, 2, &Config::default()).unwrap();
    holds(direct == BigInt::from(28), || format!("K_3, t = 2 counted {direct}"))
}

fn c6_reflexivity() -> Check {
    for n in 3..=9 {
        let s = simplex(&cycle(n))?;
        holds(s.is_reflexive() == (n % 2 == 1), || format!("C_{n} reflexive = {}", s.is_reflexive()))?;
    }
    for k in 2..=4 {
        let ell = simplex(&cycle(2 * k))?.ell_reflexive_index();
        holds(ell == Some(BigInt::from(2)), || format!("C_{} index {ell:?}", 2 * k))?;
    }
    for n in 2..=6 {
        holds(simplex(&complete(n))?.is_reflexive(), || format!("K_{n} not reflexive"))?;
    }
    for n in [4, 6] {
        holds(simplex(&cycle(n).whisker())?.is_reflexive(), || format!("W(C_{n}) not reflexive"))?;
    }
    for n in [3, 5] {
        let b = cycle(n).bridge(&complete(n), 1, 1).unwrap();
        holds(simplex(&b)?.is_reflexive(), || format!("bridge(C_{n}, K_{n}) not reflexive"))?;
    }
    Ok(())
}

fn duals(n: usize) -> Result<Vec<RatVector>, String> {
    Ok(simplex(&cycle(n))?
        .facets()
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|f| f.dual_vertex)
        .collect())
}

fn c7_dual_vertices() -> Check {
    let c3: BTreeSet<String> = duals(3)?.iter().map(ToString::to_string).collect();
    let want: BTreeSet<String> = ["(-1, 0)", "(1, -1)", "(0, 1)"].map(String::from).into();
    holds(c3 == want, || format!("C_3 duals {c3:?}"))?;
    let v5 = RatVector::from_integers(&[-2, -1, 0, 1]);
    holds(duals(5)?.contains(&v5), || format!("C_5 duals lack {v5}"))?;
    let v4 = RatVector::from_fractions(&[(-3, 2), (-1, 2), (1, 2)]);
    holds(duals(4)?.contains(&v4), || format!("C_4 duals lack {v4}"))
}

fn c8_idp() -> Check {
    let cfg = Config::default();
    for n in 3..=5 {
        let idp = is_idp(simplex(&complete(n))?.simplex(), &cfg).map_err(|e| e.to_string())?;
        holds(idp, || format!("K_{n} not IDP"))?;
    }
    for n in [5, 7] {
        let idp = is_idp(simplex(&cycle(n))?.simplex(), &cfg).map_err(|e| e.to_string())?;
        holds(!idp, || format!("C_{n} IDP"))?;
    }
    Ok(())
}

fn c9_cross_methods() -> Check {
    let cfg = Config::default();
    let graphs = sweep_graphs(25, 6, SEED);
    holds(graphs.iter().filter(|g| g.n() == 6).count() >= 3, || "sweep lacks n = 6 graphs".into())?;
    for g in graphs {
        let s = simplex(&g)?;
        let n = BigInt::from(g.n());
        let h = hstar_generic(&s, &cfg).map_err(|e| e.to_string())?;
        holds(s.normalized_volume() == &n * s.kappa() && h.sum() == &n * s.kappa(), || {
            format!("{g:?}: volume {} sum {} kappa {}", s.normalized_volume(), h.sum(), s.kappa())
        })?;
        let by_counts = hstar_by_dilates(&s, &cfg).map_err(|e| e.to_string())?;
        same(&format!("{g:?} dilates"), &by_counts.entries, &h.entries)?;
        let reflexive = s.is_reflexive();
        holds(reflexive == s.cofactor_reflexivity_test(), || format!("{g:?}: reflexivity tests disagree"))?;
        holds(is_symmetric(&h) == reflexive, || format!("{g:?}: symmetry vs reflexive"))?;
        let points = lattice_points(&s, &cfg).map_err(|e| e.to_string())?.len();
        holds(h.entries[1] == BigInt::from(points - g.n()), || {
            format!("{g:?}: h*_1 = {} with {points} lattice points", h.entries[1])
        })?;
    }
    Ok(())
}

fn c10_unimodality() -> Check {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xa);
    let mut graphs: Vec<Graph> = (2..=8).map(|n| Graph::random_tree(n, &mut rng).unwrap()).collect();
    graphs.extend((2..=8).map(|n| Graph::path(n).unwrap()));
    graphs.extend((2..=8).map(|n| Graph::star(n).unwrap()));
    graphs.extend((3..=11).step_by(2).map(cycle));
    graphs.extend((2..=6).map(complete));
    for g in graphs {
        let s = simplex(&g)?;
        let h = hstar(&s, Some(Strategy::GenericSnf), &cfg).map_err(|e| e.to_string())?;
        holds(is_unimodal(&h), || format!("{g:?}: {h} not unimodal"))?;
    }
    Ok(())
}

fn hstar_of(g: &Graph) -> Result<(BigInt, HStarVector), String> {
    let s = simplex(g)?;
    let h = hstar_generic(&s, &Config::default()).map_err(|e| e.to_string())?;
    Ok((s.normalized_volume(), h))
}

fn c11_equivalence_operations() -> Check {
    // C_3 on {1,2,5} and K_3 on {3,4,5} glued at 5, with leaf 6 on 5
    let wedge = Graph::new(6, [(1, 2), (2, 5), (1, 5), (3, 4), (3, 5), (4, 5), (5, 6)]).unwrap();
    let moved = wedge.leaf_move(&[1, 2, 5, 6].into(), 5, 6).map_err(|e| e.to_string())?;
    let (v1, h1) = hstar_of(&wedge)?;
    let (v2, h2) = hstar_of(&moved)?;
    holds(v1 == v2 && h1.entries == h2.entries, || format!("leaf move: {v1} {h1} vs {v2} {h2}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xb);
    for base in [cycle(4), complete(3), cycle(5), complete(4)] {
        for k in 1..=3 {
            let v = rng.gen_range(1..=base.n());
            let tree = Graph::random_tree(k + 1, &mut rng).unwrap();
            let root = rng.gen_range(1..=k + 1);
            let (vp, hp) = hstar_of(&base.attach_path(v, k).unwrap())?;
            let (vt, ht) = hstar_of(&base.attach_tree(v, &tree, root).unwrap())?;
            holds(vp == vt && hp.entries == ht.entries, || {
                format!("attach at {v}, k = {k}: path {vp} {hp} vs tree {vt} {ht}")
            })?;
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("h* of the 5-cycle by enumeration and closed form", c1_cycle_five),
        ("prime cycles 3, 5, 7, 11 have the predicted shape", c2_prime_cycles),
        ("9-cycle h*, first nontrivial index and middle bound", c3_cycle_nine),
        ("20 random trees: all-ones h*, volume n, reflexive", c4_trees),
        ("complete graphs: h* and Ehrhart polynomial", c5_complete),
        ("reflexivity table", c6_reflexivity),
        ("dual vertex spot checks", c7_dual_vertices),
        ("IDP of complete graphs and odd cycles", c8_idp),
        ("cross-method consistency on 25 random graphs", c9_cross_methods),
        ("unimodality of trees, odd cycles, complete graphs", c10_unimodality),
        ("h* invariance under leaf moves and tree attachment", c11_equivalence_operations),
    ];
    let mut failed = 0;
    for (i, (what, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2}: PASS  {what}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {what}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
