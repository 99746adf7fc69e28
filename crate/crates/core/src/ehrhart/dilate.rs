//! Counting lattice points of `tS` by scanning its bounding box.
//!
//! A box point `x` lies in `tS` iff `λ = (x, t) · M⁻¹ >= 0` for
//! `M = [V | 𝟙]`. The scan works with `w = (x, t) · adj(M) · sign(det M)`,
//! which is `|det M| · λ`, and fixes coordinates one at a time, cutting a
//! branch as soon as some entry of `w` cannot recover to `>= 0` over the
//! remaining box.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::adjugate;
use crate::par;
use crate::simplex::LatticeSimplex;

struct Scan {
    lo: Vec<i128>,
    hi: Vec<i128>,
    /// `weights[j]` is row `j` of `sign · adj(M)`.
    weights: Vec<Vec<i128>>,
    /// `slack[j][i]`: the largest contribution coordinates `j..` can add to `w_i`.
    slack: Vec<Vec<i128>>,
    base: Vec<i128>,
}

const MAGNITUDE_LIMIT: i128 = 1 << 100;

fn small(x: &BigInt) -> Result<i128> {
    x.to_i128()
        .filter(|v| v.abs() < MAGNITUDE_LIMIT)
        .ok_or_else(|| Error::Domain("entries too large for the dilate scan".into()))
}

impl Scan {
    fn new(s: &LatticeSimplex, t: u64, cap: u64) -> Result<Self> {
        let d = s.dim();
        let t = t as i128;
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        let mut size = BigInt::one();
        for j in 0..d {
            let col: Vec<i128> = s.vertices().column(j).iter().map(small).collect::<Result<_>>()?;
            let l = t * col.iter().min().expect("simplex has vertices");
            let h = t * col.iter().max().expect("simplex has vertices");
            size *= BigInt::from(h - l + 1);
            lo.push(l);
            hi.push(h);
        }
        if size > BigInt::from(cap) {
            return Err(Error::Infeasible {
                what: "dilate bounding box",
                required: size,
                cap,
            });
        }
        let adj = adjugate(s.homogenized())?;
        let sign: i128 = if s.signed_det().is_negative() { -1 } else { 1 };
        let weights: Vec<Vec<i128>> = adj
            .row_iter()
            .map(|r| r.iter().map(|x| small(x).map(|v| v * sign)).collect())
            .collect::<Result<_>>()?;
        let n = d + 1;
        let mut slack = vec![vec![0i128; n]; d + 1];
        for j in (0..d).rev() {
            for i in 0..n {
                let w = weights[j][i];
                slack[j][i] = slack[j + 1][i] + (w * lo[j]).max(w * hi[j]);
            }
        }
        let bound: i128 = (0..n)
            .map(|i| slack[0][i].abs() + (t * weights[d][i]).abs())
            .max()
            .unwrap_or(0);
        if bound >= MAGNITUDE_LIMIT {
            return Err(Error::Domain("dilate scan would overflow".into()));
        }
        let base = weights[d].iter().map(|w| t * w).collect();
        Ok(Self {
            lo,
            hi,
            weights,
            slack,
            base,
        })
    }

    fn viable(&self, w: &[i128], depth: usize) -> bool {
        w.iter().zip(&self.slack[depth]).all(|(a, s)| a + s >= 0)
    }

    fn walk(&self, depth: usize, w: &[i128], x: &mut Vec<i128>, found: &mut Found) {
        if depth == self.lo.len() {
            found.count += 1;
            if let Some(points) = &mut found.points {
                points.push(x.clone());
            }
            return;
        }
        for v in self.lo[depth]..=self.hi[depth] {
            let next: Vec<i128> = w
                .iter()
                .zip(&self.weights[depth])
                .map(|(a, c)| a + v * c)
                .collect();
            if self.viable(&next, depth + 1) {
                x.push(v);
                self.walk(depth + 1, &next, x, found);
                x.pop();
            }
        }
    }

    fn run(&self, collect: bool, cfg: &Config) -> Found {
        if self.lo.is_empty() {
            return Found { count: 1, points: collect.then(|| vec![vec![]]) };
        }
        let width = (self.hi[0] - self.lo[0] + 1) as usize;
        let parts = par::map_range(width, cfg.execution, |k| {
            let v = self.lo[0] + k as i128;
            let w: Vec<i128> = self
                .base
                .iter()
                .zip(&self.weights[0])
                .map(|(a, c)| a + v * c)
                .collect();
            let mut found = Found { count: 0, points: collect.then(Vec::new) };
            if self.viable(&w, 1) {
                self.walk(1, &w, &mut vec![v], &mut found);
            }
            found
        });
        parts.into_iter().fold(
            Found { count: 0, points: collect.then(Vec::new) },
            |mut acc, part| {
                acc.count += part.count;
                if let (Some(a), Some(b)) = (&mut acc.points, part.points) {
                    a.extend(b);
                }
                acc
            },
        )
    }
}

struct Found {
    count: u64,
    points: Option<Vec<Vec<i128>>>,
}

/// `|tS ∩ ℤ^d|` by an exact scan. Fails if the bounding box of `tS` holds
/// more than `cfg.box_cap` integer points.
pub fn count_dilate_points(s: &LatticeSimplex, t: u64, cfg: &Config) -> Result<BigInt> {
    if t == 0 {
        return Ok(BigInt::one());
    }
    Ok(Scan::new(s, t, cfg.box_cap)?.run(false, cfg).count.into())
}

/// All lattice points of `S`, in lexicographic order.
pub fn lattice_points(s: &LatticeSimplex, cfg: &Config) -> Result<Vec<Vec<BigInt>>> {
    let found = Scan::new(s, 1, cfg.box_cap)?.run(true, cfg);
    Ok(found
        .points
        .unwrap_or_default()
        .into_iter()
        .map(|p| p.into_iter().map(BigInt::from).collect())
        .collect())
}
