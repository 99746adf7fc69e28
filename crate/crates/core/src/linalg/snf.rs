use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U · M · V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// The diagonal `d_1 | d_2 | …` (length `min(rows, cols)`).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    /// row[dst] += q · row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let delta = q * &m[(src, c)];
                m[(dst, c)] += delta;
            }
        }
    }

    /// col[dst] += q · col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let delta = q * &m[(r, src)];
                m[(r, dst)] += delta;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols() {
                let x = -std::mem::take(&mut m[(r, c)]);
                m[(r, c)] = x;
            }
        }
    }

    /// Position of the smallest nonzero |entry| in the trailing block.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.a.rows() {
            for c in t..self.a.cols() {
                let x = &self.a[(r, c)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| x.abs() < self.a[(br, bc)].abs()) {
                    best = Some((r, c));
                }
            }
        }
        best
    }

    /// Smallest nonzero entry in row t or column t besides the pivot.
    fn smallest_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let col = (t + 1..self.a.rows()).map(|r| (r, t));
        let row = (t + 1..self.a.cols()).map(|c| (t, c));
        col.chain(row)
            .filter(|&p| !self.a[p].is_zero())
            .min_by(|&p, &q| self.a[p].abs().cmp(&self.a[q].abs()))
    }
}

/// Smith normal form by elementary row/column operations with
/// smallest-magnitude pivoting. Works for any shape, including singular input.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        let Some((r, c)) = w.smallest_in_block(t) else {
            break;
        };
        w.swap_rows(t, r);
        w.swap_cols(t, c);
        loop {
            let pivot = w.a[(t, t)].clone();
            for r in t + 1..rows {
                let q = &w.a[(r, t)] / &pivot;
                if !q.is_zero() {
                    w.add_row(r, t, &-q);
                }
            }
            for c in t + 1..cols {
                let q = &w.a[(t, c)] / &pivot;
                if !q.is_zero() {
                    w.add_col(c, t, &-q);
                }
            }
            if let Some((r, c)) = w.smallest_in_cross(t) {
                // a remainder smaller than the pivot is left; promote it
                w.swap_rows(t, r);
                w.swap_cols(t, c);
                continue;
            }
            let pivot = w.a[(t, t)].clone();
            let offender = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&p| !(&w.a[p] % &pivot).is_zero());
            match offender {
                Some((r, _)) => w.add_row(t, r, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    SnfResult {
        u: w.u,
        d: w.a,
        v: w.v,
    }
}
