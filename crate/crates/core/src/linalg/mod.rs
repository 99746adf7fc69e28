//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers ([`BigInt`]) and
//! normalized rationals ([`BigRational`]). Matrices are small (tens of rows at
//! most), so the algorithms favour clarity and exactness over asymptotics.
//!
//! Matrix indices are 0-based. Graph vertex labels elsewhere in the crate are
//! 1-based; conversion happens at the call sites that build Laplacians.

mod det;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use det::{adjugate, cofactor_matrix, determinant, minor, solve_exact};
pub use snf::{smith_normal_form, SnfResult};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone().into();
        }
        m
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows<T, R>(rows: &[R]) -> Result<Self>
    where
        T: Into<BigInt> + Clone,
        R: AsRef<[T]>,
    {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigInt]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.row_iter().map(<[BigInt]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] += a * &rhs[(k, c)];
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `v · self`.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.rows {
            return Err(Error::Shape(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(self.row(r)) {
                *o += x * m;
            }
        }
        Ok(out)
    }

    /// Rational column vector product `self · x`.
    pub fn mul_rat(&self, x: &RatVector) -> Result<RatVector> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let out = self
            .row_iter()
            .map(|row| {
                row.iter()
                    .zip(x.entries())
                    .fold(BigRational::zero(), |acc, (a, b)| {
                        acc + BigRational::from_integer(a.clone()) * b
                    })
            })
            .collect();
        Ok(RatVector(out))
    }

    /// Copy with the listed rows and columns removed (0-based indices).
    pub fn delete(&self, del_rows: &[usize], del_cols: &[usize]) -> IntMatrix {
        let keep_r: Vec<usize> = (0..self.rows).filter(|r| !del_rows.contains(r)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|c| !del_cols.contains(c)).collect();
        let mut entries = Vec::with_capacity(keep_r.len() * keep_c.len());
        for &r in &keep_r {
            for &c in &keep_c {
                entries.push(self[(r, c)].clone());
            }
        }
        IntMatrix {
            rows: keep_r.len(),
            cols: keep_c.len(),
            entries,
        }
    }

    /// Appends a column on the right.
    pub fn append_column(&self, col: &[BigInt]) -> Result<IntMatrix> {
        if col.len() != self.rows {
            return Err(Error::Shape(format!(
                "column of length {} for {} rows",
                col.len(),
                self.rows
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for (r, extra) in col.iter().enumerate() {
            entries.extend_from_slice(self.row(r));
            entries.push(extra.clone());
        }
        IntMatrix::new(self.rows, self.cols + 1, entries)
    }

    /// `[self | 𝟙]`, the homogenized vertex matrix of a simplex.
    pub fn with_ones_column(&self) -> IntMatrix {
        self.append_column(&vec![BigInt::one(); self.rows])
            .expect("column length matches row count")
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list()
            .entries(self.row_iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
            .finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Vector of exact rationals, each kept in lowest terms with positive
/// denominator (guaranteed by [`BigRational`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatVector(Vec<BigRational>);

impl RatVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Self(entries)
    }

    pub fn from_integers<T: Into<BigInt> + Clone>(xs: &[T]) -> Self {
        Self(
            xs.iter()
                .cloned()
                .map(|x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    /// Parses `(p, q)` pairs as `p/q`.
    pub fn from_fractions(xs: &[(i64, i64)]) -> Self {
        Self(
            xs.iter()
                .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                .collect(),
        )
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![BigRational::one(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigRational> {
        self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }

    /// The integer entries, if every entry is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.0.iter().map(|q| q.numer().clone()).collect())
    }

    /// Least common multiple of the denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    /// Scales by the denominator lcm, giving an integer vector `D·self`.
    pub fn clear_denominators(&self) -> (BigInt, Vec<BigInt>) {
        let d = self.denominator_lcm();
        let ints = self
            .0
            .iter()
            .map(|q| q.numer() * (&d / q.denom()))
            .collect();
        (d, ints)
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|q| q.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// True iff `|det M| = 1`.
pub fn is_unimodular(m: &IntMatrix) -> Result<bool> {
    Ok(determinant(m)?.abs().is_one())
}

/// True iff the gcd of the entries is 1. The zero vector is rejected.
pub fn is_primitive(v: &[BigInt]) -> Result<bool> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::Domain("the zero vector has no primitivity".into()));
    }
    Ok(g.is_one())
}

/// Nonnegative gcd of all entries (0 for an empty or all-zero slice).
pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Binomial coefficient C(n, k) for `n ≥ 0`; zero when `k < 0` or `k > n`.
pub fn binomial(n: &BigInt, k: usize) -> BigInt {
    if n.is_negative() || BigInt::from(k) > *n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn shape_is_checked() {
        assert!(IntMatrix::new(2, 2, ints(&[1, 2, 3])).is_err());
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(&[[1, 2], [3, 4]]).unwrap();
        let b = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), IntMatrix::from_rows(&[[2, 1], [4, 3]]).unwrap());
        assert_eq!(a.transpose(), IntMatrix::from_rows(&[[1, 3], [2, 4]]).unwrap());
        assert!(a.mul(&IntMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn delete_rows_and_columns() {
        let a = IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]).unwrap();
        assert_eq!(a.delete(&[1], &[0]), IntMatrix::from_rows(&[[2, 3], [8, 9]]).unwrap());
        assert_eq!(a.delete(&[0, 1, 2], &[]).rows(), 0);
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&ints(&[2, 1, 1])).unwrap());
        assert!(!is_primitive(&ints(&[2, 4, 6])).unwrap());
        assert!(is_primitive(&ints(&[0, 0, 0])).is_err());
        assert!(is_primitive(&ints(&[-3, 0])).is_ok_and(|p| !p));
    }

    #[test]
    fn unimodularity() {
        let lower = IntMatrix::from_rows(&[[1, 0, 0], [1, 1, 0], [1, 1, 1]]).unwrap();
        assert!(is_unimodular(&lower).unwrap());
        assert!(!is_unimodular(&IntMatrix::diagonal(&[2, 1])).unwrap());
        assert!(is_unimodular(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn rational_vectors_stay_normalized() {
        let v = RatVector::from_fractions(&[(2, -4), (6, 3), (0, 5)]);
        assert_eq!(v.to_string(), "(-1/2, 2, 0)");
        assert!(!v.is_integral());
        assert_eq!(v.denominator_lcm(), BigInt::from(2));
        assert_eq!(v.clear_denominators().1, ints(&[-1, 4, 0]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&BigInt::from(8), 2), BigInt::from(28));
        assert_eq!(binomial(&BigInt::from(3), 5), BigInt::zero());
        assert_eq!(binomial(&BigInt::from(-1), 0), BigInt::zero());
        assert_eq!(binomial(&BigInt::from(0), 0), BigInt::one());
    }
}
