use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntMatrix, RatVector};
use crate::error::{Error, Result};

/// Fraction-free (Bareiss) forward elimination in place over the first
/// `pivot_cols` columns. Returns the sign of the row permutation applied, or
/// `None` if a pivot column is all zero.
fn bareiss(a: &mut IntMatrix, pivot_cols: usize) -> Option<i8> {
    let n = pivot_cols.min(a.rows());
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let swap = (k + 1..a.rows()).find(|&r| !a[(r, k)].is_zero())?;
            a.swap_rows(k, swap);
            sign = -sign;
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..a.rows() {
            let factor = a[(i, k)].clone();
            for j in k + 1..a.cols() {
                let v = (&a[(i, j)] * &pivot - &factor * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = pivot;
    }
    Some(sign)
}

/// Exact determinant by Bareiss elimination. Intermediate entries are minors
/// of the input, so no rational arithmetic is needed.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant of non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    match bareiss(&mut a, n) {
        Some(sign) => {
            let d = a[(n - 1, n - 1)].clone();
            Ok(if sign < 0 { -d } else { d })
        }
        None => Ok(BigInt::zero()),
    }
}

/// Determinant of `m` with the given rows and columns deleted (0-based).
pub fn minor(m: &IntMatrix, delete_rows: &[usize], delete_cols: &[usize]) -> Result<BigInt> {
    if let Some(&r) = delete_rows.iter().find(|&&r| r >= m.rows()) {
        return Err(Error::Shape(format!("row {r} out of range")));
    }
    if let Some(&c) = delete_cols.iter().find(|&&c| c >= m.cols()) {
        return Err(Error::Shape(format!("column {c} out of range")));
    }
    let sub = m.delete(delete_rows, delete_cols);
    if !sub.is_square() {
        return Err(Error::Shape(format!(
            "minor leaves a non-square {}x{} matrix",
            sub.rows(),
            sub.cols()
        )));
    }
    determinant(&sub)
}

/// `C[i][j] = (-1)^{i+j} det M(i | j)`.
pub fn cofactor_matrix(m: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::Shape("cofactors of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut c = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let d = minor(m, &[i], &[j])?;
            c[(i, j)] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    Ok(c)
}

/// Classical adjoint, so that `M · adj(M) = det(M) · I`.
pub fn adjugate(m: &IntMatrix) -> Result<IntMatrix> {
    Ok(cofactor_matrix(m)?.transpose())
}

/// Solves `M x = b` exactly for square nonsingular `M`.
///
/// The right-hand side is scaled to integers, the augmented system is reduced
/// fraction-free, and back-substitution runs over the rationals.
pub fn solve_exact(m: &IntMatrix, b: &RatVector) -> Result<RatVector> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "solve needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if b.len() != n {
        return Err(Error::Shape(format!(
            "right-hand side has length {}, expected {n}",
            b.len()
        )));
    }
    let (scale, rhs) = b.clear_denominators();
    let mut aug = m.append_column(&rhs)?;
    if bareiss(&mut aug, n).is_none() || (n > 0 && aug[(n - 1, n - 1)].is_zero()) {
        return Err(Error::Singular);
    }
    let mut x = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        let mut acc = BigRational::from_integer(aug[(k, n)].clone());
        for j in k + 1..n {
            acc -= BigRational::from_integer(aug[(k, j)].clone()) * &x[j];
        }
        x[k] = acc / BigRational::from_integer(aug[(k, k)].clone());
    }
    let scale = BigRational::from_integer(scale);
    Ok(RatVector::new(x.into_iter().map(|v| v / &scale).collect()))
}
