use super::DenseMatrix;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Inverse by Gauss-Jordan elimination with partial pivoting, using the
/// default pivot tolerance.
pub fn inverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    inverse_with(a, Tolerances::default().pivot)
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
///
/// A pivot whose magnitude is at most `pivot_tol * max(1, max|a_ij|)` is
/// treated as zero and reported as [`Error::Singular`].
pub fn inverse_with(a: &DenseMatrix, pivot_tol: f64) -> Result<DenseMatrix> {
    let (n, cols) = a.shape();
    if n != cols {
        return Err(Error::NotSquare { rows: n, cols });
    }
    let threshold = pivot_tol * a.max_abs().max(1.0);
    let mut work = a.clone();
    let mut inv = DenseMatrix::identity(n);

    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|r| (r, work[(r, col)].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_abs <= threshold {
            return Err(Error::Singular {
                column: col,
                pivot: pivot_abs,
            });
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = work[(col, j)];
                work[(col, j)] = work[(pivot_row, j)];
                work[(pivot_row, j)] = tmp;
                let tmp = inv[(col, j)];
                inv[(col, j)] = inv[(pivot_row, j)];
                inv[(pivot_row, j)] = tmp;
            }
        }
        let p = work[(col, col)];
        for j in 0..n {
            work[(col, j)] /= p;
            inv[(col, j)] /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = work[(r, col)];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                work[(r, j)] -= factor * work[(col, j)];
                inv[(r, j)] -= factor * inv[(col, j)];
            }
        }
    }
    Ok(inv)
}
