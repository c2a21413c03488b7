//! Generalized inverses: the group inverse of a connected Laplacian, spectral
//! pseudo-inversion, and the Schur-complement {1}-inverse of a symmetric
//! 2x2 block matrix.

use super::{inverse_with, symmetric_eigen_with, DenseMatrix};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

pub fn group_inverse_laplacian(l: &DenseMatrix) -> Result<DenseMatrix> {
    group_inverse_laplacian_with(l, &Tolerances::default())
}

/// Group inverse `L#` of a connected graph's Laplacian via the rank-one shift
/// `(L + J/n)^-1 - J/n`, where `J` is the all-ones matrix.
///
/// Fails with [`Error::Disconnected`] when the second-smallest eigenvalue is
/// below `tol.connectivity`.
pub fn group_inverse_laplacian_with(l: &DenseMatrix, tol: &Tolerances) -> Result<DenseMatrix> {
    let (n, cols) = l.shape();
    if n != cols {
        return Err(Error::NotSquare { rows: n, cols });
    }
    if n == 0 {
        return Ok(DenseMatrix::zeros(0, 0));
    }
    let eig = symmetric_eigen_with(l, tol.eigen_off_diagonal)?;
    if n > 1 && eig.values[1] < tol.connectivity {
        return Err(Error::Disconnected(format!(
            "Laplacian (algebraic connectivity {:e})",
            eig.values[1]
        )));
    }
    let j_over_n = DenseMatrix::ones(n, n).scale(1.0 / n as f64);
    let shifted = inverse_with(&(l + &j_over_n), tol.pivot)?;
    Ok(&shifted - &j_over_n)
}

/// Moore-Penrose inverse of a symmetric matrix from its eigen-decomposition.
/// Eigenvalues with `|lambda| <= threshold * max(1, |lambda|_max)` are zeroed.
pub fn symmetric_pseudo_inverse(a: &DenseMatrix, tol: &Tolerances) -> Result<DenseMatrix> {
    let eig = symmetric_eigen_with(a, tol.eigen_off_diagonal)?;
    let n = a.rows();
    let largest = eig.values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cut = tol.pseudo_inverse * largest.max(1.0);
    let mut out = DenseMatrix::zeros(n, n);
    for (k, &lambda) in eig.values.iter().enumerate() {
        if lambda.abs() <= cut {
            continue;
        }
        let inv = 1.0 / lambda;
        for i in 0..n {
            let vi = eig.vectors[(i, k)] * inv;
            if vi == 0.0 {
                continue;
            }
            for j in 0..n {
                out[(i, j)] += vi * eig.vectors[(j, k)];
            }
        }
    }
    Ok(symmetrize(&out))
}

/// `S = L3 - L2^T L1^-1 L2`.
pub fn schur_complement(l1: &DenseMatrix, l2: &DenseMatrix, l3: &DenseMatrix) -> Result<DenseMatrix> {
    let l1_inv = inverse_with(l1, Tolerances::default().pivot)?;
    schur_from_inverse(&l1_inv, l2, l3)
}

fn schur_from_inverse(
    l1_inv: &DenseMatrix,
    l2: &DenseMatrix,
    l3: &DenseMatrix,
) -> Result<DenseMatrix> {
    let prod = l2.transpose().matmul(&l1_inv.matmul(l2)?)?;
    l3.try_sub(&prod)
}

pub fn block_one_inverse(l1: &DenseMatrix, l2: &DenseMatrix, l3: &DenseMatrix) -> Result<DenseMatrix> {
    block_one_inverse_with(l1, l2, l3, &Tolerances::default())
}

/// Symmetric {1}-inverse of `M = [[L1, L2], [L2^T, L3]]` with `L1` nonsingular:
///
/// ```text
/// X = [ L1^-1 + L1^-1 L2 S# L2^T L1^-1   -L1^-1 L2 S# ]
///     [ -S# L2^T L1^-1                    S#          ]
/// ```
///
/// where `S` is the Schur complement of `L1` and `S#` its spectral
/// pseudo-inverse. The lower-left block is written as the transpose of the
/// upper-right so `X` is exactly symmetric.
pub fn block_one_inverse_with(
    l1: &DenseMatrix,
    l2: &DenseMatrix,
    l3: &DenseMatrix,
    tol: &Tolerances,
) -> Result<DenseMatrix> {
    if !l1.is_square() {
        return Err(Error::NotSquare {
            rows: l1.rows(),
            cols: l1.cols(),
        });
    }
    if !l3.is_square() {
        return Err(Error::NotSquare {
            rows: l3.rows(),
            cols: l3.cols(),
        });
    }
    if l2.shape() != (l1.rows(), l3.rows()) {
        return Err(Error::DimensionMismatch(format!(
            "off-diagonal block is {}x{}, expected {}x{}",
            l2.rows(),
            l2.cols(),
            l1.rows(),
            l3.rows()
        )));
    }
    let l1_inv = symmetrize(&inverse_with(l1, tol.pivot)?);
    let s = symmetrize(&schur_from_inverse(&l1_inv, l2, l3)?);
    let s_sharp = symmetric_pseudo_inverse(&s, tol)?;

    // W = L1^-1 L2
    let w = l1_inv.matmul(l2)?;
    let top_right = -&w.matmul(&s_sharp)?;
    let top_left = symmetrize(&(&l1_inv + &(&w * &s_sharp).matmul(&w.transpose())?));
    let bottom_left = top_right.transpose();
    DenseMatrix::from_blocks(&[vec![&top_left, &top_right], vec![&bottom_left, &s_sharp]])
}

/// `(A + A^T) / 2`, exactly symmetric.
pub fn symmetrize(a: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| 0.5 * (a[(i, j)] + a[(j, i)]))
}
