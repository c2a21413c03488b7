//! Dense linear algebra: enough for Laplacians, their inverses and the block
//! {1}-inverse construction.

mod eigen;
mod generalized;
mod inverse;
mod matrix;

pub use eigen::{symmetric_eigen, symmetric_eigen_with, symmetric_eigenvalues, SymmetricEigen};
pub use generalized::{
    block_one_inverse, block_one_inverse_with, group_inverse_laplacian,
    group_inverse_laplacian_with, schur_complement, symmetric_pseudo_inverse, symmetrize,
};
pub use inverse::{inverse, inverse_with};
pub use matrix::{kron, DenseMatrix};
