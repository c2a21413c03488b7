use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{group_inverse_laplacian_with, DenseMatrix};
use crate::tolerance::Tolerances;

/// Where a resistance matrix came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Group inverse of the full product Laplacian.
    Oracle,
    /// The assembled vertex-corona {1}-inverse.
    VertexCoronaOneInverse,
    /// The assembled edge-corona {1}-inverse.
    EdgeCoronaOneInverse,
    /// Case-by-case closed forms over the component graphs.
    ClosedForm,
    /// A generic block {1}-inverse of the product Laplacian.
    BlockOneInverse,
}

/// Symmetric matrix of effective resistances `r_ij`.
#[derive(Debug, Clone)]
pub struct ResistanceMatrix {
    pub matrix: DenseMatrix,
    pub provenance: Provenance,
}

impl ResistanceMatrix {
    /// Reads every `x_uu + x_vv - x_uv - x_vu` from a {1}-inverse `x`.
    pub fn from_one_inverse(x: &DenseMatrix, provenance: Provenance) -> Result<Self> {
        let (n, cols) = x.shape();
        if n != cols {
            return Err(Error::NotSquare { rows: n, cols });
        }
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|u| {
                (0..n)
                    .map(|v| {
                        if u == v {
                            0.0
                        } else {
                            x[(u, u)] + x[(v, v)] - x[(u, v)] - x[(v, u)]
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(ResistanceMatrix {
            matrix: DenseMatrix::from_rows(&rows),
            provenance,
        })
    }

    pub fn from_fn(n: usize, provenance: Provenance, f: impl Fn(usize, usize) -> Result<f64> + Sync) -> Result<Self> {
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|u| (0..n).map(|v| f(u, v)).collect::<Result<Vec<f64>>>())
            .collect::<Result<_>>()?;
        Ok(ResistanceMatrix {
            matrix: DenseMatrix::from_rows(&rows),
            provenance,
        })
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.matrix[(u, v)]
    }

    /// Sum over unordered pairs.
    pub fn pair_sum(&self) -> f64 {
        let n = self.size();
        (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .map(|(u, v)| self.get(u, v))
            .sum()
    }

    pub fn max_abs_diff(&self, other: &ResistanceMatrix) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }

    /// Largest violation of the metric axioms: nonzero diagonal, asymmetry,
    /// negative entries, or `r_ij > r_ik + r_kj`.
    pub fn metric_violation(&self) -> f64 {
        let n = self.size();
        let mut worst = self.matrix.asymmetry();
        for i in 0..n {
            worst = worst.max(self.get(i, i).abs());
            for j in 0..n {
                worst = worst.max(-self.get(i, j));
                for k in 0..n {
                    worst = worst.max(self.get(i, j) - self.get(i, k) - self.get(k, j));
                }
            }
        }
        worst
    }
}

/// `r_uv = x_uu + x_vv - x_uv - x_vu` for any {1}-inverse `x` of a connected
/// graph's Laplacian.
pub fn resistance_from_one_inverse(x: &DenseMatrix, u: usize, v: usize) -> Result<f64> {
    let n = x.rows();
    for idx in [u, v] {
        if idx >= n || idx >= x.cols() {
            return Err(Error::IndexOutOfRange { index: idx, size: n });
        }
    }
    if u == v {
        return Ok(0.0);
    }
    Ok(x[(u, u)] + x[(v, v)] - x[(u, v)] - x[(v, u)])
}

pub fn resistance_oracle(g: &Graph) -> Result<ResistanceMatrix> {
    resistance_oracle_with(g, &Tolerances::default())
}

/// All pairwise resistances from the group inverse of `L(g)`.
pub fn resistance_oracle_with(g: &Graph, tol: &Tolerances) -> Result<ResistanceMatrix> {
    if !g.is_connected() {
        return Err(Error::Disconnected("graph".into()));
    }
    let sharp = group_inverse_laplacian_with(&g.laplacian(), tol)?;
    ResistanceMatrix::from_one_inverse(&sharp, Provenance::Oracle)
}

/// How the double sum over neighbor pairs in the local resistance identity
/// is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairSumReading {
    /// Each unordered pair `{k, l}`, `k != l`, once.
    Unordered,
    /// Every ordered pair `(k, l)`, i.e. twice the unordered sum.
    Ordered,
}

/// Largest deviation, over `i != j`, of
///
/// ```text
/// r_ij = (1 + sum_{k ~ i} r_kj) / d_i - (sum over neighbor pairs {k, l} of i of r_kl) / d_i^2
/// ```
///
/// from the supplied resistance matrix.
pub fn neighbor_identity_check(g: &Graph, rm: &ResistanceMatrix, reading: PairSumReading) -> f64 {
    let n = g.vertex_count();
    let factor = match reading {
        PairSumReading::Unordered => 1.0,
        PairSumReading::Ordered => 2.0,
    };
    let mut worst = 0.0f64;
    for i in 0..n {
        let nbrs = g.neighbors(i);
        let d = nbrs.len() as f64;
        if nbrs.is_empty() {
            continue;
        }
        let mut pair_sum = 0.0;
        for (a, &k) in nbrs.iter().enumerate() {
            for &l in &nbrs[a + 1..] {
                pair_sum += rm.get(k, l);
            }
        }
        pair_sum *= factor;
        for j in 0..n {
            if j == i {
                continue;
            }
            let to_j: f64 = nbrs.iter().map(|&k| rm.get(k, j)).sum();
            let rhs = (1.0 + to_j) / d - pair_sum / (d * d);
            worst = worst.max((rm.get(i, j) - rhs).abs());
        }
    }
    worst
}
