use serde::Serialize;

/// Every numeric threshold used by the crate, in one place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Per-entry agreement of resistance values and identities.
    #[serde(serialize_with = "crate::report::serialize_f64")]
    pub entry: f64,
    /// Per-entry residual of matrix identities such as `L N L = L`.
    /// Kirchhoff comparisons use `residual * (1 + |Kf|)`.
    #[serde(serialize_with = "crate::report::serialize_f64")]
    pub residual: f64,
    /// Jacobi stops once the off-diagonal Frobenius norm falls below
    /// `eigen_off_diagonal * max(1, ||A||_F)`.
    #[serde(serialize_with = "crate::report::serialize_f64")]
    pub eigen_off_diagonal: f64,
    /// Relative pivot threshold for Gauss-Jordan inversion.
    #[serde(serialize_with = "crate::report::serialize_f64")]
    pub pivot: f64,
    /// Eigenvalues below `pseudo_inverse * max(1, |lambda_max|)` are treated as zero.
    #[serde(serialize_with = "crate::report::serialize_f64")]
    pub pseudo_inverse: f64,
    /// A Laplacian whose second-smallest eigenvalue is below this is disconnected.
    #[serde(serialize_with = "crate::report::serialize_f64")]
    pub connectivity: f64,
    /// `L# 1 = 0` must hold to this per entry.
    #[serde(serialize_with = "crate::report::serialize_f64")]
    pub null_vector: f64,
    /// Slack for the triangle inequality and nonnegativity of resistances.
    #[serde(serialize_with = "crate::report::serialize_f64")]
    pub metric: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            entry: 1e-9,
            residual: 1e-8,
            eigen_off_diagonal: 1e-12,
            pivot: 1e-12,
            pseudo_inverse: 1e-9,
            connectivity: 1e-9,
            null_vector: 1e-10,
            metric: 1e-10,
        }
    }
}

impl Tolerances {
    /// Tolerance for comparing two Kirchhoff index values.
    pub fn kirchhoff(&self, value: f64) -> f64 {
        self.residual * (1.0 + value.abs())
    }
}
