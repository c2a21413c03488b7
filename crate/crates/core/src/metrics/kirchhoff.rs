use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{group_inverse_laplacian_with, inverse_with, symmetric_eigen_with, DenseMatrix};
use crate::one_inverse::edge_corona_degree;
use crate::tolerance::Tolerances;

use super::resistance::{Provenance, ResistanceMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KirchhoffMethod {
    /// `n tr(L#)` of the full graph.
    OracleTrace,
    /// Sum of oracle resistances over unordered pairs.
    OracleSum,
    /// Vertex corona, any G2.
    VertexCoronaGeneral,
    /// Vertex corona, regular G2 (eigenvalue-only form).
    VertexCoronaRegular,
    /// Edge corona, regular G2 of positive degree.
    EdgeCoronaRegular,
}

impl KirchhoffMethod {
    pub fn label(self) -> &'static str {
        match self {
            KirchhoffMethod::OracleTrace => "oracle-trace",
            KirchhoffMethod::OracleSum => "oracle-sum",
            KirchhoffMethod::VertexCoronaGeneral => "vertex-corona-general",
            KirchhoffMethod::VertexCoronaRegular => "vertex-corona-regular",
            KirchhoffMethod::EdgeCoronaRegular => "edge-corona-regular",
        }
    }
}

/// A Kirchhoff index: the sum of resistances over unordered vertex pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KirchhoffResult {
    pub value: f64,
    pub method: KirchhoffMethod,
}

/// Both oracle routes to `Kf(G)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleRoutes {
    pub trace: f64,
    pub pair_sum: f64,
}

/// `n tr(L#)` and the unordered pair sum of resistances.
pub fn kirchhoff_oracle_routes(g: &Graph, tol: &Tolerances) -> Result<OracleRoutes> {
    if !g.is_connected() {
        return Err(Error::Disconnected("graph".into()));
    }
    let sharp = group_inverse_laplacian_with(&g.laplacian(), tol)?;
    let trace = g.vertex_count() as f64 * sharp.trace();
    let pair_sum = ResistanceMatrix::from_one_inverse(&sharp, Provenance::Oracle)?.pair_sum();
    Ok(OracleRoutes { trace, pair_sum })
}

/// `Kf(G) = n tr(L#)`, checked against the pair sum of resistances.
pub fn kirchhoff_oracle(g: &Graph, tol: &Tolerances) -> Result<KirchhoffResult> {
    let routes = kirchhoff_oracle_routes(g, tol)?;
    if (routes.trace - routes.pair_sum).abs() > tol.kirchhoff(routes.trace) {
        return Err(Error::OracleMismatch {
            trace: routes.trace,
            pair_sum: routes.pair_sum,
        });
    }
    Ok(KirchhoffResult {
        value: routes.trace,
        method: KirchhoffMethod::OracleTrace,
    })
}

/// Quantities of G2 shared by the closed forms.
struct Component {
    n1: f64,
    n2: f64,
    m2: f64,
    /// `(m2 + n2 + 1) / n1 * Kf(G1)`
    base_term: f64,
    eigenvalues: Vec<f64>,
}

impl Component {
    fn new(g1: &Graph, g2: &Graph, tol: &Tolerances) -> Result<Self> {
        if g1.vertex_count() == 0 {
            return Err(Error::EmptyBaseGraph);
        }
        if !g1.is_connected() {
            return Err(Error::Disconnected("G1".into()));
        }
        let kf1 = kirchhoff_oracle(g1, tol)?.value;
        let n1 = g1.vertex_count() as f64;
        let n2 = g2.vertex_count() as f64;
        let m2 = g2.edge_count() as f64;
        let eigenvalues = symmetric_eigen_with(&g2.laplacian(), tol.eigen_off_diagonal)?.values;
        Ok(Component {
            n1,
            n2,
            m2,
            base_term: (m2 + n2 + 1.0) / n1 * kf1,
            eigenvalues,
        })
    }

    fn order(&self) -> f64 {
        self.n1 * (1.0 + self.n2 + self.m2)
    }

    /// `sum_i 1 / (mu_i + shift)`
    fn shifted_reciprocal_sum(&self, shift: f64) -> f64 {
        self.eigenvalues.iter().map(|mu| 1.0 / (mu + shift)).sum()
    }
}

/// `Kf(G1 ◇ G2)` for any G2:
///
/// ```text
/// n1 (1 + n2 + m2) [ n1 m2 / 2 + n1/2 (tr(Q^-1 A2) + tr(Q^-1 D2))
///                    + 2 n1 sum 1/(mu_i + 2) + (m2 + n2 + 1)/n1 Kf(G1) ]
///   - n1/2 pi^T Q^-1 pi - (5 n1 m2 + 2 n1 n2) / 2
/// ```
///
/// with `Q = L(G2) + 2I`, `pi` the degree vector and `mu_i` the Laplacian
/// eigenvalues of G2.
pub fn kf_vertex_corona(g1: &Graph, g2: &Graph, tol: &Tolerances) -> Result<KirchhoffResult> {
    let c = Component::new(g1, g2, tol)?;
    let n2 = g2.vertex_count();
    let q = &g2.laplacian() + &DenseMatrix::identity(n2).scale(2.0);
    let q_inv = inverse_with(&q, tol.pivot)?;
    let tr_qa = (&q_inv * &g2.adjacency_matrix()).trace();
    let tr_qd = (&q_inv * &g2.degree_matrix()).trace();
    let pi: Vec<f64> = g2.degrees().into_iter().map(|d| d as f64).collect();
    let pi_q_pi: f64 = q_inv.mul_vec(&pi)?.iter().zip(&pi).map(|(a, b)| a * b).sum();

    let bracket = c.n1 * c.m2 / 2.0
        + c.n1 / 2.0 * (tr_qa + tr_qd)
        + 2.0 * c.n1 * c.shifted_reciprocal_sum(2.0)
        + c.base_term;
    let value = c.order() * bracket
        - c.n1 / 2.0 * pi_q_pi
        - (5.0 * c.n1 * c.m2 + 2.0 * c.n1 * c.n2) / 2.0;
    Ok(KirchhoffResult {
        value,
        method: KirchhoffMethod::VertexCoronaGeneral,
    })
}

/// `Kf(G1 ◇ G2)` for `r2`-regular G2, from the Laplacian spectrum of G2 alone:
///
/// ```text
/// n1 (1 + n2 + m2) [ n1 m2 / 2 + n1/2 (2 r2 sum 1/(mu_i + 2) - sum mu_i/(mu_i + 2))
///                    + 2 n1 sum 1/(mu_i + 2) + (m2 + n2 + 1)/n1 Kf(G1) ]
///   - n1 n2 r2^2 / 4 - (5 n1 m2 + 2 n1 n2) / 2
/// ```
pub fn kf_vertex_corona_regular(g1: &Graph, g2: &Graph, tol: &Tolerances) -> Result<KirchhoffResult> {
    let r2 = g2.is_regular().ok_or(Error::NotRegular)? as f64;
    let c = Component::new(g1, g2, tol)?;
    let recip = c.shifted_reciprocal_sum(2.0);
    let ratio: f64 = c.eigenvalues.iter().map(|mu| mu / (mu + 2.0)).sum();

    let bracket = c.n1 * c.m2 / 2.0
        + c.n1 / 2.0 * (2.0 * r2 * recip - ratio)
        + 2.0 * c.n1 * recip
        + c.base_term;
    let value = c.order() * bracket
        - c.n1 * c.n2 * r2 * r2 / 4.0
        - (5.0 * c.n1 * c.m2 + 2.0 * c.n1 * c.n2) / 2.0;
    Ok(KirchhoffResult {
        value,
        method: KirchhoffMethod::VertexCoronaRegular,
    })
}

/// `Kf(G1 ★ G2)` for `r2`-regular G2 with `r2 >= 1`:
///
/// ```text
/// n1 (1 + n2 + m2) [ n1 m2 / 3 + n1/3 (tr(C^-1 A2) + r2 sum 1/(mu_i + r2))
///                    + 3 n1 sum 1/(mu_i + r2) + (m2 + n2 + 1)/n1 Kf(G1) ]
///   - (n1 m2 r2 + n1 n2 (r2 + 3)^2) / (3 r2)
/// ```
///
/// with `C = L(G2) + r2 I`.
pub fn kf_edge_corona_regular(g1: &Graph, g2: &Graph, tol: &Tolerances) -> Result<KirchhoffResult> {
    let r2 = edge_corona_degree(g2)? as f64;
    let c = Component::new(g1, g2, tol)?;
    let n2 = g2.vertex_count();
    let core = &g2.laplacian() + &DenseMatrix::identity(n2).scale(r2);
    let core_inv = inverse_with(&core, tol.pivot)?;
    let tr_ca = (&core_inv * &g2.adjacency_matrix()).trace();
    let recip = c.shifted_reciprocal_sum(r2);

    let bracket = c.n1 * c.m2 / 3.0
        + c.n1 / 3.0 * (tr_ca + r2 * recip)
        + 3.0 * c.n1 * recip
        + c.base_term;
    let value = c.order() * bracket
        - (c.n1 * c.m2 * r2 + c.n1 * c.n2 * (r2 + 3.0).powi(2)) / (3.0 * r2);
    Ok(KirchhoffResult {
        value,
        method: KirchhoffMethod::EdgeCoronaRegular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn oracle_small_graphs() {
        assert_abs_diff_eq!(kirchhoff_oracle(&Graph::complete(2), &tol()).unwrap().value, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(kirchhoff_oracle(&Graph::path(4), &tol()).unwrap().value, 10.0, epsilon = 1e-12);
        assert_abs_diff_eq!(kirchhoff_oracle(&Graph::cycle(4), &tol()).unwrap().value, 5.0, epsilon = 1e-12);
        assert_eq!(kirchhoff_oracle(&Graph::complete(1), &tol()).unwrap().value, 0.0);
    }

    #[test]
    fn oracle_rejects_disconnected() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(kirchhoff_oracle(&g, &tol()), Err(Error::Disconnected(_))));
    }

    #[test]
    fn vertex_corona_hand_values() {
        let k1 = Graph::complete(1);
        let k2 = Graph::complete(2);
        assert_abs_diff_eq!(kf_vertex_corona(&k1, &k2, &tol()).unwrap().value, 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(kf_vertex_corona(&k2, &k1, &tol()).unwrap().value, 10.0, epsilon = 1e-12);
        assert_abs_diff_eq!(kf_vertex_corona_regular(&k1, &k2, &tol()).unwrap().value, 5.0, epsilon = 1e-12);
        // K1 ◇ K1 = K2
        assert_abs_diff_eq!(kf_vertex_corona_regular(&k1, &k1, &tol()).unwrap().value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn edge_corona_hand_value() {
        let k1 = Graph::complete(1);
        let k2 = Graph::complete(2);
        assert_abs_diff_eq!(kf_edge_corona_regular(&k1, &k2, &tol()).unwrap().value, 9.0, epsilon = 1e-12);
    }

    #[test]
    fn regular_forms_reject_irregular_g2() {
        let k2 = Graph::complete(2);
        let p3 = Graph::path(3);
        assert_eq!(kf_vertex_corona_regular(&k2, &p3, &tol()), Err(Error::NotRegular));
        assert_eq!(kf_edge_corona_regular(&k2, &p3, &tol()), Err(Error::NotRegular));
        assert_eq!(
            kf_edge_corona_regular(&k2, &Graph::complete(1), &tol()),
            Err(Error::ZeroRegularity)
        );
    }

    #[test]
    fn disconnected_base_is_rejected() {
        let g1 = Graph::empty(2);
        assert!(matches!(
            kf_vertex_corona(&g1, &Graph::complete(2), &tol()),
            Err(Error::Disconnected(_))
        ));
    }
}
