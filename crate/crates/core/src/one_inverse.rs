//! Closed-form symmetric {1}-inverse of the corona product Laplacians.
//!
//! With `R2` the incidence matrix of G2, `H = 1_{m2} ⊗ I_{n1}`,
//! `K = 1_{n2} ⊗ I_{n1}` and `S# = L(G1)#`, both products share the shape
//!
//! ```text
//!     [ T + H S# H^T               (R2^T M^-1) ⊗ I + H S# K^T   H S# ]
//! N = [ (M^-1 R2) ⊗ I + K S# H^T   c M^-1 ⊗ I + K S# K^T         K S# ]
//!     [ S# H^T                     S# K^T                        S#   ]
//!
//! T = (1/c) (I_{m2} + R2^T M^-1 R2) ⊗ I_{n1}
//! ```
//!
//! with `M = L(G2) + 2I, c = 2` for the vertex corona and
//! `M = L(G2) + r2 I, c = 3` for the edge corona over an `r2`-regular G2.
//! Only `M` (`n2 x n2`) and `L(G1)` (`n1 x n1`) are ever inverted.

use crate::corona::{CoronaKind, CoronaLayout};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{group_inverse_laplacian_with, inverse_with, symmetrize, DenseMatrix};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone)]
pub struct OneInverse {
    pub kind: CoronaKind,
    /// The full `n1 (1 + n2 + m2)` square {1}-inverse, in layout order.
    pub matrix: DenseMatrix,
    /// `T1` or `T2`, `n1 m2` square.
    pub t_block: DenseMatrix,
    /// `Q = L(G2) + 2I` (vertex) or `C = L(G2) + r2 I` (edge).
    pub core: DenseMatrix,
    /// `Q^-1` or `C^-1`.
    pub core_inverse: DenseMatrix,
    /// 2 for the vertex corona, 3 for the edge corona.
    pub core_scale: f64,
    /// `S# = L(G1)#`.
    pub base_group_inverse: DenseMatrix,
    /// `H = 1_{m2} ⊗ I_{n1}`.
    pub h: DenseMatrix,
    /// `K = 1_{n2} ⊗ I_{n1}`.
    pub k: DenseMatrix,
    /// Incidence matrix `R2` of G2.
    pub incidence: DenseMatrix,
}

pub fn one_inverse_vertex_corona(g1: &Graph, g2: &Graph) -> Result<OneInverse> {
    one_inverse_vertex_corona_with(g1, g2, &Tolerances::default())
}

pub fn one_inverse_vertex_corona_with(g1: &Graph, g2: &Graph, tol: &Tolerances) -> Result<OneInverse> {
    check_base(g1)?;
    let n2 = g2.vertex_count();
    let core = &g2.laplacian() + &DenseMatrix::identity(n2).scale(2.0);
    assemble(CoronaKind::Vertex, g1, g2, core, 2.0, tol)
}

pub fn one_inverse_edge_corona(g1: &Graph, g2: &Graph) -> Result<OneInverse> {
    one_inverse_edge_corona_with(g1, g2, &Tolerances::default())
}

pub fn one_inverse_edge_corona_with(g1: &Graph, g2: &Graph, tol: &Tolerances) -> Result<OneInverse> {
    check_base(g1)?;
    let r2 = edge_corona_degree(g2)?;
    let n2 = g2.vertex_count();
    let core = &g2.laplacian() + &DenseMatrix::identity(n2).scale(r2 as f64);
    assemble(CoronaKind::Edge, g1, g2, core, 3.0, tol)
}

pub fn one_inverse(layout: &CoronaLayout, tol: &Tolerances) -> Result<OneInverse> {
    match layout.kind {
        CoronaKind::Vertex => one_inverse_vertex_corona_with(&layout.g1, &layout.g2, tol),
        CoronaKind::Edge => one_inverse_edge_corona_with(&layout.g1, &layout.g2, tol),
    }
}

/// Degree `r2 >= 1` of a regular G2, as the edge-corona formulas require.
pub fn edge_corona_degree(g2: &Graph) -> Result<usize> {
    match g2.is_regular() {
        None => Err(Error::NotRegular),
        Some(0) => Err(Error::ZeroRegularity),
        Some(r) => Ok(r),
    }
}

fn check_base(g1: &Graph) -> Result<()> {
    if g1.vertex_count() == 0 {
        return Err(Error::EmptyBaseGraph);
    }
    if !g1.is_connected() {
        return Err(Error::Disconnected("G1".into()));
    }
    Ok(())
}

fn assemble(
    kind: CoronaKind,
    g1: &Graph,
    g2: &Graph,
    core: DenseMatrix,
    c: f64,
    tol: &Tolerances,
) -> Result<OneInverse> {
    let n1 = g1.vertex_count();
    let (n2, m2) = (g2.vertex_count(), g2.edge_count());
    let id1 = DenseMatrix::identity(n1);

    let core_inverse = symmetrize(&inverse_with(&core, tol.pivot)?);
    let s = symmetrize(&group_inverse_laplacian_with(&g1.laplacian(), tol)?);
    let r2 = g2.incidence_matrix();
    let r2t = r2.transpose();
    let h = DenseMatrix::ones_column(m2).kron(&id1);
    let k = DenseMatrix::ones_column(n2).kron(&id1);

    let rt_minv = &r2t * &core_inverse;
    let t_small = symmetrize(&(&DenseMatrix::identity(m2) + &(&rt_minv * &r2)));
    let t_block = t_small.scale(1.0 / c).kron(&id1);

    let hs = &h * &s;
    let ks = &k * &s;
    let top_left = symmetrize(&(&t_block + &(&hs * &h.transpose())));
    let top_mid = &rt_minv.kron(&id1) + &(&hs * &k.transpose());
    let mid_mid = symmetrize(&(&core_inverse.scale(c).kron(&id1) + &(&ks * &k.transpose())));

    // Lower blocks are transposes of the upper ones: N is symmetric by construction.
    let matrix = DenseMatrix::from_blocks(&[
        vec![&top_left, &top_mid, &hs],
        vec![&top_mid.transpose(), &mid_mid, &ks],
        vec![&hs.transpose(), &ks.transpose(), &s],
    ])?;

    Ok(OneInverse {
        kind,
        matrix,
        t_block,
        core,
        core_inverse,
        core_scale: c,
        base_group_inverse: s,
        h,
        k,
        incidence: r2,
    })
}

impl OneInverse {
    /// Residual of the identities that collapse `-L1^-1 L2 S#` to `[H; K] S#`.
    ///
    /// Vertex corona: `R2^T Q^-1 1 = 1_{m2}` and `2 Q^-1 1 = 1_{n2}`.
    /// Edge corona: `T2 H = H` and `(C^-1 R2 ⊗ I) H = K`.
    pub fn lift_identity_residual(&self) -> f64 {
        let n1 = self.base_group_inverse.rows();
        let (n2, m2) = self.incidence.shape();
        match self.kind {
            CoronaKind::Vertex => {
                let ones = DenseMatrix::ones_column(n2);
                let q1 = &self.core_inverse * &ones;
                let a = (&self.incidence.transpose() * &q1).max_abs_diff(&DenseMatrix::ones_column(m2));
                let b = q1.scale(2.0).max_abs_diff(&ones);
                a.max(b)
            }
            CoronaKind::Edge => {
                let a = (&self.t_block * &self.h).max_abs_diff(&self.h);
                let lift = (&self.core_inverse * &self.incidence).kron(&DenseMatrix::identity(n1));
                let b = (&lift * &self.h).max_abs_diff(&self.k);
                a.max(b)
            }
        }
    }

    /// `max |L N L - L|` for the given product Laplacian.
    pub fn one_inverse_residual(&self, laplacian: &DenseMatrix) -> Result<f64> {
        let lnl = laplacian.matmul(&self.matrix)?.matmul(laplacian)?;
        Ok(lnl.max_abs_diff(laplacian))
    }
}

/// The product Laplacian assembled from Kronecker blocks.
///
/// Vertex corona:
/// ```text
/// [ 2I ⊗ I      -R2^T ⊗ I        0            ]
/// [ -R2 ⊗ I     (D2 + I) ⊗ I     -K           ]
/// [ 0           -K^T             L(G1) + n2 I ]
/// ```
/// Edge corona:
/// ```text
/// [ 3I ⊗ I      -R2^T ⊗ I   -H           ]
/// [ -R2 ⊗ I     D2 ⊗ I      0            ]
/// [ -H^T        0           L(G1) + m2 I ]
/// ```
/// `D2 = r2 I` when G2 is regular. Must equal `layout.product.laplacian()` entrywise.
pub fn laplacian_of_product(layout: &CoronaLayout) -> DenseMatrix {
    let [l1, l2, l3] = product_blocks(layout);
    DenseMatrix::from_blocks(&[vec![&l1, &l2], vec![&l2.transpose(), &l3]])
        .expect("product blocks have consistent shapes")
}

/// The 2x2 split used by the block {1}-inverse: `[L1, L2; L2^T, L3]` with `L3`
/// the G1 block.
pub fn product_blocks(layout: &CoronaLayout) -> [DenseMatrix; 3] {
    let (n1, n2, m2) = (layout.n1(), layout.n2(), layout.m2());
    let id1 = DenseMatrix::identity(n1);
    let r2 = layout.g2.incidence_matrix();
    let neg_r2 = r2.kron(&id1).scale(-1.0);
    let (sub_deg, copy_block, lower, g1_shift) = match layout.kind {
        CoronaKind::Vertex => {
            let d = &layout.g2.degree_matrix() + &DenseMatrix::identity(n2);
            let lower = DenseMatrix::from_blocks(&[
                vec![&DenseMatrix::zeros(n1 * m2, n1)],
                vec![&DenseMatrix::ones_column(n2).kron(&id1).scale(-1.0)],
            ])
            .expect("shapes agree");
            (2.0, d, lower, n2)
        }
        CoronaKind::Edge => {
            let lower = DenseMatrix::from_blocks(&[
                vec![&DenseMatrix::ones_column(m2).kron(&id1).scale(-1.0)],
                vec![&DenseMatrix::zeros(n1 * n2, n1)],
            ])
            .expect("shapes agree");
            (3.0, layout.g2.degree_matrix(), lower, m2)
        }
    };
    let l1 = DenseMatrix::from_blocks(&[
        vec![&DenseMatrix::identity(n1 * m2).scale(sub_deg), &neg_r2.transpose()],
        vec![&neg_r2, &copy_block.kron(&id1)],
    ])
    .expect("shapes agree");
    let l3 = &layout.g1.laplacian() + &id1.scale(g1_shift as f64);
    [l1, lower, l3]
}
