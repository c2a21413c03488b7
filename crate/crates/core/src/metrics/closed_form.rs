//! Case-by-case resistance formulas for the two corona products.
//!
//! Pairs of non-subdivision vertices are answered from three small matrices:
//! `L(G1)#`, the core inverse `M^-1` (`Q^-1` or `C^-1`) and its scale `c`:
//!
//! * base–base: `S#_ii + S#_jj - 2 S#_ij`
//! * two copy vertices in the same copy: `c (m_aa + m_bb - 2 m_ab)`
//! * a base vertex and a copy vertex it owns: `c m_aa`
//!
//! Pairs that straddle different copies read the assembled {1}-inverse `N`,
//! which carries the `K S# K^T` cross-copy terms. A subdivision vertex with
//! neighbors `T` is expanded through the local identity
//!
//! ```text
//! r_ij = (1 + sum_{k in T} r_kj) / |T| - (sum_{{k,l} ⊆ T} r_kl) / |T|^2
//! ```
//!
//! recursively, so two subdivision vertices take two expansion steps.

use crate::corona::{CoronaKind, CoronaLayout, VertexClass, VertexRef};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::one_inverse::{one_inverse, OneInverse};
use crate::tolerance::Tolerances;

use super::resistance::{Provenance, ResistanceMatrix};

/// Which closed form answers a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResistanceCase {
    Identical,
    BaseBase,
    CopyCopySameCopy,
    CopyCopyCrossCopy,
    BaseCopyOwned,
    BaseCopyForeign,
    SubdivisionOther,
    SubdivisionSubdivision,
}

impl ResistanceCase {
    pub const ALL: [ResistanceCase; 8] = [
        ResistanceCase::Identical,
        ResistanceCase::BaseBase,
        ResistanceCase::CopyCopySameCopy,
        ResistanceCase::CopyCopyCrossCopy,
        ResistanceCase::BaseCopyOwned,
        ResistanceCase::BaseCopyForeign,
        ResistanceCase::SubdivisionOther,
        ResistanceCase::SubdivisionSubdivision,
    ];

    pub fn classify(i: VertexRef, j: VertexRef) -> Self {
        use VertexClass::*;
        if i == j {
            return ResistanceCase::Identical;
        }
        match (i.class, j.class) {
            (Subdivision, Subdivision) => ResistanceCase::SubdivisionSubdivision,
            (Subdivision, _) | (_, Subdivision) => ResistanceCase::SubdivisionOther,
            (Base, Base) => ResistanceCase::BaseBase,
            (Copy, Copy) if i.copy == j.copy => ResistanceCase::CopyCopySameCopy,
            (Copy, Copy) => ResistanceCase::CopyCopyCrossCopy,
            _ if i.copy == j.copy => ResistanceCase::BaseCopyOwned,
            _ => ResistanceCase::BaseCopyForeign,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            ResistanceCase::Identical => "identical",
            ResistanceCase::BaseBase => "base-base",
            ResistanceCase::CopyCopySameCopy => "copy-copy-same-copy",
            ResistanceCase::CopyCopyCrossCopy => "copy-copy-cross-copy",
            ResistanceCase::BaseCopyOwned => "base-copy-owned",
            ResistanceCase::BaseCopyForeign => "base-copy-foreign",
            ResistanceCase::SubdivisionOther => "subdivision-other",
            ResistanceCase::SubdivisionSubdivision => "subdivision-subdivision",
        }
    }

    /// True when the pair is answered by reading `N` rather than a small-matrix formula.
    pub fn reads_one_inverse(self) -> bool {
        matches!(
            self,
            ResistanceCase::CopyCopyCrossCopy | ResistanceCase::BaseCopyForeign
        )
    }
}

/// Closed-form resistance evaluator for one product.
#[derive(Debug, Clone)]
pub struct CoronaResistance {
    layout: CoronaLayout,
    one_inverse: OneInverse,
}

impl CoronaResistance {
    /// Fails if G1 is empty or disconnected, or, for the edge corona, if G2
    /// is not regular of positive degree.
    pub fn new(layout: &CoronaLayout, tol: &Tolerances) -> Result<Self> {
        let one_inverse = one_inverse(layout, tol)?;
        Ok(CoronaResistance {
            layout: layout.clone(),
            one_inverse,
        })
    }

    pub fn layout(&self) -> &CoronaLayout {
        &self.layout
    }

    pub fn one_inverse(&self) -> &OneInverse {
        &self.one_inverse
    }

    pub fn resistance(&self, i: VertexRef, j: VertexRef) -> Result<f64> {
        self.layout.check(i)?;
        self.layout.check(j)?;
        self.resolve(i, j)
    }

    /// Resistance between product indices.
    pub fn resistance_by_index(&self, u: usize, v: usize) -> Result<f64> {
        self.resolve(self.layout.vertex_ref(u)?, self.layout.vertex_ref(v)?)
    }

    fn resolve(&self, i: VertexRef, j: VertexRef) -> Result<f64> {
        if i == j {
            return Ok(0.0);
        }
        match (i.class, j.class) {
            (VertexClass::Subdivision, _) => self.expand(i, j),
            (_, VertexClass::Subdivision) => self.expand(j, i),
            _ => self.direct(i, j),
        }
    }

    /// One step of the local identity at subdivision vertex `s`.
    fn expand(&self, s: VertexRef, j: VertexRef) -> Result<f64> {
        let nbrs = self.layout.subdivision_neighbors(s)?;
        let d = nbrs.len() as f64;
        let mut to_j = 0.0;
        for &k in &nbrs {
            to_j += self.resolve(k, j)?;
        }
        let mut pairs = 0.0;
        for (a, &k) in nbrs.iter().enumerate() {
            for &l in &nbrs[a + 1..] {
                pairs += self.direct(k, l)?;
            }
        }
        Ok((1.0 + to_j) / d - pairs / (d * d))
    }

    /// Pairs of non-subdivision vertices.
    fn direct(&self, i: VertexRef, j: VertexRef) -> Result<f64> {
        let s = &self.one_inverse.base_group_inverse;
        let m = &self.one_inverse.core_inverse;
        let c = self.one_inverse.core_scale;
        Ok(match ResistanceCase::classify(i, j) {
            ResistanceCase::Identical => 0.0,
            ResistanceCase::BaseBase => {
                let (a, b) = (i.local, j.local);
                s[(a, a)] + s[(b, b)] - 2.0 * s[(a, b)]
            }
            ResistanceCase::CopyCopySameCopy => {
                let (a, b) = (i.local, j.local);
                c * (m[(a, a)] + m[(b, b)] - 2.0 * m[(a, b)])
            }
            ResistanceCase::BaseCopyOwned => {
                let (base, copy) = if i.class == VertexClass::Base { (i, j) } else { (j, i) };
                let k = base.local;
                s[(k, k)] + c * m[(copy.local, copy.local)] - s[(k, copy.copy)]
            }
            ResistanceCase::CopyCopyCrossCopy | ResistanceCase::BaseCopyForeign => {
                self.via_one_inverse(i, j)?
            }
            ResistanceCase::SubdivisionOther | ResistanceCase::SubdivisionSubdivision => {
                return Err(Error::InvalidVertex(format!(
                    "{i:?}, {j:?} must be expanded, not read directly"
                )))
            }
        })
    }

    /// `N_ii + N_jj - 2 N_ij` straight from the assembled {1}-inverse.
    pub fn via_one_inverse(&self, i: VertexRef, j: VertexRef) -> Result<f64> {
        let (u, v) = (self.layout.index(i)?, self.layout.index(j)?);
        if u == v {
            return Ok(0.0);
        }
        let n = &self.one_inverse.matrix;
        Ok(n[(u, u)] + n[(v, v)] - 2.0 * n[(u, v)])
    }

    /// All pairwise resistances through the case formulas.
    pub fn matrix(&self) -> Result<ResistanceMatrix> {
        ResistanceMatrix::from_fn(self.layout.vertex_count(), Provenance::ClosedForm, |u, v| {
            if u == v {
                Ok(0.0)
            } else if u < v {
                self.resistance_by_index(u, v)
            } else {
                // evaluate each unordered pair the same way in both triangles
                self.resistance_by_index(v, u)
            }
        })
    }

    /// All pairwise resistances read from `N`.
    pub fn one_inverse_matrix(&self) -> Result<ResistanceMatrix> {
        let provenance = match self.layout.kind {
            CoronaKind::Vertex => Provenance::VertexCoronaOneInverse,
            CoronaKind::Edge => Provenance::EdgeCoronaOneInverse,
        };
        ResistanceMatrix::from_one_inverse(&self.one_inverse.matrix, provenance)
    }

    /// The same-copy copy-pair expression with a single cross term,
    /// `c (m_aa + m_bb) - c m_ab` for the vertex corona, and with the scale
    /// inverted, `(m_aa + m_bb - 2 m_ab) / c`, for the edge corona.
    ///
    /// Neither equals the true resistance; kept only so reports can show
    /// how far off they are.
    pub fn uncorrected_copy_pair(&self, a: usize, b: usize) -> f64 {
        let m = &self.one_inverse.core_inverse;
        let c = self.one_inverse.core_scale;
        match self.layout.kind {
            CoronaKind::Vertex => c * m[(a, a)] + c * m[(b, b)] - c * m[(a, b)],
            CoronaKind::Edge => (m[(a, a)] + m[(b, b)] - 2.0 * m[(a, b)]) / c,
        }
    }
}

fn evaluator(kind: CoronaKind, g1: &Graph, g2: &Graph) -> Result<CoronaResistance> {
    let layout = crate::corona::corona(kind, g1, g2)?;
    CoronaResistance::new(&layout, &Tolerances::default())
}

/// Resistance in `G1 ◇ G2` between two class-tagged vertices.
pub fn resistance_vertex_corona(g1: &Graph, g2: &Graph, i: VertexRef, j: VertexRef) -> Result<f64> {
    evaluator(CoronaKind::Vertex, g1, g2)?.resistance(i, j)
}

/// Resistance in `G1 ★ G2` between two class-tagged vertices.
pub fn resistance_edge_corona(g1: &Graph, g2: &Graph, i: VertexRef, j: VertexRef) -> Result<f64> {
    evaluator(CoronaKind::Edge, g1, g2)?.resistance(i, j)
}
