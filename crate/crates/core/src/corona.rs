//! Corona-vertex and corona-edge products of subdivision graphs.
//!
//! Product vertices are numbered in three consecutive blocks:
//!
//! ```text
//! [ subdivision vertices | G2-copy vertices | G1 vertices ]
//!   e * n1 + i             n1*m2 + a*n1 + i   n1*(m2+n2) + i
//! ```
//!
//! where `e` is a G2 edge, `a` a G2 vertex and `i` the owning G1 vertex. G2
//! structure is the major index and the copy the minor one, which is the
//! layout produced by `X ⊗ I_{n1}` in the block Laplacians.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoronaKind {
    /// Base vertex joined to the original vertices of its copy of `S(G2)`.
    Vertex,
    /// Base vertex joined to the inserted vertices of its copy of `S(G2)`.
    Edge,
}

impl CoronaKind {
    pub fn label(self) -> &'static str {
        match self {
            CoronaKind::Vertex => "vertex-corona",
            CoronaKind::Edge => "edge-corona",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexClass {
    /// Inserted into a G2 edge; `local` is the edge index.
    Subdivision,
    /// A G2 vertex; `local` is the G2 vertex index.
    Copy,
    /// A G1 vertex; `local == copy` is the G1 index.
    Base,
}

/// A product vertex in (class, local index, copy index) coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexRef {
    pub class: VertexClass,
    pub local: usize,
    pub copy: usize,
}

impl VertexRef {
    pub fn subdivision(edge: usize, copy: usize) -> Self {
        VertexRef {
            class: VertexClass::Subdivision,
            local: edge,
            copy,
        }
    }

    pub fn copy(vertex: usize, copy: usize) -> Self {
        VertexRef {
            class: VertexClass::Copy,
            local: vertex,
            copy,
        }
    }

    pub fn base(vertex: usize) -> Self {
        VertexRef {
            class: VertexClass::Base,
            local: vertex,
            copy: vertex,
        }
    }
}

/// A built product together with the component graphs and the vertex labeling.
#[derive(Debug, Clone, PartialEq)]
pub struct CoronaLayout {
    pub kind: CoronaKind,
    pub product: Graph,
    pub g1: Graph,
    pub g2: Graph,
}

impl CoronaLayout {
    pub fn n1(&self) -> usize {
        self.g1.vertex_count()
    }

    pub fn m1(&self) -> usize {
        self.g1.edge_count()
    }

    pub fn n2(&self) -> usize {
        self.g2.vertex_count()
    }

    pub fn m2(&self) -> usize {
        self.g2.edge_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.product.vertex_count()
    }

    pub fn subdivision_index(&self, edge: usize, copy: usize) -> usize {
        edge * self.n1() + copy
    }

    pub fn copy_index(&self, vertex: usize, copy: usize) -> usize {
        self.n1() * self.m2() + vertex * self.n1() + copy
    }

    pub fn base_index(&self, vertex: usize) -> usize {
        self.n1() * (self.m2() + self.n2()) + vertex
    }

    /// Index ranges of the subdivision, copy and base classes, in that order.
    pub fn class_ranges(&self) -> [std::ops::Range<usize>; 3] {
        let s = self.n1() * self.m2();
        let c = s + self.n1() * self.n2();
        [0..s, s..c, c..c + self.n1()]
    }

    pub fn index(&self, v: VertexRef) -> Result<usize> {
        self.check(v)?;
        Ok(match v.class {
            VertexClass::Subdivision => self.subdivision_index(v.local, v.copy),
            VertexClass::Copy => self.copy_index(v.local, v.copy),
            VertexClass::Base => self.base_index(v.local),
        })
    }

    pub fn vertex_ref(&self, index: usize) -> Result<VertexRef> {
        let n1 = self.n1();
        let [sub, copy, base] = self.class_ranges();
        if sub.contains(&index) {
            Ok(VertexRef::subdivision(index / n1, index % n1))
        } else if copy.contains(&index) {
            let k = index - copy.start;
            Ok(VertexRef::copy(k / n1, k % n1))
        } else if base.contains(&index) {
            Ok(VertexRef::base(index - base.start))
        } else {
            Err(Error::IndexOutOfRange {
                index,
                size: self.vertex_count(),
            })
        }
    }

    pub fn check(&self, v: VertexRef) -> Result<()> {
        let bound = match v.class {
            VertexClass::Subdivision => self.m2(),
            VertexClass::Copy => self.n2(),
            VertexClass::Base => self.n1(),
        };
        if v.local >= bound || v.copy >= self.n1() || (v.class == VertexClass::Base && v.copy != v.local) {
            return Err(Error::InvalidVertex(format!("{v:?}")));
        }
        Ok(())
    }

    /// Product neighbors of a subdivision vertex: the two endpoints of its
    /// edge in the same copy, plus the owning base vertex for the edge corona.
    pub fn subdivision_neighbors(&self, v: VertexRef) -> Result<Vec<VertexRef>> {
        self.check(v)?;
        if v.class != VertexClass::Subdivision {
            return Err(Error::InvalidVertex(format!("{v:?} is not a subdivision vertex")));
        }
        let (a, b) = self.g2.edges()[v.local];
        let mut out = vec![VertexRef::copy(a, v.copy), VertexRef::copy(b, v.copy)];
        if self.kind == CoronaKind::Edge {
            out.push(VertexRef::base(v.copy));
        }
        Ok(out)
    }

    pub fn manifest(&self) -> LayoutManifest {
        let classes = (0..self.vertex_count())
            .map(|k| {
                let v = self.vertex_ref(k).expect("index within range");
                ManifestEntry {
                    vertex: k,
                    class: v.class,
                    local: v.local,
                    copy: v.copy,
                }
            })
            .collect();
        LayoutManifest {
            n: self.vertex_count(),
            classes,
        }
    }
}

/// JSON description of the product labeling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutManifest {
    pub n: usize,
    pub classes: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub vertex: usize,
    pub class: VertexClass,
    pub local: usize,
    pub copy: usize,
}

/// `G1 ◇ G2`: G1 plus `n1` copies of `S(G2)`, base vertex `i` joined to every
/// original vertex of copy `i`.
pub fn corona_vertex(g1: &Graph, g2: &Graph) -> Result<CoronaLayout> {
    build(CoronaKind::Vertex, g1, g2)
}

/// `G1 ★ G2`: G1 plus `n1` copies of `S(G2)`, base vertex `i` joined to every
/// inserted vertex of copy `i`.
pub fn corona_edge(g1: &Graph, g2: &Graph) -> Result<CoronaLayout> {
    build(CoronaKind::Edge, g1, g2)
}

pub fn corona(kind: CoronaKind, g1: &Graph, g2: &Graph) -> Result<CoronaLayout> {
    build(kind, g1, g2)
}

fn build(kind: CoronaKind, g1: &Graph, g2: &Graph) -> Result<CoronaLayout> {
    let n1 = g1.vertex_count();
    if n1 == 0 {
        return Err(Error::EmptyBaseGraph);
    }
    let (n2, m2) = (g2.vertex_count(), g2.edge_count());
    let sub = |e: usize, i: usize| e * n1 + i;
    let copy = |a: usize, i: usize| n1 * m2 + a * n1 + i;
    let base = |i: usize| n1 * (m2 + n2) + i;

    let mut edges: Vec<(usize, usize)> = g1.edges().iter().map(|&(u, v)| (base(u), base(v))).collect();
    for i in 0..n1 {
        for (e, &(a, b)) in g2.edges().iter().enumerate() {
            edges.push((sub(e, i), copy(a, i)));
            edges.push((sub(e, i), copy(b, i)));
        }
        match kind {
            CoronaKind::Vertex => edges.extend((0..n2).map(|a| (copy(a, i), base(i)))),
            CoronaKind::Edge => edges.extend((0..m2).map(|e| (sub(e, i), base(i)))),
        }
    }
    let product = Graph::new(n1 * (1 + n2 + m2), edges)?;
    Ok(CoronaLayout {
        kind,
        product,
        g1: g1.clone(),
        g2: g2.clone(),
    })
}
