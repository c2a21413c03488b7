//! Simple undirected graphs, their standard matrices, and the derived graphs
//! (subdivision and line graph) the products are built from.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// A simple undirected graph on vertices `0..vertex_count`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically, so
/// the edge order (and every matrix derived from it) is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Validates and canonicalizes an edge list. Endpoint order within an
    /// edge and the order of edges are irrelevant.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::VertexOutOfRange { u, v, vertex_count });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
        }
        let edges: Vec<_> = seen.into_iter().collect();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edges,
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path is valid")
    }

    /// The cycle `C_n`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least three vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is valid")
    }

    /// The star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn adjacency_matrix(&self) -> DenseMatrix {
        let mut a = DenseMatrix::zeros(self.vertex_count, self.vertex_count);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    /// `n x m` vertex-edge incidence matrix; column `e` follows the canonical edge order.
    pub fn incidence_matrix(&self) -> DenseMatrix {
        let mut r = DenseMatrix::zeros(self.vertex_count, self.edges.len());
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            r[(u, e)] = 1.0;
            r[(v, e)] = 1.0;
        }
        r
    }

    pub fn degree_matrix(&self) -> DenseMatrix {
        let d: Vec<f64> = self.degrees().into_iter().map(|d| d as f64).collect();
        DenseMatrix::diagonal(&d)
    }

    /// `L = D - A`.
    pub fn laplacian(&self) -> DenseMatrix {
        let mut l = self.adjacency_matrix().scale(-1.0);
        for v in 0..self.vertex_count {
            l[(v, v)] = self.degree(v) as f64;
        }
        l
    }

    /// `S(G)`: original vertices keep their indices, the vertex inserted into
    /// edge `e` gets index `n + e`.
    pub fn subdivision(&self) -> Graph {
        let n = self.vertex_count;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(e, &(u, v))| [(u, n + e), (v, n + e)]);
        Graph::new(n + self.edges.len(), edges).expect("subdivision of a simple graph is simple")
    }

    /// `l(G)`: one vertex per edge, adjacent when the edges share an endpoint.
    pub fn line_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for v in 0..self.vertex_count {
            let incident: Vec<usize> = self
                .adjacency[v]
                .iter()
                .map(|&w| self.edge_index(v, w).expect("neighbor implies edge"))
                .collect();
            for (i, &e) in incident.iter().enumerate() {
                for &f in &incident[i + 1..] {
                    edges.push((e, f));
                }
            }
        }
        // Two distinct edges of a simple graph share at most one endpoint,
        // so no pair is produced twice.
        Graph::new(self.edges.len(), edges).expect("line graph is simple")
    }

    /// Position of edge `{u, v}` in the canonical edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Breadth-first connectivity. Graphs with at most one vertex count as connected.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.vertex_count
    }

    /// The common degree if every vertex has the same degree; `None` for
    /// irregular graphs and for the graph with no vertices.
    pub fn is_regular(&self) -> Option<usize> {
        let first = self.adjacency.first()?.len();
        self.adjacency
            .iter()
            .all(|l| l.len() == first)
            .then_some(first)
    }

    /// A proper 2-coloring, if the graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.vertex_count];
        for start in 0..self.vertex_count {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = color[v].expect("queued vertices are colored");
                for &w in &self.adjacency[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    /// Serializes in the edge-list text format: a header `n m` followed by one
    /// `u v` line per edge in canonical order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.vertex_count, self.edges.len()).unwrap();
        for (u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Parses the edge-list text format. Blank lines and everything after a
    /// `#` are ignored; errors carry the 1-based line number.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing \"n m\" header".into(),
        })?;
        let (n, m) = parse_pair(header_line, header)?;

        let mut edges = Vec::with_capacity(m);
        let mut last_line = header_line;
        for (line, content) in lines {
            last_line = line;
            if edges.len() == m {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the declared {m} edges"),
                });
            }
            let (u, v) = parse_pair(line, content)?;
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line,
                    message: format!("edge ({u}, {v}) references a vertex outside 0..{n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line,
                    message: format!("self-loop at vertex {u}"),
                });
            }
            edges.push((line, u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: last_line,
                message: format!("expected {m} edges, found {}", edges.len()),
            });
        }
        let mut seen = BTreeSet::new();
        for &(line, u, v) in &edges {
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate edge ({u}, {v})"),
                });
            }
        }
        Graph::new(n, edges.into_iter().map(|(_, u, v)| (u, v)))
    }
}

fn parse_pair(line: usize, content: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    let bad = |message: String| Error::Parse { line, message };
    if fields.len() != 2 {
        return Err(bad(format!(
            "expected two integers, found {} field(s) in {content:?}",
            fields.len()
        )));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| bad(format!("{s:?} is not a non-negative integer")))
    };
    Ok((parse(fields[0])?, parse(fields[1])?))
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse_edge_list(s)
    }
}

pub fn adjacency_matrix(g: &Graph) -> DenseMatrix {
    g.adjacency_matrix()
}

pub fn incidence_matrix(g: &Graph) -> DenseMatrix {
    g.incidence_matrix()
}

pub fn degree_matrix(g: &Graph) -> DenseMatrix {
    g.degree_matrix()
}

pub fn laplacian(g: &Graph) -> DenseMatrix {
    g.laplacian()
}

pub fn subdivision(g: &Graph) -> Graph {
    g.subdivision()
}

pub fn line_graph(g: &Graph) -> Graph {
    g.line_graph()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let g = Graph::new(4, [(3, 2), (1, 0), (2, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
    }

    #[test]
    fn rejects_invalid_edges() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(
            Graph::complete(2).adjacency_matrix(),
            DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]])
        );
        assert_eq!(Graph::empty(3).adjacency_matrix(), DenseMatrix::zeros(3, 3));
        assert_eq!(
            Graph::path(3).adjacency_matrix(),
            DenseMatrix::from_rows(&[[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
        );
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(
            Graph::complete(2).incidence_matrix(),
            DenseMatrix::column(&[1.0, 1.0])
        );
        assert_eq!(
            Graph::path(3).incidence_matrix(),
            DenseMatrix::from_rows(&[[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
        );
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Graph::complete(2).degree_matrix(), DenseMatrix::diagonal(&[1.0, 1.0]));
        assert_eq!(Graph::cycle(4).degree_matrix(), DenseMatrix::diagonal(&[2.0; 4]));
        assert_eq!(
            Graph::star(3).degree_matrix(),
            DenseMatrix::diagonal(&[3.0, 1.0, 1.0, 1.0])
        );
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(
            Graph::complete(2).laplacian(),
            DenseMatrix::from_rows(&[[1.0, -1.0], [-1.0, 1.0]])
        );
        assert_eq!(
            Graph::cycle(3).laplacian(),
            DenseMatrix::from_rows(&[[2.0, -1.0, -1.0], [-1.0, 2.0, -1.0], [-1.0, -1.0, 2.0]])
        );
    }

    #[test]
    fn subdivision_examples() {
        // S(K2) = P3 with the inserted vertex at index 2.
        let s = Graph::complete(2).subdivision();
        assert_eq!(s, Graph::new(3, [(0, 2), (1, 2)]).unwrap());
        // S(C3) is a 6-cycle.
        let s = Graph::cycle(3).subdivision();
        assert_eq!((s.vertex_count(), s.edge_count()), (6, 6));
        assert_eq!(s.is_regular(), Some(2));
        assert!(s.is_connected());
        assert_eq!(Graph::empty(1).subdivision(), Graph::empty(1));
    }

    #[test]
    fn line_graph_examples() {
        assert_eq!(Graph::path(3).line_graph(), Graph::complete(2));
        assert_eq!(Graph::complete(3).line_graph(), Graph::complete(3));
        assert_eq!(Graph::star(3).line_graph(), Graph::complete(3));
    }

    #[test]
    fn connectivity_and_regularity() {
        assert!(Graph::cycle(4).is_connected());
        assert_eq!(Graph::cycle(4).is_regular(), Some(2));
        assert!(Graph::path(3).is_connected());
        assert_eq!(Graph::path(3).is_regular(), None);
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two_k2.is_connected());
        assert_eq!(Graph::empty(1).is_regular(), Some(0));
        assert_eq!(Graph::empty(0).is_regular(), None);
    }

    #[test]
    fn parse_with_comments_and_blank_lines() {
        let text = "# triangle\n3 3\n\n0 1\n1 2 # closing soon\n2 0\n";
        let g: Graph = text.parse().unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn parse_errors_cite_lines() {
        let err = Graph::parse_edge_list("2 1\na b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = Graph::parse_edge_list("2 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = Graph::parse_edge_list("3 2\n0 1\n\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = Graph::parse_edge_list("2 1\n0 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = Graph::parse_edge_list("2 1\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        assert!(Graph::parse_edge_list("# nothing\n").is_err());
    }
}
