use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge ({u}, {v}) references a vertex outside 0..{vertex_count}")]
    VertexOutOfRange {
        u: usize,
        v: usize,
        vertex_count: usize,
    },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("the base graph G1 has no vertices, so the product is empty")]
    EmptyBaseGraph,

    #[error("{0} is disconnected")]
    Disconnected(String),

    #[error("G2 is not regular, which the edge-corona closed forms require")]
    NotRegular,

    #[error("G2 is 0-regular (edgeless); the edge-corona formulas divide by the degree")]
    ZeroRegularity,

    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is singular to tolerance (pivot {pivot:e} at column {column})")]
    Singular { column: usize, pivot: f64 },

    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("invalid vertex reference: {0}")]
    InvalidVertex(String),

    #[error("Kirchhoff oracle routes disagree: trace {trace} vs pair sum {pair_sum}")]
    OracleMismatch { trace: f64, pair_sum: f64 },
}

impl Error {
    /// True for errors caused by a graph that violates an operation's
    /// precondition (as opposed to malformed input or numeric failure).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::EmptyBaseGraph
                | Error::Disconnected(_)
                | Error::NotRegular
                | Error::ZeroRegularity
        )
    }

    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::VertexOutOfRange { .. }
                | Error::SelfLoop(_)
                | Error::DuplicateEdge(..)
        )
    }
}
