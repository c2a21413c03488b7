//! Resistance distances and Kirchhoff indices, both from closed forms over
//! the component graphs and from the brute-force oracle on the full product.

mod closed_form;
mod kirchhoff;
mod resistance;

pub use closed_form::{
    resistance_edge_corona, resistance_vertex_corona, CoronaResistance, ResistanceCase,
};
pub use kirchhoff::{
    kf_edge_corona_regular, kf_vertex_corona, kf_vertex_corona_regular, kirchhoff_oracle,
    kirchhoff_oracle_routes, KirchhoffMethod, KirchhoffResult, OracleRoutes,
};
pub use resistance::{
    neighbor_identity_check, resistance_from_one_inverse, resistance_oracle,
    resistance_oracle_with, PairSumReading, Provenance, ResistanceMatrix,
};
