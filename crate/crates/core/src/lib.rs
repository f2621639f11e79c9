//! Cohomology of moment-angle complexes through Hochster's decomposition,
//! triple Massey products with their indeterminacy, and an exhaustive
//! verification harness for the six-vertex obstruction-graph classification.

pub mod cochain;
pub mod coeff;
pub mod complex;
pub mod error;
pub mod graph;
pub mod hochster;
pub mod linalg;
pub mod massey;
pub mod obstruction;
pub mod oracle;

pub use coeff::{Field, Scalar};
pub use complex::{SimplicialComplex, VertexSet};
pub use error::{Error, Result};
pub use graph::SmallGraph;
pub use hochster::{ClassVector, CohomologyClass, MomentAngleModel, MultiCochain};
