pub mod classreduce;
pub mod dsu;
pub mod error;
pub mod gen;
pub mod graph;
pub mod graphops;
pub mod model;
pub mod oracle;
pub mod reductions;
pub mod separations;
pub mod setfamily;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{EdgeId, MultiGraph, VertexId};
pub use model::{
    BorderInstance, BorderOutput, MixedSolution, MmcuInstance, Partition, Profile, SolutionCheck,
};
