//! Recognition and approximation of `k`-trails: graphs that are homomorphic
//! images of connected graphs with maximum degree at most `k`.

pub mod auxgraph;
pub mod cli;
pub mod containment;
pub mod error;
pub mod instances;
pub mod lp;
pub mod matroids;
pub mod multigraph;
pub mod oracles;
pub mod preimage;
pub mod rational;
pub mod recognition;
pub mod weighted;

pub use error::{Error, Result};
pub use multigraph::{EdgeId, MultiGraph, VertexId, WeightedMultiGraph};
pub use preimage::{ContainedTrail, PreimageWitness, Violation};
pub use rational::Rational;
