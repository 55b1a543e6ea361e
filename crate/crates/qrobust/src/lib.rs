//! Four-qubit decoherence trajectories: local Kraus channels, negativity-based
//! multipartite entanglement, state-space distance measures, trajectory
//! geometry, and a simulated-annealing search for robust entangled states.

pub mod channels;
pub mod distances;
pub mod entanglement;
pub mod error;
pub mod geometry;
pub mod qlinalg;
pub mod search;

pub use error::{QrError, Result};
