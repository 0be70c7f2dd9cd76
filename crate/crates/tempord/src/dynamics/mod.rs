//! Time-dependent 2D wavepacket propagation: grid state, hard-potential
//! masks, the unitary ADI propagator, the two-body canonical mapping, and
//! bit-exact checkpoints.

mod checkpoint;
mod grid;
mod map;
mod mask;
mod propagate;

pub use checkpoint::{read_checkpoint, write_checkpoint};
pub use grid::{classify_outcome, GridState, OutcomeProbabilities, QuadrantProbabilities};
pub use map::{gaussian_packet, initial_state, map_two_body_to_plane, PlaneConfig, TwoBodyConfig};
pub use mask::{MaskKind, PotentialMask};
pub use propagate::{evolve, EvolveReport, Hamiltonian};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("NaN encountered at step {step}; aborting")]
    Nan { step: u64 },
    #[error("checkpoint: {0}")]
    BadCheckpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
