//! Concurrence, entanglement entropy, optimal pure-state decompositions,
//! and one-shot classical capacity of trace-preserving positive 1-qubit
//! maps, built on a Minkowski quadratic-form representation of the
//! convex roof, with a brute-force decomposition oracle for verification.

pub mod bipartite;
pub mod bloch;
pub mod capacity;
pub mod channel;
pub mod concurrence;
pub mod entanglement;
pub mod roof;
pub mod sampling;

pub use bloch::{binary_entropy, det4, minkowski_dot, MinkowskiVector, PureState, State};
pub use capacity::{capacity_sweep, holevo_quantity, hsw_capacity, CapacityResult};
pub use channel::{AxialParams, ChannelSpec, PositivityClass, QubitMap};
pub use concurrence::{concurrence, critical_w, ConcurrenceForm, Foliation};
pub use entanglement::{
    bifurcation_betas, classify_phase, entanglement, entanglement_bounds, xi, xi_base,
    BifurcationBetas, PhaseLabel,
};
pub use roof::{minimize_roof, Budget, Decomposition, RoofResult};
