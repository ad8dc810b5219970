//! GHZ-state generation in N-qubit chains driven by a single detuning ramp.
//!
//! An N-wise interaction (a Pauli string over every site) plus a swept
//! detuning on one ancilla qubit splits the dynamics into 2^(N-1) invariant
//! two-dimensional subspaces, each governed by the same avoided-crossing
//! two-level problem. Ramping through the crossing at the half-transition
//! slope leaves the chain in a GHZ-like superposition of a basis state and
//! its all-spins-flipped partner.
//!
//! Module map:
//! - [`model`]: chain spec, drive profiles, matrix-free Hamiltonian action;
//! - [`subspace`]: invariant-pair enumeration and two-level reduction;
//! - [`integrate`]: embedded Dormand-Prince 5(4) stepper;
//! - [`propagator`]: converged propagation (reduced and full) and
//!   probability extraction;
//! - [`analytics`]: sweep asymptotics, adiabaticity, inverse pulse design,
//!   physical durations;
//! - [`ghz`]: GHZ targets and pair fidelity.

pub mod analytics;
pub mod ghz;
pub mod integrate;
pub mod model;
pub mod propagator;
pub mod subspace;

pub use analytics::{
    adiabaticity, estimate_duration, half_transition_lambda, lmsz_asymptotic_half_ramp,
    lmsz_asymptotic_symmetric, solve_slope_for_probability, tail_average, tail_peak_to_peak,
    Adiabaticity, AnalyticsError, DimensionlessParams, HardwareParams, RampKind,
};
pub use ghz::{ghz_fidelity, ghz_like_target, report_from_amplitudes, GhzError, GhzReport};
pub use model::{
    ChainModel, ChainSpec, DriveProfile, HamiltonianAction, ModelError, StateVector, MAX_QUBITS,
};
pub use propagator::{
    leakage_outside_pair, max_amplitude_deviation, propagate_full, propagate_two_level,
    transition_probability, PropagateError, Target, TrajectoryKind, TrajectoryRecord,
    DEFAULT_SAMPLES, DEFAULT_TOL,
};
pub use subspace::{
    check_constants_of_motion, effective_two_level, enumerate_subspaces, pair_of,
    zz_expectation, PairMember, SubspaceError, SubspacePair, TwoLevelProblem,
};

/// Version string embedded in every output artifact.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
