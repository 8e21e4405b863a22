//! Activation of bound entanglement on qutrit pairs via iterated local
//! rotate-measure (quantum Zeno) dynamics.
//!
//! Two spatially separated parties share a free-entangled qutrit pair and a
//! bound-entangled qutrit pair. Each party repeatedly applies a small
//! single-particle rotation to both of its particles and then a two-outcome
//! threshold measurement that only detects whether its particles sit in one
//! specific product level. Surviving runs are finished by measuring the
//! bound pair in the z basis; conditioned on the right outcome, the free
//! pair ends up with strictly larger negativity than it started with, even
//! though the consumed pair was bound entangled.
//!
//! The crate is organized as a library with one thin `qzeno` binary on top:
//!
//! * [`linalg`] — dense complex matrices, Kronecker products, subsystem
//!   embeddings and partial traces, a cyclic Jacobi eigensolver.
//! * [`states`] — the two-qutrit state family and z-basis projectors.
//! * [`measures`] — partial transpose, negativity, fidelity, PPT test.
//! * [`zeno`] — the protocol engine: per-iteration dynamics, bound-pair
//!   measurement, single-round and multi-round drivers.
//! * [`baseline`] — the analytic XOR activation recursion for comparison.
//! * [`sweep`] — brute-force parameter search and trajectory export.
//! * [`cli`] — config/spec file formats, CSV/matrix writers, subcommands.
//!
//! The `examples/` directory has one runnable example per capability; start
//! with `cargo run --example single_round`.

pub mod baseline;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod states;
pub mod sweep;
pub mod zeno;

pub use error::{Error, Result};
pub use linalg::{Complex64, ComplexMatrix, HermitianEigen, Projector, UnitaryOperator};
pub use measures::{BipartiteSplit, PptClass, classify_ppt, fidelity_to_psi_plus, negativity};
pub use states::{
    DensityMatrix, PureState, psi_plus, sigma_alpha, sigma_free, sigma_minus, sigma_plus,
    z_projector,
};
pub use sweep::{SweepObjective, SweepResult, SweepSpec, run_sweep, run_sweep_serial};
pub use zeno::{
    ProtocolConfig, RoundSummary, RoundTrace, ThresholdPair, apply_global_rotation,
    measure_bound_pair, party_projectors, rotation_z, run_multi_round, run_round, zeno_step,
};
