//! Classical ε-machines, their quantum refinement, and the complexity
//! measures `C_mu` and `C_q` for parametric stochastic processes.
//!
//! The crate is organized around five pieces:
//!
//! - [`machine`]: ε-machine representation, stationary analysis, state
//!   merging, entropy, and seeded sampling.
//! - [`quantum`]: quantum causal states, Gram and density operators, and
//!   the von Neumann entropy `C_q`.
//! - [`processes`]: the perturbed coin and thermalizing qubit cloud
//!   constructors plus their closed-form cross-checks.
//! - [`oracle`]: an independent density-matrix simulation of the cloud's
//!   one-step measurement circuit, the ground truth for the closed-form
//!   rates.
//! - [`inference`]: ε-machine reconstruction from observed sequences.
//!
//! All values are immutable after construction and all operations are pure
//! functions of their inputs, so everything can be shared freely across
//! threads (e.g. for parallel parameter sweeps).

pub mod error;
pub mod inference;
pub mod linalg;
pub mod machine;
pub mod oracle;
pub mod processes;
pub mod quantum;

pub use error::{Error, Result};
pub use inference::{
    default_merge_tolerance, empirical_complexities, estimate_conditionals, reconstruct_machine,
    reconstruct_machine_with, EmpiricalModel, History, Reconstruction,
};
pub use linalg::{jacobi_eigen, symmetric_eigenvalues, SymEigen, SymMatrix};
pub use machine::{
    merge_equivalent_states, merge_equivalent_states_with_map, sample, shannon_entropy,
    statistical_complexity, stationary, stationary_power_iteration, Alphabet, EpsilonMachine,
    SequenceOrigin, StartState, StationaryDistribution, SymbolSequence,
};
pub use oracle::{
    cx_kappa_unitary, env_qubit, partial_trace_env, pswap_channel, step_flip_probability,
    swap_unitary, ComplexMatrix, ObserverStep,
};
pub use processes::{
    cloud_machine, cloud_rates, cnot_cloud_stationary, cnot_cloud_transitions,
    coin_complexity_closed_form, perturbed_coin_machine, CloudParams, CoinParams,
};
pub use quantum::{
    gram, quantum_causal_states, quantum_complexity, quantum_complexity_via_density,
    von_neumann_entropy, GramMatrix, MixedStateOperator, QuantumCausalState,
};
