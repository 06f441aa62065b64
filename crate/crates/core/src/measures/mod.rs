//! Jack measures, samplers and the Markov chain.

pub mod chain;
pub mod family;
pub mod growth;
pub mod table;
pub mod transition;

pub use chain::{
    particle_rows, simulate_chain, simulate_chain_with, simulate_chains, trajectory_rng, ChainMode, ChainOptions,
    ChainState, InitialState, KernelCache,
};
pub use family::{
    beta_weight_exact, family_weight_parts, jgf_log_derivative, weight_pure_alpha, weight_pure_beta,
    weight_pure_plancherel, FamilyParams, SizeLaw,
};
pub use growth::{alpha_strip_step, box_choice_probs, plancherel_growth_step, sample_alpha_chain, sample_plancherel};
pub use table::{build_measure_table, sample_measure, MeasureSampler, MeasureTable};
pub use transition::{compose_weights, exact_total, transition_probs, transition_weights_exact, TransitionTable};
