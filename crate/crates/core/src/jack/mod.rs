//! Jack polynomials at a fixed rational θ.
//!
//! `P_λ` is built in the monomial-symmetric basis as the eigenvector of a
//! Laplace–Beltrami type operator, which is triangular in dominance order.
//! Specializations go through the power-sum basis.

mod basis;
mod construct;
mod lr;
mod spec;
mod strips;

pub use basis::{m_to_p_matrix, p_to_m_matrix, PowerSumExpansion};
pub use construct::{
    jack_eval_ones, jack_laurent_p, jack_laurent_p_shift, jack_p, jack_p_powersums, jack_q_powersums, q_factor, JackIndex,
};
pub use lr::{lr_table, LRTable};
pub use spec::{
    cauchy_h, jack_on_spec, log_h_with_ones, power_sum, q_on_spec, skew_q_on_spec, CauchyValue,
    SpecDescriptor, SpecKind,
};
pub use strips::{
    eval_ones_ratio_f64, log_eval_ones_f64, phi_horizontal, phi_horizontal_f64, plancherel_skew_weights,
    psi_vertical_beta, single_box_phi, single_box_phi_f64,
};
