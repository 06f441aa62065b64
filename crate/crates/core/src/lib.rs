//! Exact Jack-polynomial algebra, Cherednik operators, Lukasiewicz-path
//! moment/cumulant transforms, Jack-measure samplers and the experiment
//! harness built on top of them.
//!
//! Every algebraic quantity is an exact [`Q`] rational. Floating point only
//! appears for transcendental normalizations (`e^{-Nt}`, `(1-c)^{Nθm}`) and
//! for Monte Carlo statistics.

pub mod cherednik;
pub mod combinatorics;
pub mod error;
pub mod harness;
pub mod jack;
pub mod measures;
pub mod paths;
pub mod poly;
pub mod rational;
pub mod transforms;

pub use error::{Error, Result};
pub use rational::Q;

/// Default cap on total degree for exact symmetric-function expansions.
pub const DEFAULT_DEGREE_CAP: usize = 12;
/// Default cap on Lukasiewicz path length.
pub const DEFAULT_PATH_CAP: usize = 14;
