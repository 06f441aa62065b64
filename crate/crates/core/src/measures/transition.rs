//! Transition kernel `p_{λ→μ} = Q_{μ/λ}(ρ) P_μ(1^N) / (H(ρ;1^N) P_λ(1^N))`.

use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::{enumerate_partitions, horizontal_strips, vertical_strips, Partition};
use crate::error::{invalid, Error, Result};
use crate::jack::{
    jack_eval_ones, log_h_with_ones, phi_horizontal, plancherel_skew_weights, psi_vertical_beta, skew_q_on_spec,
    SpecDescriptor,
};
use crate::rational::{factorial, pow, Q};

use super::family::ln_q;

#[derive(Clone, Debug, Serialize)]
pub struct TransitionTable {
    pub from: Partition,
    pub entries: Vec<(Partition, f64)>,
    pub total: f64,
    /// `|1 − total|`.
    pub defect: f64,
}

/// `Q_{μ/λ}(ρ) P_μ(1^N)/P_λ(1^N)` for every `μ ⊇ λ` with `ℓ(μ) ≤ N` and
/// `|μ/λ| ≤ jump_cutoff`, without the `1/H` factor. Uses strip formulas for a
/// single alpha or beta variable and single-box chains for Plancherel; any
/// other specialization goes through power sums and is bounded by
/// `degree_cap`.
pub fn transition_weights_exact(
    lambda: &Partition,
    rho: &SpecDescriptor,
    n: usize,
    jump_cutoff: usize,
    degree_cap: usize,
) -> Result<Vec<(Partition, Q)>> {
    if lambda.len() > n {
        return invalid(format!("{lambda} has more than {n} rows"));
    }
    let theta = &rho.theta;
    let base = jack_eval_ones(lambda, n, theta);
    let ratio = |mu: &Partition| jack_eval_ones(mu, n, theta) / &base;
    let mut out = Vec::new();
    if let Some(delta) = rho.as_plancherel() {
        for (mu, k, w) in plancherel_skew_weights(lambda, n, jump_cutoff, theta) {
            let q = w * pow(&delta, k as i64) / factorial(k);
            if !q.is_zero() {
                out.push((mu.clone(), q * ratio(&mu)));
            }
        }
    } else if let Some(c) = rho.as_single_alpha() {
        for k in 0..=jump_cutoff {
            for mu in horizontal_strips(lambda, k, n) {
                let q = phi_horizontal(&mu, lambda, theta) * pow(&c, k as i64);
                out.push((mu.clone(), q * ratio(&mu)));
            }
        }
    } else if let Some(b) = rho.as_single_beta() {
        let tb = theta * &b;
        for k in 0..=jump_cutoff.min(n) {
            for mu in vertical_strips(lambda, k, n) {
                let q = psi_vertical_beta(&mu, lambda, theta) * pow(&tb, k as i64);
                out.push((mu.clone(), q * ratio(&mu)));
            }
        }
    } else {
        let top = lambda.size() + jump_cutoff;
        if top > degree_cap {
            return Err(Error::Cap(format!("transition needs degree {top}, above the cap {degree_cap}")));
        }
        for mu in enumerate_partitions(top, n, None) {
            if mu.size() < lambda.size() || !mu.contains(lambda) {
                continue;
            }
            let q = skew_q_on_spec(&mu, lambda, rho, degree_cap)?;
            if !q.is_zero() {
                out.push((mu.clone(), q * ratio(&mu)));
            }
        }
    }
    out.retain(|(_, w)| !w.is_zero());
    Ok(out)
}

/// Normalized transition probabilities with the truncation defect.
pub fn transition_probs(
    lambda: &Partition,
    rho: &SpecDescriptor,
    n: usize,
    jump_cutoff: usize,
    degree_cap: usize,
    tolerance: f64,
) -> Result<TransitionTable> {
    let log_h = log_h_with_ones(rho, n)?;
    let raw = transition_weights_exact(lambda, rho, n, jump_cutoff, degree_cap)?;
    let entries: Vec<(Partition, f64)> = raw
        .into_iter()
        .map(|(mu, w)| {
            let p = if w < Q::zero() { -(ln_q(&-w) - log_h).exp() } else { (ln_q(&w) - log_h).exp() };
            (mu, p)
        })
        .collect();
    let total: f64 = entries.iter().map(|e| e.1).sum();
    let defect = (1.0 - total).abs();
    if defect > tolerance {
        return Err(Error::Defect { defect, tolerance });
    }
    Ok(TransitionTable {
        from: lambda.clone(),
        entries,
        total,
        defect,
    })
}

/// `Σ_ν a(λ→ν) b(ν→μ)` for weight lists restricted to sizes `≤ max_size`.
pub fn compose_weights(
    first: &[(Partition, Q)],
    second: impl Fn(&Partition) -> Result<Vec<(Partition, Q)>>,
    max_size: usize,
) -> Result<Vec<(Partition, Q)>> {
    let mut acc: std::collections::BTreeMap<Partition, Q> = Default::default();
    for (nu, a) in first {
        if nu.size() > max_size {
            continue;
        }
        for (mu, b) in second(nu)? {
            if mu.size() <= max_size {
                *acc.entry(mu).or_insert_with(Q::zero) += a * &b;
            }
        }
    }
    Ok(acc.into_iter().filter(|(_, w)| !w.is_zero()).collect())
}

/// `Σ_μ` of exact weights, used where `H` is rational.
pub fn exact_total(w: &[(Partition, Q)]) -> Q {
    w.iter().fold(Q::zero(), |a, (_, x)| a + x)
}
