//! Table-free samplers for large `N`.
//!
//! The Plancherel kernel `Planch(δ)` is the law at time `θδ` of a pure-birth
//! process that adds one box at rate `N`; conditional on a birth, row `r`
//! receives it with probability `φ_r P_{λ+□_r}(1^N) / (θ N P_λ(1^N))`. Both
//! the Poisson clock and the box choice are exact, so no truncation enters.
//!
//! A single alpha variable adds a horizontal strip; strips are visited by
//! increasing size and the inverse CDF stops as soon as it is reached.

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::combinatorics::{horizontal_strips, Partition};
use crate::error::{Error, Result};
use crate::jack::{eval_ones_ratio_f64, log_eval_ones_f64, phi_horizontal_f64, single_box_phi_f64};

/// Probabilities of adding the next box to each addable row `≤ N`.
pub fn box_choice_probs(lambda: &Partition, n: usize, theta: f64) -> Vec<(usize, f64)> {
    lambda
        .addable_rows()
        .into_iter()
        .filter(|&r| r <= n)
        .map(|r| {
            let w = single_box_phi_f64(lambda, r, theta) * eval_ones_ratio_f64(lambda, r, n, theta) / (theta * n as f64);
            (r, w)
        })
        .collect()
}

/// Grow `lambda` by `k` boxes chosen one at a time.
pub fn grow_boxes<R: Rng + ?Sized>(lambda: &Partition, k: usize, n: usize, theta: f64, rng: &mut R) -> Partition {
    let mut cur = lambda.clone();
    for _ in 0..k {
        let probs = box_choice_probs(&cur, n, theta);
        let total: f64 = probs.iter().map(|p| p.1).sum();
        let mut u = rng.random::<f64>() * total;
        let mut row = probs.last().unwrap().0;
        for (r, p) in &probs {
            if u < *p {
                row = *r;
                break;
            }
            u -= p;
        }
        cur = cur.add_box(row);
    }
    cur
}

/// One Plancherel step `Planch(δ)` from `lambda`.
pub fn plancherel_growth_step<R: Rng + ?Sized>(lambda: &Partition, n: usize, theta: f64, delta: f64, rng: &mut R) -> Result<Partition> {
    let rate = n as f64 * theta * delta;
    let k = if rate > 0.0 {
        Poisson::new(rate).map_err(|e| Error::Invalid(e.to_string()))?.sample(rng) as usize
    } else {
        0
    };
    Ok(grow_boxes(lambda, k, n, theta, rng))
}

/// A draw from the pure-Plancherel measure with parameter `t`.
pub fn sample_plancherel<R: Rng + ?Sized>(n: usize, theta: f64, t: f64, rng: &mut R) -> Result<Partition> {
    plancherel_growth_step(&Partition::empty(), n, theta, t / theta, rng)
}

const MAX_STRIP: usize = 400;

/// One `Alpha(c)` step by lazy inverse CDF over horizontal strips.
pub fn alpha_strip_step<R: Rng + ?Sized>(lambda: &Partition, n: usize, theta: f64, c: f64, rng: &mut R) -> Result<Partition> {
    let u: f64 = rng.random();
    let log_norm = n as f64 * theta * (-c).ln_1p();
    let base = log_eval_ones_f64(lambda, n, theta);
    let mut acc = 0.0;
    let mut last = lambda.clone();
    for k in 0..=MAX_STRIP {
        for mu in horizontal_strips(lambda, k, n) {
            let lp = log_norm + k as f64 * c.ln() + phi_horizontal_f64(&mu, lambda, theta).ln() + log_eval_ones_f64(&mu, n, theta) - base;
            acc += lp.exp();
            if u < acc {
                return Ok(mu);
            }
            last = mu;
        }
    }
    if 1.0 - acc < 1e-9 {
        // roundoff left u just above the accumulated mass
        return Ok(last);
    }
    Err(Error::Cap(format!("alpha step exceeded {MAX_STRIP} boxes")))
}

/// A draw from the pure-alpha measure `Alpha(c^m)` as `m` strip steps from `∅`.
pub fn sample_alpha_chain<R: Rng + ?Sized>(n: usize, theta: f64, c: f64, m: usize, rng: &mut R) -> Result<Partition> {
    let mut cur = Partition::empty();
    for _ in 0..m {
        cur = alpha_strip_step(&cur, n, theta, c, rng)?;
    }
    Ok(cur)
}
