//! Closed forms for skew functions on small specializations: one alpha
//! variable (horizontal strips), one beta variable (vertical strips) and the
//! Plancherel specialization (chains of single boxes).
//!
//! These serve as fast paths for Markov-chain transitions; tests check them
//! against the power-sum route in `spec.rs`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::combinatorics::Partition;
use crate::rational::{qi, Q};

use super::construct::q_factor;

/// `b_λ(s) = (a + θl + θ)/(a + θl + 1)` for a cell of `λ`, 1 outside.
fn b_cell(lambda: &Partition, conj: &Partition, i: usize, j: usize, theta: &Q) -> Q {
    if lambda.part(i) < j {
        return Q::one();
    }
    let (a, b) = lambda.hook_pair(conj, i, j, theta);
    a / b
}

/// `φ_{μ/λ}` with `Q_{μ/λ}(x) = φ_{μ/λ} x^{|μ/λ|}` in one variable.
/// Returns 0 unless `μ/λ` is a horizontal strip.
pub fn phi_horizontal(mu: &Partition, lambda: &Partition, theta: &Q) -> Q {
    if !mu.is_horizontal_strip_over(lambda) {
        return Q::zero();
    }
    let (mc, lc) = (mu.conjugate(), lambda.conjugate());
    let mut acc = Q::one();
    for j in 1..=mu.first() {
        if mc.part(j) == lc.part(j) {
            continue;
        }
        for i in 1..=mc.part(j) {
            acc *= b_cell(mu, &mc, i, j, theta) / b_cell(lambda, &lc, i, j, theta);
        }
    }
    acc
}

/// `φ` for adding one box in row `row` (1-based).
pub fn single_box_phi(lambda: &Partition, row: usize, theta: &Q) -> Q {
    phi_horizontal(&lambda.add_box(row), lambda, theta)
}

/// `ψ` with `Q_{μ/λ}(Beta(b); θ) = ψ · (θb)^{|μ/λ|}`; zero unless `μ/λ` is a
/// vertical strip.
pub fn psi_vertical_beta(mu: &Partition, lambda: &Partition, theta: &Q) -> Q {
    if !mu.is_vertical_strip_over(lambda) {
        return qi(0);
    }
    let dual = theta.recip();
    let (mc, lc) = (mu.conjugate(), lambda.conjugate());
    phi_horizontal(&mc, &lc, &dual) * q_factor(&lc, &dual) / q_factor(&mc, &dual)
}

/// For every `μ ⊇ λ` with `ℓ(μ) ≤ max_rows` and `|μ/λ| ≤ max_boxes`, the sum
/// over standard fillings of `μ/λ` of the product of single-box `φ`s. Then
/// `Q_{μ/λ}(Planch(δ)) = δ^k/k! · w` with `k = |μ/λ|`.
pub fn plancherel_skew_weights(lambda: &Partition, max_rows: usize, max_boxes: usize, theta: &Q) -> Vec<(Partition, usize, Q)> {
    let mut out = vec![(lambda.clone(), 0, Q::one())];
    let mut layer: BTreeMap<Partition, Q> = BTreeMap::from([(lambda.clone(), Q::one())]);
    for k in 1..=max_boxes {
        let mut next: BTreeMap<Partition, Q> = BTreeMap::new();
        for (nu, w) in &layer {
            for r in nu.addable_rows() {
                if r > max_rows {
                    continue;
                }
                let c = w * single_box_phi(nu, r, theta);
                *next.entry(nu.add_box(r)).or_insert_with(|| qi(0)) += c;
            }
        }
        out.extend(next.iter().map(|(p, w)| (p.clone(), k, w.clone())));
        layer = next;
    }
    out
}

/// `P_{λ+□}(1^N)/P_λ(1^N)` for a box added in row `row`, in floating point.
pub fn eval_ones_ratio_f64(lambda: &Partition, row: usize, n: usize, theta: f64) -> f64 {
    let r = row;
    let c = lambda.part(r) + 1;
    let conj = lambda.conjugate();
    let mut ratio = (n as f64 * theta + (c as f64 - 1.0) - theta * (r as f64 - 1.0)) / theta;
    for j in 1..c {
        let d = (lambda.part(r) - j) as f64 + theta * (conj.part(j) - r) as f64 + theta;
        ratio *= d / (d + 1.0);
    }
    for i in 1..r {
        let d = (lambda.part(i) - c) as f64 + theta * (conj.part(c) - i) as f64 + theta;
        ratio *= d / (d + theta);
    }
    ratio
}

/// Floating-point single-box `φ`, matching [`single_box_phi`].
pub fn single_box_phi_f64(lambda: &Partition, row: usize, theta: f64) -> f64 {
    let c = lambda.part(row) + 1;
    let conj = lambda.conjugate();
    let mut acc = theta;
    for i in 1..row {
        let base_old = (lambda.part(i) - c) as f64 + theta * (conj.part(c) - i) as f64;
        let base_new = base_old + theta;
        acc *= ((base_new + theta) / (base_new + 1.0)) / ((base_old + theta) / (base_old + 1.0));
    }
    acc
}

/// Floating-point [`phi_horizontal`]; the caller guarantees a horizontal strip.
pub fn phi_horizontal_f64(mu: &Partition, lambda: &Partition, theta: f64) -> f64 {
    let (mc, lc) = (mu.conjugate(), lambda.conjugate());
    let b = |p: &Partition, c: &Partition, i: usize, j: usize| -> f64 {
        if p.part(i) < j {
            return 1.0;
        }
        let base = (p.part(i) - j) as f64 + theta * (c.part(j) - i) as f64;
        (base + theta) / (base + 1.0)
    };
    let mut acc = 1.0;
    for j in 1..=mu.first() {
        if mc.part(j) == lc.part(j) {
            continue;
        }
        for i in 1..=mc.part(j) {
            acc *= b(mu, &mc, i, j) / b(lambda, &lc, i, j);
        }
    }
    acc
}

/// `ln P_λ(1^N)`, or `-∞` when `ℓ(λ) > N`.
pub fn log_eval_ones_f64(lambda: &Partition, n: usize, theta: f64) -> f64 {
    if lambda.len() > n {
        return f64::NEG_INFINITY;
    }
    let conj = lambda.conjugate();
    let mut acc = 0.0;
    for (i, j) in lambda.boxes() {
        let num = n as f64 * theta + (j - 1) as f64 - theta * (i - 1) as f64;
        let den = (lambda.part(i) - j) as f64 + theta * (conj.part(j) - i) as f64 + theta;
        acc += (num / den).ln();
    }
    acc
}
