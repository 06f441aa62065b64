//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use jackht::combinatorics::Partition;
use jackht::rational::{pow, q, qi, Q};
use jackht::transforms::{CumulantSeq, Gamma};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in `[-9, 9]` and denominator in `[1, 6]`.
pub fn random_q(r: &mut ChaCha8Rng) -> Q {
    q(r.random_range(-9..=9), r.random_range(1..=6))
}

pub fn random_kappa(r: &mut ChaCha8Rng, len: usize, gamma: Gamma) -> CumulantSeq {
    CumulantSeq::new((0..len).map(|_| random_q(r)).collect(), gamma).unwrap()
}

pub fn catalan(n: u64) -> u64 {
    let mut c = 1u64;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// `Δ_γ(x^{1+n})(x)/(1+n)` by direct subtraction.
pub fn div_diff_power(n: usize, x: &Q, gamma: &Q) -> Q {
    let e = n as i64 + 1;
    (pow(x, e) - pow(&(x - gamma), e)) / gamma / qi(e)
}

/// All Motzkin paths of length `len` by brute force over `{-1,0,1}^len`.
pub fn motzkin_paths(len: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let total = 3usize.pow(len as u32);
    for code in 0..total {
        let mut c = code;
        let mut steps = Vec::with_capacity(len);
        for _ in 0..len {
            steps.push((c % 3) as i32 - 1);
            c /= 3;
        }
        let mut h = 0;
        let ok = steps.iter().all(|s| {
            h += s;
            h >= 0
        });
        if ok && h == 0 {
            out.push(steps);
        }
    }
    out
}

/// Moments of the Plancherel limit with `κ = (t, 0, 0, …)` summed over
/// Motzkin paths: `t^{#up} Δ_γ(x^{1+h0})(t)/(1+h0) Π_j (j+t)^{#flat at j}
/// (j+γ)^{#down from j}`.
pub fn motzkin_moment(len: usize, t: &Q, gamma: &Q) -> Q {
    let mut acc = Q::zero();
    for steps in motzkin_paths(len) {
        let mut h = 0i64;
        let mut h0 = 0usize;
        let mut w = Q::one();
        for s in steps {
            match s {
                1 => {
                    w *= t;
                    h += 1;
                }
                0 if h == 0 => h0 += 1,
                0 => w *= qi(h) + t,
                _ => {
                    w *= qi(h) + gamma;
                    h -= 1;
                }
            }
        }
        acc += w * div_diff_power(h0, t, gamma);
    }
    acc
}

/// Leading coefficient of a polynomial of degree at most `d` from its values
/// at `0, 1, …, d`: the `d`-th forward difference over `d!`.
pub fn leading_coefficient(values: &[Q]) -> Q {
    let mut v = values.to_vec();
    let d = v.len() - 1;
    for _ in 0..d {
        v = v.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let mut f = Q::one();
    for k in 1..=d {
        f *= qi(k as i64);
    }
    &v[0] / f
}

/// Skew semistandard tableaux of shape `λ/μ` and content `ν` whose reverse
/// reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !lambda.contains(mu) || lambda.size() != mu.size() + nu.size() {
        return 0;
    }
    let rows = lambda.len();
    // cells row by row, left to right
    let cells: Vec<(usize, usize)> = (1..=rows)
        .flat_map(|i| (mu.part(i) + 1..=lambda.part(i)).map(move |j| (i, j)))
        .collect();
    let mut fill: std::collections::HashMap<(usize, usize), usize> = Default::default();
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        fill: &mut std::collections::HashMap<(usize, usize), usize>,
        nu: &Partition,
        count: &mut u64,
    ) {
        if k == cells.len() {
            // content and lattice condition on the reverse reading word
            let mut word = Vec::new();
            let mut by_row: Vec<_> = cells.to_vec();
            by_row.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            for c in by_row {
                word.push(fill[&c]);
            }
            let mut seen = vec![0usize; nu.len() + 2];
            for &x in &word {
                seen[x] += 1;
                if x > 1 && seen[x] > seen[x - 1] {
                    return;
                }
            }
            if (1..=nu.len()).all(|i| seen[i] == nu.part(i)) {
                *count += 1;
            }
            return;
        }
        let (i, j) = cells[k];
        let left = fill.get(&(i, j.wrapping_sub(1))).copied().unwrap_or(1);
        let above = fill.get(&(i.wrapping_sub(1), j)).map(|a| a + 1).unwrap_or(1);
        for x in left.max(above)..=nu.len() {
            fill.insert((i, j), x);
            rec(k + 1, cells, fill, nu, count);
        }
        fill.remove(&(i, j));
    }
    let mut count = 0;
    rec(0, &cells, &mut fill, nu, &mut count);
    count
}

/// `s_λ(1^N) = Π (N + j − i)/hook`.
pub fn schur_dim(lambda: &Partition, n: usize) -> Q {
    let conj = lambda.conjugate();
    let mut acc = Q::one();
    for (i, j) in lambda.boxes() {
        let hook = lambda.part(i) - j + conj.part(j) - i + 1;
        acc *= qi(n as i64 + j as i64 - i as i64) / qi(hook as i64);
    }
    acc
}
