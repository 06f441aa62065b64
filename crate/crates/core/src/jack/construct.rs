//! Construction of `P_λ(x_1..x_N; θ)` and its closed-form evaluations.
//!
//! The operator used is
//! `D = Σ_i (x_i∂_i)² + θ Σ_{i<j} (x_i+x_j)/(x_i−x_j) (x_i∂_i − x_j∂_j)`,
//! with `D P_λ = e_λ P_λ`, `e_λ = Σ λ_i² + θ Σ_i (N+1−2i) λ_i`. On monomial
//! symmetric functions `D m_μ = e_μ m_μ + Σ_{ν◁μ} d_{μν} m_ν`, where `ν` runs
//! over the vectors obtained by moving two parts of `μ` strictly towards each
//! other.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::combinatorics::{partitions_of, Partition, Signature};
use crate::error::{invalid, Error, Result};
use crate::poly::SymPoly;
use crate::rational::{qi, Q};

use super::basis::{m_to_p_matrix, PowerSumExpansion};

/// `λ` with the number of variables and θ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JackIndex {
    pub lambda: Partition,
    pub n: usize,
    pub theta: Q,
}

type Key = (Partition, usize, Q);
type JackCache = RwLock<HashMap<Key, Arc<SymPoly>>>;

fn jack_cache() -> &'static JackCache {
    static C: OnceLock<JackCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn check_theta(theta: &Q) -> Result<()> {
    if *theta <= Q::zero() {
        return invalid("θ must be positive");
    }
    Ok(())
}

fn check_degree(d: usize, cap: usize) -> Result<()> {
    if d > cap {
        return Err(Error::Cap(format!("degree {d} exceeds degree cap {cap}")));
    }
    Ok(())
}

fn eigenvalue(nu: &[usize], n: usize, theta: &Q) -> Q {
    let mut sq = 0i64;
    let mut lin = 0i64;
    for (i, &v) in nu.iter().enumerate() {
        let v = v as i64;
        sq += v * v;
        lin += (n as i64 + 1 - 2 * (i as i64 + 1)) * v;
    }
    qi(sq) + theta * qi(lin)
}

fn build(lambda: &Partition, n: usize, theta: &Q) -> SymPoly {
    let mut out = SymPoly::zero(n);
    if lambda.len() > n {
        return out;
    }
    let pad = |p: &Partition| -> Vec<usize> {
        let mut v = p.parts().to_vec();
        v.resize(n, 0);
        v
    };
    let e_lambda = eigenvalue(&pad(lambda), n, theta);
    let two_theta = theta * qi(2);
    let mut coef: HashMap<Vec<usize>, Q> = HashMap::new();
    coef.insert(pad(lambda), Q::one());
    for nu in partitions_of(lambda.size(), n, None) {
        if nu == *lambda || !nu.dominated_by(lambda) {
            continue;
        }
        let v = pad(&nu);
        let mut acc = Q::zero();
        for i in 0..n {
            for j in i + 1..n {
                let s = v[i] + v[j];
                for p in v[i] + 1..=s {
                    let q = s - p;
                    let mut a = v.clone();
                    a[i] = p;
                    a[j] = q;
                    a.sort_unstable_by(|x, y| y.cmp(x));
                    if let Some(c) = coef.get(&a) {
                        acc += &two_theta * qi((p - q) as i64) * c;
                    }
                }
            }
        }
        if !acc.is_zero() {
            let c = acc / (&e_lambda - eigenvalue(&v, n, theta));
            coef.insert(v, c);
        }
    }
    for (k, c) in coef {
        out.add_term(k.into_iter().map(|e| e as i64).collect(), c);
    }
    out
}

pub(crate) fn jack_p_cached(lambda: &Partition, n: usize, theta: &Q) -> Arc<SymPoly> {
    let key = (lambda.clone(), n, theta.clone());
    if let Some(p) = jack_cache().read().unwrap().get(&key) {
        return p.clone();
    }
    let p = Arc::new(build(lambda, n, theta));
    jack_cache().write().unwrap().insert(key, p.clone());
    p
}

/// `P_λ(x_1..x_N; θ)` in the monomial-symmetric basis. Zero when `ℓ(λ) > N`.
pub fn jack_p(idx: &JackIndex, degree_cap: usize) -> Result<SymPoly> {
    check_theta(&idx.theta)?;
    check_degree(idx.lambda.size(), degree_cap)?;
    if idx.n == 0 {
        return invalid("number of variables must be positive");
    }
    Ok((*jack_p_cached(&idx.lambda, idx.n, &idx.theta)).clone())
}

/// Laurent Jack polynomial `(x_1⋯x_N)^{−M} P_{λ+M}` with the smallest
/// `M ≥ 0` making `λ+M` a partition.
pub fn jack_laurent_p(sig: &Signature, theta: &Q, degree_cap: usize) -> Result<SymPoly> {
    let m = (-sig.last()).max(0);
    jack_laurent_p_shift(sig, theta, m, degree_cap)
}

/// Same as [`jack_laurent_p`] with an explicit shift `M` (must make `λ+M ≥ 0`).
pub fn jack_laurent_p_shift(sig: &Signature, theta: &Q, m: i64, degree_cap: usize) -> Result<SymPoly> {
    let shifted = sig.shift(m);
    let lambda = shifted
        .to_partition()
        .ok_or_else(|| Error::Invalid(format!("shift {m} leaves negative entries")))?;
    let p = jack_p(
        &JackIndex {
            lambda,
            n: sig.n(),
            theta: theta.clone(),
        },
        degree_cap,
    )?;
    Ok(p.shift(-m))
}

/// `P_λ(1^N; θ)` by the box product.
pub fn jack_eval_ones(lambda: &Partition, n: usize, theta: &Q) -> Q {
    let conj = lambda.conjugate();
    let nt = theta * qi(n as i64);
    let mut acc = Q::one();
    for (i, j) in lambda.boxes() {
        let num = &nt + qi(j as i64 - 1) - theta * qi(i as i64 - 1);
        if num.is_zero() {
            return Q::zero();
        }
        let (den, _) = lambda.hook_pair(&conj, i, j, theta);
        acc = acc * num / den;
    }
    acc
}

/// `Q_λ / P_λ`.
pub fn q_factor(lambda: &Partition, theta: &Q) -> Q {
    let conj = lambda.conjugate();
    let mut acc = Q::one();
    for (i, j) in lambda.boxes() {
        let (a, b) = lambda.hook_pair(&conj, i, j, theta);
        acc = acc * a / b;
    }
    acc
}

type PsKey = (Partition, Q);
type PsCache = RwLock<HashMap<PsKey, Arc<PowerSumExpansion>>>;

fn ps_cache() -> &'static PsCache {
    static C: OnceLock<PsCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `P_λ` as a symmetric function in the power-sum basis.
pub fn jack_p_powersums(lambda: &Partition, theta: &Q, degree_cap: usize) -> Result<Arc<PowerSumExpansion>> {
    check_theta(theta)?;
    let n = lambda.size();
    check_degree(n, degree_cap)?;
    let key = (lambda.clone(), theta.clone());
    if let Some(e) = ps_cache().read().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let exp = if n == 0 {
        PowerSumExpansion::one()
    } else {
        // with N = |λ| variables every m_μ of degree |λ| survives
        let p = jack_p_cached(lambda, n, theta);
        let conv = m_to_p_matrix(n);
        let mut coeffs = vec![Q::zero(); conv.parts.len()];
        for (k, c) in p.terms() {
            let mu = Partition::from_unsorted(k.iter().map(|&e| e as usize).collect());
            let row = conv.index[&mu];
            for (col, b) in conv.matrix[row].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[col] += c * b;
                }
            }
        }
        PowerSumExpansion::from_dense(conv.parts.clone(), coeffs)
    };
    let exp = Arc::new(exp);
    ps_cache().write().unwrap().insert(key, exp.clone());
    Ok(exp)
}

/// `Q_λ` in the power-sum basis.
pub fn jack_q_powersums(lambda: &Partition, theta: &Q, degree_cap: usize) -> Result<PowerSumExpansion> {
    let p = jack_p_powersums(lambda, theta, degree_cap)?;
    Ok(p.scale(&q_factor(lambda, theta)))
}
