//! Transition matrices between monomial and power-sum bases, per degree.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::combinatorics::{partitions_of, Partition};
use num_bigint::BigInt;

use crate::rational::Q;

/// A homogeneous symmetric function written as `Σ_τ c_τ p_τ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PowerSumExpansion {
    pub terms: BTreeMap<Partition, Q>,
}

impl PowerSumExpansion {
    pub fn one() -> Self {
        PowerSumExpansion {
            terms: BTreeMap::from([(Partition::empty(), Q::one())]),
        }
    }

    pub fn from_dense(parts: Vec<Partition>, coeffs: Vec<Q>) -> Self {
        PowerSumExpansion {
            terms: parts
                .into_iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        PowerSumExpansion {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Evaluate given `p_k` values (`pk(k)` for `k ≥ 1`).
    pub fn eval(&self, pk: &dyn Fn(usize) -> Q) -> Q {
        let mut cache: HashMap<usize, Q> = HashMap::new();
        let mut acc = Q::zero();
        for (tau, c) in &self.terms {
            let mut t = c.clone();
            for &k in tau.parts() {
                let v = cache.entry(k).or_insert_with(|| pk(k)).clone();
                t *= v;
                if t.is_zero() {
                    break;
                }
            }
            acc += t;
        }
        acc
    }
}

pub struct BasisConversion {
    /// Partitions of the degree, lexicographically descending.
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// Row-major matrix; see the constructor functions for the meaning.
    pub matrix: Vec<Vec<Q>>,
}

/// Number of maps from the parts of `tau` to the rows of `mu` whose fibres
/// sum to the parts of `mu`; equals the coefficient of `m_μ` in `p_τ`.
fn assignments(tau: &[usize], mu: &[usize]) -> u128 {
    fn rec(k: usize, tau: &[usize], rem: &mut Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), u128>) -> u128 {
        if k == tau.len() {
            return rem.iter().all(|&r| r == 0) as u128;
        }
        if let Some(&v) = memo.get(&(k, rem.clone())) {
            return v;
        }
        let mut total = 0;
        for i in 0..rem.len() {
            if rem[i] >= tau[k] {
                rem[i] -= tau[k];
                total += rec(k + 1, tau, rem, memo);
                rem[i] += tau[k];
            }
        }
        memo.insert((k, rem.clone()), total);
        total
    }
    rec(0, tau, &mut mu.to_vec(), &mut HashMap::new())
}

type ConvCache = RwLock<HashMap<usize, Arc<BasisConversion>>>;

fn p_to_m_cache() -> &'static ConvCache {
    static C: OnceLock<ConvCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn m_to_p_cache() -> &'static ConvCache {
    static C: OnceLock<ConvCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `matrix[τ][μ]` = coefficient of `m_μ` in `p_τ`.
pub fn p_to_m_matrix(n: usize) -> Arc<BasisConversion> {
    if let Some(c) = p_to_m_cache().read().unwrap().get(&n) {
        return c.clone();
    }
    let parts = partitions_of(n, n.max(1), None);
    let index: HashMap<_, _> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let matrix = parts
        .iter()
        .map(|tau| {
            parts
                .iter()
                .map(|mu| Q::from_integer(BigInt::from(assignments(tau.parts(), mu.parts()))))
                .collect()
        })
        .collect();
    let c = Arc::new(BasisConversion { parts, index, matrix });
    p_to_m_cache().write().unwrap().insert(n, c.clone());
    c
}

/// `matrix[μ][τ]` = coefficient of `p_τ` in `m_μ`.
pub fn m_to_p_matrix(n: usize) -> Arc<BasisConversion> {
    if let Some(c) = m_to_p_cache().read().unwrap().get(&n) {
        return c.clone();
    }
    let a = p_to_m_matrix(n);
    let inv = invert(&a.matrix).expect("power sums form a basis");
    let c = Arc::new(BasisConversion {
        parts: a.parts.clone(),
        index: a.index.clone(),
        matrix: inv,
    });
    m_to_p_cache().write().unwrap().insert(n, c.clone());
    c
}

/// Exact Gauss–Jordan inverse. `None` if singular.
pub(crate) fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            if !a[col][j].is_zero() {
                a[col][j] /= &p;
            }
            if !inv[col][j].is_zero() {
                inv[col][j] /= &p;
            }
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                if !a[col][j].is_zero() {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
                if !inv[col][j].is_zero() {
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}
