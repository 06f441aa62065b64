//! Jack-positive specializations and the Cauchy kernel.
//!
//! A specialization is described by Thoma-type data (α, β, δ), by a finite
//! list of power sums, or by unions and scalings of those. Internally every
//! descriptor is flattened into weighted atoms: one alpha variable, one beta
//! variable, a Plancherel part, or a finite power-sum list.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{partitions_of, Partition};
use crate::error::{invalid, Error, Result};
use crate::rational::{pow, qi, serde_q, serde_qvec, to_f64, Q};

use super::basis::invert;
use super::construct::{jack_p_powersums, jack_q_powersums};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecKind {
    PureAlpha {
        #[serde(with = "serde_qvec")]
        values: Vec<Q>,
    },
    PureBeta {
        #[serde(with = "serde_qvec")]
        values: Vec<Q>,
    },
    Plancherel {
        #[serde(with = "serde_q")]
        delta: Q,
    },
    Union {
        parts: Vec<SpecKind>,
    },
    Scaled {
        #[serde(with = "serde_q")]
        t: Q,
        inner: Box<SpecKind>,
    },
    /// `p_1, p_2, …` given explicitly; later power sums are zero.
    PowerSums {
        #[serde(with = "serde_qvec")]
        values: Vec<Q>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDescriptor {
    pub kind: SpecKind,
    #[serde(with = "serde_q")]
    pub theta: Q,
}

fn validate_kind(k: &SpecKind) -> Result<()> {
    match k {
        SpecKind::PureAlpha { values } | SpecKind::PureBeta { values } => {
            if values.iter().any(|v| v.is_negative()) {
                return invalid("Thoma parameters must be nonnegative");
            }
            if values.windows(2).any(|w| w[0] < w[1]) {
                return invalid("Thoma parameters must be weakly decreasing");
            }
            Ok(())
        }
        SpecKind::Plancherel { delta } => {
            if delta.is_negative() {
                return invalid("δ must be nonnegative");
            }
            Ok(())
        }
        SpecKind::Union { parts } => parts.iter().try_for_each(validate_kind),
        SpecKind::Scaled { t, inner } => {
            if t.is_negative() {
                return invalid("scaling factor must be nonnegative");
            }
            validate_kind(inner)
        }
        SpecKind::PowerSums { .. } => Ok(()),
    }
}

impl SpecDescriptor {
    pub fn new(kind: SpecKind, theta: Q) -> Result<Self> {
        if theta <= Q::zero() {
            return invalid("θ must be positive");
        }
        validate_kind(&kind)?;
        Ok(SpecDescriptor { kind, theta })
    }

    /// `m` alpha variables all equal to `c`.
    pub fn alpha_repeated(c: Q, m: usize, theta: Q) -> Result<Self> {
        Self::new(SpecKind::PureAlpha { values: vec![c; m] }, theta)
    }

    pub fn ones(n: usize, theta: Q) -> Result<Self> {
        Self::alpha_repeated(Q::one(), n, theta)
    }

    pub fn beta_repeated(b: Q, m: usize, theta: Q) -> Result<Self> {
        Self::new(SpecKind::PureBeta { values: vec![b; m] }, theta)
    }

    pub fn plancherel(delta: Q, theta: Q) -> Result<Self> {
        Self::new(SpecKind::Plancherel { delta }, theta)
    }

    /// `tρ`: all power sums multiplied by `t`.
    pub fn scaled(&self, t: Q) -> Result<Self> {
        Self::new(
            SpecKind::Scaled {
                t,
                inner: Box::new(self.kind.clone()),
            },
            self.theta.clone(),
        )
    }

    /// Some single Plancherel parameter, if this is a (scaled) pure Plancherel spec.
    pub fn as_plancherel(&self) -> Option<Q> {
        let atoms = self.atoms();
        if atoms.iter().all(|(_, a)| matches!(a, Atom::Delta(_))) {
            Some(atoms.iter().map(|(w, a)| match a {
                Atom::Delta(d) => w * d,
                _ => unreachable!(),
            }).sum())
        } else {
            None
        }
    }

    /// The value `c` when the spec is exactly one alpha variable.
    pub fn as_single_alpha(&self) -> Option<Q> {
        match self.atoms().as_slice() {
            [(w, Atom::Alpha(a))] if w.is_one() => Some(a.clone()),
            _ => None,
        }
    }

    /// The value `b` when the spec is exactly one beta variable.
    pub fn as_single_beta(&self) -> Option<Q> {
        match self.atoms().as_slice() {
            [(w, Atom::Beta(b))] if w.is_one() => Some(b.clone()),
            _ => None,
        }
    }

    pub(crate) fn atoms(&self) -> Vec<(Q, Atom)> {
        let mut out = Vec::new();
        flatten(&self.kind, &Q::one(), &mut out);
        out.retain(|(w, a)| !w.is_zero() && !a.is_null());
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Atom {
    Alpha(Q),
    Beta(Q),
    Delta(Q),
    Finite(Vec<Q>),
}

impl Atom {
    fn is_null(&self) -> bool {
        match self {
            Atom::Alpha(x) | Atom::Beta(x) | Atom::Delta(x) => x.is_zero(),
            Atom::Finite(v) => v.iter().all(|x| x.is_zero()),
        }
    }

    fn pk(&self, k: usize, theta: &Q) -> Q {
        match self {
            Atom::Alpha(a) => pow(a, k as i64),
            Atom::Beta(b) => pow(&-theta, k as i64 - 1) * pow(b, k as i64),
            Atom::Delta(d) => {
                if k == 1 {
                    d.clone()
                } else {
                    Q::zero()
                }
            }
            Atom::Finite(v) => v.get(k - 1).cloned().unwrap_or_else(Q::zero),
        }
    }
}

fn flatten(k: &SpecKind, w: &Q, out: &mut Vec<(Q, Atom)>) {
    match k {
        SpecKind::PureAlpha { values } => {
            out.extend(values.iter().map(|v| (w.clone(), Atom::Alpha(v.clone()))))
        }
        SpecKind::PureBeta { values } => {
            out.extend(values.iter().map(|v| (w.clone(), Atom::Beta(v.clone()))))
        }
        SpecKind::Plancherel { delta } => out.push((w.clone(), Atom::Delta(delta.clone()))),
        SpecKind::Union { parts } => parts.iter().for_each(|p| flatten(p, w, out)),
        SpecKind::Scaled { t, inner } => flatten(inner, &(w * t), out),
        SpecKind::PowerSums { values } => out.push((w.clone(), Atom::Finite(values.clone()))),
    }
}

/// `p_k(ρ)`, `k ≥ 1`.
pub fn power_sum(rho: &SpecDescriptor, k: usize) -> Q {
    assert!(k >= 1, "power sums are indexed from 1");
    rho.atoms()
        .iter()
        .map(|(w, a)| w * a.pk(k, &rho.theta))
        .sum()
}

fn power_sum_fn(rho: &SpecDescriptor) -> impl Fn(usize) -> Q + '_ {
    let atoms = rho.atoms();
    move |k| atoms.iter().map(|(w, a)| w * a.pk(k, &rho.theta)).sum()
}

/// `P_λ(ρ; θ)`.
pub fn jack_on_spec(lambda: &Partition, rho: &SpecDescriptor, degree_cap: usize) -> Result<Q> {
    let e = jack_p_powersums(lambda, &rho.theta, degree_cap)?;
    Ok(e.eval(&power_sum_fn(rho)))
}

/// `Q_λ(ρ; θ)`.
pub fn q_on_spec(lambda: &Partition, rho: &SpecDescriptor, degree_cap: usize) -> Result<Q> {
    let e = jack_q_powersums(lambda, &rho.theta, degree_cap)?;
    Ok(e.eval(&power_sum_fn(rho)))
}

type QInvCache = RwLock<HashMap<(usize, Q), Arc<(Vec<Partition>, Vec<Vec<Q>>)>>>;

fn q_inverse_cache() -> &'static QInvCache {
    static C: OnceLock<QInvCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Inverse of the matrix whose row `κ` holds the power-sum coefficients of
/// `Q_κ`, for all `|κ| = d`.
fn q_basis_inverse(d: usize, theta: &Q, degree_cap: usize) -> Result<Arc<(Vec<Partition>, Vec<Vec<Q>>)>> {
    let key = (d, theta.clone());
    if let Some(m) = q_inverse_cache().read().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let parts = partitions_of(d, d.max(1), None);
    let index: HashMap<&Partition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut mat = vec![vec![Q::zero(); parts.len()]; parts.len()];
    for (r, kappa) in parts.iter().enumerate() {
        let e = jack_q_powersums(kappa, theta, degree_cap)?;
        for (tau, c) in &e.terms {
            mat[r][index[tau]] = c.clone();
        }
    }
    let inv = invert(&mat).expect("Jack functions form a basis");
    let v = Arc::new((parts, inv));
    q_inverse_cache().write().unwrap().insert(key, v.clone());
    Ok(v)
}

/// `Q_{λ/μ}(ρ; θ)` through `Q_λ(x, y) = Σ_κ Q_κ(y) Q_{λ/κ}(x)`: expand `Q_λ`
/// in power sums of the joint alphabet, specialize `x → ρ`, keep the part of
/// `y`-degree `|μ|` and read off its `Q_μ(y)` coordinate.
pub fn skew_q_on_spec(lambda: &Partition, mu: &Partition, rho: &SpecDescriptor, degree_cap: usize) -> Result<Q> {
    if !lambda.contains(mu) {
        return Ok(Q::zero());
    }
    if lambda == mu {
        return Ok(Q::one());
    }
    if mu.is_empty() {
        return q_on_spec(lambda, rho, degree_cap);
    }
    let d = mu.size();
    let theta = &rho.theta;
    let e = jack_q_powersums(lambda, theta, degree_cap)?;
    let pk = power_sum_fn(rho);
    let mut pk_cache: HashMap<usize, Q> = HashMap::new();
    let mut y_part: BTreeMap<Partition, Q> = BTreeMap::new();
    for (tau, c) in &e.terms {
        let parts = tau.parts();
        let l = parts.len();
        for mask in 0u32..(1u32 << l) {
            let ysum: usize = (0..l).filter(|i| mask >> i & 1 == 1).map(|i| parts[i]).sum();
            if ysum != d {
                continue;
            }
            let mut coef = c.clone();
            let mut ys = Vec::new();
            for (i, &k) in parts.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    ys.push(k);
                } else {
                    let v = pk_cache.entry(k).or_insert_with(|| pk(k)).clone();
                    coef *= v;
                }
            }
            if !coef.is_zero() {
                *y_part.entry(Partition::from_unsorted(ys)).or_insert_with(Q::zero) += coef;
            }
        }
    }
    let inv = q_basis_inverse(d, theta, degree_cap)?;
    let (parts, m) = (&inv.0, &inv.1);
    let col = parts.iter().position(|p| p == mu).expect("μ has degree d");
    let mut acc = Q::zero();
    for (r, tau) in parts.iter().enumerate() {
        if let Some(v) = y_part.get(tau) {
            acc += v * &m[r][col];
        }
    }
    Ok(acc)
}

/// `H(ρ1; ρ2) = exp(θ Σ_k p_k(ρ1) p_k(ρ2)/k)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CauchyValue {
    /// `θ Σ_{k≤cap} p_k p_k / k`, exact.
    #[serde(with = "serde_q")]
    pub truncated_exponent: Q,
    /// Bound on the omitted part of the exponent series.
    pub tail_bound: f64,
    /// True when the truncated exponent is the whole series.
    pub exact_exponent: bool,
    /// Closed-form logarithm of `H`.
    pub log_value: f64,
    pub value: f64,
}

/// Closed-form `log H` for a pair of atoms together with the omitted tail of
/// the truncated series and whether it is finite.
fn atom_pair(a: &Atom, b: &Atom, theta: &Q, cap: usize) -> Result<(f64, f64, bool)> {
    use Atom::*;
    let th = to_f64(theta);
    let series_tail = |r: f64, scale: f64| -> f64 {
        if r >= 1.0 {
            f64::INFINITY
        } else {
            scale * r.powi(cap as i32 + 1) / ((cap as f64 + 1.0) * (1.0 - r))
        }
    };
    Ok(match (a, b) {
        (Delta(d), other) | (other, Delta(d)) => {
            let p1 = other.pk(1, theta);
            (th * to_f64(d) * to_f64(&p1), 0.0, true)
        }
        (Finite(v), other) | (other, Finite(v)) => {
            let mut s = Q::zero();
            for k in 1..=v.len() {
                s += &v[k - 1] * other.pk(k, theta) / qi(k as i64);
            }
            let s = theta * s;
            let exact = v.len() <= cap;
            let tail = if exact {
                0.0
            } else {
                let mut t = Q::zero();
                for k in cap + 1..=v.len() {
                    t += (&v[k - 1] * other.pk(k, theta) / qi(k as i64)).abs();
                }
                to_f64(&(theta * t))
            };
            (to_f64(&s), tail, exact)
        }
        (Alpha(x), Alpha(y)) => {
            let r = to_f64(&(x * y));
            if r >= 1.0 {
                return Err(Error::Divergent(format!("α·α' = {r} ≥ 1")));
            }
            (-th * (-r).ln_1p(), series_tail(r, th), false)
        }
        (Alpha(x), Beta(y)) | (Beta(y), Alpha(x)) => {
            let r = to_f64(&(theta * x * y));
            // alternating series; tail bounded by the first omitted term when r ≤ 1
            let tail = if r <= 1.0 {
                r.powi(cap as i32 + 1) / (cap as f64 + 1.0)
            } else {
                f64::INFINITY
            };
            (r.ln_1p(), tail, false)
        }
        (Beta(x), Beta(y)) => {
            let r = to_f64(&(theta * theta * x * y));
            if r >= 1.0 {
                return Err(Error::Divergent(format!("θ²β·β' = {r} ≥ 1")));
            }
            (-(-r).ln_1p() / th, series_tail(r, 1.0 / th), false)
        }
    })
}

pub fn cauchy_h(rho1: &SpecDescriptor, rho2: &SpecDescriptor, degree_cap: usize) -> Result<CauchyValue> {
    if rho1.theta != rho2.theta {
        return invalid("specializations use different θ");
    }
    let theta = &rho1.theta;
    let a1 = rho1.atoms();
    let a2 = rho2.atoms();
    let mut log_value = 0.0;
    let mut tail = 0.0;
    let mut exact = true;
    for (w1, x) in &a1 {
        for (w2, y) in &a2 {
            let (l, t, e) = atom_pair(x, y, theta, degree_cap)?;
            let w = to_f64(&(w1 * w2));
            log_value += w * l;
            tail += w.abs() * t;
            exact &= e;
        }
    }
    let p1 = power_sum_fn(rho1);
    let p2 = power_sum_fn(rho2);
    let mut s = Q::zero();
    for k in 1..=degree_cap {
        s += p1(k) * p2(k) / qi(k as i64);
    }
    let truncated_exponent = theta * s;
    if exact {
        tail = 0.0;
        log_value = to_f64(&truncated_exponent);
    }
    Ok(CauchyValue {
        truncated_exponent,
        tail_bound: tail,
        exact_exponent: exact,
        log_value,
        value: log_value.exp(),
    })
}

/// `log H(ρ; 1^N)`.
pub fn log_h_with_ones(rho: &SpecDescriptor, n: usize) -> Result<f64> {
    let ones = SpecDescriptor::ones(n, rho.theta.clone())?;
    Ok(cauchy_h(rho, &ones, 1)?.log_value)
}
