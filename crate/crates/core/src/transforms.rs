//! Moment/cumulant transforms as weighted sums over Lukasiewicz paths.
//!
//! Every weight below depends on a path only through its [`PathStats`], so
//! each transform is a sum over the cached census of one length.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::paths::{path_census, path_statistics, LukasiewiczPath, PathStats};
use crate::rational::{fmt_q, parse_q, pow, qi, rising, serde_qvec, Q};

/// The parameter `γ ∈ (0, ∞]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gamma {
    Finite(Q),
    Infinite,
}

impl Gamma {
    pub fn finite(g: Q) -> Result<Self> {
        if g <= Q::zero() {
            return invalid(format!("γ must be positive, got {g}"));
        }
        Ok(Gamma::Finite(g))
    }

    pub fn value(&self) -> Option<&Q> {
        match self {
            Gamma::Finite(g) => Some(g),
            Gamma::Infinite => None,
        }
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gamma::Finite(g) => write!(f, "{}", fmt_q(g)),
            Gamma::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Gamma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_matches('"');
        if matches!(t, "inf" | "infinity" | "∞") {
            Ok(Gamma::Infinite)
        } else {
            Gamma::finite(parse_q(t)?)
        }
    }
}

impl Serialize for Gamma {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Gamma {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `κ_1, …, κ_L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CumulantSeq {
    #[serde(with = "serde_qvec")]
    pub values: Vec<Q>,
    pub gamma: Gamma,
}

/// `m_1, …, m_L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentSeq {
    #[serde(with = "serde_qvec")]
    pub values: Vec<Q>,
    pub gamma: Gamma,
}

impl CumulantSeq {
    pub fn new(values: Vec<Q>, gamma: Gamma) -> Result<Self> {
        if values.is_empty() {
            return invalid("cumulant sequence is empty");
        }
        Ok(CumulantSeq { values, gamma })
    }

    /// `κ_n`, zero past the stored prefix.
    pub fn get(&self, n: usize) -> Q {
        self.values.get(n - 1).cloned().unwrap_or_else(Q::zero)
    }
}

impl MomentSeq {
    pub fn new(values: Vec<Q>, gamma: Gamma) -> Result<Self> {
        if values.is_empty() {
            return invalid("moment sequence is empty");
        }
        Ok(MomentSeq { values, gamma })
    }
}

/// `(f(x) − f(x−γ))/γ` at `x = at`, for `f = Σ c_i x^i`.
pub fn divided_difference(poly_coeffs: &[Q], gamma: &Q, at: &Q) -> Result<Q> {
    if *gamma <= Q::zero() {
        return invalid("γ must be positive");
    }
    let eval = |x: &Q| {
        poly_coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    };
    Ok((eval(at) - eval(&(at - gamma))) / gamma)
}

/// `Δ_γ(x^{1+n}/(1+n))(κ) = (1/(1+n)) Σ_{i=0}^n κ^i (κ−γ)^{n−i}`.
pub fn ground_factor(n: usize, kappa1: &Q, gamma: &Q) -> Q {
    let shifted = kappa1 - gamma;
    let mut acc = Q::zero();
    let mut a = Q::one();
    for i in 0..=n {
        acc += &a * pow(&shifted, (n - i) as i64);
        a *= kappa1;
    }
    acc / qi(n as i64 + 1)
}

/// `(κ^{1+n} − (κ−1)^{1+n})/(1+n)`, the `γ = 1` ground factor.
fn ground_factor_fixed(n: usize, kappa1: &Q) -> Q {
    ground_factor(n, kappa1, &Q::one())
}

fn check_len(kappa: &CumulantSeq, len: usize) -> Result<()> {
    if kappa.values.len() < len {
        return invalid(format!("need {len} cumulants, got {}", kappa.values.len()));
    }
    Ok(())
}

fn up_down_factor(st: &PathStats, kappa: &CumulantSeq, gamma: Option<&Q>) -> Q {
    let mut w = Q::one();
    for (&j, &c) in &st.up_by_size {
        w *= pow(&(kappa.get(j) + kappa.get(j + 1)), c as i64);
    }
    if let Some(g) = gamma {
        for (&j, &c) in &st.down_from_height {
            w *= pow(&(qi(j as i64) + g), c as i64);
        }
    }
    w
}

/// The summand of one path in the `γ` transform.
pub fn stats_weight_gamma(st: &PathStats, kappa: &CumulantSeq, gamma: &Q) -> Q {
    let k1 = kappa.get(1);
    let mut w = ground_factor(st.horiz(0), &k1, gamma);
    for (&h, &c) in &st.horiz_at_height {
        if h > 0 {
            w *= pow(&(&k1 + qi(h as i64)), c as i64);
        }
    }
    w * up_down_factor(st, kappa, Some(gamma))
}

pub fn path_weight_gamma(path: &LukasiewiczPath, kappa: &CumulantSeq, gamma: &Q) -> Q {
    stats_weight_gamma(&path_statistics(path), kappa, gamma)
}

fn stats_weight_fixed(st: &PathStats, kappa: &CumulantSeq) -> Q {
    let k1 = kappa.get(1);
    let rest: usize = st.horiz_at_height.iter().filter(|(h, _)| **h > 0).map(|(_, c)| c).sum();
    ground_factor_fixed(st.horiz(0), &k1) * pow(&k1, rest as i64) * up_down_factor(st, kappa, None)
}

fn stats_weight_top(st: &PathStats, kappa: &CumulantSeq, gamma: &Q) -> Q {
    let horiz: usize = st.horiz_at_height.values().sum();
    let mut w = pow(&kappa.get(1), horiz as i64);
    for (&j, &c) in &st.up_by_size {
        w *= pow(&kappa.get(j + 1), c as i64);
    }
    for (&j, &c) in &st.down_from_height {
        w *= pow(&(qi(j as i64) + gamma), c as i64);
    }
    w
}

/// Weight when `κ_1 = γ`: the ground factor collapses to `γ^{h_0}/(1+h_0)`.
fn stats_weight_special(st: &PathStats, kappa: &CumulantSeq, gamma: &Q) -> Q {
    let mut w = Q::one() / qi(st.horiz(0) as i64 + 1);
    for (&h, &c) in &st.horiz_at_height {
        w *= pow(&(qi(h as i64) + gamma), c as i64);
    }
    w * up_down_factor(st, kappa, Some(gamma))
}

fn census_sum(len: usize, path_cap: usize, weight: impl Fn(&PathStats) -> Q) -> Result<Q> {
    let census = path_census(len, false, path_cap)?;
    Ok(census
        .iter()
        .map(|(st, mult)| weight(st) * qi(*mult as i64))
        .fold(Q::zero(), |a, b| a + b))
}

fn moments_with(
    kappa: &CumulantSeq,
    len: usize,
    path_cap: usize,
    weight: impl Fn(&PathStats) -> Q,
) -> Result<Vec<Q>> {
    check_len(kappa, len)?;
    (1..=len).map(|l| census_sum(l, path_cap, &weight)).collect()
}

/// `m = J_γ(κ)`. For `γ = ∞` this is [`moments_fixed_temp`].
pub fn moments_from_cumulants(kappa: &CumulantSeq, len: usize, path_cap: usize) -> Result<MomentSeq> {
    let g = match &kappa.gamma {
        Gamma::Infinite => return moments_fixed_temp(kappa, len, path_cap),
        Gamma::Finite(g) => g.clone(),
    };
    let values = moments_with(kappa, len, path_cap, |st| stats_weight_gamma(st, kappa, &g))?;
    MomentSeq::new(values, kappa.gamma.clone())
}

/// The `γ = ∞` transform.
pub fn moments_fixed_temp(kappa: &CumulantSeq, len: usize, path_cap: usize) -> Result<MomentSeq> {
    let values = moments_with(kappa, len, path_cap, |st| stats_weight_fixed(st, kappa))?;
    MomentSeq::new(values, Gamma::Infinite)
}

/// Top homogeneous part of `J_γ` under `deg κ_n = n`, `deg γ = 0`.
pub fn moments_top_degree(kappa: &CumulantSeq, gamma: &Q, len: usize, path_cap: usize) -> Result<MomentSeq> {
    let values = moments_with(kappa, len, path_cap, |st| stats_weight_top(st, kappa, gamma))?;
    MomentSeq::new(values, Gamma::Finite(gamma.clone()))
}

/// `J_γ(κ)` through the simplified weights valid when `κ_1 = γ`.
pub fn moments_special_case(kappa: &CumulantSeq, len: usize, path_cap: usize) -> Result<MomentSeq> {
    let g = match &kappa.gamma {
        Gamma::Finite(g) => g.clone(),
        Gamma::Infinite => return invalid("special case needs finite γ"),
    };
    if kappa.get(1) != g {
        return invalid("special case needs κ_1 = γ");
    }
    let values = moments_with(kappa, len, path_cap, |st| stats_weight_special(st, kappa, &g))?;
    MomentSeq::new(values, kappa.gamma.clone())
}

/// Inverse of [`moments_from_cumulants`] by forward substitution: `κ_ℓ`
/// enters `m_ℓ` linearly with coefficient `(γ+1)^{↑(ℓ−1)}` (1 when `γ = ∞`).
pub fn cumulants_from_moments(m: &MomentSeq, len: usize, path_cap: usize) -> Result<CumulantSeq> {
    if m.values.len() < len {
        return invalid(format!("need {len} moments, got {}", m.values.len()));
    }
    if len == 0 {
        return invalid("length must be at least 1");
    }
    let mut kappa = CumulantSeq {
        values: vec![Q::zero(); len],
        gamma: m.gamma.clone(),
    };
    for l in 1..=len {
        kappa.values[l - 1] = Q::zero();
        let (base, coeff) = match &m.gamma {
            Gamma::Finite(g) => (
                census_sum(l, path_cap, |st| stats_weight_gamma(st, &kappa, g))?,
                rising(&(g + Q::one()), l - 1),
            ),
            Gamma::Infinite => (census_sum(l, path_cap, |st| stats_weight_fixed(st, &kappa))?, Q::one()),
        };
        kappa.values[l - 1] = (&m.values[l - 1] - base) / coeff;
    }
    Ok(kappa)
}

/// Truncated power series `Σ_{i<len} a_i z^i`.
fn series_mul(a: &[Q], b: &[Q], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `m_n = [z^n] F(z)^{n+1}/((1+z)(n+1))` with `F = 1 + z(1+z)R(z)` and
/// `R(z) = Σ κ_k z^{k−1}`; the residue form multiplied through by `z^{n+1}`.
pub fn moments_via_lagrange(kappa: &CumulantSeq, len: usize) -> Result<MomentSeq> {
    check_len(kappa, len)?;
    let size = len + 1;
    // (1+z)R(z)
    let mut r = vec![Q::zero(); size];
    for k in 1..=len {
        let c = kappa.get(k);
        r[k - 1] += &c;
        if k < size {
            r[k] += c;
        }
    }
    let mut f = vec![Q::zero(); size];
    f[0] = Q::one();
    for i in 1..size {
        f[i] = r[i - 1].clone();
    }
    let inv_one_plus_z: Vec<Q> = (0..size).map(|i| if i % 2 == 0 { Q::one() } else { -Q::one() }).collect();
    let mut values = Vec::with_capacity(len);
    let mut power = f.clone();
    for n in 1..=len {
        // power = F^{n+1}
        power = series_mul(&power, &f, size);
        let s = series_mul(&power, &inv_one_plus_z, size);
        values.push(&s[n] / qi(n as i64 + 1));
    }
    MomentSeq::new(values, Gamma::Infinite)
}

/// Cumulants add under the quantized convolution.
pub fn convolve_cumulants(a: &CumulantSeq, b: &CumulantSeq) -> Result<CumulantSeq> {
    if a.gamma != b.gamma {
        return invalid(format!("mismatched γ: {} vs {}", a.gamma, b.gamma));
    }
    if a.values.len() != b.values.len() {
        return invalid("mismatched lengths");
    }
    CumulantSeq::new(a.values.iter().zip(&b.values).map(|(x, y)| x + y).collect(), a.gamma.clone())
}

/// Moments `(−γ)^ℓ/(ℓ+1)` of the uniform law on `[−γ, 0]`.
pub fn uniform_moments(gamma: &Q, len: usize) -> Vec<Q> {
    (1..=len)
        .map(|l| pow(&-gamma, l as i64) / qi(l as i64 + 1))
        .collect()
}
