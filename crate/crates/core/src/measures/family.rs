//! The three explicit Jack-measure families and their weights.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::combinatorics::Partition;
use crate::error::{invalid, Result};
use crate::jack::SpecDescriptor;
use crate::rational::{pow, qi, serde_q, to_f64, Q};
use crate::transforms::{CumulantSeq, Gamma};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyParams {
    /// `Alpha(c^{⌊Nη⌋})`, `c ∈ (0,1)`, `η > 0`.
    Alpha {
        #[serde(with = "serde_q")]
        c: Q,
        #[serde(with = "serde_q")]
        eta: Q,
    },
    /// `Beta((c/θ)^M)`, `c > 0`, `M ≥ 1`.
    Beta {
        #[serde(with = "serde_q")]
        c: Q,
        m: usize,
    },
    /// `Planch(t/θ)`, `t > 0`.
    Plancherel {
        #[serde(with = "serde_q")]
        t: Q,
    },
}

impl FamilyParams {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilyParams::Alpha { c, eta } => {
                if !c.is_positive() || *c >= Q::one() {
                    return invalid(format!("alpha family needs c in (0,1), got {c}"));
                }
                if !eta.is_positive() {
                    return invalid(format!("alpha family needs η > 0, got {eta}"));
                }
            }
            FamilyParams::Beta { c, m } => {
                if !c.is_positive() {
                    return invalid(format!("beta family needs c > 0, got {c}"));
                }
                if *m == 0 {
                    return invalid("beta family needs M ≥ 1");
                }
            }
            FamilyParams::Plancherel { t } => {
                if !t.is_positive() {
                    return invalid(format!("Plancherel family needs t > 0, got {t}"));
                }
            }
        }
        Ok(())
    }

    /// `⌊Nη⌋` for the alpha family, `None` otherwise.
    pub fn alpha_vars(&self, n: usize) -> Option<usize> {
        match self {
            FamilyParams::Alpha { eta, .. } => (eta * qi(n as i64)).floor().to_integer().to_usize(),
            _ => None,
        }
    }

    /// Largest possible number of rows at `N` variables.
    pub fn max_length(&self, n: usize) -> usize {
        match self {
            FamilyParams::Alpha { .. } => n.min(self.alpha_vars(n).unwrap_or(0)),
            _ => n,
        }
    }

    /// Bound on the first row (the beta rectangle width).
    pub fn max_part(&self) -> Option<usize> {
        match self {
            FamilyParams::Beta { m, .. } => Some(*m),
            _ => None,
        }
    }

    /// The specialization `ρ` with law `∝ Q_λ(ρ) P_λ(1^N)`.
    pub fn specialization(&self, n: usize, theta: &Q) -> Result<SpecDescriptor> {
        self.validate()?;
        match self {
            FamilyParams::Alpha { c, .. } => SpecDescriptor::alpha_repeated(c.clone(), self.alpha_vars(n).unwrap(), theta.clone()),
            FamilyParams::Beta { c, m } => SpecDescriptor::beta_repeated(c / theta, *m, theta.clone()),
            FamilyParams::Plancherel { t } => SpecDescriptor::plancherel(t / theta, theta.clone()),
        }
    }

    /// One chain step and the number of steps whose composition from `∅`
    /// gives this family.
    pub fn chain_step(&self, n: usize, theta: &Q) -> Result<(SpecDescriptor, usize)> {
        self.validate()?;
        match self {
            FamilyParams::Alpha { c, .. } => Ok((
                SpecDescriptor::alpha_repeated(c.clone(), 1, theta.clone())?,
                self.alpha_vars(n).unwrap(),
            )),
            FamilyParams::Beta { c, m } => Ok((SpecDescriptor::beta_repeated(c / theta, 1, theta.clone())?, *m)),
            FamilyParams::Plancherel { t } => {
                if !t.is_integer() {
                    return invalid("Plancherel chain needs integer t; use the specialization directly");
                }
                let steps = t.to_integer().to_usize().unwrap_or(0);
                Ok((SpecDescriptor::plancherel(theta.recip(), theta.clone())?, steps))
            }
        }
    }

    /// High-temperature cumulants `κ_1..κ_len` at `γ`.
    pub fn predicted_cumulants(&self, gamma: &Q, len: usize) -> Result<CumulantSeq> {
        self.validate()?;
        let values = (1..=len as i64)
            .map(|n| match self {
                FamilyParams::Alpha { c, eta } => gamma * eta * pow(&(c / (Q::one() - c)), n),
                FamilyParams::Beta { c, m } => {
                    let sign = if n.is_odd() { qi(1) } else { qi(-1) };
                    sign * qi(*m as i64) * pow(&(c / (Q::one() + c)), n)
                }
                FamilyParams::Plancherel { t } => {
                    if n == 1 {
                        t.clone()
                    } else {
                        Q::zero()
                    }
                }
            })
            .collect();
        CumulantSeq::new(values, Gamma::finite(gamma.clone())?)
    }

    /// The parameter coupling under which `κ_1 = γ`.
    pub fn special_coupling_holds(&self, gamma: &Q) -> bool {
        match self {
            FamilyParams::Alpha { c, eta } => *eta == (Q::one() - c) / c,
            FamilyParams::Beta { c, m } => {
                let m = qi(*m as i64);
                *gamma < m && *c == gamma / (m - gamma)
            }
            FamilyParams::Plancherel { t } => t == gamma,
        }
    }

    /// Law of `|λ|`, used for tail certification.
    pub fn size_law(&self, n: usize, theta: &Q) -> SizeLaw {
        let th = to_f64(theta);
        match self {
            FamilyParams::Alpha { c, .. } => SizeLaw::NegBin {
                r: n as f64 * th * self.alpha_vars(n).unwrap_or(0) as f64,
                p: to_f64(c),
            },
            FamilyParams::Beta { c, m } => {
                let c = to_f64(c);
                SizeLaw::Binomial {
                    trials: n * m,
                    p: c / (1.0 + c),
                }
            }
            FamilyParams::Plancherel { t } => SizeLaw::Poisson {
                mean: n as f64 * to_f64(t),
            },
        }
    }
}

/// Distribution of `|λ|` under a family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SizeLaw {
    Poisson { mean: f64 },
    NegBin { r: f64, p: f64 },
    Binomial { trials: usize, p: f64 },
}

impl SizeLaw {
    pub fn ln_pmf(&self, k: usize) -> f64 {
        let kf = k as f64;
        match *self {
            SizeLaw::Poisson { mean } => {
                if mean == 0.0 {
                    return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
                }
                kf * mean.ln() - mean - ln_gamma(kf + 1.0)
            }
            SizeLaw::NegBin { r, p } => {
                if r == 0.0 {
                    return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
                }
                ln_gamma(r + kf) - ln_gamma(r) - ln_gamma(kf + 1.0) + r * (-p).ln_1p() + kf * p.ln()
            }
            SizeLaw::Binomial { trials, p } => {
                if k > trials {
                    return f64::NEG_INFINITY;
                }
                let nf = trials as f64;
                ln_gamma(nf + 1.0) - ln_gamma(kf + 1.0) - ln_gamma(nf - kf + 1.0)
                    + kf * p.ln()
                    + (nf - kf) * (-p).ln_1p()
            }
        }
    }

    pub fn pmf(&self, k: usize) -> f64 {
        self.ln_pmf(k).exp()
    }

    pub fn mean(&self) -> f64 {
        match *self {
            SizeLaw::Poisson { mean } => mean,
            SizeLaw::NegBin { r, p } => r * p / (1.0 - p),
            SizeLaw::Binomial { trials, p } => trials as f64 * p,
        }
    }

    /// Upper bound on `P(|λ| > k)`: the first omitted term times a geometric
    /// series in the supremum of the ratio of consecutive terms.
    /// Supremum of `P(j+1)/P(j)` over `j > k`.
    pub fn tail_ratio(&self, k: usize) -> f64 {
        match *self {
            SizeLaw::Poisson { mean } => mean / (k as f64 + 2.0),
            SizeLaw::NegBin { r, p } => p * ((r + k as f64 + 1.0) / (k as f64 + 2.0)).max(1.0),
            SizeLaw::Binomial { trials, p } => {
                if k >= trials {
                    return 0.0;
                }
                // (n−j)/(j+1)·p/(1−p) decreases in j
                (trials - k - 1) as f64 / (k as f64 + 2.0) * p / (1.0 - p)
            }
        }
    }

    /// Bound on `P(|λ| > k)`.
    pub fn tail_bound(&self, k: usize) -> f64 {
        if let SizeLaw::Binomial { trials, .. } = *self {
            if k >= trials {
                return 0.0;
            }
        }
        let ratio = self.tail_ratio(k);
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        self.pmf(k + 1) / (1.0 - ratio)
    }
}

/// `Nθ + (j−1) − θ(i−1)` for the cell `(i, j)`.
fn content_factor(n: usize, i: usize, j: usize, theta: &Q) -> Q {
    theta * qi(n as i64) + qi(j as i64 - 1) - theta * qi(i as i64 - 1)
}

/// `Π_{(i,j)∈λ} 1/((a+θl+θ)(a+θl+1))`.
fn inverse_hook_product(lambda: &Partition, theta: &Q) -> Q {
    let conj = lambda.conjugate();
    let mut acc = Q::one();
    for (i, j) in lambda.boxes() {
        let (a, b) = lambda.hook_pair(&conj, i, j, theta);
        acc /= a * b;
    }
    acc
}

/// Pure-alpha weight divided by `(1−c)^{Nθ⌊Nη⌋}`.
pub fn alpha_weight_factor(lambda: &Partition, n: usize, theta: &Q, c: &Q, m: usize) -> Q {
    if lambda.len() > n.min(m) {
        return Q::zero();
    }
    let mut acc = pow(c, lambda.size() as i64) * inverse_hook_product(lambda, theta);
    for (i, j) in lambda.boxes() {
        acc *= content_factor(m, i, j, theta) * content_factor(n, i, j, theta);
    }
    acc
}

pub fn weight_pure_alpha(lambda: &Partition, n: usize, theta: &Q, c: &Q, eta: &Q) -> f64 {
    let m = FamilyParams::Alpha {
        c: c.clone(),
        eta: eta.clone(),
    }
    .alpha_vars(n)
    .unwrap_or(0);
    let scale = n as f64 * to_f64(theta) * m as f64 * (-to_f64(c)).ln_1p();
    (scale + ln_q(&alpha_weight_factor(lambda, n, theta, c, m))).exp()
}

/// Pure-beta weight, exact: `(1+c)^{−NM}` is rational.
pub fn beta_weight_exact(lambda: &Partition, n: usize, m: usize, theta: &Q, c: &Q) -> Q {
    if lambda.len() > n || lambda.first() > m {
        return Q::zero();
    }
    let mut acc = pow(&(Q::one() + c), -((n * m) as i64)) * pow(c, lambda.size() as i64) * inverse_hook_product(lambda, theta);
    for (i, j) in lambda.boxes() {
        acc *= content_factor(n, i, j, theta) * (qi(m as i64) + theta * qi(i as i64 - 1) - qi(j as i64 - 1));
    }
    acc
}

pub fn weight_pure_beta(lambda: &Partition, n: usize, m: usize, theta: &Q, c: &Q) -> f64 {
    to_f64(&beta_weight_exact(lambda, n, m, theta, c))
}

/// Pure-Plancherel weight divided by `e^{−Nt}`.
pub fn plancherel_weight_factor(lambda: &Partition, n: usize, theta: &Q, t: &Q) -> Q {
    if lambda.len() > n {
        return Q::zero();
    }
    let mut acc = pow(t, lambda.size() as i64) * inverse_hook_product(lambda, theta);
    for (i, j) in lambda.boxes() {
        acc *= content_factor(n, i, j, theta);
    }
    acc
}

pub fn weight_pure_plancherel(lambda: &Partition, n: usize, theta: &Q, t: &Q) -> f64 {
    let scale = -(n as f64) * to_f64(t);
    (scale + ln_q(&plancherel_weight_factor(lambda, n, theta, t))).exp()
}

/// Natural log of a nonnegative rational without overflowing `f64`.
pub(crate) fn ln_q(x: &Q) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let ln_int = |b: &num_bigint::BigInt| -> f64 {
        let bits = b.bits();
        if bits < 1000 {
            return b.to_f64().unwrap().abs().ln();
        }
        let shift = bits - 64;
        (b >> shift).to_f64().unwrap().abs().ln() + shift as f64 * std::f64::consts::LN_2
    };
    ln_int(x.numer()) - ln_int(x.denom())
}

/// The measure's own weight for `λ`, as `(log scale, exact factor)` so that
/// the weight is `exp(log_scale) · factor`.
pub fn family_weight_parts(params: &FamilyParams, lambda: &Partition, n: usize, theta: &Q) -> (f64, Q) {
    match params {
        FamilyParams::Alpha { c, .. } => {
            let m = params.alpha_vars(n).unwrap_or(0);
            (
                n as f64 * to_f64(theta) * m as f64 * (-to_f64(c)).ln_1p(),
                alpha_weight_factor(lambda, n, theta, c, m),
            )
        }
        FamilyParams::Beta { c, m } => (0.0, beta_weight_exact(lambda, n, *m, theta, c)),
        FamilyParams::Plancherel { t } => (-(n as f64) * to_f64(t), plancherel_weight_factor(lambda, n, theta, t)),
    }
}

/// `θ/(n−1)! · ∂_x^n Σ_k p_k(ρ) x^k / k` at `x = 1`, summed in closed form.
pub fn jgf_log_derivative(rho: &SpecDescriptor, n: usize) -> Result<Q> {
    use crate::jack::SpecKind;
    if n == 0 {
        return invalid("derivative order must be at least 1");
    }
    let theta = &rho.theta;
    fn walk(kind: &SpecKind, w: &Q, theta: &Q, n: usize, acc: &mut Q) -> Result<()> {
        let nn = n as i64;
        match kind {
            SpecKind::PureAlpha { values } => {
                for a in values {
                    if *a >= Q::one() {
                        return Err(crate::Error::Divergent(format!("alpha parameter {a} ≥ 1")));
                    }
                    *acc += w * pow(a, nn) / pow(&(Q::one() - a), nn);
                }
            }
            SpecKind::PureBeta { values } => {
                for b in values {
                    // analytic in x near 1 for every β ≥ 0
                    let tb = theta * b;
                    *acc += w * b * pow(&-&tb, nn - 1) / pow(&(Q::one() + &tb), nn);
                }
            }
            SpecKind::Plancherel { delta } => {
                if n == 1 {
                    *acc += w * delta;
                }
            }
            SpecKind::Union { parts } => {
                for p in parts {
                    walk(p, w, theta, n, acc)?;
                }
            }
            SpecKind::Scaled { t, inner } => walk(inner, &(w * t), theta, n, acc)?,
            SpecKind::PowerSums { values } => {
                for (k, pk) in values.iter().enumerate().skip(n - 1) {
                    *acc += w * crate::rational::binomial(k, n - 1) * pk;
                }
            }
        }
        Ok(())
    }
    let mut acc = Q::zero();
    walk(&rho.kind, &Q::one(), theta, n, &mut acc)?;
    Ok(theta * acc)
}
