//! Experiments: empirical moments against transform predictions, the
//! convolution of finitely supported measures, the uniform fixed point and
//! the small-tails flag.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cherednik::{direct_moment, jgf_polynomial, OperatorContext};
use crate::combinatorics::{shifted_coordinates, Partition};
use crate::error::{invalid, Error, Result};
use crate::jack::lr_table;
use crate::measures::{
    build_measure_table, sample_alpha_chain, sample_plancherel, trajectory_rng, FamilyParams, MeasureSampler,
    MeasureTable,
};
use crate::poly::NPoly;
use crate::rational::{fmt_q, pow, qi, serde_q, to_f64, Q};
use crate::transforms::{
    convolve_cumulants, cumulants_from_moments, moments_from_cumulants, moments_special_case, uniform_moments,
    CumulantSeq, Gamma, MomentSeq,
};

/// `(1/N) Σ_i δ_{ℒ_i}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpiricalMeasure {
    #[serde(with = "crate::rational::serde_qvec")]
    pub atoms: Vec<Q>,
}

impl EmpiricalMeasure {
    pub fn new(lambda: &Partition, n: usize, theta: &Q) -> Result<Self> {
        let atoms = shifted_coordinates(&lambda.to_signature(n)?, theta)?.values;
        Ok(EmpiricalMeasure { atoms })
    }

    pub fn moment(&self, k: usize) -> Q {
        let s: Q = self.atoms.iter().map(|a| pow(a, k as i64)).sum();
        s / qi(self.atoms.len() as i64)
    }
}

/// `(1/N) Σ_i ℒ_i^k` for `k = 1..=len`, in floating point.
pub fn plug_in_moments(lambda: &Partition, n: usize, theta: f64, len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for i in 1..=n {
        let l = lambda.part(i) as f64 - (i - 1) as f64 * theta;
        let mut p = 1.0;
        for o in out.iter_mut() {
            p *= l;
            *o += p;
        }
    }
    out.iter().map(|s| s / n as f64).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub mean: f64,
    pub std_error: f64,
}

/// Monte Carlo means and standard errors of the plug-in moments.
pub fn empirical_moments(samples: &[Partition], n: usize, theta: &Q, len: usize) -> Vec<MomentEstimate> {
    let th = to_f64(theta);
    let per: Vec<Vec<f64>> = samples.par_iter().map(|l| plug_in_moments(l, n, th, len)).collect();
    let k = per.len() as f64;
    (0..len)
        .map(|j| {
            let mean = per.iter().map(|v| v[j]).sum::<f64>() / k;
            let var = if per.len() > 1 {
                per.iter().map(|v| (v[j] - mean).powi(2)).sum::<f64>() / (k - 1.0)
            } else {
                0.0
            };
            MomentEstimate { mean, std_error: (var / k).sqrt() }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SamplerMethod {
    /// Growth for Plancherel, strip chain for alpha, the full table for beta.
    #[default]
    Auto,
    /// Inverse CDF over a certified table.
    Table,
}

/// Smallest size cutoff whose certified tail is at most `tolerance`.
pub fn auto_cutoff(params: &FamilyParams, n: usize, theta: &Q, tolerance: f64) -> Result<usize> {
    let law = params.size_law(n, theta);
    let mean = law.mean().max(1.0) as usize;
    (mean..mean * 20 + 200)
        .find(|&k| law.tail_bound(k) <= tolerance)
        .ok_or_else(|| Error::Cap(format!("no support cutoff certifies a tail of {tolerance:e}")))
}

/// `count` independent draws; draw `i` uses stream `i` of the seed.
pub fn sample_family(
    params: &FamilyParams,
    n: usize,
    theta: &Q,
    count: usize,
    seed: u64,
    method: SamplerMethod,
    tolerance: f64,
) -> Result<Vec<Partition>> {
    params.validate()?;
    let th = to_f64(theta);
    let table = match (method, params) {
        (SamplerMethod::Auto, FamilyParams::Plancherel { .. } | FamilyParams::Alpha { .. }) => None,
        _ => Some(build_measure_table(params, n, theta, auto_cutoff(params, n, theta, tolerance)?, tolerance)?),
    };
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trajectory_rng(seed, i);
            match (&table, params) {
                (Some(t), _) => MeasureSampler::new(t.clone())?.sample(&mut rng),
                (None, FamilyParams::Plancherel { t }) => sample_plancherel(n, th, to_f64(t), &mut rng),
                (None, FamilyParams::Alpha { c, .. }) => {
                    sample_alpha_chain(n, th, to_f64(c), params.alpha_vars(n).unwrap_or(0), &mut rng)
                }
                (None, FamilyParams::Beta { .. }) => unreachable!(),
            }
        })
        .collect()
}

/// z thresholds: pass at or below `pass_z`, fail above `fail_z`, rerun with
/// `rerun_factor` times the samples in between. After the rerun anything
/// above `pass_z` fails.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub pass_z: f64,
    pub fail_z: f64,
    pub rerun_factor: usize,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy { pass_z: 4.0, fail_z: 6.0, rerun_factor: 4 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LlnConfig {
    #[serde(flatten)]
    pub family: FamilyParams,
    #[serde(with = "serde_q")]
    pub gamma: Q,
    #[serde(rename = "N")]
    pub n: usize,
    pub samples: usize,
    #[serde(rename = "L")]
    pub moments: usize,
    pub seed: u64,
    #[serde(default)]
    pub policy: TolerancePolicy,
    #[serde(default)]
    pub sampler: SamplerMethod,
    /// Drift constants `c_ℓ`; calibrated on Plancherel when absent.
    #[serde(default)]
    pub drift: Option<Vec<f64>>,
    #[serde(default = "default_tail")]
    pub tail_tolerance: f64,
}

fn default_tail() -> f64 {
    1e-12
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentRow {
    pub ell: usize,
    pub predicted: String,
    pub predicted_f64: f64,
    pub estimate: f64,
    pub std_error: f64,
    /// `c_ℓ / N`.
    pub drift_allowance: f64,
    pub z_raw: f64,
    /// `max(0, |estimate − predicted| − allowance) / std_error`.
    pub z: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "coupling", rename_all = "snake_case")]
pub enum CouplingReport {
    /// `κ_1 = γ`; the simplified formula was compared with the full transform.
    Holds { special_case_agrees: bool },
    Unmet { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub config: LlnConfig,
    #[serde(with = "serde_q")]
    pub theta: Q,
    #[serde(with = "crate::rational::serde_qvec")]
    pub cumulants: Vec<Q>,
    pub samples_used: usize,
    pub reran: bool,
    pub rows: Vec<MomentRow>,
    pub coupling: CouplingReport,
    pub status: Status,
}

fn coupling_report(params: &FamilyParams, gamma: &Q, kappa: &CumulantSeq, predicted: &MomentSeq, len: usize) -> Result<CouplingReport> {
    if params.special_coupling_holds(gamma) {
        let simple = moments_special_case(kappa, len, crate::DEFAULT_PATH_CAP)?;
        return Ok(CouplingReport::Holds { special_case_agrees: simple.values == predicted.values });
    }
    let reason = match params {
        FamilyParams::Alpha { c, .. } => format!("η ≠ (1−c)/c = {}", fmt_q(&((Q::one() - c) / c))),
        FamilyParams::Beta { m, .. } if qi(*m as i64) <= *gamma => format!("M = {m} is not above γ = {}", fmt_q(gamma)),
        FamilyParams::Beta { m, .. } => {
            format!("c ≠ γ/(M−γ) = {}", fmt_q(&(gamma / (qi(*m as i64) - gamma))))
        }
        FamilyParams::Plancherel { .. } => format!("t ≠ γ = {}", fmt_q(gamma)),
    };
    Ok(CouplingReport::Unmet { reason })
}

/// Exact finite-`N` moments `E[(1/N)Σ ℒ_i^ℓ]` of a table, in floating point.
pub fn table_moments(table: &MeasureTable, len: usize) -> Vec<f64> {
    let th = to_f64(&table.theta);
    let mut acc = vec![0.0; len];
    for (l, w) in table.support.iter().zip(&table.weights) {
        for (a, m) in acc.iter_mut().zip(plug_in_moments(l, table.n, th, len)) {
            *a += w * m;
        }
    }
    acc
}

/// Drift constants `c_ℓ ≥ sup_N N·|m_ℓ(N) − m_ℓ|` from exact Plancherel
/// moments with `t = γ`, `θ = γ/N`, over `N ∈ ns`.
///
/// `N·(m_ℓ(N) − m_ℓ)` is a polynomial of degree `ℓ − 1` in `1/N`, so it is
/// interpolated through the largest available `N` and its supremum over
/// `1/N ∈ [0, 1/min ns]` taken on a grid. With fewer than `ℓ` points the
/// interpolant is only an approximation of that curve.
pub fn calibrate_drift(gamma: &Q, len: usize, ns: &[usize]) -> Result<Vec<f64>> {
    if ns.is_empty() || ns.contains(&0) {
        return invalid("drift calibration needs positive sizes");
    }
    let fam = FamilyParams::Plancherel { t: gamma.clone() };
    let limit = moments_from_cumulants(&fam.predicted_cumulants(gamma, len)?, len, crate::DEFAULT_PATH_CAP)?;
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut scaled = Vec::with_capacity(ns.len());
    for &n in &ns {
        let theta = gamma / qi(n as i64);
        let table = build_measure_table(&fam, n, &theta, auto_cutoff(&fam, n, &theta, 1e-12)?, 1e-12)?;
        let row: Vec<f64> = table_moments(&table, len)
            .into_iter()
            .zip(&limit.values)
            .map(|(m, l)| n as f64 * (m - to_f64(l)))
            .collect();
        scaled.push(row);
    }
    let x_max = 1.0 / ns[0] as f64;
    Ok((0..len)
        .map(|j| {
            let observed = scaled.iter().map(|r| r[j].abs()).fold(0.0, f64::max);
            let k = (j + 1).min(ns.len());
            let pts: Vec<(f64, f64)> = ns[ns.len() - k..]
                .iter()
                .zip(&scaled[ns.len() - k..])
                .map(|(&n, r)| (1.0 / n as f64, r[j]))
                .collect();
            let interp = |x: f64| {
                pts.iter()
                    .enumerate()
                    .map(|(a, &(xa, ya))| {
                        ya * pts.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, &(xb, _))| (x - xb) / (xa - xb)).product::<f64>()
                    })
                    .sum::<f64>()
            };
            (0..=256).map(|g| interp(x_max * g as f64 / 256.0).abs()).fold(observed, f64::max)
        })
        .collect())
}

/// Plancherel sizes used for drift calibration when none are configured.
pub const DRIFT_CALIBRATION_NS: [usize; 4] = [2, 3, 4, 5];

/// Sample the family at `θ = γ/N` and compare plug-in moments with the
/// transform of the predicted cumulants.
pub fn run_lln_experiment(config: &LlnConfig) -> Result<ExperimentReport> {
    let params = &config.family;
    params.validate()?;
    if config.n == 0 || config.samples < 2 || config.moments == 0 {
        return invalid("need N ≥ 1, at least 2 samples and L ≥ 1");
    }
    let gamma = Gamma::finite(config.gamma.clone())?;
    let theta = &config.gamma / qi(config.n as i64);
    let len = config.moments;
    let kappa = params.predicted_cumulants(&config.gamma, len)?;
    let predicted = moments_from_cumulants(&kappa, len, crate::DEFAULT_PATH_CAP)?;
    debug_assert_eq!(predicted.gamma, gamma);
    let coupling = coupling_report(params, &config.gamma, &kappa, &predicted, len)?;
    let drift = match &config.drift {
        Some(d) => d.clone(),
        None => calibrate_drift(&config.gamma, len, &DRIFT_CALIBRATION_NS)?,
    };
    let evaluate = |count: usize, seed: u64| -> Result<Vec<MomentRow>> {
        let samples = sample_family(params, config.n, &theta, count, seed, config.sampler, config.tail_tolerance)?;
        let est = empirical_moments(&samples, config.n, &theta, len);
        Ok(est
            .into_iter()
            .enumerate()
            .map(|(j, e)| {
                let p = to_f64(&predicted.values[j]);
                let allowance = drift.get(j).copied().unwrap_or(0.0) / config.n as f64;
                let diff = (e.mean - p).abs();
                let z_of = |d: f64| if e.std_error > 0.0 { d / e.std_error } else if d > 0.0 { f64::INFINITY } else { 0.0 };
                MomentRow {
                    ell: j + 1,
                    predicted: fmt_q(&predicted.values[j]),
                    predicted_f64: p,
                    estimate: e.mean,
                    std_error: e.std_error,
                    drift_allowance: allowance,
                    z_raw: z_of(diff),
                    z: z_of((diff - allowance).max(0.0)),
                }
            })
            .collect())
    };
    let worst = |rows: &[MomentRow]| rows.iter().map(|r| r.z).fold(0.0, f64::max);
    let policy = &config.policy;
    let mut rows = evaluate(config.samples, config.seed)?;
    let mut samples_used = config.samples;
    let mut reran = false;
    let mut z = worst(&rows);
    if z > policy.pass_z && z <= policy.fail_z {
        reran = true;
        samples_used = config.samples * policy.rerun_factor;
        rows = evaluate(samples_used, config.seed.wrapping_add(1))?;
        z = worst(&rows);
    }
    let status = if z <= policy.pass_z { Status::Pass } else { Status::Fail };
    Ok(ExperimentReport {
        config: LlnConfig { drift: Some(drift), ..config.clone() },
        theta,
        cumulants: kappa.values,
        samples_used,
        reran,
        rows,
        coupling,
        status,
    })
}

/// `𝕡a ⊞_θ 𝕡b` through Littlewood–Richardson coefficients.
pub fn lr_convolve(a: &[(Partition, Q)], b: &[(Partition, Q)], n: usize, theta: &Q, degree_cap: usize) -> Result<Vec<(Partition, Q)>> {
    let mut acc: BTreeMap<Partition, Q> = BTreeMap::new();
    for (mu, wa) in a {
        for (nu, wb) in b {
            let w = wa * wb;
            if w.is_zero() {
                continue;
            }
            for (lam, c) in lr_table(mu, nu, n, theta, degree_cap)?.entries {
                *acc.entry(lam).or_insert_with(Q::zero) += &w * c;
            }
        }
    }
    Ok(acc.into_iter().filter(|(_, w)| !w.is_zero()).collect())
}

/// `log G(1+y)` to total degree `deg`.
pub fn log_jgf(measure: &[(Partition, Q)], ctx: &OperatorContext, deg: usize, degree_cap: usize) -> Result<NPoly> {
    let g = jgf_polynomial(measure, ctx, degree_cap)?.shift_to_one();
    let zero = vec![0; ctx.n];
    let g0 = g.coeff(&zero);
    if g0 != Q::one() {
        return invalid(format!("JGF at 1^N is {}, not 1", fmt_q(&g0)));
    }
    let mut f = g;
    f.add_term(zero, -Q::one());
    f.series_log1p(deg as i64)
}

/// `κ_k^{(N)} = θ/(k−1)! ∂_1^k log G (1^N)` for `k = 1..=len`.
pub fn finite_cumulants(log_g: &NPoly, theta: &Q, len: usize) -> Vec<Q> {
    let n = log_g.num_vars();
    (1..=len)
        .map(|k| {
            let mut e = vec![0; n];
            e[0] = k as i64;
            theta * qi(k as i64) * log_g.coeff(&e)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvolutionReport {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(with = "serde_q")]
    pub theta: Q,
    pub degree: usize,
    #[serde(serialize_with = "ser_weights")]
    pub convolution: Vec<(Partition, Q)>,
    pub total_mass_one: bool,
    pub signed: bool,
    pub jgf_product_exact: bool,
    pub log_jgf_additive: bool,
    pub cumulant_addition_exact: bool,
    #[serde(with = "crate::rational::serde_qvec")]
    pub cumulants_a: Vec<Q>,
    #[serde(with = "crate::rational::serde_qvec")]
    pub cumulants_b: Vec<Q>,
    #[serde(with = "crate::rational::serde_qvec")]
    pub cumulants_conv: Vec<Q>,
    /// `E[(1/N) Σ ℒ_i^ℓ]` of the convolution, read off the table.
    #[serde(with = "crate::rational::serde_qvec")]
    pub moments: Vec<Q>,
}

fn ser_weights<S: serde::Serializer>(w: &[(Partition, Q)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(w.iter().map(|(l, q)| (l, fmt_q(q))))
}

/// Build `𝕡a ⊞_θ 𝕡b` and check mass, JGF multiplicativity, log-JGF
/// additivity to degree `degree`, and additivity of the finite-`N`
/// cumulants. Moments are taken from the table, never by sampling.
pub fn run_convolution_experiment(
    a: &[(Partition, Q)],
    b: &[(Partition, Q)],
    n: usize,
    theta: &Q,
    degree: usize,
    degree_cap: usize,
) -> Result<ConvolutionReport> {
    if n > 3 {
        return invalid("convolution experiments are limited to N ≤ 3");
    }
    let ctx = OperatorContext::new(n, theta.clone())?;
    let mass = |m: &[(Partition, Q)]| m.iter().map(|e| e.1.clone()).sum::<Q>();
    if mass(a) != Q::one() || mass(b) != Q::one() {
        return invalid("both measures must have total mass 1");
    }
    let conv = lr_convolve(a, b, n, theta, degree_cap)?;
    let ga = jgf_polynomial(a, &ctx, degree_cap)?;
    let gb = jgf_polynomial(b, &ctx, degree_cap)?;
    let gc = jgf_polynomial(&conv, &ctx, degree_cap)?;
    let la = log_jgf(a, &ctx, degree, degree_cap)?;
    let lb = log_jgf(b, &ctx, degree, degree_cap)?;
    let lc = log_jgf(&conv, &ctx, degree, degree_cap)?;
    let gamma = Gamma::finite(theta * qi(n as i64))?;
    let ka = finite_cumulants(&la, theta, degree);
    let kb = finite_cumulants(&lb, theta, degree);
    let kc = finite_cumulants(&lc, theta, degree);
    let added = convolve_cumulants(&CumulantSeq::new(ka.clone(), gamma.clone())?, &CumulantSeq::new(kb.clone(), gamma)?)?;
    let moments = (1..=degree)
        .map(|k| Ok(direct_moment(&conv, &[k], &ctx)? / qi(n as i64)))
        .collect::<Result<Vec<Q>>>()?;
    Ok(ConvolutionReport {
        n,
        theta: theta.clone(),
        degree,
        total_mass_one: mass(&conv) == Q::one(),
        signed: conv.iter().any(|e| e.1 < Q::zero()),
        jgf_product_exact: gc == &ga * &gb,
        log_jgf_additive: lc == &la + &lb,
        cumulant_addition_exact: added.values == kc,
        convolution: conv,
        cumulants_a: ka,
        cumulants_b: kb,
        cumulants_conv: kc,
        moments,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PrelimitRow {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(with = "crate::rational::serde_qvec")]
    pub moments: Vec<Q>,
    /// `N · |m_ℓ(N) − m_ℓ|` per moment.
    pub scaled_errors: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedPointReport {
    #[serde(with = "serde_q")]
    pub gamma: Q,
    #[serde(with = "crate::rational::serde_qvec")]
    pub uniform_moments: Vec<Q>,
    #[serde(with = "crate::rational::serde_qvec")]
    pub cumulants: Vec<Q>,
    pub cumulants_zero: bool,
    pub prelimit: Vec<PrelimitRow>,
    /// Every scaled error is at most `γ^ℓ`.
    pub first_order_errors: bool,
}

/// Moments of `(1/N) Σ_{i<N} δ_{−iθ}` with `θ = γ/N`.
pub fn empty_partition_moments(gamma: &Q, n: usize, len: usize) -> Vec<Q> {
    let theta = gamma / qi(n as i64);
    (1..=len as i64)
        .map(|k| (0..n as i64).map(|i| pow(&(-&theta * qi(i)), k)).sum::<Q>() / qi(n as i64))
        .collect()
}

pub fn check_uniform_fixed_point(gamma: &Q, len: usize) -> Result<FixedPointReport> {
    let g = Gamma::finite(gamma.clone())?;
    let um = uniform_moments(gamma, len);
    let kappa = cumulants_from_moments(&MomentSeq::new(um.clone(), g)?, len, crate::DEFAULT_PATH_CAP)?;
    let prelimit: Vec<PrelimitRow> = [10usize, 100, 1000]
        .into_iter()
        .map(|n| {
            let m = empty_partition_moments(gamma, n, len);
            let scaled_errors = m.iter().zip(&um).map(|(a, b)| n as f64 * to_f64(&(a - b)).abs()).collect();
            PrelimitRow { n, moments: m, scaled_errors }
        })
        .collect();
    let first_order_errors = prelimit.iter().all(|r| {
        r.scaled_errors
            .iter()
            .enumerate()
            .all(|(j, e)| *e <= to_f64(&pow(gamma, j as i64 + 1)) * (1.0 + 1e-12))
    });
    Ok(FixedPointReport {
        gamma: gamma.clone(),
        uniform_moments: um,
        cumulants_zero: kappa.values.iter().all(|k| k.is_zero()),
        cumulants: kappa.values,
        prelimit,
        first_order_errors,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RadiusCheck {
    pub radius: f64,
    pub certified: bool,
    /// Upper bound on `Σ 𝕡(λ) R^{|λ|}`, infinite when not certified.
    pub bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallTailsReport {
    pub finite_support: bool,
    pub checks: Vec<RadiusCheck>,
    /// Supremum of certifiable radii (infinite for finite support).
    pub radius_limit: f64,
    pub largest_certified: Option<f64>,
}

/// Bound `Σ 𝕡(λ) |P_λ(z)|/P_λ(1^N)` on `R^{-1} < |z_i| < R`. For a partition
/// monomial positivity and homogeneity give `|P_λ(z)| ≤ R^{|λ|} P_λ(1^N)`.
/// The omitted tail is dominated through the size law, which converges while
/// `R` stays below the inverse of its certified ratio.
pub fn small_tails_check(table: &MeasureTable, radii: &[f64]) -> Result<SmallTailsReport> {
    if table.is_empty() || !(table.total_mass > 0.0) {
        return invalid("measure table has no mass");
    }
    if table.has_negative() {
        return invalid("small-tails check needs a nonnegative measure");
    }
    if radii.iter().any(|r| !(*r > 1.0)) {
        return invalid("radii must exceed 1");
    }
    let finite = match &table.family {
        None => {
            if table.exact_total() != Q::one() {
                return invalid(format!("total mass is {}, not 1", fmt_q(&table.exact_total())));
            }
            true
        }
        Some(f) => f.size_law(table.n, &table.theta).tail_bound(table.size_cutoff) == 0.0,
    };
    let (limit, law) = match (&table.family, finite) {
        (Some(f), false) => {
            let law = f.size_law(table.n, &table.theta);
            let ratio = law.tail_ratio(table.size_cutoff);
            (if ratio > 0.0 { 1.0 / ratio } else { f64::INFINITY }, Some(law))
        }
        _ => (f64::INFINITY, None),
    };
    let checks: Vec<RadiusCheck> = radii
        .iter()
        .map(|&r| {
            let head: f64 = table
                .support
                .iter()
                .zip(&table.weights)
                .map(|(l, w)| w * r.powi(l.size() as i32))
                .sum();
            match &law {
                None => RadiusCheck { radius: r, certified: true, bound: head },
                Some(law) => {
                    let k = table.size_cutoff;
                    let ratio = law.tail_ratio(k) * r;
                    if ratio < 1.0 {
                        let tail = law.pmf(k + 1) * r.powi(k as i32 + 1) / (1.0 - ratio);
                        RadiusCheck { radius: r, certified: true, bound: head + tail }
                    } else {
                        RadiusCheck { radius: r, certified: false, bound: f64::INFINITY }
                    }
                }
            }
        })
        .collect();
    let largest_certified = checks.iter().filter(|c| c.certified).map(|c| c.radius).fold(None, |a: Option<f64>, r| {
        Some(a.map_or(r, |a| a.max(r)))
    });
    Ok(SmallTailsReport { finite_support: finite, checks, radius_limit: limit, largest_certified })
}
