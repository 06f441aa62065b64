use std::io::Read;

use jackht::cherednik::{monomial_basis, verify_eigenrelation, verify_hecke, OperatorContext};
use jackht::combinatorics::{enumerate_partitions, partitions_of, Partition, Signature};
use jackht::harness::{auto_cutoff, run_convolution_experiment, run_lln_experiment, sample_family, LlnConfig, SamplerMethod};
use jackht::jack::{
    jack_eval_ones, jack_laurent_p, jack_on_spec, jack_p, lr_table, q_factor, q_on_spec, skew_q_on_spec, JackIndex,
    SpecDescriptor, SpecKind,
};
use jackht::measures::{
    build_measure_table, particle_rows, simulate_chains, transition_probs, ChainMode, ChainOptions, FamilyParams,
    InitialState,
};
use jackht::poly::{elementary_poly, power_sum_poly, SymPoly};
use jackht::rational::{factorial, fmt_q, parse_q, pow, qi, rising, Q};
use jackht::transforms::{
    cumulants_from_moments, moments_fixed_temp, moments_from_cumulants, moments_top_degree, moments_via_lagrange,
    CumulantSeq, Gamma, MomentSeq,
};
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::{usage, CliError};
use crate::output::{csv_document, json_document, write_to, Provenance};

type Res<T> = Result<T, CliError>;

pub fn dispatch(cli: &Cli) -> Res<()> {
    let base = serde_json::to_value(cli)?;
    let g = &cli.global;
    match &cli.command {
        Command::Transform(a) => transform(base, g, a),
        Command::Jack(JackCommand::Expand(a)) => jack_expand(base, g, a),
        Command::Jack(JackCommand::Evaluate(a)) => jack_evaluate(base, g, a),
        Command::Jack(JackCommand::Lr(a)) => jack_lr(base, g, a),
        Command::Verify(VerifyCommand::Hecke(a)) => verify_hecke_cmd(base, g, a),
        Command::Verify(VerifyCommand::Eigen(a)) => verify_eigen_cmd(base, g, a),
        Command::Verify(VerifyCommand::SkewCauchy(a)) => verify_skew_cauchy(base, g, a),
        Command::Verify(VerifyCommand::Stochastic(a)) => verify_stochastic(base, g, a),
        Command::Sample(a) => sample(base, g, a),
        Command::SimulateChain(a) => simulate(base, g, a),
        Command::Lln(a) => lln(base, g, a),
        Command::Convolve(a) => convolve(base, g, a),
    }
}

// ---- parsing ---------------------------------------------------------------

fn theta_of(s: &str) -> Res<Q> {
    let t = parse_q(s)?;
    if t <= Q::zero() {
        return usage(format!("θ must be positive, got {s}"));
    }
    Ok(t)
}

fn rational_value(v: &Value) -> Res<Q> {
    match v {
        Value::String(s) => Ok(parse_q(s)?),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(parse_q(&n.to_string())?),
        other => usage(format!("expected an integer or a \"p/q\" string, got {other}")),
    }
}

fn rationals(s: &str) -> Res<Vec<Q>> {
    let v: Vec<Value> = serde_json::from_str(s)?;
    v.iter().map(rational_value).collect()
}

fn partition(s: &str) -> Res<Partition> {
    let v: Vec<usize> = serde_json::from_str(s)?;
    Ok(Partition::new(v)?)
}

fn spec(s: &str, theta: &Q) -> Res<SpecDescriptor> {
    let kind: SpecKind = serde_json::from_str(s)?;
    Ok(SpecDescriptor::new(kind, theta.clone())?)
}

fn measure(s: &str) -> Res<Vec<(Partition, Q)>> {
    let v: Vec<(Partition, Value)> = serde_json::from_str(s)?;
    v.into_iter().map(|(l, w)| Ok((l, rational_value(&w)?))).collect()
}

fn strs(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn format_or(g: &Global, default: Format) -> Format {
    g.format.unwrap_or(default)
}

fn json_only(g: &Global, what: &str) -> Res<()> {
    if g.format == Some(Format::Csv) {
        return usage(format!("{what} has no CSV form"));
    }
    Ok(())
}

/// Attach the resolved values to the echoed config.
fn provenance(mut base: Value, resolved: Value) -> Provenance {
    base["resolved"] = resolved;
    Provenance::new(base)
}

fn emit_json<T: Serialize>(g: &Global, prov: &Provenance, result: &T) -> Res<()> {
    write_to(g.out.as_deref(), &json_document(prov, result)?)
}

// ---- transform -------------------------------------------------------------

fn transform(base: Value, g: &Global, a: &TransformArgs) -> Res<()> {
    let gamma: Gamma = a.gamma.parse()?;
    let input = match (a.direction, &a.kappa, &a.moments) {
        (Direction::M2k, _, Some(m)) => rationals(m)?,
        (Direction::M2k, _, None) => return usage("m2k needs --moments"),
        (_, Some(k), _) => rationals(k)?,
        (_, None, _) => return usage("this direction needs --kappa"),
    };
    let len = a.len.unwrap_or(input.len());
    let format = format_or(g, Format::Json);
    let out = match a.direction {
        Direction::K2m => moments_from_cumulants(&CumulantSeq::new(input.clone(), gamma.clone())?, len, g.path_cap)?.values,
        Direction::M2k => cumulants_from_moments(&MomentSeq::new(input.clone(), gamma.clone())?, len, g.path_cap)?.values,
        Direction::K2mInf => moments_fixed_temp(&CumulantSeq::new(input.clone(), Gamma::Infinite)?, len, g.path_cap)?.values,
        Direction::K2mTop => {
            let Gamma::Finite(gv) = &gamma else {
                return usage("k2m-top needs a finite γ");
            };
            moments_top_degree(&CumulantSeq::new(input.clone(), gamma.clone())?, gv, len, g.path_cap)?.values
        }
        Direction::K2mLagrange => {
            if len > g.path_cap {
                return Err(jackht::Error::Cap(format!("length {len} exceeds cap {}", g.path_cap)).into());
            }
            moments_via_lagrange(&CumulantSeq::new(input.clone(), Gamma::Infinite)?, len)?.values
        }
    };
    let gamma_used = match a.direction {
        Direction::K2mInf | Direction::K2mLagrange => Gamma::Infinite,
        _ => gamma,
    };
    let prov = provenance(base, json!({ "len": len, "gamma": gamma_used.to_string(), "format": format }));
    match format {
        Format::Json => emit_json(
            g,
            &prov,
            &json!({
                "direction": a.direction,
                "gamma": gamma_used.to_string(),
                "input": strs(&input),
                "output": strs(&out),
            }),
        ),
        Format::Csv => {
            let rows: Vec<Vec<String>> = out.iter().enumerate().map(|(i, v)| vec![(i + 1).to_string(), fmt_q(v)]).collect();
            write_to(g.out.as_deref(), &csv_document(&prov, &["ell", "value"], &rows)?)
        }
    }
}

// ---- jack ------------------------------------------------------------------

#[derive(Serialize)]
struct Term {
    key: Vec<i64>,
    coefficient: String,
}

fn jack_expand(base: Value, g: &Global, a: &JackExpandArgs) -> Res<()> {
    let theta = theta_of(&a.theta)?;
    let mut ints: Vec<i64> = serde_json::from_str(&a.lambda)?;
    if ints.len() > a.n {
        if ints[a.n..].iter().any(|&x| x != 0) {
            return usage(format!("{} has more than N = {} nonzero entries", a.lambda, a.n));
        }
        ints.truncate(a.n);
    }
    let laurent = ints.iter().any(|&x| x < 0);
    if laurent && ints.len() != a.n {
        return usage("a signature with negative entries must have exactly N entries");
    }
    ints.resize(a.n, 0);
    let sig = Signature::new(ints.clone())?;
    let mut poly: SymPoly = match sig.to_partition() {
        Some(l) => jack_p(&JackIndex { lambda: l, n: a.n, theta: theta.clone() }, g.degree_cap)?,
        None => jack_laurent_p(&sig, &theta, g.degree_cap)?,
    };
    if a.normalization == Normalization::Q {
        let Some(l) = sig.to_partition() else {
            return usage("Q normalization needs a partition");
        };
        poly = poly.scale(&q_factor(&l, &theta));
    }
    let terms: Vec<Term> = poly
        .terms()
        .iter()
        .rev()
        .map(|(k, c)| Term { key: k.clone(), coefficient: fmt_q(c) })
        .collect();
    let format = format_or(g, Format::Json);
    let prov = provenance(base, json!({ "signature": ints, "format": format }));
    match format {
        Format::Json => emit_json(
            g,
            &prov,
            &json!({
                "signature": ints,
                "N": a.n,
                "theta": fmt_q(&theta),
                "normalization": a.normalization,
                "basis": "monomial_symmetric",
                "terms": terms,
            }),
        ),
        Format::Csv => {
            let rows: Vec<Vec<String>> = terms
                .iter()
                .map(|t| vec![t.key.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "), t.coefficient.clone()])
                .collect();
            write_to(g.out.as_deref(), &csv_document(&prov, &["monomial", "coefficient"], &rows)?)
        }
    }
}

fn jack_evaluate(base: Value, g: &Global, a: &JackEvalArgs) -> Res<()> {
    json_only(g, "jack evaluate")?;
    let theta = theta_of(&a.theta)?;
    let l = partition(&a.lambda)?;
    if l.len() > a.n {
        return usage(format!("{l} has more than N = {} rows", a.n));
    }
    let on_spec = match &a.spec {
        Some(s) => {
            let rho = spec(s, &theta)?;
            Some(json!({
                "P": fmt_q(&jack_on_spec(&l, &rho, g.degree_cap)?),
                "Q": fmt_q(&q_on_spec(&l, &rho, g.degree_cap)?),
            }))
        }
        None => None,
    };
    let prov = provenance(base, json!({}));
    emit_json(
        g,
        &prov,
        &json!({
            "lambda": l,
            "N": a.n,
            "theta": fmt_q(&theta),
            "P_at_ones": fmt_q(&jack_eval_ones(&l, a.n, &theta)),
            "Q_over_P": fmt_q(&q_factor(&l, &theta)),
            "on_spec": on_spec,
        }),
    )
}

fn jack_lr(base: Value, g: &Global, a: &LrArgs) -> Res<()> {
    json_only(g, "jack lr")?;
    let theta = theta_of(&a.theta)?;
    let t = lr_table(&partition(&a.mu)?, &partition(&a.nu)?, a.n, &theta, g.degree_cap)?;
    let prov = provenance(base, json!({}));
    emit_json(
        g,
        &prov,
        &json!({
            "table": t,
            "total": fmt_q(&t.total()),
            "has_negative": t.has_negative(),
        }),
    )
}

// ---- verify ----------------------------------------------------------------

fn verify_hecke_cmd(base: Value, g: &Global, a: &HeckeArgs) -> Res<()> {
    json_only(g, "verify")?;
    let ctx = OperatorContext::new(a.n, theta_of(&a.theta)?)?;
    let trials = monomial_basis(a.n, a.max_degree);
    let rep = verify_hecke(&ctx, &trials);
    let counterexample = rep.checks.iter().find(|c| !c.residual_zero).map(|c| {
        let i = c.counterexample.unwrap_or(0);
        json!({
            "relation": c.relation,
            "trial": i,
            "monomial": trials[i].terms().keys().next(),
        })
    });
    let prov = provenance(base, json!({ "trials": trials.len() }));
    emit_json(
        g,
        &prov,
        &json!({
            "relation": "hecke",
            "N": a.n,
            "theta": rep.theta,
            "max_degree": a.max_degree,
            "trials": rep.trials,
            "checks": rep.checks,
            "residual_zero": rep.residual_zero,
            "counterexample": counterexample,
        }),
    )
}

fn symmetric_function(name: &str, n: usize) -> Res<SymPoly> {
    let name = name.trim();
    let bad = || CliError::Usage(format!("unknown symmetric function {name:?}; use p<k> or e<k>"));
    let k: usize = name.get(1..).and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    match name.chars().next() {
        Some('p') if k >= 1 => Ok(power_sum_poly(n, k as i64)),
        Some('e') if k >= 1 && k <= n => Ok(elementary_poly(n, k)),
        Some('e') if k >= 1 => usage(format!("{name} vanishes in N = {n} variables")),
        _ => Err(bad()),
    }
}

fn verify_eigen_cmd(base: Value, g: &Global, a: &EigenArgs) -> Res<()> {
    json_only(g, "verify")?;
    let ctx = OperatorContext::new(a.n, theta_of(&a.theta)?)?;
    let names: Vec<&str> = a.functions.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let fs: Vec<SymPoly> = names.iter().map(|f| symmetric_function(f, a.n)).collect::<Res<_>>()?;
    let mut checked = 0;
    let mut counterexample = None;
    'outer: for l in enumerate_partitions(a.max_size, a.n, None) {
        let sig = l.to_signature(a.n)?;
        for (name, f) in names.iter().zip(&fs) {
            checked += 1;
            let c = verify_eigenrelation(&sig, &ctx, f, g.degree_cap)?;
            if !c.holds {
                counterexample = Some(json!({ "lambda": l, "function": name, "eigenvalue": c.eigenvalue }));
                break 'outer;
            }
        }
    }
    let prov = provenance(base, json!({ "functions": names }));
    emit_json(
        g,
        &prov,
        &json!({
            "relation": "eigen",
            "N": a.n,
            "theta": fmt_q(&ctx.theta),
            "max_size": a.max_size,
            "functions": names,
            "checked": checked,
            "residual_zero": counterexample.is_none(),
            "counterexample": counterexample,
        }),
    )
}

/// `Σ_λ Q_{λ/ν}(a) P_{λ/μ}(b) = H(a; b) Σ_κ Q_{μ/κ}(a) P_{ν/κ}(b)`, graded
/// by `|λ|`, with `H = (1 − ab)^{−θ}`.
fn verify_skew_cauchy(base: Value, g: &Global, a: &SkewCauchyArgs) -> Res<()> {
    json_only(g, "verify")?;
    let th = theta_of(&a.theta)?;
    let (x, y) = (parse_q(&a.a)?, parse_q(&a.b)?);
    if x < Q::zero() || y < Q::zero() {
        return usage("alpha variables must be nonnegative");
    }
    if a.max_degree > g.degree_cap {
        return Err(jackht::Error::Cap(format!("degree {} exceeds cap {}", a.max_degree, g.degree_cap)).into());
    }
    let r1 = SpecDescriptor::alpha_repeated(x.clone(), 1, th.clone())?;
    let r2 = SpecDescriptor::alpha_repeated(y.clone(), 1, th.clone())?;
    let cap = g.degree_cap;
    let skew_p = |l: &Partition, m: &Partition| -> Res<Q> {
        Ok(q_factor(m, &th) / q_factor(l, &th) * skew_q_on_spec(l, m, &r2, cap)?)
    };
    let inner = enumerate_partitions(a.inner, a.inner.max(1), None);
    let xy = &x * &y;
    let mut checked = 0;
    let mut counterexample = None;
    'outer: for mu in &inner {
        for nu in &inner {
            for d in 0..=a.max_degree {
                let mut lhs = Q::zero();
                for l in partitions_of(d, d.max(1), None) {
                    lhs += skew_q_on_spec(&l, nu, &r1, cap)? * skew_p(&l, mu)?;
                }
                let mut rhs = Q::zero();
                for k in &inner {
                    let s = mu.size() + nu.size();
                    if d + k.size() < s || !mu.contains(k) || !nu.contains(k) {
                        continue;
                    }
                    let j = d + k.size() - s;
                    let h = rising(&th, j) / factorial(j) * pow(&xy, j as i64);
                    rhs += h * skew_q_on_spec(mu, k, &r1, cap)? * skew_p(nu, k)?;
                }
                checked += 1;
                if lhs != rhs {
                    counterexample = Some(json!({
                        "mu": mu, "nu": nu, "degree": d, "lhs": fmt_q(&lhs), "rhs": fmt_q(&rhs),
                    }));
                    break 'outer;
                }
            }
        }
    }
    let prov = provenance(base, json!({}));
    emit_json(
        g,
        &prov,
        &json!({
            "relation": "skew-cauchy",
            "theta": fmt_q(&th),
            "a": fmt_q(&x),
            "b": fmt_q(&y),
            "max_degree": a.max_degree,
            "checked": checked,
            "residual_zero": counterexample.is_none(),
            "counterexample": counterexample,
        }),
    )
}

fn verify_stochastic(base: Value, g: &Global, a: &StochasticArgs) -> Res<()> {
    json_only(g, "verify")?;
    let theta = theta_of(&a.theta)?;
    let rho = spec(&a.spec, &theta)?;
    let l = partition(&a.lambda)?;
    let t = transition_probs(&l, &rho, a.n, a.jump_cutoff, g.degree_cap, f64::INFINITY)?;
    let prov = provenance(base, json!({}));
    emit_json(
        g,
        &prov,
        &json!({
            "relation": "stochastic",
            "N": a.n,
            "theta": fmt_q(&theta),
            "lambda": l,
            "jump_cutoff": a.jump_cutoff,
            "states": t.entries.len(),
            "total": t.total,
            "defect": t.defect,
            "tolerance": g.tolerance,
            "residual_zero": t.defect <= g.tolerance,
        }),
    )
}

// ---- measures --------------------------------------------------------------

fn parts_string(l: &Partition) -> String {
    l.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn sample(base: Value, g: &Global, a: &SampleArgs) -> Res<()> {
    let theta = theta_of(&a.theta)?;
    let family: FamilyParams = serde_json::from_str(&a.family)?;
    family.validate()?;
    let seed = g.seed.unwrap_or(0);
    let format = format_or(g, Format::Json);
    if a.table {
        let cutoff = match g.support_cutoff {
            Some(c) => c,
            None => auto_cutoff(&family, a.n, &theta, g.tolerance)?,
        };
        let t = build_measure_table(&family, a.n, &theta, cutoff, g.tolerance)?;
        let prov = provenance(base, json!({ "support_cutoff": cutoff, "format": format }));
        return match format {
            Format::Json => emit_json(g, &prov, &t),
            Format::Csv => {
                let rows: Vec<Vec<String>> = t
                    .support
                    .iter()
                    .zip(&t.weights)
                    .map(|(l, w)| vec![l.size().to_string(), parts_string(l), w.to_string()])
                    .collect();
                write_to(g.out.as_deref(), &csv_document(&prov, &["size", "parts", "weight"], &rows)?)
            }
        };
    }
    let method = match a.method {
        Method::Auto => SamplerMethod::Auto,
        Method::Table => SamplerMethod::Table,
    };
    let draws = sample_family(&family, a.n, &theta, a.count, seed, method, g.tolerance)?;
    let prov = provenance(base, json!({ "seed": seed, "format": format }));
    match format {
        Format::Json => emit_json(
            g,
            &prov,
            &json!({
                "family": family,
                "N": a.n,
                "theta": fmt_q(&theta),
                "seed": seed,
                "samples": draws,
            }),
        ),
        Format::Csv => {
            let rows: Vec<Vec<String>> = draws
                .iter()
                .enumerate()
                .map(|(i, l)| vec![i.to_string(), l.size().to_string(), parts_string(l)])
                .collect();
            write_to(g.out.as_deref(), &csv_document(&prov, &["sample", "size", "parts"], &rows)?)
        }
    }
}

fn simulate(base: Value, g: &Global, a: &ChainArgs) -> Res<()> {
    let (n, theta, steps, mode) = match a.preset {
        Some(p) => {
            let n = a.n.unwrap_or(60);
            let th = match (&a.theta, p) {
                (Some(t), _) => theta_of(t)?,
                (None, Preset::FixedTemp) => qi(1),
                (None, Preset::Gamma2) => qi(2) / qi(n as i64),
                (None, Preset::GammaHalf) => Q::new(1.into(), (2 * n as i64).into()),
            };
            (n, th, a.steps.unwrap_or(100), a.mode.unwrap_or(Mode::Growth))
        }
        None => {
            let (Some(n), Some(t)) = (a.n, &a.theta) else {
                return usage("simulate-chain needs --N and --theta unless a preset is given");
            };
            (n, theta_of(t)?, a.steps.unwrap_or(10), a.mode.unwrap_or(Mode::Kernel))
        }
    };
    let rho = match &a.spec {
        Some(s) => spec(s, &theta)?,
        None => SpecDescriptor::plancherel(theta.recip(), theta.clone())?,
    };
    let initial = partition(&a.initial)?;
    let seed = g.seed.unwrap_or(0);
    let opts = ChainOptions {
        jump_cutoff: a.jump_cutoff,
        degree_cap: g.degree_cap,
        tolerance: g.tolerance,
        mode: match mode {
            Mode::Kernel => ChainMode::Kernel,
            Mode::Growth => ChainMode::Growth,
        },
    };
    let trajs = simulate_chains(&InitialState::Fixed(initial), &rho, n, steps, a.trajectories, seed, &opts)?;
    let format = format_or(g, Format::Csv);
    let prov = provenance(
        base,
        json!({
            "N": n,
            "theta": fmt_q(&theta),
            "steps": steps,
            "mode": mode,
            "spec": rho.kind,
            "seed": seed,
            "format": format,
        }),
    );
    match format {
        Format::Json => {
            let out: Vec<Value> = trajs
                .iter()
                .enumerate()
                .map(|(i, t)| json!({ "trajectory": i, "states": t }))
                .collect();
            emit_json(g, &prov, &json!({ "N": n, "theta": fmt_q(&theta), "trajectories": out }))
        }
        Format::Csv => {
            let multi = a.trajectories > 1;
            let mut rows = Vec::new();
            for (i, t) in trajs.iter().enumerate() {
                for (step, idx, v) in particle_rows(t, n, &rho)? {
                    let mut r = Vec::with_capacity(4);
                    if multi {
                        r.push(i.to_string());
                    }
                    r.extend([step.to_string(), idx.to_string(), v.to_string()]);
                    rows.push(r);
                }
            }
            let header: &[&str] = if multi {
                &["trajectory", "step", "particle_index", "L_value"]
            } else {
                &["step", "particle_index", "L_value"]
            };
            write_to(g.out.as_deref(), &csv_document(&prov, header, &rows)?)
        }
    }
}

// ---- experiments -----------------------------------------------------------

fn lln(base: Value, g: &Global, a: &LlnArgs) -> Res<()> {
    let text = if a.config.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&a.config)?
    };
    let mut cfg: LlnConfig = serde_json::from_str(&text)?;
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    let report = run_lln_experiment(&cfg)?;
    let format = format_or(g, Format::Json);
    let prov = provenance(base, json!({ "experiment": report.config, "format": format }));
    let header = ["ell", "predicted", "predicted_f64", "estimate", "std_error", "drift_allowance", "z_raw", "z"];
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.ell.to_string(),
                r.predicted.clone(),
                r.predicted_f64.to_string(),
                r.estimate.to_string(),
                r.std_error.to_string(),
                r.drift_allowance.to_string(),
                r.z_raw.to_string(),
                r.z.to_string(),
            ]
        })
        .collect();
    let csv = csv_document(&prov, &header, &rows)?;
    if let Some(p) = &a.rows_csv {
        write_to(Some(p), &csv)?;
    }
    match format {
        Format::Json => emit_json(g, &prov, &report),
        Format::Csv => write_to(g.out.as_deref(), &csv),
    }
}

fn convolve(base: Value, g: &Global, a: &ConvolveArgs) -> Res<()> {
    json_only(g, "convolve")?;
    let theta = theta_of(&a.theta)?;
    let report = run_convolution_experiment(&measure(&a.a)?, &measure(&a.b)?, a.n, &theta, a.degree, g.degree_cap)?;
    let prov = provenance(base, json!({}));
    emit_json(g, &prov, &report)
}
