//! Cherednik and Dunkl operators on polynomials in `N` variables.
//!
//! The only non-differential ingredient is `(1 − s_{ij})/(x_i − x_j)`, which
//! is applied monomial by monomial through the telescoping identity
//! `(x_i^p x_j^q − x_i^q x_j^p)/(x_i − x_j) = ±(x_i x_j)^a Σ_{c<d} x_i^c x_j^{d−1−c}`
//! with `a = min(p,q)`, `d = |p − q|` and sign `+` when `p > q`. The identity
//! holds verbatim for negative exponents.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{shifted_coordinates, Partition, Signature};
use crate::error::{invalid, Result};
use crate::jack::{jack_eval_ones, jack_laurent_p};
use crate::poly::{NPoly, SymPoly};
use crate::rational::{fmt_q, qi, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorContext {
    pub n: usize,
    pub theta: Q,
}

impl OperatorContext {
    pub fn new(n: usize, theta: Q) -> Result<Self> {
        if n == 0 {
            return invalid("N must be at least 1");
        }
        if theta <= Q::zero() {
            return invalid("θ must be positive");
        }
        Ok(OperatorContext { n, theta })
    }
}

/// `s_{ij}`, 1-based.
pub fn apply_transposition(i: usize, j: usize, f: &NPoly) -> NPoly {
    let mut out = NPoly::zero(f.num_vars());
    for (k, c) in f.terms() {
        let mut e = k.clone();
        e.swap(i - 1, j - 1);
        out.add_term(e, c.clone());
    }
    out
}

/// `(1 − s_{ij}) f / (x_i − x_j)`.
fn divided_difference(i: usize, j: usize, f: &NPoly) -> NPoly {
    let (i, j) = (i - 1, j - 1);
    let mut out = NPoly::zero(f.num_vars());
    for (k, c) in f.terms() {
        let (p, q) = (k[i], k[j]);
        if p == q {
            continue;
        }
        let (a, d) = (p.min(q), (p - q).abs());
        let coef = if p > q { c.clone() } else { -c.clone() };
        for s in 0..d {
            let mut e = k.clone();
            e[i] = a + s;
            e[j] = a + d - 1 - s;
            out.add_term(e, coef.clone());
        }
    }
    out
}

fn times_var(l: usize, f: &NPoly) -> NPoly {
    f.shift_var(l)
}

impl NPoly {
    fn shift_var(&self, l: usize) -> NPoly {
        let mut out = NPoly::zero(self.num_vars());
        for (k, c) in self.terms() {
            let mut e = k.clone();
            e[l - 1] += 1;
            out.add_term(e, c.clone());
        }
        out
    }
}

/// `(x_l/(x_i − x_j))(1 − s_{ij}) f` with `l ∈ {i, j}`.
pub fn apply_divided_diff_part(i: usize, j: usize, l: usize, f: &NPoly) -> NPoly {
    debug_assert!(l == i || l == j);
    times_var(l, &divided_difference(i, j, f))
}

fn euler(i: usize, f: &NPoly) -> NPoly {
    let mut out = NPoly::zero(f.num_vars());
    for (k, c) in f.terms() {
        out.add_term(k.clone(), c * qi(k[i - 1]));
    }
    out
}

fn partial(i: usize, f: &NPoly) -> NPoly {
    let mut out = NPoly::zero(f.num_vars());
    for (k, c) in f.terms() {
        if k[i - 1] == 0 {
            continue;
        }
        let mut e = k.clone();
        e[i - 1] -= 1;
        out.add_term(e, c * qi(k[i - 1]));
    }
    out
}

/// `ξ_i = x_i∂_i − θ(i−1) + θ Σ_{j<i} x_i/(x_i−x_j)(1−s_{ij}) + θ Σ_{j>i} x_j/(x_i−x_j)(1−s_{ij})`.
pub fn apply_cherednik(i: usize, f: &NPoly, ctx: &OperatorContext) -> NPoly {
    let mut out = euler(i, f);
    out.add_scaled(f, &(-&ctx.theta * qi(i as i64 - 1)));
    let mut dd = NPoly::zero(f.num_vars());
    for j in 1..=ctx.n {
        if j == i {
            continue;
        }
        let l = if j < i { i } else { j };
        dd.add_scaled(&apply_divided_diff_part(i, j, l, f), &Q::one());
    }
    out.add_scaled(&dd, &ctx.theta);
    out
}

/// `∂_i + θ Σ_{j≠i} (1 − s_{ij})/(x_i − x_j)`.
pub fn apply_dunkl(i: usize, f: &NPoly, ctx: &OperatorContext) -> NPoly {
    let mut out = partial(i, f);
    for j in 1..=ctx.n {
        if j != i {
            out.add_scaled(&divided_difference(i, j, f), &ctx.theta);
        }
    }
    out
}

/// `ξ_1^{a_1}⋯ξ_N^{a_N} f`.
pub fn apply_cherednik_monomial(exps: &[i64], f: &NPoly, ctx: &OperatorContext) -> NPoly {
    let mut g = f.clone();
    for (i, &a) in exps.iter().enumerate() {
        for _ in 0..a {
            g = apply_cherednik(i + 1, &g, ctx);
        }
    }
    g
}

/// `F(ξ_1, …, ξ_N) f` for a polynomial `F` with nonnegative exponents.
pub fn apply_operator_polynomial(op: &NPoly, f: &NPoly, ctx: &OperatorContext) -> NPoly {
    let mut out = NPoly::zero(f.num_vars());
    for (k, c) in op.terms() {
        out.add_scaled(&apply_cherednik_monomial(k, f, ctx), c);
    }
    out
}

/// `𝒫_k = Σ_i ξ_i^k`.
pub fn apply_power_sum_operator(k: usize, f: &NPoly, ctx: &OperatorContext) -> NPoly {
    let mut out = NPoly::zero(f.num_vars());
    for i in 1..=ctx.n {
        let mut g = f.clone();
        for _ in 0..k {
            g = apply_cherednik(i, &g, ctx);
        }
        out.add_scaled(&g, &Q::one());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub residual_zero: bool,
    /// Index of the first trial polynomial with a nonzero residual.
    pub counterexample: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub theta: String,
    pub trials: usize,
    pub checks: Vec<RelationCheck>,
    pub residual_zero: bool,
}

/// All monomials of total degree `≤ max_degree` in `n` variables.
pub fn monomial_basis(n: usize, max_degree: usize) -> Vec<NPoly> {
    fn rec(n: usize, rem: usize, cur: &mut Vec<i64>, out: &mut Vec<NPoly>) {
        if cur.len() == n {
            out.push(NPoly::monomial(cur.clone(), Q::one()));
            return;
        }
        for e in 0..=rem {
            cur.push(e as i64);
            rec(n, rem - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_degree, &mut Vec::new(), &mut out);
    out
}

pub fn verify_hecke(ctx: &OperatorContext, trials: &[NPoly]) -> HeckeReport {
    let n = ctx.n;
    let th = &ctx.theta;
    let mut checks = Vec::new();
    let mut record = |name: String, residual: &dyn Fn(&NPoly) -> NPoly| {
        let bad = trials.iter().position(|f| !residual(f).is_zero());
        checks.push(RelationCheck {
            relation: name,
            residual_zero: bad.is_none(),
            counterexample: bad,
        });
    };
    for i in 1..n {
        let xi = |k: usize, f: &NPoly| apply_cherednik(k, f, ctx);
        let s = |f: &NPoly| apply_transposition(i, i + 1, f);
        record(format!("xi_{i} s_{i} - s_{i} xi_{} = theta", i + 1), &|f| {
            let mut r = xi(i, &s(f));
            r.add_scaled(&s(&xi(i + 1, f)), &-Q::one());
            r.add_scaled(f, &-th.clone());
            r
        });
        record(format!("xi_{} s_{i} - s_{i} xi_{i} = -theta", i + 1), &|f| {
            let mut r = xi(i + 1, &s(f));
            r.add_scaled(&s(&xi(i, f)), &-Q::one());
            r.add_scaled(f, th);
            r
        });
    }
    for i in 1..=n {
        for j in 1..n {
            if j + 1 == i || j == i {
                continue;
            }
            record(format!("xi_{i} s_{j} = s_{j} xi_{i}"), &|f| {
                let mut r = apply_cherednik(i, &apply_transposition(j, j + 1, f), ctx);
                r.add_scaled(&apply_transposition(j, j + 1, &apply_cherednik(i, f, ctx)), &-Q::one());
                r
            });
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            record(format!("[xi_{i}, xi_{j}] = 0"), &|f| {
                let mut r = apply_cherednik(i, &apply_cherednik(j, f, ctx), ctx);
                r.add_scaled(&apply_cherednik(j, &apply_cherednik(i, f, ctx), ctx), &-Q::one());
                r
            });
        }
    }
    let all = checks.iter().all(|c| c.residual_zero);
    HeckeReport {
        n,
        theta: fmt_q(th),
        trials: trials.len(),
        checks,
        residual_zero: all,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenCheck {
    pub signature: Vec<i64>,
    pub eigenvalue: String,
    pub holds: bool,
}

/// Checks `F(ξ) P_λ = F(ℒ) P_λ` with `ℒ_i = λ_i − (i−1)θ`; `F` is a
/// symmetric polynomial in `N` arguments.
pub fn verify_eigenrelation(sig: &Signature, ctx: &OperatorContext, f: &SymPoly, degree_cap: usize) -> Result<EigenCheck> {
    if sig.n() != ctx.n || f.num_vars() != ctx.n {
        return invalid("signature, operator and symmetric function must share N");
    }
    let p = jack_laurent_p(sig, &ctx.theta, degree_cap)?.expand();
    let ells = shifted_coordinates(sig, &ctx.theta)?.values;
    let fe = f.expand();
    let eig = fe.eval(&ells);
    let lhs = apply_operator_polynomial(&fe, &p, ctx);
    Ok(EigenCheck {
        signature: sig.entries().to_vec(),
        eigenvalue: fmt_q(&eig),
        holds: lhs == p.scale(&eig),
    })
}

/// `Σ_λ w(λ) P_λ / P_λ(1^N)` as an expanded polynomial.
pub fn jgf_polynomial(measure: &[(Partition, Q)], ctx: &OperatorContext, degree_cap: usize) -> Result<NPoly> {
    let mut g = NPoly::zero(ctx.n);
    for (lam, w) in measure {
        let sig = lam.to_signature(ctx.n)?;
        let p = jack_laurent_p(&sig, &ctx.theta, degree_cap)?.expand();
        g.add_scaled(&p, &(w / jack_eval_ones(lam, ctx.n, &ctx.theta)));
    }
    Ok(g)
}

/// `[∏_j 𝒫_{k_j}] G` evaluated at `1^N`.
pub fn moment_extract(measure: &[(Partition, Q)], ks: &[usize], ctx: &OperatorContext, degree_cap: usize) -> Result<Q> {
    let mut g = jgf_polynomial(measure, ctx, degree_cap)?;
    for &k in ks.iter().rev() {
        g = apply_power_sum_operator(k, &g, ctx);
    }
    Ok(g.eval_ones())
}

/// `E[∏_j Σ_i ℒ_i^{k_j}]` directly from the weights.
pub fn direct_moment(measure: &[(Partition, Q)], ks: &[usize], ctx: &OperatorContext) -> Result<Q> {
    let mut acc = Q::zero();
    for (lam, w) in measure {
        let ells = shifted_coordinates(&lam.to_signature(ctx.n)?, &ctx.theta)?.values;
        let mut t = w.clone();
        for &k in ks {
            t *= ells.iter().map(|l| crate::rational::pow(l, k as i64)).sum::<Q>();
        }
        acc += t;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{elementary_poly, power_sum_poly};
    use crate::rational::q;

    fn mono(e: &[i64]) -> NPoly {
        NPoly::monomial(e.to_vec(), Q::one())
    }

    #[test]
    fn transposition_examples() {
        assert_eq!(apply_transposition(1, 2, &mono(&[1, 0])), mono(&[0, 1]));
        assert_eq!(apply_transposition(1, 2, &mono(&[1, 1])), mono(&[1, 1]));
        assert_eq!(apply_transposition(1, 3, &mono(&[2, 0, 1])), mono(&[1, 0, 2]));
    }

    #[test]
    fn divided_diff_examples() {
        assert!(apply_divided_diff_part(1, 2, 1, &mono(&[3, 3])).is_zero());
        assert_eq!(apply_divided_diff_part(1, 2, 1, &mono(&[1, 0])), mono(&[1, 0]));
        assert_eq!(
            apply_divided_diff_part(1, 2, 2, &mono(&[2, 0])),
            &mono(&[1, 1]) + &mono(&[0, 2])
        );
        // Laurent: (x1^{-1} - x2^{-1})/(x1 - x2) = -x1^{-1} x2^{-1}
        assert_eq!(divided_difference(1, 2, &mono(&[-1, 0])), mono(&[-1, -1]).scale(&qi(-1)));
    }

    #[test]
    fn cherednik_examples() {
        let ctx = OperatorContext::new(1, q(1, 2)).unwrap();
        assert_eq!(apply_cherednik(1, &mono(&[4]), &ctx), mono(&[4]).scale(&qi(4)));
        let th = q(1, 3);
        let ctx = OperatorContext::new(2, th.clone()).unwrap();
        // on a symmetric input only the Euler and constant parts survive
        let f = &mono(&[1, 0]) + &mono(&[0, 1]);
        assert_eq!(apply_cherednik(1, &f, &ctx), mono(&[1, 0]));
        assert_eq!(apply_cherednik(2, &f, &ctx), &mono(&[0, 1]) - &f.scale(&th));
        let sum = &apply_cherednik(1, &f, &ctx) + &apply_cherednik(2, &f, &ctx);
        assert_eq!(sum, f.scale(&(qi(1) - &th)));
    }

    #[test]
    fn dunkl_examples() {
        let ctx = OperatorContext::new(1, qi(1)).unwrap();
        assert_eq!(apply_dunkl(1, &mono(&[3]), &ctx), mono(&[2]).scale(&qi(3)));
        let ctx = OperatorContext::new(2, qi(1)).unwrap();
        assert!(apply_dunkl(1, &NPoly::one(2), &ctx).is_zero());
        let want = &(&mono(&[1, 0]).scale(&qi(2)) + &mono(&[1, 0])) + &mono(&[0, 1]);
        assert_eq!(apply_dunkl(1, &mono(&[2, 0]), &ctx), want);
    }

    #[test]
    fn hecke_small() {
        let ctx = OperatorContext::new(1, q(1, 2)).unwrap();
        let r = verify_hecke(&ctx, &monomial_basis(1, 3));
        assert!(r.checks.is_empty() && r.residual_zero);
        let ctx = OperatorContext::new(2, q(1, 2)).unwrap();
        assert!(verify_hecke(&ctx, &monomial_basis(2, 3)).residual_zero);
    }

    #[test]
    fn hecke_detects_wrong_theta_shift() {
        // relation with θ replaced by 2θ must fail
        let ctx = OperatorContext::new(2, q(1, 2)).unwrap();
        let f = mono(&[1, 0]);
        let mut r = apply_cherednik(1, &apply_transposition(1, 2, &f), &ctx);
        r.add_scaled(&apply_transposition(1, 2, &apply_cherednik(2, &f, &ctx)), &-Q::one());
        r.add_scaled(&f, &-qi(1));
        assert!(!r.is_zero());
    }

    #[test]
    fn eigen_examples() {
        let ctx = OperatorContext::new(2, q(1, 2)).unwrap();
        let sig = Signature::new(vec![1, 0]).unwrap();
        let c = verify_eigenrelation(&sig, &ctx, &power_sum_poly(2, 1), 12).unwrap();
        assert!(c.holds);
        assert_eq!(c.eigenvalue, "1/2");
        let ctx = OperatorContext::new(3, qi(2)).unwrap();
        let sig = Signature::new(vec![2, 1, 0]).unwrap();
        assert!(verify_eigenrelation(&sig, &ctx, &elementary_poly(3, 2), 12).unwrap().holds);
        let sig = Signature::new(vec![0, 0, 0]).unwrap();
        let c = verify_eigenrelation(&sig, &ctx, &power_sum_poly(3, 2), 12).unwrap();
        assert!(c.holds);
        assert_eq!(c.eigenvalue, "20");
    }

    #[test]
    fn moment_examples() {
        let th = q(1, 3);
        let ctx = OperatorContext::new(3, th.clone()).unwrap();
        let point = vec![(Partition::empty(), qi(1))];
        assert_eq!(moment_extract(&point, &[1], &ctx, 12).unwrap(), -&th * qi(3));
        let ctx = OperatorContext::new(2, qi(1)).unwrap();
        let unif = vec![
            (Partition::new(vec![1]).unwrap(), q(1, 2)),
            (Partition::new(vec![2]).unwrap(), q(1, 2)),
        ];
        let a = moment_extract(&unif, &[2], &ctx, 12).unwrap();
        // ℒ = (1, −1) and (2, −1)
        assert_eq!(a, q(1, 2) * qi(2) + q(1, 2) * qi(5));
        assert_eq!(direct_moment(&unif, &[2], &ctx).unwrap(), a);
    }
}
