mod common;

use common::*;
use jackht::combinatorics::{enumerate_partitions, partitions_of, Partition};
use jackht::jack::{
    jack_eval_ones, jack_p, lr_table, power_sum, q_factor, q_on_spec, skew_q_on_spec, JackIndex, SpecDescriptor,
    SpecKind,
};
use jackht::measures::{build_measure_table, FamilyParams};
use jackht::poly::{power_sum_poly, NPoly, SymPoly};
use jackht::rational::{pow, q, qi, rising, factorial, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn padded(l: &Partition, n: usize) -> Vec<i64> {
    (1..=n).map(|i| l.part(i) as i64).collect()
}

fn jack(l: &Partition, n: usize, th: &Q) -> SymPoly {
    jack_p(&JackIndex { lambda: l.clone(), n, theta: th.clone() }, 12).unwrap()
}

fn invert(mut a: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut inv: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero()).unwrap();
        a.swap(c, piv);
        inv.swap(c, piv);
        let d = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &d;
            inv[c][j] = &inv[c][j] / &d;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..n {
                    let (x, y) = (&a[c][j] * &f, &inv[c][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}

fn z_lambda(l: &Partition) -> Q {
    let mut acc = Q::one();
    let mut i = 0;
    let parts = l.parts();
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        acc *= pow(&qi(parts[i] as i64), (j - i) as i64) * factorial(j - i);
        i = j;
    }
    acc
}

/// Jack polynomials of degree `d` by Gram–Schmidt on monomials under
/// `⟨p_λ, p_μ⟩ = δ z_λ θ^{−ℓ(λ)}`, in `d` variables.
fn gram_schmidt(d: usize, th: &Q) -> Vec<(Partition, Vec<Q>)> {
    let mut parts = partitions_of(d, d, None);
    // increasing lexicographic order extends dominance
    parts.sort();
    let k = parts.len();
    let a: Vec<Vec<Q>> = parts
        .iter()
        .map(|mu| {
            let mut prod = SymPoly::one(d);
            for &m in mu.parts() {
                prod = prod.mul(&power_sum_poly(d, m as i64));
            }
            parts.iter().map(|l| prod.coeff(&padded(l, d))).collect()
        })
        .collect();
    let ainv = invert(a);
    let w: Vec<Q> = parts.iter().map(|mu| z_lambda(mu) / pow(th, mu.len() as i64)).collect();
    let gram: Vec<Vec<Q>> = (0..k)
        .map(|x| (0..k).map(|y| (0..k).map(|m| &ainv[x][m] * &ainv[y][m] * &w[m]).sum()).collect())
        .collect();
    let ip = |u: &[Q], v: &[Q]| -> Q {
        let mut s = Q::zero();
        for x in 0..k {
            for y in 0..k {
                s += &u[x] * &v[y] * &gram[x][y];
            }
        }
        s
    };
    let mut out: Vec<(Partition, Vec<Q>)> = Vec::new();
    for (i, l) in parts.iter().enumerate() {
        let mut v: Vec<Q> = (0..k).map(|j| if i == j { Q::one() } else { Q::zero() }).collect();
        for (_, u) in &out {
            let c = ip(&v, u) / ip(u, u);
            for j in 0..k {
                v[j] -= &c * &u[j];
            }
        }
        out.push((l.clone(), v));
    }
    out
}

#[test]
fn jack_matches_gram_schmidt() {
    for th in [q(1, 2), q(1, 3), qi(2)] {
        for d in 1..=5 {
            let mut parts = partitions_of(d, d, None);
            parts.sort();
            for (l, coeffs) in gram_schmidt(d, &th) {
                let j = jack(&l, d, &th);
                for (mu, c) in parts.iter().zip(&coeffs) {
                    assert_eq!(j.coeff(&padded(mu, d)), *c, "P_{l} at θ={th}, coefficient of m_{mu}");
                }
            }
        }
    }
}

#[test]
fn worked_examples() {
    let two = p(&[2]);
    let j = jack(&two, 2, &q(1, 2));
    assert_eq!(j.coeff(&[1, 1]), q(2, 3));
    let j = jack(&two, 2, &qi(1));
    assert_eq!(j.coeff(&[2, 0]), qi(1));
    assert_eq!(j.coeff(&[1, 1]), qi(1));
    assert_eq!(jack_eval_ones(&two, 3, &q(1, 2)), qi(5));
    assert_eq!(jack_eval_ones(&p(&[1, 1]), 2, &qi(1)), qi(1));
    assert_eq!(q_factor(&p(&[1]), &q(2, 7)), q(2, 7));
    assert_eq!(q_factor(&two, &qi(1)), qi(1));
}

fn dominated(a: &[i64], b: &[i64]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    a.iter().zip(b).all(|(x, y)| {
        sa += x;
        sb += y;
        sa <= sb
    })
}

fn thetas() -> impl Strategy<Value = Q> {
    prop::sample::select(vec![q(1, 3), q(1, 2), qi(1), qi(2), q(5, 3)])
}

fn partition_upto(max: usize) -> impl Strategy<Value = Partition> {
    let all = enumerate_partitions(max, max, None);
    prop::sample::select(all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monic_triangular_nonnegative(l in partition_upto(8), n in 1usize..=4, th in thetas()) {
        let j = jack(&l, n, &th);
        if l.len() > n {
            prop_assert!(j.is_zero());
        } else {
            let top = padded(&l, n);
            prop_assert_eq!(j.leading_key(), Some(&top));
            prop_assert_eq!(j.coeff(&top), Q::one());
            for (k, c) in j.terms() {
                prop_assert!(dominated(k, &top));
                prop_assert!(*c > Q::zero());
            }
        }
    }

    #[test]
    fn index_stability(l in partition_upto(6), n in 1usize..=3, th in thetas()) {
        prop_assume!(l.len() <= n);
        let bigger = Partition::new((1..=n).map(|i| l.part(i) + 1).collect()).unwrap();
        prop_assert_eq!(jack(&bigger, n, &th), jack(&l, n, &th).shift(1));
    }

    #[test]
    fn lr_mass_and_support(mu in partition_upto(3), nu in partition_upto(3), n in 1usize..=3, th in thetas()) {
        prop_assume!(mu.len() <= n && nu.len() <= n);
        let t = lr_table(&mu, &nu, n, &th, 12).unwrap();
        prop_assert_eq!(t.total(), Q::one());
        for lam in t.entries.keys() {
            prop_assert_eq!(lam.size(), mu.size() + nu.size());
            prop_assert!(lam.first() <= mu.first() + nu.first());
        }
        let swapped = lr_table(&nu, &mu, n, &th, 12).unwrap();
        prop_assert_eq!(t.entries, swapped.entries);
    }
}

#[test]
fn beta_duality() {
    let c = q(2, 3);
    for th in [q(1, 2), qi(2)] {
        let rho = SpecDescriptor::beta_repeated(&c / &th, 3, th.clone()).unwrap();
        for l in enumerate_partitions(9, 3, Some(3)) {
            let lhs = q_on_spec(&l, &rho, 12).unwrap();
            let rhs = pow(&c, l.size() as i64) * jack_eval_ones(&l.conjugate(), 3, &th.recip());
            assert_eq!(lhs, rhs, "{l} at θ={th}");
        }
    }
}

#[test]
fn skew_cauchy_single_variables() {
    let (a, b) = (q(1, 2), q(2, 3));
    for th in [q(1, 2), qi(2)] {
        let r1 = SpecDescriptor::alpha_repeated(a.clone(), 1, th.clone()).unwrap();
        let r2 = SpecDescriptor::alpha_repeated(b.clone(), 1, th.clone()).unwrap();
        let skew_p = |l: &Partition, m: &Partition| q_factor(m, &th) / q_factor(l, &th) * skew_q_on_spec(l, m, &r2, 12).unwrap();
        for mu in enumerate_partitions(2, 2, None) {
            for nu in enumerate_partitions(2, 2, None) {
                for g in 0..=6usize {
                    let lhs: Q = partitions_of(g, g.max(1), None)
                        .iter()
                        .map(|l| skew_q_on_spec(l, &nu, &r1, 12).unwrap() * skew_p(l, &mu))
                        .sum();
                    let mut rhs = Q::zero();
                    for k in enumerate_partitions(2, 2, None) {
                        let s = mu.size() + nu.size();
                        if g + k.size() < s {
                            continue;
                        }
                        let j = g + k.size() - s;
                        let h = rising(&th, j) / factorial(j) * pow(&(&a * &b), j as i64);
                        rhs += h * skew_q_on_spec(&mu, &k, &r1, 12).unwrap() * skew_p(&nu, &k);
                    }
                    assert_eq!(lhs, rhs, "μ={mu} ν={nu} degree {g} θ={th}");
                }
            }
        }
    }
}

/// `Σ_{|λ| ≤ d} Q_λ(ρ) P_λ(x)` equals `exp(θ Σ_k p_k(ρ) p_k(x)/k)` to degree `d`.
#[test]
fn cauchy_product_form() {
    let th = q(1, 2);
    let kind = SpecKind::Union {
        parts: vec![
            SpecKind::PureAlpha { values: vec![q(1, 3)] },
            SpecKind::PureBeta { values: vec![q(1, 2)] },
            SpecKind::Plancherel { delta: q(1, 5) },
        ],
    };
    let rho = SpecDescriptor::new(kind, th.clone()).unwrap().scaled(qi(2)).unwrap();
    let n = 2;
    let d = 4;
    let mut lhs = NPoly::zero(n);
    for l in enumerate_partitions(d, n, None) {
        lhs.add_scaled(&jack(&l, n, &th).expand(), &q_on_spec(&l, &rho, 12).unwrap());
    }
    let mut arg = NPoly::zero(n);
    for k in 1..=d {
        arg.add_scaled(&power_sum_poly(n, k as i64).expand(), &(&th * power_sum(&rho, k) / qi(k as i64)));
    }
    assert_eq!(lhs, arg.series_exp(d as i64).unwrap());
}

/// The table JGF of a pure-beta measure is `Π_i ((1 + c x_i)/(1 + c))^M`.
#[test]
fn beta_table_jgf_is_a_product() {
    let (n, m, c) = (2, 2, q(1, 3));
    for th in [q(1, 2), qi(1), qi(2)] {
        let t = build_measure_table(&FamilyParams::Beta { c: c.clone(), m }, n, &th, n * m, 0.0).unwrap();
        let mut g = NPoly::zero(n);
        for (l, w) in t.support.iter().zip(&t.exact) {
            g.add_scaled(&jack(l, n, &th).expand(), &(w / t.exact_total() / jack_eval_ones(l, n, &th)));
        }
        let mut want = NPoly::one(n);
        for i in 0..n {
            let mut f = NPoly::constant(n, (Q::one() + &c).recip());
            f.add_scaled(&NPoly::var(n, i + 1), &(&c / (Q::one() + &c)));
            for _ in 0..m {
                want = &want * &f;
            }
        }
        assert_eq!(g, want, "θ={th}");
    }
}
