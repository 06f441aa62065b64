mod common;

use common::*;
use jackht::rational::{pow, q, qi, rising, to_f64, Q};
use jackht::transforms::{
    convolve_cumulants, cumulants_from_moments, moments_fixed_temp, moments_from_cumulants, moments_via_lagrange,
    uniform_moments, CumulantSeq, Gamma,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const CAP: usize = 14;

fn gammas() -> impl Strategy<Value = Q> {
    prop::sample::select(vec![q(1, 2), qi(1), qi(3), q(2, 7)])
}

fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=6).prop_map(|(a, b)| q(a, b))
}

fn kappa_values(len: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(rational(), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn round_trip(values in kappa_values(8), g in gammas()) {
        let k = CumulantSeq::new(values, Gamma::finite(g).unwrap()).unwrap();
        let m = moments_from_cumulants(&k, 8, CAP).unwrap();
        prop_assert_eq!(cumulants_from_moments(&m, 8, CAP).unwrap(), k);
    }

    #[test]
    fn round_trip_fixed_temperature(values in kappa_values(7)) {
        let k = CumulantSeq::new(values, Gamma::Infinite).unwrap();
        let m = moments_fixed_temp(&k, 7, CAP).unwrap();
        prop_assert_eq!(cumulants_from_moments(&m, 7, CAP).unwrap(), k);
    }

    /// Changing `κ_ℓ` moves `m_ℓ` by `(γ+1)^{↑(ℓ−1)}` times the change and
    /// leaves earlier moments alone.
    #[test]
    fn triangular_in_the_last_cumulant(values in kappa_values(6), g in gammas(), l in 1usize..=6, d in rational()) {
        let gamma = Gamma::finite(g.clone()).unwrap();
        let k = CumulantSeq::new(values.clone(), gamma.clone()).unwrap();
        let mut bumped = values;
        bumped[l - 1] += &d;
        let k2 = CumulantSeq::new(bumped, gamma).unwrap();
        let a = moments_from_cumulants(&k, 6, CAP).unwrap().values;
        let b = moments_from_cumulants(&k2, 6, CAP).unwrap().values;
        for j in 0..l - 1 {
            prop_assert_eq!(&a[j], &b[j]);
        }
        prop_assert_eq!(&b[l - 1] - &a[l - 1], d * rising(&(g + qi(1)), l - 1));
    }

    #[test]
    fn lagrange_agrees_with_paths(values in kappa_values(7)) {
        let k = CumulantSeq::new(values, Gamma::Infinite).unwrap();
        prop_assert_eq!(moments_via_lagrange(&k, 7).unwrap(), moments_fixed_temp(&k, 7, CAP).unwrap());
    }

    #[test]
    fn single_cumulant_is_a_motzkin_sum(t in rational(), g in gammas(), len in 1usize..=7) {
        let mut values = vec![Q::zero(); len];
        values[0] = t.clone();
        let k = CumulantSeq::new(values, Gamma::finite(g.clone()).unwrap()).unwrap();
        let m = moments_from_cumulants(&k, len, CAP).unwrap();
        prop_assert_eq!(&m.values[len - 1], &motzkin_moment(len, &t, &g));
    }

    #[test]
    fn convolution_neutral_and_commutative(a in kappa_values(5), b in kappa_values(5), g in gammas()) {
        let gamma = Gamma::finite(g).unwrap();
        let ka = CumulantSeq::new(a, gamma.clone()).unwrap();
        let kb = CumulantSeq::new(b, gamma.clone()).unwrap();
        let zero = CumulantSeq::new(vec![Q::zero(); 5], gamma).unwrap();
        prop_assert_eq!(convolve_cumulants(&ka, &zero).unwrap(), ka.clone());
        prop_assert_eq!(convolve_cumulants(&ka, &kb).unwrap(), convolve_cumulants(&kb, &ka).unwrap());
    }
}

#[test]
fn zero_cumulants_give_the_uniform_law() {
    for g in [q(1, 2), qi(1), qi(3)] {
        let k = CumulantSeq::new(vec![Q::zero(); 8], Gamma::finite(g.clone()).unwrap()).unwrap();
        let m = moments_from_cumulants(&k, 8, CAP).unwrap();
        assert_eq!(m.values, uniform_moments(&g, 8));
        for (l, v) in m.values.iter().enumerate() {
            assert_eq!(*v, pow(&-&g, l as i64 + 1) / qi(l as i64 + 2));
        }
    }
}

#[test]
fn mismatched_gamma_is_rejected() {
    let a = CumulantSeq::new(vec![qi(1)], Gamma::finite(qi(1)).unwrap()).unwrap();
    let b = CumulantSeq::new(vec![qi(1)], Gamma::finite(qi(2)).unwrap()).unwrap();
    assert!(convolve_cumulants(&a, &b).is_err());
    assert!(Gamma::finite(qi(0)).is_err());
}

/// With `|κ_n| ≤ C^n`, `m_{2ℓ} ≤ (4ℓA)^{2ℓ}` where `A = max(C₀, C₁, C₂C₃)`,
/// `C₀ = max(1, |κ₁| + γ)`, `C₁ = |κ₁| + 1`, `C₂ = 1 + γ`, `C₃ = C(1 + C)`.
#[test]
fn carleman_growth_bound() {
    let mut r = rng(77);
    for c in [qi(1), qi(2)] {
        for g in [q(1, 2), qi(2)] {
            for _ in 0..3 {
                let values: Vec<Q> = (1..=12)
                    .map(|n| {
                        let u = random_q(&mut r);
                        let u = if u.abs() > qi(1) { u.recip() } else { u };
                        u * pow(&c, n)
                    })
                    .collect();
                let k1 = values[0].abs();
                let k = CumulantSeq::new(values, Gamma::finite(g.clone()).unwrap()).unwrap();
                let m = moments_from_cumulants(&k, 12, CAP).unwrap();
                let c0 = to_f64(&(&k1 + &g)).max(1.0);
                let c1 = to_f64(&k1) + 1.0;
                let c2 = 1.0 + to_f64(&g);
                let c3 = to_f64(&c) * (1.0 + to_f64(&c));
                let a = c0.max(c1).max(c2 * c3);
                for l in 1..=6usize {
                    let bound = (4.0 * l as f64 * a).powi(2 * l as i32);
                    let v = to_f64(&m.values[2 * l - 1]);
                    assert!(v.abs() <= bound, "C={c} γ={g} ℓ={l}: {v} > {bound}");
                }
            }
        }
    }
}
