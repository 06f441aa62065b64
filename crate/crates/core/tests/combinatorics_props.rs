mod common;

use std::collections::HashSet;

use common::*;
use jackht::combinatorics::{enumerate_partitions, horizontal_strips, shifted_coordinates, vertical_strips, Partition, Signature};
use jackht::paths::{enumerate_lukasiewicz, enumerate_motzkin, path_statistics, LukasiewiczPath};
use jackht::rational::{q, qi, Q};
use proptest::prelude::*;

#[test]
fn lukasiewicz_counts_are_catalan() {
    for l in 0..=12 {
        assert_eq!(enumerate_lukasiewicz(l, 14).unwrap().len() as u64, catalan(l as u64), "length {l}");
    }
    assert!(enumerate_lukasiewicz(15, 14).is_err());
}

#[test]
fn motzkin_enumeration_matches_brute_force() {
    for l in 0..=9 {
        let mut ours: Vec<Vec<i32>> = enumerate_motzkin(l, 14).unwrap().into_iter().map(|p| p.steps).collect();
        let mut brute = motzkin_paths(l);
        ours.sort();
        brute.sort();
        assert_eq!(ours, brute, "length {l}");
    }
}

#[test]
fn path_stats_balance() {
    for l in 0..=10 {
        for p in enumerate_lukasiewicz(l, 14).unwrap() {
            let st = path_statistics(&p);
            assert_eq!(st.total_rise(), st.total_fall());
            assert_eq!(st.total_count(), l);
        }
    }
}

#[test]
fn path_stats_examples() {
    let st = path_statistics(&LukasiewiczPath::new(vec![2, 0, -1, -1]).unwrap());
    assert_eq!(st.up_by_size.get(&2), Some(&1));
    assert_eq!(st.horiz(2), 1);
    assert_eq!(st.down_from_height.get(&2), Some(&1));
    assert_eq!(st.down_from_height.get(&1), Some(&1));
    assert!(LukasiewiczPath::new(vec![-1, 1]).is_err());
    assert!(LukasiewiczPath::new(vec![1]).is_err());
}

#[test]
fn conjugation_is_an_involution() {
    for l in enumerate_partitions(12, 12, None) {
        let c = l.conjugate();
        assert_eq!(c.size(), l.size());
        assert_eq!(c.conjugate(), l);
    }
}

#[test]
fn strips_are_strips() {
    for l in enumerate_partitions(5, 3, None) {
        for k in 0..=4 {
            for mu in horizontal_strips(&l, k, 3) {
                assert!(mu.is_horizontal_strip_over(&l) && mu.size() == l.size() + k && mu.len() <= 3);
            }
            for mu in vertical_strips(&l, k, 3) {
                assert!(mu.is_vertical_strip_over(&l) && mu.size() == l.size() + k && mu.len() <= 3);
            }
        }
    }
}

fn signature(n: usize) -> impl Strategy<Value = Signature> {
    prop::collection::vec(-6i64..=6, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Signature::new(v).unwrap()
    })
}

fn thetas() -> impl Strategy<Value = Q> {
    prop::sample::select(vec![q(1, 3), q(1, 2), qi(1), qi(2), q(7, 5)])
}

proptest! {
    #[test]
    fn shifted_coordinates_are_valid(s in (1usize..=5).prop_flat_map(signature), th in thetas()) {
        let c = shifted_coordinates(&s, &th).unwrap();
        prop_assert!(c.is_valid());
        for (i, v) in c.values.iter().enumerate() {
            prop_assert_eq!(v.clone(), qi(s.entries()[i]) - &th * qi(i as i64));
        }
    }

    #[test]
    fn conjugate_reverses_dominance(a in 0usize..=8, b in 0usize..=8, seed in any::<u64>()) {
        let parts = enumerate_partitions(8, 8, None);
        let same: Vec<&Partition> = parts.iter().filter(|p| p.size() == a.max(b)).collect();
        let x = same[(seed % same.len() as u64) as usize];
        let y = same[((seed / 7) % same.len() as u64) as usize];
        if x.dominated_by(y) {
            prop_assert!(y.conjugate().dominated_by(&x.conjugate()));
        }
    }
}

#[test]
fn shifted_coordinates_are_injective() {
    for th in [q(1, 2), qi(1), qi(3)] {
        let mut seen = HashSet::new();
        for a in -3i64..=3 {
            for b in -3..=a {
                for c in -3..=b {
                    let s = Signature::new(vec![a, b, c]).unwrap();
                    assert!(seen.insert(shifted_coordinates(&s, &th).unwrap().values));
                }
            }
        }
    }
    assert!(shifted_coordinates(&Signature::new(vec![0]).unwrap(), &qi(0)).is_err());
}
