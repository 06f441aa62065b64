//! Partitions, signatures and shifted particle coordinates.
//!
//! A [`Partition`] stores only its positive parts. A [`Signature`] keeps an
//! explicit length `N` and may contain negative entries; partitions embed
//! into signatures by zero padding.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rational::{qi, Q};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = crate::Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Partition {
    /// Validates weak decrease; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("parts not weakly decreasing: {parts:?}"));
        }
        if parts.contains(&0) {
            return invalid(format!("zero part before a positive one: {parts:?}"));
        }
        Ok(Partition { parts })
    }

    /// Sorts the input descending and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` with 1-based `i`; zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return usize::MAX;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(1)
    }

    pub fn conjugate(&self) -> Partition {
        conjugate(self)
    }

    /// Cells `(i, j)`, 1-based, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Rows where a box can be added, 1-based (includes `len()+1`).
    pub fn addable_rows(&self) -> Vec<usize> {
        let mut rows = Vec::new();
        for i in 1..=self.len() + 1 {
            if i == 1 || self.part(i - 1) > self.part(i) {
                rows.push(i);
            }
        }
        rows
    }

    pub fn add_box(&self, row: usize) -> Partition {
        let mut parts = self.parts.clone();
        if row > parts.len() {
            parts.push(1);
        } else {
            parts[row - 1] += 1;
        }
        Partition { parts }
    }

    /// Dominance order `self ≤ other` (sizes must agree).
    pub fn dominated_by(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0usize, 0usize);
        for i in 1..=self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }

    /// Zero-padded signature of length `n`; fails when `len() > n`.
    pub fn to_signature(&self, n: usize) -> Result<Signature> {
        if self.len() > n {
            return invalid(format!("partition {self} has more than {n} parts"));
        }
        let mut entries: Vec<i64> = self.parts.iter().map(|&p| p as i64).collect();
        entries.resize(n, 0);
        Ok(Signature { entries })
    }

    /// `a(s) + θ l(s) + θ` and `a(s) + θ l(s) + 1` for a cell, the two hook
    /// forms that appear in evaluations and normalizations.
    pub fn hook_pair(&self, conj: &Partition, i: usize, j: usize, theta: &Q) -> (Q, Q) {
        let arm = qi((self.part(i) - j) as i64);
        let leg = qi((conj.part(j) - i) as i64);
        let base = arm + theta * leg;
        (&base + theta, base + Q::one())
    }

    /// `μ/λ` has at most one box in each column.
    pub fn is_horizontal_strip_over(&self, inner: &Partition) -> bool {
        self.contains(inner) && (1..=self.len()).all(|i| inner.part(i) >= self.part(i + 1))
    }

    /// `μ/λ` has at most one box in each row.
    pub fn is_vertical_strip_over(&self, inner: &Partition) -> bool {
        self.contains(inner) && (1..=self.len()).all(|i| self.part(i) <= inner.part(i) + 1)
    }
}

pub fn conjugate(lambda: &Partition) -> Partition {
    let first = lambda.first();
    if lambda.is_empty() {
        return Partition::empty();
    }
    let parts = (1..=first)
        .map(|j| lambda.parts.iter().filter(|&&p| p >= j).count())
        .collect();
    Partition { parts }
}

/// All partitions with `size ≤ max_size`, `len ≤ max_length`, parts `≤ max_part`.
///
/// Order: by size ascending, then lexicographically descending within a size,
/// so `(2)` precedes `(1,1)`.
pub fn enumerate_partitions(max_size: usize, max_length: usize, max_part: Option<usize>) -> Vec<Partition> {
    let mut out = Vec::new();
    for n in 0..=max_size {
        out.extend(partitions_of(n, max_length, max_part));
    }
    out
}

/// Partitions of exactly `n`, lexicographically descending.
pub fn partitions_of(n: usize, max_length: usize, max_part: Option<usize>) -> Vec<Partition> {
    fn rec(rem: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            if p * slots < rem {
                break;
            }
            cur.push(p);
            rec(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let cap = max_part.unwrap_or(n);
    rec(n, cap, max_length, &mut Vec::new(), &mut out);
    out
}

/// Every `μ` with `μ/λ` a horizontal strip of exactly `k` boxes and
/// `ℓ(μ) ≤ max_rows`. Larger additions to upper rows come first.
pub fn horizontal_strips(lambda: &Partition, k: usize, max_rows: usize) -> Vec<Partition> {
    if lambda.len() > max_rows {
        return Vec::new();
    }
    let rows = (lambda.len() + 1).min(max_rows);
    // room in row i (1-based) is λ_{i-1} − λ_i, unbounded for the first row
    let room: Vec<usize> = (1..=rows)
        .map(|i| if i == 1 { k } else { lambda.part(i - 1) - lambda.part(i) })
        .collect();
    let mut out = Vec::new();
    let mut add = vec![0usize; rows];
    fn rec(i: usize, rem: usize, room: &[usize], add: &mut Vec<usize>, lambda: &Partition, out: &mut Vec<Partition>) {
        if i == room.len() {
            if rem == 0 {
                let parts = (1..=room.len()).map(|r| lambda.part(r) + add[r - 1]).collect();
                out.push(Partition::from_unsorted(parts));
            }
            return;
        }
        let later: usize = room[i + 1..].iter().sum();
        for g in (0..=room[i].min(rem)).rev() {
            if rem - g > later {
                break;
            }
            add[i] = g;
            rec(i + 1, rem - g, room, add, lambda, out);
        }
        add[i] = 0;
    }
    if rows == 0 {
        return if k == 0 { vec![lambda.clone()] } else { Vec::new() };
    }
    rec(0, k, &room, &mut add, lambda, &mut out);
    out
}

/// Every `μ` with `μ/λ` a vertical strip of exactly `k` boxes and
/// `ℓ(μ) ≤ max_rows`.
pub fn vertical_strips(lambda: &Partition, k: usize, max_rows: usize) -> Vec<Partition> {
    if lambda.len() > max_rows {
        return Vec::new();
    }
    let rows = (lambda.len() + k).min(max_rows);
    let mut out = Vec::new();
    let mut parts: Vec<usize> = (1..=rows).map(|i| lambda.part(i)).collect();
    fn rec(i: usize, rem: usize, parts: &mut Vec<usize>, lambda: &Partition, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::from_unsorted(parts.clone()));
            return;
        }
        if i == parts.len() {
            return;
        }
        // a box in row i+1 (1-based) needs the row above to stay at least as long
        let ok = i == 0 || parts[i - 1] > lambda.part(i + 1);
        if ok {
            parts[i] += 1;
            rec(i + 1, rem - 1, parts, lambda, out);
            parts[i] -= 1;
        }
        rec(i + 1, rem, parts, lambda, out);
    }
    rec(0, k, &mut parts, lambda, &mut out);
    out
}

/// An `N`-signature: weakly decreasing integers, negatives allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Signature {
    entries: Vec<i64>,
}

impl TryFrom<Vec<i64>> for Signature {
    type Error = crate::Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Signature::new(v)
    }
}

impl From<Signature> for Vec<i64> {
    fn from(s: Signature) -> Self {
        s.entries
    }
}

impl Signature {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return invalid("signature must have N ≥ 1 entries");
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("signature not weakly decreasing: {entries:?}"));
        }
        Ok(Signature { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn last(&self) -> i64 {
        *self.entries.last().unwrap()
    }

    /// Add `m` to every entry.
    pub fn shift(&self, m: i64) -> Signature {
        Signature {
            entries: self.entries.iter().map(|e| e + m).collect(),
        }
    }

    /// The partition when all entries are nonnegative.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.last() < 0 {
            return None;
        }
        Partition::new(self.entries.iter().map(|&e| e as usize).collect()).ok()
    }
}

/// Particles `ℒ_i = λ_i − (i−1)θ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParticleConfig {
    #[serde(with = "crate::rational::serde_qvec")]
    pub values: Vec<Q>,
    #[serde(with = "crate::rational::serde_q")]
    pub theta: Q,
}

impl ParticleConfig {
    /// Strictly decreasing and `ℒ_i + (i−1)θ` integral.
    pub fn is_valid(&self) -> bool {
        let dec = self.values.windows(2).all(|w| w[0] > w[1]);
        let integral = self
            .values
            .iter()
            .enumerate()
            .all(|(i, v)| (v + &self.theta * qi(i as i64)).is_integer());
        dec && integral && self.theta > Q::zero()
    }
}

pub fn shifted_coordinates(lambda: &Signature, theta: &Q) -> Result<ParticleConfig> {
    if *theta <= Q::zero() {
        return invalid("θ must be positive");
    }
    let values = lambda
        .entries
        .iter()
        .enumerate()
        .map(|(i, &l)| qi(l) - theta * qi(i as i64))
        .collect();
    Ok(ParticleConfig {
        values,
        theta: theta.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&Partition::empty()), Partition::empty());
        assert_eq!(conjugate(&p(&[2, 1])), p(&[2, 1]));
        assert_eq!(conjugate(&p(&[3, 1])), p(&[2, 1, 1]));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_partitions(0, 5, None), vec![Partition::empty()]);
        let got = enumerate_partitions(3, 2, None);
        let want = vec![
            p(&[]),
            p(&[1]),
            p(&[2]),
            p(&[1, 1]),
            p(&[3]),
            p(&[2, 1]),
        ];
        assert_eq!(got, want);
        assert_eq!(enumerate_partitions(4, 4, None).len(), 12);
        assert_eq!(enumerate_partitions(4, 4, Some(1)).len(), 5);
    }

    #[test]
    fn shifted_examples() {
        let s = Signature::new(vec![0, 0]).unwrap();
        assert_eq!(shifted_coordinates(&s, &q(1, 2)).unwrap().values, vec![qi(0), q(-1, 2)]);
        let s = Signature::new(vec![3, 1]).unwrap();
        assert_eq!(shifted_coordinates(&s, &qi(1)).unwrap().values, vec![qi(3), qi(0)]);
        let s = Signature::new(vec![2, 2, 0]).unwrap();
        let c = shifted_coordinates(&s, &q(1, 3)).unwrap();
        assert_eq!(c.values, vec![qi(2), q(5, 3), q(-2, 3)]);
        assert!(c.is_valid());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Signature::new(vec![]).is_err());
        assert!(Signature::new(vec![-1, 0]).is_err());
        assert_eq!(Partition::new(vec![2, 0, 0]).unwrap(), p(&[2]));
    }

    #[test]
    fn strips() {
        assert!(p(&[3, 1]).is_horizontal_strip_over(&p(&[1])));
        assert!(p(&[2, 2]).is_horizontal_strip_over(&p(&[2])));
        assert!(!p(&[2, 2]).is_horizontal_strip_over(&p(&[1])));
        assert!(p(&[2, 2]).is_vertical_strip_over(&p(&[1, 1])));
        assert!(!p(&[3]).is_vertical_strip_over(&p(&[1])));
        assert_eq!(p(&[2, 2]).addable_rows(), vec![1, 3]);
        assert!(p(&[2, 1, 1]).dominated_by(&p(&[3, 1])));
        assert!(!p(&[3, 3]).dominated_by(&p(&[4, 1, 1])));
    }

    #[test]
    fn strip_enumeration_matches_filter() {
        for lam in enumerate_partitions(5, 4, None) {
            for k in 0..4 {
                for rows in [2, 4, 6] {
                    let all: Vec<Partition> = partitions_of(lam.size() + k, rows, None)
                        .into_iter()
                        .filter(|m| m.contains(&lam))
                        .collect();
                    let mut h = horizontal_strips(&lam, k, rows);
                    let mut want: Vec<_> = all.iter().filter(|m| m.is_horizontal_strip_over(&lam)).cloned().collect();
                    h.sort();
                    want.sort();
                    assert_eq!(h, want, "{lam} k={k} rows={rows}");
                    let mut v = vertical_strips(&lam, k, rows);
                    let mut want: Vec<_> = all.iter().filter(|m| m.is_vertical_strip_over(&lam)).cloned().collect();
                    v.sort();
                    want.sort();
                    assert_eq!(v, want, "{lam} k={k} rows={rows}");
                }
            }
        }
    }
}
