//! Sparse exact polynomials in `N` variables.
//!
//! [`NPoly`] is a plain map exponent vector → coefficient. [`SymPoly`] keeps
//! one key per monomial-symmetric orbit: the key is the weakly decreasing
//! representative and the term stands for the sum over its orbit. Both allow
//! negative (Laurent) exponents.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rational::{fmt_q, parse_q, qi, Q};

fn add_into(map: &mut BTreeMap<Vec<i64>, Q>, key: Vec<i64>, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPoly {
    num_vars: usize,
    terms: BTreeMap<Vec<i64>, Q>,
}

impl NPoly {
    pub fn zero(n: usize) -> Self {
        NPoly {
            num_vars: n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Q::one())
    }

    pub fn monomial(exps: Vec<i64>, c: Q) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The variable `x_i`, 1-based.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Q) {
        debug_assert_eq!(exps.len(), self.num_vars);
        add_into(&mut self.terms, exps, c);
    }

    pub fn coeff(&self, exps: &[i64]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        NPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &NPoly, c: &Q) {
        for (k, v) in &other.terms {
            add_into(&mut self.terms, k.clone(), v * c);
        }
    }

    /// Total degrees present, as (min, max); `None` for the zero polynomial.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|k| k.iter().sum::<i64>());
        let first = it.next()?;
        Some(it.fold((first, first), |(a, b), d| (a.min(d), b.max(d))))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_range().is_none_or(|(a, b)| a == b)
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(k) {
                t *= crate::rational::pow(x, e);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_ones(&self) -> Q {
        self.terms.values().fold(Q::zero(), |a, c| a + c)
    }

    /// Multiply by `(x_1⋯x_N)^m`.
    pub fn shift(&self, m: i64) -> Self {
        NPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().map(|e| e + m).collect(), v.clone()))
                .collect(),
        }
    }
}

/// Truncated power-series operations; all exponents assumed nonnegative.
impl NPoly {
    /// Drop every term of total degree above `deg`.
    pub fn truncate(&self, deg: i64) -> Self {
        NPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.iter().sum::<i64>() <= deg)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn mul_truncated(&self, rhs: &NPoly, deg: i64) -> Self {
        let mut out = NPoly::zero(self.num_vars);
        for (a, ca) in &self.terms {
            let da: i64 = a.iter().sum();
            for (b, cb) in &rhs.terms {
                if da + b.iter().sum::<i64>() > deg {
                    continue;
                }
                let k = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(k, ca * cb);
            }
        }
        out
    }

    /// `exp(f)` to degree `deg`; `f` must have no constant term.
    pub fn series_exp(&self, deg: i64) -> Result<Self> {
        if !self.coeff(&vec![0; self.num_vars]).is_zero() {
            return invalid("series exp needs a zero constant term");
        }
        let mut out = NPoly::one(self.num_vars);
        let mut term = NPoly::one(self.num_vars);
        for k in 1..=deg.max(0) {
            term = term.mul_truncated(self, deg).scale(&(Q::one() / qi(k)));
            out = &out + &term;
        }
        Ok(out)
    }

    /// `log(1 + f)` to degree `deg`; `f` must have no constant term.
    pub fn series_log1p(&self, deg: i64) -> Result<Self> {
        if !self.coeff(&vec![0; self.num_vars]).is_zero() {
            return invalid("series log needs a zero constant term");
        }
        let mut out = NPoly::zero(self.num_vars);
        let mut power = NPoly::one(self.num_vars);
        for k in 1..=deg.max(0) {
            power = power.mul_truncated(self, deg);
            let sign = if k % 2 == 1 { qi(1) } else { qi(-1) };
            out.add_scaled(&power, &(sign / qi(k)));
        }
        Ok(out)
    }

    /// Substitute `x_i = 1 + y_i`.
    pub fn shift_to_one(&self) -> Self {
        let n = self.num_vars;
        let mut out = NPoly::zero(n);
        for (k, c) in &self.terms {
            let mut acc = NPoly::constant(n, c.clone());
            for (i, &e) in k.iter().enumerate() {
                let mut f = NPoly::zero(n);
                for j in 0..=e.max(0) {
                    let mut ex = vec![0; n];
                    ex[i] = j;
                    f.add_term(ex, crate::rational::binomial(e as usize, j as usize));
                }
                acc = &acc * &f;
            }
            out = &out + &acc;
        }
        out
    }
}

impl Add for &NPoly {
    type Output = NPoly;
    fn add(self, rhs: &NPoly) -> NPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl Sub for &NPoly {
    type Output = NPoly;
    fn sub(self, rhs: &NPoly) -> NPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl Neg for &NPoly {
    type Output = NPoly;
    fn neg(self) -> NPoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &NPoly {
    type Output = NPoly;
    fn mul(self, rhs: &NPoly) -> NPoly {
        let mut out = NPoly::zero(self.num_vars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let k = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(k, ca * cb);
            }
        }
        out
    }
}

/// Distinct permutations of `key`, in lexicographic order.
pub fn orbit(key: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = key.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // standard next-permutation
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// `N! / ∏ m_i!` for the multiplicities of `key`.
pub fn orbit_size(key: &[i64]) -> Q {
    let mut acc = crate::rational::factorial(key.len());
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &e in key {
        *counts.entry(e).or_default() += 1;
    }
    for m in counts.values() {
        acc /= crate::rational::factorial(*m);
    }
    acc
}

fn is_dominant(key: &[i64]) -> bool {
    key.windows(2).all(|w| w[0] >= w[1])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    num_vars: usize,
    terms: BTreeMap<Vec<i64>, Q>,
}

impl SymPoly {
    pub fn zero(n: usize) -> Self {
        SymPoly {
            num_vars: n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], Q::one());
        p
    }

    /// `c · m_key`; `key` must be weakly decreasing.
    pub fn monomial(key: Vec<i64>, c: Q) -> Result<Self> {
        if !is_dominant(&key) {
            return invalid(format!("key {key:?} is not weakly decreasing"));
        }
        let mut p = Self::zero(key.len());
        p.add_term(key, c);
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, key: Vec<i64>, c: Q) {
        debug_assert!(is_dominant(&key) && key.len() == self.num_vars);
        add_into(&mut self.terms, key, c);
    }

    pub fn coeff(&self, key: &[i64]) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    /// Lexicographically largest key.
    pub fn leading_key(&self) -> Option<&Vec<i64>> {
        self.terms.keys().next_back()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        SymPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &SymPoly, c: &Q) {
        for (k, v) in &other.terms {
            add_into(&mut self.terms, k.clone(), v * c);
        }
    }

    pub fn shift(&self, m: i64) -> Self {
        SymPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().map(|e| e + m).collect(), v.clone()))
                .collect(),
        }
    }

    /// Full monomial expansion.
    pub fn expand(&self) -> NPoly {
        let mut out = NPoly::zero(self.num_vars);
        for (k, c) in &self.terms {
            for e in orbit(k) {
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Symmetrized representation of a symmetric `NPoly`; fails if `f` is
    /// not symmetric.
    pub fn from_npoly(f: &NPoly) -> Result<Self> {
        let mut out = SymPoly::zero(f.num_vars());
        for (k, c) in f.terms() {
            if is_dominant(k) {
                out.add_term(k.clone(), c.clone());
            }
        }
        if out.expand() != *f {
            return invalid("polynomial is not symmetric");
        }
        Ok(out)
    }

    pub fn eval_ones(&self) -> Q {
        self.terms
            .iter()
            .fold(Q::zero(), |a, (k, c)| a + c * orbit_size(k))
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|k| k.iter().sum::<i64>());
        let first = it.next()?;
        Some(it.fold((first, first), |(a, b), d| (a.min(d), b.max(d))))
    }

    /// Product; coefficient of `m_κ` is read off as the coefficient of the
    /// dominant monomial `x^κ`.
    pub fn mul(&self, rhs: &SymPoly) -> SymPoly {
        let a = self.expand();
        let mut out = SymPoly::zero(self.num_vars);
        for (kb, cb) in &rhs.terms {
            for eb in orbit(kb) {
                for (ea, ca) in a.terms() {
                    let s: Vec<i64> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
                    if is_dominant(&s) {
                        out.add_term(s, ca * cb);
                    }
                }
            }
        }
        out
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponents: Vec<i64>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    num_vars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for SymPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(k, c)| TermRepr {
                    exponents: k.clone(),
                    coeff: fmt_q(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PolyRepr::deserialize(d)?;
        let mut out = SymPoly::zero(r.num_vars);
        for t in r.terms {
            if t.exponents.len() != r.num_vars || !is_dominant(&t.exponents) {
                return Err(D::Error::custom(format!("bad key {:?}", t.exponents)));
            }
            let c = parse_q(&t.coeff).map_err(D::Error::custom)?;
            out.add_term(t.exponents, c);
        }
        Ok(out)
    }
}

/// Power sum `p_k` in `n` variables.
pub fn power_sum_poly(n: usize, k: i64) -> SymPoly {
    let mut key = vec![0; n];
    if n > 0 {
        key[0] = k;
    }
    SymPoly::monomial(key, Q::one()).unwrap()
}

/// Elementary symmetric `e_k` in `n` variables (zero when `k > n`).
pub fn elementary_poly(n: usize, k: usize) -> SymPoly {
    if k > n {
        return SymPoly::zero(n);
    }
    let key: Vec<i64> = (0..n).map(|i| if i < k { 1 } else { 0 }).collect();
    SymPoly::monomial(key, qi(1)).unwrap()
}
