//! Structure constants of normalized Jack polynomials.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::Partition;
use crate::error::{invalid, Error, Result};
use crate::rational::{serde_q, Q};

use super::construct::{jack_eval_ones, jack_p_cached};

/// `(P_μ/P_μ(1^N)) (P_ν/P_ν(1^N)) = Σ_λ c^λ_{μν} P_λ/P_λ(1^N)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LRTable {
    pub mu: Partition,
    pub nu: Partition,
    pub n: usize,
    #[serde(with = "serde_q")]
    pub theta: Q,
    #[serde(serialize_with = "ser_entries")]
    pub entries: BTreeMap<Partition, Q>,
}

fn ser_entries<S: serde::Serializer>(e: &BTreeMap<Partition, Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(e.len()))?;
    for (k, v) in e.iter().rev() {
        seq.serialize_element(&(k, crate::rational::fmt_q(v)))?;
    }
    seq.end()
}

impl LRTable {
    pub fn total(&self) -> Q {
        self.entries.values().sum()
    }

    pub fn has_negative(&self) -> bool {
        self.entries.values().any(|c| *c < Q::zero())
    }
}

pub fn lr_table(mu: &Partition, nu: &Partition, n: usize, theta: &Q, degree_cap: usize) -> Result<LRTable> {
    if *theta <= Q::zero() {
        return invalid("θ must be positive");
    }
    if mu.len() > n || nu.len() > n {
        return invalid(format!("{mu} or {nu} has more than {n} parts"));
    }
    let d = mu.size() + nu.size();
    if d > degree_cap {
        return Err(Error::Cap(format!("degree {d} exceeds degree cap {degree_cap}")));
    }
    let pm = jack_p_cached(mu, n, theta);
    let pn = jack_p_cached(nu, n, theta);
    let mut rest = pm.mul(&pn);
    let mut raw = BTreeMap::new();
    while let Some(key) = rest.leading_key().cloned() {
        let a = rest.coeff(&key);
        let lam = Partition::from_unsorted(key.iter().map(|&e| e as usize).collect());
        let pl = jack_p_cached(&lam, n, theta);
        rest.add_scaled(&pl, &-a.clone());
        raw.insert(lam, a);
    }
    let norm = jack_eval_ones(mu, n, theta) * jack_eval_ones(nu, n, theta);
    let entries = raw
        .into_iter()
        .map(|(lam, a)| {
            let c = a * jack_eval_ones(&lam, n, theta) / &norm;
            (lam, c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(LRTable {
        mu: mu.clone(),
        nu: nu.clone(),
        n,
        theta: theta.clone(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let t = lr_table(&p(&[2, 1]), &Partition::empty(), 3, &q(1, 2), 12).unwrap();
        assert_eq!(t.entries, BTreeMap::from([(p(&[2, 1]), qi(1))]));
        let t = lr_table(&p(&[1]), &p(&[1]), 2, &qi(1), 12).unwrap();
        assert_eq!(t.entries, BTreeMap::from([(p(&[2]), q(3, 4)), (p(&[1, 1]), q(1, 4))]));
        let t = lr_table(&p(&[2, 1]), &p(&[2]), 3, &qi(2), 12).unwrap();
        assert_eq!(t.total(), qi(1));
        assert!(t.entries.keys().all(|l| l.first() <= 4 && l.size() == 5));
    }
}
