//! Truncated measure tables and inverse-CDF sampling.

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{enumerate_partitions, Partition};
use crate::error::{invalid, Error, Result};
use crate::rational::{fmt_q, serde_q, to_f64, Q};

use super::family::{family_weight_parts, FamilyParams};

/// A finite list of partitions with weights.
///
/// Support order is by size, then lexicographically descending, so raising
/// the size cutoff only appends entries.
#[derive(Clone, Debug, Serialize)]
pub struct MeasureTable {
    pub family: Option<FamilyParams>,
    pub n: usize,
    #[serde(with = "serde_q")]
    pub theta: Q,
    pub size_cutoff: usize,
    pub support: Vec<Partition>,
    pub weights: Vec<f64>,
    /// Weight `i` equals `exp(log_scale) · exact[i]`.
    pub log_scale: f64,
    #[serde(serialize_with = "ser_exact")]
    pub exact: Vec<Q>,
    pub total_mass: f64,
    pub tail_bound: f64,
}

fn ser_exact<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}

impl MeasureTable {
    /// A finitely supported measure given exactly. Zero weights are dropped;
    /// negative weights are kept (signed measures).
    pub fn from_exact(n: usize, theta: Q, mut entries: Vec<(Partition, Q)>) -> Result<Self> {
        if entries.iter().any(|(l, _)| l.len() > n) {
            return invalid(format!("support has a partition with more than {n} rows"));
        }
        entries.retain(|(_, w)| !w.is_zero());
        entries.sort_by(|a, b| a.0.size().cmp(&b.0.size()).then(b.0.cmp(&a.0)));
        let size_cutoff = entries.iter().map(|(l, _)| l.size()).max().unwrap_or(0);
        let (support, exact): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        let weights: Vec<f64> = exact.iter().map(to_f64).collect();
        let total_mass = weights.iter().sum();
        Ok(MeasureTable {
            family: None,
            n,
            theta,
            size_cutoff,
            support,
            weights,
            log_scale: 0.0,
            exact,
            total_mass,
            tail_bound: 0.0,
        })
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Exact total of the stored factors.
    pub fn exact_total(&self) -> Q {
        self.exact.iter().sum()
    }

    pub fn has_negative(&self) -> bool {
        self.exact.iter().any(|w| w.is_negative())
    }

    pub fn pairs(&self) -> Vec<(Partition, Q)> {
        self.support.iter().cloned().zip(self.exact.iter().cloned()).collect()
    }

    pub fn weight_of(&self, lambda: &Partition) -> f64 {
        self.support
            .iter()
            .position(|l| l == lambda)
            .map_or(0.0, |i| self.weights[i])
    }
}

/// Enumerate the family's support up to `size_cutoff` boxes and certify the
/// omitted mass through the size law. Fails when the certified tail exceeds
/// `tolerance`.
pub fn build_measure_table(params: &FamilyParams, n: usize, theta: &Q, size_cutoff: usize, tolerance: f64) -> Result<MeasureTable> {
    params.validate()?;
    if n == 0 {
        return invalid("N must be at least 1");
    }
    if !theta.is_positive() {
        return invalid("θ must be positive");
    }
    let tail_bound = params.size_law(n, theta).tail_bound(size_cutoff);
    if !(tail_bound <= tolerance) {
        return Err(Error::Cap(format!(
            "support cutoff {size_cutoff} certifies a tail of {tail_bound:.3e}, above the tolerance {tolerance:.1e}"
        )));
    }
    let support = enumerate_partitions(size_cutoff, params.max_length(n), params.max_part());
    let parts: Vec<(f64, Q)> = support
        .par_iter()
        .map(|l| family_weight_parts(params, l, n, theta))
        .collect();
    let log_scale = parts.first().map_or(0.0, |p| p.0);
    let exact: Vec<Q> = parts.into_iter().map(|p| p.1).collect();
    let weights: Vec<f64> = exact
        .iter()
        .map(|e| (log_scale + super::family::ln_q(e)).exp())
        .collect();
    let total_mass = weights.iter().sum();
    Ok(MeasureTable {
        family: Some(params.clone()),
        n,
        theta: theta.clone(),
        size_cutoff,
        support,
        weights,
        log_scale,
        exact,
        total_mass,
        tail_bound,
    })
}

/// Inverse-CDF sampler over a table. A uniform draw landing in the omitted
/// tail rebuilds the table at twice the cutoff; tables without a family are
/// renormalized instead.
pub struct MeasureSampler {
    table: MeasureTable,
    cdf: Vec<f64>,
}

const MAX_EXTENSIONS: usize = 6;

impl MeasureSampler {
    pub fn new(table: MeasureTable) -> Result<Self> {
        if table.weights.iter().any(|w| *w < 0.0) {
            return invalid("cannot sample a signed measure");
        }
        if !(table.total_mass > 0.0) {
            return invalid("measure table has no mass");
        }
        let cdf = cumulative(&table.weights);
        Ok(MeasureSampler { table, cdf })
    }

    pub fn table(&self) -> &MeasureTable {
        &self.table
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Partition> {
        let u: f64 = rng.random();
        if self.table.family.is_none() {
            let x = u * self.cdf.last().copied().unwrap_or(0.0);
            return Ok(self.table.support[search(&self.cdf, x)].clone());
        }
        for _ in 0..MAX_EXTENSIONS {
            if u < *self.cdf.last().unwrap() {
                return Ok(self.table.support[search(&self.cdf, u)].clone());
            }
            let fam = self.table.family.clone().unwrap();
            let cutoff = 2 * self.table.size_cutoff.max(1);
            self.table = build_measure_table(&fam, self.table.n, &self.table.theta, cutoff, f64::INFINITY)?;
            self.cdf = cumulative(&self.table.weights);
        }
        Err(Error::Cap("sample kept landing beyond the extended support".into()))
    }
}

fn cumulative(w: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    w.iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect()
}

/// First index with `cdf[i] > x`, clamped to the last entry.
fn search(cdf: &[f64], x: f64) -> usize {
    cdf.partition_point(|c| *c <= x).min(cdf.len() - 1)
}

/// One draw from `table` with a fresh generator seeded by `seed`.
pub fn sample_measure(table: &MeasureTable, seed: u64) -> Result<Partition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    MeasureSampler::new(table.clone())?.sample(&mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn beta_table_is_complete() {
        let f = FamilyParams::Beta { c: q(1, 3), m: 2 };
        let t = build_measure_table(&f, 2, &q(1, 2), 4, 0.0).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.exact_total(), qi(1));
        assert_eq!(t.tail_bound, 0.0);
    }

    #[test]
    fn plancherel_cutoff_certifies() {
        let f = FamilyParams::Plancherel { t: q(1, 3) };
        let t = build_measure_table(&f, 3, &q(1, 2), 20, 1e-10).unwrap();
        assert!(t.total_mass >= 1.0 - 1e-10 && t.total_mass <= 1.0 + 1e-12);
        assert!(matches!(build_measure_table(&f, 3, &q(1, 2), 3, 1e-10), Err(Error::Cap(_))));
    }

    #[test]
    fn alpha_small_c_concentrates() {
        let f = FamilyParams::Alpha { c: q(1, 1000), eta: qi(1) };
        let t = build_measure_table(&f, 3, &qi(1), 6, 1e-8).unwrap();
        assert_eq!(t.support[0], Partition::empty());
        assert!(t.weights[0] > 0.99);
    }

    #[test]
    fn sampling_examples() {
        let one = MeasureTable::from_exact(2, qi(1), vec![(Partition::new(vec![2]).unwrap(), qi(1))]).unwrap();
        assert_eq!(sample_measure(&one, 7).unwrap(), Partition::new(vec![2]).unwrap());
        let two = MeasureTable::from_exact(
            2,
            qi(1),
            vec![(Partition::empty(), q(1, 2)), (Partition::new(vec![1]).unwrap(), q(1, 2))],
        )
        .unwrap();
        let mut s = MeasureSampler::new(two).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let draws = 10_000;
        let hits = (0..draws).filter(|_| s.sample(&mut rng).unwrap().is_empty()).count();
        let sd = (draws as f64 * 0.25).sqrt();
        assert!((hits as f64 - 5000.0).abs() < 3.0 * sd);
    }

    #[test]
    fn tail_draws_extend_the_table() {
        // a cutoff of 0 leaves almost all mass in the tail
        let f = FamilyParams::Plancherel { t: qi(1) };
        let t = build_measure_table(&f, 2, &qi(1), 0, f64::INFINITY).unwrap();
        let mut s = MeasureSampler::new(t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mean: f64 = (0..4000).map(|_| s.sample(&mut rng).unwrap().size() as f64).sum::<f64>() / 4000.0;
        assert!((mean - 2.0).abs() < 4.0 * (2.0f64 / 4000.0).sqrt());
        assert!(s.table().size_cutoff >= 8);
    }
}
