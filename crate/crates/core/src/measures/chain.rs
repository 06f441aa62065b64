//! The nonintersecting Markov chain `λ^(0) → λ^(1) → …` driven by one
//! specialization per step.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{shifted_coordinates, Partition};
use crate::error::{invalid, Result};
use crate::jack::SpecDescriptor;
use crate::rational::to_f64;

use super::growth::{alpha_strip_step, plancherel_growth_step};
use super::table::{MeasureSampler, MeasureTable};
use super::transition::{transition_probs, TransitionTable};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChainState {
    pub lambda: Partition,
    pub step: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainMode {
    /// Exact transition tables, cached per state.
    Kernel,
    /// Box-by-box growth for Plancherel and strip sampling for a single alpha
    /// variable; other specializations fall back to the kernel.
    Growth,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainOptions {
    pub jump_cutoff: usize,
    pub degree_cap: usize,
    pub tolerance: f64,
    pub mode: ChainMode,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            jump_cutoff: 10,
            degree_cap: crate::DEFAULT_DEGREE_CAP,
            tolerance: 1e-8,
            mode: ChainMode::Kernel,
        }
    }
}

#[derive(Clone, Debug)]
pub enum InitialState {
    Fixed(Partition),
    Random(MeasureTable),
}

/// Transition tables shared between trajectories.
#[derive(Clone, Default)]
pub struct KernelCache {
    inner: Arc<RwLock<HashMap<Partition, Arc<TransitionTable>>>>,
}

impl KernelCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.inner.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, lambda: &Partition, rho: &SpecDescriptor, n: usize, opts: &ChainOptions) -> Result<Arc<TransitionTable>> {
        if let Some(t) = self.inner.read().unwrap().get(lambda) {
            return Ok(t.clone());
        }
        let t = Arc::new(transition_probs(lambda, rho, n, opts.jump_cutoff, opts.degree_cap, opts.tolerance)?);
        self.inner.write().unwrap().insert(lambda.clone(), t.clone());
        Ok(t)
    }
}

fn kernel_step<R: Rng + ?Sized>(t: &TransitionTable, rng: &mut R) -> Partition {
    let u = rng.random::<f64>() * t.total;
    let mut acc = 0.0;
    for (mu, p) in &t.entries {
        acc += p;
        if u < acc {
            return mu.clone();
        }
    }
    t.entries.last().map(|e| e.0.clone()).unwrap_or_else(|| t.from.clone())
}

fn step<R: Rng + ?Sized>(
    lambda: &Partition,
    rho: &SpecDescriptor,
    n: usize,
    opts: &ChainOptions,
    cache: &KernelCache,
    rng: &mut R,
) -> Result<Partition> {
    if opts.mode == ChainMode::Growth {
        let th = to_f64(&rho.theta);
        if let Some(delta) = rho.as_plancherel() {
            return plancherel_growth_step(lambda, n, th, to_f64(&delta), rng);
        }
        if let Some(c) = rho.as_single_alpha() {
            return alpha_strip_step(lambda, n, th, to_f64(&c), rng);
        }
    }
    let table = cache.get(lambda, rho, n, opts)?;
    Ok(kernel_step(&table, rng))
}

/// Run one trajectory of `steps` transitions. The state list starts with
/// `λ^(0)`.
pub fn simulate_chain_with<R: Rng + ?Sized>(
    initial: &InitialState,
    rho: &SpecDescriptor,
    n: usize,
    steps: usize,
    opts: &ChainOptions,
    cache: &KernelCache,
    rng: &mut R,
) -> Result<Vec<ChainState>> {
    if n == 0 {
        return invalid("N must be at least 1");
    }
    let start = match initial {
        InitialState::Fixed(l) => l.clone(),
        InitialState::Random(t) => {
            if t.n != n || t.theta != rho.theta {
                return invalid("initial table has a different N or θ");
            }
            MeasureSampler::new(t.clone())?.sample(rng)?
        }
    };
    if start.len() > n {
        return invalid(format!("initial state {start} has more than {n} rows"));
    }
    let mut out = Vec::with_capacity(steps + 1);
    out.push(ChainState { lambda: start.clone(), step: 0 });
    let mut cur = start;
    for s in 1..=steps {
        cur = step(&cur, rho, n, opts, cache, rng)?;
        out.push(ChainState { lambda: cur.clone(), step: s });
    }
    Ok(out)
}

/// One trajectory from a seed.
pub fn simulate_chain(
    initial: &InitialState,
    rho: &SpecDescriptor,
    n: usize,
    steps: usize,
    seed: u64,
    opts: &ChainOptions,
) -> Result<Vec<ChainState>> {
    let mut rng = trajectory_rng(seed, 0);
    simulate_chain_with(initial, rho, n, steps, opts, &KernelCache::new(), &mut rng)
}

/// Trajectory `i` draws from stream `i` of the ChaCha8 generator seeded with
/// `seed`, so results do not depend on scheduling.
pub fn trajectory_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// Many independent trajectories in parallel, sharing one kernel cache.
pub fn simulate_chains(
    initial: &InitialState,
    rho: &SpecDescriptor,
    n: usize,
    steps: usize,
    count: usize,
    seed: u64,
    opts: &ChainOptions,
) -> Result<Vec<Vec<ChainState>>> {
    let cache = KernelCache::new();
    (0..count as u64)
        .into_par_iter()
        .map(|i| simulate_chain_with(initial, rho, n, steps, opts, &cache, &mut trajectory_rng(seed, i)))
        .collect()
}

/// Rows `(step, particle_index, ℒ)` with 1-based particle indices.
pub fn particle_rows(traj: &[ChainState], n: usize, rho: &SpecDescriptor) -> Result<Vec<(usize, usize, f64)>> {
    let mut rows = Vec::with_capacity(traj.len() * n);
    for st in traj {
        let cfg = shifted_coordinates(&st.lambda.to_signature(n)?, &rho.theta)?;
        for (i, v) in cfg.values.iter().enumerate() {
            rows.push((st.step, i + 1, to_f64(v)));
        }
    }
    Ok(rows)
}
