//! Lukasiewicz and Motzkin paths with step statistics.
//!
//! A step is an integer `≥ −1`: `0` is horizontal, `−1` is a down step and
//! `j ≥ 1` is an up step `(1, j)`. Heights of horizontal and down steps are
//! taken at the step's starting point.
//!
//! Enumeration is depth first with step sizes tried in descending order, so
//! the output order is stable.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LukasiewiczPath {
    pub steps: Vec<i32>,
}

impl LukasiewiczPath {
    pub fn new(steps: Vec<i32>) -> Result<Self> {
        let mut h: i64 = 0;
        for &s in &steps {
            if s < -1 {
                return invalid(format!("step {s} below -1"));
            }
            h += s as i64;
            if h < 0 {
                return invalid("path dips below the axis");
            }
        }
        if h != 0 {
            return invalid("path does not return to the axis");
        }
        Ok(LukasiewiczPath { steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_motzkin(&self) -> bool {
        self.steps.iter().all(|&s| s <= 1)
    }
}

/// Step and height tallies of one path.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathStats {
    pub horiz_at_height: BTreeMap<usize, usize>,
    pub up_by_size: BTreeMap<usize, usize>,
    pub down_from_height: BTreeMap<usize, usize>,
    pub length: usize,
}

impl PathStats {
    pub fn horiz(&self, h: usize) -> usize {
        self.horiz_at_height.get(&h).copied().unwrap_or(0)
    }

    pub fn total_count(&self) -> usize {
        self.horiz_at_height.values().sum::<usize>()
            + self.up_by_size.values().sum::<usize>()
            + self.down_from_height.values().sum::<usize>()
    }

    pub fn total_rise(&self) -> usize {
        self.up_by_size.iter().map(|(j, c)| j * c).sum()
    }

    pub fn total_fall(&self) -> usize {
        self.down_from_height.values().sum()
    }
}

pub fn path_statistics(path: &LukasiewiczPath) -> PathStats {
    let mut st = PathStats {
        length: path.len(),
        ..Default::default()
    };
    let mut h: usize = 0;
    for &s in &path.steps {
        match s {
            0 => *st.horiz_at_height.entry(h).or_default() += 1,
            -1 => {
                *st.down_from_height.entry(h).or_default() += 1;
                h -= 1;
            }
            j => {
                *st.up_by_size.entry(j as usize).or_default() += 1;
                h += j as usize;
            }
        }
    }
    st
}

fn check_cap(len: usize, cap: usize) -> Result<()> {
    if len > cap {
        return Err(Error::Cap(format!("path length {len} exceeds cap {cap}")));
    }
    Ok(())
}

/// Visit every path of length `len`; `motzkin` restricts up steps to size 1.
pub fn for_each_path(len: usize, motzkin: bool, mut visit: impl FnMut(&[i32])) {
    fn rec(rem: usize, h: usize, motzkin: bool, cur: &mut Vec<i32>, visit: &mut dyn FnMut(&[i32])) {
        if rem == 0 {
            visit(cur);
            return;
        }
        // after this step, rem-1 steps must be able to come back down
        let mut max_up = (rem - 1).saturating_sub(h);
        if motzkin {
            max_up = max_up.min(1);
        }
        for s in (1..=max_up).rev() {
            cur.push(s as i32);
            rec(rem - 1, h + s, motzkin, cur, visit);
            cur.pop();
        }
        if h < rem {
            cur.push(0);
            rec(rem - 1, h, motzkin, cur, visit);
            cur.pop();
        }
        if h > 0 {
            cur.push(-1);
            rec(rem - 1, h - 1, motzkin, cur, visit);
            cur.pop();
        }
    }
    rec(len, 0, motzkin, &mut Vec::with_capacity(len), &mut visit);
}

pub fn enumerate_lukasiewicz(len: usize, cap: usize) -> Result<Vec<LukasiewiczPath>> {
    check_cap(len, cap)?;
    let mut out = Vec::new();
    for_each_path(len, false, |s| out.push(LukasiewiczPath { steps: s.to_vec() }));
    Ok(out)
}

pub fn enumerate_motzkin(len: usize, cap: usize) -> Result<Vec<LukasiewiczPath>> {
    check_cap(len, cap)?;
    let mut out = Vec::new();
    for_each_path(len, true, |s| out.push(LukasiewiczPath { steps: s.to_vec() }));
    Ok(out)
}

/// Distinct step statistics of all paths of one length, with multiplicities.
pub type Census = Arc<Vec<(PathStats, u64)>>;

type CensusCache = RwLock<HashMap<(usize, bool), Census>>;

fn census_cache() -> &'static CensusCache {
    static CACHE: OnceLock<CensusCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Every path weight used by the transforms depends only on [`PathStats`],
/// so sums over paths reduce to sums over this census.
pub fn path_census(len: usize, motzkin: bool, cap: usize) -> Result<Census> {
    check_cap(len, cap)?;
    if let Some(c) = census_cache().read().unwrap().get(&(len, motzkin)) {
        return Ok(c.clone());
    }
    let mut tally: HashMap<PathStats, u64> = HashMap::new();
    for_each_path(len, motzkin, |s| {
        let st = path_statistics(&LukasiewiczPath { steps: s.to_vec() });
        *tally.entry(st).or_default() += 1;
    });
    let mut v: Vec<_> = tally.into_iter().collect();
    v.sort();
    let c = Arc::new(v);
    census_cache().write().unwrap().insert((len, motzkin), c.clone());
    Ok(c)
}
