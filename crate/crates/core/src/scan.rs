//! Index-space scans that give the same answer for any worker count.
//!
//! Every search reports the smallest index satisfying its predicate, so a
//! witness never depends on scheduling.

use rayon::prelude::*;

use crate::config::Config;

pub fn find_first<F>(cfg: &Config, range: std::ops::Range<u64>, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    if cfg.parallel() {
        (range.start as usize..range.end as usize)
            .into_par_iter()
            .find_first(|&i| pred(i as u64))
            .map(|i| i as u64)
    } else {
        range.into_iter().find(|&i| pred(i))
    }
}

/// All indices in `range` satisfying `pred`, ascending.
pub fn filter<F>(cfg: &Config, range: std::ops::Range<u64>, pred: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    if cfg.parallel() {
        (range.start as usize..range.end as usize)
            .into_par_iter()
            .filter(|&i| pred(i as u64))
            .map(|i| i as u64)
            .collect()
    } else {
        range.into_iter().filter(|&i| pred(i)).collect()
    }
}

/// Order-preserving map over a slice.
pub fn map<T, U, F>(cfg: &Config, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    if cfg.parallel() {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}
