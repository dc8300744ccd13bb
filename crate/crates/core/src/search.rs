//! Exhaustive minimum-union search over k-subsets of blocks.
//!
//! Subsets are enumerated in colexicographic order: the largest chosen index
//! is fixed first, then the next largest below it, and so on. Each value of the
//! largest index is a contiguous colex range; with the `parallel` feature those
//! ranges run on the rayon pool and share an atomically updated incumbent.
//! The minimum found is identical under either execution mode.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use crate::bits::BitRow;
use crate::error::{FrError, Result};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

/// Work budget and execution mode for exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Cap on visited search nodes.
    pub budget: u64,
    pub execution: Execution,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, execution: Execution::Parallel }
    }
}

impl SearchOptions {
    pub fn sequential() -> Self {
        SearchOptions { execution: Execution::Sequential, ..Self::default() }
    }

    pub fn with_budget(self, budget: u64) -> Self {
        SearchOptions { budget, ..self }
    }
}

const FLUSH_EVERY: u64 = 4096;

struct Shared {
    incumbent: AtomicUsize,
    visited: AtomicU64,
    exhausted: AtomicBool,
    budget: u64,
}

struct Worker<'a> {
    rows: &'a [BitRow],
    shared: &'a Shared,
    stack: Vec<BitRow>,
    local: u64,
}

impl Worker<'_> {
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local == FLUSH_EVERY {
            let total = self.shared.visited.fetch_add(self.local, Ordering::Relaxed) + self.local;
            self.local = 0;
            if total > self.shared.budget {
                self.shared.exhausted.store(true, Ordering::Relaxed);
            }
        }
        !self.shared.exhausted.load(Ordering::Relaxed)
    }

    /// Extend the partial union at `depth` with `remaining` more blocks, all below `bound`.
    fn descend(&mut self, depth: usize, remaining: usize, bound: usize) {
        if remaining == 0 {
            let u = self.stack[depth].count();
            self.shared.incumbent.fetch_min(u, Ordering::Relaxed);
            return;
        }
        // colex: next index ranges over remaining-1 ..= bound-1
        for idx in (remaining - 1..bound).rev() {
            if !self.tick() {
                return;
            }
            let (lo, hi) = self.stack.split_at_mut(depth + 1);
            let u = hi[0].assign_union(&lo[depth], &self.rows[idx]);
            if u >= self.shared.incumbent.load(Ordering::Relaxed) {
                continue;
            }
            self.descend(depth + 1, remaining - 1, idx);
        }
    }
}

fn greedy_union(rows: &[BitRow], k: usize, bits: usize) -> usize {
    let mut acc = BitRow::zeros(bits);
    let mut used = vec![false; rows.len()];
    let mut size = 0;
    let mut scratch = BitRow::zeros(bits);
    for _ in 0..k {
        let (best, best_size) = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, r)| (i, scratch.assign_union(&acc, r)))
            .min_by_key(|&(i, s)| (s, i))
            .expect("k <= number of rows");
        used[best] = true;
        acc.union_with(&rows[best]);
        size = best_size;
    }
    size
}

/// Minimum, over all k-subsets of `rows`, of the size of their union.
pub(crate) fn min_union(rows: &[BitRow], bits: usize, k: usize, opts: SearchOptions) -> Result<usize> {
    let n = rows.len();
    assert!(1 <= k && k <= n);
    let shared = Shared {
        incumbent: AtomicUsize::new(greedy_union(rows, k, bits)),
        visited: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        budget: opts.budget,
    };
    let run_top = |top: usize| {
        let mut w = Worker { rows, shared: &shared, stack: vec![BitRow::zeros(bits); k + 1], local: 0 };
        if !w.tick() {
            return;
        }
        w.stack[1] = rows[top].clone();
        if rows[top].count() < shared.incumbent.load(Ordering::Relaxed) {
            w.descend(1, k - 1, top);
        }
        shared.visited.fetch_add(w.local, Ordering::Relaxed);
    };
    let tops = k - 1..n;
    match opts.execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            tops.into_par_iter().for_each(run_top);
        }
        _ => tops.for_each(run_top),
    }
    if shared.exhausted.load(Ordering::Relaxed) || shared.visited.load(Ordering::Relaxed) > opts.budget {
        return Err(FrError::SizeLimitExceeded(opts.budget));
    }
    Ok(shared.incumbent.load(Ordering::Relaxed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(bits: usize, sets: &[&[usize]]) -> Vec<BitRow> {
        sets.iter().map(|s| BitRow::from_indices(bits, s)).collect()
    }

    #[test]
    fn finds_overlapping_pair() {
        let r = rows(6, &[&[0, 1], &[2, 3], &[4, 5], &[1, 2]]);
        for opts in [SearchOptions::sequential(), SearchOptions::default()] {
            assert_eq!(min_union(&r, 6, 1, opts).unwrap(), 2);
            assert_eq!(min_union(&r, 6, 2, opts).unwrap(), 3);
            assert_eq!(min_union(&r, 6, 3, opts).unwrap(), 4);
            assert_eq!(min_union(&r, 6, 4, opts).unwrap(), 6);
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let sets: Vec<Vec<usize>> = (0..24).map(|i| vec![i, (i + 1) % 24, (i + 5) % 24]).collect();
        let r: Vec<BitRow> = sets.iter().map(|s| BitRow::from_indices(24, s)).collect();
        let opts = SearchOptions::sequential().with_budget(10);
        assert!(matches!(min_union(&r, 24, 12, opts), Err(FrError::SizeLimitExceeded(10))));
    }
}
