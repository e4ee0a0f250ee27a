//! Reference oracles for [`super::exact_e`]: plain depth-first searches over
//! subsets of `Q_n` whose only pruning is the trivial one (a branch stops
//! once the set size plus the number of remaining candidates cannot beat
//! the best set found).
//!
//! [`naive_exact_e_untranslated`] searches every subset of `Q_n`.
//! [`naive_exact_e`] additionally assumes `0^n` is a member, which is
//! harmless because XOR translation is an isometry; it does not restrict
//! weights up front, fix a second member, or use coloring bounds.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

fn dfs(size: u64, candidates: &[u16], d: u32, best: &AtomicU64) {
    best.fetch_max(size, Ordering::Relaxed);
    let mut next = Vec::with_capacity(candidates.len());
    for (i, &v) in candidates.iter().enumerate() {
        if size + (candidates.len() - i) as u64 <= best.load(Ordering::Relaxed) {
            return;
        }
        next.clear();
        next.extend(
            candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&c| (c ^ v).count_ones() == d),
        );
        dfs(size + 1, &next, d, best);
    }
}

fn later_at_distance(first: u32, n: u32, d: u32) -> Vec<u16> {
    (first + 1..1u32 << n)
        .filter(|&c| (c ^ first).count_ones() == d)
        .map(|c| c as u16)
        .collect()
}

fn check_n(n: u32) {
    assert!((1..=16).contains(&n), "naive search is limited to n <= 16");
}

/// `e_d(n)` as the largest equidistant set containing `0^n`, found by
/// enumerating such sets in increasing order. Exponential; for `n <= 12`.
pub fn naive_exact_e(n: u32, d: u32) -> u64 {
    check_n(n);
    let best = AtomicU64::new(1);
    let candidates = later_at_distance(0, n, d);
    // split the first branching level across threads
    (0..candidates.len()).into_par_iter().for_each(|i| {
        let v = candidates[i];
        let next: Vec<u16> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&c| (c ^ v).count_ones() == d)
            .collect();
        dfs(2, &next, d, &best);
    });
    best.load(Ordering::Relaxed)
}

/// `e_d(n)` by enumerating every equidistant subset of `Q_n` from its
/// smallest member. Far slower than [`naive_exact_e`]; for `n <= 10`.
pub fn naive_exact_e_untranslated(n: u32, d: u32) -> u64 {
    check_n(n);
    let best = AtomicU64::new(1);
    (0..1u32 << n).into_par_iter().for_each(|first| {
        dfs(1, &later_at_distance(first, n, d), d, &best);
    });
    best.load(Ordering::Relaxed)
}
