//! Exhaustive computation of `e_d(n)` for small `n`.
//!
//! Translating a code by XOR preserves distances, so some optimal code
//! contains `0^n`; every other member then has weight exactly `d`. Two
//! weight-`d` words are compatible when their distance is `d`, so
//! `e_d(n) = 1 + ω(G)` for the compatibility graph `G` on weight-`d` words.
//! Coordinate permutations let us fix one member to `1^d 0^(n-d)`, which
//! leaves a clique search among the weight-`d` words sharing exactly
//! `d/2` ones with it.

mod clique;
mod naive;

use std::time::{Duration, Instant};

use crate::bounds::{best_lower, Effort};
use crate::codes::{Code, Codeword};
use crate::construct::pair_code;
use crate::error::{Error, Result};

use clique::{max_clique, Bits, Graph};

pub use naive::{naive_exact_e, naive_exact_e_untranslated};

/// Largest supported `n`.
pub const MAX_N: u32 = 30;

/// Largest compatibility graph the solver will build.
pub const MAX_VERTICES: u64 = 1 << 15;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: u32,
    pub d: u32,
    /// Wall-clock budget; `None` searches to completion.
    pub time_budget: Option<Duration>,
    /// Worker threads; 0 uses the global pool.
    pub threads: usize,
    pub materialize_witness: bool,
}

impl SearchConfig {
    pub fn new(n: u32, d: u32) -> SearchConfig {
        SearchConfig {
            n,
            d,
            time_budget: None,
            threads: 0,
            materialize_witness: true,
        }
    }

    pub fn with_time_budget(mut self, budget: Duration) -> SearchConfig {
        self.time_budget = Some(budget);
        self
    }

    pub fn with_threads(mut self, threads: usize) -> SearchConfig {
        self.threads = threads;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_N || self.d == 0 {
            return Err(Error::BadParams(format!(
                "exact search needs 1 <= n <= {MAX_N} and d >= 1, got n={}, d={}",
                self.n, self.d
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    /// The value is `e_d(n)`.
    Proven,
    /// The budget ran out; the value is a certified lower bound.
    Timeout,
}

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub value: u64,
    pub witness: Option<Code>,
    pub status: SearchStatus,
    /// Approximate number of search nodes visited.
    pub nodes: u64,
}

/// `e_d(n)` where a closed form is known: 1 for `d > n`, 2 for odd
/// `d <= n`, and `⌊2n/d⌋` for even `d` once `n` reaches the Deza threshold.
pub fn exact_by_theory(n: u64, d: u64) -> Option<u64> {
    if d == 0 || n == 0 {
        return None;
    }
    if d > n {
        return Some(1);
    }
    if d % 2 == 1 {
        return Some(2);
    }
    let threshold = crate::bounds::deza_exact_threshold(d).ok()?;
    (n >= threshold).then_some(2 * n / d)
}

/// k-subsets of `0..m` as bitmasks, ascending.
fn subsets(m: u32, k: u32) -> Vec<u32> {
    if k > m {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut s: u32 = (1 << k) - 1;
    let limit: u64 = 1 << m;
    while (s as u64) < limit {
        out.push(s);
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
        if r == 0 {
            break;
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn word(n: u32, mask: u32) -> Codeword {
    Codeword::from_support(n as usize, (0..n as usize).filter(|&i| mask >> i & 1 == 1))
}

/// Computes `e_d(n)` exhaustively, with a witness code of that size.
pub fn exact_e(cfg: &SearchConfig) -> Result<ExactResult> {
    cfg.validate()?;
    let (n, d) = (cfg.n, cfg.d);
    let witness_of = |masks: &[u32]| -> Result<Option<Code>> {
        if !cfg.materialize_witness {
            return Ok(None);
        }
        let words = masks.iter().map(|&m| word(n, m)).collect();
        Code::certified(n as usize, words, d).map(Some)
    };
    let proven = |value: u64, witness: Option<Code>| ExactResult {
        value,
        witness,
        status: SearchStatus::Proven,
        nodes: 0,
    };

    if d > n {
        let witness = witness_of(&[0])?;
        return Ok(proven(1, witness));
    }
    if d % 2 == 1 {
        let witness = cfg
            .materialize_witness
            .then(|| pair_code(n as usize, d as usize))
            .transpose()?;
        return Ok(proven(2, witness));
    }

    let half = d / 2;
    let fixed: u32 = (1 << d) - 1;
    let vertex_count = binomial(d as u64, half as u64) * binomial((n - d) as u64, half as u64);
    if vertex_count > MAX_VERTICES {
        // Too large to search; report the best construction as a lower bound.
        let lower = best_lower(n as u64, d as u64, &Effort::default())?;
        let witness = match lower.certificate {
            crate::bounds::Certificate::Code(c) if cfg.materialize_witness => Some(c),
            _ => None,
        };
        return Ok(ExactResult {
            value: lower.value,
            witness,
            status: SearchStatus::Timeout,
            nodes: 0,
        });
    }

    let deadline = cfg.time_budget.map(|b| Instant::now() + b);
    let mut vertices: Vec<u32> = Vec::with_capacity(vertex_count as usize);
    for low in subsets(d, half) {
        for high in subsets(n - d, half) {
            vertices.push(low | high << d);
        }
    }
    let compatible = |a: u32, b: u32| (a ^ b).count_ones() == d;

    // Branching order: descending degree, ties by numeric value.
    let degrees: Vec<usize> = vertices
        .iter()
        .map(|&a| vertices.iter().filter(|&&b| b != a && compatible(a, b)).count())
        .collect();
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&x, &y| degrees[y].cmp(&degrees[x]).then(vertices[x].cmp(&vertices[y])));
    let sorted: Vec<u32> = order.iter().map(|&i| vertices[i]).collect();

    let adj: Vec<Bits> = sorted
        .iter()
        .map(|&a| {
            let mut row = Bits::empty(sorted.len());
            for (j, &b) in sorted.iter().enumerate() {
                if b != a && compatible(a, b) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let graph = Graph::from_adjacency(adj);
    debug_assert!(sorted.is_empty() || graph.degree(0) == degrees[order[0]]);

    let run = || max_clique(&graph, deadline);
    let outcome = if cfg.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::BadParams(format!("thread pool: {e}")))?
            .install(run)
    } else {
        run()
    };

    let mut masks = vec![0u32, fixed];
    masks.extend(outcome.clique.iter().map(|&v| sorted[v]));
    let witness = witness_of(&masks)?;
    Ok(ExactResult {
        value: masks.len() as u64,
        witness,
        status: if outcome.complete {
            SearchStatus::Proven
        } else {
            SearchStatus::Timeout
        },
        nodes: outcome.nodes,
    })
}
