//! Bitset branch-and-bound maximum clique search.
//!
//! Vertices are numbered in branching order. Each node greedily colors its
//! candidate set in that order; vertices are expanded from the highest
//! color down, and a branch is cut as soon as `|clique| + color` cannot beat
//! the incumbent. The top-level branches run in parallel and share the
//! incumbent size through an atomic.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

const DEADLINE_CHECK_INTERVAL: u64 = 1 << 10;

#[derive(Clone, PartialEq, Eq)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub(crate) fn empty(len: usize) -> Bits {
        Bits(vec![0; len.div_ceil(64)])
    }

    pub(crate) fn full(len: usize) -> Bits {
        let mut b = Bits::empty(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub(crate) fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    #[inline]
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    #[inline]
    fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }
}

/// Undirected graph as adjacency bitsets.
pub(crate) struct Graph {
    adj: Vec<Bits>,
}

impl Graph {
    pub(crate) fn from_adjacency(adj: Vec<Bits>) -> Graph {
        Graph { adj }
    }

    pub(crate) fn len(&self) -> usize {
        self.adj.len()
    }

    pub(crate) fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }
}

pub(crate) struct CliqueOutcome {
    pub clique: Vec<usize>,
    pub complete: bool,
    pub nodes: u64,
}

struct Search<'g> {
    graph: &'g Graph,
    best: AtomicUsize,
    best_clique: Mutex<Vec<usize>>,
    stop: AtomicBool,
    deadline: Option<Instant>,
    nodes: AtomicU64,
}

impl Search<'_> {
    fn offer(&self, clique: &[usize]) {
        if clique.len() <= self.best.load(Ordering::Relaxed) {
            return;
        }
        let mut guard = self.best_clique.lock().expect("incumbent lock");
        if clique.len() > guard.len() {
            *guard = clique.to_vec();
            self.best.fetch_max(clique.len(), Ordering::SeqCst);
        }
    }

    fn tick(&self, local: &mut u64) -> bool {
        *local += 1;
        if *local % DEADLINE_CHECK_INTERVAL == 0 {
            self.nodes.fetch_add(DEADLINE_CHECK_INTERVAL, Ordering::Relaxed);
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        self.stop.load(Ordering::Relaxed)
    }

    /// Greedy sequential coloring of `p`; returns the vertices whose color
    /// is at least `kmin`, in coloring order, with their colors.
    fn color(&self, p: &Bits, kmin: usize) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = p.clone();
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut k = 0;
        while !uncolored.is_empty() {
            k += 1;
            let mut class = uncolored.clone();
            while let Some(v) = class.first() {
                uncolored.remove(v);
                class.remove(v);
                class.and_not_assign(&self.graph.adj[v]);
                if k >= kmin {
                    order.push(v);
                    colors.push(k);
                }
            }
        }
        (order, colors)
    }

    fn kmin(&self, depth: usize) -> usize {
        (self.best.load(Ordering::Relaxed) + 1).saturating_sub(depth)
    }

    fn expand(&self, clique: &mut Vec<usize>, mut p: Bits, local: &mut u64) {
        if self.tick(local) {
            return;
        }
        let (order, colors) = self.color(&p, self.kmin(clique.len()));
        for idx in (0..order.len()).rev() {
            if self.stop.load(Ordering::Relaxed)
                || clique.len() + colors[idx] <= self.best.load(Ordering::Relaxed)
            {
                return;
            }
            let v = order[idx];
            clique.push(v);
            let next = p.and(&self.graph.adj[v]);
            if next.is_empty() {
                self.offer(clique);
            } else {
                self.expand(clique, next, local);
            }
            clique.pop();
            p.remove(v);
        }
    }
}

fn greedy_clique(graph: &Graph) -> Vec<usize> {
    let mut clique: Vec<usize> = Vec::new();
    for v in 0..graph.len() {
        if clique.iter().all(|&u| graph.adj[u].contains(v)) {
            clique.push(v);
        }
    }
    clique
}

/// Maximum clique of `graph`. Stops early (with `complete = false`) once
/// `deadline` passes; the returned clique is always valid.
pub(crate) fn max_clique(graph: &Graph, deadline: Option<Instant>) -> CliqueOutcome {
    let n = graph.len();
    if n == 0 {
        return CliqueOutcome {
            clique: Vec::new(),
            complete: true,
            nodes: 0,
        };
    }
    let initial = greedy_clique(graph);
    let search = Search {
        graph,
        best: AtomicUsize::new(initial.len()),
        best_clique: Mutex::new(initial),
        stop: AtomicBool::new(false),
        deadline,
        nodes: AtomicU64::new(0),
    };

    let root = Bits::full(n);
    let (order, colors) = search.color(&root, search.kmin(0));
    // Branch `idx` may not use vertices branched on at higher indices.
    let mut allowed = Vec::with_capacity(order.len());
    let mut p = root;
    for &v in order.iter().rev() {
        allowed.push(p.clone());
        p.remove(v);
    }
    allowed.reverse();

    (0..order.len()).into_par_iter().rev().for_each(|idx| {
        let mut local = 0;
        if search.stop.load(Ordering::Relaxed) || colors[idx] <= search.best.load(Ordering::Relaxed) {
            return;
        }
        let v = order[idx];
        let mut clique = vec![v];
        let next = allowed[idx].and(&graph.adj[v]);
        if next.is_empty() {
            search.offer(&clique);
        } else {
            search.expand(&mut clique, next, &mut local);
        }
        search.nodes.fetch_add(local % DEADLINE_CHECK_INTERVAL, Ordering::Relaxed);
    });

    CliqueOutcome {
        clique: search.best_clique.into_inner().expect("incumbent lock"),
        complete: !search.stop.load(Ordering::Relaxed),
        nodes: search.nodes.load(Ordering::Relaxed),
    }
}
