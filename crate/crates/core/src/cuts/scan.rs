//! Exhaustive cut scans over vertex bitmasks.
//!
//! Tight cuts meet every perfect matching exactly once, so relative to a
//! fixed perfect matching `M0` a tight shore is a union of `M0`-pairs plus
//! one end of another pair; that family is enumerated directly. Separating
//! cuts have no such structure and are scanned over all odd subsets.
//! Nontrivial separating shores induce connected subgraphs on both sides
//! (each contraction is 2-connected), which prunes most subsets.

use std::cell::RefCell;

use crate::graph::{Cut, EdgeId, MultiGraph, VertexId};
use crate::matching::{Matching, PmOracle};

pub(super) const MAX_ORDER: usize = 64;

pub(super) struct Scanner<'g> {
    g: &'g MultiGraph,
    oracle: PmOracle<'g>,
    n: usize,
    adj: Vec<u64>,
    /// Endpoint indices of every edge, by position.
    ends: Vec<(usize, usize)>,
    /// Known perfect matchings, as edge positions.
    samples: RefCell<Vec<Vec<usize>>>,
}

impl<'g> Scanner<'g> {
    pub fn new(g: &'g MultiGraph) -> Scanner<'g> {
        let n = g.vertex_count();
        assert!(n <= MAX_ORDER, "bitmask scan limited to {MAX_ORDER} vertices");
        let mut adj = vec![0u64; n];
        let mut ends = Vec::with_capacity(g.edge_count());
        for e in g.edges() {
            let a = g.vertex_index(e.u).expect("endpoint");
            let b = g.vertex_index(e.v).expect("endpoint");
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            ends.push((a, b));
        }
        let oracle = PmOracle::new(g);
        let scanner = Scanner {
            g,
            oracle,
            n,
            adj,
            ends,
            samples: RefCell::new(Vec::new()),
        };
        if let Some(m) = scanner.oracle.perfect_matching(&[], &[]) {
            scanner.add_sample(&m);
        }
        scanner
    }

    fn add_sample(&self, m: &Matching) {
        let pos: Vec<usize> = m
            .edges()
            .iter()
            .map(|&e| self.g.edge_index(e).expect("matching edge"))
            .collect();
        self.samples.borrow_mut().push(pos);
    }

    /// One perfect matching through every edge.
    fn sample_every_edge(&self) {
        let mut covered = vec![false; self.ends.len()];
        for s in self.samples.borrow().iter() {
            for &k in s {
                covered[k] = true;
            }
        }
        for k in 0..self.ends.len() {
            if covered[k] {
                continue;
            }
            if let Some(m) = self.oracle.perfect_matching(&[self.g.edges()[k].id], &[]) {
                for &e in m.edges() {
                    covered[self.g.edge_index(e).expect("edge")] = true;
                }
                self.add_sample(&m);
            }
        }
    }

    fn crosses(&self, mask: u64, k: usize) -> bool {
        let (a, b) = self.ends[k];
        ((mask >> a) ^ (mask >> b)) & 1 == 1
    }

    fn crossing_count(&self, mask: u64, pm: &[usize]) -> usize {
        pm.iter().filter(|&&k| self.crosses(mask, k)).count()
    }

    fn connected(&self, mask: u64) -> bool {
        if mask == 0 {
            return false;
        }
        let mut reach = mask & mask.wrapping_neg();
        loop {
            let mut next = reach;
            let mut bits = reach;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= self.adj[v] & mask;
            }
            if next == reach {
                return reach == mask;
            }
            reach = next;
        }
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn both_sides_connected(&self, mask: u64) -> bool {
        self.connected(mask) && self.connected(self.full() & !mask)
    }

    fn cut_of(&self, mask: u64) -> Cut {
        let shore: Vec<VertexId> = (0..self.n)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.g.vertices()[i])
            .collect();
        Cut::from_sorted(shore)
    }

    fn cut_edges(&self, mask: u64) -> Vec<EdgeId> {
        (0..self.ends.len())
            .filter(|&k| self.crosses(mask, k))
            .map(|k| self.g.edges()[k].id)
            .collect()
    }

    /// Odd shores avoiding vertex 0 that are unions of pairs of the first
    /// sample matching plus one extra vertex, ordered by size then
    /// lexicographically.
    fn tight_candidates(&self) -> Vec<u64> {
        let m0: Vec<(usize, usize)> = match self.samples.borrow().first() {
            Some(pm) => pm.iter().map(|&k| self.ends[k]).collect(),
            None => return Vec::new(),
        };
        let k = m0.len();
        let mut out = Vec::new();
        for s in 0..k {
            let others: Vec<usize> = (0..k).filter(|&i| i != s).collect();
            for x in [m0[s].0, m0[s].1] {
                for sub in 0u64..(1u64 << others.len()) {
                    let mut mask = 1u64 << x;
                    for (bit, &p) in others.iter().enumerate() {
                        if sub >> bit & 1 == 1 {
                            mask |= (1u64 << m0[p].0) | (1u64 << m0[p].1);
                        }
                    }
                    let size = mask.count_ones() as usize;
                    if mask & 1 == 0 && size >= 3 && self.n - size >= 3 {
                        out.push(mask);
                    }
                }
            }
        }
        sort_masks(&mut out);
        out
    }

    fn is_tight_mask(&self, mask: u64) -> bool {
        if self
            .samples
            .borrow()
            .iter()
            .any(|pm| self.crossing_count(mask, pm) != 1)
        {
            return false;
        }
        if !self.both_sides_connected(mask) {
            return false;
        }
        let cut = self.cut_of(mask);
        match super::violation_with(&self.oracle, &cut) {
            Some(m) => {
                self.add_sample(&m);
                false
            }
            None => true,
        }
    }

    pub fn first_tight_cut(&self) -> Option<Cut> {
        self.tight_candidates()
            .into_iter()
            .find(|&m| self.is_tight_mask(m))
            .map(|m| self.cut_of(m))
    }

    pub fn all_tight_cuts(&self) -> Vec<Cut> {
        self.tight_candidates()
            .into_iter()
            .filter(|&m| self.is_tight_mask(m))
            .map(|m| self.cut_of(m))
            .collect()
    }

    /// Odd shores avoiding vertex 0 with both sides connected, by size then
    /// lexicographically.
    fn separating_candidates(&self) -> impl Iterator<Item = u64> + '_ {
        let n = self.n;
        (3..=n.saturating_sub(3)).step_by(2).flat_map(move |size| {
            let mut masks: Vec<u64> = subsets_of_size(n - 1, size)
                .map(|m| m << 1)
                .filter(|&m| self.both_sides_connected(m))
                .collect();
            sort_masks(&mut masks);
            masks
        })
    }

    fn is_separating_mask(&self, mask: u64) -> bool {
        let mut covered = vec![false; self.ends.len()];
        for pm in self.samples.borrow().iter() {
            if self.crossing_count(mask, pm) == 1 {
                for &k in pm {
                    covered[k] = true;
                }
            }
        }
        if covered.iter().all(|&c| c) {
            return true;
        }
        let cut = self.cut_edges(mask);
        for k in 0..self.ends.len() {
            if covered[k] {
                continue;
            }
            match super::once_through(&self.oracle, self.g.edges()[k].id, &cut) {
                Some(m) => {
                    for &e in m.edges() {
                        covered[self.g.edge_index(e).expect("edge")] = true;
                    }
                    self.add_sample(&m);
                }
                None => return false,
            }
        }
        true
    }

    pub fn first_separating_cut(&self) -> Option<Cut> {
        self.sample_every_edge();
        self.separating_candidates()
            .find(|&m| self.is_separating_mask(m))
            .map(|m| self.cut_of(m))
    }

    pub fn all_separating_cuts(&self) -> Vec<Cut> {
        self.sample_every_edge();
        self.separating_candidates()
            .filter(|&m| self.is_separating_mask(m))
            .map(|m| self.cut_of(m))
            .collect()
    }
}

/// Size first, then the sorted index lists compared lexicographically.
fn sort_masks(masks: &mut [u64]) {
    masks.sort_by_key(|&m| {
        let idx: Vec<u32> = (0..64).filter(|i| m >> i & 1 == 1).collect();
        (m.count_ones(), idx)
    });
}

/// All `k`-subsets of `0..n` as bitmasks (Gosper's hack).
fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit: u64 = if n >= 64 { u64::MAX } else { 1u64 << n };
    let mut cur: Option<u64> = if k == 0 {
        Some(0)
    } else if k <= n {
        Some((1u64 << k) - 1)
    } else {
        None
    };
    std::iter::from_fn(move || {
        let x = cur?;
        cur = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x.wrapping_add(c);
            let next = (((r ^ x) >> 2) / c) | r;
            if r == 0 || next >= limit {
                None
            } else {
                Some(next)
            }
        };
        Some(x)
    })
}
