//! Exact canonical forms for small simple graphs.
//!
//! Colour refinement to an equitable partition, then individualization
//! with backtracking. Children whose refined quotient is not maximal are
//! pruned; the pruning rule depends only on label-invariant data, so the
//! set of leaves visited is itself invariant and the best leaf code is a
//! canonical form. Multiplicities are ignored: the form describes the
//! underlying simple graph.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

pub const DEFAULT_CANON_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_hex(&self) -> String {
        let mut s = format!("{}:", self.n);
        for w in &self.bits {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

pub fn canonical_form(g: &MultiGraph) -> Result<CanonicalForm> {
    canonical_form_with_limit(g, DEFAULT_CANON_LIMIT)
}

pub fn canonical_form_with_limit(g: &MultiGraph, limit: usize) -> Result<CanonicalForm> {
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::capability(format!(
            "canonical form limited to {limit} vertices, graph has {n}"
        )));
    }
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        let a = g.vertex_index(e.u).expect("endpoint");
        let b = g.vertex_index(e.v).expect("endpoint");
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut search = Search {
        adj: &adj,
        n,
        best: None,
    };
    let root = refine(&adj, vec![(0..n).collect()]);
    search.run(root);
    Ok(CanonicalForm {
        n,
        bits: search.best.unwrap_or_default(),
    })
}

type Partition = Vec<Vec<usize>>;

struct Search<'a> {
    adj: &'a [Vec<bool>],
    n: usize,
    best: Option<Vec<u64>>,
}

impl Search<'_> {
    fn run(&mut self, part: Partition) {
        let Some(target) = target_cell(&part) else {
            let code = self.code(&part);
            if self.best.as_ref().is_none_or(|b| code > *b) {
                self.best = Some(code);
            }
            return;
        };
        let mut children: Vec<(Vec<usize>, Partition)> = part[target]
            .iter()
            .map(|&v| {
                let child = refine(self.adj, individualize(&part, target, v));
                (quotient(self.adj, &child), child)
            })
            .collect();
        let top = children
            .iter()
            .map(|(q, _)| q.clone())
            .max()
            .expect("nonempty cell");
        children.retain(|(q, _)| *q == top);
        for (_, child) in children {
            self.run(child);
        }
    }

    fn code(&self, part: &Partition) -> Vec<u64> {
        let order: Vec<usize> = part.iter().map(|c| c[0]).collect();
        let total = self.n * self.n.saturating_sub(1) / 2;
        let mut bits = vec![0u64; total.div_ceil(64)];
        let mut k = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.adj[order[i]][order[j]] {
                    bits[k / 64] |= 1u64 << (63 - k % 64);
                }
                k += 1;
            }
        }
        bits
    }
}

/// First smallest non-singleton cell.
fn target_cell(part: &Partition) -> Option<usize> {
    part.iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

fn individualize(part: &Partition, cell: usize, v: usize) -> Partition {
    let mut out = Vec::with_capacity(part.len() + 1);
    for (i, c) in part.iter().enumerate() {
        if i == cell {
            out.push(vec![v]);
            out.push(c.iter().copied().filter(|&x| x != v).collect());
        } else {
            out.push(c.clone());
        }
    }
    out
}

/// Splits cells by neighbour counts into every cell until stable.
fn refine(adj: &[Vec<bool>], mut part: Partition) -> Partition {
    let n = adj.len();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, c) in part.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = part.len();
        let mut next: Partition = Vec::with_capacity(k);
        for c in &part {
            let mut keyed: Vec<(Vec<usize>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut sig = vec![0usize; k];
                    for (w, &on) in adj[v].iter().enumerate() {
                        if on {
                            sig[cell_of[w]] += 1;
                        }
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == part.len() {
            return next;
        }
        part = next;
    }
}

/// Cell sizes plus the cell-to-cell neighbour counts of an equitable
/// partition.
fn quotient(adj: &[Vec<bool>], part: &Partition) -> Vec<usize> {
    let n = adj.len();
    let mut cell_of = vec![0usize; n];
    for (i, c) in part.iter().enumerate() {
        for &v in c {
            cell_of[v] = i;
        }
    }
    let mut out: Vec<usize> = part.iter().map(Vec::len).collect();
    for c in part {
        let v = c[0];
        let mut counts = vec![0usize; part.len()];
        for (w, &on) in adj[v].iter().enumerate() {
            if on {
                counts[cell_of[w]] += 1;
            }
        }
        out.extend(counts);
    }
    out
}
