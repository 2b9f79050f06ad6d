//! Maximum matching in general multigraphs and the perfect-matching
//! predicates everything else reduces to.
//!
//! The engine is Edmonds' augmenting-path search with blossom shrinking,
//! run on a dense index view. Queries against one graph share a
//! [`PmOracle`], which caches a maximum matching and warm-starts every
//! query from it; deleting a few vertices or edges from a perfect matching
//! exposes only a handful of vertices, so most queries need one or two
//! augmentations.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Dense, EdgeId, MultiGraph, VertexId};

pub const DEFAULT_PM_BUDGET: usize = 100_000;

const NONE: usize = usize::MAX;

/// A set of pairwise vertex-disjoint edges, kept in id order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Matching {
    edges: Vec<EdgeId>,
}

impl Matching {
    pub fn new(g: &MultiGraph, edges: &[EdgeId]) -> Result<Matching> {
        let mut used = BTreeSet::new();
        for &e in edges {
            let edge = g.require_edge(e)?;
            if !used.insert(edge.u) || !used.insert(edge.v) {
                return Err(Error::domain(format!("edge {e} shares a vertex with another member")));
            }
        }
        let mut edges = edges.to_vec();
        edges.sort();
        edges.dedup();
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_perfect_in(&self, g: &MultiGraph) -> bool {
        2 * self.len() == g.vertex_count() && self.edges.iter().all(|e| g.has_edge(*e))
    }
}

/// Answers perfect-matching questions about one fixed graph.
#[derive(Debug, Clone)]
pub struct PmOracle<'g> {
    g: &'g MultiGraph,
    d: Dense,
    base: Vec<usize>,
}

impl<'g> PmOracle<'g> {
    pub fn new(g: &'g MultiGraph) -> PmOracle<'g> {
        let d = Dense::new(g);
        let valive = vec![true; d.n];
        let ealive = vec![true; d.ends.len()];
        let base = Engine::new(&d, &valive, &ealive).run(None);
        PmOracle { g, d, base }
    }

    pub fn graph(&self) -> &'g MultiGraph {
        self.g
    }

    pub fn maximum_matching(&self) -> Matching {
        self.lift(&self.base, &vec![true; self.d.ends.len()])
    }

    pub fn is_matchable(&self) -> bool {
        self.d.n % 2 == 0 && self.base.iter().all(|&m| m != NONE)
    }

    /// Whether some perfect matching contains every edge of `forced`.
    pub fn extends(&self, forced: &[EdgeId]) -> bool {
        self.extends_avoiding(forced, &[])
    }

    /// Whether `g - deleted` has a perfect matching containing `forced`.
    pub fn extends_avoiding(&self, forced: &[EdgeId], deleted: &[EdgeId]) -> bool {
        self.find(forced, deleted, &[]).is_some()
    }

    pub fn matchable_without(&self, removed: &[VertexId]) -> bool {
        self.find(&[], &[], removed).is_some()
    }

    /// A perfect matching of `g - deleted` containing `forced`, if any.
    pub fn perfect_matching(&self, forced: &[EdgeId], deleted: &[EdgeId]) -> Option<Matching> {
        let (mate, ealive) = self.find(forced, deleted, &[])?;
        Some(self.lift(&mate, &ealive))
    }

    /// Index-level query. `None` when the forced set is invalid or no
    /// perfect matching of the reduced graph exists.
    fn find(
        &self,
        forced: &[EdgeId],
        deleted: &[EdgeId],
        removed: &[VertexId],
    ) -> Option<(Vec<usize>, Vec<bool>)> {
        let mut valive = vec![true; self.d.n];
        let mut ealive = vec![true; self.d.ends.len()];
        for e in deleted {
            if let Some(k) = self.g.edge_index(*e) {
                ealive[k] = false;
            }
        }
        for v in removed {
            valive[self.g.vertex_index(*v)?] = false;
        }
        let mut pinned = Vec::with_capacity(forced.len());
        for e in forced {
            let k = self.g.edge_index(*e)?;
            if !ealive[k] {
                return None;
            }
            let (a, b) = self.d.ends[k];
            if !valive[a] || !valive[b] {
                return None;
            }
            valive[a] = false;
            valive[b] = false;
            pinned.push((a, b));
        }
        if valive.iter().filter(|&&x| x).count() % 2 == 1 {
            return None;
        }
        let mut mate = Engine::new(&self.d, &valive, &ealive).run(Some(&self.base));
        if (0..self.d.n).any(|v| valive[v] && mate[v] == NONE) {
            return None;
        }
        for (a, b) in pinned {
            mate[a] = b;
            mate[b] = a;
        }
        // The pinned pair must be realized by a forced edge, not by a parallel twin.
        let mut ealive_lift = ealive;
        let forced_idx: BTreeSet<usize> = forced.iter().filter_map(|e| self.g.edge_index(*e)).collect();
        for (k, &(a, b)) in self.d.ends.iter().enumerate() {
            if forced_idx.contains(&k) {
                continue;
            }
            if forced_idx.iter().any(|&f| {
                let (x, y) = self.d.ends[f];
                (x == a && y == b) || (x == b && y == a)
            }) {
                ealive_lift[k] = false;
            }
        }
        Some((mate, ealive_lift))
    }

    /// Converts a mate array to edge ids, taking the lowest live edge per pair.
    fn lift(&self, mate: &[usize], ealive: &[bool]) -> Matching {
        let mut edges = Vec::new();
        for v in 0..self.d.n {
            let w = mate[v];
            if w == NONE || w < v {
                continue;
            }
            let k = self.d.adj[v]
                .iter()
                .filter(|&&(x, k)| x == w && ealive[k])
                .map(|&(_, k)| k)
                .min()
                .expect("matched pair is adjacent");
            edges.push(self.g.edges()[k].id);
        }
        edges.sort();
        Matching { edges }
    }

    /// Every perfect matching, by branching on the lowest uncovered vertex.
    pub fn enumerate(&self, budget: usize) -> Result<Vec<Matching>> {
        let mut out = Vec::new();
        if !self.is_matchable() {
            return Ok(out);
        }
        let mut valive = vec![true; self.d.n];
        let ealive = vec![true; self.d.ends.len()];
        let mut chosen = Vec::new();
        self.branch(&mut valive, &ealive, &self.base, &mut chosen, &mut out, budget)?;
        Ok(out)
    }

    fn branch(
        &self,
        valive: &mut [bool],
        ealive: &[bool],
        witness: &[usize],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Matching>,
        budget: usize,
    ) -> Result<()> {
        let Some(v) = (0..self.d.n).find(|&x| valive[x]) else {
            if out.len() == budget {
                return Err(Error::capability(format!(
                    "more than {budget} perfect matchings; use the polynomial predicates instead"
                )));
            }
            let mut edges: Vec<EdgeId> = chosen.iter().map(|&k| self.g.edges()[k].id).collect();
            edges.sort();
            out.push(Matching { edges });
            return Ok(());
        };
        valive[v] = false;
        for &(w, k) in &self.d.adj[v] {
            if !valive[w] {
                continue;
            }
            valive[w] = false;
            let mate = Engine::new(&self.d, valive, ealive).run(Some(witness));
            if (0..self.d.n).all(|x| !valive[x] || mate[x] != NONE) {
                chosen.push(k);
                self.branch(valive, ealive, &mate, chosen, out, budget)?;
                chosen.pop();
            }
            valive[w] = true;
        }
        valive[v] = true;
        Ok(())
    }
}

/// Edmonds' blossom algorithm over the live part of a dense graph.
struct Engine<'a> {
    d: &'a Dense,
    valive: &'a [bool],
    ealive: &'a [bool],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
}

impl<'a> Engine<'a> {
    fn new(d: &'a Dense, valive: &'a [bool], ealive: &'a [bool]) -> Self {
        let n = d.n;
        Engine {
            d,
            valive,
            ealive,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
        }
    }

    fn live_edge(&self, v: usize, w: usize) -> bool {
        self.d.adj[v]
            .iter()
            .any(|&(x, k)| x == w && self.ealive[k])
    }

    fn run(mut self, warm: Option<&[usize]>) -> Vec<usize> {
        let n = self.d.n;
        if let Some(w) = warm {
            for v in 0..n {
                let u = w[v];
                if u != NONE && self.valive[v] && self.valive[u] && self.live_edge(v, u) {
                    self.mate[v] = u;
                }
            }
        }
        // greedy fill
        for v in 0..n {
            if !self.valive[v] || self.mate[v] != NONE {
                continue;
            }
            for &(w, k) in &self.d.adj[v] {
                if self.ealive[k] && self.valive[w] && self.mate[w] == NONE {
                    self.mate[v] = w;
                    self.mate[w] = v;
                    break;
                }
            }
        }
        for root in 0..n {
            if self.valive[root] && self.mate[root] == NONE {
                if let Some(end) = self.find_path(root) {
                    self.augment(end);
                }
            }
        }
        self.mate
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.d.n];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.d.n;
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.d.adj[v].len() {
                let (to, k) = self.d.adj[v][idx];
                if !self.ealive[k] || !self.valive[to] {
                    continue;
                }
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }
}

pub fn maximum_matching(g: &MultiGraph) -> Matching {
    PmOracle::new(g).maximum_matching()
}

pub fn is_matchable(g: &MultiGraph) -> bool {
    PmOracle::new(g).is_matchable()
}

/// Forced edges that share a vertex, or are not in `g`, give `false`.
pub fn has_pm_containing(g: &MultiGraph, forced: &[EdgeId]) -> bool {
    PmOracle::new(g).extends(forced)
}

pub fn enumerate_pms(g: &MultiGraph, budget: usize) -> Result<Vec<Matching>> {
    PmOracle::new(g).enumerate(budget)
}

pub fn is_admissible(g: &MultiGraph, e: EdgeId) -> Result<bool> {
    g.require_edge(e)?;
    Ok(has_pm_containing(g, &[e]))
}

/// Edges lying in no perfect matching, in id order.
pub fn inadmissible_edges(g: &MultiGraph) -> Vec<EdgeId> {
    let oracle = PmOracle::new(g);
    g.edges()
        .iter()
        .map(|e| e.id)
        .filter(|&e| !oracle.extends(&[e]))
        .collect()
}

pub fn is_matching_covered(g: &MultiGraph) -> bool {
    let n = g.vertex_count();
    if n < 2 || n % 2 == 1 || !g.is_connected() {
        return false;
    }
    let oracle = PmOracle::new(g);
    oracle.is_matchable() && g.edges().iter().all(|e| oracle.extends(&[e.id]))
}

/// Smallest `S ⊂ A` certifying that `e` is inadmissible in the bipartite
/// matchable graph `h`: `|N(S)| = |S|`, one end of `e` in `N(S)`, the other
/// outside `S`. `None` when `e` is admissible.
pub fn bip_inadmissibility_witness(h: &MultiGraph, e: EdgeId) -> Result<Option<Vec<VertexId>>> {
    const MAX_SIDE: usize = 20;
    let edge = *h.require_edge(e)?;
    let bp = h
        .is_bipartite()
        .ok_or_else(|| Error::domain("witness search needs a bipartite graph"))?;
    let oracle = PmOracle::new(h);
    if !oracle.is_matchable() {
        return Err(Error::domain("witness search needs a matchable graph"));
    }
    if oracle.extends(&[e]) {
        return Ok(None);
    }
    let a = &bp.a;
    if a.len() > MAX_SIDE {
        return Err(Error::capability(format!(
            "exhaustive witness search limited to |A| <= {MAX_SIDE}"
        )));
    }
    let (end_a, end_b) = if bp.side_of(edge.u) == Some(true) {
        (edge.u, edge.v)
    } else {
        (edge.v, edge.u)
    };
    let nbrs: Vec<BTreeSet<VertexId>> = a.iter().map(|&v| h.neighbors(v)).collect();
    for size in 1..a.len() {
        for combo in combinations(a.len(), size) {
            if combo.iter().any(|&i| a[i] == end_a) {
                continue;
            }
            let n_s: BTreeSet<VertexId> = combo.iter().flat_map(|&i| nbrs[i].iter().copied()).collect();
            if n_s.len() == size && n_s.contains(&end_b) {
                return Ok(Some(combo.iter().map(|&i| a[i]).collect()));
            }
        }
    }
    Err(Error::internal(format!(
        "edge {e} is inadmissible but no Hall witness exists"
    )))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in (i + 1)..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}
