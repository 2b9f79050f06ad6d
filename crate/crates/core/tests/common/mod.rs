//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the matching engine of the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use matchcover::{Cut, EdgeId, MultiGraph, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

/// Index view: vertex positions, edge endpoints as positions, edge ids.
pub struct Plain {
    pub n: usize,
    pub vertices: Vec<VertexId>,
    pub ends: Vec<(usize, usize)>,
    pub ids: Vec<EdgeId>,
}

impl Plain {
    pub fn of(g: &MultiGraph) -> Plain {
        let vertices = g.vertices().to_vec();
        let pos: BTreeMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let ends = g.edges().iter().map(|e| (pos[&e.u], pos[&e.v])).collect();
        let ids = g.edges().iter().map(|e| e.id).collect();
        Plain {
            n: vertices.len(),
            vertices,
            ends,
            ids,
        }
    }

    fn adjacency_masks(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(a, b) in &self.ends {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }
}

/// Maximum matching size by memoised search over vertex subsets.
pub fn max_matching_size(g: &MultiGraph) -> usize {
    let p = Plain::of(g);
    assert!(p.n <= 20, "brute force is for small graphs");
    let adj = p.adjacency_masks();
    let mut memo = vec![usize::MAX; 1 << p.n];
    fn best(mask: usize, adj: &[u64], memo: &mut [usize]) -> usize {
        if mask == 0 {
            return 0;
        }
        if memo[mask] != usize::MAX {
            return memo[mask];
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut b = best(rest, adj, memo);
        let mut nb = (adj[i] as usize) & rest;
        while nb != 0 {
            let j = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            b = b.max(1 + best(rest & !(1 << j), adj, memo));
        }
        memo[mask] = b;
        b
    }
    best((1 << p.n) - 1, &adj, &mut memo)
}

/// Every perfect matching, as sorted edge positions.
pub fn perfect_matchings(g: &MultiGraph) -> Vec<Vec<usize>> {
    let p = Plain::of(g);
    let mut incident = vec![Vec::new(); p.n];
    for (k, &(a, b)) in p.ends.iter().enumerate() {
        incident[a].push((k, b));
        incident[b].push((k, a));
    }
    let mut out = Vec::new();
    let mut covered = vec![false; p.n];
    let mut chosen = Vec::new();
    fn go(
        incident: &[Vec<(usize, usize)>],
        covered: &mut [bool],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(i) = covered.iter().position(|c| !c) else {
            let mut m = chosen.clone();
            m.sort();
            out.push(m);
            return;
        };
        covered[i] = true;
        for &(k, j) in &incident[i] {
            if !covered[j] {
                covered[j] = true;
                chosen.push(k);
                go(incident, covered, chosen, out);
                chosen.pop();
                covered[j] = false;
            }
        }
        covered[i] = false;
    }
    if p.n % 2 == 0 {
        go(&incident, &mut covered, &mut chosen, &mut out);
    }
    out
}

/// Groups edges by the set of perfect matchings containing them. For a
/// matching covered graph this is the partition into mutually dependent
/// classes.
pub fn partition_by_incidence(g: &MultiGraph, pms: &[Vec<usize>]) -> Vec<Vec<EdgeId>> {
    let ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
    for (i, m) in pms.iter().enumerate() {
        for &k in m {
            sets[k].push(i);
        }
    }
    let mut groups: BTreeMap<Vec<usize>, Vec<EdgeId>> = BTreeMap::new();
    for (k, s) in sets.into_iter().enumerate() {
        groups.entry(s).or_default().push(ids[k]);
    }
    let mut classes: Vec<Vec<EdgeId>> = groups.into_values().collect();
    for c in &mut classes {
        c.sort();
    }
    classes.sort();
    classes
}

/// Every perfect matching meets the cut in exactly one edge.
pub fn crosses_once(g: &MultiGraph, pms: &[Vec<usize>], shore: &[VertexId]) -> bool {
    let in_cut: Vec<bool> = g
        .edges()
        .iter()
        .map(|e| shore.contains(&e.u) != shore.contains(&e.v))
        .collect();
    pms.iter().all(|m| m.iter().filter(|&&k| in_cut[k]).count() == 1)
}

/// Connected components of the subgraph induced by `alive`, as
/// vertex-position bitmasks.
fn component_masks(adj: &[u64], alive: u64) -> Vec<u64> {
    let mut left = alive;
    let mut out = Vec::new();
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let i = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[i] & alive & !comp;
            comp |= new;
            frontier |= new;
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

/// Maximal barriers, found by testing every vertex subset.
pub fn maximal_barriers(g: &MultiGraph) -> Vec<Vec<VertexId>> {
    let p = Plain::of(g);
    assert!(p.n <= 16, "brute force is for small graphs");
    let adj = p.adjacency_masks();
    let full: u64 = (1 << p.n) - 1;
    let barriers: Vec<u64> = (1..=full)
        .filter(|&s| {
            let odd = component_masks(&adj, full & !s)
                .iter()
                .filter(|c| c.count_ones() % 2 == 1)
                .count();
            odd == s.count_ones() as usize
        })
        .collect();
    let mut out: Vec<Vec<VertexId>> = barriers
        .iter()
        .filter(|&&s| !barriers.iter().any(|&t| t != s && t & s == s))
        .map(|&s| (0..p.n).filter(|i| s >> i & 1 == 1).map(|i| p.vertices[i]).collect())
        .collect();
    out.sort();
    out
}

/// A copy of `g` with vertices renamed by a random permutation and edges
/// inserted in random order. Returns the copy, the vertex map and the
/// edge map.
pub fn relabel<R: Rng>(
    rng: &mut R,
    g: &MultiGraph,
) -> (MultiGraph, BTreeMap<VertexId, VertexId>, BTreeMap<EdgeId, EdgeId>) {
    let n = g.vertex_count();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    let vmap: BTreeMap<VertexId, VertexId> = g
        .vertices()
        .iter()
        .zip(&perm)
        .map(|(&v, &p)| (v, VertexId(p)))
        .collect();
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    let mut h = MultiGraph::with_vertices(n);
    let mut emap = BTreeMap::new();
    for k in order {
        let e = g.edges()[k];
        let id = h.add_edge(vmap[&e.u], vmap[&e.v]).expect("no loops");
        emap.insert(e.id, id);
    }
    (h, vmap, emap)
}

/// Every proper vertex subset of odd size at most `max`.
pub fn odd_shores(g: &MultiGraph, max: usize) -> Vec<Vec<VertexId>> {
    let vs = g.vertices();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(vs: &[VertexId], start: usize, max: usize, cur: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        if cur.len() % 2 == 1 && cur.len() < vs.len() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..vs.len() {
            cur.push(vs[i]);
            go(vs, i + 1, max, cur, out);
            cur.pop();
        }
    }
    go(vs, 0, max, &mut cur, &mut out);
    out
}

/// Both ends of `e` lie in one colour class of `h`, both ends of `f` in
/// the other, and `h` is connected and bipartite.
pub fn bipartite_complement_witness(g: &MultiGraph, e: EdgeId, f: EdgeId) -> bool {
    let h = g.remove_edges(&[e, f]);
    if !h.is_connected() {
        return false;
    }
    let Some(bip) = h.is_bipartite() else {
        return false;
    };
    let ee = g.edge(e).expect("edge");
    let ff = g.edge(f).expect("edge");
    let se = (bip.side_of(ee.u), bip.side_of(ee.v));
    let sf = (bip.side_of(ff.u), bip.side_of(ff.v));
    se.0 == se.1 && sf.0 == sf.1 && se.0 != sf.0
}

pub fn cut_of(g: &MultiGraph, shore: &[VertexId]) -> Cut {
    Cut::new(g, shore).expect("valid shore")
}
