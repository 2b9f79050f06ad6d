//! Barriers, the canonical partition, bicriticality, even 2-cuts and
//! vertex connectivity.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Cut, EdgeId, MultiGraph, VertexId};
use crate::matching::{is_matching_covered, PmOracle};

pub fn is_barrier(g: &MultiGraph, barrier: &[VertexId]) -> bool {
    let set: BTreeSet<VertexId> = barrier.iter().copied().collect();
    g.odd_components_count(barrier) == set.len()
}

/// Kotzig's partition of the vertices into maximal barriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalPartition {
    pub parts: Vec<Vec<VertexId>>,
}

impl CanonicalPartition {
    pub fn part_of(&self, v: VertexId) -> Option<&[VertexId]> {
        self.parts
            .iter()
            .find(|p| p.binary_search(&v).is_ok())
            .map(Vec::as_slice)
    }

    pub fn nontrivial_parts(&self) -> impl Iterator<Item = &Vec<VertexId>> {
        self.parts.iter().filter(|p| p.len() > 1)
    }
}

/// Classes of `u ~ v  iff  u = v or g - u - v has no perfect matching`.
/// Every class is re-checked to be a barrier before returning.
pub fn canonical_partition(g: &MultiGraph) -> Result<CanonicalPartition> {
    if !is_matching_covered(g) {
        return Err(Error::domain("canonical partition needs a matching covered graph"));
    }
    let oracle = PmOracle::new(g);
    let vs = g.vertices();
    let mut assigned = vec![false; vs.len()];
    let mut parts = Vec::new();
    for i in 0..vs.len() {
        if assigned[i] {
            continue;
        }
        assigned[i] = true;
        let mut part = vec![vs[i]];
        for j in (i + 1)..vs.len() {
            if !assigned[j] && !oracle.matchable_without(&[vs[i], vs[j]]) {
                assigned[j] = true;
                part.push(vs[j]);
            }
        }
        parts.push(part);
    }
    for part in &parts {
        if !is_barrier(g, part) {
            return Err(Error::internal(format!(
                "canonical partition class {part:?} is not a barrier"
            )));
        }
    }
    Ok(CanonicalPartition { parts })
}

pub fn is_bicritical(g: &MultiGraph) -> bool {
    if g.vertex_count() % 2 == 1 {
        return false;
    }
    let oracle = PmOracle::new(g);
    let vs = g.vertices();
    (0..vs.len()).all(|i| ((i + 1)..vs.len()).all(|j| oracle.matchable_without(&[vs[i], vs[j]])))
}

/// An even 2-cut `{e, f}` with its shore.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenTwoCut {
    pub edges: [EdgeId; 2],
    pub cut: Cut,
}

/// All pairs of nonadjacent edges forming a cut with two even shores.
/// The shore stored is the side holding the lower minimum vertex id.
pub fn even_2cuts(g: &MultiGraph) -> Vec<EvenTwoCut> {
    let edges = g.edges();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (e, f) = (edges[i], edges[j]);
            if e.shares_end(&f) {
                continue;
            }
            let h = g.remove_edges(&[e.id, f.id]);
            let comps = h.components();
            if comps.len() != 2 || comps.iter().any(|c| c.len() % 2 == 1) {
                continue;
            }
            let shore = comps[0].clone();
            if g.boundary(&shore) != vec![e.id, f.id] {
                continue;
            }
            out.push(EvenTwoCut {
                edges: [e.id, f.id],
                cut: Cut::from_sorted(shore),
            });
        }
    }
    out
}

/// Vertex connectivity of the underlying simple graph. A disconnected
/// graph has 0; a complete graph on `n` vertices has `n - 1`.
pub fn vertex_connectivity(g: &MultiGraph) -> usize {
    let n = g.vertex_count();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        let a = g.vertex_index(e.u).expect("endpoint");
        let b = g.vertex_index(e.v).expect("endpoint");
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut best = n - 1;
    for s in 0..n {
        for t in (s + 1)..n {
            if !adj[s][t] {
                best = best.min(local_connectivity(&adj, s, t, best));
            }
        }
    }
    best
}

/// Number of internally disjoint s-t paths (s, t nonadjacent), capped at
/// `cap`. Max flow on the split digraph: vertex `v` becomes `v_in -> v_out`.
fn local_connectivity(adj: &[Vec<bool>], s: usize, t: usize, cap: usize) -> usize {
    let n = adj.len();
    let node_in = |v: usize| 2 * v;
    let node_out = |v: usize| 2 * v + 1;
    let mut arcs: Vec<(usize, usize, i32)> = Vec::new();
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut push = |arcs: &mut Vec<(usize, usize, i32)>, a: usize, b: usize, c: i32| {
        out_arcs[a].push(arcs.len());
        arcs.push((a, b, c));
        out_arcs[b].push(arcs.len());
        arcs.push((b, a, 0));
    };
    for v in 0..n {
        let c = if v == s || v == t { n as i32 } else { 1 };
        push(&mut arcs, node_in(v), node_out(v), c);
    }
    for u in 0..n {
        for v in 0..n {
            if adj[u][v] {
                push(&mut arcs, node_out(u), node_in(v), 1);
            }
        }
    }
    let (source, sink) = (node_out(s), node_in(t));
    let mut flow = 0;
    while flow < cap {
        let mut prev = vec![usize::MAX; 2 * n];
        let mut seen = vec![false; 2 * n];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &a in &out_arcs[x] {
                let (_, y, c) = arcs[a];
                if c > 0 && !seen[y] {
                    seen[y] = true;
                    prev[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !seen[sink] {
            break;
        }
        let mut y = sink;
        while y != source {
            let a = prev[y];
            arcs[a].2 -= 1;
            arcs[a ^ 1].2 += 1;
            y = arcs[a].0;
        }
        flow += 1;
    }
    flow
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named_graph, NamedGraph};

    fn ids(xs: &[u32]) -> Vec<VertexId> {
        xs.iter().map(|&x| VertexId(x)).collect()
    }

    #[test]
    fn barriers_of_c6_and_k4() {
        let c6 = named_graph(&NamedGraph::EvenCycle(3)).unwrap();
        assert!(is_barrier(&c6, &ids(&[0, 2, 4])));
        let k4 = named_graph(&NamedGraph::K4).unwrap();
        assert!(is_barrier(&k4, &ids(&[1])));
        assert!(!is_barrier(&k4, &ids(&[0, 1])));
    }

    #[test]
    fn canonical_partitions() {
        let c6 = named_graph(&NamedGraph::EvenCycle(3)).unwrap();
        assert_eq!(
            canonical_partition(&c6).unwrap().parts,
            vec![ids(&[0, 2, 4]), ids(&[1, 3, 5])]
        );
        let k4 = named_graph(&NamedGraph::K4).unwrap();
        assert_eq!(canonical_partition(&k4).unwrap().parts.len(), 4);
        let k33 = named_graph(&NamedGraph::CompleteBipartite(3, 3)).unwrap();
        assert_eq!(
            canonical_partition(&k33).unwrap().parts,
            vec![ids(&[0, 1, 2]), ids(&[3, 4, 5])]
        );
        let p4 = named_graph(&NamedGraph::Path(4)).unwrap();
        assert!(matches!(canonical_partition(&p4), Err(Error::Domain(_))));
    }

    #[test]
    fn bicriticality() {
        assert!(is_bicritical(&named_graph(&NamedGraph::K4).unwrap()));
        assert!(!is_bicritical(&named_graph(&NamedGraph::EvenCycle(3)).unwrap()));
        assert!(is_bicritical(&named_graph(&NamedGraph::C6Bar).unwrap()));
    }

    #[test]
    fn even_two_cuts_of_small_graphs() {
        let c4 = named_graph(&NamedGraph::EvenCycle(2)).unwrap();
        let cuts = even_2cuts(&c4);
        assert_eq!(cuts.len(), 2);
        assert_eq!(cuts[0].edges, [EdgeId(0), EdgeId(2)]);
        assert_eq!(cuts[1].edges, [EdgeId(1), EdgeId(3)]);
        // shore holds vertex 0
        assert!(cuts.iter().all(|c| c.cut.contains(VertexId(0))));
        assert!(even_2cuts(&named_graph(&NamedGraph::C6Bar).unwrap()).is_empty());
    }

    #[test]
    fn even_two_cuts_of_c6_match_brute_force() {
        // Independent count: every pair of edges whose removal leaves two
        // paths of even order. On C6 those are the pairs at distance two.
        let c6 = named_graph(&NamedGraph::EvenCycle(3)).unwrap();
        let mut brute = 0;
        for i in 0..6u32 {
            for j in (i + 1)..6u32 {
                let gap = j - i;
                // arcs between the two removed edges have gap and 6 - gap vertices
                if gap != 1 && gap != 5 && gap % 2 == 0 {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 6);
        assert_eq!(even_2cuts(&c6).len(), brute);
    }

    #[test]
    fn connectivity_values() {
        assert_eq!(vertex_connectivity(&named_graph(&NamedGraph::K4).unwrap()), 3);
        assert_eq!(vertex_connectivity(&named_graph(&NamedGraph::EvenCycle(3)).unwrap()), 2);
        assert_eq!(
            vertex_connectivity(&named_graph(&NamedGraph::CompleteBipartite(4, 4)).unwrap()),
            4
        );
        assert_eq!(vertex_connectivity(&named_graph(&NamedGraph::K2).unwrap()), 1);
        assert_eq!(vertex_connectivity(&named_graph(&NamedGraph::Petersen).unwrap()), 3);
        assert_eq!(vertex_connectivity(&MultiGraph::with_vertices(3)), 0);
        let doubled = MultiGraph::from_edges(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(vertex_connectivity(&doubled), 1);
    }
}
