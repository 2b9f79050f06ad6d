//! Tight and separating cuts, their discovery, and the decompositions
//! built from them.

mod decompose;
mod scan;

pub use decompose::{
    classify, is_solid_brick, separating_cut_decomposition, tight_cut_decomposition,
    verify_bounds, BoundsReport, Classification, CutChooser, CutKind, DecompositionMode,
    DecompositionNode, DecompositionResult, FirstFound, Leaf, LeafKind, ListOrder, SeededChoice,
    Split,
};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Cut, EdgeId, MultiGraph, VertexId};
use crate::matching::{is_matching_covered, maximum_matching, Matching, PmOracle};
use crate::structure::{canonical_partition, is_bicritical, vertex_connectivity};

use scan::Scanner;

/// Largest order at which cuts are searched exhaustively.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 24;

/// Triples of pairwise vertex-disjoint edges among `cut`.
fn disjoint_triples(g: &MultiGraph, cut: &[EdgeId]) -> Vec<[EdgeId; 3]> {
    let ends: Vec<(VertexId, VertexId)> = cut.iter().map(|&e| g.edge(e).expect("cut edge").key()).collect();
    let apart = |i: usize, j: usize| {
        let (a, b) = ends[i];
        let (c, d) = ends[j];
        a != c && a != d && b != c && b != d
    };
    let mut out = Vec::new();
    for i in 0..cut.len() {
        for j in (i + 1)..cut.len() {
            if !apart(i, j) {
                continue;
            }
            for k in (j + 1)..cut.len() {
                if apart(i, k) && apart(j, k) {
                    out.push([cut[i], cut[j], cut[k]]);
                }
            }
        }
    }
    out
}

/// A perfect matching meeting the odd cut `c` in three or more edges.
pub fn tight_cut_violation(g: &MultiGraph, c: &Cut) -> Option<Matching> {
    let oracle = PmOracle::new(g);
    violation_with(&oracle, c)
}

fn violation_with(oracle: &PmOracle<'_>, c: &Cut) -> Option<Matching> {
    let g = oracle.graph();
    disjoint_triples(g, &c.edges(g))
        .into_iter()
        .find_map(|t| oracle.perfect_matching(&t, &[]))
}

/// Every perfect matching meets `c` in exactly one edge. Even cuts are
/// never tight; trivial cuts always are.
pub fn is_tight_cut(g: &MultiGraph, c: &Cut) -> bool {
    if !c.is_odd() {
        return false;
    }
    if c.is_trivial(g) {
        return true;
    }
    tight_cut_violation(g, c).is_none()
}

/// Both cut-contractions are matching covered.
pub fn is_separating_cut(g: &MultiGraph, c: &Cut) -> bool {
    if !c.is_odd() {
        return false;
    }
    match c.contractions(g) {
        Ok((a, b)) => is_matching_covered(&a.graph) && is_matching_covered(&b.graph),
        Err(_) => false,
    }
}

/// Separation decided edge by edge: every edge lies in a perfect matching
/// meeting `c` exactly once.
pub fn is_separating_by_witness(g: &MultiGraph, c: &Cut) -> bool {
    if !c.is_odd() {
        return false;
    }
    let oracle = PmOracle::new(g);
    let cut = c.edges(g);
    g.edges()
        .iter()
        .all(|e| once_through(&oracle, e.id, &cut).is_some())
}

/// A perfect matching containing `e` and exactly one edge of `cut`.
fn once_through(oracle: &PmOracle<'_>, e: EdgeId, cut: &[EdgeId]) -> Option<Matching> {
    let g = oracle.graph();
    let without = |h: EdgeId| -> Vec<EdgeId> { cut.iter().copied().filter(|&x| x != h).collect() };
    if cut.contains(&e) {
        return oracle.perfect_matching(&[e], &without(e));
    }
    let edge = g.edge(e).expect("edge of g");
    cut.iter()
        .filter(|&&h| !edge.shares_end(g.edge(h).expect("cut edge")))
        .find_map(|&h| oracle.perfect_matching(&[e, h], &without(h)))
}

fn push_unique(g: &MultiGraph, out: &mut Vec<Cut>, seen: &mut BTreeSet<Cut>, cut: Cut) {
    if cut.is_trivial(g) {
        return;
    }
    if seen.insert(cut.normalized(g)) {
        out.push(cut);
    }
}

/// Nontrivial cuts `∂(V(K))` for each nontrivial maximal barrier `B` and
/// each component `K` of `g - B`. The shore stored is `V(K)`.
pub fn barrier_cuts(g: &MultiGraph) -> Result<Vec<Cut>> {
    let part = canonical_partition(g)?;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for b in part.nontrivial_parts() {
        for k in g.components_without(b) {
            push_unique(g, &mut out, &mut seen, Cut::from_sorted(k));
        }
    }
    Ok(out)
}

/// Candidate cuts from 2-vertex separations `{u, v}`: for each component
/// `K` of `g - u - v`, the shore `K` when odd, else `K + u` and `K + v`.
/// Unverified.
pub fn two_separation_cuts(g: &MultiGraph) -> Vec<Cut> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    if g.vertex_count() < 6 {
        return out;
    }
    let vs = g.vertices();
    for i in 0..vs.len() {
        for j in (i + 1)..vs.len() {
            let (u, v) = (vs[i], vs[j]);
            let comps = g.components_without(&[u, v]);
            if comps.len() < 2 {
                continue;
            }
            for k in comps {
                if k.len() % 2 == 1 {
                    push_unique(g, &mut out, &mut seen, Cut::from_sorted(k));
                } else {
                    for w in [u, v] {
                        let mut shore = k.clone();
                        shore.push(w);
                        shore.sort();
                        push_unique(g, &mut out, &mut seen, Cut::from_sorted(shore));
                    }
                }
            }
        }
    }
    out
}

/// For a bipartite graph with colour classes `A`, `B`: whenever
/// `g - a1 - a2 - b1 - b2` has no perfect matching, a Hall violator
/// `S ⊆ A` yields the shore `S ∪ N(S)`. Unverified.
pub fn hall_cuts(g: &MultiGraph) -> Vec<Cut> {
    hall_cuts_inner(g, false)
}

fn hall_cuts_inner(g: &MultiGraph, first_only: bool) -> Vec<Cut> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let Some(bp) = g.is_bipartite() else {
        return out;
    };
    if g.vertex_count() < 6 || bp.a.len() != bp.b.len() {
        return out;
    }
    let oracle = PmOracle::new(g);
    let (a, b) = (&bp.a, &bp.b);
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            for k in 0..b.len() {
                for l in (k + 1)..b.len() {
                    let removed = [a[i], a[j], b[k], b[l]];
                    if oracle.matchable_without(&removed) {
                        continue;
                    }
                    let h = g.remove_vertices(&removed);
                    let s = hall_violator(&h, a);
                    let mut shore: BTreeSet<VertexId> = s.iter().copied().collect();
                    for &x in &s {
                        shore.extend(g.neighbors(x));
                    }
                    let shore: Vec<VertexId> = shore.into_iter().collect();
                    if shore.len() % 2 == 1 {
                        push_unique(g, &mut out, &mut seen, Cut::from_sorted(shore));
                        if first_only && !out.is_empty() {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Vertices of `side` reachable by alternating paths from the vertices of
/// `side` left exposed by a maximum matching of `h`.
fn hall_violator(h: &MultiGraph, side: &[VertexId]) -> Vec<VertexId> {
    let m = maximum_matching(h);
    let side: BTreeSet<VertexId> = side.iter().copied().filter(|v| h.has_vertex(*v)).collect();
    let mut mate = std::collections::BTreeMap::new();
    for &e in m.edges() {
        let edge = h.edge(e).expect("matching edge");
        mate.insert(edge.u, edge.v);
        mate.insert(edge.v, edge.u);
    }
    let mut reached: BTreeSet<VertexId> = side.iter().copied().filter(|v| !mate.contains_key(v)).collect();
    let mut queue: Vec<VertexId> = reached.iter().copied().collect();
    while let Some(x) = queue.pop() {
        for y in h.neighbors(x) {
            if let Some(&z) = mate.get(&y) {
                if reached.insert(z) {
                    queue.push(z);
                }
            }
        }
    }
    reached.into_iter().collect()
}

/// Nonbipartite, bicritical and 3-connected: a brick without any search.
pub fn brick_certificate(g: &MultiGraph) -> bool {
    g.vertex_count() >= 4
        && g.is_bipartite().is_none()
        && is_bicritical(g)
        && vertex_connectivity(g) >= 3
}

/// Bipartite, and for every `a1, a2 ∈ A`, `b1, b2 ∈ B` the graph
/// `g - a1 - a2 - b1 - b2` has a perfect matching (vacuous below order 6).
pub fn brace_certificate(g: &MultiGraph) -> bool {
    if g.is_bipartite().is_none() {
        return false;
    }
    g.vertex_count() < 6 || hall_cuts_inner(g, true).is_empty()
}

pub fn find_nontrivial_tight_cut(g: &MultiGraph) -> Result<Option<Cut>> {
    find_nontrivial_tight_cut_with_limit(g, DEFAULT_EXHAUSTIVE_LIMIT)
}

/// Barrier cuts first, then 2-separation cuts, then Hall cuts of
/// bipartite graphs, then an exhaustive scan up to `limit` vertices.
/// Every cut returned is verified tight. Above the limit, `None` is only
/// returned when a brick or brace certificate holds.
pub fn find_nontrivial_tight_cut_with_limit(g: &MultiGraph, limit: usize) -> Result<Option<Cut>> {
    if !is_matching_covered(g) {
        return Err(Error::domain("tight cut search needs a matching covered graph"));
    }
    if g.vertex_count() < 6 {
        return Ok(None);
    }
    let oracle = PmOracle::new(g);
    let tight = |c: &Cut| violation_with(&oracle, c).is_none();
    if let Some(c) = barrier_cuts(g)?.into_iter().find(|c| tight(c)) {
        return Ok(Some(c));
    }
    if let Some(c) = two_separation_cuts(g).into_iter().find(|c| tight(c)) {
        return Ok(Some(c));
    }
    if let Some(c) = hall_cuts_inner(g, false).into_iter().find(|c| tight(c)) {
        return Ok(Some(c));
    }
    let certified = brick_certificate(g) || brace_certificate(g);
    if g.vertex_count() <= limit.min(scan::MAX_ORDER) {
        let found = Scanner::new(g).first_tight_cut();
        if found.is_some() == certified {
            return Err(Error::internal(format!(
                "certificate ({certified}) disagrees with exhaustive tight cut search ({found:?})"
            )));
        }
        return Ok(found);
    }
    if certified {
        Ok(None)
    } else {
        Err(Error::capability(format!(
            "tightness undecided: {} vertices exceed the exhaustive limit {limit}",
            g.vertex_count()
        )))
    }
}

/// Every nontrivial tight cut, normalized, ordered by shore size then
/// lexicographically. Exhaustive up to the limit; above it, the verified
/// heuristic candidates only.
pub fn nontrivial_tight_cuts(g: &MultiGraph) -> Result<Vec<Cut>> {
    if !is_matching_covered(g) {
        return Err(Error::domain("tight cut search needs a matching covered graph"));
    }
    if g.vertex_count() < 6 {
        return Ok(Vec::new());
    }
    if g.vertex_count() <= DEFAULT_EXHAUSTIVE_LIMIT {
        return Ok(Scanner::new(g).all_tight_cuts());
    }
    let oracle = PmOracle::new(g);
    let mut cuts: BTreeSet<Cut> = BTreeSet::new();
    let candidates = barrier_cuts(g)?
        .into_iter()
        .chain(two_separation_cuts(g))
        .chain(hall_cuts(g));
    for c in candidates {
        if violation_with(&oracle, &c).is_none() {
            cuts.insert(c.normalized(g));
        }
    }
    let mut cuts: Vec<Cut> = cuts.into_iter().collect();
    cuts.sort_by_key(|c| (c.shore().len(), c.shore().to_vec()));
    if cuts.is_empty() && !(brick_certificate(g) || brace_certificate(g)) {
        return Err(Error::capability("tightness undecided beyond the exhaustive limit"));
    }
    Ok(cuts)
}

fn require_exhaustive(g: &MultiGraph) -> Result<()> {
    if !is_matching_covered(g) {
        return Err(Error::domain("separating cut search needs a matching covered graph"));
    }
    if g.vertex_count() > DEFAULT_EXHAUSTIVE_LIMIT {
        return Err(Error::capability(format!(
            "separating cut search limited to {DEFAULT_EXHAUSTIVE_LIMIT} vertices, graph has {}",
            g.vertex_count()
        )));
    }
    Ok(())
}

pub fn find_nontrivial_separating_cut(g: &MultiGraph) -> Result<Option<Cut>> {
    require_exhaustive(g)?;
    Ok(Scanner::new(g).first_separating_cut())
}

/// Every nontrivial separating cut, normalized, by size then lexicographically.
pub fn nontrivial_separating_cuts(g: &MultiGraph) -> Result<Vec<Cut>> {
    require_exhaustive(g)?;
    Ok(Scanner::new(g).all_separating_cuts())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{depicted_cut_shore, named_graph, NamedGraph};

    fn fig_cut(id: NamedGraph) -> (MultiGraph, Cut) {
        let g = named_graph(&id).unwrap();
        let c = Cut::new(&g, &depicted_cut_shore(&id).unwrap()).unwrap();
        (g, c)
    }

    #[test]
    fn figure_cuts() {
        let (g, c) = fig_cut(NamedGraph::K4K33);
        assert!(is_tight_cut(&g, &c));
        assert!(is_separating_cut(&g, &c));
        let (g, c) = fig_cut(NamedGraph::C6Bar);
        assert!(!is_tight_cut(&g, &c));
        assert!(is_separating_cut(&g, &c));
        assert!(is_separating_by_witness(&g, &c));
        let w = tight_cut_violation(&g, &c).unwrap();
        assert_eq!(w.edges().iter().filter(|e| c.edges(&g).contains(e)).count(), 3);
        let (g, c) = fig_cut(NamedGraph::PrismK4);
        assert!(!is_tight_cut(&g, &c));
        assert!(is_separating_cut(&g, &c));
    }

    #[test]
    fn trivial_and_even_cuts() {
        let g = named_graph(&NamedGraph::Petersen).unwrap();
        let c = Cut::new(&g, &[VertexId(3)]).unwrap();
        assert!(is_tight_cut(&g, &c));
        let even = Cut::new(&g, &[VertexId(0), VertexId(1)]).unwrap();
        assert!(!is_tight_cut(&g, &even));
        assert!(!is_separating_cut(&g, &even));
    }

    #[test]
    fn barrier_cut_lists() {
        assert!(barrier_cuts(&named_graph(&NamedGraph::K4).unwrap()).unwrap().is_empty());
        assert!(barrier_cuts(&named_graph(&NamedGraph::EvenCycle(3)).unwrap()).unwrap().is_empty());
        let (g, c) = fig_cut(NamedGraph::K4K33);
        let cuts = barrier_cuts(&g).unwrap();
        assert!(cuts.iter().any(|x| x.normalized(&g) == c.normalized(&g)));
    }

    #[test]
    fn tight_cut_search() {
        assert_eq!(find_nontrivial_tight_cut(&named_graph(&NamedGraph::C6Bar).unwrap()).unwrap(), None);
        assert_eq!(find_nontrivial_tight_cut(&named_graph(&NamedGraph::Petersen).unwrap()).unwrap(), None);
        let (g, _) = fig_cut(NamedGraph::K4K33);
        let c = find_nontrivial_tight_cut(&g).unwrap().unwrap();
        assert!(is_tight_cut(&g, &c) && !c.is_trivial(&g));
        let c8 = named_graph(&NamedGraph::EvenCycle(4)).unwrap();
        assert!(find_nontrivial_tight_cut(&c8).unwrap().is_some());
        let k33 = named_graph(&NamedGraph::CompleteBipartite(3, 3)).unwrap();
        assert_eq!(find_nontrivial_tight_cut(&k33).unwrap(), None);
        let p4 = named_graph(&NamedGraph::Path(4)).unwrap();
        assert!(matches!(find_nontrivial_tight_cut(&p4), Err(Error::Domain(_))));
    }

    #[test]
    fn exhaustive_lists_agree_with_predicates() {
        for id in [NamedGraph::EvenCycle(4), NamedGraph::K4K33, NamedGraph::C6Bar, NamedGraph::Prism(4)] {
            let g = named_graph(&id).unwrap();
            let tight = nontrivial_tight_cuts(&g).unwrap();
            let sep = nontrivial_separating_cuts(&g).unwrap();
            for c in &tight {
                assert!(is_tight_cut(&g, c), "{id}");
                assert!(sep.contains(c), "{id}: tight cut is separating");
            }
            for c in &sep {
                assert!(is_separating_cut(&g, c), "{id}");
                assert_eq!(tight.contains(c), is_tight_cut(&g, c), "{id}");
            }
        }
    }

    #[test]
    fn certificates() {
        assert!(brick_certificate(&named_graph(&NamedGraph::K4).unwrap()));
        assert!(brick_certificate(&named_graph(&NamedGraph::Wheel(5)).unwrap()));
        assert!(!brick_certificate(&named_graph(&NamedGraph::K4K33).unwrap()));
        assert!(brace_certificate(&named_graph(&NamedGraph::CompleteBipartite(3, 3)).unwrap()));
        assert!(brace_certificate(&named_graph(&NamedGraph::EvenCycle(2)).unwrap()));
        assert!(!brace_certificate(&named_graph(&NamedGraph::EvenCycle(3)).unwrap()));
    }
}
