//! Splicing two graphs at a pair of vertices, and how equivalence classes
//! behave across the resulting cut.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::canon::{canonical_form, CanonicalForm};
use crate::cuts::{is_separating_cut, is_tight_cut};
use crate::dependence::equivalence_partition;
use crate::error::{Error, Result};
use crate::graph::{Cut, Edge, EdgeId, MultiGraph, VertexId};
use crate::matching::PmOracle;

/// Largest degree at which every bijection is tried.
pub const VARIANT_DEGREE_LIMIT: usize = 8;

/// Splice `g1` at `v1` with `g2` at `v2`; `pi` pairs each edge of `∂(v1)`
/// with its image in `∂(v2)`.
#[derive(Debug, Clone)]
pub struct SpliceSpec<'a> {
    pub g1: &'a MultiGraph,
    pub v1: VertexId,
    pub g2: &'a MultiGraph,
    pub v2: VertexId,
    pub pi: Vec<(EdgeId, EdgeId)>,
}

impl<'a> SpliceSpec<'a> {
    /// Pairs `∂(v1)` with `∂(v2)` in id order.
    pub fn in_order(g1: &'a MultiGraph, v1: VertexId, g2: &'a MultiGraph, v2: VertexId) -> SpliceSpec<'a> {
        let d1 = incident_ids(g1, v1);
        let d2 = incident_ids(g2, v2);
        SpliceSpec {
            g1,
            v1,
            g2,
            v2,
            pi: d1.into_iter().zip(d2).collect(),
        }
    }
}

fn incident_ids(g: &MultiGraph, v: VertexId) -> Vec<EdgeId> {
    g.incident_edges(v).map(|e| e.id).collect()
}

/// Where a cut edge of the splice came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CutEdgeOrigin {
    pub edge: EdgeId,
    pub from_g1: EdgeId,
    pub from_g2: EdgeId,
}

#[derive(Debug, Clone)]
pub struct Splice {
    pub graph: MultiGraph,
    /// `∂(V(g1) - v1)`; its shore keeps the ids of `g1`.
    pub cut: Cut,
    pub origins: Vec<CutEdgeOrigin>,
    /// Ids of the surviving vertices of `g2` in the splice.
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    /// Ids of the edges of `g2 - v2` in the splice.
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
}

/// `g1` keeps its ids, cut edges take the id of their `g1` edge, and
/// `g2` is shifted past `g1`'s id counters.
pub fn splice(spec: &SpliceSpec<'_>) -> Result<Splice> {
    let SpliceSpec { g1, v1, g2, v2, .. } = *spec;
    if !g1.has_vertex(v1) || !g2.has_vertex(v2) {
        return Err(Error::domain("splice vertex is not in its graph"));
    }
    let d1: BTreeSet<EdgeId> = incident_ids(g1, v1).into_iter().collect();
    let d2: BTreeSet<EdgeId> = incident_ids(g2, v2).into_iter().collect();
    if d1.len() != d2.len() {
        return Err(Error::domain(format!(
            "degree mismatch: {} has degree {}, {} has degree {}",
            v1,
            d1.len(),
            v2,
            d2.len()
        )));
    }
    let dom: BTreeSet<EdgeId> = spec.pi.iter().map(|p| p.0).collect();
    let img: BTreeSet<EdgeId> = spec.pi.iter().map(|p| p.1).collect();
    if spec.pi.len() != d1.len() || dom != d1 || img != d2 {
        return Err(Error::domain("pi is not a bijection between the two vertex cuts"));
    }
    let vshift = g1.next_vertex_id().0;
    let eshift = g1.next_edge_id().0;
    let (vl1, el1) = g1.labels();
    let (vl2, el2) = g2.labels();

    let mut vertices: Vec<VertexId> = g1.vertices().iter().copied().filter(|&v| v != v1).collect();
    let mut vertex_labels: BTreeMap<VertexId, String> =
        vl1.iter().filter(|(v, _)| **v != v1).map(|(v, l)| (*v, l.clone())).collect();
    let mut vertex_map = BTreeMap::new();
    for &w in g2.vertices() {
        if w == v2 {
            continue;
        }
        let nw = VertexId(w.0 + vshift);
        vertex_map.insert(w, nw);
        vertices.push(nw);
        if let Some(l) = vl2.get(&w) {
            vertex_labels.insert(nw, l.clone());
        }
    }

    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_labels: BTreeMap<EdgeId, String> = BTreeMap::new();
    for e in g1.edges() {
        if !d1.contains(&e.id) {
            edges.push(*e);
            if let Some(l) = el1.get(&e.id) {
                edge_labels.insert(e.id, l.clone());
            }
        }
    }
    let mut edge_map = BTreeMap::new();
    for e in g2.edges() {
        if d2.contains(&e.id) {
            continue;
        }
        let ne = EdgeId(e.id.0 + eshift);
        edge_map.insert(e.id, ne);
        edges.push(Edge {
            id: ne,
            u: vertex_map[&e.u],
            v: vertex_map[&e.v],
        });
        if let Some(l) = el2.get(&e.id) {
            edge_labels.insert(ne, l.clone());
        }
    }
    let mut origins = Vec::with_capacity(spec.pi.len());
    for &(a, b) in &spec.pi {
        let ea = g1.edge(a).expect("edge of g1");
        let eb = g2.edge(b).expect("edge of g2");
        edges.push(Edge {
            id: a,
            u: ea.other(v1),
            v: vertex_map[&eb.other(v2)],
        });
        if let Some(l) = el1.get(&a) {
            edge_labels.insert(a, l.clone());
        }
        origins.push(CutEdgeOrigin {
            edge: a,
            from_g1: a,
            from_g2: b,
        });
    }
    origins.sort_by_key(|o| o.edge);
    let shore: Vec<VertexId> = g1.vertices().iter().copied().filter(|&v| v != v1).collect();
    let graph = MultiGraph::from_parts(
        vertices,
        edges,
        vertex_labels,
        edge_labels,
        vshift + g2.next_vertex_id().0,
        eshift + g2.next_edge_id().0,
    );
    let cut = Cut::new(&graph, &shore)?;
    Ok(Splice {
        graph,
        cut,
        origins,
        vertex_map,
        edge_map,
    })
}

/// Canonical forms of the splices over every bijection `∂(v1) -> ∂(v2)`.
pub fn splice_variants(
    g1: &MultiGraph,
    v1: VertexId,
    g2: &MultiGraph,
    v2: VertexId,
) -> Result<BTreeSet<CanonicalForm>> {
    Ok(splice_variant_graphs(g1, v1, g2, v2)?.into_keys().collect())
}

/// One splice per canonical form, from the first bijection in Heap order
/// that produces it.
pub fn splice_variant_graphs(
    g1: &MultiGraph,
    v1: VertexId,
    g2: &MultiGraph,
    v2: VertexId,
) -> Result<BTreeMap<CanonicalForm, Splice>> {
    let d1 = incident_ids(g1, v1);
    let d2 = incident_ids(g2, v2);
    if d1.len() != d2.len() {
        return Err(Error::domain("degree mismatch"));
    }
    if d1.len() > VARIANT_DEGREE_LIMIT {
        return Err(Error::capability(format!(
            "variant enumeration limited to degree {VARIANT_DEGREE_LIMIT}"
        )));
    }
    let mut out = BTreeMap::new();
    for perm in permutations(d1.len()) {
        let pi = d1.iter().zip(&perm).map(|(&a, &j)| (a, d2[j])).collect();
        let s = splice(&SpliceSpec { g1, v1, g2, v2, pi })?;
        out.entry(canonical_form(&s.graph)?).or_insert(s);
    }
    Ok(out)
}

/// All permutations of `0..n` (Heap's algorithm).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Contraction side of a cut: `One` keeps the shore, `Two` keeps the
/// complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Side {
    One,
    Two,
}

fn side_graph(g: &MultiGraph, c: &Cut, side: Side) -> Result<MultiGraph> {
    Ok(match side {
        Side::One => c.shore_side(g)?.graph,
        Side::Two => c.far_side(g)?.graph,
    })
}

/// The cut edges `e` for which `F ∪ {e}` extends to a perfect matching of
/// one contraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossSupport {
    pub side: Side,
    pub edges: Vec<EdgeId>,
    pub support: Vec<EdgeId>,
}

pub fn cross_support(g: &MultiGraph, c: &Cut, side: Side, f: &[EdgeId]) -> Result<CrossSupport> {
    if !is_separating_cut(g, c) {
        return Err(Error::domain("cross support needs a separating cut"));
    }
    let h = side_graph(g, c, side)?;
    support_in(&h, &c.edges(g), side, f)
}

fn support_in(h: &MultiGraph, cut: &[EdgeId], side: Side, f: &[EdgeId]) -> Result<CrossSupport> {
    if let Some(e) = f.iter().find(|e| cut.contains(e)) {
        return Err(Error::domain(format!("edge {e} lies in the cut")));
    }
    if let Some(e) = f.iter().find(|e| !h.has_edge(**e)) {
        return Err(Error::domain(format!("edge {e} is not in the chosen contraction")));
    }
    let oracle = PmOracle::new(h);
    let support = cut
        .iter()
        .copied()
        .filter(|&e| {
            let mut forced = f.to_vec();
            forced.push(e);
            oracle.extends(&forced)
        })
        .collect();
    Ok(CrossSupport {
        side,
        edges: f.to_vec(),
        support,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MergeVerdict {
    pub merged: bool,
    pub support1: Vec<EdgeId>,
    pub support2: Vec<EdgeId>,
    pub supports_equal: bool,
    pub support_at_least_two: bool,
    pub inadmissible_on_both_sides: bool,
}

/// Whether `F1 ∪ F2` is an equivalence class of `g`, where `F1` and `F2`
/// are classes of the two contractions of the tight cut `c` avoiding it.
/// Decided from the cross supports alone; debug builds also compare with
/// the partition of `g`.
pub fn check_merge(g: &MultiGraph, c: &Cut, f1: &[EdgeId], f2: &[EdgeId]) -> Result<MergeVerdict> {
    if !is_tight_cut(g, c) || c.is_trivial(g) {
        return Err(Error::domain("merge questions need a nontrivial tight cut"));
    }
    let cut = c.edges(g);
    let h1 = side_graph(g, c, Side::One)?;
    let h2 = side_graph(g, c, Side::Two)?;
    let s1 = support_in(&h1, &cut, Side::One, f1)?;
    let s2 = support_in(&h2, &cut, Side::Two, f2)?;
    let dead = |h: &MultiGraph, f: &[EdgeId], support: &[EdgeId]| {
        let o = PmOracle::new(h);
        support.iter().all(|&e| !o.extends_avoiding(&[e], f))
    };
    let supports_equal = s1.support == s2.support;
    let support_at_least_two = s1.support.len() >= 2;
    let inadmissible_on_both_sides = dead(&h1, f1, &s1.support) && dead(&h2, f2, &s2.support);
    let merged = supports_equal && support_at_least_two && inadmissible_on_both_sides;
    #[cfg(debug_assertions)]
    {
        let mut union: Vec<EdgeId> = f1.iter().chain(f2).copied().collect();
        union.sort();
        let direct = equivalence_partition(g)?.class_of(union[0]) == Some(union.as_slice());
        if direct != merged {
            return Err(Error::internal(format!(
                "merge predicate ({merged}) disagrees with the partition of g ({direct})"
            )));
        }
    }
    Ok(MergeVerdict {
        merged,
        support1: s1.support,
        support2: s2.support,
        supports_equal,
        support_at_least_two,
        inadmissible_on_both_sides,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Restriction {
    pub side: Side,
    /// `F ∩ E(G_side)`.
    pub edges: Vec<EdgeId>,
    /// Class of the contraction containing the restriction (empty when
    /// the restriction is).
    pub containing_class: Vec<EdgeId>,
    /// The restriction is a whole class of the contraction.
    pub exact: bool,
    pub tight: bool,
}

/// Restricts a class `F` of `g` to one contraction of a separating cut.
pub fn restrict_class(g: &MultiGraph, c: &Cut, f: &[EdgeId], side: Side) -> Result<Restriction> {
    if !is_separating_cut(g, c) {
        return Err(Error::domain("restriction needs a separating cut"));
    }
    let h = side_graph(g, c, side)?;
    let mut edges: Vec<EdgeId> = f.iter().copied().filter(|e| h.has_edge(*e)).collect();
    edges.sort();
    let containing_class = match edges.first() {
        Some(&e) => equivalence_partition(&h)?.class_of(e).map(<[EdgeId]>::to_vec).unwrap_or_default(),
        None => Vec::new(),
    };
    let exact = !edges.is_empty() && containing_class == edges;
    Ok(Restriction {
        side,
        edges,
        containing_class,
        exact,
        tight: is_tight_cut(g, c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{depicted_cut_shore, named_graph, NamedGraph};
    use crate::matching::is_matching_covered;

    fn g(id: NamedGraph) -> MultiGraph {
        named_graph(&id).unwrap()
    }

    #[test]
    fn k4_with_k4_is_c6bar() {
        let k4 = g(NamedGraph::K4);
        let s = splice(&SpliceSpec::in_order(&k4, VertexId(0), &k4, VertexId(0))).unwrap();
        assert_eq!(s.graph.vertex_count(), 6);
        assert_eq!(s.cut.edges(&s.graph).len(), 3);
        assert_eq!(canonical_form(&s.graph).unwrap(), canonical_form(&g(NamedGraph::C6Bar)).unwrap());
        let variants = splice_variants(&k4, VertexId(2), &k4, VertexId(1)).unwrap();
        assert_eq!(variants.len(), 1);
    }

    #[test]
    fn c6bar_with_k4_gives_the_unique_removable_edge_brick() {
        let c6bar = g(NamedGraph::C6Bar);
        let k4 = g(NamedGraph::K4);
        let h = canonical_form(&g(NamedGraph::PrismK4)).unwrap();
        let variants = splice_variants(&c6bar, VertexId(0), &k4, VertexId(0)).unwrap();
        assert!(variants.contains(&h));
    }

    #[test]
    fn wheel_hubs_give_petersen_and_prism() {
        let w5 = g(NamedGraph::Wheel(5));
        let variants = splice_variants(&w5, VertexId(0), &w5, VertexId(0)).unwrap();
        assert!(variants.contains(&canonical_form(&g(NamedGraph::Petersen)).unwrap()));
        assert!(variants.contains(&canonical_form(&g(NamedGraph::Prism(5))).unwrap()));
        assert!(variants.len() > 2);
    }

    #[test]
    fn k2_with_k2() {
        let k2 = g(NamedGraph::K2);
        let v = splice_variants(&k2, VertexId(0), &k2, VertexId(1)).unwrap();
        assert_eq!(v.into_iter().collect::<Vec<_>>(), vec![canonical_form(&k2).unwrap()]);
    }

    #[test]
    fn bad_specs_are_rejected() {
        let k4 = g(NamedGraph::K4);
        let c6 = g(NamedGraph::EvenCycle(3));
        assert!(splice(&SpliceSpec::in_order(&k4, VertexId(0), &c6, VertexId(0))).is_err());
        let mut spec = SpliceSpec::in_order(&k4, VertexId(0), &k4, VertexId(0));
        spec.pi[1].1 = spec.pi[0].1;
        assert!(matches!(splice(&spec), Err(Error::Domain(_))));
        let w = (0..9).map(|i| (0, i + 1)).collect::<Vec<_>>();
        let star = MultiGraph::from_edges(10, &w).unwrap();
        assert!(matches!(
            splice_variants(&star, VertexId(0), &star, VertexId(0)),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn splicing_cut_recovers_inputs() {
        let k4 = g(NamedGraph::K4);
        let k33 = g(NamedGraph::CompleteBipartite(3, 3));
        let s = splice(&SpliceSpec::in_order(&k4, VertexId(3), &k33, VertexId(0))).unwrap();
        assert!(s.graph.is_simple());
        assert!(is_matching_covered(&s.graph));
        assert!(is_tight_cut(&s.graph, &s.cut));
        let (a, b) = s.cut.contractions(&s.graph).unwrap();
        assert_eq!(canonical_form(&a.graph).unwrap(), canonical_form(&k4).unwrap());
        assert_eq!(canonical_form(&b.graph).unwrap(), canonical_form(&k33).unwrap());
    }

    #[test]
    fn cross_support_with_no_forced_edges_is_the_cut() {
        let h = g(NamedGraph::K4K33);
        let c = Cut::new(&h, &depicted_cut_shore(&NamedGraph::K4K33).unwrap()).unwrap();
        let s = cross_support(&h, &c, Side::Two, &[]).unwrap();
        assert_eq!(s.support, c.edges(&h));
        let inside = h.edge_by_label("e1").unwrap();
        assert!(cross_support(&h, &c, Side::One, &[h.edge_by_label("e2").unwrap()]).is_err());
        let s = cross_support(&h, &c, Side::One, &[inside]).unwrap();
        assert_eq!(s.support.len(), 1);
    }

    #[test]
    fn restriction_across_the_c6bar_cut() {
        let c6bar = g(NamedGraph::C6Bar);
        let c = Cut::new(&c6bar, &depicted_cut_shore(&NamedGraph::C6Bar).unwrap()).unwrap();
        let e1 = c6bar.edge_by_label("e1").unwrap();
        let e2 = c6bar.edge_by_label("e2").unwrap();
        let f = [e1.min(e2), e1.max(e2)];
        let r = restrict_class(&c6bar, &c, &f, Side::One).unwrap();
        assert_eq!(r.edges, vec![e2]);
        assert!(!r.tight);
        assert_eq!(r.containing_class.len(), 2);
        assert!(!r.exact);
    }
}
