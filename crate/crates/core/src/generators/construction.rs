//! Matching covered graphs with vertex connectivity at least `p` and an
//! equivalence class of size at least `q`.
//!
//! `G0` is `q` copies of a `(p+1)`-connected brace `H` chained by edge
//! sets `C_i` (from the anchor `a_i` of copy `i` to copy `i+1`), closed by
//! `f0`. Each brick `J_i` is another copy of `H` with `p` edges `C'_i` from
//! its anchor `u_i` into its own colour class and an edge `f_i` inside the
//! other class. `G_i` splices `G_{i-1}` at `a_i` with `J_i` at `u_i`,
//! sending `C_i` onto `C'_i`. The final class is `{f0, ..., f_{q-1}}`.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::cuts::{brick_certificate, classify, is_tight_cut, Classification};
use crate::dependence::equivalence_partition;
use crate::error::{Error, Result};
use crate::graph::{Cut, EdgeId, MultiGraph, VertexId};
use crate::matching::{is_matching_covered, maximum_matching, PmOracle};
use crate::splicing::{check_merge, splice, SpliceSpec};
use crate::structure::{is_barrier, vertex_connectivity};

use super::{named_graph, NamedGraph};

/// How each `pi_i` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum PiRule {
    /// `C_i` onto `C'_i` and the brace edges onto the brace edges, both
    /// in index order.
    #[default]
    Standard,
    /// Swaps the images of the first `C_i` edge and the first brace edge,
    /// so `pi_i` no longer sends `C_i` into `C'_i`. Negative control.
    Misaligned,
}

/// Parameters of a construction run.
#[derive(Debug, Clone)]
pub struct Construction {
    pub p: usize,
    pub q: usize,
    /// Brace and anchor; `K_{p+1,p+1}` at vertex 0 when absent.
    pub brace: Option<(MultiGraph, VertexId)>,
    pub pi_rule: PiRule,
}

impl Construction {
    pub fn new(p: usize, q: usize) -> Construction {
        Construction {
            p,
            q,
            brace: None,
            pi_rule: PiRule::Standard,
        }
    }

    pub fn build(&self) -> Result<ConstructionTrace> {
        build(self)
    }
}

pub fn build_high_kappa_epsilon(
    p: usize,
    q: usize,
    brace: Option<(&MultiGraph, VertexId)>,
) -> Result<ConstructionTrace> {
    Construction {
        p,
        q,
        brace: brace.map(|(h, a)| (h.clone(), a)),
        pi_rule: PiRule::Standard,
    }
    .build()
}

/// A graph together with the ids behind its text form.
#[derive(Debug, Clone, PartialEq)]
pub struct Dumped(pub MultiGraph);

impl Serialize for Dumped {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let g = &self.0;
        let labels: BTreeMap<String, EdgeId> = g
            .edge_ids()
            .into_iter()
            .filter_map(|e| g.edge_label(e).map(|l| (l.to_string(), e)))
            .collect();
        let mut st = s.serialize_struct("Graph", 4)?;
        st.serialize_field("text", &g.to_text())?;
        st.serialize_field("vertexIds", g.vertices())?;
        st.serialize_field("edgeIds", &g.edge_ids())?;
        st.serialize_field("edgeLabels", &labels)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BrickStage {
    pub graph: Dumped,
    pub u: VertexId,
    pub f: EdgeId,
    pub c_prime: Vec<EdgeId>,
    /// Colour class of `u`.
    pub u_side: Vec<VertexId>,
    pub v_side: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpliceStage {
    pub graph: Dumped,
    pub a: VertexId,
    pub u: VertexId,
    pub pi: Vec<(EdgeId, EdgeId)>,
    /// Shore `V(G_{i-1}) - a_i` of the splicing cut `D_i`.
    pub cut_shore: Vec<VertexId>,
    /// `f_i` in this graph.
    pub f: EdgeId,
    /// Vertices of `J_i - u_i` in this graph.
    pub brick_vertices: Vec<VertexId>,
}

/// Every intermediate object of a run. Ids are internal and stable from
/// one stage to the next.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructionTrace {
    pub p: usize,
    pub q: usize,
    pub pi_rule: PiRule,
    pub brace: Dumped,
    pub anchor: VertexId,
    pub g0: Dumped,
    pub a0: Vec<VertexId>,
    pub b0: Vec<VertexId>,
    /// Vertex sets of the copies `H_i` in `G0`.
    pub copies: Vec<Vec<VertexId>>,
    pub anchors: Vec<VertexId>,
    /// `C_1 .. C_{q-1}`.
    pub c: Vec<Vec<EdgeId>>,
    pub c_star: Vec<EdgeId>,
    pub bricks: Vec<BrickStage>,
    pub stages: Vec<SpliceStage>,
    /// `f_0 .. f_{q-1}` in the final graph.
    pub f: Vec<EdgeId>,
}

impl ConstructionTrace {
    pub fn final_graph(&self) -> &MultiGraph {
        self.stages.last().map_or(&self.g0.0, |s| &s.graph.0)
    }

    pub fn expected_order(&self) -> usize {
        let h = self.brace.0.vertex_count();
        (2 * self.q - 1) * h - 2 * (self.q - 1)
    }
}

fn validate_brace(h: &MultiGraph, anchor: VertexId, p: usize) -> Result<()> {
    if !h.has_vertex(anchor) {
        return Err(Error::domain("anchor is not a vertex of the brace"));
    }
    if !h.is_simple() {
        return Err(Error::domain("the brace must be simple"));
    }
    if !is_matching_covered(h) || classify(h)? != Classification::Brace {
        return Err(Error::domain("H must be a brace"));
    }
    if vertex_connectivity(h) < p + 1 {
        return Err(Error::domain(format!("H must be {}-connected", p + 1)));
    }
    Ok(())
}

/// `H` relabeled to `0..n`, the anchor's index, and its colour classes
/// with the anchor's class first.
fn prepared_brace(h: &MultiGraph, anchor: VertexId) -> (MultiGraph, usize, Vec<usize>, Vec<usize>) {
    let (hc, vmap, _) = h.compacted();
    let a = vmap[&anchor].0 as usize;
    let bp = hc.is_bipartite().expect("brace is bipartite");
    let idx = |vs: &[VertexId]| vs.iter().map(|v| v.0 as usize).collect::<Vec<usize>>();
    let (mut side_a, mut side_b) = (idx(&bp.a), idx(&bp.b));
    if !side_a.contains(&a) {
        std::mem::swap(&mut side_a, &mut side_b);
    }
    (hc, a, side_a, side_b)
}

fn add_labeled(g: &mut MultiGraph, u: VertexId, v: VertexId, label: String) -> Result<EdgeId> {
    if !g.edges_between(u, v).is_empty() {
        return Err(Error::internal(format!("edge {u}{v} would be parallel")));
    }
    let e = g.add_edge(u, v)?;
    g.set_edge_label(e, label);
    Ok(e)
}

fn build(cfg: &Construction) -> Result<ConstructionTrace> {
    let (p, q) = (cfg.p, cfg.q);
    if p < 2 || q < 2 {
        return Err(Error::domain("the construction needs p >= 2 and q >= 2"));
    }
    let (h, anchor) = match &cfg.brace {
        Some((h, a)) => (h.clone(), *a),
        None => (named_graph(&NamedGraph::CompleteBipartite(p + 1, p + 1))?, VertexId(0)),
    };
    validate_brace(&h, anchor, p)?;
    let (hc, a_idx, side_a, side_b) = prepared_brace(&h, anchor);
    let nh = hc.vertex_count();
    if side_a.len() < p + 1 {
        return Err(Error::domain("the anchor's colour class is too small"));
    }

    // G0: q disjoint copies, then C_i, then f0.
    let mut g0 = MultiGraph::with_vertices(q * nh);
    let at = |copy: usize, i: usize| VertexId((copy * nh + i) as u32);
    for copy in 0..q {
        for e in hc.edges() {
            g0.add_edge(at(copy, e.u.0 as usize), at(copy, e.v.0 as usize))?;
        }
    }
    let anchors: Vec<VertexId> = (0..q).map(|c| at(c, a_idx)).collect();
    let lowest_b: Vec<usize> = side_b.iter().copied().take(p).collect();
    let mut c_sets = Vec::new();
    for i in 0..q - 1 {
        let mut ci = Vec::new();
        for (k, &b) in lowest_b.iter().enumerate() {
            ci.push(add_labeled(&mut g0, anchors[i], at(i + 1, b), format!("c{}.{}", i + 1, k + 1))?);
        }
        c_sets.push(ci);
    }
    let f0 = add_labeled(&mut g0, anchors[q - 1], at(0, side_b[0]), "f0".into())?;
    let copies: Vec<Vec<VertexId>> = (0..q).map(|c| (0..nh).map(|i| at(c, i)).collect()).collect();
    let mut a0: Vec<VertexId> = (0..q).flat_map(|c| side_a.iter().map(move |&i| at(c, i))).collect();
    let mut b0: Vec<VertexId> = (0..q).flat_map(|c| side_b.iter().map(move |&i| at(c, i))).collect();
    a0.sort();
    b0.sort();
    let c_star: Vec<EdgeId> = c_sets.iter().flatten().copied().collect();

    // Brace edges at the anchor, in id order; identical positions in every copy.
    let anchor_h_edges = |g: &MultiGraph, v: VertexId, extra: &[EdgeId]| -> Vec<EdgeId> {
        g.incident_edges(v).map(|e| e.id).filter(|e| !extra.contains(e)).collect()
    };

    let mut bricks = Vec::new();
    let mut stages = Vec::new();
    let mut current = g0.clone();
    let mut f_ids = vec![f0];
    for i in 1..q {
        // J_i
        let mut j = MultiGraph::with_vertices(nh);
        for e in hc.edges() {
            j.add_edge(e.u, e.v)?;
        }
        let u = VertexId(a_idx as u32);
        let targets: Vec<usize> = side_a.iter().copied().filter(|&x| x != a_idx).take(p).collect();
        let mut c_prime = Vec::new();
        for (k, &t) in targets.iter().enumerate() {
            c_prime.push(add_labeled(&mut j, u, VertexId(t as u32), format!("c'{i}.{}", k + 1))?);
        }
        let fi = add_labeled(&mut j, VertexId(side_b[0] as u32), VertexId(side_b[1] as u32), format!("f{i}"))?;
        let to_ids = |xs: &[usize]| xs.iter().map(|&x| VertexId(x as u32)).collect::<Vec<_>>();

        // pi_i
        let ci = &c_sets[i - 1];
        let a_i = anchors[i - 1];
        let h_at_a = anchor_h_edges(&current, a_i, ci);
        let h_at_u = anchor_h_edges(&j, u, &c_prime);
        let mut pi: Vec<(EdgeId, EdgeId)> = h_at_a.iter().copied().zip(h_at_u.iter().copied()).collect();
        pi.extend(ci.iter().copied().zip(c_prime.iter().copied()));
        if cfg.pi_rule == PiRule::Misaligned {
            let first_h = 0;
            let first_c = h_at_a.len();
            let tmp = pi[first_h].1;
            pi[first_h].1 = pi[first_c].1;
            pi[first_c].1 = tmp;
        }
        let s = splice(&SpliceSpec {
            g1: &current,
            v1: a_i,
            g2: &j,
            v2: u,
            pi: pi.clone(),
        })?;
        let f_here = s.edge_map[&fi];
        f_ids.push(f_here);
        stages.push(SpliceStage {
            graph: Dumped(s.graph.clone()),
            a: a_i,
            u,
            pi,
            cut_shore: s.cut.shore().to_vec(),
            f: f_here,
            brick_vertices: s.vertex_map.values().copied().collect(),
        });
        bricks.push(BrickStage {
            graph: Dumped(j),
            u,
            f: fi,
            c_prime,
            u_side: to_ids(&side_a),
            v_side: to_ids(&side_b),
        });
        current = s.graph;
    }

    Ok(ConstructionTrace {
        p,
        q,
        pi_rule: cfg.pi_rule,
        brace: Dumped(hc),
        anchor: VertexId(a_idx as u32),
        g0: Dumped(g0),
        a0,
        b0,
        copies,
        anchors,
        c: c_sets,
        c_star,
        bricks,
        stages,
        f: f_ids,
    })
}

/// One named check of [`verify_trace`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckOutcome {
    pub check: String,
    pub stage: Option<usize>,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceReport {
    pub checks: Vec<CheckOutcome>,
    pub kappa: usize,
    pub epsilon: usize,
    pub vertex_count: usize,
    pub expected_vertex_count: usize,
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// The first failed check as a verification error.
    pub fn ensure(&self) -> Result<()> {
        match self.failures().first() {
            None => Ok(()),
            Some(c) => Err(Error::Verification {
                statement: c.check.clone(),
                detail: match c.stage {
                    Some(i) => format!("stage {i}: {}", c.detail),
                    None => c.detail.clone(),
                },
            }),
        }
    }
}

struct Checks(Vec<CheckOutcome>);

impl Checks {
    fn add(&mut self, check: &str, stage: Option<usize>, passed: bool, detail: impl Into<String>) {
        self.0.push(CheckOutcome {
            check: check.into(),
            stage,
            passed,
            detail: detail.into(),
        });
    }
}

fn all_dead(g: &MultiGraph, edges: &[EdgeId], deleted: &[EdgeId]) -> bool {
    let o = PmOracle::new(g);
    edges.iter().all(|&e| !o.extends_avoiding(&[e], deleted))
}

/// Re-derives every claim the construction relies on.
///
/// Checks, in order: `base` (G0 bipartite, matching covered, each `C*`
/// edge inadmissible in `G0 - f0`, `{f0}` a class); `brick` (each `J_i` a
/// brick by both the exhaustive search and the bicritical 3-connected
/// certificate, each `C'_i` edge inadmissible in `J_i - f_i`, `{f_i}` a
/// class); `splice` (each `G_i` simple and matching covered, `B0` a
/// barrier and `D_i` the cut of a component of `G_i - B0`, `D_i` tight);
/// `class-growth` (`F_i = {f0..f_i}` a class of `G_i`, every `C*` edge
/// inadmissible in `G_i - F_i`, merge predicate agrees); then `order`,
/// `parts`, `connectivity` and `class-size` on the final graph.
pub fn verify_trace(t: &ConstructionTrace) -> Result<TraceReport> {
    let mut ck = Checks(Vec::new());
    let g0 = &t.g0.0;
    let f0 = t.f[0];

    let bip_mcg = g0.is_bipartite().is_some() && is_matching_covered(g0);
    ck.add("base", None, bip_mcg, "G0 is bipartite and matching covered");
    ck.add(
        "base",
        None,
        all_dead(g0, &t.c_star, &[f0]),
        "every C* edge is inadmissible in G0 - f0",
    );
    let singleton = bip_mcg && equivalence_partition(g0)?.class_of(f0) == Some(&[f0][..]);
    ck.add("base", None, singleton, "{f0} is an equivalence class of G0");

    for (k, b) in t.bricks.iter().enumerate() {
        let j = &b.graph.0;
        let stage = Some(k + 1);
        let mcg = is_matching_covered(j);
        let exhaustive = mcg && classify(j)? == Classification::Brick;
        let fast = brick_certificate(j);
        ck.add(
            "brick",
            stage,
            exhaustive && fast,
            format!("J is a brick (search: {exhaustive}, certificate: {fast})"),
        );
        ck.add(
            "brick",
            stage,
            all_dead(j, &b.c_prime, &[b.f]),
            "every C' edge is inadmissible in J - f",
        );
        let single = mcg && equivalence_partition(j)?.class_of(b.f) == Some(&[b.f][..]);
        ck.add("brick", stage, single, "{f} is an equivalence class of J");
    }

    let mut prev = g0.clone();
    for (k, s) in t.stages.iter().enumerate() {
        let g = &s.graph.0;
        let stage = Some(k + 1);
        let mcg = is_matching_covered(g);
        ck.add("splice", stage, g.is_simple() && mcg, "G is simple and matching covered");
        let cut = Cut::new(g, &s.cut_shore)?;
        let far: Vec<VertexId> = cut.complement(g);
        let barrier = is_barrier(g, &t.b0);
        let component = g.components_without(&t.b0).contains(&far);
        ck.add(
            "splice",
            stage,
            barrier && component,
            format!("B0 is a barrier ({barrier}) and D is the cut of a component of G - B0 ({component})"),
        );
        ck.add("splice", stage, mcg && is_tight_cut(g, &cut), "D is tight");

        let mut fi: Vec<EdgeId> = t.f[..=k + 1].to_vec();
        fi.sort();
        let class_ok = mcg && equivalence_partition(g)?.class_of(fi[0]) == Some(fi.as_slice());
        ck.add(
            "class-growth",
            stage,
            class_ok,
            format!("F = {fi:?} is an equivalence class of G"),
        );
        ck.add(
            "class-growth",
            stage,
            all_dead(g, &t.c_star, &fi),
            "every C* edge is inadmissible in G - F",
        );
        if mcg {
            let f_prev: Vec<EdgeId> = t.f[..=k].to_vec();
            let verdict = check_merge(g, &cut, &f_prev, &[s.f])?;
            ck.add(
                "class-growth",
                stage,
                verdict.merged == class_ok,
                format!("merge predicate gives {} for F_prev + f", verdict.merged),
            );
        }
        prev = g.clone();
    }
    let g = &prev;

    let expected = t.expected_order();
    ck.add(
        "order",
        None,
        g.vertex_count() == expected,
        format!("{} vertices, expected {expected}", g.vertex_count()),
    );

    // Parts (H_1 - a_1, L_1 - u_1, ..., H_q) and matchings between neighbours.
    let mut parts: Vec<Vec<VertexId>> = Vec::new();
    for i in 0..t.q {
        let mut hp: Vec<VertexId> = t.copies[i].iter().copied().filter(|&v| i + 1 == t.q || v != t.anchors[i]).collect();
        hp.sort();
        parts.push(hp);
        if let Some(s) = t.stages.get(i) {
            parts.push(s.brick_vertices.clone());
        }
    }
    let covers = parts.iter().map(Vec::len).sum::<usize>() == g.vertex_count();
    let inner = parts.iter().all(|p| vertex_connectivity(&g.induced(p)) >= t.p);
    let links: Vec<usize> = parts
        .windows(2)
        .map(|w| {
            let mut keep = w[0].clone();
            keep.extend(&w[1]);
            let h = g.induced(&keep);
            let cross: Vec<EdgeId> = h
                .edges()
                .iter()
                .filter(|e| w[0].contains(&e.u) == w[0].contains(&e.v))
                .map(|e| e.id)
                .collect();
            maximum_matching(&h.remove_edges(&cross)).len()
        })
        .collect();
    ck.add(
        "parts",
        None,
        covers && inner && links.iter().all(|&m| m >= t.p),
        format!("parts cover G ({covers}), each {}-connected ({inner}), link matchings {links:?}", t.p),
    );

    let kappa = vertex_connectivity(g);
    ck.add("connectivity", None, kappa >= t.p, format!("kappa = {kappa}"));
    let epsilon = if is_matching_covered(g) {
        equivalence_partition(g)?.epsilon()
    } else {
        0
    };
    ck.add("class-size", None, epsilon >= t.q, format!("epsilon = {epsilon}"));

    Ok(TraceReport {
        checks: ck.0,
        kappa,
        epsilon,
        vertex_count: g.vertex_count(),
        expected_vertex_count: expected,
    })
}
