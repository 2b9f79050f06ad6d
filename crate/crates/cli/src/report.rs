//! The `analyze` report. Vertex and edge ids are 1-based positions in the
//! input file; vertices created by contraction inside a decomposition get
//! fresh ids past the input's.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use matchcover::cuts::{
    is_solid_brick, verify_bounds, BoundsReport, CutChooser, CutKind, FirstFound, LeafKind, ListOrder, SeededChoice,
};
use matchcover::dependence::{is_removable_edge, removable_classes};
use matchcover::matching::{enumerate_pms, inadmissible_edges, is_matchable, is_matching_covered};
use matchcover::structure::{canonical_partition, even_2cuts};
use matchcover::{
    canonical_form, classify, equivalence_partition, tight_cut_decomposition, Classification, DecompositionResult,
    EdgeId, Error, MultiGraph, VertexId,
};
use serde::Serialize;

pub const SCHEMA: u32 = 1;

pub fn vid(v: VertexId) -> u32 {
    v.0 + 1
}

pub fn eid(e: EdgeId) -> u32 {
    e.0 + 1
}

pub fn vids(vs: &[VertexId]) -> Vec<u32> {
    vs.iter().copied().map(vid).collect()
}

pub fn eids(es: &[EdgeId]) -> Vec<u32> {
    es.iter().copied().map(eid).collect()
}

/// FNV-1a over the normalized text form, so comments and spacing do not
/// change it.
pub fn fingerprint(g: &MultiGraph) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in g.to_text().bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Strategy {
    FirstFound,
    ListFirst,
    ListLast,
    Random,
}

impl Strategy {
    pub fn chooser(self, seed: u64) -> Box<dyn CutChooser> {
        match self {
            Strategy::FirstFound => Box::new(FirstFound),
            Strategy::ListFirst => Box::new(ListOrder { reverse: false }),
            Strategy::ListLast => Box::new(ListOrder { reverse: true }),
            Strategy::Random => Box::new(SeededChoice::new(seed)),
        }
    }
}

pub struct Options {
    pub decompose: Option<(Strategy, u64)>,
    pub oracle_budget: Option<usize>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Flags {
    pub matchable: bool,
    pub matching_covered: bool,
    pub bipartite: bool,
    pub simple: bool,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub reason: String,
    /// First inadmissible edge, if any.
    pub edge: Option<u32>,
    pub inadmissible_edges: Vec<u32>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EvenCut {
    pub edges: [u32; 2],
    pub shore: Vec<u32>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SplitJson {
    pub shore: Vec<u32>,
    pub kind: CutKind,
    pub children: [usize; 2],
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NodeJson {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub split: Option<SplitJson>,
    pub leaf: Option<usize>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LeafJson {
    pub kind: LeafKind,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub is_c4: bool,
    pub edges: Vec<u32>,
    pub canonical_form: Option<String>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DecompositionJson {
    pub strategy: String,
    pub b: usize,
    pub c4: usize,
    /// Node 0 is the input; `children` and `leaf` index these arrays.
    pub nodes: Vec<NodeJson>,
    pub leaves: Vec<LeafJson>,
}

impl DecompositionJson {
    fn from_result(d: &DecompositionResult) -> DecompositionJson {
        DecompositionJson {
            strategy: d.strategy.clone(),
            b: d.b,
            c4: d.c4,
            nodes: d
                .nodes
                .iter()
                .map(|n| NodeJson {
                    vertex_count: n.vertex_count,
                    edge_count: n.edge_count,
                    split: n.split.as_ref().map(|s| SplitJson {
                        shore: vids(&s.shore),
                        kind: s.kind,
                        children: s.children,
                    }),
                    leaf: n.leaf,
                })
                .collect(),
            leaves: d
                .leaves
                .iter()
                .map(|l| LeafJson {
                    kind: l.kind,
                    vertex_count: l.vertex_count,
                    edge_count: l.edge_count,
                    is_c4: l.is_c4,
                    edges: eids(&l.graph.edge_ids()),
                    canonical_form: l.form.as_ref().map(|f| f.to_hex()),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleJson {
    pub budget: usize,
    pub perfect_matchings: usize,
    pub admissibility_agrees: bool,
    /// Classes read off the enumeration equal the computed ones; null when
    /// the graph is not matching covered.
    pub partition_agrees: Option<bool>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub schema: u32,
    pub fingerprint: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub flags: Flags,
    pub witness: Option<Witness>,
    /// Null above the canonical-labeling size limit.
    pub canonical_form: Option<String>,
    pub canonical_partition: Option<Vec<Vec<u32>>>,
    pub equivalence_classes: Option<Vec<Vec<u32>>>,
    pub epsilon: Option<usize>,
    pub removable_edges: Option<Vec<u32>>,
    pub removable_classes: Option<Vec<Vec<u32>>>,
    pub even2_cuts: Vec<EvenCut>,
    pub classification: Option<Classification>,
    pub solid: Option<bool>,
    pub b: Option<usize>,
    pub c4: Option<usize>,
    pub bounds: Option<BoundsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_check: Option<OracleJson>,
    /// Fields left null because the graph exceeds a size limit.
    pub undecided: Vec<String>,
}

/// Turns a capability error into a recorded gap.
fn decide<T>(undecided: &mut Vec<String>, field: &str, r: matchcover::Result<T>) -> matchcover::Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::Capability(_)) => {
            undecided.push(field.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn witness(g: &MultiGraph) -> Witness {
    let n = g.vertex_count();
    let bad = if is_matchable(g) { inadmissible_edges(g) } else { g.edge_ids() };
    let reason = if n < 2 {
        "fewer than two vertices"
    } else if n % 2 == 1 {
        "odd order"
    } else if !g.is_connected() {
        "disconnected"
    } else if !is_matchable(g) {
        "no perfect matching"
    } else {
        "inadmissible edge"
    };
    Witness {
        reason: reason.into(),
        edge: bad.first().copied().map(eid),
        inadmissible_edges: eids(&bad),
    }
}

/// Groups edges by the set of perfect matchings containing them.
fn classes_by_incidence(g: &MultiGraph, pms: &[matchcover::Matching]) -> Vec<Vec<EdgeId>> {
    let mut groups: BTreeMap<Vec<bool>, Vec<EdgeId>> = BTreeMap::new();
    for e in g.edge_ids() {
        let key: Vec<bool> = pms.iter().map(|m| m.contains(e)).collect();
        groups.entry(key).or_default().push(e);
    }
    let mut out: Vec<Vec<EdgeId>> = groups.into_values().collect();
    out.sort();
    out
}

pub fn analyze(g: &MultiGraph, opts: &Options) -> matchcover::Result<AnalysisReport> {
    let mut undecided = Vec::new();
    let covered = is_matching_covered(g);
    let mut r = AnalysisReport {
        schema: SCHEMA,
        fingerprint: fingerprint(g),
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        flags: Flags {
            matchable: is_matchable(g),
            matching_covered: covered,
            bipartite: g.is_bipartite().is_some(),
            simple: g.is_simple(),
        },
        witness: None,
        canonical_form: None,
        canonical_partition: None,
        equivalence_classes: None,
        epsilon: None,
        removable_edges: None,
        removable_classes: None,
        even2_cuts: even_2cuts(g)
            .iter()
            .map(|c| EvenCut {
                edges: [eid(c.edges[0]), eid(c.edges[1])],
                shore: vids(c.cut.shore()),
            })
            .collect(),
        classification: None,
        solid: None,
        b: None,
        c4: None,
        bounds: None,
        decomposition: None,
        oracle_check: None,
        undecided: Vec::new(),
    };
    // an identifier, not a finding: left null above the size limit
    r.canonical_form = match canonical_form(g) {
        Ok(f) => Some(f.to_hex()),
        Err(Error::Capability(_)) => None,
        Err(e) => return Err(e),
    };

    if covered {
        let part = equivalence_partition(g)?;
        r.canonical_partition = Some(canonical_partition(g)?.parts.iter().map(|p| vids(p)).collect());
        r.equivalence_classes = Some(part.classes().iter().map(|c| eids(c)).collect());
        r.epsilon = Some(part.epsilon());
        // removability is undefined on K2
        if g.vertex_count() > 2 {
            let mut removable = Vec::new();
            for e in g.edge_ids() {
                if is_removable_edge(g, e)? {
                    removable.push(e);
                }
            }
            r.removable_edges = Some(eids(&removable));
            r.removable_classes = Some(removable_classes(g)?.iter().map(|c| eids(c)).collect());
        }
        r.classification = decide(&mut undecided, "classification", classify(g))?;
        if r.classification == Some(Classification::Brick) {
            r.solid = decide(&mut undecided, "solid", is_solid_brick(g))?;
        }
        if let Some(bounds) = decide(&mut undecided, "bounds", verify_bounds(g))? {
            r.b = Some(bounds.b);
            r.c4 = Some(bounds.c4);
            r.bounds = Some(bounds);
        }
        if let Some((strategy, seed)) = opts.decompose {
            let d = decide(
                &mut undecided,
                "decomposition",
                tight_cut_decomposition(g, strategy.chooser(seed).as_mut()),
            )?;
            r.decomposition = d.as_ref().map(DecompositionJson::from_result);
        }
    } else {
        r.witness = Some(witness(g));
    }

    if let Some(budget) = opts.oracle_budget {
        if let Some(pms) = decide(&mut undecided, "oracleCheck", enumerate_pms(g, budget))? {
            let used: Vec<EdgeId> = g.edge_ids().into_iter().filter(|&e| pms.iter().all(|m| !m.contains(e))).collect();
            let admissibility_agrees = if is_matchable(g) {
                used == inadmissible_edges(g)
            } else {
                pms.is_empty()
            };
            let partition_agrees = if covered {
                Some(classes_by_incidence(g, &pms) == equivalence_partition(g)?.classes())
            } else {
                None
            };
            if !admissibility_agrees || partition_agrees == Some(false) {
                return Err(Error::Internal(
                    "enumeration disagrees with the polynomial predicates".into(),
                ));
            }
            r.oracle_check = Some(OracleJson {
                budget,
                perfect_matchings: pms.len(),
                admissibility_agrees,
                partition_agrees,
            });
        }
    }
    r.undecided = undecided;
    Ok(r)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn sets(xs: &[Vec<u32>]) -> String {
    if xs.is_empty() {
        return "none".into();
    }
    xs.iter()
        .map(|s| format!("{{{}}}", s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn holds(x: Option<bool>) -> &'static str {
    match x {
        Some(true) => "holds",
        Some(false) => "VIOLATED",
        None => "n/a",
    }
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let unknown = "undecided";
        let _ = writeln!(s, "fingerprint: {}", self.fingerprint);
        let _ = writeln!(s, "vertices: {}, edges: {}", self.vertex_count, self.edge_count);
        let f = &self.flags;
        let _ = writeln!(s, "matchable: {}", yes(f.matchable));
        let _ = writeln!(s, "matching covered: {}", yes(f.matching_covered));
        let _ = writeln!(s, "bipartite: {}", yes(f.bipartite));
        let _ = writeln!(s, "simple: {}", yes(f.simple));
        if let Some(w) = &self.witness {
            let edge = w.edge.map_or("none".to_string(), |e| e.to_string());
            let _ = writeln!(s, "not matching covered: {} (witness edge {edge})", w.reason);
        }
        if let Some(c) = &self.canonical_form {
            let _ = writeln!(s, "canonical form: {c}");
        }
        if let Some(p) = &self.canonical_partition {
            let _ = writeln!(s, "canonical partition: {}", sets(p));
        }
        if let Some(c) = &self.equivalence_classes {
            let _ = writeln!(s, "equivalence classes: {}", sets(c));
        }
        if let Some(e) = self.epsilon {
            let _ = writeln!(s, "epsilon = {e}");
        }
        if let Some(e) = &self.removable_edges {
            let _ = writeln!(s, "removable edges: {}", sets(&e.iter().map(|&x| vec![x]).collect::<Vec<_>>()));
        }
        if let Some(c) = &self.removable_classes {
            let _ = writeln!(s, "removable classes: {}", sets(c));
        }
        let cuts: Vec<Vec<u32>> = self.even2_cuts.iter().map(|c| c.edges.to_vec()).collect();
        let _ = writeln!(s, "even 2-cuts: {}", sets(&cuts));
        if f.matching_covered {
            let class = match self.classification {
                Some(Classification::Brick) => "brick",
                Some(Classification::Brace) => "brace",
                Some(Classification::Neither) => "neither",
                None => unknown,
            };
            let _ = writeln!(s, "classification: {class}");
            if self.classification == Some(Classification::Brick) {
                let _ = writeln!(s, "solid: {}", self.solid.map_or(unknown, yes));
            }
        }
        if let Some(bd) = &self.bounds {
            let _ = writeln!(s, "b = {}", bd.b);
            let _ = writeln!(s, "c4 = {}", bd.c4);
            let tight = if bd.tight { " (tight)" } else { "" };
            if bd.bipartite {
                let _ = writeln!(s, "bound 1 + c4: {}{tight}", holds(bd.bipartite_bound_holds));
            } else {
                let t = if bd.even_two_cut_free { "" } else { tight };
                let _ = writeln!(s, "bound 2b + c4: {}{t}", holds(bd.nonbipartite_bound_holds));
                if bd.even_two_cut_free {
                    let _ = writeln!(s, "bound 2b: {}{tight}", holds(bd.even_two_cut_free_bound_holds));
                }
            }
        }
        if let Some(d) = &self.decomposition {
            let _ = writeln!(s, "decomposition ({}): b = {}, c4 = {}", d.strategy, d.b, d.c4);
            for (i, n) in d.nodes.iter().enumerate() {
                match (&n.split, n.leaf) {
                    (Some(sp), _) => {
                        let shore: Vec<String> = sp.shore.iter().map(u32::to_string).collect();
                        let _ = writeln!(
                            s,
                            "  node {i}: {} vertices, split on {{{}}} into {} and {}",
                            n.vertex_count,
                            shore.join(","),
                            sp.children[0],
                            sp.children[1]
                        );
                    }
                    (None, Some(l)) => {
                        let leaf = &d.leaves[l];
                        let kind = match leaf.kind {
                            LeafKind::Brick => "brick",
                            LeafKind::Brace if leaf.is_c4 => "brace (C4)",
                            LeafKind::Brace => "brace",
                        };
                        let _ = writeln!(s, "  node {i}: {} vertices, {kind}", n.vertex_count);
                    }
                    (None, None) => {}
                }
            }
        }
        if let Some(o) = &self.oracle_check {
            let part = o.partition_agrees.map_or("n/a", |x| if x { "agrees" } else { "DISAGREES" });
            let _ = writeln!(
                s,
                "oracle check: {} perfect matchings, admissibility agrees, partition {part}",
                o.perfect_matchings
            );
        }
        if !self.undecided.is_empty() {
            let _ = writeln!(s, "undecided: {}", self.undecided.join(", "));
        }
        s
    }
}
