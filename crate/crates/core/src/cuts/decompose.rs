//! Tight and separating cut decompositions, classification, and the
//! bounds on the largest equivalence class.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::{canonical_form, CanonicalForm, DEFAULT_CANON_LIMIT};
use crate::dependence::equivalence_partition;
use crate::error::{Error, Result};
use crate::graph::{Cut, MultiGraph, VertexId};
use crate::matching::is_matching_covered;
use crate::structure::even_2cuts;

use super::{find_nontrivial_separating_cut, find_nontrivial_tight_cut, is_tight_cut, nontrivial_tight_cuts};

/// Picks the next nontrivial tight cut of a node in the decomposition.
pub trait CutChooser {
    fn pick(&mut self, g: &MultiGraph) -> Result<Option<Cut>>;

    fn name(&self) -> String;
}

/// The staged search of [`find_nontrivial_tight_cut`].
#[derive(Debug, Clone, Copy, Default)]
pub struct FirstFound;

impl CutChooser for FirstFound {
    fn pick(&mut self, g: &MultiGraph) -> Result<Option<Cut>> {
        find_nontrivial_tight_cut(g)
    }

    fn name(&self) -> String {
        "first-found".into()
    }
}

/// First or last entry of [`nontrivial_tight_cuts`].
#[derive(Debug, Clone, Copy)]
pub struct ListOrder {
    pub reverse: bool,
}

impl CutChooser for ListOrder {
    fn pick(&mut self, g: &MultiGraph) -> Result<Option<Cut>> {
        let cuts = nontrivial_tight_cuts(g)?;
        Ok(if self.reverse {
            cuts.last().cloned()
        } else {
            cuts.first().cloned()
        })
    }

    fn name(&self) -> String {
        if self.reverse { "list-last" } else { "list-first" }.into()
    }
}

/// A uniformly random entry of [`nontrivial_tight_cuts`], from a seeded
/// stream.
#[derive(Debug, Clone)]
pub struct SeededChoice {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SeededChoice {
    pub fn new(seed: u64) -> SeededChoice {
        SeededChoice {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl CutChooser for SeededChoice {
    fn pick(&mut self, g: &MultiGraph) -> Result<Option<Cut>> {
        let cuts = nontrivial_tight_cuts(g)?;
        Ok(cuts.choose(&mut self.rng).cloned())
    }

    fn name(&self) -> String {
        format!("random-{}", self.seed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum LeafKind {
    Brick,
    Brace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum CutKind {
    Tight,
    Separating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum DecompositionMode {
    Tight,
    Separating,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Leaf {
    #[serde(skip)]
    pub graph: MultiGraph,
    pub kind: LeafKind,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Braces whose underlying simple graph is the 4-cycle.
    pub is_c4: bool,
    /// Absent above the canonical-form size limit.
    pub form: Option<CanonicalForm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Split {
    /// Shore in the node's own graph; the first child keeps it.
    pub shore: Vec<VertexId>,
    pub kind: CutKind,
    pub children: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DecompositionNode {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub split: Option<Split>,
    pub leaf: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DecompositionResult {
    pub mode: DecompositionMode,
    pub strategy: String,
    /// Node 0 is the input graph.
    pub nodes: Vec<DecompositionNode>,
    pub leaves: Vec<Leaf>,
    pub b: usize,
    pub c4: usize,
}

impl DecompositionResult {
    /// Sorted canonical forms of the leaves; `None` if some leaf is too
    /// large for a canonical form.
    pub fn form_multiset(&self) -> Option<Vec<CanonicalForm>> {
        let mut forms: Vec<CanonicalForm> = self.leaves.iter().map(|l| l.form.clone()).collect::<Option<_>>()?;
        forms.sort();
        Some(forms)
    }

    pub fn cuts_applied(&self) -> usize {
        self.nodes.iter().filter(|n| n.split.is_some()).count()
    }
}

fn is_c4_brace(g: &MultiGraph) -> bool {
    g.vertex_count() == 4 && g.underlying_simple().edge_count() == 4 && g.is_bipartite().is_some()
}

fn make_leaf(graph: MultiGraph) -> Leaf {
    let bipartite = graph.is_bipartite().is_some();
    let form = if graph.vertex_count() <= DEFAULT_CANON_LIMIT {
        canonical_form(&graph).ok()
    } else {
        None
    };
    Leaf {
        kind: if bipartite { LeafKind::Brace } else { LeafKind::Brick },
        vertex_count: graph.vertex_count(),
        edge_count: graph.edge_count(),
        is_c4: bipartite && is_c4_brace(&graph),
        form,
        graph,
    }
}

fn decompose(
    g: &MultiGraph,
    mode: DecompositionMode,
    strategy: String,
    pick: &mut dyn FnMut(&MultiGraph) -> Result<Option<Cut>>,
) -> Result<DecompositionResult> {
    if !is_matching_covered(g) {
        return Err(Error::domain("decomposition needs a matching covered graph"));
    }
    let mut nodes = vec![DecompositionNode {
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        split: None,
        leaf: None,
    }];
    let mut leaves = Vec::new();
    let mut stack = vec![(0usize, g.clone())];
    while let Some((id, h)) = stack.pop() {
        match pick(&h)? {
            None => {
                nodes[id].leaf = Some(leaves.len());
                leaves.push(make_leaf(h));
            }
            Some(cut) => {
                let kind = match mode {
                    DecompositionMode::Tight => CutKind::Tight,
                    DecompositionMode::Separating if is_tight_cut(&h, &cut) => CutKind::Tight,
                    DecompositionMode::Separating => CutKind::Separating,
                };
                let (near, far) = cut.contractions(&h)?;
                let children = [nodes.len(), nodes.len() + 1];
                for c in [&near.graph, &far.graph] {
                    nodes.push(DecompositionNode {
                        vertex_count: c.vertex_count(),
                        edge_count: c.edge_count(),
                        split: None,
                        leaf: None,
                    });
                }
                nodes[id].split = Some(Split {
                    shore: cut.shore().to_vec(),
                    kind,
                    children,
                });
                // far child pushed first so the shore side is expanded first
                stack.push((children[1], far.graph));
                stack.push((children[0], near.graph));
            }
        }
    }
    let b = leaves.iter().filter(|l| l.kind == LeafKind::Brick).count();
    let c4 = leaves.iter().filter(|l| l.is_c4).count();
    Ok(DecompositionResult {
        mode,
        strategy,
        nodes,
        leaves,
        b,
        c4,
    })
}

/// Splits along nontrivial tight cuts chosen by `chooser` until every
/// piece is a brick or a brace.
pub fn tight_cut_decomposition(g: &MultiGraph, chooser: &mut dyn CutChooser) -> Result<DecompositionResult> {
    let name = chooser.name();
    decompose(g, DecompositionMode::Tight, name, &mut |h| chooser.pick(h))
}

/// Splits along the first nontrivial separating cut found until every
/// piece is a brace or a solid brick. The result depends on the cuts
/// chosen.
pub fn separating_cut_decomposition(g: &MultiGraph) -> Result<DecompositionResult> {
    decompose(
        g,
        DecompositionMode::Separating,
        "first-separating".into(),
        &mut find_nontrivial_separating_cut,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Classification {
    Brick,
    Brace,
    Neither,
}

pub fn classify(g: &MultiGraph) -> Result<Classification> {
    Ok(match find_nontrivial_tight_cut(g)? {
        Some(_) => Classification::Neither,
        None if g.is_bipartite().is_some() => Classification::Brace,
        None => Classification::Brick,
    })
}

/// A brick without nontrivial separating cuts (exhaustive search).
pub fn is_solid_brick(g: &MultiGraph) -> Result<bool> {
    if classify(g)? != Classification::Brick {
        return Ok(false);
    }
    Ok(find_nontrivial_separating_cut(g)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundsReport {
    pub epsilon: usize,
    pub b: usize,
    pub c4: usize,
    pub bipartite: bool,
    /// `epsilon <= 1 + c4`, for bipartite graphs.
    pub bipartite_bound_holds: Option<bool>,
    /// `epsilon <= 2b + c4`, for nonbipartite graphs.
    pub nonbipartite_bound_holds: Option<bool>,
    pub even_two_cut_free: bool,
    /// `epsilon <= 2b`, for nonbipartite graphs free of even 2-cuts.
    pub even_two_cut_free_bound_holds: Option<bool>,
    /// Whichever bound applies holds with equality.
    pub tight: bool,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        [
            self.bipartite_bound_holds,
            self.nonbipartite_bound_holds,
            self.even_two_cut_free_bound_holds,
        ]
        .into_iter()
        .all(|x| x != Some(false))
    }
}

pub fn verify_bounds(g: &MultiGraph) -> Result<BoundsReport> {
    let epsilon = equivalence_partition(g)?.epsilon();
    let d = tight_cut_decomposition(g, &mut FirstFound)?;
    let bipartite = g.is_bipartite().is_some();
    let even_two_cut_free = even_2cuts(g).is_empty();
    let (b, c4) = (d.b, d.c4);
    let tight = if bipartite {
        epsilon == 1 + c4
    } else if even_two_cut_free {
        epsilon == 2 * b
    } else {
        epsilon == 2 * b + c4
    };
    Ok(BoundsReport {
        epsilon,
        b,
        c4,
        bipartite,
        bipartite_bound_holds: bipartite.then_some(epsilon <= 1 + c4),
        nonbipartite_bound_holds: (!bipartite).then_some(epsilon <= 2 * b + c4),
        even_two_cut_free,
        even_two_cut_free_bound_holds: (!bipartite && even_two_cut_free).then_some(epsilon <= 2 * b),
        tight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named_graph, NamedGraph};

    fn g(id: NamedGraph) -> MultiGraph {
        named_graph(&id).unwrap()
    }

    #[test]
    fn cycles_decompose_into_c4_braces() {
        for n in 2..=6 {
            let d = tight_cut_decomposition(&g(NamedGraph::EvenCycle(n)), &mut FirstFound).unwrap();
            assert_eq!((d.b, d.c4), (0, n - 1), "C{}", 2 * n);
            assert_eq!(d.leaves.len(), n - 1);
        }
    }

    #[test]
    fn splice_of_k4_and_k33() {
        let d = tight_cut_decomposition(&g(NamedGraph::K4K33), &mut FirstFound).unwrap();
        assert_eq!((d.b, d.c4), (1, 0));
        let mut want = vec![
            canonical_form(&g(NamedGraph::K4)).unwrap(),
            canonical_form(&g(NamedGraph::CompleteBipartite(3, 3))).unwrap(),
        ];
        want.sort();
        assert_eq!(d.form_multiset().unwrap(), want);
        let s = separating_cut_decomposition(&g(NamedGraph::K4K33)).unwrap();
        assert_eq!(s.form_multiset().unwrap(), want);
    }

    #[test]
    fn c6bar_separates_into_two_k4() {
        let s = separating_cut_decomposition(&g(NamedGraph::C6Bar)).unwrap();
        let k4 = canonical_form(&g(NamedGraph::K4)).unwrap();
        assert_eq!(s.form_multiset().unwrap(), vec![k4.clone(), k4]);
        assert_eq!(s.nodes[0].split.as_ref().unwrap().kind, CutKind::Separating);
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&g(NamedGraph::K4)).unwrap(), Classification::Brick);
        assert!(is_solid_brick(&g(NamedGraph::K4)).unwrap());
        assert_eq!(classify(&g(NamedGraph::C6Bar)).unwrap(), Classification::Brick);
        assert!(!is_solid_brick(&g(NamedGraph::C6Bar)).unwrap());
        for id in [NamedGraph::CompleteBipartite(3, 3), NamedGraph::EvenCycle(2), NamedGraph::K2] {
            assert_eq!(classify(&g(id)).unwrap(), Classification::Brace);
        }
        assert_eq!(classify(&g(NamedGraph::K4K33)).unwrap(), Classification::Neither);
    }

    #[test]
    fn bounds() {
        let r = verify_bounds(&g(NamedGraph::EvenCycle(3))).unwrap();
        assert_eq!((r.epsilon, r.c4), (3, 2));
        assert_eq!(r.bipartite_bound_holds, Some(true));
        assert!(r.tight);
        let r = verify_bounds(&g(NamedGraph::C6Bar)).unwrap();
        assert_eq!((r.epsilon, r.b, r.c4), (2, 1, 0));
        assert_eq!(r.nonbipartite_bound_holds, Some(true));
        assert_eq!(r.even_two_cut_free_bound_holds, Some(true));
        assert!(r.tight);
        let r = verify_bounds(&g(NamedGraph::K4K33)).unwrap();
        assert!(r.all_hold());
    }

    #[test]
    fn strategies_agree_on_c10() {
        let c10 = g(NamedGraph::EvenCycle(5));
        let base = tight_cut_decomposition(&c10, &mut FirstFound).unwrap().form_multiset();
        let mut choosers: Vec<Box<dyn CutChooser>> = vec![
            Box::new(ListOrder { reverse: false }),
            Box::new(ListOrder { reverse: true }),
            Box::new(SeededChoice::new(7)),
        ];
        for c in &mut choosers {
            assert_eq!(tight_cut_decomposition(&c10, c.as_mut()).unwrap().form_multiset(), base);
        }
    }
}
