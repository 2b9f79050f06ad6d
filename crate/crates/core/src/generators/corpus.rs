//! Reproducible collections of matching covered graphs for property runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::matching::is_matching_covered;
use crate::splicing::{splice, SpliceSpec};

use super::{named_graph, NamedGraph};

/// A corpus entry.
#[derive(Debug, Clone)]
pub struct Sample {
    pub name: String,
    pub graph: MultiGraph,
}

fn sample(name: impl Into<String>, graph: MultiGraph) -> Sample {
    Sample {
        name: name.into(),
        graph,
    }
}

/// Named matching covered graphs of order at most 16.
pub fn named_samples() -> Vec<Sample> {
    let ids = [
        NamedGraph::K2,
        NamedGraph::K4,
        NamedGraph::EvenCycle(2),
        NamedGraph::EvenCycle(3),
        NamedGraph::EvenCycle(4),
        NamedGraph::EvenCycle(5),
        NamedGraph::EvenCycle(6),
        NamedGraph::CompleteBipartite(3, 3),
        NamedGraph::CompleteBipartite(4, 4),
        NamedGraph::C6Bar,
        NamedGraph::Prism(4),
        NamedGraph::Prism(5),
        NamedGraph::Prism(6),
        NamedGraph::Wheel(5),
        NamedGraph::Wheel(7),
        NamedGraph::Petersen,
        NamedGraph::PrismK4,
        NamedGraph::K4K33,
    ];
    ids.iter()
        .map(|id| sample(id.to_string(), named_graph(id).expect("valid named graph")))
        .collect()
}

/// Named graphs with one edge duplicated.
pub fn multigraph_samples() -> Vec<Sample> {
    let mut out = Vec::new();
    for (id, e) in [
        (NamedGraph::EvenCycle(2), 0u32),
        (NamedGraph::EvenCycle(3), 1),
        (NamedGraph::K4, 0),
        (NamedGraph::C6Bar, 6),
        (NamedGraph::CompleteBipartite(3, 3), 4),
    ] {
        let mut g = named_graph(&id).expect("valid named graph");
        let edge = *g.edge(EdgeId(e)).expect("edge exists");
        g.add_edge(edge.u, edge.v).expect("not a loop");
        out.push(sample(format!("{id}+e{e}"), g));
    }
    out
}

/// Splices two graphs at random vertices of equal degree with a random
/// bijection. `None` if no such pair of vertices exists.
pub fn random_splice<R: Rng + ?Sized>(rng: &mut R, g1: &MultiGraph, g2: &MultiGraph) -> Option<MultiGraph> {
    let pairs: Vec<(VertexId, VertexId)> = g1
        .vertices()
        .iter()
        .flat_map(|&a| g2.vertices().iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| g1.degree(a) == g2.degree(b))
        .collect();
    let &(v1, v2) = pairs.choose(rng)?;
    let d1: Vec<EdgeId> = g1.incident_edges(v1).map(|e| e.id).collect();
    let mut d2: Vec<EdgeId> = g2.incident_edges(v2).map(|e| e.id).collect();
    d2.shuffle(rng);
    let pi = d1.into_iter().zip(d2).collect();
    splice(&SpliceSpec { g1, v1, g2, v2, pi }).ok().map(|s| s.graph.compacted().0)
}

/// Random splices of named graphs with order at most `max_order`.
pub fn random_splices<R: Rng + ?Sized>(rng: &mut R, count: usize, max_order: usize) -> Vec<Sample> {
    let pool: Vec<Sample> = named_samples()
        .into_iter()
        .chain(multigraph_samples())
        .filter(|s| s.graph.vertex_count() >= 4)
        .collect();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count.max(1) {
        attempts += 1;
        let a = pool.choose(rng).expect("nonempty pool");
        let b = pool.choose(rng).expect("nonempty pool");
        if a.graph.vertex_count() + b.graph.vertex_count() - 2 > max_order {
            continue;
        }
        if let Some(g) = random_splice(rng, &a.graph, &b.graph) {
            out.push(sample(format!("{}*{}#{}", a.name, b.name, out.len()), g));
        }
    }
    out
}

/// A splice whose splicing cut is tight: the second graph is bipartite,
/// so the shore it contributes has one more vertex in the colour class
/// adjacent to the splice vertex than in the other.
#[derive(Debug, Clone)]
pub struct TightSplice {
    pub name: String,
    pub graph: MultiGraph,
    /// The shore coming from the first graph.
    pub shore: Vec<VertexId>,
}

pub fn random_tight_splices<R: Rng + ?Sized>(rng: &mut R, count: usize, max_order: usize) -> Vec<TightSplice> {
    let all: Vec<Sample> = named_samples()
        .into_iter()
        .chain(multigraph_samples())
        .filter(|s| s.graph.vertex_count() >= 4)
        .collect();
    let bipartite: Vec<&Sample> = all.iter().filter(|s| s.graph.is_bipartite().is_some()).collect();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count.max(1) {
        attempts += 1;
        let a = all.choose(rng).expect("nonempty pool");
        let b = *bipartite.choose(rng).expect("bipartite pool");
        if a.graph.vertex_count() + b.graph.vertex_count() - 2 > max_order {
            continue;
        }
        let pairs: Vec<(VertexId, VertexId)> = a
            .graph
            .vertices()
            .iter()
            .flat_map(|&x| b.graph.vertices().iter().map(move |&y| (x, y)))
            .filter(|&(x, y)| a.graph.degree(x) == b.graph.degree(y))
            .collect();
        let Some(&(v1, v2)) = pairs.choose(rng) else {
            continue;
        };
        let d1: Vec<EdgeId> = a.graph.incident_edges(v1).map(|e| e.id).collect();
        let mut d2: Vec<EdgeId> = b.graph.incident_edges(v2).map(|e| e.id).collect();
        d2.shuffle(rng);
        let spec = SpliceSpec {
            g1: &a.graph,
            v1,
            g2: &b.graph,
            v2,
            pi: d1.into_iter().zip(d2).collect(),
        };
        if let Ok(s) = splice(&spec) {
            out.push(TightSplice {
                name: format!("{}*{}#{}", a.name, b.name, out.len()),
                shore: s.cut.shore().to_vec(),
                graph: s.graph,
            });
        }
    }
    out
}

/// A random graph on `n` vertices: each pair joined with probability
/// `density`, and each edge doubled with probability `double`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64, double: f64) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(n);
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.gen_bool(density) {
                g.add_edge(VertexId(u), VertexId(v)).expect("distinct ends");
                if rng.gen_bool(double) {
                    g.add_edge(VertexId(u), VertexId(v)).expect("distinct ends");
                }
            }
        }
    }
    g
}

/// Rejection-samples a matching covered graph of even order `n`.
pub fn random_matching_covered<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64, double: f64) -> Result<MultiGraph> {
    loop {
        let g = random_graph(rng, n, density, double);
        if is_matching_covered(&g) {
            return Ok(g);
        }
    }
}

/// The standard property corpus: named graphs, multigraph variants, and
/// `splices` random splices of order at most 16.
pub fn standard_corpus<R: Rng + ?Sized>(rng: &mut R, splices: usize) -> Vec<Sample> {
    let mut out = named_samples();
    out.extend(multigraph_samples());
    out.extend(random_splices(rng, splices, 16));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::is_tight_cut;
    use crate::graph::Cut;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_corpus_graph_is_matching_covered() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let corpus = standard_corpus(&mut rng, 10);
        assert!(corpus.len() >= 30);
        for s in &corpus {
            assert!(is_matching_covered(&s.graph), "{}", s.name);
            assert!(s.graph.vertex_count() <= 16);
        }
    }

    #[test]
    fn tight_splices_are_tight() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for t in random_tight_splices(&mut rng, 10, 16) {
            let c = Cut::new(&t.graph, &t.shore).unwrap();
            assert!(is_tight_cut(&t.graph, &c), "{}", t.name);
        }
    }

    #[test]
    fn corpus_is_reproducible() {
        let a = standard_corpus(&mut ChaCha8Rng::seed_from_u64(9), 5);
        let b = standard_corpus(&mut ChaCha8Rng::seed_from_u64(9), 5);
        assert_eq!(
            a.iter().map(|s| s.graph.to_text()).collect::<Vec<_>>(),
            b.iter().map(|s| s.graph.to_text()).collect::<Vec<_>>()
        );
    }
}
