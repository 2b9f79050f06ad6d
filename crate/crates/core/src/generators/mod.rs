//! Named graphs and the high-connectivity, large-class construction.

pub mod corpus;
mod construction;

pub use construction::{
    build_high_kappa_epsilon, verify_trace, BrickStage, CheckOutcome, Construction,
    ConstructionTrace, Dumped, PiRule, SpliceStage, TraceReport,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};

/// Graphs with a fixed isomorphism type and a deterministic labeling.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    K2,
    K4,
    /// The cycle of length `2n`.
    EvenCycle(usize),
    CompleteBipartite(usize, usize),
    /// The triangular prism, labeled as two triangles joined by a
    /// perfect matching.
    C6Bar,
    /// `C_n x K2`.
    Prism(usize),
    /// A hub joined to every vertex of an `n`-cycle.
    Wheel(usize),
    Petersen,
    /// `C6bar` spliced with `K4`, the brick with a unique removable edge.
    PrismK4,
    /// `K4` spliced with `K3,3` along a barrier cut.
    K4K33,
    Path(usize),
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::K2 => write!(f, "K2"),
            NamedGraph::K4 => write!(f, "K4"),
            NamedGraph::EvenCycle(n) => write!(f, "C{}", 2 * n),
            NamedGraph::CompleteBipartite(m, n) => write!(f, "K{m},{n}"),
            NamedGraph::C6Bar => write!(f, "C6bar"),
            NamedGraph::Prism(n) => write!(f, "prism{n}"),
            NamedGraph::Wheel(n) => write!(f, "W{n}"),
            NamedGraph::Petersen => write!(f, "petersen"),
            NamedGraph::PrismK4 => write!(f, "c6bar-k4"),
            NamedGraph::K4K33 => write!(f, "k4-k33"),
            NamedGraph::Path(n) => write!(f, "P{n}"),
        }
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<NamedGraph> {
        let bad = || Error::domain(format!("unknown named graph '{s}'"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let lower = s.to_ascii_lowercase();
        let id = match lower.as_str() {
            "k2" => NamedGraph::K2,
            "k4" => NamedGraph::K4,
            "c6bar" | "triangular-prism" => NamedGraph::C6Bar,
            "petersen" => NamedGraph::Petersen,
            "c6bar-k4" => NamedGraph::PrismK4,
            "k4-k33" => NamedGraph::K4K33,
            _ => {
                if let Some(rest) = lower.strip_prefix("prism") {
                    NamedGraph::Prism(num(rest)?)
                } else if let Some(rest) = lower.strip_prefix('k') {
                    let (m, n) = rest.split_once(',').ok_or_else(bad)?;
                    NamedGraph::CompleteBipartite(num(m)?, num(n)?)
                } else if let Some(rest) = lower.strip_prefix('c') {
                    let len = num(rest)?;
                    if len % 2 == 1 {
                        return Err(bad());
                    }
                    NamedGraph::EvenCycle(len / 2)
                } else if let Some(rest) = lower.strip_prefix('w') {
                    NamedGraph::Wheel(num(rest)?)
                } else if let Some(rest) = lower.strip_prefix('p') {
                    NamedGraph::Path(num(rest)?)
                } else {
                    return Err(bad());
                }
            }
        };
        Ok(id)
    }
}

fn build(n: usize, edges: &[(u32, u32, Option<&str>)]) -> Result<MultiGraph> {
    let mut g = MultiGraph::with_vertices(n);
    for &(u, v, label) in edges {
        let e = g.add_edge(VertexId(u), VertexId(v))?;
        if let Some(l) = label {
            g.set_edge_label(e, l);
        }
    }
    Ok(g)
}

fn plain(n: usize, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<MultiGraph> {
    let edges: Vec<(u32, u32, Option<&str>)> = pairs.into_iter().map(|(u, v)| (u, v, None)).collect();
    build(n, &edges)
}

pub fn named_graph(id: &NamedGraph) -> Result<MultiGraph> {
    match *id {
        NamedGraph::K2 => plain(2, [(0, 1)]),
        NamedGraph::K4 => plain(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        NamedGraph::EvenCycle(n) => {
            if n < 1 {
                return Err(Error::domain("C2n needs n >= 1"));
            }
            if n == 1 {
                return plain(2, [(0, 1), (0, 1)]);
            }
            let len = 2 * n as u32;
            plain(len as usize, (0..len).map(|i| (i, (i + 1) % len)))
        }
        NamedGraph::CompleteBipartite(m, n) => {
            if m == 0 || n == 0 {
                return Err(Error::domain("K_{m,n} needs m, n >= 1"));
            }
            let (m, n) = (m as u32, n as u32);
            plain(
                (m + n) as usize,
                (0..m).flat_map(|a| (m..m + n).map(move |b| (a, b))),
            )
        }
        NamedGraph::C6Bar => {
            // top triangle 0,1,2 and bottom triangle 3,4,5
            let mut g = build(
                6,
                &[
                    (4, 5, Some("e1")),
                    (1, 2, Some("e2")),
                    (3, 4, Some("f1")),
                    (0, 1, Some("f2")),
                    (3, 5, Some("g1")),
                    (0, 2, Some("g2")),
                    (0, 3, None),
                    (1, 4, None),
                    (2, 5, None),
                ],
            )?;
            label_vertices(&mut g, &["t1", "t2", "t3", "b1", "b2", "b3"]);
            Ok(g)
        }
        NamedGraph::Prism(n) => {
            if n < 3 {
                return Err(Error::domain("prism needs n >= 3"));
            }
            let n = n as u32;
            let outer = (0..n).map(|i| (i, (i + 1) % n));
            let inner = (0..n).map(|i| (n + i, n + (i + 1) % n));
            let spokes = (0..n).map(|i| (i, n + i));
            plain(2 * n as usize, outer.chain(inner).chain(spokes))
        }
        NamedGraph::Wheel(n) => {
            if n < 3 {
                return Err(Error::domain("wheel needs n >= 3"));
            }
            let n = n as u32;
            let spokes = (1..=n).map(|i| (0, i));
            let rim = (0..n).map(|i| (1 + i, 1 + (i + 1) % n));
            let mut g = plain(n as usize + 1, spokes.chain(rim))?;
            g.set_vertex_label(VertexId(0), "hub");
            Ok(g)
        }
        NamedGraph::Petersen => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
            let spokes = (0..5).map(|i| (i, 5 + i));
            plain(10, outer.chain(inner).chain(spokes))
        }
        NamedGraph::PrismK4 => {
            // triangles 0,1,2 and 3,4,5; x = 6 and y = 7 subdivide two rungs
            let mut g = build(
                8,
                &[
                    (4, 5, Some("e1")),
                    (0, 2, Some("e2")),
                    (3, 5, Some("f1")),
                    (1, 2, Some("f2")),
                    (0, 1, None),
                    (3, 4, None),
                    (0, 6, None),
                    (6, 3, None),
                    (1, 7, None),
                    (7, 4, None),
                    (6, 7, None),
                    (2, 5, None),
                ],
            )?;
            label_vertices(&mut g, &["t1", "t2", "t3", "b1", "b2", "b3", "x", "y"]);
            Ok(g)
        }
        NamedGraph::K4K33 => {
            // 0,1 and 2,3,4 are the K3,3 side; 5,6,7 the triangle
            let mut g = build(
                8,
                &[
                    (5, 7, Some("e1")),
                    (3, 6, Some("e2")),
                    (6, 5, Some("f1")),
                    (4, 7, Some("f2")),
                    (6, 7, Some("g1")),
                    (2, 5, Some("g2")),
                    (0, 2, None),
                    (0, 3, None),
                    (0, 4, None),
                    (1, 2, None),
                    (1, 3, None),
                    (1, 4, None),
                ],
            )?;
            label_vertices(&mut g, &["p1", "p2", "m1", "m2", "m3", "q1", "q2", "q3"]);
            Ok(g)
        }
        NamedGraph::Path(n) => {
            if n < 1 {
                return Err(Error::domain("path needs n >= 1"));
            }
            let n = n as u32;
            plain(n as usize, (0..n.saturating_sub(1)).map(|i| (i, i + 1)))
        }
    }
}

fn label_vertices(g: &mut MultiGraph, labels: &[&str]) {
    for (i, l) in labels.iter().enumerate() {
        g.set_vertex_label(VertexId(i as u32), *l);
    }
}

/// Shore of the splicing cut drawn with a thick line in the figure graphs.
pub fn depicted_cut_shore(id: &NamedGraph) -> Option<Vec<VertexId>> {
    let ids = |xs: &[u32]| xs.iter().map(|&x| VertexId(x)).collect();
    match id {
        NamedGraph::C6Bar | NamedGraph::PrismK4 => Some(ids(&[0, 1, 2])),
        NamedGraph::K4K33 => Some(ids(&[5, 6, 7])),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::is_matching_covered;
    use crate::structure::vertex_connectivity;

    #[test]
    fn sizes() {
        let cases = [
            (NamedGraph::EvenCycle(3), 6, 6),
            (NamedGraph::C6Bar, 6, 9),
            (NamedGraph::Petersen, 10, 15),
            (NamedGraph::Wheel(5), 6, 10),
            (NamedGraph::Prism(5), 10, 15),
            (NamedGraph::PrismK4, 8, 12),
            (NamedGraph::K4K33, 8, 12),
            (NamedGraph::CompleteBipartite(3, 3), 6, 9),
        ];
        for (id, n, m) in cases {
            let g = named_graph(&id).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (n, m), "{id}");
            assert!(g.is_simple());
        }
    }

    #[test]
    fn c6bar_is_nonbipartite_and_matching_covered() {
        let g = named_graph(&NamedGraph::C6Bar).unwrap();
        assert!(g.is_bipartite().is_none());
        assert!(is_matching_covered(&g));
    }

    #[test]
    fn petersen_is_three_connected() {
        let g = named_graph(&NamedGraph::Petersen).unwrap();
        assert_eq!(vertex_connectivity(&g), 3);
        assert!(is_matching_covered(&g));
    }

    #[test]
    fn names_round_trip() {
        for s in ["K2", "K4", "C8", "K3,4", "C6bar", "prism5", "W5", "petersen", "c6bar-k4", "k4-k33", "P4"] {
            let id: NamedGraph = s.parse().unwrap();
            assert_eq!(id.to_string(), s);
        }
        assert!("C7".parse::<NamedGraph>().is_err());
        assert!("nonsense".parse::<NamedGraph>().is_err());
    }
}
