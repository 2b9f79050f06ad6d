//! Finite loopless multigraphs with stable vertex and edge identifiers.
//!
//! Edges are first-class: two parallel edges are different objects, and
//! deleting or contracting never renumbers whatever survives. Every derived
//! graph keeps the id counters of its parent, so fresh ids handed out later
//! (contraction vertices, splice remaps) never collide with deleted ones.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn other(&self, w: VertexId) -> VertexId {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn is_incident(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }

    pub fn shares_end(&self, other: &Edge) -> bool {
        self.is_incident(other.u) || self.is_incident(other.v)
    }

    /// Endpoints in ascending id order.
    pub fn key(&self) -> (VertexId, VertexId) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }
}

/// Two color classes of a bipartite graph. `a` holds the lowest vertex of
/// every component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
}

impl Bipartition {
    pub fn side_of(&self, v: VertexId) -> Option<bool> {
        if self.a.binary_search(&v).is_ok() {
            Some(true)
        } else if self.b.binary_search(&v).is_ok() {
            Some(false)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiGraph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    vertex_labels: BTreeMap<VertexId, String>,
    edge_labels: BTreeMap<EdgeId, String>,
    next_vertex: u32,
    next_edge: u32,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` and no edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Builds a graph on `0..n` from an edge list; parallel pairs become
    /// parallel edges with consecutive ids.
    pub fn from_edges(n: usize, pairs: &[(u32, u32)]) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for &(u, v) in pairs {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.vertices.push(id);
        id
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        if u == v {
            return Err(Error::domain(format!("loop at {u} is not allowed")));
        }
        if !self.has_vertex(u) || !self.has_vertex(v) {
            return Err(Error::domain(format!("edge {u}-{v} has an unknown endpoint")));
        }
        let id = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.push(Edge { id, u, v });
        Ok(id)
    }

    pub fn set_vertex_label(&mut self, v: VertexId, label: impl Into<String>) {
        self.vertex_labels.insert(v, label.into());
    }

    pub fn set_edge_label(&mut self, e: EdgeId, label: impl Into<String>) {
        self.edge_labels.insert(e, label.into());
    }

    pub fn vertex_label(&self, v: VertexId) -> Option<&str> {
        self.vertex_labels.get(&v).map(String::as_str)
    }

    pub fn edge_label(&self, e: EdgeId) -> Option<&str> {
        self.edge_labels.get(&e).map(String::as_str)
    }

    pub fn edge_by_label(&self, label: &str) -> Option<EdgeId> {
        self.edge_labels
            .iter()
            .find(|(_, l)| l.as_str() == label)
            .map(|(&e, _)| e)
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.vertex_labels
            .iter()
            .find(|(_, l)| l.as_str() == label)
            .map(|(&v, _)| v)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges.iter().map(|e| e.id).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Next id `add_vertex` would hand out; always above every id ever used.
    pub fn next_vertex_id(&self) -> VertexId {
        VertexId(self.next_vertex)
    }

    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.next_edge)
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edge_index(e).is_some()
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn edge_index(&self, e: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&e, |x| x.id).ok()
    }

    pub fn edge(&self, e: EdgeId) -> Option<&Edge> {
        self.edge_index(e).map(|i| &self.edges[i])
    }

    pub(crate) fn require_edge(&self, e: EdgeId) -> Result<&Edge> {
        self.edge(e)
            .ok_or_else(|| Error::domain(format!("unknown edge {e}")))
    }

    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.is_incident(v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident_edges(v).count()
    }

    pub fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.incident_edges(v).map(|e| e.other(v)).collect()
    }

    /// Edges with both ends `u` and `v`, in id order.
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|e| e.is_incident(u) && e.other(u) == v)
            .map(|e| e.id)
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert(e.key()))
    }

    /// Set of edges with exactly one end in `shore`.
    pub fn boundary(&self, shore: &[VertexId]) -> Vec<EdgeId> {
        let set: BTreeSet<VertexId> = shore.iter().copied().collect();
        self.edges
            .iter()
            .filter(|e| set.contains(&e.u) != set.contains(&e.v))
            .map(|e| e.id)
            .collect()
    }

    pub fn remove_edges(&self, ids: &[EdgeId]) -> MultiGraph {
        let drop: BTreeSet<EdgeId> = ids.iter().copied().collect();
        let mut g = self.clone();
        g.edges.retain(|e| !drop.contains(&e.id));
        g.edge_labels.retain(|e, _| !drop.contains(e));
        g
    }

    pub fn remove_vertices(&self, vs: &[VertexId]) -> MultiGraph {
        let drop: BTreeSet<VertexId> = vs.iter().copied().collect();
        let mut g = self.clone();
        g.vertices.retain(|v| !drop.contains(v));
        g.vertex_labels.retain(|v, _| !drop.contains(v));
        g.edges
            .retain(|e| !drop.contains(&e.u) && !drop.contains(&e.v));
        let alive: BTreeSet<EdgeId> = g.edges.iter().map(|e| e.id).collect();
        g.edge_labels.retain(|e, _| alive.contains(e));
        g
    }

    pub fn induced(&self, keep: &[VertexId]) -> MultiGraph {
        let keep: BTreeSet<VertexId> = keep.iter().copied().collect();
        let drop: Vec<VertexId> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| !keep.contains(v))
            .collect();
        self.remove_vertices(&drop)
    }

    /// Shrinks `shore` to a single fresh vertex. Edges inside the shore
    /// disappear; edges of the cut keep their ids with one end rewired.
    pub fn contract(&self, shore: &[VertexId]) -> Result<(MultiGraph, VertexId)> {
        let set: BTreeSet<VertexId> = shore.iter().copied().collect();
        if set.is_empty() || set.len() >= self.vertex_count() {
            return Err(Error::domain("contraction shore must be nonempty and proper"));
        }
        if let Some(v) = set.iter().find(|v| !self.has_vertex(**v)) {
            return Err(Error::domain(format!("shore vertex {v} is not in the graph")));
        }
        let mut g = self.clone();
        let x = VertexId(g.next_vertex);
        g.next_vertex += 1;
        g.vertices.retain(|v| !set.contains(v));
        g.vertices.push(x);
        g.vertex_labels.retain(|v, _| !set.contains(v));
        g.edges.retain(|e| !(set.contains(&e.u) && set.contains(&e.v)));
        for e in &mut g.edges {
            if set.contains(&e.u) {
                e.u = x;
            } else if set.contains(&e.v) {
                e.v = x;
            }
        }
        let alive: BTreeSet<EdgeId> = g.edges.iter().map(|e| e.id).collect();
        g.edge_labels.retain(|e, _| alive.contains(e));
        Ok((g, x))
    }

    /// One edge per adjacent pair, keeping the lowest id.
    pub fn underlying_simple(&self) -> MultiGraph {
        let mut seen = BTreeSet::new();
        let mut g = self.clone();
        g.edges.retain(|e| seen.insert(e.key()));
        let alive: BTreeSet<EdgeId> = g.edges.iter().map(|e| e.id).collect();
        g.edge_labels.retain(|e, _| alive.contains(e));
        g
    }

    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.components_without(&[])
    }

    /// Components of `self - removed`, each sorted, listed by lowest vertex.
    pub fn components_without(&self, removed: &[VertexId]) -> Vec<Vec<VertexId>> {
        let d = Dense::new(self);
        let mut alive = vec![true; d.n];
        for v in removed {
            if let Some(i) = self.vertex_index(*v) {
                alive[i] = false;
            }
        }
        d.components(&alive)
            .into_iter()
            .map(|c| c.into_iter().map(|i| d.ids[i]).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn odd_components_count(&self, removed: &[VertexId]) -> usize {
        self.components_without(removed)
            .iter()
            .filter(|c| c.len() % 2 == 1)
            .count()
    }

    pub fn is_bipartite(&self) -> Option<Bipartition> {
        let d = Dense::new(self);
        let color = d.two_coloring()?;
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, c) in color.into_iter().enumerate() {
            if c {
                a.push(d.ids[i]);
            } else {
                b.push(d.ids[i]);
            }
        }
        Some(Bipartition { a, b })
    }

    /// Relabels vertices to `0..n` and edges to `0..m`, preserving order.
    /// Returns the old-to-new maps alongside.
    pub fn compacted(&self) -> (MultiGraph, BTreeMap<VertexId, VertexId>, BTreeMap<EdgeId, EdgeId>) {
        let vmap: BTreeMap<VertexId, VertexId> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, VertexId(i as u32)))
            .collect();
        let emap: BTreeMap<EdgeId, EdgeId> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id, EdgeId(i as u32)))
            .collect();
        let g = self.relabeled(&vmap, &emap);
        (g, vmap, emap)
    }

    /// Applies id maps (which must be injective and cover the graph).
    pub(crate) fn relabeled(
        &self,
        vmap: &BTreeMap<VertexId, VertexId>,
        emap: &BTreeMap<EdgeId, EdgeId>,
    ) -> MultiGraph {
        let mut vertices: Vec<VertexId> = self.vertices.iter().map(|v| vmap[v]).collect();
        vertices.sort();
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                id: emap[&e.id],
                u: vmap[&e.u],
                v: vmap[&e.v],
            })
            .collect();
        edges.sort_by_key(|e| e.id);
        let next_vertex = vertices.last().map_or(0, |v| v.0 + 1);
        let next_edge = edges.last().map_or(0, |e| e.id.0 + 1);
        MultiGraph {
            vertices,
            edges,
            vertex_labels: self
                .vertex_labels
                .iter()
                .map(|(v, l)| (vmap[v], l.clone()))
                .collect(),
            edge_labels: self
                .edge_labels
                .iter()
                .map(|(e, l)| (emap[e], l.clone()))
                .collect(),
            next_vertex,
            next_edge,
        }
    }

    /// Assembles a graph from explicit ids. Used by splicing, which has to
    /// place edges at chosen ids.
    pub(crate) fn from_parts(
        mut vertices: Vec<VertexId>,
        mut edges: Vec<Edge>,
        vertex_labels: BTreeMap<VertexId, String>,
        edge_labels: BTreeMap<EdgeId, String>,
        next_vertex: u32,
        next_edge: u32,
    ) -> MultiGraph {
        vertices.sort();
        edges.sort_by_key(|e| e.id);
        let next_vertex = next_vertex.max(vertices.last().map_or(0, |v| v.0 + 1));
        let next_edge = next_edge.max(edges.last().map_or(0, |e| e.id.0 + 1));
        MultiGraph {
            vertices,
            edges,
            vertex_labels,
            edge_labels,
            next_vertex,
            next_edge,
        }
    }

    pub(crate) fn labels(&self) -> (&BTreeMap<VertexId, String>, &BTreeMap<EdgeId, String>) {
        (&self.vertex_labels, &self.edge_labels)
    }

    /// Serializes in the `p n m` / `e u v` text format. Vertices are written
    /// by 1-based position, edges in id order.
    pub fn to_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.vertex_count(), self.edge_count());
        for e in &self.edges {
            let u = self.vertex_index(e.u).expect("edge endpoint") + 1;
            let v = self.vertex_index(e.v).expect("edge endpoint") + 1;
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }

    /// Parses the text format. Vertex `k` becomes `VertexId(k - 1)` and the
    /// `j`-th edge line becomes `EdgeId(j - 1)`.
    pub fn from_text(text: &str) -> Result<MultiGraph> {
        let mut header: Option<(usize, usize)> = None;
        let mut g = MultiGraph::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let mut tokens = line.split_whitespace();
            let tag = tokens.next().unwrap_or_default();
            let nums: Vec<&str> = tokens.collect();
            let numbers = |expected: usize| -> Result<Vec<usize>> {
                if nums.len() != expected {
                    return Err(parse_err(format!(
                        "expected {expected} numbers, found {}",
                        nums.len()
                    )));
                }
                nums.iter()
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| parse_err(format!("'{t}' is not a nonnegative integer")))
                    })
                    .collect()
            };
            match tag {
                "p" => {
                    if header.is_some() {
                        return Err(parse_err("duplicate 'p' line".into()));
                    }
                    let v = numbers(2)?;
                    header = Some((v[0], v[1]));
                    g = MultiGraph::with_vertices(v[0]);
                }
                "e" => {
                    let Some((n, m)) = header else {
                        return Err(parse_err("'e' line before the 'p' line".into()));
                    };
                    let v = numbers(2)?;
                    if v[0] == 0 || v[1] == 0 || v[0] > n || v[1] > n {
                        return Err(parse_err(format!("vertex out of range 1..={n}")));
                    }
                    if v[0] == v[1] {
                        return Err(parse_err("loops are not allowed".into()));
                    }
                    if g.edge_count() == m {
                        return Err(parse_err(format!("more than the declared {m} edges")));
                    }
                    g.add_edge(VertexId(v[0] as u32 - 1), VertexId(v[1] as u32 - 1))?;
                }
                other => return Err(parse_err(format!("unknown line type '{other}'"))),
            }
        }
        let Some((_, m)) = header else {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: "missing 'p' line".into(),
            });
        };
        if g.edge_count() != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("declared {m} edges, found {}", g.edge_count()),
            });
        }
        Ok(g)
    }
}

/// A cut, given by one of its shores. The shore is kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cut {
    shore: Vec<VertexId>,
}

impl Cut {
    pub fn new(g: &MultiGraph, shore: &[VertexId]) -> Result<Cut> {
        let set: BTreeSet<VertexId> = shore.iter().copied().collect();
        if set.is_empty() || set.len() >= g.vertex_count() {
            return Err(Error::domain("cut shore must be a nonempty proper vertex subset"));
        }
        if let Some(v) = set.iter().find(|v| !g.has_vertex(**v)) {
            return Err(Error::domain(format!("shore vertex {v} is not in the graph")));
        }
        Ok(Cut {
            shore: set.into_iter().collect(),
        })
    }

    pub(crate) fn from_sorted(shore: Vec<VertexId>) -> Cut {
        debug_assert!(shore.windows(2).all(|w| w[0] < w[1]));
        Cut { shore }
    }

    pub fn shore(&self) -> &[VertexId] {
        &self.shore
    }

    pub fn complement(&self, g: &MultiGraph) -> Vec<VertexId> {
        g.vertices()
            .iter()
            .copied()
            .filter(|v| self.shore.binary_search(v).is_err())
            .collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.shore.binary_search(&v).is_ok()
    }

    pub fn edges(&self, g: &MultiGraph) -> Vec<EdgeId> {
        g.boundary(&self.shore)
    }

    pub fn is_trivial(&self, g: &MultiGraph) -> bool {
        self.shore.len() == 1 || g.vertex_count() - self.shore.len() == 1
    }

    pub fn is_odd(&self) -> bool {
        self.shore.len() % 2 == 1
    }

    /// The same cut described by the shore avoiding the lowest vertex of
    /// `g`; equal cuts get equal normal forms.
    pub fn normalized(&self, g: &MultiGraph) -> Cut {
        match g.vertices().first() {
            Some(first) if self.contains(*first) => Cut {
                shore: self.complement(g),
            },
            _ => self.clone(),
        }
    }

    /// `G/X̄`: keeps this shore, shrinks the other one.
    pub fn shore_side(&self, g: &MultiGraph) -> Result<Contraction> {
        let (graph, vertex) = g.contract(&self.complement(g))?;
        Ok(Contraction { graph, vertex })
    }

    /// `G/X`: shrinks this shore.
    pub fn far_side(&self, g: &MultiGraph) -> Result<Contraction> {
        let (graph, vertex) = g.contract(&self.shore)?;
        Ok(Contraction { graph, vertex })
    }

    /// Both contractions, ordered (shore side, far side).
    pub fn contractions(&self, g: &MultiGraph) -> Result<(Contraction, Contraction)> {
        Ok((self.shore_side(g)?, self.far_side(g)?))
    }
}

/// A contraction of a graph together with the vertex the shore became.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub graph: MultiGraph,
    pub vertex: VertexId,
}

/// Index-based adjacency view used by the algorithms.
#[derive(Debug, Clone)]
pub(crate) struct Dense {
    pub n: usize,
    pub ids: Vec<VertexId>,
    pub ends: Vec<(usize, usize)>,
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl Dense {
    pub fn new(g: &MultiGraph) -> Dense {
        let n = g.vertex_count();
        let mut adj = vec![Vec::new(); n];
        let mut ends = Vec::with_capacity(g.edge_count());
        for (k, e) in g.edges().iter().enumerate() {
            let a = g.vertex_index(e.u).expect("endpoint");
            let b = g.vertex_index(e.v).expect("endpoint");
            adj[a].push((b, k));
            adj[b].push((a, k));
            ends.push((a, b));
        }
        Dense {
            n,
            ids: g.vertices().to_vec(),
            ends,
            adj,
        }
    }

    pub fn components(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !alive[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adj[x] {
                    if alive[y] && !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// `true` marks the side of each component's lowest vertex.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(true);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].expect("colored");
                for &(y, _) in &self.adj[x] {
                    match color[y] {
                        None => {
                            color[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.expect("colored")).collect())
    }
}
