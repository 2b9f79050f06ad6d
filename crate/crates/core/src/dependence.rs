//! Dependence between edges, the partition into classes of mutually
//! dependent edges, and removability.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph};
use crate::matching::{is_matching_covered, PmOracle};

/// `e -> f`: every perfect matching containing `e` also contains `f`.
/// Reflexive. Decided as "e is inadmissible in g - f".
pub fn depends_on(g: &MultiGraph, e: EdgeId, f: EdgeId) -> Result<bool> {
    g.require_edge(e)?;
    g.require_edge(f)?;
    if e == f {
        return Ok(true);
    }
    Ok(!PmOracle::new(g).extends_avoiding(&[e], &[f]))
}

pub fn mutually_dependent(g: &MultiGraph, e: EdgeId, f: EdgeId) -> Result<bool> {
    Ok(depends_on(g, e, f)? && depends_on(g, f, e)?)
}

/// Edges `e != f` that depend on `f`, i.e. the inadmissible edges of
/// `g - f`. Every perfect matching found along the way certifies all of
/// its edges at once, so far fewer than `m` matching calls are needed.
fn dependents(oracle: &PmOracle<'_>, f: EdgeId) -> Vec<EdgeId> {
    let g = oracle.graph();
    let mut admissible: BTreeMap<EdgeId, bool> = g.edge_ids().into_iter().map(|e| (e, false)).collect();
    let mut out = Vec::new();
    for e in g.edge_ids() {
        if e == f || admissible[&e] {
            continue;
        }
        match oracle.perfect_matching(&[e], &[f]) {
            Some(m) => {
                for &x in m.edges() {
                    admissible.insert(x, true);
                }
            }
            None => out.push(e),
        }
    }
    out
}

/// Full dependence relation: `row[j]` lists the edges depending on edge `j`
/// (by position in `g.edges()`), computed in parallel over `j`.
pub(crate) fn dependence_rows(g: &MultiGraph) -> Vec<Vec<EdgeId>> {
    let oracle = PmOracle::new(g);
    g.edge_ids()
        .par_iter()
        .map(|&f| dependents(&oracle, f))
        .collect()
}

/// The partition of the edge set into equivalence classes of `<->`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalencePartition {
    classes: Vec<Vec<EdgeId>>,
    #[serde(skip)]
    index: BTreeMap<EdgeId, usize>,
}

impl EquivalencePartition {
    fn from_classes(mut classes: Vec<Vec<EdgeId>>) -> EquivalencePartition {
        for c in &mut classes {
            c.sort();
        }
        classes.sort();
        let mut index = BTreeMap::new();
        for (i, c) in classes.iter().enumerate() {
            for &e in c {
                index.insert(e, i);
            }
        }
        EquivalencePartition { classes, index }
    }

    /// Classes ordered by least edge id, each ascending.
    pub fn classes(&self) -> &[Vec<EdgeId>] {
        &self.classes
    }

    pub fn epsilon(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn class_of(&self, e: EdgeId) -> Option<&[EdgeId]> {
        self.index.get(&e).map(|&i| self.classes[i].as_slice())
    }

    pub fn class_index(&self, e: EdgeId) -> Option<usize> {
        self.index.get(&e).copied()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn equivalence_partition(g: &MultiGraph) -> Result<EquivalencePartition> {
    if !is_matching_covered(g) {
        return Err(Error::domain("equivalence classes need a matching covered graph"));
    }
    let rows = dependence_rows(g);
    Ok(partition_from_rows(g, &rows))
}

pub(crate) fn partition_from_rows(g: &MultiGraph, rows: &[Vec<EdgeId>]) -> EquivalencePartition {
    let ids = g.edge_ids();
    let m = ids.len();
    let pos = |e: EdgeId| g.edge_index(e).expect("edge of g");
    let mut dep = vec![vec![false; m]; m];
    for (j, row) in rows.iter().enumerate() {
        for &e in row {
            // e -> ids[j]
            dep[pos(e)][j] = true;
        }
    }
    let mut parent: Vec<usize> = (0..m).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..m {
        for j in (i + 1)..m {
            if dep[i][j] && dep[j][i] {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
    for (i, &e) in ids.iter().enumerate() {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(e);
    }
    EquivalencePartition::from_classes(groups.into_values().collect())
}

pub fn epsilon(g: &MultiGraph) -> Result<usize> {
    Ok(equivalence_partition(g)?.epsilon())
}

fn reject_k2(g: &MultiGraph) -> Result<()> {
    if g.vertex_count() == 2 && g.edge_count() == 1 {
        return Err(Error::domain("removability is undefined for K2"));
    }
    Ok(())
}

/// Whether `g - e` is matching covered.
pub fn is_removable_edge(g: &MultiGraph, e: EdgeId) -> Result<bool> {
    g.require_edge(e)?;
    reject_k2(g)?;
    Ok(is_matching_covered(&g.remove_edges(&[e])))
}

/// Classes `R` of the partition with `g - R` matching covered.
pub fn removable_classes(g: &MultiGraph) -> Result<Vec<Vec<EdgeId>>> {
    reject_k2(g)?;
    let part = equivalence_partition(g)?;
    Ok(part
        .classes()
        .iter()
        .filter(|r| is_matching_covered(&g.remove_edges(r)))
        .cloned()
        .collect())
}

/// Edges on which no other edge depends. For a matching covered graph
/// other than `K2` these are exactly the removable edges.
pub fn independent_edges(g: &MultiGraph) -> Vec<EdgeId> {
    let rows = dependence_rows(g);
    g.edge_ids()
        .into_iter()
        .zip(rows)
        .filter(|(_, row)| row.is_empty())
        .map(|(e, _)| e)
        .collect()
}
