//! Property suites for `corpus`. Each returns a one-line detail on success
//! and the first violation as an error.

use std::collections::BTreeSet;

use matchcover::cuts::{nontrivial_tight_cuts, verify_bounds, CutChooser, FirstFound, LeafKind, ListOrder, SeededChoice};
use matchcover::dependence::removable_classes;
use matchcover::matching::{enumerate_pms, is_matching_covered};
use matchcover::splicing::check_merge;
use matchcover::structure::{canonical_partition, is_barrier, vertex_connectivity};
use matchcover::{classify, equivalence_partition, tight_cut_decomposition, Classification, EdgeId, Error, MultiGraph};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Bounds,
    Uniqueness,
    Merging,
    Structure,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Row {
    pub file: String,
    pub status: Status,
    pub detail: String,
}

/// Cuts examined per graph by the merging suite.
const MERGE_CUT_LIMIT: usize = 4;

pub struct Config {
    pub seed: u64,
    pub budget: usize,
}

pub fn run(suite: Suite, file: &str, text: std::io::Result<String>, cfg: &Config) -> Row {
    let outcome = text
        .map_err(|e| format!("cannot read: {e}"))
        .and_then(|t| MultiGraph::from_text(&t).map_err(|e| e.to_string()))
        .and_then(|g| {
            if !is_matching_covered(&g) {
                return Err("not matching covered".into());
            }
            check(suite, &g, cfg).map_err(|e| match e {
                Error::Capability(m) => format!("undecided: {m}"),
                other => other.to_string(),
            })
        });
    let (status, detail) = match outcome {
        Ok(d) => (Status::Pass, d),
        Err(d) if d.starts_with("undecided: ") => (Status::Undecided, d["undecided: ".len()..].to_string()),
        Err(d) => (Status::Fail, d),
    };
    Row {
        file: file.to_string(),
        status,
        detail,
    }
}

fn violation(msg: impl Into<String>) -> Error {
    Error::Verification {
        statement: "corpus".into(),
        detail: msg.into(),
    }
}

fn check(suite: Suite, g: &MultiGraph, cfg: &Config) -> matchcover::Result<String> {
    match suite {
        Suite::Bounds => bounds(g),
        Suite::Uniqueness => uniqueness(g, cfg.seed),
        Suite::Merging => merging(g),
        Suite::Structure => structure(g),
        Suite::Oracle => oracle(g, cfg.budget),
    }
}

fn bounds(g: &MultiGraph) -> matchcover::Result<String> {
    let r = verify_bounds(g)?;
    let detail = format!(
        "epsilon={} b={} c4={}{}",
        r.epsilon,
        r.b,
        r.c4,
        if r.tight { " tight" } else { "" }
    );
    if r.all_hold() {
        Ok(detail)
    } else {
        Err(violation(format!("bound violated: {detail}")))
    }
}

fn uniqueness(g: &MultiGraph, seed: u64) -> matchcover::Result<String> {
    let mut choosers: Vec<Box<dyn CutChooser>> = vec![
        Box::new(FirstFound),
        Box::new(ListOrder { reverse: false }),
        Box::new(ListOrder { reverse: true }),
    ];
    for k in 0..3 {
        choosers.push(Box::new(SeededChoice::new(seed.wrapping_add(k))));
    }
    let mut first = None;
    for c in &mut choosers {
        let d = tight_cut_decomposition(g, c.as_mut())?;
        let forms = d
            .form_multiset()
            .ok_or_else(|| Error::Capability("leaf too large for a canonical form".into()))?;
        match &first {
            None => first = Some((c.name(), forms, d.leaves.len())),
            Some((name, want, _)) if *want != forms => {
                return Err(violation(format!("{} and {name} give different leaves", c.name())));
            }
            Some(_) => {}
        }
    }
    let leaves = first.map_or(0, |f| f.2);
    Ok(format!("{} strategies agree on {leaves} leaves", choosers.len()))
}

/// For a few tight cuts: classes meeting the cut are unions of the classes
/// of the contractions, and the merge criterion matches the partition for
/// every pair of classes avoiding the cut.
fn merging(g: &MultiGraph) -> matchcover::Result<String> {
    let cuts = nontrivial_tight_cuts(g)?;
    let part = equivalence_partition(g)?;
    let (mut pairs, mut merged) = (0, 0);
    for c in cuts.iter().take(MERGE_CUT_LIMIT) {
        let (a, b) = c.contractions(g)?;
        let (pa, pb) = (equivalence_partition(&a.graph)?, equivalence_partition(&b.graph)?);
        let cut: BTreeSet<EdgeId> = c.edges(g).into_iter().collect();
        for &e in &cut {
            let mut union: Vec<EdgeId> = pa.class_of(e).into_iter().chain(pb.class_of(e)).flatten().copied().collect();
            union.sort();
            union.dedup();
            if part.class_of(e) != Some(union.as_slice()) {
                return Err(violation(format!("class of cut edge {} is not the union", e.0 + 1)));
            }
        }
        let avoiding = |classes: &[Vec<EdgeId>]| -> Vec<Vec<EdgeId>> {
            classes.iter().filter(|f| f.iter().all(|e| !cut.contains(e))).cloned().collect()
        };
        for f1 in avoiding(pa.classes()) {
            for f2 in avoiding(pb.classes()) {
                let v = check_merge(g, c, &f1, &f2)?;
                let mut union: Vec<EdgeId> = f1.iter().chain(&f2).copied().collect();
                union.sort();
                let direct = part.class_of(union[0]) == Some(union.as_slice());
                if v.merged != direct {
                    return Err(violation(format!("merge criterion wrong for {f1:?} and {f2:?}")));
                }
                pairs += 1;
                merged += usize::from(direct);
            }
        }
    }
    Ok(format!(
        "{} tight cuts checked, {pairs} class pairs, {merged} merged",
        cuts.len().min(MERGE_CUT_LIMIT)
    ))
}

fn structure(g: &MultiGraph) -> matchcover::Result<String> {
    let parts = canonical_partition(g)?;
    for p in &parts.parts {
        let stable = g.edges().iter().all(|e| !(p.contains(&e.u) && p.contains(&e.v)));
        if !is_barrier(g, p) || !stable {
            return Err(violation(format!("part {p:?} is not a stable barrier")));
        }
    }
    if g.vertex_count() > 2 {
        if let Some(r) = removable_classes(g)?.iter().find(|r| r.len() > 2) {
            return Err(violation(format!("removable class of size {}", r.len())));
        }
    }
    let part = equivalence_partition(g)?;
    if classify(g)? == Classification::Brick {
        for f in part.classes() {
            match f.as_slice() {
                [_] => {}
                [e, f] => {
                    let h = g.remove_edges(&[*e, *f]);
                    if !h.is_connected() || h.is_bipartite().is_none() {
                        return Err(violation("doubleton brick class without a bipartite complement"));
                    }
                }
                _ => return Err(violation(format!("brick class of size {}", f.len()))),
            }
        }
    }
    let d = tight_cut_decomposition(g, &mut FirstFound)?;
    if (g.is_bipartite().is_some()) != (d.b == 0) {
        return Err(violation(format!("bipartite but b = {}", d.b)));
    }
    for leaf in &d.leaves {
        let n = leaf.vertex_count;
        if (leaf.kind == LeafKind::Brick && n >= 4 || n >= 6) && vertex_connectivity(&leaf.graph) < 3 {
            return Err(violation(format!("leaf of order {n} is not 3-connected")));
        }
    }
    Ok(format!(
        "{} barrier parts, {} classes, {} leaves",
        parts.parts.len(),
        part.len(),
        d.leaves.len()
    ))
}

fn oracle(g: &MultiGraph, budget: usize) -> matchcover::Result<String> {
    let pms = enumerate_pms(g, budget)?;
    let part = equivalence_partition(g)?;
    for f in part.classes() {
        for m in &pms {
            let hit = f.iter().filter(|e| m.contains(**e)).count();
            if hit != 0 && hit != f.len() {
                return Err(violation(format!("a perfect matching splits class {f:?}")));
            }
        }
    }
    for (i, f1) in part.classes().iter().enumerate() {
        for f2 in &part.classes()[i + 1..] {
            if pms.iter().all(|m| m.contains(f1[0]) == m.contains(f2[0])) {
                return Err(violation(format!("classes {f1:?} and {f2:?} are never separated")));
            }
        }
    }
    Ok(format!("{} perfect matchings, {} classes", pms.len(), part.len()))
}
