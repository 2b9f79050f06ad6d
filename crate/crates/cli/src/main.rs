//! `matchcover`: analyze, splice, construct and batch-check matching
//! covered graphs stored in the `p n m` / `e u v` text format.
//!
//! Exit codes: 0 success, 1 bad input or failed check, 2 input not
//! matching covered, 3 undecided because of a size limit.

mod report;
mod suite;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use matchcover::generators::{verify_trace, Construction, PiRule};
use matchcover::matching::DEFAULT_PM_BUDGET;
use matchcover::splicing::splice_variant_graphs;
use matchcover::{named_graph, splice, EdgeId, Error, MultiGraph, NamedGraph, SpliceSpec, VertexId};
use rayon::prelude::*;
use serde::Serialize;

use report::{eids, vids, Strategy, SCHEMA};

const EXIT_NOT_COVERED: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

#[derive(Parser)]
#[command(name = "matchcover", version, about = "Matching covered graph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report matchability, classes, cuts, classification and bounds.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Include the tight cut decomposition tree.
        #[arg(long)]
        decompose: bool,
        #[arg(long, value_enum, default_value = "first-found")]
        strategy: Strategy,
        /// Cross-check against perfect matching enumeration.
        #[arg(long)]
        oracle_check: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Splice two graphs at a vertex of equal degree in each.
    Splice {
        path1: PathBuf,
        v1: u32,
        path2: PathBuf,
        v2: u32,
        /// Edge pairs `a=b` from the first file's star to the second's.
        #[arg(long, conflicts_with = "all_variants")]
        pi: Option<String>,
        /// One file per isomorphism class over every bijection.
        #[arg(long, requires = "out")]
        all_variants: bool,
        /// Output file, or directory with `--all-variants`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a graph with connectivity at least p and a class of size q.
    Construct {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, requires = "anchor")]
        brace: Option<PathBuf>,
        #[arg(long, requires = "brace")]
        anchor: Option<u32>,
        #[arg(long)]
        verify: bool,
        /// Pair the stars out of alignment (a control that must fail).
        #[arg(long)]
        misaligned: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite over every `.g` file of a directory.
    Corpus {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, value_enum)]
        check: suite::Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print a named graph (K4, C6, K3,3, W5, prism5, petersen, ...).
    Named {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let undecided = matches!(e.downcast_ref::<Error>(), Some(Error::Capability(_)));
            ExitCode::from(if undecided { EXIT_UNDECIDED } else { 1 })
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Analyze {
            path,
            json,
            decompose,
            strategy,
            oracle_check,
            seed,
        } => analyze(&path, json, decompose.then_some((strategy, seed)), oracle_check),
        Command::Splice {
            path1,
            v1,
            path2,
            v2,
            pi,
            all_variants,
            out,
        } => splice_cmd(&path1, v1, &path2, v2, pi.as_deref(), all_variants, out.as_deref()),
        Command::Construct {
            p,
            q,
            brace,
            anchor,
            verify,
            misaligned,
            out,
        } => construct(p, q, brace.as_deref().zip(anchor), verify, misaligned, out),
        Command::Corpus { dir, check, seed, json } => corpus(&dir, check, seed, json),
        Command::Named { name, out } => {
            let id: NamedGraph = name.parse()?;
            let g = named_graph(&id)?;
            emit(&graph_file(&g, &[id.to_string()]), out.as_deref())?;
            Ok(0)
        }
    }
}

fn budget() -> anyhow::Result<usize> {
    match std::env::var("MATCHCOVER_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| anyhow!("MATCHCOVER_BUDGET must be a count, got '{v}'")),
        Err(_) => Ok(DEFAULT_PM_BUDGET),
    }
}

fn read_graph(path: &Path) -> anyhow::Result<MultiGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    MultiGraph::from_text(&text).with_context(|| format!("in {}", path.display()))
}

/// Text form of `g` with ids compacted, so it re-parses to the same ids,
/// preceded by comment lines and the edge labels.
fn graph_file(g: &MultiGraph, comments: &[String]) -> String {
    let (h, _, _) = g.compacted();
    let mut s: String = comments.iter().map(|c| format!("# {c}\n")).collect();
    for e in h.edge_ids() {
        if let Some(l) = h.edge_label(e) {
            s.push_str(&format!("# edge {}: {l}\n", e.0 + 1));
        }
    }
    s.push_str(&h.to_text());
    s
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(x: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(x)? + "\n")
}

fn analyze(path: &Path, json: bool, decompose: Option<(Strategy, u64)>, oracle_check: bool) -> anyhow::Result<u8> {
    let g = read_graph(path)?;
    let opts = report::Options {
        decompose,
        oracle_budget: if oracle_check { Some(budget()?) } else { None },
    };
    let r = report::analyze(&g, &opts)?;
    if json {
        print!("{}", to_json(&r)?);
    } else {
        print!("{}", r.to_text());
    }
    Ok(if !r.flags.matching_covered {
        EXIT_NOT_COVERED
    } else if !r.undecided.is_empty() {
        EXIT_UNDECIDED
    } else {
        0
    })
}

fn vertex(g: &MultiGraph, v: u32, path: &Path) -> anyhow::Result<VertexId> {
    let id = VertexId(v.wrapping_sub(1));
    if v == 0 || !g.has_vertex(id) {
        return Err(Error::Domain(format!("{} has no vertex {v}", path.display())).into());
    }
    Ok(id)
}

fn parse_pi(s: &str) -> anyhow::Result<Vec<(EdgeId, EdgeId)>> {
    s.split(',')
        .map(|pair| {
            let (a, b) = pair.split_once('=').ok_or_else(|| anyhow!("--pi entry '{pair}' is not a=b"))?;
            let num = |t: &str| -> anyhow::Result<EdgeId> {
                let k: u32 = t.trim().parse().with_context(|| format!("--pi entry '{pair}'"))?;
                if k == 0 {
                    bail!("--pi edge ids start at 1");
                }
                Ok(EdgeId(k - 1))
            };
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

fn splice_comments(s: &matchcover::splicing::Splice, origin: &str) -> (MultiGraph, Vec<String>) {
    let (h, vmap, emap) = s.graph.compacted();
    let shore: Vec<VertexId> = s.cut.shore().iter().map(|v| vmap[v]).collect();
    let mut cut: Vec<EdgeId> = s.cut.edges(&s.graph).iter().map(|e| emap[e]).collect();
    cut.sort();
    let join = |xs: Vec<u32>| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let comments = vec![
        origin.to_string(),
        format!("cut shore: {}", join(vids(&shore))),
        format!("cut edges: {}", join(eids(&cut))),
    ];
    (h, comments)
}

fn splice_cmd(
    path1: &Path,
    v1: u32,
    path2: &Path,
    v2: u32,
    pi: Option<&str>,
    all_variants: bool,
    out: Option<&Path>,
) -> anyhow::Result<u8> {
    let g1 = read_graph(path1)?;
    let g2 = read_graph(path2)?;
    let (a, b) = (vertex(&g1, v1, path1)?, vertex(&g2, v2, path2)?);
    let origin = format!("splice of {} at {v1} with {} at {v2}", path1.display(), path2.display());
    if all_variants {
        let dir = out.expect("clap requires --out");
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let variants = splice_variant_graphs(&g1, a, &g2, b)?;
        for (k, (form, s)) in variants.iter().enumerate() {
            let (h, mut comments) = splice_comments(s, &origin);
            comments.push(format!("canonical form: {}", form.to_hex()));
            let name = format!("variant-{:02}.g", k + 1);
            fs::write(dir.join(&name), graph_file(&h, &comments))?;
            println!("{name}: {} vertices, {} edges", h.vertex_count(), h.edge_count());
        }
        return Ok(0);
    }
    let spec = match pi {
        Some(p) => SpliceSpec {
            g1: &g1,
            v1: a,
            g2: &g2,
            v2: b,
            pi: parse_pi(p)?,
        },
        None => SpliceSpec::in_order(&g1, a, &g2, b),
    };
    let s = splice(&spec)?;
    let (h, comments) = splice_comments(&s, &origin);
    let text = graph_file(&h, &comments);
    emit(&text, out)?;
    if let Some(p) = out {
        println!("{}: {} vertices, {} edges", p.display(), h.vertex_count(), h.edge_count());
        println!("{}", comments[1..].join("\n"));
    }
    Ok(0)
}

#[derive(Serialize)]
struct Versioned<'a, T> {
    schema: u32,
    #[serde(flatten)]
    body: &'a T,
}

fn construct(
    p: usize,
    q: usize,
    brace: Option<(&Path, u32)>,
    verify: bool,
    misaligned: bool,
    out: Option<PathBuf>,
) -> anyhow::Result<u8> {
    let mut c = Construction::new(p, q);
    if let Some((path, anchor)) = brace {
        let h = read_graph(path)?;
        let a = vertex(&h, anchor, path)?;
        c.brace = Some((h, a));
    }
    if misaligned {
        c.pi_rule = PiRule::Misaligned;
    }
    let t = c.build()?;
    let dir = out.unwrap_or_else(|| PathBuf::from(format!("construction-p{p}-q{q}")));
    fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut files = vec![
        ("brace.g".to_string(), &t.brace.0, "brace H".to_string()),
        ("g0.g".to_string(), &t.g0.0, "G0".to_string()),
    ];
    for (i, b) in t.bricks.iter().enumerate() {
        files.push((format!("j{}.g", i + 1), &b.graph.0, format!("brick J{}", i + 1)));
    }
    for (i, s) in t.stages.iter().enumerate() {
        files.push((format!("g{}.g", i + 1), &s.graph.0, format!("G{}", i + 1)));
    }
    for (name, g, title) in &files {
        fs::write(dir.join(name), graph_file(g, &[format!("{title}, p = {p}, q = {q}")]))?;
    }
    #[derive(Serialize)]
    struct TraceFile<'a> {
        trace: &'a matchcover::generators::ConstructionTrace,
    }
    fs::write(dir.join("trace.json"), to_json(&Versioned { schema: SCHEMA, body: &TraceFile { trace: &t } })?)?;
    let g = t.final_graph();
    println!(
        "wrote {} graphs and trace.json to {}; final graph has {} vertices, {} edges",
        files.len(),
        dir.display(),
        g.vertex_count(),
        g.edge_count()
    );
    if !verify {
        return Ok(0);
    }
    let r = verify_trace(&t)?;
    #[derive(Serialize)]
    struct ReportFile<'a> {
        report: &'a matchcover::generators::TraceReport,
    }
    fs::write(dir.join("verify.json"), to_json(&Versioned { schema: SCHEMA, body: &ReportFile { report: &r } })?)?;
    for ch in &r.checks {
        let stage = ch.stage.map_or(String::new(), |s| format!(" [stage {s}]"));
        let mark = if ch.passed { "PASS" } else { "FAIL" };
        println!("{mark} {}{stage}: {}", ch.check, ch.detail);
    }
    println!("kappa = {}", r.kappa);
    println!("epsilon = {}", r.epsilon);
    println!("vertices = {} (expected {})", r.vertex_count, r.expected_vertex_count);
    let failed = r.failures().len();
    if failed == 0 {
        println!("all {} checks passed", r.checks.len());
        Ok(0)
    } else {
        println!("{failed} of {} checks failed", r.checks.len());
        Ok(1)
    }
}

fn corpus(dir: &Path, check: suite::Suite, seed: u64, json: bool) -> anyhow::Result<u8> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot read {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.is_file() && p.extension().is_some_and(|x| x == "g"));
    files.sort();
    let cfg = suite::Config { seed, budget: budget()? };
    let rows: Vec<suite::Row> = files
        .par_iter()
        .map(|p| {
            let name = p.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
            suite::run(check, &name, fs::read_to_string(p), &cfg)
        })
        .collect();
    let count = |s: suite::Status| rows.iter().filter(|r| r.status == s).count();
    let (failed, undecided) = (count(suite::Status::Fail), count(suite::Status::Undecided));
    if json {
        #[derive(Serialize)]
        struct Summary<'a> {
            schema: u32,
            rows: &'a [suite::Row],
            passed: usize,
            failed: usize,
            undecided: usize,
        }
        print!(
            "{}",
            to_json(&Summary {
                schema: SCHEMA,
                rows: &rows,
                passed: count(suite::Status::Pass),
                failed,
                undecided,
            })?
        );
    } else {
        let width = rows.iter().map(|r| r.file.len()).max().unwrap_or(0);
        for r in &rows {
            let mark = match r.status {
                suite::Status::Pass => "PASS",
                suite::Status::Fail => "FAIL",
                suite::Status::Undecided => "UNDECIDED",
            };
            println!("{:width$}  {mark:9}  {}", r.file, r.detail);
        }
        println!(
            "{} files: {} passed, {failed} failed, {undecided} undecided",
            rows.len(),
            count(suite::Status::Pass)
        );
    }
    Ok(if failed > 0 {
        1
    } else if undecided > 0 {
        EXIT_UNDECIDED
    } else {
        0
    })
}
