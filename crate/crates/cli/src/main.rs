//! `mwd`: exact graph widths, decompositions and monoidal width bounds for
//! small graphs.
//!
//! Exit status: 0 on success, 1 when a decomposition is invalid or a width
//! theorem fails, 2 on usage and parse errors.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mwd_core::cospan::cospan_iso_eq;
use mwd_core::decomp::{
    branch_to_recursive, path_to_recursive, tree_to_recursive, BranchDec, PathDec, RecBranchDec, RecPathDec,
    RecTreeDec, TreeDec,
};
use mwd_core::graph::text::parse_graph;
use mwd_core::oracle::{
    enumerate_graphs, exact_branchwidth, exact_pathwidth, exact_treewidth, exact_widths, WidthCache,
};
use mwd_core::term::{bounded_mwd_search_seeded, DecompTree, Shape};
use mwd_core::translate::{
    b_to_mdec_term, check_theorems_with_budget, m_to_bdec, m_to_pdec, m_to_tdec, p_to_mdec, t_to_mdec, GlueMap,
    DEFAULT_SEARCH_BUDGET,
};
use mwd_core::{Cospan, Error, Graph, SourcedGraph};

/// `println!` that ignores a closed stdout, as when piped into `head`.
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "mwd", version, about = "Tree, path, branch and monoidal width of small graphs")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Graphviz output for decompositions.
    #[arg(long, global = true)]
    dot: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact tw, pw, bw and the monoidal width bounds they imply.
    Widths { file: PathBuf },
    /// Emit an optimal decomposition.
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Recursive form, with a subgraph at every node.
        #[arg(long)]
        recursive: bool,
        /// Shape of monoidal decompositions.
        #[arg(long, default_value = "any")]
        shape: Shape,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: usize,
    },
    /// Check a decomposition against a graph.
    Validate {
        file: PathBuf,
        #[arg(long)]
        dec: PathBuf,
        /// Kind of a bare decomposition; read from the file when omitted.
        #[arg(long)]
        kind: Option<DecKind>,
    },
    /// Translate between recursive graph decompositions and monoidal ones.
    Translate {
        #[arg(long)]
        from: PathBuf,
        #[arg(long, value_enum)]
        to: Kind,
        #[arg(long)]
        kind: Option<DecKind>,
    },
    /// Check the tree, path and branch width sandwiches.
    CheckTheorems {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: usize,
    },
    /// Every simple graph up to isomorphism with its widths.
    Catalog {
        #[arg(long)]
        max_v: usize,
        #[arg(long, default_value_t = 7)]
        max_e: usize,
        /// JSON file of previously computed widths.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Tree,
    Path,
    Branch,
    Monoidal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DecKind {
    Tree,
    Path,
    Branch,
    RecTree,
    RecPath,
    RecBranch,
    Monoidal,
}

impl DecKind {
    fn name(self) -> &'static str {
        match self {
            DecKind::Tree => "tree",
            DecKind::Path => "path",
            DecKind::Branch => "branch",
            DecKind::RecTree => "rec-tree",
            DecKind::RecPath => "rec-path",
            DecKind::RecBranch => "rec-branch",
            DecKind::Monoidal => "monoidal",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        <DecKind as ValueEnum>::from_str(s, false).ok()
    }
}

enum Fail {
    /// Exit 1.
    Check(String),
    /// Exit 2.
    Usage(String),
}

type Out = Result<(), Fail>;

fn core_err(e: Error) -> Fail {
    match e {
        Error::Precondition(m) | Error::Postcondition(m) => Fail::Check(m),
        e => Fail::Usage(e.to_string()),
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<SourcedGraph, Fail> {
    parse_graph(&read(path)?).map_err(|e| match e {
        Error::Parse { line, msg } => Fail::Usage(format!("{}:{line}: {msg}", path.display())),
        e => Fail::Usage(format!("{}: {e}", path.display())),
    })
}

fn from_json<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, Fail> {
    serde_json::from_value(v).map_err(|e| Fail::Usage(format!("not a {what} decomposition: {e}")))
}

/// Reads `{"kind": .., "dec": ..}`, or a bare decomposition when `kind` is given.
fn load_dec(path: &Path, kind: Option<DecKind>) -> Result<(DecKind, Value), Fail> {
    let v: Value = serde_json::from_str(&read(path)?)
        .map_err(|e| Fail::Usage(format!("{}:{}: {e}", path.display(), e.line())))?;
    let tagged = v.get("kind").and_then(Value::as_str).and_then(DecKind::parse);
    match (kind, tagged) {
        (Some(k), _) if v.get("dec").is_none() => Ok((k, v)),
        (Some(k), _) => Ok((k, v["dec"].clone())),
        (None, Some(k)) => Ok((k, v["dec"].clone())),
        (None, None) => Err(Fail::Usage(format!("{}: no `kind` field; pass --kind", path.display()))),
    }
}

fn envelope(kind: DecKind, width: usize, dec: Value) -> Value {
    json!({ "kind": kind.name(), "width": width, "dec": dec })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("decompositions serialize")
}

/// `⟨sources ascending -> G <- ∅⟩`.
fn graph_cospan(g: &SourcedGraph) -> Cospan {
    Cospan::sourced(g.graph.clone(), &g.sources.iter().copied().collect::<Vec<_>>()).expect("sources are vertices")
}

fn print_dec(cli: &Cli, kind: DecKind, width: usize, dec: Value, dot: impl FnOnce() -> String) {
    if cli.dot {
        let _ = std::io::stdout().write_all(dot().as_bytes());
    } else if cli.json {
        out!("{}", serde_json::to_string_pretty(&envelope(kind, width, dec)).expect("json"));
    } else {
        out!("{} width={width}", kind.name());
        out!("{}", serde_json::to_string(&envelope(kind, width, dec)).expect("json"));
    }
}

fn widths(cli: &Cli, file: &Path) -> Out {
    let g = load_graph(file)?;
    let w = exact_widths(&g.graph).map_err(core_err)?;
    let (mwd, mtwd) = ((w.bw.div_ceil(2), w.bw + 1), (w.tw, 2 * w.tw));
    if cli.json {
        let v = json!({ "tw": w.tw, "pw": w.pw, "bw": w.bw, "mwd": [mwd.0, mwd.1], "mtwd": [mtwd.0, mtwd.1], "mpwd": w.pw });
        out!("{v}");
    } else {
        out!(
            "tw={} pw={} bw={} mwd∈[{},{}] mtwd∈[{},{}] mpwd={}",
            w.tw, w.pw, w.bw, mwd.0, mwd.1, mtwd.0, mtwd.1, w.pw
        );
    }
    Ok(())
}

fn decompose(cli: &Cli, file: &Path, kind: Kind, recursive: bool, shape: Shape, budget: usize) -> Out {
    let g = load_graph(file)?;
    let gr = &g.graph;
    match (kind, recursive) {
        (Kind::Tree, false) => {
            let (w, td) = exact_treewidth(gr).map_err(core_err)?;
            print_dec(cli, DecKind::Tree, w, to_value(&td), || td.to_dot());
        }
        (Kind::Tree, true) => {
            let (_, td) = exact_treewidth(gr).map_err(core_err)?;
            let t = tree_to_recursive(&td, &g, None).map_err(core_err)?;
            print_dec(cli, DecKind::RecTree, t.width(), to_value(&t), || t.to_dot());
        }
        (Kind::Path, false) => {
            let (w, pd) = exact_pathwidth(gr).map_err(core_err)?;
            print_dec(cli, DecKind::Path, w, to_value(&pd), || pd.to_dot());
        }
        (Kind::Path, true) => {
            let (_, pd) = exact_pathwidth(gr).map_err(core_err)?;
            let t = path_to_recursive(&pd, &g).map_err(core_err)?;
            print_dec(cli, DecKind::RecPath, t.width(), to_value(&t), || t.to_dot());
        }
        (Kind::Branch, false) => {
            let (w, bd) = exact_branchwidth(gr).map_err(core_err)?;
            print_dec(cli, DecKind::Branch, w, to_value(&bd), || bd.to_dot(gr));
        }
        (Kind::Branch, true) => {
            let (_, bd) = exact_branchwidth(gr).map_err(core_err)?;
            let t = branch_to_recursive(&bd, &g).map_err(core_err)?;
            print_dec(cli, DecKind::RecBranch, t.width(), to_value(&t), || t.to_dot());
        }
        (Kind::Monoidal, _) => {
            let seed = monoidal_seed(&g, shape).map_err(core_err)?;
            let r = bounded_mwd_search_seeded(&graph_cospan(&g), shape, budget, &seed).map_err(core_err)?;
            if r.bound_only && !cli.json && !cli.dot {
                eprintln!("search budget exhausted: the width is an upper bound only");
            }
            print_dec(cli, DecKind::Monoidal, r.width, to_value(&r.term), || r.term.to_dot());
        }
    }
    Ok(())
}

/// The translation of an optimal graph decomposition of the matching shape.
fn monoidal_seed(g: &SourcedGraph, shape: Shape) -> mwd_core::Result<Vec<DecompTree<Cospan>>> {
    Ok(match shape {
        Shape::RightTree => {
            let (_, td) = exact_treewidth(&g.graph)?;
            vec![t_to_mdec(&tree_to_recursive(&td, g, None)?, g)?]
        }
        Shape::Path => {
            let (_, pd) = exact_pathwidth(&g.graph)?;
            vec![p_to_mdec(&path_to_recursive(&pd, g)?, g)?]
        }
        Shape::Any => match exact_branchwidth(&g.graph) {
            Ok((_, bd)) => vec![b_to_mdec_term(&branch_to_recursive(&bd, g)?, g)?],
            Err(Error::TooLarge(_)) => Vec::new(),
            Err(e) => return Err(e),
        },
    })
}

fn validate(cli: &Cli, file: &Path, dec: &Path, kind: Option<DecKind>) -> Out {
    let g = load_graph(file)?;
    let (kind, v) = load_dec(dec, kind)?;
    let name = kind.name();
    let outcome: Result<usize, String> = match kind {
        DecKind::Tree => {
            let d: TreeDec = from_json(v, name)?;
            d.validate(&g.graph).map(|_| d.width()).map_err(|e| e.to_string())
        }
        DecKind::Path => {
            let d: PathDec = from_json(v, name)?;
            d.validate(&g.graph).map(|_| d.width()).map_err(|e| e.to_string())
        }
        DecKind::Branch => {
            let d: BranchDec = from_json(v, name)?;
            d.validate(&g.graph).map_err(|e| e.to_string()).and_then(|_| d.width(&g.graph).map_err(|e| e.to_string()))
        }
        DecKind::RecTree => {
            let d: RecTreeDec = from_json(v, name)?;
            d.validate(&g).map(|_| d.width()).map_err(|e| e.to_string())
        }
        DecKind::RecPath => {
            let d: RecPathDec = from_json(v, name)?;
            d.validate(&g).map(|_| d.width()).map_err(|e| e.to_string())
        }
        DecKind::RecBranch => {
            let d: RecBranchDec = from_json(v, name)?;
            d.validate(&g).map(|_| d.width()).map_err(|e| e.to_string())
        }
        DecKind::Monoidal => {
            let d: DecompTree<Cospan> = from_json(v, name)?;
            match d.width().and_then(|w| Ok((w, d.evaluate()?))) {
                Ok((w, c)) if cospan_iso_eq(&c, &graph_cospan(&g)) => Ok(w),
                Ok(_) => Err("evaluation: the term does not evaluate to the graph with its sources".into()),
                Err(e) => Err(e.to_string()),
            }
        }
    };
    match outcome {
        Ok(w) => {
            if cli.json {
                out!("{}", json!({ "valid": true, "kind": name, "width": w }));
            } else {
                out!("valid {name} decomposition of width {w}");
            }
            Ok(())
        }
        Err(msg) => {
            if cli.json {
                out!("{}", json!({ "valid": false, "kind": name, "violation": msg }));
            }
            Err(Fail::Check(format!("invalid {name} decomposition: {msg}")))
        }
    }
}

fn translate(cli: &Cli, from: &Path, to: Kind, kind: Option<DecKind>) -> Out {
    let (kind, v) = load_dec(from, kind)?;
    let name = kind.name();
    let (from_width, out_kind, out_width, out) = match (kind, to) {
        (DecKind::RecTree, Kind::Monoidal) => {
            let t: RecTreeDec = from_json(v, name)?;
            let d = t_to_mdec(&t, &t.graph()).map_err(core_err)?;
            (t.width(), DecKind::Monoidal, d.width().map_err(core_err)?, to_value(&d))
        }
        (DecKind::RecPath, Kind::Monoidal) => {
            let t: RecPathDec = from_json(v, name)?;
            let d = p_to_mdec(&t, &t.graph()).map_err(core_err)?;
            (t.width(), DecKind::Monoidal, d.width().map_err(core_err)?, to_value(&d))
        }
        (DecKind::RecBranch, Kind::Monoidal) => {
            let t: RecBranchDec = from_json(v, name)?;
            let d = b_to_mdec_term(&t, t.graph()).map_err(core_err)?;
            (t.width(), DecKind::Monoidal, d.width().map_err(core_err)?, to_value(&d))
        }
        (DecKind::Monoidal, Kind::Monoidal) => return Err(Fail::Usage("already a monoidal decomposition".into())),
        (DecKind::Monoidal, to) => {
            let d: DecompTree<Cospan> = from_json(v, name)?;
            let w = d.width().map_err(core_err)?;
            match to {
                Kind::Tree => {
                    let (_, t) = m_to_tdec(&d).map_err(core_err)?;
                    (w, DecKind::RecTree, t.width(), to_value(&t))
                }
                Kind::Path => {
                    let (_, t) = m_to_pdec(&d).map_err(core_err)?;
                    (w, DecKind::RecPath, t.width(), to_value(&t))
                }
                _ => {
                    let phi = GlueMap::identity(&d.evaluate().map_err(core_err)?);
                    let (_, t) = m_to_bdec(&d, &phi).map_err(core_err)?;
                    (w, DecKind::RecBranch, t.width(), to_value(&t))
                }
            }
        }
        (k, _) => {
            return Err(Fail::Usage(format!(
                "cannot translate a {} decomposition; use a recursive one or a monoidal term",
                k.name()
            )))
        }
    };
    if cli.json {
        out!("{}", json!({ "from": name, "from_width": from_width, "result": envelope(out_kind, out_width, out) }));
    } else {
        out!("{name} width={from_width} -> {} width={out_width}", out_kind.name());
        out!("{}", serde_json::to_string(&envelope(out_kind, out_width, out)).expect("json"));
    }
    Ok(())
}

fn check(cli: &Cli, file: &Path, budget: usize) -> Out {
    let g = load_graph(file)?;
    let r = check_theorems_with_budget(&g.graph, budget).map_err(core_err)?;
    if cli.json {
        out!("{}", serde_json::to_string_pretty(&r).expect("json"));
    } else {
        let w = r.widths;
        out!("tw={} pw={} bw={}", w.tw, w.pw, w.bw);
        for s in [&r.tree, &r.path, &r.branch] {
            let opt = |x: Option<usize>| x.map_or("-".to_string(), |x| x.to_string());
            out!(
                "{:<6} {} bounds [{},{}] translated={} searched={} certified={}{}",
                s.theorem,
                if s.pass { "PASS" } else { "FAIL" },
                s.lower,
                s.upper,
                opt(s.translated),
                opt(s.searched),
                opt(s.certified),
                if s.bound_only { " (search budget exhausted)" } else { "" }
            );
            for f in s.failures() {
                out!("       violated: {f}");
            }
        }
    }
    if r.pass {
        Ok(())
    } else {
        Err(Fail::Check("a width theorem failed".into()))
    }
}

fn catalog(cli: &Cli, max_v: usize, max_e: usize, cache_path: Option<&Path>) -> Out {
    if max_v > 6 {
        return Err(Fail::Usage("the catalog goes up to 6 vertices".into()));
    }
    let mut cache = match cache_path {
        Some(p) => WidthCache::load(p).map_err(core_err)?,
        None => WidthCache::default(),
    };
    for g in enumerate_graphs(max_v, max_e).iter() {
        let w = cache.widths(g).map_err(core_err)?;
        let key = mwd_core::oracle::canonical_key(g);
        if cli.json {
            out!("{}", json!({ "key": key, "graph": to_value::<Graph>(g), "tw": w.tw, "pw": w.pw, "bw": w.bw }));
        } else {
            out!("{key} tw={} pw={} bw={}", w.tw, w.pw, w.bw);
        }
    }
    if let Some(p) = cache_path {
        cache.save(p).map_err(core_err)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Widths { file } => widths(cli, file),
        Cmd::Decompose { file, kind, recursive, shape, budget } => {
            decompose(cli, file, *kind, *recursive, *shape, *budget)
        }
        Cmd::Validate { file, dec, kind } => validate(cli, file, dec, *kind),
        Cmd::Translate { from, to, kind } => translate(cli, from, *to, *kind),
        Cmd::CheckTheorems { file, budget } => check(cli, file, *budget),
        Cmd::Catalog { max_v, max_e, cache } => catalog(cli, *max_v, *max_e, cache.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(msg)) => {
            eprintln!("mwd: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("mwd: {msg}");
            ExitCode::from(2)
        }
    }
}
