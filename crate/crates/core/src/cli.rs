//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code, so it can be driven from
//! tests as well as from the binary.
//!
//! Exit codes: 0 when every check passes, 1 on a verified mismatch, 2 on
//! usage, budget or hypothesis errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bigraph::{serialize, BipartiteGraph, Family, Side};
use crate::exactmath::{
    binomial, factorial, gaussian_binomial, permutation_degree, set_degree, subspace_degree, BigNat,
};
use crate::fragments::{
    classify_semi_imprimitive, two_fragment_graph, verify_theorem, CheckStatus, ComponentShape,
    EnumerationMode, FragmentContext, FragmentRecord, VerifyOptions,
};
use crate::groupact::natural_action;
use crate::oracle::alpha_nontrivial;
use crate::{Budget, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "crossint",
    version,
    about = "Cross-t-intersecting bounds checked against exact independent sets"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest part a graph builder may create.
    #[arg(long, global = true, value_name = "N")]
    budget_vertices: Option<usize>,
    /// Largest number of intermediate sets an enumeration may visit.
    #[arg(long, global = true, value_name = "N")]
    budget_subsets: Option<usize>,
    /// Write the constructed graph in the line-oriented hex format.
    #[arg(long, global = true, value_name = "PATH")]
    dump_graph: Option<PathBuf>,
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Bounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    X,
    Y,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form bound, degree term and part sizes.
    Bounds {
        family: String,
        #[arg(required = true)]
        params: Vec<u64>,
    },
    /// Exact maximum nontrivial independent set against the bound.
    Alpha {
        family: String,
        #[arg(required = true)]
        params: Vec<u64>,
    },
    /// Fragment census with classification and the 2-fragment graph.
    Fragments {
        family: String,
        #[arg(required = true)]
        params: Vec<u64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Largest fragment size in bounded mode.
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = SideArg::X)]
        side: SideArg,
    },
    /// Full verification of every tuple in a grid file.
    Verify { gridfile: PathBuf },
}

/// A failure that maps to an exit code, with the message for stderr.
struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = match &e {
            Error::Hypothesis(name) => format!("hypothesis not met: {name}"),
            other => other.to_string(),
        };
        Failure {
            code: EXIT_ERROR,
            msg,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_ERROR,
        msg: msg.into(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_ERROR
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.workers.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start workers: {e}");
            return EXIT_ERROR;
        }
    };
    let mut buf = String::new();
    let result = pool.install(|| dispatch(&cli, &mut buf));
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn budget(global: &Global) -> Budget {
    let mut b = Budget::default();
    if let Some(v) = global.budget_vertices {
        b.vertices = v;
    }
    if let Some(s) = global.budget_subsets {
        b.subsets = s;
    }
    b
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<i32, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Bounds { family, params } => cmd_bounds(&Family::parse(family, params)?, g.format, out),
        Command::Alpha { family, params } => {
            let family = Family::parse(family, params)?;
            cmd_alpha(&family, g.format, &budget(g), g.dump_graph.as_deref(), out)
        }
        Command::Fragments {
            family,
            params,
            mode,
            max_size,
            side,
        } => {
            let family = Family::parse(family, params)?;
            let mode = match mode {
                ModeArg::Exhaustive => EnumerationMode::Exhaustive,
                ModeArg::Bounded => EnumerationMode::Bounded(*max_size),
            };
            let side = match side {
                SideArg::X => Side::X,
                SideArg::Y => Side::Y,
            };
            cmd_fragments(
                &family,
                mode,
                side,
                g.format,
                &budget(g),
                g.dump_graph.as_deref(),
                out,
            )
        }
        Command::Verify { gridfile } => {
            let text = std::fs::read_to_string(gridfile)
                .map_err(|e| usage(format!("cannot read {}: {e}", gridfile.display())))?;
            let grid = parse_grid(&text, budget(g))?;
            cmd_verify(&grid, g.format, out)
        }
    }
}

fn params_text(family: &Family, sep: &str) -> String {
    family
        .params()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn json_nat(v: &BigNat) -> Value {
    match u64::try_from(v) {
        Ok(n) => json!(n),
        Err(_) => json!(v.to_string()),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `(|X|, |Y|, degree of an X vertex)` from the closed forms.
fn family_sizes(family: &Family) -> Result<(BigNat, BigNat, BigNat), Error> {
    Ok(match *family {
        Family::Sets { n, a, b, t } => (
            binomial(n, a as i64),
            binomial(n, b as i64),
            set_degree(n, a, b, t)?,
        ),
        Family::Subspaces { n, q, a, b, t } => (
            gaussian_binomial(n, a as i64, q)?,
            gaussian_binomial(n, b as i64, q)?,
            subspace_degree(n, q, a, b, t)?,
        ),
        Family::Permutations { n, t } => (factorial(n), factorial(n), permutation_degree(n, t)?),
        Family::Circulant { n, r } => (BigNat::from(n), BigNat::from(n), BigNat::from(r)),
    })
}

fn cmd_bounds(family: &Family, format: Format, out: &mut String) -> Result<i32, Failure> {
    let bound = family.bound()?;
    let (x, y, degree) = family_sizes(family)?;
    match format {
        Format::Text => {
            let row = [
                family.name().to_string(),
                params_text(family, ","),
                x.to_string(),
                y.to_string(),
                degree.to_string(),
                bound.to_string(),
            ];
            let head = ["family", "params", "|X|", "|Y|", "degree", "bound"];
            let widths: Vec<usize> = head.iter().zip(&row).map(|(h, r)| h.len().max(r.len())).collect();
            let line = |cells: &[&str]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(&head)).unwrap();
            writeln!(
                out,
                "{}",
                line(&row.iter().map(String::as_str).collect::<Vec<_>>())
            )
            .unwrap();
        }
        Format::Csv => {
            writeln!(out, "family,params,x_size,y_size,degree,bound").unwrap();
            writeln!(
                out,
                "{},{},{x},{y},{degree},{bound}",
                family.name(),
                params_text(family, " ")
            )
            .unwrap();
        }
        Format::Json => {
            let rec = json!({
                "family": family.name(),
                "params": family.params(),
                "x_size": json_nat(&x),
                "y_size": json_nat(&y),
                "degree": json_nat(&degree),
                "bound": json_nat(&bound),
            });
            writeln!(out, "{rec}").unwrap();
        }
    }
    Ok(EXIT_OK)
}

fn build(family: &Family, budget: &Budget, dump: Option<&Path>) -> Result<BipartiteGraph, Failure> {
    let g = family.build(budget)?;
    if let Some(path) = dump {
        std::fs::write(path, serialize(&g))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(g)
}

fn cmd_alpha(
    family: &Family,
    format: Format,
    budget: &Budget,
    dump: Option<&Path>,
    out: &mut String,
) -> Result<i32, Failure> {
    let bound = family.bound()?;
    let g = build(family, budget, dump)?;
    let mis = alpha_nontrivial(&g)?;
    let matched = BigNat::from(mis.size) == bound;
    let witness = [("X", &mis.a), ("Y", &mis.b)]
        .map(|(side, set)| format!("{side}:{{{}}}", g.set_labels(set).join(" ")));
    let verdict = if matched { "MATCH" } else { "MISMATCH" };
    match format {
        Format::Text => {
            writeln!(out, "{family}").unwrap();
            writeln!(out, "alpha={} formula={bound} {verdict}", mis.size).unwrap();
            writeln!(out, "witness X: {}", g.set_labels(&mis.a).join(" ")).unwrap();
            writeln!(out, "witness Y: {}", g.set_labels(&mis.b).join(" ")).unwrap();
        }
        Format::Csv => {
            writeln!(out, "family,params,bound,alpha,match,witness").unwrap();
            writeln!(
                out,
                "{},{},{bound},{},{matched},{}",
                family.name(),
                params_text(family, " "),
                mis.size,
                csv_field(&witness.join(" "))
            )
            .unwrap();
        }
        Format::Json => {
            let rec = json!({
                "family": family.name(),
                "params": family.params(),
                "bound": json_nat(&bound),
                "alpha": mis.size,
                "match": matched,
                "witness": witness,
            });
            writeln!(out, "{rec}").unwrap();
        }
    }
    Ok(if matched { EXIT_OK } else { EXIT_MISMATCH })
}

fn size_set(records: &[FragmentRecord]) -> String {
    let sizes: BTreeSet<usize> = records.iter().map(FragmentRecord::len).collect();
    format!(
        "{{{}}}",
        sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    )
}

fn fragment_summary(records: &[FragmentRecord]) -> String {
    if records.iter().all(|f| f.len() == 1) {
        return format!("{} fragments, all singletons", records.len());
    }
    let special = records
        .iter()
        .filter(|f| !f.is_trivial && f.is_balanced && f.is_semi_imprimitive == Some(true))
        .count();
    let nontrivial = records.iter().filter(|f| !f.is_trivial).count();
    let mut s = format!("{} fragments; sizes {}", records.len(), size_set(records));
    if nontrivial > 0 {
        write!(s, "; {nontrivial} nontrivial").unwrap();
    }
    if special > 0 {
        write!(s, "; {special} semi-imprimitive balanced").unwrap();
    }
    s
}

fn shape_name(shape: ComponentShape) -> &'static str {
    match shape {
        ComponentShape::Isolated => "isolated",
        ComponentShape::Complete => "complete",
        ComponentShape::Cycle => "cycle",
        ComponentShape::Other => "other",
    }
}

fn cmd_fragments(
    family: &Family,
    mode: EnumerationMode,
    side: Side,
    format: Format,
    budget: &Budget,
    dump: Option<&Path>,
    out: &mut String,
) -> Result<i32, Failure> {
    let g = build(family, budget, dump)?;
    let ctx = FragmentContext::new(&g)?;
    let mut records = ctx.enumerate(side, mode, budget)?;
    let action = natural_action(family, &g)?;
    classify_semi_imprimitive(&mut records, &action, budget.subsets)?;
    let h = match two_fragment_graph(&ctx, side) {
        Ok(h) => Some(h),
        Err(Error::NotRegular) => None,
        Err(e) => return Err(e.into()),
    };
    let h_text = match &h {
        None => format!("H({side}) unavailable: part is not regular"),
        Some(h) if h.is_empty() => format!("H({side}) empty"),
        Some(h) if h.is_hamiltonian_cycle() => format!("H({side}) = {}-cycle", h.order),
        Some(h) => {
            let mut counts: Vec<(ComponentShape, usize)> = Vec::new();
            for (_, shape) in &h.components {
                match counts.iter_mut().find(|(s, _)| s == shape) {
                    Some((_, c)) => *c += 1,
                    None => counts.push((*shape, 1)),
                }
            }
            counts.sort();
            let parts: Vec<String> = counts
                .iter()
                .map(|(s, c)| format!("{c} {}", shape_name(*s)))
                .collect();
            format!(
                "H({side}): {} edges; components {}",
                h.edges.len(),
                parts.join(", ")
            )
        }
    };
    let mode_text = match mode {
        EnumerationMode::Exhaustive => "exhaustive".to_string(),
        EnumerationMode::Bounded(k) => format!("bounded({k})"),
    };
    let flag = |b: Option<bool>| match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    };
    match format {
        Format::Text => {
            writeln!(out, "{family} side {side} mode {mode_text}").unwrap();
            writeln!(out, "epsilon={} alpha={}", ctx.epsilon(side), ctx.alpha()).unwrap();
            writeln!(out, "{}", fragment_summary(&records)).unwrap();
            writeln!(out, "{h_text}").unwrap();
            for f in &records {
                writeln!(
                    out,
                    "size={} nbhd={} trivial={} balanced={} semi-imprimitive={} members={}",
                    f.len(),
                    f.nbhd_size,
                    flag(Some(f.is_trivial)),
                    flag(Some(f.is_balanced)),
                    flag(f.is_semi_imprimitive),
                    g.set_labels(&f.members).join(" ")
                )
                .unwrap();
            }
        }
        Format::Csv => {
            writeln!(
                out,
                "family,params,side,size,nbhd_size,trivial,balanced,semi_imprimitive,members"
            )
            .unwrap();
            for f in &records {
                writeln!(
                    out,
                    "{},{},{side},{},{},{},{},{},{}",
                    family.name(),
                    params_text(family, " "),
                    f.len(),
                    f.nbhd_size,
                    f.is_trivial,
                    f.is_balanced,
                    flag(f.is_semi_imprimitive),
                    csv_field(&g.set_labels(&f.members).join(" "))
                )
                .unwrap();
            }
        }
        Format::Json => {
            let frags: Vec<Value> = records
                .iter()
                .map(|f| {
                    json!({
                        "size": f.len(),
                        "nbhd_size": f.nbhd_size,
                        "trivial": f.is_trivial,
                        "balanced": f.is_balanced,
                        "semi_imprimitive": f.is_semi_imprimitive,
                        "members": g.set_labels(&f.members),
                    })
                })
                .collect();
            let rec = json!({
                "family": family.name(),
                "params": family.params(),
                "side": side.to_string(),
                "mode": mode_text,
                "epsilon": ctx.epsilon(side),
                "alpha": ctx.alpha(),
                "summary": fragment_summary(&records),
                "two_fragment_graph": h_text,
                "fragments": frags,
            });
            writeln!(out, "{rec}").unwrap();
        }
    }
    Ok(EXIT_OK)
}

/// One tuple of a grid file with the budget in force on its line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridEntry {
    pub line: usize,
    pub family: Family,
    pub budget: Budget,
}

fn parse_values(tok: &str, line: usize) -> crate::Result<Vec<u64>> {
    let malformed = |msg: String| Error::Malformed { line, msg };
    let mut vals = Vec::new();
    for piece in tok.split(',') {
        let num = |v: &str| {
            v.parse::<u64>()
                .map_err(|_| malformed(format!("bad parameter `{tok}`")))
        };
        if let Some((lo, hi)) = piece.split_once("..") {
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(malformed(format!("empty range `{piece}`")));
            }
            vals.extend(lo..=hi);
        } else {
            vals.push(num(piece)?);
        }
    }
    Ok(vals)
}

/// Parses a grid file: one `family p1 p2 ..` tuple per line, where a
/// parameter may be a value, an inclusive range `lo..hi` or a comma list
/// (ranges expand to every combination), `#` starts a comment, and a line
/// `budget vertices|subsets|exhaustive|enumeration N` changes the budget
/// for the lines after it.
pub fn parse_grid(text: &str, base: Budget) -> crate::Result<Vec<GridEntry>> {
    let mut budget = base;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let malformed = |msg: String| Error::Malformed { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks[0] == "budget" {
            let (Some(key), Some(val), None) = (toks.get(1), toks.get(2), toks.get(3)) else {
                return Err(malformed("expected `budget <key> <N>`".into()));
            };
            let v: usize = val
                .parse()
                .map_err(|_| malformed(format!("bad budget value `{val}`")))?;
            match *key {
                "vertices" => budget.vertices = v,
                "subsets" => budget.subsets = v,
                "exhaustive" => budget.exhaustive_part = v,
                "enumeration" => budget.enumeration_vertices = v,
                other => return Err(malformed(format!("unknown budget key `{other}`"))),
            }
            continue;
        }
        let lists = toks[1..]
            .iter()
            .map(|t| parse_values(t, line))
            .collect::<crate::Result<Vec<_>>>()?;
        let mut tuples: Vec<Vec<u64>> = vec![Vec::new()];
        for list in &lists {
            tuples = tuples
                .iter()
                .flat_map(|prefix| {
                    list.iter().map(move |&v| {
                        let mut t = prefix.clone();
                        t.push(v);
                        t
                    })
                })
                .collect();
        }
        for params in tuples {
            let family = Family::parse(toks[0], &params).map_err(|e| malformed(e.to_string()))?;
            entries.push(GridEntry { line, family, budget });
        }
    }
    if entries.is_empty() {
        return Err(Error::EmptyGrid);
    }
    Ok(entries)
}

struct TupleOutcome {
    status: CheckStatus,
    bound: Option<BigNat>,
    alpha: Option<usize>,
    witness: Vec<String>,
    note: String,
    report: Option<crate::fragments::VerificationReport>,
}

fn run_tuple(entry: &GridEntry) -> TupleOutcome {
    let skipped = |note: String| TupleOutcome {
        status: CheckStatus::Skipped,
        bound: None,
        alpha: None,
        witness: Vec::new(),
        note,
        report: None,
    };
    let bound = match entry.family.bound() {
        Ok(b) => b,
        Err(e) => return skipped(Failure::from(e).msg),
    };
    let g = match entry.family.build(&entry.budget) {
        Ok(g) => g,
        Err(e) => return skipped(Failure::from(e).msg),
    };
    let action = match natural_action(&entry.family, &g) {
        Ok(a) => a,
        Err(e) => return skipped(Failure::from(e).msg),
    };
    let report = verify_theorem(
        &g,
        &action,
        &VerifyOptions {
            family: Some(entry.family),
            budget: entry.budget,
            ..VerifyOptions::default()
        },
    );
    let fb = report.get("alpha.family-bound");
    let alpha = fb.and_then(|e| e.actual.parse().ok());
    let witness = fb.map(|e| e.witness.clone()).unwrap_or_default();
    let fails: Vec<&str> = report
        .entries
        .iter()
        .filter(|e| e.status == CheckStatus::Fail)
        .map(|e| e.name.as_str())
        .collect();
    TupleOutcome {
        status: if fails.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        bound: Some(bound),
        alpha,
        witness,
        note: if fails.is_empty() {
            String::new()
        } else {
            format!("failed: {}", fails.join(" "))
        },
        report: Some(report),
    }
}

fn cmd_verify(grid: &[GridEntry], format: Format, out: &mut String) -> Result<i32, Failure> {
    let outcomes: Vec<TupleOutcome> = grid.par_iter().map(run_tuple).collect();
    let count = |s: CheckStatus| outcomes.iter().filter(|o| o.status == s).count();
    let (pass, fail, skip) = (
        count(CheckStatus::Pass),
        count(CheckStatus::Fail),
        count(CheckStatus::Skipped),
    );
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    match format {
        Format::Text => {
            for (e, o) in grid.iter().zip(&outcomes) {
                write!(out, "{}: {}", e.family, o.status).unwrap();
                if let (Some(a), Some(b)) = (o.alpha, &o.bound) {
                    write!(out, " alpha={a} bound={b}").unwrap();
                }
                if !o.note.is_empty() {
                    write!(out, " ({})", o.note).unwrap();
                }
                writeln!(out).unwrap();
            }
            writeln!(out, "summary: {pass} PASS, {fail} FAIL, {skip} SKIPPED").unwrap();
            for o in &outcomes {
                if let Some(r) = &o.report {
                    writeln!(out).unwrap();
                    write!(out, "{r}").unwrap();
                }
            }
        }
        Format::Csv => {
            writeln!(out, "line,family,params,status,bound,alpha,match,witness,note").unwrap();
            for (e, o) in grid.iter().zip(&outcomes) {
                let matched = match (o.alpha, &o.bound) {
                    (Some(a), Some(b)) => (BigNat::from(a) == *b).to_string(),
                    _ => "-".into(),
                };
                writeln!(
                    out,
                    "{},{},{},{},{},{},{matched},{},{}",
                    e.line,
                    e.family.name(),
                    params_text(&e.family, " "),
                    o.status,
                    opt(o.bound.as_ref().map(BigNat::to_string)),
                    opt(o.alpha.map(|a| a.to_string())),
                    csv_field(&o.witness.join(" ")),
                    csv_field(&o.note)
                )
                .unwrap();
            }
        }
        Format::Json => {
            for (e, o) in grid.iter().zip(&outcomes) {
                let checks: serde_json::Map<String, Value> = o
                    .report
                    .iter()
                    .flat_map(|r| &r.entries)
                    .map(|c| (c.name.clone(), json!(c.status.to_string())))
                    .collect();
                let rec = json!({
                    "family": e.family.name(),
                    "params": e.family.params(),
                    "bound": o.bound.as_ref().map(json_nat),
                    "alpha": o.alpha,
                    "match": match (o.alpha, &o.bound) {
                        (Some(a), Some(b)) => Some(BigNat::from(a) == *b),
                        _ => None,
                    },
                    "witness": o.witness,
                    "status": o.status.to_string(),
                    "note": o.note,
                    "checks": checks,
                });
                writeln!(out, "{rec}").unwrap();
            }
        }
    }
    Ok(if fail > 0 { EXIT_MISMATCH } else { EXIT_OK })
}
