//! Command-line front end. `run` is the whole program minus process exit, so
//! tests can drive it with in-memory streams.
//!
//! Exit codes: 0 when everything requested holds, 1 when a check fails (the
//! witness is printed), 2 for usage or parse errors.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::{classify_element, iso_check, Op, Subset};
use crate::chain::{parse_compact_any, ChainEndo};
use crate::claims::{self, ClaimResult, Expectation, REGISTRY};
use crate::counting::{audit, AUDIT_LIMIT};
use crate::diagram::{self, ColorBy, Mode};
use crate::error::{Error, Result};
use crate::par::{with_jobs, Exec};
use crate::simplex::SimplexSpec;
use crate::strings::{StringPart, StringSpec};
use crate::triangle::TriangleSpec;

#[derive(Debug, Parser)]
#[command(
    name = "endochain",
    version,
    about = "Endomorphisms of a finite chain: simplices, strings, triangles"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the elements of a set, one per line.
    Elements { spec: String },
    /// Cayley table of + or · over a set.
    Table {
        spec: String,
        #[arg(long, value_enum)]
        op: OpArg,
    },
    /// Classify one element (compact notation) or every element of a set.
    Classify { spec: String },
    /// Split a triangle into its eight regions.
    Decompose { spec: String },
    /// Run registered claims.
    Check {
        /// Claim id or `all`.
        id: Option<String>,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// List claim ids and statements.
        #[arg(long)]
        list: bool,
    },
    /// Compare closed-form counts with enumeration.
    Counts {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Draw a triangle.
    Render {
        spec: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Ascii)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = ColorArg::None)]
        color_by: ColorArg,
    },
    /// Search for a semiring isomorphism between two sets.
    Iso { left: String, right: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OpArg {
    Add,
    Mul,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Ascii,
    Svg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ColorArg {
    None,
    Region,
}

/// A set named on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSpec {
    Simplex(SimplexSpec),
    String(StringSpec),
    Triangle(TriangleSpec),
}

impl SetSpec {
    pub fn n(&self) -> usize {
        match self {
            SetSpec::Simplex(s) => s.n(),
            SetSpec::String(s) => s.n(),
            SetSpec::Triangle(t) => t.n(),
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        match self {
            SetSpec::Simplex(s) => s.vertices().to_vec(),
            SetSpec::String(s) => vec![s.a(), s.b()],
            SetSpec::Triangle(t) => vec![t.a(), t.b(), t.c()],
        }
    }

    pub fn elements(&self) -> Vec<ChainEndo> {
        match self {
            SetSpec::Simplex(s) => s.enumerate(),
            SetSpec::String(s) => s.elements(),
            SetSpec::Triangle(t) => t.elements(),
        }
    }

    pub fn subset(&self) -> Subset {
        Subset::new(self.elements()).expect("structures are non-empty")
    }
}

/// Parses `n=6 A=1,3,4`, `str n=4 a=1 b=2` or `tri n=6 a=1 b=3 c=4`.
pub fn parse_set_spec(text: &str) -> Result<SetSpec> {
    let mut words = text.split_whitespace().peekable();
    let kind = match words.peek() {
        Some(&"str") | Some(&"tri") => words.next(),
        _ => None,
    };
    let mut fields: Vec<(String, String)> = Vec::new();
    for w in words {
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, found `{w}`")))?;
        if fields.iter().any(|(seen, _)| seen == k) {
            return Err(Error::Parse(format!("`{k}` given twice")));
        }
        fields.push((k.to_string(), v.to_string()));
    }
    let num = |v: &str| {
        v.parse::<usize>()
            .map_err(|_| Error::Parse(format!("`{v}` is not a non-negative integer")))
    };
    let get = |key: &str| -> Result<usize> {
        let v = fields
            .iter()
            .find(|(k, _)| k == key)
            .ok_or_else(|| Error::Parse(format!("missing `{key}=` in `{text}`")))?;
        num(&v.1)
    };
    let expect_keys = |keys: &[&str]| -> Result<()> {
        match fields.iter().find(|(k, _)| !keys.contains(&k.as_str())) {
            Some((k, _)) => Err(Error::Parse(format!("unexpected key `{k}` in `{text}`"))),
            None => Ok(()),
        }
    };
    match kind {
        Some("str") => {
            expect_keys(&["n", "a", "b"])?;
            Ok(SetSpec::String(StringSpec::new(
                get("n")?,
                get("a")?,
                get("b")?,
            )?))
        }
        Some("tri") => {
            expect_keys(&["n", "a", "b", "c"])?;
            Ok(SetSpec::Triangle(TriangleSpec::new(
                get("n")?,
                get("a")?,
                get("b")?,
                get("c")?,
            )?))
        }
        _ => {
            expect_keys(&["n", "A"])?;
            let n = get("n")?;
            let list = &fields
                .iter()
                .find(|(k, _)| k == "A")
                .ok_or_else(|| Error::Parse(format!("missing `A=` in `{text}`")))?
                .1;
            let vs: Vec<usize> = list.split(',').map(num).collect::<Result<_>>()?;
            Ok(SetSpec::Simplex(SimplexSpec::new(n, &vs)?))
        }
    }
}

/// JSON shape of `elements --json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementsJson {
    pub n: usize,
    #[serde(rename = "A")]
    pub vertices: Vec<usize>,
    pub elements: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct TableJson<'a> {
    op: &'a str,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct ClassifyRow {
    element: String,
    #[serde(flatten)]
    class: crate::analysis::ElementClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    part: Option<&'static str>,
}

#[derive(Serialize)]
struct IsoJson {
    holds: bool,
    witness: Option<String>,
    mapping: Option<Vec<(String, String)>>,
}

#[derive(Serialize)]
struct CheckJson<'a> {
    results: &'a [ClaimResult],
    total: usize,
    failed: usize,
}

#[derive(Serialize)]
struct ClaimInfo {
    id: &'static str,
    statement: &'static str,
    min_n: usize,
    cap: usize,
    expectation: Expectation,
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the program on `argv` (including the program name) and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let exec = match cli.jobs {
        Some(1) => Exec::Sequential,
        _ => Exec::Parallel,
    };
    let jobs = cli.jobs;
    let json = cli.json;
    let mut buf: Vec<u8> = Vec::new();
    let mut diag: Vec<u8> = Vec::new();
    let result = with_jobs(jobs, || {
        dispatch(cli.command, json, exec, &mut buf, &mut diag)
    });
    let _ = out.write_all(&buf);
    let _ = err.write_all(&diag);
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(
    command: Command,
    json: bool,
    exec: Exec,
    out: &mut Vec<u8>,
    err: &mut Vec<u8>,
) -> Outcome {
    match command {
        Command::Elements { spec } => elements(&spec, json, out),
        Command::Table { spec, op } => table(&spec, op, json, out),
        Command::Classify { spec } => classify(&spec, json, out),
        Command::Decompose { spec } => decompose(&spec, json, exec, out),
        Command::Check { id, n_max, list } => check(id.as_deref(), n_max, list, json, exec, out),
        Command::Counts { n_max } => counts(n_max, json, out),
        Command::Render {
            spec,
            mode,
            color_by,
        } => render(&spec, mode, color_by, out, err),
        Command::Iso { left, right } => iso(&left, &right, json, out),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn triangle_spec(text: &str) -> Result<TriangleSpec> {
    match parse_set_spec(text)? {
        SetSpec::Triangle(t) => Ok(t),
        _ => Err(Error::Parse(format!(
            "`{text}` is not a triangle (use `tri n=.. a=.. b=.. c=..`)"
        ))),
    }
}

fn elements(spec: &str, json: bool, out: &mut Vec<u8>) -> Outcome {
    let s = parse_set_spec(spec)?;
    let els = s.elements();
    if json {
        let doc = ElementsJson {
            n: s.n(),
            vertices: s.vertices(),
            elements: els.iter().map(|e| e.to_vec()).collect(),
        };
        let _ = writeln!(out, "{}", to_json(&doc));
    } else {
        for e in &els {
            let _ = writeln!(out, "{e}");
        }
    }
    Ok(0)
}

fn table(spec: &str, op: OpArg, json: bool, out: &mut Vec<u8>) -> Outcome {
    let s = parse_set_spec(spec)?;
    let els = s.elements();
    let op = match op {
        OpArg::Add => Op::Add,
        OpArg::Mul => Op::Mul,
    };
    let labels: Vec<String> = els.iter().map(|e| e.to_string()).collect();
    // entries outside the set are shown as the bare result
    let cells: Vec<Vec<(Option<usize>, ChainEndo)>> = els
        .iter()
        .map(|x| {
            els.iter()
                .map(|y| {
                    let r = op.apply(x, y);
                    (els.binary_search(&r).ok(), r)
                })
                .collect()
        })
        .collect();
    if json {
        let closed = cells.iter().flatten().all(|(i, _)| i.is_some());
        if !closed {
            return Err(Failure::Usage(format!(
                "`{spec}` is not closed under {}",
                op.symbol()
            )));
        }
        let doc = TableJson {
            op: op.symbol(),
            elements: labels,
            table: cells
                .iter()
                .map(|row| row.iter().map(|(i, _)| i.unwrap()).collect())
                .collect(),
        };
        let _ = writeln!(out, "{}", to_json(&doc));
        return Ok(0);
    }
    let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
    let pad = |s: &str| format!("{s}{}", " ".repeat(width - s.chars().count()));
    let mut header = format!("{} |", pad(op.symbol()));
    for l in &labels {
        header.push_str("  ");
        header.push_str(&pad(l));
    }
    let _ = writeln!(out, "{}", header.trim_end());
    let _ = writeln!(out, "{}", "-".repeat(header.trim_end().chars().count()));
    for (l, row) in labels.iter().zip(&cells) {
        let mut line = format!("{} |", pad(l));
        for (_, r) in row {
            line.push_str("  ");
            line.push_str(&pad(&r.to_string()));
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
    Ok(0)
}

fn classify(spec: &str, json: bool, out: &mut Vec<u8>) -> Outcome {
    let rows: Vec<ClassifyRow> = if spec.contains('=') {
        let s = parse_set_spec(spec)?;
        s.elements()
            .into_iter()
            .map(|e| ClassifyRow {
                part: match &s {
                    SetSpec::String(st) => st.index_of(&e).map(|l| part_label(st.part_of(l))),
                    _ => None,
                },
                class: classify_element(&e),
                element: e.to_string(),
            })
            .collect()
    } else {
        let e = parse_compact_any(spec)?;
        vec![ClassifyRow {
            element: e.to_string(),
            class: classify_element(&e),
            part: None,
        }]
    };
    if json {
        let _ = writeln!(out, "{}", to_json(&rows));
    } else {
        let width = rows
            .iter()
            .map(|r| r.element.chars().count())
            .max()
            .unwrap_or(1);
        for r in &rows {
            let pad = " ".repeat(width - r.element.chars().count());
            match r.part {
                Some(p) => {
                    let _ = writeln!(out, "{}{pad}  {p:<5}  {}", r.element, r.class);
                }
                None => {
                    let _ = writeln!(out, "{}{pad}  {}", r.element, r.class);
                }
            }
        }
    }
    Ok(0)
}

fn part_label(p: StringPart) -> &'static str {
    p.label()
}

fn decompose(spec: &str, json: bool, exec: Exec, out: &mut Vec<u8>) -> Outcome {
    let t = triangle_spec(spec)?;
    let report = t.decompose_with(exec);
    if json {
        let _ = writeln!(out, "{}", to_json(&report));
    } else {
        let _ = writeln!(out, "{t}");
        for e in &report.regions {
            let closed = match &e.closed.witness {
                None => "closed".to_string(),
                Some(w) => format!("NOT closed: {w}"),
            };
            let _ = writeln!(
                out,
                "{} {:<6} {:>5} (formula {:>5})  {closed}",
                e.region.letter(),
                e.region.key(),
                e.count,
                e.formula
            );
        }
        let total: usize = report.regions.iter().map(|e| e.count).sum();
        let _ = writeln!(out, "total {total} of {}", t.order());
        let _ = writeln!(out, "disjoint {}", report.disjoint);
        let _ = writeln!(out, "cover {}", report.cover);
        let _ = writeln!(out, "types agree {}", report.types_agree);
    }
    Ok(if report.holds() { 0 } else { 1 })
}

fn check(
    id: Option<&str>,
    n_max: usize,
    list: bool,
    json: bool,
    exec: Exec,
    out: &mut Vec<u8>,
) -> Outcome {
    if list {
        let infos: Vec<ClaimInfo> = REGISTRY
            .iter()
            .map(|c| ClaimInfo {
                id: c.id,
                statement: c.statement,
                min_n: c.min_n,
                cap: c.cap,
                expectation: c.expectation,
            })
            .collect();
        if json {
            let _ = writeln!(out, "{}", to_json(&infos));
        } else {
            let width = infos.iter().map(|c| c.id.len()).max().unwrap_or(0);
            for c in &infos {
                let tag = match c.expectation {
                    Expectation::Holds => "",
                    Expectation::Erratum => " [erratum]",
                };
                let _ = writeln!(
                    out,
                    "{:<width$}  n={}..={}{tag}  {}",
                    c.id, c.min_n, c.cap, c.statement
                );
            }
        }
        return Ok(0);
    }
    let id = id.ok_or_else(|| Failure::Usage("check needs a claim id, `all`, or --list".into()))?;
    let results = if id == "all" {
        claims::run_all(n_max, exec)
    } else {
        claims::run_claims(&[id], n_max, exec)?
    };
    let failed = results.iter().filter(|r| !r.holds).count();
    if json {
        let doc = CheckJson {
            results: &results,
            total: results.len(),
            failed,
        };
        let _ = writeln!(out, "{}", to_json(&doc));
    } else {
        for r in &results {
            let status = if r.holds { "PASS" } else { "FAIL" };
            let mut line = format!("{status} {} {}", r.claim, r.params);
            if let Some(w) = &r.witness {
                line.push_str(&format!(" | witness: {w}"));
            }
            if let Some(note) = &r.note {
                line.push_str(&format!(" | {note}"));
            }
            let _ = writeln!(out, "{line}");
        }
        let _ = writeln!(out, "{} results, {failed} failed", results.len());
    }
    Ok(if failed == 0 { 0 } else { 1 })
}

fn counts(n_max: usize, json: bool, out: &mut Vec<u8>) -> Outcome {
    if n_max > AUDIT_LIMIT {
        return Err(Failure::Usage(format!(
            "--n-max is limited to {AUDIT_LIMIT} for counts"
        )));
    }
    let rows = audit(n_max)?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    if json {
        let _ = writeln!(out, "{}", to_json(&rows));
    } else {
        let _ = writeln!(
            out,
            "{:<26} {:<24} {:>12} {:>12}  verdict",
            "formula", "params", "closed form", "enumerated"
        );
        for r in &rows {
            let verdict = match (r.pass, r.expect_match) {
                (true, true) => "ok",
                (true, false) => "ok (differs, as expected)",
                (false, _) => "MISMATCH",
            };
            let _ = writeln!(
                out,
                "{:<26} {:<24} {:>12} {:>12}  {verdict}",
                r.formula.name(),
                r.params_text(),
                r.closed_form,
                r.enumerated
            );
        }
        let _ = writeln!(out, "{} rows, {failed} failed", rows.len());
    }
    Ok(if failed == 0 { 0 } else { 1 })
}

fn render(
    spec: &str,
    mode: ModeArg,
    color_by: ColorArg,
    out: &mut Vec<u8>,
    err: &mut Vec<u8>,
) -> Outcome {
    let t = triangle_spec(spec)?;
    let mode = match mode {
        ModeArg::Ascii => Mode::Ascii,
        ModeArg::Svg => Mode::Svg,
    };
    let color_by = match color_by {
        ColorArg::None => ColorBy::None,
        ColorArg::Region => ColorBy::Region,
    };
    if mode == Mode::Ascii && diagram::ascii_soft_limit_exceeded(&t) {
        let _ = writeln!(
            err,
            "warning: n={} is above {}; the ASCII picture will be very wide",
            t.n(),
            diagram::ASCII_SOFT_LIMIT
        );
    }
    let text = diagram::render(&t, mode, color_by)?;
    let _ = out.write_all(text.as_bytes());
    Ok(0)
}

fn iso(left: &str, right: &str, json: bool, out: &mut Vec<u8>) -> Outcome {
    let s = parse_set_spec(left)?;
    let t = parse_set_spec(right)?;
    let v = iso_check(&s.subset(), &t.subset())?;
    if json {
        let doc = IsoJson {
            holds: v.holds,
            witness: v.witness.clone(),
            mapping: v.mapping.as_ref().map(|m| {
                m.iter()
                    .map(|(x, y)| (x.to_string(), y.to_string()))
                    .collect()
            }),
        };
        let _ = writeln!(out, "{}", to_json(&doc));
    } else if v.holds {
        let _ = writeln!(out, "isomorphic");
        for (x, y) in v.mapping.iter().flatten() {
            let _ = writeln!(out, "{x} -> {y}");
        }
    } else {
        let reason = v
            .witness
            .as_deref()
            .unwrap_or("no bijection preserves + and ·");
        let _ = writeln!(out, "not isomorphic: {reason}");
    }
    Ok(if v.holds { 0 } else { 1 })
}
