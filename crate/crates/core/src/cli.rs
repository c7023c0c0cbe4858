//! The `tlpc` command line.
//!
//! Exit codes: 0 when the analysis finds nothing, 1 when it reports at
//! least one violation, 2 when the input is rejected before analysis.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::parser::{parse_program, parse_query};
use crate::report::CheckReport;
use crate::srcheck::{
    check_head_condition, check_semi_generic, check_subject_reduction_bounded, eq_of_type_skeleton,
    is_proper_type_skeleton, monitor_derivation, nearest_partition, search_partition, type_skeleton_of, AnalysisError,
    Partition,
};
use crate::syntax::{Program, Query, TermSubstitution};
use crate::trees::{enumerate_skeletons, eq_of_skeleton, is_proper_skeleton, skeleton_to_json, ClauseDb, Selection};
use crate::typecheck::{clause_typing, query_typing};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tlpc", version, about = "Analyse prescriptively typed logic programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Head,
    Semi,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SelectionArg {
    Leftmost,
    All,
}

impl From<SelectionArg> for Selection {
    fn from(s: SelectionArg) -> Selection {
        match s {
            SelectionArg::Leftmost => Selection::Leftmost,
            SelectionArg::All => Selection::All,
        }
    }
}

/// Where the partition for the semi-generic check comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartitionSource {
    /// `partition` directives if the file has any, otherwise a search.
    Annotated,
    /// Always search.
    Auto,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Static conditions: head condition and/or semi-genericity.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "annotated")]
        partition: PartitionSource,
        /// Queries that must be semi-generic too (repeatable).
        #[arg(long)]
        query: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Most general type of every clause, or of a query.
    Infer {
        file: PathBuf,
        #[arg(long)]
        query: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// SLD derivations with the operational subject-reduction monitor.
    Run {
        file: PathBuf,
        #[arg(long)]
        query: Option<String>,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, value_enum, default_value = "leftmost")]
        selection: SelectionArg,
        #[arg(long)]
        json: bool,
    },
    /// Bounded check that proper skeletons have proper type skeletons.
    Sr {
        file: PathBuf,
        #[arg(long)]
        query: Option<String>,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Dump skeletons, and with `--types` their type skeletons.
    Skeletons {
        file: PathBuf,
        #[arg(long)]
        query: Option<String>,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long)]
        types: bool,
        #[arg(long)]
        json: bool,
    },
}

/// Input rejected before analysis.
struct InputError(String);

impl From<AnalysisError> for InputError {
    fn from(e: AnalysisError) -> Self {
        InputError(e.to_string())
    }
}

struct Style {
    color: bool,
}

impl Style {
    fn from_env() -> Style {
        Style {
            color: std::env::var("TLPC_COLOR").is_ok_and(|v| v == "1"),
        }
    }

    fn verdict(&self, passed: bool) -> String {
        let (word, code) = if passed { ("pass", 32) } else { ("fail", 31) };
        if self.color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }

    fn report(&self, r: &CheckReport) -> String {
        let text = r.to_string();
        let word = if r.passed() { "pass" } else { "fail" };
        match text.strip_prefix(word) {
            Some(rest) => format!("{}{rest}", self.verdict(r.passed())),
            None => text,
        }
    }
}

fn load(file: &PathBuf) -> Result<Program, InputError> {
    let text = std::fs::read_to_string(file).map_err(|e| InputError(format!("cannot read {}: {e}", file.display())))?;
    parse_program(&text).map_err(|d| InputError(format!("{}:\n{d}", file.display())))
}

/// The `--query` text, or the body of the program's `go` clause.
fn the_query(p: &Program, text: Option<&str>) -> Result<Query, InputError> {
    match text {
        Some(t) => parse_query(t, &p.signature).map_err(|d| InputError(format!("query: {d}"))),
        None => p
            .go_query()
            .ok_or_else(|| InputError("--query is required (the program has no `go` clause)".into())),
    }
}

fn typed_query(p: &Program, text: Option<&str>) -> Result<Query, InputError> {
    let q = the_query(p, text)?;
    query_typing(&p.signature, &q).map_err(|e| InputError(format!("query `{q}` is not typable: {e}")))?;
    Ok(q)
}

fn bindings_json(theta: &TermSubstitution) -> Value {
    Value::Object(
        theta
            .iter()
            .map(|(v, t)| (v.to_string(), Value::String(t.to_string())))
            .collect(),
    )
}

fn bindings_text(theta: &TermSubstitution) -> String {
    if theta.is_empty() {
        return "yes".to_string();
    }
    theta
        .iter()
        .map(|(v, t)| format!("{v} = {t}"))
        .collect::<Vec<_>>()
        .join(", ")
}

struct Output {
    code: i32,
    text: String,
}

fn finish(json: bool, passed: bool, value: Value, text: String) -> Output {
    Output {
        code: if passed { EXIT_PASS } else { EXIT_VIOLATION },
        text: if json {
            serde_json::to_string_pretty(&value).expect("json serialises")
        } else {
            text
        },
    }
}

fn cmd_check(
    file: &PathBuf,
    mode: Mode,
    source: PartitionSource,
    queries: &[String],
    json: bool,
    style: &Style,
) -> Result<Output, InputError> {
    let p = load(file)?;
    let qs = queries
        .iter()
        .map(|q| the_query(&p, Some(q)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut passed = true;
    let mut text = String::new();
    let mut value = json!({});
    if mode != Mode::Semi {
        let r = check_head_condition(&p)?;
        passed &= r.passed();
        writeln!(text, "head condition: {}", style.report(&r)).unwrap();
        value["head"] = r.to_json();
    }
    if mode != Mode::Head {
        let annotated = source == PartitionSource::Annotated && !p.partitions.is_empty();
        let (found, part, origin) = if annotated {
            (true, Partition::from_decls(&p.signature, &p.partitions)?, "annotated")
        } else {
            match search_partition(&p, &qs)? {
                Some(part) => (true, part, "search"),
                None => (false, nearest_partition(&p, &qs)?.0, "search"),
            }
        };
        let r = check_semi_generic(&p, &part, &qs)?;
        passed &= r.passed();
        if found {
            writeln!(text, "semi-generic with {part} ({origin}): {}", style.report(&r)).unwrap();
        } else {
            writeln!(
                text,
                "semi-generic: {} (no partition works; nearest is {part})\n  {}",
                style.verdict(false),
                style.report(&r).replace('\n', "\n  ")
            )
            .unwrap();
        }
        value["semi"] = json!({
            "partition": part.to_string(),
            "source": origin,
            "found": found,
            "report": r.to_json(),
        });
    }
    Ok(finish(json, passed, value, text.trim_end().to_string()))
}

fn cmd_infer(file: &PathBuf, query: Option<&str>, json: bool) -> Result<Output, InputError> {
    let p = load(file)?;
    let mut text = String::new();
    let mut items = Vec::new();
    let mut passed = true;
    let targets: Vec<(String, crate::syntax::Clause)> = match query {
        Some(_) => {
            let q = the_query(&p, query)?;
            vec![(format!("query {q}"), q.wrapper())]
        }
        None => p
            .clauses
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("clause {i}"), c.clone()))
            .collect(),
    };
    for (name, c) in &targets {
        let shown = if query.is_some() {
            String::new()
        } else {
            format!(" {c}")
        };
        match clause_typing(&p.signature, c) {
            Ok(ct) => {
                writeln!(text, "{name}:{shown}\n  type: {}\n  typing: {}", ct.tuple(), ct.typing).unwrap();
                items.push(
                    json!({"target": name, "clause": c.to_string(), "type": ct.tuple().to_string(),
                    "typing": ct.typing.to_string()}),
                );
            }
            Err(e) => {
                passed = false;
                writeln!(text, "{name}:{shown}\n  untypable: {e}").unwrap();
                items.push(json!({"target": name, "clause": c.to_string(), "error": e.to_string()}));
            }
        }
    }
    Ok(finish(json, passed, Value::Array(items), text.trim_end().to_string()))
}

fn cmd_run(
    file: &PathBuf,
    query: Option<&str>,
    depth: usize,
    selection: SelectionArg,
    json: bool,
    style: &Style,
) -> Result<Output, InputError> {
    let p = load(file)?;
    let q = typed_query(&p, query)?;
    let out = monitor_derivation(&p, &q, depth, selection.into())?;
    let mut text = String::new();
    if out.answers.is_empty() {
        writeln!(text, "no answers within depth {depth}").unwrap();
    }
    for a in &out.answers {
        writeln!(text, "answer: {}", bindings_text(a)).unwrap();
    }
    writeln!(text, "explored {} derivation(s)", out.explored).unwrap();
    write!(text, "monitor: {}", style.report(&out.report)).unwrap();
    let value = json!({
        "query": q.to_string(),
        "answers": out.answers.iter().map(bindings_json).collect::<Vec<_>>(),
        "explored": out.explored,
        "monitor": out.report.to_json(),
    });
    Ok(finish(json, out.report.passed(), value, text))
}

fn indent(s: &str, by: &str) -> String {
    s.lines().map(|l| format!("{by}{l}")).collect::<Vec<_>>().join("\n")
}

fn cmd_sr(file: &PathBuf, query: Option<&str>, depth: usize, json: bool, style: &Style) -> Result<Output, InputError> {
    let p = load(file)?;
    let q = typed_query(&p, query)?;
    let out = check_subject_reduction_bounded(&p, &q, depth)?;
    let mut text = format!(
        "subject reduction for `{q}`: {}\nproper skeletons checked: {}",
        style.report(&out.report),
        out.proper_skeletons
    );
    let mut value = json!({
        "query": q.to_string(),
        "properSkeletons": out.proper_skeletons,
        "report": out.report.to_json(),
    });
    if let Some(cx) = &out.counterexample {
        write!(
            text,
            "\ncounterexample skeleton:\n{}\ntype skeleton:\n{}\nfailing equation (level {}): {}",
            indent(&cx.skeleton.to_string(), "  "),
            indent(&cx.type_skeleton.to_string(), "  "),
            cx.level,
            cx.equation
        )
        .unwrap();
        value["counterexample"] = json!({
            "skeleton": skeleton_to_json(&cx.skeleton),
            "typeSkeleton": cx.type_skeleton.to_string(),
            "equation": cx.equation.to_string(),
            "level": cx.level,
        });
    }
    Ok(finish(json, out.report.passed(), value, text))
}

fn cmd_skeletons(
    file: &PathBuf,
    query: Option<&str>,
    depth: usize,
    types: bool,
    json: bool,
) -> Result<Output, InputError> {
    let p = load(file)?;
    let q = typed_query(&p, query)?;
    let db = ClauseDb::new(&p, Some(&q));
    let mut text = String::new();
    let mut items = Vec::new();
    let all = enumerate_skeletons(&db, depth);
    writeln!(text, "{} skeleton(s) for `{q}` up to depth {depth}", all.len()).unwrap();
    for (n, s) in all.iter().enumerate() {
        let eqs = eq_of_skeleton(s);
        let proper = is_proper_skeleton(s);
        writeln!(
            text,
            "\nskeleton {n} (height {}):\n{}",
            s.height(),
            indent(&s.to_string(), "  ")
        )
        .unwrap();
        writeln!(text, "  Eq(S): {eqs}").unwrap();
        match &proper {
            Ok(theta) => writeln!(text, "  proper: yes, mgu {theta}").unwrap(),
            Err(e) => writeln!(text, "  proper: no ({e})").unwrap(),
        }
        let mut item = json!({
            "skeleton": skeleton_to_json(s),
            "eq": eqs.to_string(),
            "proper": proper.is_ok(),
        });
        if let Ok(theta) = &proper {
            item["mgu"] = Value::String(theta.to_string());
        }
        if types {
            let ts = type_skeleton_of(&p.signature, s).map_err(|e| InputError(e.to_string()))?;
            let teqs = eq_of_type_skeleton(&ts);
            let tproper = is_proper_type_skeleton(&ts);
            writeln!(text, "  type skeleton:\n{}", indent(&ts.to_string(), "    ")).unwrap();
            writeln!(text, "  Eq(TS): {teqs}").unwrap();
            match &tproper {
                Ok(theta) => writeln!(text, "  type skeleton proper: yes, mgu {theta}").unwrap(),
                Err(e) => writeln!(text, "  type skeleton proper: no ({e})").unwrap(),
            }
            item["typeSkeleton"] = json!({
                "text": ts.to_string(),
                "eq": teqs.to_string(),
                "proper": tproper.is_ok(),
            });
        }
        items.push(item);
    }
    let value = json!({"query": q.to_string(), "depth": depth, "skeletons": items});
    Ok(finish(json, true, value, text.trim_end().to_string()))
}

fn dispatch(cli: &Cli, style: &Style) -> Result<Output, InputError> {
    match &cli.command {
        Command::Check {
            file,
            mode,
            partition,
            query,
            json,
        } => cmd_check(file, *mode, *partition, query, *json, style),
        Command::Infer { file, query, json } => cmd_infer(file, query.as_deref(), *json),
        Command::Run {
            file,
            query,
            depth,
            selection,
            json,
        } => cmd_run(file, query.as_deref(), *depth, *selection, *json, style),
        Command::Sr {
            file,
            query,
            depth,
            json,
        } => cmd_sr(file, query.as_deref(), *depth, *json, style),
        Command::Skeletons {
            file,
            query,
            depth,
            types,
            json,
        } => cmd_skeletons(file, query.as_deref(), *depth, *types, *json),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code and everything that would be printed.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            return (code, e.to_string().trim_end().to_string());
        }
    };
    match dispatch(&cli, &Style::from_env()) {
        Ok(out) => (out.code, out.text),
        Err(InputError(msg)) => (EXIT_INPUT, format!("error: {msg}")),
    }
}
