//! `rankdist` command-line tool.
//!
//! Exit codes: 0 success, 2 invalid input, 1 internal failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rankdist::analysis::{dg_report, inversion_types};
use rankdist::experiments::{distribution, DistKind, Distribution};
use rankdist::format::{format_sig, round_sig, SIGNIFICANT_DIGITS};
use rankdist::{complete_and_align, ListFormat, MeasureReport, RankedList, WeightTable};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "rankdist",
    version,
    about = "Weighted footrule and Kendall tau between ranked lists"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare two ranked lists (one token per line, or a JSON array).
    Compare {
        list_a: PathBuf,
        list_b: PathBuf,
        /// JSON object mapping tokens to positive weights; "__default__" sets the default.
        #[arg(short, long)]
        weights: Option<PathBuf>,
        /// Also report normalized values mapped to [-1, 1].
        #[arg(long)]
        signed: bool,
        /// Include the inequality diagnostics and inversion decomposition.
        #[arg(long)]
        explain: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write to this file instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive distribution over all permutations of size N.
    Dist {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long = "n", short = 'n')]
        n: usize,
        /// Frequency table destination.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(short, long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        table_format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Ratio,
    Footrule,
    Kendall,
}

impl From<Kind> for DistKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Ratio => DistKind::Ratio,
            Kind::Footrule => DistKind::Footrule,
            Kind::Kendall => DistKind::Kendall,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Internal(String),
}

impl From<rankdist::Error> for Failure {
    fn from(e: rankdist::Error) -> Self {
        if e.is_validation() {
            Failure::Invalid(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_list(path: &Path) -> Result<RankedList, Failure> {
    let text = read_input(path)?;
    RankedList::parse(&text, ListFormat::detect(&text))
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

/// Rounds every float in `v` to the report precision.
fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or_default(), SIGNIFICANT_DIGITS);
            // Integral floats print as integers.
            if x.fract() == 0.0 && x.abs() < 9.0e15 {
                json!(x as i64)
            } else {
                json!(x)
            }
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        other => other,
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<Value, Failure> {
    serde_json::to_value(value).map_err(|e| Failure::Internal(e.to_string()))
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format_sig(x, SIGNIFICANT_DIGITS),
            _ => n.to_string(),
        },
        Value::Bool(b) => b.to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Flattens a one-level-nested object into `prefix_key` columns.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}_{k}")
                };
                flatten(&key, inner, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}

fn cmd_compare(
    list_a: &Path,
    list_b: &Path,
    weights: Option<&Path>,
    signed: bool,
    explain: bool,
    format: Format,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let a = read_list(list_a)?;
    let b = read_list(list_b)?;
    let table = match weights {
        Some(p) => WeightTable::from_json(&read_input(p)?)
            .map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))?,
        None => WeightTable::unit(),
    };
    let pair = complete_and_align(&a, &b)?;
    let report = MeasureReport::for_pair(&pair, &table)?;
    if report.footrule_overflow {
        eprintln!(
            "warning: normalized footrule {} exceeds 1 under these weights",
            format_sig(report.footrule_norm.unwrap_or_default(), SIGNIFICANT_DIGITS)
        );
    }

    let mut doc = serde_json::Map::new();
    doc.insert("report".into(), to_json(&report)?);
    if signed {
        if report.footrule_overflow {
            eprintln!("warning: signed footrule is undefined for a normalized value above 1; reporting null");
        }
        doc.insert(
            "signed".into(),
            json!({
                "footrule": report.footrule_signed(),
                "kendall": report.kendall_signed(),
            }),
        );
    }
    if explain {
        doc.insert("dg_report".into(), to_json(&dg_report(&pair, &table))?);
        doc.insert("inversions".into(), to_json(&inversion_types(&pair))?);
    }
    let doc = round_floats(Value::Object(doc));

    let text = match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(&doc).map_err(|e| Failure::Internal(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut columns = Vec::new();
            for (section, value) in doc.as_object().into_iter().flatten() {
                let prefix = if section == "report" {
                    ""
                } else {
                    section.as_str()
                };
                flatten(prefix, value, &mut columns);
            }
            let header: Vec<&str> = columns.iter().map(|(k, _)| k.as_str()).collect();
            let row: Vec<String> = columns.iter().map(|(_, v)| csv_field(v)).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
    };
    write_output(out, &text)
}

fn table_json(d: &Distribution) -> Value {
    json!({
        "kind": d.kind.name(),
        "n": d.n,
        "total": d.table.total(),
        "identity_excluded": d.identity_excluded(),
        "entries": d.table.exact_entries().iter().map(|e| json!({
            "num": e.num,
            "den": e.den,
            "count": e.count,
        })).collect::<Vec<_>>(),
    })
}

fn cmd_dist(
    kind: Kind,
    n: usize,
    out: Option<&Path>,
    jobs: usize,
    table_format: Format,
) -> Result<(), Failure> {
    if jobs == 0 {
        return Err(Failure::Invalid("--jobs must be at least 1".into()));
    }
    let d = distribution(kind.into(), n, jobs)?;
    if let Some(path) = out {
        let text = match table_format {
            Format::Csv => d.table.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&table_json(&d))
                    .map_err(|e| Failure::Internal(e.to_string()))?;
                s.push('\n');
                s
            }
        };
        write_output(Some(path), &text)?;
    }
    let stats = round_floats(to_json(&d.stats_json())?);
    let mut text =
        serde_json::to_string_pretty(&stats).map_err(|e| Failure::Internal(e.to_string()))?;
    let _ = writeln!(text);
    write_output(None, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compare {
            list_a,
            list_b,
            weights,
            signed,
            explain,
            format,
            out,
        } => cmd_compare(
            list_a,
            list_b,
            weights.as_deref(),
            *signed,
            *explain,
            *format,
            out.as_deref(),
        ),
        Command::Dist {
            kind,
            n,
            out,
            jobs,
            table_format,
        } => cmd_dist(*kind, *n, out.as_deref(), *jobs, *table_format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
