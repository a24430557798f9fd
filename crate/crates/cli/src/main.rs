//! `hosoya`: render the Hosoya triangle, lay out configurations, and verify
//! Fibonacci identities exactly.
//!
//! Exit status: 0 when every check passes, 1 when at least one identity
//! check fails, 2 on usage or parameter-domain errors.

mod params;

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hosoya_core::geometry::{self, ConfigSpec};
use hosoya_core::identities::{verify_with, Form, IdentityError, IdentityId, Params, Sweep};
use hosoya_core::oracle::{cross_check, RecursiveTable};
use hosoya_core::render::{self, Format, RenderOptions};
use hosoya_core::{ClosedForm, ReportDocument, ReportResult};
use num_bigint::BigInt;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "hosoya",
    version,
    about = "Exact Hosoya triangle geometry and Fibonacci identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw rows 0..=ROWS of the triangle.
    Render {
        /// Last row to draw.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        rows: u32,
        #[arg(long, default_value = "ascii")]
        format: Format,
        /// Configuration to mark, e.g. `diagonal:d=3,len=6`.
        #[arg(long)]
        highlight: Option<ConfigSpec>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Check one identity instance, or sweep a grid when any parameter is a
    /// `lo..hi` range. Parameters are passed as `--name value`.
    Verify {
        /// Catalog identifier, e.g. CASSINI. `hosoya list` prints them all.
        id: String,
        /// `--<param> <value|lo..hi>` pairs, plus `--paper-form`,
        /// `--format json|text` and `--out <path>`.
        #[arg(
            trailing_var_arg = true,
            allow_hyphen_values = true,
            value_name = "ARGS"
        )]
        rest: Vec<String>,
    },
    /// Materialize a configuration, e.g. `hockey_stick:k=3,n=2,side=left`.
    Config {
        spec: ConfigSpec,
        #[arg(long, value_enum, default_value = "json")]
        format: ConfigFormat,
        /// Rows drawn by the ascii/svg formats; defaults to the lowest point.
        #[arg(long)]
        rows: Option<u32>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Generalized Fibonacci sequence of the d-th oblique ladder.
    Sequence {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        d: i64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        count: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// Rebuild rows 0..=ROWS from the two recursions and compare with the closed form.
    OracleCheck {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        rows: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
        #[arg(long)]
        out: Option<String>,
    },
    /// List the identity catalog.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConfigFormat {
    Json,
    Csv,
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

/// Error that maps onto an exit status.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn emit(text: &str, out: Option<&str>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Render {
            rows,
            format,
            highlight,
            out,
        } => {
            let mut opts = RenderOptions::new(rows, format);
            if let Some(spec) = highlight {
                let set = spec
                    .materialize()
                    .map_err(|e| Failure::Usage(e.to_string()))?;
                opts = opts.highlight(set);
            }
            emit(&render::render(&opts), out.as_deref())?;
            Ok(0)
        }
        Command::Verify { id, rest } => cmd_verify(&id, &rest),
        Command::Config {
            spec,
            format,
            rows,
            out,
        } => cmd_config(&spec, format, rows, out.as_deref()),
        Command::Sequence { d, count, format } => {
            let seq = geometry::ladder_sequence(d, count as usize)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let strings: Vec<String> = seq.iter().map(BigInt::to_string).collect();
            let text = match format {
                TextOrJson::Text => strings.join(","),
                TextOrJson::Json => serde_json::to_string(&strings).expect("strings serialize"),
            };
            println!("{text}");
            Ok(0)
        }
        Command::OracleCheck { rows, format, out } => {
            let start = Instant::now();
            let table = RecursiveTable::build(rows).map_err(|e| Failure::Runtime(e.to_string()))?;
            let check = cross_check(&table);
            let elapsed = start.elapsed();
            let mismatches = check.mismatches.len();
            let text = match format {
                TextOrJson::Text => {
                    let mut text = format!(
                        "oracle-check: rows 0..={rows}, {} entries, {mismatches} mismatches ({:.3} s)\n",
                        check.entries,
                        elapsed.as_secs_f64()
                    );
                    for p in &check.mismatches {
                        text.push_str(&format!("  mismatch at {p}\n"));
                    }
                    text
                }
                TextOrJson::Json => {
                    let inputs = BTreeMap::from([("rows".to_string(), rows.to_string())]);
                    let mut doc = ReportDocument::new("oracle-check", inputs);
                    doc.results.push(ReportResult::OracleCheck(check));
                    doc.to_json() + "\n"
                }
            };
            emit(&text, out.as_deref())?;
            Ok(if mismatches == 0 { 0 } else { EXIT_FAILURE })
        }
        Command::List => {
            for id in IdentityId::ALL {
                let status = match id.status() {
                    hosoya_core::Status::AsStated => "as-stated",
                    hosoya_core::Status::Corrected => "corrected",
                };
                println!(
                    "{:<18} {:<10} ({})  {}",
                    id.name(),
                    status,
                    id.params().join(", "),
                    id.claim()
                );
            }
            Ok(0)
        }
    }
}

fn cmd_verify(id: &str, rest: &[String]) -> Result<u8, Failure> {
    let id: IdentityId = id
        .parse()
        .map_err(|e: IdentityError| Failure::Usage(e.to_string()))?;
    let args = params::parse_verify_args(rest).map_err(Failure::Usage)?;
    let text_output = match args.format.as_deref() {
        None | Some("json") => false,
        Some("text") => true,
        Some(other) => {
            return Err(Failure::Usage(format!(
                "unknown verify format `{other}` (expected json or text)"
            )))
        }
    };
    let form = if args.paper_form {
        Form::Paper
    } else {
        Form::Verified
    };

    let mut inputs: BTreeMap<String, String> = args
        .ranges
        .iter()
        .map(|(k, (lo, hi))| {
            let v = if lo == hi {
                lo.to_string()
            } else {
                format!("{lo}..{hi}")
            };
            (k.clone(), v)
        })
        .collect();
    inputs.insert("id".into(), id.name().into());
    if args.paper_form {
        inputs.insert("paper_form".into(), "true".into());
    }
    let mut doc = ReportDocument::new("verify", inputs);

    let usage = |e: IdentityError| match e {
        IdentityError::Triangle(_) | IdentityError::Geometry(_) => Failure::Runtime(e.to_string()),
        other => Failure::Usage(other.to_string()),
    };
    let summary = if args.sweep {
        let report = Sweep::new(id)
            .ranges(&args.ranges)
            .form(form)
            .run()
            .map_err(usage)?;
        let line = format!(
            "{} ({:?}): {} checked, {} failures{}",
            id,
            report.form,
            report.instances,
            report.failure_count,
            report
                .alternate
                .as_ref()
                .map(|a| format!(
                    "; {:?} form: {} checked, {} failures",
                    a.form, a.checked, a.failure_count
                ))
                .unwrap_or_default()
        );
        doc.results.push(ReportResult::Sweep(report));
        line
    } else {
        let params: Params = args
            .ranges
            .iter()
            .map(|(k, (v, _))| (k.clone(), *v))
            .collect();
        let report = verify_with(id, &params, form, &ClosedForm).map_err(usage)?;
        let rhs: Vec<String> = report.rhs.iter().map(|t| t.value.to_string()).collect();
        let line = format!(
            "{} {:?}: {} = {} -> {}",
            id,
            report.params,
            report.lhs.value,
            rhs.join(" = "),
            report.note
        );
        doc.results.push(ReportResult::Identity(report));
        line
    };

    let text = if text_output {
        summary + "\n"
    } else {
        doc.to_json() + "\n"
    };
    emit(&text, args.out.as_deref())?;
    Ok(if doc.failure_count() == 0 {
        0
    } else {
        EXIT_FAILURE
    })
}

fn cmd_config(
    spec: &ConfigSpec,
    format: ConfigFormat,
    rows: Option<u32>,
    out: Option<&str>,
) -> Result<u8, Failure> {
    let set = spec
        .materialize()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let text = match format {
        ConfigFormat::Json => {
            let doc = serde_json::json!({ "config": spec, "points": set });
            serde_json::to_string_pretty(&doc).expect("point sets serialize") + "\n"
        }
        ConfigFormat::Csv => {
            let mut text = String::from("r,k,value,role\n");
            for p in &set.points {
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    p.point.r(),
                    p.point.k(),
                    p.value,
                    p.role.as_deref().unwrap_or("")
                ));
            }
            text
        }
        ConfigFormat::Ascii | ConfigFormat::Svg => {
            let lowest = set.coords().map(|p| p.r()).max().unwrap_or(1).max(1) as u32;
            let fmt = if matches!(format, ConfigFormat::Ascii) {
                Format::Ascii
            } else {
                Format::Svg
            };
            render::render(&RenderOptions::new(rows.unwrap_or(lowest), fmt).highlight(set))
        }
    };
    emit(&text, out)?;
    Ok(0)
}
