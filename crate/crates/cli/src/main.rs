//! `mag`: reproduce the orbit tables, run the self-check suites, execute scenario configs.

mod config;
mod document;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mag_core::observatory::{table, TableId};
use mag_core::verify::{run_suite, Criterion, Report, Suite, VerifyOptions};

use config::{constants, Format};
use document::{Constant, Output, Provenance, ResultDocument, Tolerance};

#[derive(Parser)]
#[command(name = "mag", version, about = "Metric-affine geometry laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute a published table next to its printed values.
    Table {
        /// 7.3.1, 7.3.2, 7.3.3, 7.4.1 or 7.4.2
        id: String,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Run a seeded self-check suite: identities, transport, frames or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Override every residual tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Execute a scenario config file.
    Run {
        config: PathBuf,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Why a command failed; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or config: exit 2.
    Usage(String),
    /// The computation itself failed: exit 3.
    Numeric(String),
}

impl From<mag_core::Error> for Failure {
    fn from(e: mag_core::Error) -> Self {
        use mag_core::Error::*;
        match e {
            InvalidParameter(_) | Shape(_) | InvalidPoint(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

fn render(doc: &ResultDocument, format: Format) -> String {
    match format {
        Format::Human => doc.to_human(),
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv(),
    }
}

fn provenance() -> Provenance {
    Provenance {
        constants: constants()
            .into_iter()
            .map(|(name, value, unit)| Constant { name: name.into(), value, unit: unit.into() })
            .collect(),
        details: Default::default(),
    }
}

fn cmd_table(id: &str, format: Format) -> Result<String, Failure> {
    let id: TableId = id.parse().map_err(|e: mag_core::Error| Failure::Usage(e.to_string()))?;
    let t = table(id)?;
    let outputs = t
        .rows
        .iter()
        .map(|r| Output {
            column: Some(r.column.clone()),
            name: r.quantity.clone(),
            value: r.computed,
            unit: r.unit.into(),
            published: r.published,
            rel_delta: r.rel_delta,
        })
        .collect();
    let mut prov = provenance();
    prov.details.insert("published values".into(), "embedded printed table values".into());
    let doc = ResultDocument {
        command: format!("table {id}"),
        caption: Some(t.caption.into()),
        inputs: serde_json::json!({ "table": id.as_str() }),
        outputs,
        provenance: prov,
        tolerances: vec![Tolerance { name: "relative delta vs printed".into(), value: 5e-3, unit: "1".into() }],
        notes: t.notes.clone(),
    };
    Ok(render(&doc, format))
}

fn verify_human(r: &Report) -> String {
    let mut out = format!("verify {} --seed {}\n", r.suite, r.seed);
    for c in &r.checks {
        let bound = match c.criterion {
            Criterion::Residual { tolerance } => format!("<= {tolerance:e}"),
            Criterion::Band { lo, hi } => format!("in [{lo}, {hi}]"),
        };
        out.push_str(&format!(
            "{} [{}] {}: {:e} {} ({} samples)\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.suite,
            c.name,
            c.value,
            bound,
            c.samples
        ));
    }
    let failed = r.checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!("{} checks, {} failed\n", r.checks.len(), failed));
    out
}

fn verify_document(r: &Report) -> ResultDocument {
    let mut outputs = vec![];
    let mut tolerances = vec![];
    for c in &r.checks {
        outputs.push(Output {
            column: Some(c.suite.into()),
            name: c.name.clone(),
            value: c.value,
            unit: "1".into(),
            published: None,
            rel_delta: None,
        });
        match c.criterion {
            Criterion::Residual { tolerance } => {
                tolerances.push(Tolerance { name: c.name.clone(), value: tolerance, unit: "1".into() })
            }
            Criterion::Band { lo, hi } => {
                tolerances.push(Tolerance { name: format!("{} (lower)", c.name), value: lo, unit: "1".into() });
                if hi.is_finite() {
                    tolerances.push(Tolerance { name: format!("{} (upper)", c.name), value: hi, unit: "1".into() });
                }
            }
        }
    }
    let mut prov = provenance();
    prov.details.insert("seed".into(), r.seed.to_string());
    prov.details.insert("passed".into(), r.passed().to_string());
    ResultDocument {
        command: format!("verify {}", r.suite),
        caption: None,
        inputs: serde_json::json!({ "suite": r.suite.to_string(), "seed": r.seed }),
        outputs,
        provenance: prov,
        tolerances,
        notes: vec![],
    }
}

fn cmd_verify(suite: &str, seed: u64, tol: Option<f64>, format: Format) -> Result<(String, bool), Failure> {
    let suite: Suite = suite.parse().map_err(|e: mag_core::Error| Failure::Usage(e.to_string()))?;
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    let report = run_suite(suite, &VerifyOptions { seed, tolerance: tol, ..Default::default() })
        .map_err(|e| Failure::Numeric(e.to_string()))?;
    let text = match format {
        Format::Human => verify_human(&report),
        f => render(&verify_document(&report), f),
    };
    Ok((text, report.passed()))
}

fn cmd_run(path: &PathBuf, out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let config = config::parse(&text).map_err(Failure::Usage)?;
    let doc = run::execute(&config)?;
    let rendered = render(&doc, config.format);
    match out {
        Some(p) => std::fs::write(p, rendered).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Table { id, format } => cmd_table(id, *format).map(|s| print!("{s}")),
        Command::Verify { suite, seed, tol, format } => cmd_verify(suite, *seed, *tol, *format).and_then(|(s, ok)| {
            print!("{s}");
            if ok {
                Ok(())
            } else {
                Err(Failure::Numeric("one or more checks exceeded tolerance".into()))
            }
        }),
        Command::Run { config, out } => cmd_run(config, out.as_ref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("numeric failure: {m}");
            ExitCode::from(3)
        }
    }
}
