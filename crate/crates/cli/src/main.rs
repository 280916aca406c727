//! Batch front end. Reads a curve germ from a JSON document or a named
//! family, runs one command, prints a table or key-sorted JSON.
//!
//! Exit codes: 0 success, 1 computation or input diagnostic, 2 usage,
//! 3 release-check failure.

mod doc;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use sncurve_core::analysis::{invariant_record, snc_check, subset_sweep};
use sncurve_core::curve::CurveSpec;
use sncurve_core::families::Family;
use sncurve_core::logforms::{self, LogOneForm};
use sncurve_core::ring::{CurveRing, StabilizeOpts};
use sncurve_core::selftest;

use doc::InputDocument;
use report::Format;

#[derive(Parser)]
#[command(
    name = "sncurve",
    version,
    about = "Exact invariants and normal crossing analysis for reduced curve germs"
)]
struct Cli {
    /// JSON document describing the germ
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Built-in family instance, e.g. A2, lines(3), axes(3), axes+diag(3), contact(2)
    #[arg(long, global = true, value_name = "NAME")]
    family: Option<String>,

    /// Initial series precision; doubled automatically when a window is too short
    #[arg(long, global = true, value_name = "N",
          value_parser = clap::value_parser!(i64).range(1..))]
    precision: Option<i64>,

    /// How many times the precision may double before giving up
    #[arg(long, global = true, value_name = "K", default_value_t = 4)]
    max_doublings: u32,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical invariants: delta, conductor, ramification, Milnor number, lambda, h1
    Invariants,
    /// Route verdicts, flags, module summaries, diagnostics
    Snc,
    /// Residues and weak holomorphy of the one-forms in the input document
    Residue,
    /// Decide splayedness for the two-divisor partition in the input document
    Splayed,
    /// Delta and the Saito verdict for every nonempty branch subset
    Sweep {
        /// Refuse germs with more branches than this
        #[arg(long, default_value_t = 5)]
        bound: usize,
    },
    /// Run the built-in release checks against their frozen expectations
    Selftest {
        /// Single criterion index instead of the whole list
        #[arg(long, value_name = "K")]
        criterion: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Command::Selftest { criterion } = cli.command {
        if cli.input.is_some() || cli.family.is_some() {
            bail!("selftest runs on its built-in corpus; drop --input/--family");
        }
        return run_selftest(criterion, cli.format);
    }

    let (label, doc, spec) = load(&cli)?;
    let doc_precision = doc.as_ref().and_then(|d| d.precision);
    if doc_precision.is_some_and(|p| p < 1) {
        bail!("document precision must be at least 1");
    }
    let opts = StabilizeOpts {
        initial_precision: cli.precision.or(doc_precision).unwrap_or(8),
        max_doublings: cli.max_doublings,
    };
    let ring = CurveRing::analyze(spec, opts)?;
    let vars = ring.spec().vars.clone();

    let out = match cli.command {
        Command::Invariants => {
            let rec = invariant_record(&ring)?;
            report::render(
                cli.format,
                &report::invariants_json(&rec),
                report::invariants_table(&rec),
            )
        }
        Command::Snc => {
            let rep = snc_check(&ring)?;
            report::render(cli.format, &report::snc_json(&rep), report::snc_table(&rep))
        }
        Command::Residue => {
            let doc = doc
                .as_ref()
                .ok_or_else(|| anyhow!("residue needs an input document listing forms"))?;
            let forms = doc.parsed_forms(&vars)?;
            if forms.is_empty() {
                bail!("the input document lists no forms");
            }
            let mut entries = Vec::new();
            for (k, (a, b)) in forms.into_iter().enumerate() {
                let form = LogOneForm { a, b };
                if !logforms::is_logarithmic(ring.spec(), &form)? {
                    bail!("form {} is not logarithmic along the curve", k + 1);
                }
                let residues = logforms::residues(&ring, &form)?;
                let weakly_holomorphic = logforms::weakly_holomorphic(&residues);
                entries.push(report::ResidueEntry {
                    a: form.a.display_with(&vars),
                    b: form.b.display_with(&vars),
                    logarithmic: true,
                    residues,
                    weakly_holomorphic,
                });
            }
            report::render(
                cli.format,
                &report::residue_json(&label, &entries),
                report::residue_table(&label, &entries),
            )
        }
        Command::Splayed => {
            let doc = doc
                .as_ref()
                .ok_or_else(|| anyhow!("splayed needs an input document with a partition"))?;
            let (p1, p2) = doc
                .parsed_partition(&vars)?
                .ok_or_else(|| anyhow!("the input document has no partition"))?;
            let (part1, part2, rep) = logforms::splayed_by_polys(&ring, &p1, &p2)?;
            let d1 = p1.display_with(&vars);
            let d2 = p2.display_with(&vars);
            report::render(
                cli.format,
                &report::splayed_json(&label, (&d1, &d2), (&part1, &part2), &rep),
                report::splayed_table(&label, (&d1, &d2), (&part1, &part2), &rep),
            )
        }
        Command::Sweep { bound } => {
            let entries = subset_sweep(&ring, bound)?;
            report::render(
                cli.format,
                &report::sweep_json(&label, bound, &entries),
                report::sweep_table(&label, &entries),
            )
        }
        Command::Selftest { .. } => unreachable!("handled above"),
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

/// Resolve the germ from exactly one of --input / --family. The label is
/// the file stem or the family's display name.
fn load(cli: &Cli) -> Result<(String, Option<InputDocument>, CurveSpec)> {
    match (&cli.input, &cli.family) {
        (Some(_), Some(_)) => bail!("pass either --input or --family, not both"),
        (None, None) => bail!("an input document (--input) or a family (--family) is required"),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let doc = InputDocument::parse(&text)?;
            let label = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("input")
                .to_string();
            let spec = doc.to_spec(&label)?;
            Ok((label, Some(doc), spec))
        }
        (None, Some(name)) => {
            let spec = Family::parse(name)?.generate()?;
            let label = spec.label.clone();
            Ok((label, None, spec))
        }
    }
}

fn run_selftest(criterion: Option<usize>, format: Format) -> Result<ExitCode> {
    let outcomes = match criterion {
        Some(k) => vec![selftest::run(k)?],
        None => selftest::run_all(),
    };
    let out = report::render(
        format,
        &report::selftest_json(&outcomes),
        report::selftest_table(&outcomes),
    );
    print!("{out}");
    if outcomes.iter().all(|o| o.passed()) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}
