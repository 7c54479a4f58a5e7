//! Command-line interface: flip products, invariants, realisation counts,
//! table reproduction, and the verification suite.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tropflip::descriptor::{GainGraphDescriptor, MatroidDescriptor};
use tropflip::enumerate::{h_table, scan_h_table, self_product_table};
use tropflip::flip::{hadamard_matroid, FlipConfig, FlipEngine, MemoMode, PivotRule};
use tropflip::gain::{realisation_per, realisation_plane, realisation_sym, GainGraph, GainGroup};
use tropflip::invariants::{beta_direct, char_poly, nbc_count_natural};
use tropflip::matroid::Matroid;
use tropflip::oracle::{oracle_flip, GenericShift};
use tropflip::suite;
use tropflip::Error;

#[derive(Parser)]
#[command(
    name = "tropflip",
    version,
    about = "Exact flip products of matroids, their invariants, and rigidity realisation counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker count for parallelizable commands.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MemoArg {
    Exact,
    Iso,
}

#[derive(Subcommand)]
enum Command {
    /// Flip product of two matroids.
    Flip {
        /// First matroid: shorthand (uniform:N:R, graphic:U-V,..), a JSON
        /// descriptor file, or inline JSON.
        m: String,
        /// Second matroid, same forms.
        n: String,
        /// Pivot rule: an element index, or `auto` for min-branching.
        #[arg(long)]
        pivot: Option<String>,
        /// Memoization key mode.
        #[arg(long, value_enum, default_value_t = MemoArg::Exact)]
        memo: MemoArg,
    },
    /// Beta invariant of a matroid (signed subset sum).
    Beta { m: String },
    /// Number of nbc-bases under the natural element order.
    Nbc { m: String },
    /// Characteristic polynomial, its reduced form, and the mu vector.
    Charpoly { m: String },
    /// Hadamard product matroid, emitted as a bases descriptor.
    Hadamard { m: String, n: String },
    /// Flip product via the tropical stable-intersection oracle.
    Oracle {
        m: String,
        n: String,
        /// Seed for the generic shift vector.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Which coordinate to pin to zero.
        #[arg(long, default_value_t = 0)]
        epsilon: usize,
    },
    /// Plane realisation number of a minimally rigid graph.
    C2 { graph: String },
    /// Rotation-symmetric realisation number of a Z_k gain graph.
    Csym { graph: String },
    /// Periodic realisation number of a Z^d gain graph.
    Cper { graph: String },
    /// Histogram of flip products over rank-(k1,k2) matroid pairs on
    /// k1+k2-1 elements, with the conjectured-property scan.
    Htable { k1: usize, k2: usize },
    /// Histogram of self flip products at rank (n+1)/2 on n elements.
    Selftable { n: usize },
    /// Run the exhaustive verification suite (small ground sets).
    Check {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let internal = matches!(
                err.downcast_ref::<Error>(),
                Some(
                    Error::OddSelfProduct
                        | Error::GainRuleMismatch
                        | Error::DegeneracyRetriesExhausted { .. }
                )
            );
            ExitCode::from(if internal { 3 } else { 2 })
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let format = cli.format;
    match cli.command {
        Command::Flip { m, n, pivot, memo } => {
            let cfg = FlipConfig {
                pivot: parse_pivot(pivot.as_deref())?,
                memo: match memo {
                    MemoArg::Exact => MemoMode::Exact,
                    MemoArg::Iso => MemoMode::IsoCanonical,
                },
                parallel_width: cli.jobs,
            };
            let engine = FlipEngine::new(cfg);
            let value = engine.flip(&load_matroid(&m)?, &load_matroid(&n)?)?;
            emit_value(format, &value.to_string());
        }
        Command::Beta { m } => {
            let value = beta_direct(&load_matroid(&m)?);
            emit_value(format, &value.to_string());
        }
        Command::Nbc { m } => {
            let value = nbc_count_natural(&load_matroid(&m)?);
            emit_value(format, &value.to_string());
        }
        Command::Charpoly { m } => {
            let cp = char_poly(&load_matroid(&m)?);
            match format {
                Format::Text => {
                    println!("p       {}", render_poly(&cp.coeffs));
                    println!("reduced {}", render_poly(&cp.reduced));
                    println!("mu      {:?}", cp.mu);
                }
                Format::Json => emit_json(&json!({
                    "coeffs": cp.coeffs,
                    "reduced": cp.reduced,
                    "mu": cp.mu,
                })),
            }
        }
        Command::Hadamard { m, n } => {
            let product = hadamard_matroid(&load_matroid(&m)?, &load_matroid(&n)?)?;
            let descriptor = MatroidDescriptor::from_matroid(&product);
            match format {
                Format::Text => {
                    println!(
                        "rank {} on {} elements, {} bases, free: {}",
                        product.rank(),
                        product.n(),
                        product.bases().len(),
                        product.rank() == product.n()
                    );
                }
                Format::Json => emit_json(&serde_json::to_value(&descriptor)?),
            }
        }
        Command::Oracle { m, n, seed, epsilon } => {
            let shift = GenericShift::new(seed);
            let value = oracle_flip(&load_matroid(&m)?, &load_matroid(&n)?, epsilon, &shift)?;
            emit_value(format, &value.to_string());
        }
        Command::C2 { graph } => {
            let (vertices, edges) = load_plain_graph(&graph)?;
            let engine = FlipEngine::new(config_with_jobs(cli.jobs));
            let count = realisation_plane(&engine, vertices, &edges)?;
            emit_value(format, &count.to_string());
        }
        Command::Csym { graph } => {
            let g = load_gain_graph(&graph)?;
            if !matches!(g.group(), GainGroup::Zk { .. }) {
                bail!(Error::WrongGroup);
            }
            let engine = FlipEngine::new(config_with_jobs(cli.jobs));
            let count = realisation_sym(&engine, &g)?;
            emit_value(format, &count.to_string());
        }
        Command::Cper { graph } => {
            let g = load_gain_graph(&graph)?;
            if !matches!(g.group(), GainGroup::Lattice { .. }) {
                bail!(Error::WrongGroup);
            }
            let engine = FlipEngine::new(config_with_jobs(cli.jobs));
            let count = realisation_per(&engine, &g)?;
            emit_value(format, &count.to_string());
        }
        Command::Htable { k1, k2 } => {
            let table = h_table(k1, k2, cli.jobs)?;
            let report = scan_h_table(&table, k1, k2);
            match format {
                Format::Text => {
                    print_table(&format!("({k1},{k2})"), &table);
                    println!(
                        "conjectured properties: surjective {} / n! threshold {}",
                        verdict(report.surjective),
                        verdict(report.threshold_iff)
                    );
                }
                Format::Json => emit_json(&json!({
                    "table": table_json(&table),
                    "conjecture": {
                        "max_value": report.max_value,
                        "surjective": report.surjective,
                        "threshold_iff": report.threshold_iff,
                        "violations": report.violations,
                    },
                })),
            }
        }
        Command::Selftable { n } => {
            let table = self_product_table(n, cli.jobs)?;
            match format {
                Format::Text => print_table(&format!("({n},{})", (n + 1) / 2), &table),
                Format::Json => emit_json(&table_json(&table)),
            }
        }
        Command::Check { seed } => {
            let results = suite::run_full_suite(cli.jobs, seed);
            let mut all_ok = true;
            match format {
                Format::Text => {
                    for (name, outcome) in &results {
                        match outcome {
                            Ok(detail) => println!("ok   {name}: {detail}"),
                            Err(detail) => {
                                all_ok = false;
                                println!("FAIL {name}: {detail}");
                            }
                        }
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = results
                        .iter()
                        .map(|(name, outcome)| {
                            if outcome.is_err() {
                                all_ok = false;
                            }
                            json!({
                                "name": name,
                                "passed": outcome.is_ok(),
                                "detail": match outcome {
                                    Ok(d) | Err(d) => d,
                                },
                            })
                        })
                        .collect();
                    emit_json(&serde_json::Value::Array(rows));
                }
            }
            if !all_ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn config_with_jobs(jobs: usize) -> FlipConfig {
    FlipConfig { parallel_width: jobs, ..FlipConfig::default() }
}

fn parse_pivot(pivot: Option<&str>) -> anyhow::Result<PivotRule> {
    match pivot {
        None => Ok(PivotRule::FirstIndex),
        Some("auto") => Ok(PivotRule::MinBranching),
        Some(index) => {
            let index: usize = index
                .parse()
                .map_err(|_| anyhow!("--pivot expects an element index or 'auto', got '{index}'"))?;
            Ok(PivotRule::Fixed(index))
        }
    }
}

/// A matroid argument: shorthand, inline JSON, or a JSON file.
fn load_matroid(arg: &str) -> anyhow::Result<Matroid> {
    Ok(load_matroid_descriptor(arg)?.build()?)
}

fn load_matroid_descriptor(arg: &str) -> anyhow::Result<MatroidDescriptor> {
    if let Some(parsed) = MatroidDescriptor::from_shorthand(arg) {
        return Ok(parsed?);
    }
    if arg.trim_start().starts_with('{') {
        return Ok(MatroidDescriptor::from_json(arg)?);
    }
    let text = std::fs::read_to_string(Path::new(arg))
        .with_context(|| format!("reading matroid descriptor '{arg}'"))?;
    Ok(MatroidDescriptor::from_json(&text)?)
}

/// A plain graph argument for `c2`: the graphic shorthand or a descriptor
/// of type `graphic`.
fn load_plain_graph(arg: &str) -> anyhow::Result<(usize, Vec<(usize, usize)>)> {
    match load_matroid_descriptor(arg)? {
        MatroidDescriptor::Graphic { vertices, edges } => Ok((vertices, edges)),
        _ => bail!("c2 expects a graph: graphic:U-V,... shorthand or a graphic descriptor"),
    }
}

fn load_gain_graph(arg: &str) -> anyhow::Result<GainGraph> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg))
            .with_context(|| format!("reading gain graph descriptor '{arg}'"))?
    };
    Ok(GainGraphDescriptor::from_json(&text)?.build()?)
}

fn emit_value(format: Format, value: &str) {
    match format {
        Format::Text => println!("{value}"),
        Format::Json => emit_json(&json!({ "value": value })),
    }
}

fn emit_json(value: &serde_json::Value) {
    println!("{value}");
}

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "holds",
        Some(false) => "VIOLATED",
        None => "not applicable",
    }
}

fn render_poly(coeffs: &[i64]) -> String {
    if coeffs.is_empty() {
        return "0".into();
    }
    let degree = coeffs.len() - 1;
    let mut parts: Vec<String> = Vec::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let power = degree - i;
        let term = match power {
            0 => format!("{c}"),
            1 if c == 1 => "x".into(),
            1 if c == -1 => "-x".into(),
            1 => format!("{c}x"),
            _ if c == 1 => format!("x^{power}"),
            _ if c == -1 => format!("-x^{power}"),
            _ => format!("{c}x^{power}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for term in &parts[1..] {
        if let Some(stripped) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(term);
        }
    }
    out
}

fn table_json(table: &BTreeMap<u64, u64>) -> serde_json::Value {
    serde_json::Value::Object(
        table
            .iter()
            .map(|(p, count)| (p.to_string(), json!(count)))
            .collect(),
    )
}

/// Text table: one header row of p values and one row of counts.
fn print_table(label: &str, table: &BTreeMap<u64, u64>) {
    let max = table.keys().max().copied().unwrap_or(0);
    let mut header = format!("{label:>8}  p:");
    let mut row = String::from("            ");
    for p in 0..=max {
        header.push_str(&format!("{p:>8}"));
        row.push_str(&format!("{:>8}", table.get(&p).copied().unwrap_or(0)));
    }
    println!("{header}");
    println!("{row}");
}
