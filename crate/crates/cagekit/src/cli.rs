//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a property or construction check fails,
//! 2 on usage or parse errors, so CI scripts can tell "the graph is wrong"
//! from "the invocation is wrong".

use std::env;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::cage::{build_bq, build_gamma, build_gamma_dual, build_hq, build_staged, Stage};
use crate::dominating::{build_pds, remove_pds};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::formats::{parse_graph, serialize_graph, GraphFormat};
use crate::graph::{moore_bound, BipartiteGraph, Expectations, VerifyReport};
use crate::selftest::{run_all, SelftestConfig};

#[derive(Parser)]
#[command(
    name = "cagekit",
    version,
    about = "Builds girth-8 incidence cages over GF(q) and certifies their properties"
)]
struct Cli {
    /// Worker threads for girth/diameter (default: $CAGEKIT_THREADS or 1).
    /// Parallelism never changes any output.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Suppress the informational summaries on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a graph and write it to a file or stdout.
    Build {
        /// Prime power q >= 2.
        #[arg(long)]
        q: u64,
        /// gamma | gamma-dual | bq | hq | stage:<bq|bq-prime|bq-double-prime|bq-triple-prime|gamma>
        #[arg(long, default_value = "gamma")]
        kind: String,
        /// graph6 | dimacs-edge | edge-list | labeled-json
        #[arg(long, default_value = "edge-list")]
        format: String,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse a graph file, measure it, and check expectations.
    Verify {
        path: PathBuf,
        /// Format (inferred from the extension when omitted).
        #[arg(long)]
        format: Option<String>,
        #[arg(long)]
        expect_order: Option<u64>,
        #[arg(long)]
        expect_size: Option<u64>,
        #[arg(long)]
        expect_regular: Option<u32>,
        #[arg(long)]
        expect_girth: Option<u32>,
        #[arg(long)]
        expect_diameter: Option<u32>,
        /// Require the graph to be bipartite.
        #[arg(long)]
        expect_bipartite: bool,
    },
    /// Build the perfect dominating set of Gamma_q and certify it.
    Pds {
        /// Even prime power q >= 4.
        #[arg(long)]
        q: u64,
        /// Also write the residual graph Gamma_q minus the set.
        #[arg(long)]
        remove: bool,
        /// Output file prefix (default: pds-q<q>).
        #[arg(long)]
        out: Option<String>,
        /// Format for the residual graph.
        #[arg(long, default_value = "edge-list")]
        format: String,
    },
    /// Field parameters and expected graph sizes for a given q.
    Stats {
        #[arg(long)]
        q: u64,
    },
    /// Run the full acceptance battery and print one line per criterion.
    Selftest {
        /// Upper bound on the q lists (default 9; 16 covers everything).
        #[arg(long, default_value_t = 9)]
        q_max: u64,
        /// Skip the diameter check for q >= 11.
        #[arg(long)]
        quick: bool,
    },
}

enum Kind {
    Gamma,
    GammaDual,
    Bq,
    Hq,
    Staged(Stage),
}

impl Kind {
    fn parse(s: &str) -> Option<Kind> {
        match s {
            "gamma" => Some(Kind::Gamma),
            "gamma-dual" => Some(Kind::GammaDual),
            "bq" => Some(Kind::Bq),
            "hq" => Some(Kind::Hq),
            _ => s
                .strip_prefix("stage:")
                .and_then(|name| Stage::from_name(name).ok())
                .map(Kind::Staged),
        }
    }

    fn build(&self, q: u64) -> Result<BipartiteGraph> {
        match self {
            Kind::Gamma => build_gamma(q),
            Kind::GammaDual => build_gamma_dual(q),
            Kind::Bq => build_bq(q),
            Kind::Hq => build_hq(q),
            Kind::Staged(stage) => build_staged(q, *stage),
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NotPrimePower(_)
        | Error::UnsupportedQ(_)
        | Error::InvalidDegree(_)
        | Error::InvalidLabel(_)
        | Error::Parse { .. }
        | Error::Json(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let threads = cli
        .threads
        .or_else(|| {
            env::var("CAGEKIT_THREADS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(1)
        .max(1);
    match dispatch(cli.command, threads, cli.quiet) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn dispatch(command: Command, threads: usize, quiet: bool) -> Result<i32> {
    match command {
        Command::Build {
            q,
            kind,
            format,
            out,
        } => cmd_build(q, &kind, &format, out.as_deref(), quiet),
        Command::Verify {
            path,
            format,
            expect_order,
            expect_size,
            expect_regular,
            expect_girth,
            expect_diameter,
            expect_bipartite,
        } => {
            let expectations = Expectations {
                order: expect_order,
                size: expect_size,
                regular: expect_regular,
                girth: expect_girth,
                diameter: expect_diameter,
                bipartite: if expect_bipartite { Some(true) } else { None },
            };
            cmd_verify(&path, format.as_deref(), &expectations, threads)
        }
        Command::Pds {
            q,
            remove,
            out,
            format,
        } => cmd_pds(q, remove, out.as_deref(), &format, quiet),
        Command::Stats { q } => cmd_stats(q),
        Command::Selftest { q_max, quick } => {
            let cfg = SelftestConfig {
                q_max,
                quick,
                threads,
            };
            Ok(cmd_selftest(&cfg))
        }
    }
}

fn write_output(bytes: &[u8], out: Option<&Path>) -> Result<()> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn cmd_build(q: u64, kind: &str, format: &str, out: Option<&Path>, quiet: bool) -> Result<i32> {
    let Some(kind) = Kind::parse(kind) else {
        return Ok(usage_error(&format!("unknown kind '{kind}'")));
    };
    let Ok(format) = GraphFormat::from_str(format) else {
        return Ok(usage_error(&format!("unknown format '{format}'")));
    };
    let graph = kind.build(q)?;
    let bytes = serialize_graph(&graph, format)?;
    write_output(&bytes, out)?;
    if !quiet {
        let field = Field::new(q)?;
        eprintln!(
            "built q={q}: order {}, size {}; GF({}) = GF({}^{}), modulus {}",
            graph.order(),
            graph.size(),
            field.q(),
            field.p(),
            field.n(),
            field.modulus_string()
        );
    }
    Ok(0)
}

fn cmd_verify(
    path: &Path,
    format: Option<&str>,
    expectations: &Expectations,
    threads: usize,
) -> Result<i32> {
    let format = match format {
        Some(s) => match GraphFormat::from_str(s) {
            Ok(f) => f,
            Err(_) => return Ok(usage_error(&format!("unknown format '{s}'"))),
        },
        None => match GraphFormat::from_extension(path) {
            Some(f) => f,
            None => {
                return Ok(usage_error(
                    "cannot infer the format from the extension; pass --format",
                ))
            }
        },
    };
    let bytes = std::fs::read(path)?;
    let graph = parse_graph(&bytes, format)?;
    let mut report = VerifyReport::compute(&graph, threads);
    let ok = expectations.is_empty() || report.check(expectations);
    println!("{}", serde_json::to_string_pretty(&report)?);
    if !ok {
        for f in &report.failures {
            eprintln!("failed: {f}");
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_pds(q: u64, remove: bool, out: Option<&str>, format: &str, quiet: bool) -> Result<i32> {
    let Ok(format) = GraphFormat::from_str(format) else {
        return Ok(usage_error(&format!("unknown format '{format}'")));
    };
    let cert = build_pds(q)?;
    let prefix = out
        .map(str::to_owned)
        .unwrap_or_else(|| format!("pds-q{q}"));

    // The set itself, one label per line in codec order.
    let gamma = build_gamma(q)?;
    let mut labels = String::new();
    for v in cert.pds.iter() {
        labels.push_str(&gamma.describe_vertex(v));
        labels.push('\n');
    }
    let labels_path = format!("{prefix}.labels.txt");
    std::fs::write(&labels_path, labels)?;
    if !quiet {
        eprintln!("wrote {labels_path} ({} labels)", cert.pds.len());
    }

    if remove {
        let residual = remove_pds(q)?;
        let residual_path = format!("{prefix}.residual.{}", format.extension());
        std::fs::write(&residual_path, serialize_graph(&residual, format)?)?;
        if !quiet {
            eprintln!(
                "wrote {residual_path} (order {}, size {})",
                residual.order(),
                residual.size()
            );
        }
    }

    println!("{}", serde_json::to_string_pretty(&cert)?);
    Ok(0)
}

#[derive(Serialize)]
struct Stats {
    q: u32,
    p: u32,
    n: u32,
    modulus: Vec<u32>,
    modulus_polynomial: String,
    moore_bound_degree: u64,
    moore_bound: u64,
    gamma_order: u64,
    gamma_size: u64,
    bq_order: u64,
}

fn cmd_stats(q: u64) -> Result<i32> {
    let field = Field::new(q)?;
    let stats = Stats {
        q: field.q(),
        p: field.p(),
        n: field.n(),
        modulus: field.modulus().to_vec(),
        modulus_polynomial: field.modulus_string(),
        moore_bound_degree: q + 1,
        moore_bound: moore_bound(q + 1)?,
        gamma_order: 2 * (q * q * q + q * q + q + 1),
        gamma_size: (q + 1) * (q * q * q + q * q + q + 1),
        bq_order: 2 * q * q * q,
    };
    println!("{}", serde_json::to_string_pretty(&stats)?);
    Ok(0)
}

fn cmd_selftest(cfg: &SelftestConfig) -> i32 {
    let results = run_all(cfg);
    let mut all_pass = true;
    for r in &results {
        println!("{}", r.summary_line());
        all_pass &= r.pass;
    }
    let total: f64 = results.iter().map(|r| r.elapsed.as_secs_f64()).sum();
    println!(
        "{}/{} criteria passed in {:.2}s (q_max = {})",
        results.iter().filter(|r| r.pass).count(),
        results.len(),
        total,
        cfg.q_max
    );
    if all_pass {
        0
    } else {
        1
    }
}
