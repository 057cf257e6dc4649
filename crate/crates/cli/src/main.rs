//! Batch front door: parse digraphs, run the certifiers, forests, peeling
//! and the brute-force oracle, and emit machine-readable JSON or short
//! human-readable summaries.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 unsupported
//! pattern without a fallback, 3 oracle limit exceeded.

mod report;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use oripath::batch::map_instances;
use oripath::digraph::Digraph;
use oripath::forest::{final_spanning_outforest, Orientation};
use oripath::format::{parse_arc_list, write_arc_list};
use oripath::oracle::{
    contains_pattern, gen_random, gen_tournament, gen_transitive_tournament, optimal_coloring,
    OracleLimits,
};
use oripath::peel::peel;
use oripath::{BlockPattern, Certificate, Error};

use report::CertificateReport;

#[derive(Parser)]
#[command(name = "oripath", version, about = "Certifying search for three-block oriented paths")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify a pattern: emit an embedding or a bounded proper coloring.
    Certify {
        /// Pattern as three comma-separated block lengths, e.g. 2,1,3.
        #[arg(long)]
        pattern: String,
        /// Arc-list input file; repeat for batch mode.
        #[arg(long)]
        input: Vec<PathBuf>,
        #[command(flatten)]
        gen: GenOpts,
        /// Emit one JSON report per input on stdout.
        #[arg(long)]
        json: bool,
        /// Answer unsupported patterns by brute force at small scale.
        #[arg(long, value_enum)]
        fallback: Option<Fallback>,
        /// Include wall-clock timings in JSON reports.
        #[arg(long)]
        timings: bool,
        /// Dump the halo classification as JSON on stderr.
        #[arg(long)]
        dump_classes: bool,
    },
    /// Build the final spanning outforest and print it as JSON.
    Forest {
        #[arg(long)]
        input: PathBuf,
    },
    /// Peel layer paths of the given length and print the decomposition.
    Peel {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact brute-force answers at small scale.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Generate a digraph and print it in arc-list format.
    Gen {
        kind: GenKind,
        #[arg(long)]
        n: usize,
        /// Arc probability for random generation.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-validate a JSON certificate report against its input digraph.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exhaustive pattern search.
    Path {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        gen: GenOpts,
        #[arg(long)]
        json: bool,
        /// Override the vertex-count limit.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Exact chromatic number of the underlying graph.
    Chi {
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        gen: GenOpts,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Args)]
struct GenOpts {
    /// Generate the input instead of reading a file.
    #[arg(long, value_enum)]
    gen: Option<GenKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Random,
    Tournament,
    Tt,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fallback {
    Oracle,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::UnsupportedPattern(..) => 2,
            Error::LimitExceeded(..) => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe, like other line-oriented tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_pattern(s: &str) -> Result<(usize, usize, usize), Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Failure::input(format!("pattern must be three comma-separated lengths, got {s:?}")));
    }
    let mut v = [0usize; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("bad block length {part:?} in pattern {s:?}")))?;
        if *slot == 0 {
            return Err(Failure::input("block lengths must be positive"));
        }
    }
    Ok((v[0], v[1], v[2]))
}

fn read_digraph(path: &PathBuf) -> Result<Digraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_arc_list(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn generate(kind: GenKind, n: usize, p: f64, seed: u64) -> Digraph {
    match kind {
        GenKind::Random => gen_random(n, p, seed),
        GenKind::Tournament => gen_tournament(n, seed),
        GenKind::Tt => gen_transitive_tournament(n),
    }
}

/// Resolves `--input`/`--gen` into named instances.
fn resolve_inputs(inputs: &[PathBuf], gen: &GenOpts) -> Result<Vec<(String, Digraph)>, Failure> {
    match (&gen.gen, inputs.is_empty()) {
        (Some(kind), true) => {
            let n = gen.n.ok_or_else(|| Failure::input("--gen requires --n"))?;
            let d = generate(*kind, n, gen.p.unwrap_or(0.5), gen.seed.unwrap_or(0));
            Ok(vec![("generated".to_string(), d)])
        }
        (None, false) => inputs
            .iter()
            .map(|p| Ok((p.display().to_string(), read_digraph(p)?)))
            .collect(),
        (Some(_), false) => Err(Failure::input("use either --input or --gen, not both")),
        (None, true) => Err(Failure::input("an input is required: --input FILE or --gen KIND --n N")),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Certify { pattern, input, gen, json, fallback, timings, dump_classes } => {
            let (k1, k2, k3) = parse_pattern(&pattern)?;
            let instances = resolve_inputs(&input, &gen)?;
            let batch = instances.len() > 1;
            if dump_classes {
                for (name, d) in &instances {
                    dump_classification(name, d, k1, k2, k3);
                }
            }
            let results = map_instances(&instances, |(_, d)| {
                let start = Instant::now();
                let cert = certify_with_fallback(d, k1, k2, k3, fallback);
                (cert, start.elapsed().as_secs_f64() * 1e3)
            });
            let mut out = String::new();
            for ((name, d), (cert, ms)) in instances.iter().zip(results) {
                let cert = cert?;
                if !cert.validate(d) {
                    return Err(Failure::input(format!("{name}: certificate failed re-validation")));
                }
                let rep = CertificateReport::new([k1, k2, k3], &cert, timings.then_some(ms));
                if json {
                    let _ = writeln!(out, "{}", serde_json::to_string(&rep).expect("report serializes"));
                } else {
                    let prefix = if batch { format!("{name}: ") } else { String::new() };
                    match &cert {
                        Certificate::Path(emb) => {
                            let verts: Vec<String> =
                                emb.vertices.iter().map(|v| v.to_string()).collect();
                            let _ = writeln!(out, "{prefix}path: {}", verts.join(" "));
                        }
                        Certificate::Colored { coloring, bound } => {
                            let _ = writeln!(
                                out,
                                "{prefix}coloring: {} colors (bound {bound})",
                                coloring.num_colors
                            );
                        }
                    }
                }
            }
            print!("{out}");
            Ok(())
        }
        Cmd::Forest { input } => {
            let d = read_digraph(&input)?;
            let f = final_spanning_outforest(&d);
            let parents: Vec<Option<usize>> = f.parent.clone();
            let doc = json!({
                "schema": report::SCHEMA_VERSION,
                "n": d.vertex_count(),
                "orientation": match f.orientation { Orientation::Out => "out", Orientation::In => "in" },
                "parent": parents,
                "level": f.level,
                "depth": f.depth(),
            });
            println!("{doc}");
            Ok(())
        }
        Cmd::Peel { length, input } => {
            if length == 0 {
                return Err(Failure::input("--length must be at least 1"));
            }
            let d = read_digraph(&input)?;
            let dec = peel(&d, length);
            let layers: Vec<_> = dec
                .layers
                .iter()
                .map(|l| json!({ "path": l.path, "halo": l.halo }))
                .collect();
            let doc = json!({
                "schema": report::SCHEMA_VERSION,
                "length": dec.length,
                "layers": layers,
                "residual": dec.residual,
                "residual_depth": dec.residual_forest.depth(),
            });
            println!("{doc}");
            Ok(())
        }
        Cmd::Oracle { cmd } => run_oracle(cmd),
        Cmd::Gen { kind, n, p, seed } => {
            if n == 0 {
                return Err(Failure::input("--n must be at least 1"));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::input("--p must lie in [0, 1]"));
            }
            print!("{}", write_arc_list(&generate(kind, n, p, seed)));
            Ok(())
        }
        Cmd::Verify { input, report } => {
            let d = read_digraph(&input)?;
            let text = fs::read_to_string(&report)
                .map_err(|e| Failure::input(format!("{}: {e}", report.display())))?;
            let rep: CertificateReport = serde_json::from_str(&text)
                .map_err(|e| Failure::input(format!("{}: {e}", report.display())))?;
            rep.verify_against(&d).map_err(Failure::input)?;
            println!("ok");
            Ok(())
        }
    }
}

/// Debug view of the halo classification for the pattern as given, without
/// the reversal normalization the certifiers apply internally.
fn dump_classification(name: &str, d: &Digraph, k1: usize, k2: usize, k3: usize) {
    if k1 < 2 || k3 < 2 {
        eprintln!("{name}: no classification for patterns with a unit outer block");
        return;
    }
    let dec = peel(d, k1 + k3 - 2);
    let part = if k2 == 1 {
        oripath::classify::classify_two(d, &dec, k1, k3)
    } else {
        oripath::classify::classify_four(d, &dec, k1, k3)
    };
    match part {
        Ok(p) => {
            let doc = json!({
                "input": name,
                "a": p.a, "b": p.b, "c": p.c, "h": p.h,
            });
            eprintln!("{doc}");
        }
        Err(e) => eprintln!("{name}: {e}"),
    }
}

fn certify_with_fallback(
    d: &Digraph,
    k1: usize,
    k2: usize,
    k3: usize,
    fallback: Option<Fallback>,
) -> Result<Certificate, Failure> {
    let direct = oripath::batch::certify(d, k1, k2, k3);
    match (direct, fallback) {
        (Ok(cert), _) => Ok(cert),
        (Err(Error::UnsupportedPattern(..)), Some(Fallback::Oracle)) => {
            let limits = OracleLimits::default();
            let pattern = BlockPattern::new(k1, k2, k3);
            if let Some(emb) = contains_pattern(d, pattern, limits)? {
                Ok(Certificate::Path(emb))
            } else {
                let coloring = optimal_coloring(d, limits)?;
                let bound = coloring.num_colors;
                Ok(Certificate::Colored { coloring, bound })
            }
        }
        (Err(e), _) => Err(e.into()),
    }
}

fn run_oracle(cmd: OracleCmd) -> Result<(), Failure> {
    match cmd {
        OracleCmd::Path { pattern, input, gen, json, limit } => {
            let (k1, k2, k3) = parse_pattern(&pattern)?;
            let inputs: Vec<PathBuf> = input.into_iter().collect();
            let (_, d) = resolve_inputs(&inputs, &gen)?.remove(0);
            let mut limits = OracleLimits::default();
            if let Some(l) = limit {
                limits.max_vertices_path = l;
            }
            let found = contains_pattern(&d, BlockPattern::new(k1, k2, k3), limits)?;
            if json {
                let doc = json!({
                    "schema": report::SCHEMA_VERSION,
                    "pattern": [k1, k2, k3],
                    "found": found.is_some(),
                    "vertices": found.as_ref().map(|e| e.vertices.clone()),
                });
                println!("{doc}");
            } else {
                match found {
                    Some(emb) => {
                        let verts: Vec<String> = emb.vertices.iter().map(|v| v.to_string()).collect();
                        println!("found: {}", verts.join(" "));
                    }
                    None => println!("not found"),
                }
            }
            Ok(())
        }
        OracleCmd::Chi { input, gen, json, limit } => {
            let inputs: Vec<PathBuf> = input.into_iter().collect();
            let (_, d) = resolve_inputs(&inputs, &gen)?.remove(0);
            let mut limits = OracleLimits::default();
            if let Some(l) = limit {
                limits.max_vertices_chi = l;
            }
            let coloring = optimal_coloring(&d, limits)?;
            if json {
                let doc = json!({
                    "schema": report::SCHEMA_VERSION,
                    "chromatic_number": coloring.num_colors,
                    "colors": coloring.color,
                });
                println!("{doc}");
            } else {
                println!("{}", coloring.num_colors);
            }
            Ok(())
        }
    }
}
