use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use indpoly::harness::{
    edge_list_dir_source, exhaustive_source, graph6_source, CorpusEntry, CsvSink, JsonSink,
    ReportSink, DEFAULT_TIMEOUT,
};
use indpoly::{
    alternating_number, build_atom_table, check_corpus, decycling_number, generate, ind_poly,
    parse_edge_list, parse_graph6, to_edge_list, to_graph6, witness_table, CheckOptions,
    FamilySpec, Graph,
};

#[derive(Parser)]
#[command(
    name = "indpoly",
    version,
    about = "Independence polynomials, alternating numbers and decycling numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    Edges,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients s_0 .. s_α of I(G;x)
    Poly {
        /// graph6 string, or @path to an edge-list file
        graph: String,
        /// Print as a polynomial instead of a coefficient list
        #[arg(long)]
        pretty: bool,
    },
    /// Evaluate I(G;t) exactly
    Eval {
        graph: String,
        #[arg(long, allow_hyphen_values = true)]
        at: BigInt,
    },
    /// Print I(G;-1)
    Alt { graph: String },
    /// Print the cyclomatic number
    Nu { graph: String },
    /// Print the decycling number and a minimum decycling set
    Fvs { graph: String },
    /// Verify |I(G;-1)| <= 2^phi over a corpus
    Check {
        /// graph6 file (one graph per line) or a directory of edge-list files
        #[arg(
            long,
            conflicts_with = "exhaustive",
            required_unless_present = "exhaustive"
        )]
        input: Option<PathBuf>,
        /// Enumerate every labeled graph on n <= 7 vertices
        #[arg(long)]
        exhaustive: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Worker threads (0 = one per core)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Per-graph time limit in seconds (0 disables)
        #[arg(long, default_value_t = DEFAULT_TIMEOUT.as_secs_f64())]
        timeout: f64,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Report elapsed_ms as 0 so that output is byte-reproducible
        #[arg(long)]
        no_timing: bool,
    },
    /// Generate a graph from a named family
    Gen {
        #[arg(long)]
        family: String,
        /// Comma-separated key=value pairs, e.g. `n=6` or `alpha=2,parts=3`
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "graph6")]
        format: GraphFormat,
    },
    /// Search witnesses with prescribed decycling and alternating numbers
    Conjecture {
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value_t = 8)]
        atoms_max_n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

/// `@path` reads an edge list; anything else is graph6. A lone `@` is the
/// graph6 code of K1.
fn load_graph(arg: &str) -> Result<Graph> {
    match arg.strip_prefix('@') {
        Some(path) if !path.is_empty() => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            Ok(parse_edge_list(&text).with_context(|| format!("parsing {path}"))?)
        }
        _ => Ok(parse_graph6(arg)?),
    }
}

fn parse_params(raw: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let Some((k, v)) = item.split_once('=') else {
            bail!("parameter `{item}` is not of the form key=value");
        };
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Poly { graph, pretty } => {
            let p = ind_poly(&load_graph(&graph)?);
            if pretty {
                writeln!(stdout, "{p}")?;
            } else {
                let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
                writeln!(stdout, "{}", coeffs.join(" "))?;
            }
        }
        Command::Eval { graph, at } => {
            writeln!(stdout, "{}", ind_poly(&load_graph(&graph)?).eval(&at))?;
        }
        Command::Alt { graph } => {
            writeln!(stdout, "{}", alternating_number(&load_graph(&graph)?))?;
        }
        Command::Nu { graph } => {
            writeln!(stdout, "{}", load_graph(&graph)?.cyclomatic_number())?;
        }
        Command::Fvs { graph } => {
            let r = decycling_number(&load_graph(&graph)?);
            let cert: Vec<String> = r.certificate.iter().map(|v| v.to_string()).collect();
            writeln!(stdout, "{}", r.size)?;
            writeln!(stdout, "{}", cert.join(" "))?;
        }
        Command::Check {
            input,
            exhaustive,
            format,
            jobs,
            timeout,
            output,
            no_timing,
        } => {
            if !(timeout.is_finite() && timeout >= 0.0) {
                bail!("--timeout must be a non-negative number of seconds");
            }
            let opts = CheckOptions {
                timeout: (timeout > 0.0).then(|| Duration::from_secs_f64(timeout)),
                jobs,
                record_timing: !no_timing,
            };
            let source: Box<dyn Iterator<Item = CorpusEntry>> = match (input, exhaustive) {
                (_, Some(n)) => Box::new(exhaustive_source(n)?),
                (Some(path), None) if path.is_dir() => {
                    Box::new(edge_list_dir_source(&path)?.into_iter())
                }
                (Some(path), None) => {
                    let file =
                        File::open(&path).with_context(|| format!("opening {}", path.display()))?;
                    Box::new(graph6_source(BufReader::new(file)))
                }
                (None, None) => bail!("either --input or --exhaustive is required"),
            };
            let out = open_output(output.as_deref())?;
            let mut sink: Box<dyn ReportSink> = match format {
                Format::Csv => Box::new(CsvSink::new(out)),
                Format::Json => Box::new(JsonSink::new(out)),
            };
            let summary = check_corpus(source, &opts, sink.as_mut())?;
            drop(sink);
            let mut stderr = io::stderr().lock();
            for skip in &summary.skipped {
                writeln!(stderr, "skipped {}: {}", skip.location, skip.reason)?;
            }
            writeln!(
                stderr,
                "processed={} rows={} skips={} tight={} timeouts={} violations={}",
                summary.processed,
                summary.rows,
                summary.skips(),
                summary.tight,
                summary.timeouts,
                summary.violations
            )?;
            if !summary.is_clean() {
                writeln!(stderr, "bound violated: this is a solver defect")?;
                return Ok(ExitCode::from(1));
            }
        }
        Command::Gen {
            family,
            params,
            seed,
            format,
        } => {
            let mut params = parse_params(&params)?;
            if let Some(seed) = seed {
                params.insert("seed".into(), seed.to_string());
            }
            let g = generate(&FamilySpec::parse(&family, &params)?)?;
            match format {
                GraphFormat::Graph6 => writeln!(stdout, "{}", to_graph6(&g)?)?,
                GraphFormat::Edges => write!(stdout, "{}", to_edge_list(&g))?,
            }
        }
        Command::Conjecture {
            kmax,
            atoms_max_n,
            format,
        } => {
            let atoms = build_atom_table(atoms_max_n)?;
            let table = witness_table(kmax, &atoms)?;
            match format {
                Format::Csv => table.write_csv(&mut stdout)?,
                Format::Json => table.write_json(&mut stdout)?,
            }
            let mut stderr = io::stderr().lock();
            for c in table.coverage() {
                writeln!(stderr, "k={} found {}/{} targets", c.k, c.found, c.targets)?;
            }
        }
    }
    stdout.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
