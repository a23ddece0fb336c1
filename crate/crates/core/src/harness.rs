//! Bound verification over single graphs and whole corpora.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::deadline::{Deadline, Interrupted};
use crate::edge_list::parse_edge_list;
use crate::enumerate::enumerate_labeled_graphs;
use crate::error::Result;
use crate::fvs::decycling_number_within;
use crate::graph::Graph;
use crate::graph6::{parse_graph6, to_graph6, GRAPH6_MAX_VERTICES};
use crate::indpoly::{alternating_number_within, fibonacci_number_within};

/// Default per-graph time limit used by the command line.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(10);

/// CSV header; JSON records carry the same keys in the same order.
pub const CSV_HEADER: &str = "graph_id,n,m,p,nu,phi,alt,fib,bound_phi_ok,tight,elapsed_ms";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Complete {
        phi: usize,
        alt: i128,
        fib: u128,
        /// |alt| ≤ 2^phi
        bound_phi_ok: bool,
        /// phi ≤ nu
        bound_nu_ok: bool,
        /// |alt| = 2^phi
        tight: bool,
    },
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub nu: usize,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

impl InvariantReport {
    pub fn is_violation(&self) -> bool {
        matches!(
            self.outcome,
            Outcome::Complete {
                bound_phi_ok: false,
                ..
            } | Outcome::Complete {
                bound_nu_ok: false,
                ..
            }
        )
    }

    pub fn is_tight(&self) -> bool {
        matches!(self.outcome, Outcome::Complete { tight: true, .. })
    }

    pub fn is_timeout(&self) -> bool {
        self.outcome == Outcome::Timeout
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub timeout: Option<Duration>,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    /// When false, `elapsed` is reported as zero so output is reproducible.
    pub record_timing: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            timeout: None,
            jobs: 0,
            record_timing: true,
        }
    }
}

/// Label used in reports: the graph6 string when it exists.
pub fn graph_label(g: &Graph) -> String {
    if g.n() <= GRAPH6_MAX_VERTICES {
        to_graph6(g).expect("size checked")
    } else {
        format!("n{}m{}", g.n(), g.m())
    }
}

pub fn check_graph(g: &Graph) -> InvariantReport {
    check_graph_with(graph_label(g), g, &CheckOptions::default())
}

pub fn check_graph_with(graph_id: String, g: &Graph, opts: &CheckOptions) -> InvariantReport {
    let start = Instant::now();
    let nu = g.cyclomatic_number();
    let mut deadline = Deadline::from_option(opts.timeout);
    let computed = (|| -> std::result::Result<Outcome, Interrupted> {
        let alt = alternating_number_within(g, &mut deadline)?;
        let phi = decycling_number_within(g, &mut deadline)?.size;
        let fib = fibonacci_number_within(g, &mut deadline)?;
        let bound = 1u128 << phi;
        Ok(Outcome::Complete {
            phi,
            alt,
            fib,
            bound_phi_ok: alt.unsigned_abs() <= bound,
            bound_nu_ok: phi <= nu,
            tight: alt.unsigned_abs() == bound,
        })
    })();
    InvariantReport {
        graph_id,
        n: g.n(),
        m: g.m(),
        p: g.components().len(),
        nu,
        outcome: computed.unwrap_or(Outcome::Timeout),
        elapsed: if opts.record_timing {
            start.elapsed()
        } else {
            Duration::ZERO
        },
    }
}

/// An input row that could not be turned into a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkipRecord {
    pub location: String,
    pub reason: String,
}

pub type CorpusEntry = std::result::Result<(String, Graph), SkipRecord>;

/// One graph6 string per line; blank lines are ignored.
pub fn graph6_source<R: BufRead>(reader: R) -> impl Iterator<Item = CorpusEntry> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let location = format!("line {}", i + 1);
        match line {
            Err(e) => Some(Err(SkipRecord {
                location,
                reason: e.to_string(),
            })),
            Ok(l) if l.trim().is_empty() => None,
            Ok(l) => Some(
                parse_graph6(&l)
                    .map(|g| (l.trim().to_string(), g))
                    .map_err(|e| SkipRecord {
                        location,
                        reason: e.to_string(),
                    }),
            ),
        }
    })
}

/// Every regular file in `dir`, in file-name order, read as an edge list.
pub fn edge_list_dir_source(dir: &Path) -> io::Result<Vec<CorpusEntry>> {
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|path| {
            let location = path.display().to_string();
            let text = fs::read_to_string(&path).map_err(|e| SkipRecord {
                location: location.clone(),
                reason: e.to_string(),
            })?;
            let g = parse_edge_list(&text).map_err(|e| SkipRecord {
                location,
                reason: e.to_string(),
            })?;
            Ok((graph_label(&g), g))
        })
        .collect())
}

/// All labeled graphs on `n` vertices, in graph6 order.
pub fn exhaustive_source(n: usize) -> Result<impl Iterator<Item = CorpusEntry>> {
    Ok(enumerate_labeled_graphs(n)?.map(|g| Ok((graph_label(&g), g))))
}

/// Receives report rows in input order.
pub trait ReportSink {
    fn row(&mut self, report: &InvariantReport) -> io::Result<()>;

    fn finish(&mut self) -> io::Result<()> {
        Ok(())
    }
}

impl ReportSink for Vec<InvariantReport> {
    fn row(&mut self, report: &InvariantReport) -> io::Result<()> {
        self.push(report.clone());
        Ok(())
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum Cell<T> {
    Value(T),
    Missing(&'static str),
}

#[derive(Serialize)]
struct Row<'a> {
    graph_id: &'a str,
    n: usize,
    m: usize,
    p: usize,
    nu: usize,
    phi: Cell<usize>,
    alt: Cell<i128>,
    fib: Cell<u128>,
    bound_phi_ok: Cell<bool>,
    tight: Cell<bool>,
    elapsed_ms: f64,
}

impl<'a> From<&'a InvariantReport> for Row<'a> {
    fn from(r: &'a InvariantReport) -> Self {
        const T: &str = "timeout";
        let (phi, alt, fib, bound_phi_ok, tight) = match r.outcome {
            Outcome::Complete {
                phi,
                alt,
                fib,
                bound_phi_ok,
                tight,
                ..
            } => (
                Cell::Value(phi),
                Cell::Value(alt),
                Cell::Value(fib),
                Cell::Value(bound_phi_ok),
                Cell::Value(tight),
            ),
            Outcome::Timeout => (
                Cell::Missing(T),
                Cell::Missing(T),
                Cell::Missing(T),
                Cell::Missing(T),
                Cell::Missing(T),
            ),
        };
        Row {
            graph_id: &r.graph_id,
            n: r.n,
            m: r.m,
            p: r.p,
            nu: r.nu,
            phi,
            alt,
            fib,
            bound_phi_ok,
            tight,
            elapsed_ms: (r.elapsed.as_secs_f64() * 1e6).round() / 1e3,
        }
    }
}

pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(out: W) -> Self {
        CsvSink {
            writer: csv::WriterBuilder::new().has_headers(true).from_writer(out),
        }
    }
}

impl<W: Write> ReportSink for CsvSink<W> {
    fn row(&mut self, report: &InvariantReport) -> io::Result<()> {
        self.writer
            .serialize(Row::from(report))
            .map_err(io::Error::other)
    }

    fn finish(&mut self) -> io::Result<()> {
        self.writer.flush()
    }
}

/// Writes a JSON array, one record per line.
pub struct JsonSink<W: Write> {
    out: W,
    rows: usize,
}

impl<W: Write> JsonSink<W> {
    pub fn new(out: W) -> Self {
        JsonSink { out, rows: 0 }
    }
}

impl<W: Write> ReportSink for JsonSink<W> {
    fn row(&mut self, report: &InvariantReport) -> io::Result<()> {
        self.out
            .write_all(if self.rows == 0 { b"[\n  " } else { b",\n  " })?;
        serde_json::to_writer(&mut self.out, &Row::from(report))?;
        self.rows += 1;
        Ok(())
    }

    fn finish(&mut self) -> io::Result<()> {
        self.out
            .write_all(if self.rows == 0 { b"[]\n" } else { b"\n]\n" })?;
        self.out.flush()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    /// rows + skips
    pub processed: usize,
    pub rows: usize,
    pub tight: usize,
    pub timeouts: usize,
    pub violations: usize,
    pub skipped: Vec<SkipRecord>,
}

impl Summary {
    pub fn skips(&self) -> usize {
        self.skipped.len()
    }

    /// True when no graph violated a bound.
    pub fn is_clean(&self) -> bool {
        self.violations == 0
    }
}

const CHUNK: usize = 4096;

/// Checks every graph from `source` and writes one row per graph, in input
/// order, to `sink`. Work inside each chunk is spread over `opts.jobs` threads.
pub fn check_corpus<I>(
    source: I,
    opts: &CheckOptions,
    sink: &mut dyn ReportSink,
) -> io::Result<Summary>
where
    I: IntoIterator<Item = CorpusEntry>,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(io::Error::other)?;
    let mut summary = Summary::default();
    let mut source = source.into_iter().peekable();
    let mut chunk = Vec::with_capacity(CHUNK);
    while source.peek().is_some() {
        chunk.clear();
        chunk.extend(source.by_ref().take(CHUNK));
        let reports: Vec<std::result::Result<InvariantReport, SkipRecord>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|entry| match entry {
                    Ok((id, g)) => Ok(check_graph_with(id.clone(), g, opts)),
                    Err(skip) => Err(skip.clone()),
                })
                .collect()
        });
        for r in reports {
            summary.processed += 1;
            match r {
                Ok(report) => {
                    summary.rows += 1;
                    summary.tight += report.is_tight() as usize;
                    summary.timeouts += report.is_timeout() as usize;
                    summary.violations += report.is_violation() as usize;
                    sink.row(&report)?;
                }
                Err(skip) => summary.skipped.push(skip),
            }
        }
    }
    sink.finish()?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};

    fn g6(s: &str) -> Graph {
        parse_graph6(s).unwrap()
    }

    #[test]
    fn single_graph_reports() {
        let r = check_graph(&g6("Bw"));
        assert_eq!(r.nu, 1);
        assert_eq!(
            r.outcome,
            Outcome::Complete {
                phi: 1,
                alt: -2,
                fib: 4,
                bound_phi_ok: true,
                bound_nu_ok: true,
                tight: true
            }
        );

        let c6 = generate(&FamilySpec::Cycle { n: 6 }).unwrap();
        let r = check_graph(&c6);
        assert!(matches!(
            r.outcome,
            Outcome::Complete {
                phi: 1,
                alt: 2,
                tight: true,
                ..
            }
        ));
        assert_eq!(r.nu, 1);

        let tree = generate(&FamilySpec::RandomTree { n: 12, seed: 3 }).unwrap();
        let r = check_graph(&tree);
        assert_eq!(r.nu, 0);
        match r.outcome {
            Outcome::Complete {
                phi,
                alt,
                bound_phi_ok,
                ..
            } => {
                assert_eq!(phi, 0);
                assert!(alt.abs() <= 1 && bound_phi_ok);
            }
            Outcome::Timeout => panic!(),
        }
    }

    #[test]
    fn timeout_rows_are_not_violations() {
        let g = generate(&FamilySpec::RandomGnp {
            n: 64,
            p: 0.5,
            seed: 9,
        })
        .unwrap();
        let opts = CheckOptions {
            timeout: Some(Duration::ZERO),
            ..CheckOptions::default()
        };
        let r = check_graph_with("big".into(), &g, &opts);
        assert!(r.is_timeout());
        assert!(!r.is_violation());
        let mut out = Vec::new();
        CsvSink::new(&mut out).row(&r).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text
            .lines()
            .nth(1)
            .unwrap()
            .contains("timeout,timeout,timeout,timeout,timeout"));
    }

    #[test]
    fn exhaustive_five_has_no_violations() {
        let mut rows = Vec::new();
        let s = check_corpus(
            exhaustive_source(5).unwrap(),
            &CheckOptions::default(),
            &mut rows,
        )
        .unwrap();
        assert_eq!(
            (s.processed, s.rows, s.violations, s.skips()),
            (1024, 1024, 0, 0)
        );
        assert!(s.is_clean());
        assert_eq!(rows.len(), 1024);
        assert_eq!(rows[0].graph_id, "D??");
        assert_eq!(rows[1023].graph_id, "D~{");
    }

    #[test]
    fn malformed_line_is_skipped_with_location() {
        let text = "Bw\nA_\nD??\n@\nBw\nBo\nC~\nC]\nDQc\nB\n";
        let mut rows = Vec::new();
        let s = check_corpus(
            graph6_source(text.as_bytes()),
            &CheckOptions::default(),
            &mut rows,
        )
        .unwrap();
        assert_eq!(s.rows, 9);
        assert_eq!(s.skips(), 1);
        assert_eq!(s.processed, 10);
        assert_eq!(s.skipped[0].location, "line 10");
        assert_eq!(
            rows.iter().map(|r| r.graph_id.as_str()).collect::<Vec<_>>()[..3],
            ["Bw", "A_", "D??"]
        );
    }

    #[test]
    fn empty_input() {
        let mut out = Vec::new();
        let s = check_corpus(
            graph6_source(&b""[..]),
            &CheckOptions::default(),
            &mut JsonSink::new(&mut out),
        )
        .unwrap();
        assert_eq!(s, Summary::default());
        assert_eq!(out, b"[]\n");
    }

    #[test]
    fn output_is_independent_of_worker_count() {
        let render = |jobs: usize| {
            let opts = CheckOptions {
                jobs,
                record_timing: false,
                ..CheckOptions::default()
            };
            let mut csv = Vec::new();
            check_corpus(
                exhaustive_source(4).unwrap(),
                &opts,
                &mut CsvSink::new(&mut csv),
            )
            .unwrap();
            let mut json = Vec::new();
            check_corpus(
                exhaustive_source(4).unwrap(),
                &opts,
                &mut JsonSink::new(&mut json),
            )
            .unwrap();
            (csv, json)
        };
        let one = render(1);
        assert_eq!(one, render(3));
        let csv = String::from_utf8(one.0).unwrap();
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(
            csv.lines().nth(1).unwrap(),
            "C?,4,0,4,0,0,0,16,true,false,0.0"
        );
        let json: serde_json::Value = serde_json::from_slice(&one.1).unwrap();
        assert_eq!(json.as_array().unwrap().len(), 64);
        let keys: Vec<&str> = json[0]
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        let mut header: Vec<&str> = CSV_HEADER.split(',').collect();
        header.sort_unstable();
        let mut keys_sorted = keys.clone();
        keys_sorted.sort_unstable();
        assert_eq!(keys_sorted, header);
    }
}
