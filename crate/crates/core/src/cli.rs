//! The `crossfree` command line.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a mismatch, 2 for usage,
//! parse or out-of-class input errors.

use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bijections::{self, MapError};
use crate::diagram::ArcDiagram;
use crate::enumeration::{self, Class, ClassId, Count, Mode, SeqS};
use crate::genfun::{self, BiSeries};
use crate::patterns::{count_statistic, Statistic};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "crossfree", version, about = "Count, enumerate and map matchings, partitions and sequences of the P/S/CT classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    #[value(name = "P")]
    P,
    #[value(name = "CT")]
    Ct,
    #[value(name = "S")]
    S,
}

impl From<ClassArg> for Class {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::P => Class::P,
            ClassArg::Ct => Class::CT,
            ClassArg::S => Class::S,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Filter,
    Pruned,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Filter => Mode::Filter,
            ModeArg::Pruned => Mode::Pruned,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Alpha,
    AlphaInv,
    Reduce,
    Expand,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the size of one cell, or of the whole row k = 0..n-1.
    Count {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "pruned")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the objects of a cell (or of every cell of the row), one per line.
    Enumerate {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply one of the bijections to objects given as an argument or on stdin.
    Map {
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Object in canonical text form; read one per line from stdin if absent.
        input: Option<String>,
    },
    /// Print the coefficient table of the shared generating function.
    Gf {
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check |P| = |S| = |CT| = coefficient for every cell up to max-n.
    Verify {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long, env = "CROSSFREE_WORKERS")]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value = "pruned")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, stdin, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Class(#[from] enumeration::ClassError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn execute(cmd: Command, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Count { class, n, k, mode, format } => cmd_count(class.into(), n, k, mode.into(), format, out),
        Command::Enumerate { class, n, k, format } => cmd_enumerate(class.into(), n, k, format, out),
        Command::Map { direction, format, input } => {
            let inputs: Vec<String> = match input {
                Some(text) => vec![text],
                None => stdin
                    .lines()
                    .collect::<Result<Vec<_>, _>>()?
                    .into_iter()
                    .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                    .collect(),
            };
            cmd_map(direction, &inputs, format, out, err)
        }
        Command::Gf { order, format } => cmd_gf(order, format, out),
        Command::Verify { max_n, max_k, workers, mode, format } => {
            if max_n == 0 {
                return Err(CliError::Usage("--max-n must be at least 1".into()));
            }
            let workers = workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
                .max(1);
            let report = verify(max_n, max_k, workers, mode.into());
            write_report(&report, format, out)?;
            writeln!(err, "verified {} cells in {:.3}s", report.cells.len(), report.wall_time.as_secs_f64())?;
            Ok(if report.mismatches() == 0 { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

fn cells(class: Class, n: usize, k: Option<usize>) -> Result<Vec<ClassId>, CliError> {
    match k {
        Some(k) => Ok(vec![ClassId::new(class, n, k)?]),
        None => {
            ClassId::new(class, n, 0)?;
            (0..n).map(|k| ClassId::new(class, n, k).map_err(CliError::from)).collect()
        }
    }
}

fn row_text(values: &[Count]) -> String {
    let joined = values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    if values.len() == 1 {
        joined
    } else {
        let total = values.iter().try_fold(0u64, |acc, &v| acc.checked_add(v)).expect("row total overflowed u64");
        format!("{joined} | total {total}")
    }
}

fn cmd_count(class: Class, n: usize, k: Option<usize>, mode: Mode, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let ids = cells(class, n, k)?;
    let counts: Vec<Count> = ids.iter().map(|&c| enumeration::count_class(c, mode)).collect();
    match format {
        Format::Text => writeln!(out, "{}", row_text(&counts))?,
        Format::Csv => {
            writeln!(out, "class,n,k,count")?;
            for (c, count) in ids.iter().zip(&counts) {
                writeln!(out, "{class},{},{},{count}", c.n, c.k)?;
            }
        }
        Format::Json => {
            let value = match k {
                Some(k) => serde_json::json!({"class": class.to_string(), "n": n, "k": k, "count": counts[0]}),
                None => serde_json::json!({
                    "class": class.to_string(),
                    "n": n,
                    "counts": counts,
                    "total": counts.iter().sum::<u64>(),
                }),
            };
            writeln!(out, "{value}")?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct EnumRecord<'a> {
    n: usize,
    k: usize,
    object: &'a str,
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn cmd_enumerate(class: Class, n: usize, k: Option<usize>, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let ids = cells(class, n, k)?;
    if format == Format::Csv {
        writeln!(out, "n,k,object")?;
    }
    for c in ids {
        for object in enumeration::enumerate_class(c) {
            let text = object.to_string();
            match format {
                Format::Text => writeln!(out, "{text}")?,
                Format::Json => writeln!(out, "{}", serde_json::to_string(&EnumRecord { n: c.n, k: c.k, object: &text })?)?,
                Format::Csv => writeln!(out, "{},{},{}", c.n, c.k, csv_quote(&text))?,
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct MapRecord {
    input: String,
    output: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    alignments: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    transients: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
enum MapInputError {
    #[error(transparent)]
    Diagram(#[from] crate::diagram::ParseError),
    #[error(transparent)]
    Seq(#[from] crate::enumeration::SeqParseError),
    #[error(transparent)]
    Map(#[from] MapError),
}

fn map_one(direction: Direction, input: &str) -> Result<MapRecord, MapInputError> {
    let record = |output: String, stats: Option<(usize, usize)>| MapRecord {
        input: input.trim().to_string(),
        output,
        alignments: stats.map(|s| s.0),
        transients: stats.map(|s| s.1),
    };
    Ok(match direction {
        Direction::Alpha => record(bijections::alpha(&input.parse::<ArcDiagram>()?)?.to_string(), None),
        Direction::AlphaInv => record(bijections::alpha_inv(&input.parse::<SeqS>()?)?.to_string(), None),
        Direction::Reduce => {
            let m: ArcDiagram = input.parse()?;
            let p = bijections::reduce(&m)?;
            let stats = (count_statistic(&m, Statistic::NeighborAlignments), count_statistic(&p, Statistic::Transients));
            record(p.to_string(), Some(stats))
        }
        Direction::Expand => {
            let p: ArcDiagram = input.parse()?;
            let m = bijections::expand(&p)?;
            let stats = (count_statistic(&m, Statistic::NeighborAlignments), count_statistic(&p, Statistic::Transients));
            record(m.to_string(), Some(stats))
        }
    })
}

fn cmd_map(direction: Direction, inputs: &[String], format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let mut code = EXIT_OK;
    for input in inputs {
        match map_one(direction, input) {
            Ok(rec) => match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&rec)?)?,
                Format::Text | Format::Csv => {
                    writeln!(out, "{}", rec.output)?;
                    if let (Some(a), Some(t)) = (rec.alignments, rec.transients) {
                        writeln!(out, "# alignments={a} transients={t}")?;
                    }
                }
            },
            Err(e) => {
                writeln!(err, "error: {}: {e}", input.trim())?;
                code = EXIT_USAGE;
            }
        }
    }
    Ok(code)
}

fn cmd_gf(order: usize, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    if order == 0 {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    let series = genfun::rhs_series(order);
    if format == Format::Csv {
        writeln!(out, "n,k,coeff")?;
    }
    for n in 1..=order {
        let row: Vec<String> = (0..n).map(|k| series.coeff(n, k).expect("n <= order").to_string()).collect();
        let total = series.row_sum(n).expect("n <= order");
        match format {
            Format::Text => writeln!(out, "n={n}: {} | total {total}", row.join(" "))?,
            Format::Csv => {
                for (k, c) in row.iter().enumerate() {
                    writeln!(out, "{n},{k},{c}")?;
                }
            }
            Format::Json => {
                // Coefficients are emitted as JSON numbers without an f64 round trip.
                writeln!(out, "{{\"n\":{n},\"coeffs\":[{}],\"total\":{total}}}", row.join(","))?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Independent counts for one cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellRecord {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "P")]
    pub count_p: Count,
    #[serde(rename = "S")]
    pub count_s: Count,
    #[serde(rename = "CT")]
    pub count_ct: Count,
    #[serde(rename = "gf")]
    pub gf_coeff: Count,
    #[serde(rename = "ok")]
    pub agree: bool,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub cells: Vec<CellRecord>,
    pub wall_time: Duration,
}

impl VerifyReport {
    pub fn mismatches(&self) -> usize {
        self.cells.iter().filter(|c| !c.agree).count()
    }

    /// The first disagreeing cell in `(n, k)` order.
    pub fn first_mismatch(&self) -> Option<&CellRecord> {
        self.cells.iter().find(|c| !c.agree)
    }
}

fn check_cell(n: usize, k: usize, mode: Mode, series: &BiSeries) -> CellRecord {
    let id = |class| ClassId::new(class, n, k).expect("cell in range");
    let count_p = enumeration::count_class(id(Class::P), mode);
    let count_s = enumeration::count_class(id(Class::S), mode);
    let count_ct = enumeration::count_class(id(Class::CT), Mode::Filter);
    let gf_coeff = series.coeff(n, k).expect("n <= order").to_u64().expect("coefficient fits in u64");
    let agree = count_p == count_s && count_s == count_ct && count_ct == gf_coeff;
    CellRecord { n, k, count_p, count_s, count_ct, gf_coeff, agree }
}

/// Computes every cell `1 <= n <= max_n`, `0 <= k < n` (and `k <= max_k`)
/// on `workers` threads. Cell order in the report is `(n, k)` regardless of
/// scheduling.
pub fn verify(max_n: usize, max_k: Option<usize>, workers: usize, mode: Mode) -> VerifyReport {
    let start = Instant::now();
    let series = genfun::rhs_series(max_n);
    let todo: Vec<(usize, usize)> = (1..=max_n)
        .flat_map(|n| (0..n).map(move |k| (n, k)))
        .filter(|&(_, k)| max_k.map_or(true, |m| k <= m))
        .collect();
    let results: Mutex<Vec<Option<CellRecord>>> = Mutex::new(vec![None; todo.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers.max(1).min(todo.len().max(1)) {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(n, k)) = todo.get(idx) else { break };
                let record = check_cell(n, k, mode, &series);
                results.lock().expect("no worker panicked")[idx] = Some(record);
            });
        }
    });
    let cells = results.into_inner().expect("no worker panicked").into_iter().map(|r| r.expect("every cell computed")).collect();
    VerifyReport { cells, wall_time: start.elapsed() }
}

#[derive(Serialize)]
struct Summary<'a> {
    cells: usize,
    mismatches: usize,
    first_mismatch: Option<&'a CellRecord>,
}

fn write_report(report: &VerifyReport, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let summary = Summary { cells: report.cells.len(), mismatches: report.mismatches(), first_mismatch: report.first_mismatch() };
    match format {
        Format::Json => {
            for cell in &report.cells {
                writeln!(out, "{}", serde_json::to_string(cell)?)?;
            }
            writeln!(out, "{}", serde_json::json!({ "summary": summary }))?;
        }
        Format::Csv => {
            writeln!(out, "n,k,P,S,CT,gf,ok")?;
            for c in &report.cells {
                writeln!(out, "{},{},{},{},{},{},{}", c.n, c.k, c.count_p, c.count_s, c.count_ct, c.gf_coeff, c.agree)?;
            }
        }
        Format::Text => {
            for c in &report.cells {
                let status = if c.agree { "ok" } else { "MISMATCH" };
                writeln!(out, "n={} k={} P={} S={} CT={} gf={} {status}", c.n, c.k, c.count_p, c.count_s, c.count_ct, c.gf_coeff)?;
            }
            write!(out, "{} cells, {} mismatches", summary.cells, summary.mismatches)?;
            if let Some(c) = summary.first_mismatch {
                write!(out, ", first at n={} k={}", c.n, c.k)?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["crossfree"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn count_rows() {
        assert_eq!(run_str(&["count", "--class", "CT", "--n", "4"], "").1, "1 6 6 1 | total 14\n");
        assert_eq!(run_str(&["count", "--class", "S", "--n", "3"], "").1, "1 3 1 | total 5\n");
        assert_eq!(run_str(&["count", "--class", "P", "--n", "1"], "").1, "1\n");
        assert_eq!(run_str(&["count", "--class", "P", "--n", "4", "--k", "2", "--mode", "filter"], "").1, "6\n");
        let (code, _, err) = run_str(&["count", "--class", "P", "--n", "3", "--k", "3"], "");
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("out of range"));
        assert_eq!(run_str(&["count", "--class", "X", "--n", "3"], "").0, EXIT_USAGE);
    }

    #[test]
    fn count_formats() {
        let json = run_str(&["count", "--class", "CT", "--n", "4", "--format", "json"], "").1;
        assert_eq!(json, "{\"class\":\"CT\",\"counts\":[1,6,6,1],\"n\":4,\"total\":14}\n");
        let csv = run_str(&["count", "--class", "S", "--n", "2", "--format", "csv"], "").1;
        assert_eq!(csv, "class,n,k,count\nS,2,0,1\nS,2,1,1\n");
    }

    #[test]
    fn enumerate_lines() {
        assert_eq!(run_str(&["enumerate", "--class", "S", "--n", "3", "--k", "1"], "").1, "0,0,1\n0,1,0\n0,1,1\n");
        assert_eq!(run_str(&["enumerate", "--class", "CT", "--n", "2", "--k", "1"], "").1, "2;{1,2}\n");
        assert_eq!(run_str(&["enumerate", "--class", "P", "--n", "2", "--k", "1"], "").1, "2;{1,2}\n");
        let json = run_str(&["enumerate", "--class", "P", "--n", "2", "--k", "1", "--format", "json"], "").1;
        assert_eq!(json, "{\"n\":2,\"k\":1,\"object\":\"2;{1,2}\"}\n");
    }

    #[test]
    fn map_directions() {
        let m = "12;{1,6},{2,3},{4,12},{5,10},{7,8},{9},{11}";
        assert_eq!(run_str(&["map", "--direction", "alpha", m], "").1, "0,1,1,2,0,2,1,0\n");
        assert_eq!(
            run_str(&["map", "--direction", "reduce", m], "").1,
            "8;{1,5,6},{2,3,8},{4,7}\n# alignments=2 transients=2\n"
        );
        assert_eq!(run_str(&["map", "--direction", "alpha-inv", "0"], "").1, "0;\n");
        assert_eq!(run_str(&["map", "--direction", "alpha-inv", "01120210"], "").1, format!("{m}\n"));
        let batch = run_str(&["map", "--direction", "expand"], "8;{1,5,6},{2,3,8},{4,7}\n# comment\n\n2;{1,2}\n").1;
        assert_eq!(batch, format!("{m}\n# alignments=2 transients=2\n2;{{1,2}}\n# alignments=0 transients=0\n"));
    }

    #[test]
    fn map_rejects_out_of_class() {
        let (code, out, err) = run_str(&["map", "--direction", "alpha", "4;{1,4},{2,3}"], "");
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("right-nesting"), "{err}");
        let (code, _, err) = run_str(&["map", "--direction", "alpha-inv", "0100"], "");
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("x_3"), "{err}");
        let (code, _, err) = run_str(&["map", "--direction", "reduce", "3;{1,2"], "");
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("byte 6"), "{err}");
    }

    #[test]
    fn gf_table() {
        let out = run_str(&["gf", "--order", "4"], "").1;
        assert_eq!(out, "n=1: 1 | total 1\nn=2: 1 1 | total 2\nn=3: 1 3 1 | total 5\nn=4: 1 6 6 1 | total 14\n");
        let csv = run_str(&["gf", "--order", "2", "--format", "csv"], "").1;
        assert_eq!(csv, "n,k,coeff\n1,0,1\n2,0,1\n2,1,1\n");
        assert_eq!(run_str(&["gf", "--order", "0"], "").0, EXIT_USAGE);
    }

    #[test]
    fn verify_records() {
        let (code, out, _) = run_str(&["verify", "--max-n", "4", "--workers", "2"], "");
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 11);
        assert_eq!(lines[0], r#"{"n":1,"k":0,"P":1,"S":1,"CT":1,"gf":1,"ok":true}"#);
        assert!(lines.contains(&r#"{"n":4,"k":2,"P":6,"S":6,"CT":6,"gf":6,"ok":true}"#));
        assert_eq!(lines[10], r#"{"summary":{"cells":10,"first_mismatch":null,"mismatches":0}}"#);
        assert_eq!(run_str(&["verify", "--max-n", "0"], "").0, EXIT_USAGE);
    }

    #[test]
    fn verify_is_independent_of_workers() {
        let one = run_str(&["verify", "--max-n", "5", "--workers", "1"], "").1;
        let four = run_str(&["verify", "--max-n", "5", "--workers", "4", "--mode", "filter"], "").1;
        assert_eq!(one, four);
        let limited = verify(5, Some(1), 3, Mode::Pruned);
        assert!(limited.cells.iter().all(|c| c.k <= 1));
        assert_eq!(limited.cells.len(), 9);
    }

    #[test]
    fn report_flags_mismatch() {
        let mut report = verify(3, None, 1, Mode::Pruned);
        report.cells[4].count_ct += 1;
        report.cells[4].agree = false;
        assert_eq!(report.first_mismatch().map(|c| (c.n, c.k)), Some((3, 1)));
        let mut out = Vec::new();
        write_report(&report, Format::Text, &mut out).unwrap();
        assert!(String::from_utf8(out).unwrap().ends_with("6 cells, 1 mismatches, first at n=3 k=1\n"));
    }
}
