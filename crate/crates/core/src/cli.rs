//! Command-line front end. All logic lives in [`run`] so it can be driven
//! from tests; the binary only forwards `std::env::args` and exits.
//!
//! Exit codes: 0 success, 1 invalid input, 2 no preimage, 3 invariant
//! failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::inversion::{invert_phi_with, Algorithm, InvertOptions, SearchMode};
use crate::lattice::{count_dyck, enumerate_dyck, Frame, PathWord};
use crate::oracle::{
    verify_bijection_with, verify_properties_with, VerificationReport, DEFAULT_BUDGET,
};
use crate::ranks::{
    area_from_ranks, complement, delta_of, en_word, end_sets, key_of, rank_set, rank_walk, sw_word,
};
use crate::sweep::{phi, SwWord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NO_PREIMAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sweepmap",
    version,
    about = "Sweep map on rational Dyck paths and its inverses"
)]
struct Cli {
    /// output format
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Structured,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep a Dyck path: rank walk, sorted ranks, SW and EN words
    Sweep(Target),
    /// Recover the Dyck path(s) with a given sweep image
    Invert {
        #[command(flatten)]
        target: Target,
        /// auto, fuss, recip or brute
        #[arg(long, default_value = "auto")]
        algorithm: Algorithm,
        /// report every preimage instead of stopping at the first
        #[arg(long)]
        all: bool,
        /// depth budget for the search
        #[arg(long)]
        budget: Option<usize>,
    },
    /// List the Dyck paths of a frame in lexicographic order
    Enumerate {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        count_only: bool,
        /// refuse frames with more paths than this
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Exhaustively check bijectivity (and optionally the identities)
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        properties: bool,
        /// refuse frames with more paths than this
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Area, key, delta, end sets and complement of a path
    Stats(Target),
    /// ASCII picture of a path
    Render(Target),
}

#[derive(Debug, Args)]
struct Target {
    /// frame `m,n` (unless --frame is given) followed by words
    #[arg(value_name = "ARGS")]
    args: Vec<String>,
    /// frame `m,n`
    #[arg(long)]
    frame: Option<String>,
    /// read words from a file, one per line
    #[arg(long)]
    file: Option<PathBuf>,
}

/// What an invocation printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoPreimage(_) => EXIT_NO_PREIMAGE,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

/// Result of one command before formatting.
struct Report {
    input: String,
    plain: String,
    result: Value,
    telemetry: Value,
    code: i32,
}

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CliOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (name, outcome) = dispatch(&cli.command);
    match outcome {
        Err(f) => CliOutput {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
        Ok((frame, report)) => {
            let stdout = match cli.format {
                Format::Plain => report.plain,
                Format::Structured => {
                    let doc = json!({
                        "m": frame.m(),
                        "n": frame.n(),
                        "command": name,
                        "input": report.input,
                        "result": report.result,
                        "telemetry": report.telemetry,
                    });
                    serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
                }
            };
            CliOutput {
                code: report.code,
                stdout,
                stderr: String::new(),
            }
        }
    }
}

fn dispatch(command: &Command) -> (&'static str, Result<(Frame, Report), Failure>) {
    match command {
        Command::Sweep(t) => ("sweep", per_word(t, cmd_sweep)),
        Command::Invert {
            target,
            algorithm,
            all,
            budget,
        } => {
            let options = InvertOptions {
                algorithm: *algorithm,
                mode: if *all {
                    SearchMode::FindAll
                } else {
                    SearchMode::FindFirst
                },
                budget: *budget,
            };
            (
                "invert",
                per_word(target, |f, w| cmd_invert(f, w, &options)),
            )
        }
        Command::Enumerate {
            target,
            count_only,
            budget,
        } => (
            "enumerate",
            frame_only(target).and_then(|f| cmd_enumerate(f, *count_only, *budget)),
        ),
        Command::Verify {
            target,
            properties,
            budget,
        } => (
            "verify",
            frame_only(target).and_then(|f| cmd_verify(f, *properties, *budget)),
        ),
        Command::Stats(t) => ("stats", per_word(t, cmd_stats)),
        Command::Render(t) => ("render", per_word(t, cmd_render)),
    }
}

fn parse_frame(text: &str) -> Result<Frame, Failure> {
    text.parse::<Frame>().map_err(Failure::from)
}

/// Splits the arguments into a frame and a list of words.
fn resolve(t: &Target) -> Result<(Frame, Vec<String>), Failure> {
    let mut rest = t.args.iter();
    let frame = match &t.frame {
        Some(text) => parse_frame(text)?,
        None => parse_frame(rest.next().ok_or_else(|| usage("missing frame `m,n`"))?)?,
    };
    let mut words: Vec<String> = rest.cloned().collect();
    if let Some(path) = &t.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        words.extend(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from),
        );
    }
    Ok((frame, words))
}

fn frame_only(t: &Target) -> Result<Frame, Failure> {
    let (frame, words) = resolve(t)?;
    if !words.is_empty() {
        return Err(usage(format!("unexpected arguments: {}", words.join(" "))));
    }
    Ok(frame)
}

/// Runs `f` on every word; several words give an array-valued result.
fn per_word<F>(t: &Target, mut f: F) -> Result<(Frame, Report), Failure>
where
    F: FnMut(Frame, &str) -> Result<Report, Failure>,
{
    let (frame, words) = resolve(t)?;
    match words.len() {
        0 => Err(usage("missing input word")),
        1 => Ok((frame, f(frame, &words[0])?)),
        _ => {
            let reports = words
                .iter()
                .map(|w| f(frame, w))
                .collect::<Result<Vec<_>, _>>()?;
            let code = reports.iter().map(|r| r.code).max().unwrap_or(EXIT_OK);
            Ok((
                frame,
                Report {
                    input: words.join("\n"),
                    plain: reports
                        .iter()
                        .map(|r| r.plain.as_str())
                        .collect::<Vec<_>>()
                        .join("\n"),
                    result: Value::Array(reports.iter().map(|r| r.result.clone()).collect()),
                    telemetry: Value::Array(reports.into_iter().map(|r| r.telemetry).collect()),
                    code,
                },
            ))
        }
    }
}

/// Rows of a column-aligned array, labels left-justified.
fn array_rows(rows: &[(&str, Vec<String>)]) -> String {
    let label_w = rows
        .iter()
        .map(|(l, _)| l.chars().count())
        .max()
        .unwrap_or(0);
    let cols = rows.iter().map(|(_, r)| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|i| {
            rows.iter()
                .filter_map(|(_, r)| r.get(i))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for (label, row) in rows {
        let pad = label_w - label.chars().count();
        let mut line = format!("{label}{}", " ".repeat(pad));
        for (cell, w) in row.iter().zip(&widths) {
            let _ = write!(line, " {cell:>w$}");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn letters(word: &str) -> Vec<String> {
    word.chars().map(String::from).collect()
}

fn numbers(values: &[i64]) -> Vec<String> {
    values.iter().map(i64::to_string).collect()
}

fn cmd_sweep(frame: Frame, word: &str) -> Result<Report, Failure> {
    let started = Instant::now();
    let path = PathWord::parse(word, frame)?;
    let walk = rank_walk(&path);
    let image = phi(&path);
    let rs = rank_set(&path);
    let sigma = sw_word(&rs);
    let rho = en_word(&rs);
    let elapsed = started.elapsed();

    let mut plain = array_rows(&[
        ("D", letters(&path.to_string())),
        ("r(D)", numbers(walk.values())),
    ]);
    plain.push('\n');
    plain += &array_rows(&[
        ("Φ(D)", letters(&image.to_string())),
        ("ranks", numbers(rs.as_slice())),
        ("σ", letters(&sigma.to_string())),
        ("ρ", letters(&rho.to_string())),
    ]);
    Ok(Report {
        input: word.to_string(),
        plain,
        result: json!({
            "path": path.to_string(),
            "rank_walk": walk.values(),
            "phi": image.to_string(),
            "sorted_ranks": rs.as_slice(),
            "sigma": sigma.to_string(),
            "rho": rho.to_string(),
        }),
        telemetry: json!({ "elapsed_us": elapsed.as_secs_f64() * 1e6 }),
        code: EXIT_OK,
    })
}

fn cmd_invert(frame: Frame, word: &str, options: &InvertOptions) -> Result<Report, Failure> {
    let started = Instant::now();
    let sigma = SwWord::parse(word, frame)?;
    let inversion = invert_phi_with(&sigma, options)?;
    let elapsed = started.elapsed();
    let out = &inversion.outcome;

    let mut plain = String::new();
    for (path, ranks) in inversion.paths.iter().zip(&out.preimages) {
        let _ = writeln!(plain, "preimage  {path}");
        let _ = writeln!(plain, "ranks     {}", numbers(ranks.as_slice()).join(" "));
    }
    let _ = writeln!(
        plain,
        "algorithm {}  nodes {}  depth {}  explored {}  branching {}",
        inversion.algorithm,
        out.nodes_visited,
        out.max_depth,
        out.explored_depth,
        out.max_branching()
    );
    Ok(Report {
        input: word.to_string(),
        plain,
        result: json!({
            "paths": inversion.paths,
            "ranks": out.preimages,
            "algorithm": inversion.algorithm,
            "oracle_derived": inversion.oracle_derived,
        }),
        telemetry: json!({
            "nodes": out.nodes_visited,
            "max_depth": out.max_depth,
            "explored_depth": out.explored_depth,
            "branching": out.branching,
            "elapsed_us": elapsed.as_secs_f64() * 1e6,
        }),
        code: EXIT_OK,
    })
}

fn cmd_enumerate(
    frame: Frame,
    count_only: bool,
    budget: Option<u128>,
) -> Result<(Frame, Report), Failure> {
    let count = count_dyck(frame);
    let input = frame.to_string();
    if count_only {
        return Ok((
            frame,
            Report {
                input,
                plain: format!("{count}\n"),
                result: json!({ "count": count as u64 }),
                telemetry: json!({}),
                code: EXIT_OK,
            },
        ));
    }
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    if count > budget {
        return Err(Error::BudgetExceeded { count, budget }.into());
    }
    let started = Instant::now();
    let paths: Vec<String> = enumerate_dyck(frame).map(|p| p.to_string()).collect();
    let elapsed = started.elapsed();
    let mut plain = paths.join("\n");
    plain.push('\n');
    Ok((
        frame,
        Report {
            input,
            plain,
            result: json!({ "count": count as u64, "paths": paths }),
            telemetry: json!({ "elapsed_us": elapsed.as_secs_f64() * 1e6 }),
            code: EXIT_OK,
        },
    ))
}

fn report_lines(out: &mut String, title: &str, report: &VerificationReport) {
    let _ = writeln!(
        out,
        "{title}: {}  paths {}  image {}  bijective {}  inverter {}  {:.3}s",
        if report.passed() { "PASS" } else { "FAIL" },
        report.paths_checked,
        report.phi_image_size,
        report.bijective,
        report
            .inverter
            .map_or("none".to_string(), |a| a.to_string()),
        report.elapsed.as_secs_f64()
    );
    if !report.checks.is_empty() {
        let _ = writeln!(out, "  checks: {}", report.checks.join(", "));
    }
    for f in &report.failures {
        let _ = writeln!(out, "  failed {}: {}", f.check, f.witness);
    }
}

fn cmd_verify(
    frame: Frame,
    properties: bool,
    budget: Option<u128>,
) -> Result<(Frame, Report), Failure> {
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let bijection = verify_bijection_with(frame, budget)?;
    let props = if properties {
        Some(verify_properties_with(frame, budget)?)
    } else {
        None
    };
    let passed = bijection.passed() && props.as_ref().is_none_or(|p| p.passed());
    let mut plain = String::new();
    report_lines(&mut plain, "bijection", &bijection);
    if let Some(p) = &props {
        report_lines(&mut plain, "properties", p);
    }
    Ok((
        frame,
        Report {
            input: frame.to_string(),
            plain,
            result: json!({
                "passed": passed,
                "bijection": bijection,
                "properties": props,
            }),
            telemetry: json!({
                "elapsed_secs": bijection.elapsed.as_secs_f64()
                    + props.as_ref().map_or(0.0, |p| p.elapsed.as_secs_f64()),
            }),
            code: if passed { EXIT_OK } else { EXIT_INVARIANT },
        },
    ))
}

fn cmd_stats(frame: Frame, word: &str) -> Result<Report, Failure> {
    let path = PathWord::parse(word, frame)?;
    let rs = rank_set(&path);
    if !rs.is_dyck() {
        return Err(Error::NotDyck.into());
    }
    let area = area_from_ranks(&rs)?;
    let squares = path.area_by_squares()?;
    if area != squares {
        return Err(Failure {
            code: EXIT_INVARIANT,
            message: format!("area mismatch: ranks give {area}, squares give {squares}"),
        });
    }
    let comp = complement(&rs);
    let comp_area = area_from_ranks(&comp)?;
    let ends = end_sets(&rs);
    let (key, delta) = (key_of(&rs), delta_of(&rs));
    let sigma = sw_word(&rs);
    let rho = en_word(&rs);

    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    let mut plain = String::new();
    let _ = writeln!(plain, "path        {path}");
    let _ = writeln!(plain, "area        {area}");
    let _ = writeln!(plain, "key         {key}");
    let _ = writeln!(plain, "δ           {delta}");
    let _ = writeln!(plain, "ranks       {}", join(rs.as_slice()));
    let _ = writeln!(plain, "σ           {sigma}");
    let _ = writeln!(plain, "ρ           {rho}");
    let _ = writeln!(plain, "S ends      {}", join(&ends.south));
    let _ = writeln!(plain, "W ends      {}", join(&ends.west));
    let _ = writeln!(plain, "E ends      {}", join(&ends.east));
    let _ = writeln!(plain, "N ends      {}", join(&ends.north));
    let _ = writeln!(plain, "complement  {}", join(comp.as_slice()));
    let _ = writeln!(plain, "c-area      {comp_area}");
    Ok(Report {
        input: word.to_string(),
        plain,
        result: json!({
            "path": path.to_string(),
            "area": area,
            "key": key,
            "delta": delta,
            "ranks": rs.as_slice(),
            "sigma": sigma.to_string(),
            "rho": rho.to_string(),
            "end_sets": ends,
            "complement": comp.as_slice(),
            "complement_area": comp_area,
        }),
        telemetry: json!({}),
        code: EXIT_OK,
    })
}

fn cmd_render(frame: Frame, word: &str) -> Result<Report, Failure> {
    let path = PathWord::parse(word, frame)?;
    let picture = path.render_ascii();
    Ok(Report {
        input: word.to_string(),
        result: json!({ "path": path.to_string(), "ascii": picture }),
        plain: picture,
        telemetry: json!({}),
        code: EXIT_OK,
    })
}
