//! `ribbon`: knot invariants, span tables and the acceptance suite from the
//! command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 resource cap reached,
//! 3 verification failure.

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use ribbon_core::diagram::Diagram;
use ribbon_core::family;
use ribbon_core::skein::{self, GammaEngine, InvariantReport, SkeinConfig, SkeinError};
use ribbon_core::slicetools::{self, SliceReport};
use ribbon_core::verify;

const EXIT_INPUT: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "ribbon", version, about = "Exact knot polynomials for annulus-twisted ribbon knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// HOMFLYPT, gamma, Jones, Conway, Alexander, determinant and slice checks.
    Invariants {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Gamma spans across a range of family members.
    SpanTable {
        /// Inclusive range such as `0..3`.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        range: RangeInclusive<i64>,
        #[command(flatten)]
        format: Format,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Run the acceptance suite.
    Verify {
        #[command(flatten)]
        format: Format,
        #[command(flatten)]
        engine: EngineArgs,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// File holding a PD code.
    #[arg(long)]
    pd: Option<PathBuf>,
    /// Built-in knot name.
    #[arg(long)]
    builtin: Option<String>,
    /// Family member index.
    #[arg(long, allow_hyphen_values = true)]
    family: Option<i64>,
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    plain: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Json,
    Csv,
    Plain,
}

impl Format {
    fn resolve(&self, default: OutputFormat) -> OutputFormat {
        if self.json {
            OutputFormat::Json
        } else if self.csv {
            OutputFormat::Csv
        } else if self.plain {
            OutputFormat::Plain
        } else {
            default
        }
    }
}

#[derive(Args)]
struct EngineArgs {
    /// Maximum number of skein nodes to expand.
    #[arg(long, env = "NODE_CAP", value_parser = clap::value_parser!(u64).range(1..))]
    node_cap: Option<u64>,
    /// Skip the oracle cross-checks.
    #[arg(long)]
    no_oracle: bool,
}

impl EngineArgs {
    fn config(&self) -> SkeinConfig {
        let mut cfg = SkeinConfig::default();
        if let Some(cap) = self.node_cap {
            cfg = cfg.with_node_cap(cap);
        }
        cfg.cross_check = !self.no_oracle;
        cfg
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected <a>..<b>, got '{s}'"))?;
    let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("bad bound '{x}': {e}"));
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

fn skein_exit(e: &SkeinError) -> u8 {
    match e {
        SkeinError::NodeCap { .. } => EXIT_RESOURCE,
        SkeinError::OracleMismatch(_) => EXIT_VERIFY,
        SkeinError::NotAKnot(_) | SkeinError::Diagram(_) => EXIT_INPUT,
        _ => EXIT_VERIFY,
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn load(input: &Input) -> Result<(String, Diagram), ExitCode> {
    if let Some(path) = &input.pd {
        let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
        let d = Diagram::parse_pd(&text).map_err(|e| fail(EXIT_INPUT, e))?;
        let report = d.validate();
        if !report.all_passed() {
            return Err(fail(EXIT_INPUT, format!("invalid diagram: {report:?}")));
        }
        Ok((path.display().to_string(), d))
    } else if let Some(name) = &input.builtin {
        let d = family::builtin(name).map_err(|e| fail(EXIT_INPUT, e))?;
        Ok((name.clone(), d))
    } else {
        let n = input.family.expect("clap enforces one input");
        Ok((format!("family({n})"), family::boundary_knot(n)))
    }
}

#[derive(Serialize)]
struct InvariantCsvRow<'a> {
    knot: &'a str,
    crossings: usize,
    gamma_span: i64,
    determinant: u64,
    det_square: bool,
}

fn cmd_invariants(input: &Input, format: OutputFormat, cfg: &SkeinConfig) -> ExitCode {
    let (name, d) = match load(input) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let report = match skein::full_report(&d, cfg) {
        Ok(r) => r,
        Err(e) => return fail(skein_exit(&e), e),
    };
    let slice = match SliceReport::from_alexander(&report.alexander, slicetools::DEFAULT_MAX_COEFF) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_VERIFY, e),
    };
    match format {
        OutputFormat::Json => println!("{}", invariants_json(&name, &d, &report, &slice)),
        OutputFormat::Csv => {
            let row = InvariantCsvRow {
                knot: &name,
                crossings: d.crossing_count(),
                gamma_span: report.gamma_span,
                determinant: report.determinant,
                det_square: slice.det_is_odd_square,
            };
            if let Err(e) = write_csv(std::iter::once(row)) {
                return fail(EXIT_INPUT, e);
            }
        }
        OutputFormat::Plain => {
            println!("knot:        {name}");
            println!("crossings:   {}", d.crossing_count());
            println!("homflypt:    {}", report.homflypt);
            println!("gamma:       {}", report.gamma.display_in("x"));
            println!("gamma span:  {}", report.gamma_span);
            println!("jones:       {}", report.jones.display_in("t"));
            println!("conway:      {}", report.conway.display_in("z"));
            println!("alexander:   {}", report.alexander.display_in("t"));
            println!("determinant: {}", report.determinant);
            println!("det square:  {}", slice.det_is_odd_square);
            match &slice.fox_milnor_factor {
                Some(f) => println!("fox-milnor:  {}", f.display_in("t")),
                None => println!("fox-milnor:  not found within bound {}", slice.search_bound.max_coeff),
            }
        }
    }
    ExitCode::SUCCESS
}

fn invariants_json(name: &str, d: &Diagram, r: &InvariantReport, slice: &SliceReport) -> serde_json::Value {
    json!({
        "knot": name,
        "crossings": d.crossing_count(),
        "homflypt": r.homflypt,
        "gamma": r.gamma,
        "gamma_span": r.gamma_span,
        "jones": r.jones,
        "conway": r.conway,
        "alexander": r.alexander,
        "determinant": r.determinant,
        "slice": {
            "det_square": slice.det_is_odd_square,
            "fox_milnor_factor": slice.fox_milnor_factor,
        },
    })
}

fn write_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(std::io::stdout());
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SpanRow {
    n: i64,
    crossing_count: usize,
    gamma_span: i64,
    expected: i64,
    #[serde(rename = "match")]
    matches: bool,
}

fn emit_rows(rows: &[SpanRow], format: OutputFormat) {
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(rows).expect("rows serialize")),
        OutputFormat::Csv => {
            if let Err(e) = write_csv(rows) {
                eprintln!("error: {e}");
            }
        }
        OutputFormat::Plain => {
            println!("{:>4} {:>9} {:>10} {:>8} {:>6}", "n", "crossings", "gamma_span", "expected", "match");
            for r in rows {
                println!("{:>4} {:>9} {:>10} {:>8} {:>6}", r.n, r.crossing_count, r.gamma_span, r.expected, r.matches);
            }
        }
    }
}

fn cmd_span_table(range: RangeInclusive<i64>, format: OutputFormat, cfg: &SkeinConfig) -> ExitCode {
    let mut engine = GammaEngine::new(*cfg);
    let mut rows = Vec::new();
    for n in range {
        let d = family::boundary_knot(n);
        let span = engine.gamma(&d).and_then(|g| Ok(g.span()?));
        match span {
            Ok(gamma_span) => {
                let expected = 2 * n + 4;
                rows.push(SpanRow { n, crossing_count: d.crossing_count(), gamma_span, expected, matches: gamma_span == expected });
            }
            Err(e) => {
                emit_rows(&rows, format);
                return fail(skein_exit(&e), format!("family member {n}: {e}"));
            }
        }
    }
    emit_rows(&rows, format);
    if rows.iter().all(|r| r.matches) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    }
}

fn cmd_verify(format: OutputFormat, cfg: &SkeinConfig) -> ExitCode {
    let results = verify::run_all(cfg);
    match format {
        OutputFormat::Json => {
            let rows: Vec<_> = results
                .iter()
                .map(|r| {
                    let (status, reason) = match &r.outcome {
                        verify::Outcome::Pass => ("pass", None),
                        verify::Outcome::Fail(w) => ("fail", Some(w)),
                        verify::Outcome::Resource(w) => ("resource", Some(w)),
                    };
                    json!({
                        "id": r.id,
                        "title": r.title,
                        "status": status,
                        "reason": reason,
                        "detail": r.detail,
                        "seconds": r.elapsed.as_secs_f64(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
        }
        OutputFormat::Csv => {
            #[derive(Serialize)]
            struct Row {
                id: u8,
                passed: bool,
                seconds: f64,
            }
            let rows = results.iter().map(|r| Row { id: r.id, passed: r.passed(), seconds: r.elapsed.as_secs_f64() });
            if let Err(e) = write_csv(rows) {
                return fail(EXIT_INPUT, e);
            }
        }
        OutputFormat::Plain => {
            for r in &results {
                println!("{r}");
            }
        }
    }
    ExitCode::from(verify::exit_code(&results) as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Invariants { input, format, engine } => cmd_invariants(&input, format.resolve(OutputFormat::Plain), &engine.config()),
        Command::SpanTable { range, format, engine } => cmd_span_table(range, format.resolve(OutputFormat::Csv), &engine.config()),
        Command::Verify { format, engine } => cmd_verify(format.resolve(OutputFormat::Plain), &engine.config()),
    }
}
