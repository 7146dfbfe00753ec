//! Command-line front end.
//!
//! Subcommands: `sieve`, `constants`, `verify`, `verify-all`,
//! `fixed-checks`, `finite-range`. Exit codes: 0 success, 1 I/O or
//! runtime failure, 2 usage, 3 indeterminate verification, 4 a claim
//! verified false. The config path may come from `--config` or the
//! `LUCKY_BOUNDS_CONFIG` environment variable.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rug::float::Round;
use rug::Float;
use serde::Serialize;

use crate::interval::Interval;
use crate::pipeline::{
    finite_range, run_pipeline, BootstrapThreshold, BoundForm, BoundStatement, ConstantKind,
    PipelineConfig, PipelineOutput, StageLabel,
};
use crate::sieve::{generate, naive_generate, table_io, LuckyTable};
use crate::stats::StatsContext;
use crate::verify::{
    thm_lower_1, thm_upper_1, verify_fixed_checks, verify_pipeline_consistency, verify_range,
    Outcome, VerificationReport, VerifyOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;
pub const EXIT_FALSE: i32 = 4;

const CONFIG_ENV: &str = "LUCKY_BOUNDS_CONFIG";

#[derive(Parser)]
#[command(
    name = "lucky-bounds",
    version,
    about = "Lucky number tables, certified constants, and bound verification"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the first N lucky numbers and write them as a LUKT file
    Sieve(SieveArgs),
    /// Run the five-stage constant pipeline from a config file
    Constants(ConfigArg),
    /// Verify one bound statement over an index range
    Verify(VerifyArgs),
    /// Run the pipeline and verify everything it emitted, plus the
    /// parameter-free theorem bounds and the fixed spot checks
    VerifyAll(ConfigArg),
    /// Re-run the fixed spot computations
    FixedChecks(FixedChecksArgs),
    /// Apply the finite-range lower bound lemma directly
    FiniteRange(FiniteRangeArgs),
}

#[derive(Args)]
struct SieveArgs {
    /// Number of lucky numbers to generate
    #[arg(long)]
    limit: u64,
    /// Output path for the LUKT table
    #[arg(long)]
    out: PathBuf,
    /// Cross-check against the naive list-deletion sieve (limit <= 10^6)
    #[arg(long)]
    oracle: bool,
    /// Print the first K entries after generating
    #[arg(long, value_name = "K")]
    print: Option<usize>,
    /// Print in the classical form that starts with 1 instead of 2
    #[arg(long)]
    classic: bool,
}

#[derive(Args)]
struct ConfigArg {
    /// Pipeline configuration (key=value lines); falls back to
    /// $LUCKY_BOUNDS_CONFIG
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// LUKT table to verify against
    #[arg(long)]
    table: PathBuf,
    /// Statement id: thm_lower_1, thm_upper_1, or a pipeline form id
    /// (first_lower, tau_upper, ell_upper, tau_lower, second_lower,
    /// thm_lower_2, thm_upper_2) resolved from --constants
    #[arg(long)]
    statement: String,
    /// First index to check
    #[arg(long)]
    from: u64,
    /// Last index to check
    #[arg(long)]
    to: u64,
    /// constants.json produced by the constants subcommand (required
    /// for forms with derived constants)
    #[arg(long)]
    constants: Option<PathBuf>,
    /// Producing round to select when several statements share a form
    #[arg(long)]
    round: Option<String>,
    #[arg(long, default_value_t = 128)]
    precision: u32,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct FixedChecksArgs {
    #[arg(long, default_value_t = 128)]
    precision: u32,
}

#[derive(Args)]
struct FiniteRangeArgs {
    /// LUKT table supplying varrho
    #[arg(long)]
    table: PathBuf,
    /// Reference index n0
    #[arg(long)]
    n0: u64,
    /// Optional t <= 1; defaults to the m2-maximizing choice
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value_t = 192)]
    precision: u32,
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap distinguishes --help/--version from real usage errors
            let code = if e.exit_code() == 0 { EXIT_OK } else { EXIT_USAGE };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Sieve(a) => cmd_sieve(a),
        Command::Constants(a) => cmd_constants(a),
        Command::Verify(a) => cmd_verify(a),
        Command::VerifyAll(a) => cmd_verify_all(a),
        Command::FixedChecks(a) => cmd_fixed_checks(a),
        Command::FiniteRange(a) => cmd_finite_range(a),
    }
}

fn fail_io(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_IO
}

fn fail_usage(msg: impl std::fmt::Display) -> i32 {
    eprintln!("usage error: {msg}");
    EXIT_USAGE
}

fn load_table(path: &Path) -> Result<LuckyTable, i32> {
    let file = File::open(path)
        .map_err(|e| fail_io(format_args!("table not found: {}: {e}", path.display())))?;
    let table = table_io::load_table(BufReader::new(file))
        .map_err(|e| fail_io(format_args!("loading {}: {e}", path.display())))?;
    table
        .validate()
        .map_err(|e| fail_io(format_args!("table {} invalid: {e}", path.display())))?;
    Ok(table)
}

fn resolve_config(arg: Option<PathBuf>) -> Result<PipelineConfig, i32> {
    let path = match arg.or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from)) {
        Some(p) => p,
        None => {
            return Err(fail_usage(format_args!(
                "no config given: pass --config or set {CONFIG_ENV}"
            )))
        }
    };
    PipelineConfig::load(&path)
        .map_err(|e| fail_io(format_args!("config {}: {e}", path.display())))
}

fn cmd_sieve(a: SieveArgs) -> i32 {
    if a.limit == 0 {
        return fail_usage("--limit must be at least 1");
    }
    if a.oracle && a.limit > 1_000_000 {
        return fail_usage("--oracle mode is capped at --limit 1000000");
    }
    let table = match generate(a.limit as usize) {
        Ok(t) => t,
        Err(e) => return fail_io(e),
    };
    if a.oracle {
        let slow = match naive_generate(a.limit as usize) {
            Ok(t) => t,
            Err(e) => return fail_io(e),
        };
        if table != slow {
            let n = table
                .values()
                .iter()
                .zip(slow.values())
                .position(|(x, y)| x != y)
                .map_or(table.len().min(slow.len()), |i| i + 1);
            eprintln!("oracle MISMATCH at index {n}");
            return EXIT_FALSE;
        }
        println!("oracle match ({} entries)", table.len());
    }
    let file = match File::create(&a.out) {
        Ok(f) => f,
        Err(e) => return fail_io(format_args!("creating {}: {e}", a.out.display())),
    };
    let mut writer = BufWriter::new(file);
    if let Err(e) = table_io::save_table(&table, &mut writer).and_then(|()| Ok(writer.flush()?)) {
        return fail_io(format_args!("writing {}: {e}", a.out.display()));
    }
    println!(
        "wrote {} lucky numbers to {} (last: {})",
        table.len(),
        a.out.display(),
        table.get(table.len()).unwrap()
    );
    if let Some(k) = a.print {
        let shown: Vec<u64> = table.values().iter().take(k).copied().collect();
        let rendered: Vec<String> = shown
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if i == 0 && a.classic {
                    "1".to_string()
                } else {
                    v.to_string()
                }
            })
            .collect();
        println!("{}", rendered.join(", "));
    }
    EXIT_OK
}

/// serde shapes for constants.json
#[derive(Serialize)]
struct ConstantJson {
    name: String,
    lo: String,
    hi: String,
    display: String,
    lemma: &'static str,
    round: &'static str,
}

#[derive(Serialize)]
struct StatementJson {
    form: &'static str,
    round: &'static str,
    valid_from: u64,
    constants: Vec<(String, String, String)>, // (name, lo, hi)
}

#[derive(Serialize)]
struct RangeJson {
    n0: u64,
    t: (String, String),
    m1: String,
    m2: String,
    empty: bool,
}

#[derive(Serialize)]
struct StageJson {
    stage: &'static str,
    constants: Vec<ConstantJson>,
    statements: Vec<StatementJson>,
}

#[derive(Serialize)]
struct BootstrapJson {
    n4: Option<String>,
    n4_inner_exponent: Option<(String, String)>,
    head_check_to: u64,
    ranges: Vec<RangeJson>,
    chain_closed: bool,
}

#[derive(Serialize)]
struct ConstantsDocument {
    config: PipelineConfig,
    table_entries: usize,
    stages: Vec<StageJson>,
    bootstrap: BootstrapJson,
    /// the only non-deterministic field in this document
    generated_unix_ms: u128,
}

fn float_bound(f: &Float, round: Round) -> String {
    if !f.is_finite() {
        return f.to_string();
    }
    f.to_string_radix_round(10, Some(45), round)
}

fn interval_bounds(iv: &Interval) -> (String, String) {
    (
        float_bound(iv.lo(), Round::Down),
        float_bound(iv.hi(), Round::Up),
    )
}

fn statement_json(stmt: &BoundStatement) -> StatementJson {
    let mut constants = Vec::new();
    for (name, c) in [
        ("c1", &stmt.c1),
        ("c2", &stmt.c2),
        ("c3", &stmt.c3),
        ("c4", &stmt.c4),
        ("c5", &stmt.c5),
        ("c6", &stmt.c6),
        ("c7", &stmt.c7),
        ("c8", &stmt.c8),
    ] {
        if let Some(iv) = c {
            let (lo, hi) = interval_bounds(iv);
            constants.push((name.to_string(), lo, hi));
        }
    }
    StatementJson {
        form: stmt.form.id(),
        round: stmt.round.as_str(),
        valid_from: stmt.valid_from,
        constants,
    }
}

fn constants_document(
    config: &PipelineConfig,
    table: &LuckyTable,
    output: &PipelineOutput,
) -> ConstantsDocument {
    let stages = output
        .stages
        .iter()
        .map(|s| StageJson {
            stage: s.stage.as_str(),
            constants: s
                .constants
                .iter()
                .map(|c| {
                    let (lo, hi) = match &c.value {
                        ConstantKind::Enclosure(iv) => interval_bounds(iv),
                        ConstantKind::Int(i) => (i.to_string(), i.to_string()),
                    };
                    ConstantJson {
                        name: c.name.clone(),
                        lo,
                        hi,
                        display: c.value.display(),
                        lemma: c.lemma,
                        round: s.stage.as_str(),
                    }
                })
                .collect(),
            statements: s.statements.iter().map(statement_json).collect(),
        })
        .collect();
    let (n4, n4_inner) = match &output.bootstrap.n4 {
        BootstrapThreshold::Value(v) => (Some(v.to_string()), None),
        BootstrapThreshold::Symbolic { inner } => (None, Some(interval_bounds(inner))),
    };
    ConstantsDocument {
        config: config.clone(),
        table_entries: table.len(),
        stages,
        bootstrap: BootstrapJson {
            n4,
            n4_inner_exponent: n4_inner,
            head_check_to: output.bootstrap.head_to,
            ranges: output
                .bootstrap
                .ranges
                .iter()
                .map(|r| RangeJson {
                    n0: r.n0,
                    t: interval_bounds(&r.t),
                    m1: r.m1.to_string(),
                    m2: r.m2.to_string(),
                    empty: r.empty,
                })
                .collect(),
            chain_closed: output.bootstrap.chain_closed,
        },
        generated_unix_ms: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_millis()),
    }
}

fn print_stage_summary(output: &PipelineOutput) {
    for s in &output.stages {
        println!("stage {}", s.stage.as_str());
        for c in s.constants.iter() {
            println!("  {:<10} = {}", c.name, c.value.display());
        }
    }
    let b = &output.bootstrap;
    match &b.n4 {
        BootstrapThreshold::Value(v) => {
            let digits = v.to_string();
            if digits.len() > 24 {
                println!(
                    "bootstrap: n4 ~ 10^{} ({} digits), head check to {}",
                    digits.len() - 1,
                    digits.len(),
                    b.head_to
                );
            } else {
                println!("bootstrap: n4 = {digits}, head check to {}", b.head_to);
            }
        }
        BootstrapThreshold::Symbolic { inner } => {
            println!(
                "bootstrap: n4 = exp(exp({})), head check to {}",
                inner.to_decimal_question(),
                b.head_to
            );
        }
    }
    for r in &b.ranges {
        println!(
            "  finite range n0={}: [{}, {}]{}",
            r.n0,
            r.m1,
            r.m2,
            if r.empty { " (empty)" } else { "" }
        );
    }
    println!(
        "  lower-bound chain {}",
        if b.chain_closed {
            "closed up to the bootstrap threshold"
        } else {
            "NOT closed"
        }
    );
}

fn run_pipeline_from_config(config: &PipelineConfig) -> Result<(LuckyTable, PipelineOutput), i32> {
    let table = load_table(&config.table_path)?;
    let mut ctx = StatsContext::new(&table, config.precision_bits);
    let output = {
        let r = run_pipeline(&mut ctx, config);
        match r {
            Ok(o) => o,
            Err(e) => {
                eprintln!("pipeline aborted: {e}");
                return Err(EXIT_IO);
            }
        }
    };
    Ok((table, output))
}

fn write_constants_json(
    config: &PipelineConfig,
    table: &LuckyTable,
    output: &PipelineOutput,
) -> Result<PathBuf, i32> {
    let doc = constants_document(config, table, output);
    let path = config.output_dir.join("constants.json");
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| fail_io(format_args!("creating {}: {e}", parent.display())))?;
        }
    }
    let file = File::create(&path)
        .map_err(|e| fail_io(format_args!("creating {}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, &doc)
        .map_err(|e| fail_io(format_args!("writing {}: {e}", path.display())))?;
    w.flush()
        .map_err(|e| fail_io(format_args!("writing {}: {e}", path.display())))?;
    Ok(path)
}

fn cmd_constants(a: ConfigArg) -> i32 {
    let config = match resolve_config(a.config) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let (table, output) = match run_pipeline_from_config(&config) {
        Ok(x) => x,
        Err(code) => return code,
    };
    print_stage_summary(&output);
    match write_constants_json(&config, &table, &output) {
        Ok(path) => {
            println!("constants written to {}", path.display());
            EXIT_OK
        }
        Err(code) => code,
    }
}

fn exit_for_reports(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.outcome == Outcome::Fail) {
        EXIT_FALSE
    } else if reports.iter().any(|r| r.outcome == Outcome::Indeterminate) {
        EXIT_INDETERMINATE
    } else {
        EXIT_OK
    }
}

fn print_reports(reports: &[VerificationReport]) {
    for r in reports {
        println!("{}", r.summary_line());
    }
}

fn write_jsonl(path: &Path, reports: &[VerificationReport]) -> Result<(), i32> {
    let file = File::create(path)
        .map_err(|e| fail_io(format_args!("creating {}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    for r in reports {
        serde_json::to_writer(&mut w, r)
            .map_err(|e| fail_io(format_args!("writing {}: {e}", path.display())))?;
        w.write_all(b"\n")
            .map_err(|e| fail_io(format_args!("writing {}: {e}", path.display())))?;
    }
    w.flush()
        .map_err(|e| fail_io(format_args!("writing {}: {e}", path.display())))?;
    Ok(())
}

fn parse_bound_interval(lo: &str, hi: &str, prec: u32) -> Result<Interval, String> {
    let lo = Float::parse(lo).map_err(|e| e.to_string())?;
    let lo = Float::with_val_round(prec, lo, Round::Down).0;
    let hi = Float::parse(hi).map_err(|e| e.to_string())?;
    let hi = Float::with_val_round(prec, hi, Round::Up).0;
    Interval::new(lo, hi).map_err(|e| e.to_string())
}

/// Rebuilds a statement from a constants.json document.
fn statement_from_json(
    doc: &serde_json::Value,
    form: BoundForm,
    round: Option<&str>,
    prec: u32,
) -> Result<BoundStatement, String> {
    let stages = doc
        .get("stages")
        .and_then(|s| s.as_array())
        .ok_or("constants document has no stages")?;
    for stage in stages {
        let statements = stage
            .get("statements")
            .and_then(|s| s.as_array())
            .ok_or("stage has no statements")?;
        for st in statements {
            if st.get("form").and_then(|f| f.as_str()) != Some(form.id()) {
                continue;
            }
            let st_round = st.get("round").and_then(|r| r.as_str()).unwrap_or("");
            if let Some(want) = round {
                if want != st_round {
                    continue;
                }
            }
            let valid_from = st
                .get("valid_from")
                .and_then(|v| v.as_u64())
                .ok_or("statement has no valid_from")?;
            let round_label = match st_round {
                "first_lower_bound" => StageLabel::FirstLowerBound,
                "first_round" => StageLabel::FirstRound,
                "bootstrapping" => StageLabel::Bootstrapping,
                "second_round" => StageLabel::SecondRound,
                "third_half_round" => StageLabel::ThirdHalfRound,
                other => return Err(format!("unknown round {other:?}")),
            };
            let mut stmt = BoundStatement {
                form,
                round: round_label,
                valid_from,
                c1: None,
                c2: None,
                c3: None,
                c4: None,
                c5: None,
                c6: None,
                c7: None,
                c8: None,
            };
            let consts = st
                .get("constants")
                .and_then(|c| c.as_array())
                .ok_or("statement has no constants")?;
            for c in consts {
                let arr = c.as_array().ok_or("constant entry shape")?;
                let name = arr[0].as_str().ok_or("constant name")?;
                let lo = arr[1].as_str().ok_or("constant lo")?;
                let hi = arr[2].as_str().ok_or("constant hi")?;
                let iv = parse_bound_interval(lo, hi, prec)?;
                match name {
                    "c1" => stmt.c1 = Some(iv),
                    "c2" => stmt.c2 = Some(iv),
                    "c3" => stmt.c3 = Some(iv),
                    "c4" => stmt.c4 = Some(iv),
                    "c5" => stmt.c5 = Some(iv),
                    "c6" => stmt.c6 = Some(iv),
                    "c7" => stmt.c7 = Some(iv),
                    "c8" => stmt.c8 = Some(iv),
                    other => return Err(format!("unknown constant {other:?}")),
                }
            }
            return Ok(stmt);
        }
    }
    Err(format!(
        "no statement with form {} (round filter {:?}) in document",
        form.id(),
        round
    ))
}

fn cmd_verify(a: VerifyArgs) -> i32 {
    let table = match load_table(&a.table) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let form = match BoundForm::from_id(&a.statement) {
        Some(f) => f,
        None => return fail_usage(format_args!("unknown statement id {:?}", a.statement)),
    };
    let stmt = match form {
        BoundForm::ThmLower1 => thm_lower_1(),
        BoundForm::ThmUpper1 => thm_upper_1(),
        _ => {
            let path = match &a.constants {
                Some(p) => p,
                None => {
                    return fail_usage(format_args!(
                        "statement {} carries derived constants: pass --constants",
                        form.id()
                    ))
                }
            };
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return fail_io(format_args!("reading {}: {e}", path.display())),
            };
            let doc: serde_json::Value = match serde_json::from_str(&text) {
                Ok(d) => d,
                Err(e) => return fail_io(format_args!("parsing {}: {e}", path.display())),
            };
            match statement_from_json(&doc, form, a.round.as_deref(), a.precision) {
                Ok(s) => s,
                Err(e) => return fail_io(e),
            }
        }
    };
    let opts = VerifyOptions {
        precision_bits: a.precision,
        workers: a.workers.unwrap_or_else(|| {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        }),
    };
    let mut ctx_holder;
    let stats = if stmt.form.needs_rho() {
        ctx_holder = StatsContext::new(&table, a.precision.max(128));
        if let Err(e) = ctx_holder.warm(a.to) {
            return fail_io(e);
        }
        Some(&ctx_holder)
    } else {
        None
    };
    match verify_range(&table, &stmt, a.from, a.to, stats, &opts) {
        Ok(report) => {
            match serde_json::to_string(&report) {
                Ok(line) => println!("{line}"),
                Err(e) => return fail_io(e),
            }
            eprintln!("{}", report.summary_line());
            exit_for_reports(std::slice::from_ref(&report))
        }
        Err(crate::verify::VerifyError::RangeError { lo, hi, context }) => {
            fail_usage(format_args!("range [{lo}, {hi}]: {context}"))
        }
        Err(e) => fail_io(e),
    }
}

fn cmd_verify_all(a: ConfigArg) -> i32 {
    let config = match resolve_config(a.config) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let table = match load_table(&config.table_path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let mut ctx = StatsContext::new(&table, config.precision_bits);
    let output = match run_pipeline(&mut ctx, &config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("pipeline aborted: {e}");
            return EXIT_IO;
        }
    };
    // statements need rho up to the table end
    if let Err(e) = ctx.warm(table.len() as u64) {
        return fail_io(e);
    }
    let opts = VerifyOptions {
        precision_bits: 128,
        workers: config.workers,
    };
    let mut reports = Vec::new();
    match verify_pipeline_consistency(&table, &output, &ctx, &opts) {
        Ok(mut r) => reports.append(&mut r),
        Err(e) => return fail_io(e),
    }
    for stmt in [thm_lower_1(), thm_upper_1()] {
        let lo = stmt.form.min_n().max(stmt.valid_from);
        match verify_range(&table, &stmt, lo, table.len() as u64, None, &opts) {
            Ok(r) => reports.push(r),
            Err(e) => return fail_io(e),
        }
    }
    match verify_fixed_checks(opts.precision_bits) {
        Ok(mut r) => reports.append(&mut r),
        Err(e) => return fail_io(e),
    }

    print_stage_summary(&output);
    println!();
    print_reports(&reports);
    if let Err(code) = write_constants_json(&config, &table, &output) {
        return code;
    }
    let report_path = config.output_dir.join("reports.jsonl");
    if let Err(code) = write_jsonl(&report_path, &reports) {
        return code;
    }
    println!(
        "\n{} reports written to {}",
        reports.len(),
        report_path.display()
    );
    exit_for_reports(&reports)
}

fn cmd_fixed_checks(a: FixedChecksArgs) -> i32 {
    match verify_fixed_checks(a.precision) {
        Ok(reports) => {
            print_reports(&reports);
            exit_for_reports(&reports)
        }
        Err(e) => fail_io(e),
    }
}

fn cmd_finite_range(a: FiniteRangeArgs) -> i32 {
    let table = match load_table(&a.table) {
        Ok(t) => t,
        Err(code) => return code,
    };
    if a.n0 < 2 || a.n0 > table.len() as u64 {
        return fail_usage(format_args!(
            "--n0 must lie in [2, {}] for this table",
            table.len()
        ));
    }
    let mut ctx = StatsContext::new(&table, a.precision);
    if let Err(e) = ctx.warm(a.n0) {
        return fail_io(e);
    }
    let t = a.t.map(|t| Interval::from_f64(t, a.precision));
    match finite_range(&ctx, a.n0, t) {
        Ok(fr) => {
            println!("n0 = {}", fr.n0);
            println!("c0 = {}", fr.c0.to_decimal_question());
            println!("t  = {}", fr.t.to_decimal_question());
            println!("m1 = {}", fr.m1);
            println!("m2 = {}", fr.m2);
            if fr.empty {
                println!("range is empty (m1 > m2)");
            } else {
                println!("ell_n > n log n certified for all n in [m1, m2]");
            }
            EXIT_OK
        }
        Err(e) => fail_io(e),
    }
}
