//! `dellip`: batch computation, verification runs and export.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dellip_core::census::{self, CensusReport};
use dellip_core::delliptic::{self, DEllipticClass};
use dellip_core::qseries;
use dellip_core::rational::{to_compact_string, to_fraction_string};
use dellip_core::verify::{self, VerifyConfig};
use rayon::prelude::*;
use serde_json::json;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "dellip", version, about = "Classes of d-elliptic loci in the moduli of genus-2 curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output to PATH instead of stdout.
    #[arg(long, value_name = "PATH", global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoverKind {
    #[value(name = "2B")]
    TwoB,
    #[value(name = "2C")]
    TwoC,
    #[value(name = "3C")]
    ThreeC,
    All,
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn series_order(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n < 8 => Err("truncation order must be at least 8".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The class x·δ₀ + y·δ₁ for one degree.
    Class {
        #[arg(long, value_parser = positive)]
        d: u64,
    },
    /// x and y for d = 1..=d_max, solved and closed-form routes cross-checked.
    Table {
        #[arg(long, value_parser = positive)]
        d_max: u64,
    },
    /// a_d (both routes) and b_d for d = 1..=d_max.
    ATable {
        #[arg(long, value_parser = positive)]
        d_max: u64,
    },
    /// Enumeration reports for the cover types feeding the test-curve equations.
    Census {
        #[arg(long, value_parser = positive)]
        d: u64,
        #[arg(long = "type", value_enum, default_value_t = CoverKind::All)]
        cover_type: CoverKind,
        /// Brute-force ceiling for subgroup enumeration.
        #[arg(long, default_value_t = census::DEFAULT_ORACLE_BOUND)]
        oracle_bound: u64,
    },
    /// Ramanujan's equation and quasi-modular decompositions.
    Qcheck {
        #[arg(long, default_value = "200", value_parser = series_order)]
        order: usize,
    },
    /// Run every invariant suite.
    VerifyAll {
        #[arg(long, default_value = "500", value_parser = positive)]
        d_max: u64,
        #[arg(long, default_value = "200", value_parser = series_order)]
        order: usize,
        #[arg(long, default_value_t = census::DEFAULT_ORACLE_BOUND)]
        oracle_bound: u64,
        /// Perturb one ring structure constant (negative test).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

struct Output {
    body: String,
    ok: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Self { body, ok: true }
    }
}

fn class_output(c: &DEllipticClass, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => format!(
            "x={} y={}\n{}\n",
            to_compact_string(&c.x),
            to_compact_string(&c.y),
            serde_json::to_string(&c.as_chow)?
        ),
        Format::Json => serde_json::to_string(c)? + "\n",
        Format::Csv => format!("d,x,y\n{},{},{}\n", c.d, to_compact_string(&c.x), to_compact_string(&c.y)),
    })
}

fn cmd_class(d: u64, format: Format) -> Result<Output> {
    let c = delliptic::class_closed_form(d)?;
    let solved = delliptic::solve_class(d)?;
    if solved != c {
        return Ok(Output {
            body: format!("route disagreement at d={d}: solved {solved:?} closed {c:?}\n"),
            ok: false,
        });
    }
    class_output(&c, format).map(Output::ok)
}

fn cmd_table(d_max: u64, format: Format) -> Result<Output> {
    let rows: Vec<(DEllipticClass, bool)> = (1..=d_max)
        .into_par_iter()
        .map(|d| {
            let c = delliptic::class_closed_form(d)?;
            let agree = delliptic::solve_class(d)? == c;
            Ok((c, agree))
        })
        .collect::<Result<_>>()?;
    let ok = rows.iter().all(|(_, agree)| *agree);
    let mut body = String::new();
    match format {
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|(c, agree)| json!({"d": c.d, "x": to_fraction_string(&c.x), "y": to_fraction_string(&c.y), "routes_agree": agree})).collect();
            body = serde_json::to_string_pretty(&v)? + "\n";
        }
        Format::Csv => {
            body.push_str("d,x,y,routes_agree\n");
            for (c, agree) in &rows {
                writeln!(body, "{},{},{},{}", c.d, to_compact_string(&c.x), to_compact_string(&c.y), agree)?;
            }
        }
        Format::Text => {
            for (c, agree) in &rows {
                let flag = if *agree { "" } else { "  ROUTE MISMATCH" };
                writeln!(body, "d={} x={} y={}{flag}", c.d, to_compact_string(&c.x), to_compact_string(&c.y))?;
            }
        }
    }
    Ok(Output { body, ok })
}

fn cmd_a_table(d_max: u64, format: Format) -> Result<Output> {
    let rows = delliptic::enumerative_table(d_max)?;
    let ok = rows.iter().all(|r| r.routes_agree());
    let mut body = String::new();
    match format {
        Format::Json => body = serde_json::to_string_pretty(&rows)? + "\n",
        Format::Csv => {
            body.push_str("d,a,b\n");
            for r in &rows {
                if r.routes_agree() {
                    writeln!(body, "{},{},{}", r.d, to_compact_string(&r.a_closed), to_compact_string(&r.b))?;
                } else {
                    writeln!(body, "{},MISMATCH({} vs {}),{}", r.d, to_compact_string(&r.a_closed), to_compact_string(&r.a_inversion), to_compact_string(&r.b))?;
                }
            }
        }
        Format::Text => {
            for r in &rows {
                let flag = if r.routes_agree() { String::new() } else { format!("  MISMATCH inversion={}", to_compact_string(&r.a_inversion)) };
                writeln!(body, "d={} a={} b={}{flag}", r.d, to_compact_string(&r.a_closed), to_compact_string(&r.b))?;
            }
        }
    }
    Ok(Output { body, ok })
}

fn cmd_census(d: u64, kind: CoverKind, bound: u64, format: Format) -> Result<Output> {
    let mut reports: Vec<CensusReport> = Vec::new();
    if matches!(kind, CoverKind::TwoB | CoverKind::All) {
        reports.push(census::census_type_2b_with_bound(d, bound));
    }
    if matches!(kind, CoverKind::TwoC | CoverKind::All) {
        reports.push(census::census_type_2c(d));
    }
    if matches!(kind, CoverKind::ThreeC | CoverKind::All) {
        reports.push(census::census_type_3c(d));
    }
    let mut body = String::new();
    match format {
        Format::Json => body = serde_json::to_string_pretty(&reports)? + "\n",
        Format::Csv => {
            body.push_str("degree,type,params,configuration_count,multiplicity\n");
            for r in &reports {
                for e in &r.entries {
                    let params = serde_json::to_string(&e.params)?.replace('"', "'");
                    writeln!(body, "{},{},\"{}\",{},{}", r.degree, r.cover_type.label, params, to_compact_string(&e.configuration_count), to_compact_string(&e.multiplicity))?;
                }
            }
        }
        Format::Text => {
            for r in &reports {
                writeln!(body, "type {} at d={}: {} entries, total {}", r.cover_type.label, r.degree, r.entries.len(), to_compact_string(&r.total))?;
            }
        }
    }
    Ok(Output::ok(body))
}

fn cmd_qcheck(order: usize, format: Format) -> Result<Output> {
    let residual_zero = qseries::ramanujan_ode_residual(order)?.is_zero();
    let dec = delliptic::decompose_generating_series(order);
    let (p0, p1) = delliptic::compare_printed_forms(order)?;
    let names = ["1", "E2", "E4", "E2^2"];
    let fmt_combo = |c: &[dellip_core::Rational]| {
        c.iter()
            .zip(names)
            .map(|(ci, n)| format!("({})·{n}", to_compact_string(ci)))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    let mismatch = |m: &delliptic::PrintedFormCheck| match &m.first_mismatch {
        None => "matches".to_string(),
        Some((n, printed, actual)) => format!(
            "differs at q^{n}: printed {} vs actual {}",
            to_compact_string(printed),
            to_compact_string(actual)
        ),
    };
    let ok = residual_zero && dec.is_ok();
    let body = match format {
        Format::Json => {
            let v = json!({
                "order": order,
                "ramanujan_residual_zero": residual_zero,
                "delta0": dec.as_ref().ok().map(|d| d.delta0.iter().map(to_fraction_string).collect::<Vec<_>>()),
                "delta1": dec.as_ref().ok().map(|d| d.delta1.iter().map(to_fraction_string).collect::<Vec<_>>()),
                "decomposition_error": dec.as_ref().err().map(|e| e.to_string()),
                "printed_t0": mismatch(&p0),
                "printed_t1": mismatch(&p1),
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Text | Format::Csv => {
            let mut s = format!("order {order}\nramanujan ODE residual: {}\n", if residual_zero { "zero" } else { "NONZERO" });
            match &dec {
                Ok(d) => {
                    writeln!(s, "T0 = {}", fmt_combo(&d.delta0))?;
                    writeln!(s, "T1 = {}", fmt_combo(&d.delta1))?;
                }
                Err(e) => writeln!(s, "decomposition failed: {e}")?,
            }
            writeln!(s, "printed T0 [flagged]: {}", mismatch(&p0))?;
            writeln!(s, "printed T1 [flagged]: {}", mismatch(&p1))?;
            s
        }
    };
    Ok(Output { body, ok })
}

fn cmd_verify_all(config: VerifyConfig, format: Format) -> Result<Output> {
    let report = verify::run_all(&config);
    let ok = report.passed();
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&json!({"passed": ok, "suites": report.suites}))? + "\n",
        Format::Csv => {
            let mut s = String::from("suite,checks,passed,failures\n");
            for r in &report.suites {
                writeln!(s, "{},{},{},\"{}\"", r.name, r.checks, r.passed(), r.failures.join("; ").replace('"', "'"))?;
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &report.suites {
                writeln!(s, "{:<12} {} ({} checks)", r.name, if r.passed() { "PASS" } else { "FAIL" }, r.checks)?;
                for f in &r.failures {
                    writeln!(s, "    {f}")?;
                }
            }
            writeln!(s, "{}", if ok { "all suites passed" } else { "verification FAILED" })?;
            s
        }
    };
    Ok(Output { body, ok })
}

fn run(cli: Cli) -> Result<Output> {
    let format = cli.format;
    match cli.command {
        Command::Class { d } => cmd_class(d, format),
        Command::Table { d_max } => cmd_table(d_max, format),
        Command::ATable { d_max } => cmd_a_table(d_max, format),
        Command::Census { d, cover_type, oracle_bound } => cmd_census(d, cover_type, oracle_bound, format),
        Command::Qcheck { order } => cmd_qcheck(order, format),
        Command::VerifyAll { d_max, order, oracle_bound, inject_fault } => {
            let table = if inject_fault { verify::faulty_table() } else { Default::default() };
            cmd_verify_all(VerifyConfig { d_max, order, oracle_bound, table }, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let out_path = cli.out.clone();
    let output = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let written = match &out_path {
        Some(p) => fs::write(p, &output.body).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(output.body.as_bytes()).context("writing stdout"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    if output.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    }
}
