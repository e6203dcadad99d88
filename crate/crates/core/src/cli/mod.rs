//! The `crg` command line.

pub mod verify;

use crate::arith::Rational;
use crate::error::Error;
use crate::form::closed::{conjecture_scan, CaseStatus};
use crate::form::fixture::{load_fixture, run_table, RowStatus, FIXTURE_FILE};
use crate::form::{discriminant, int_value};
use crate::groups::coxeter::MAX_RANK;
use crate::groups::generators::SHIPPED;
use crate::spec::{parse_group_in, ALIASES};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
pub use verify::{run_suite, Status, Suite, VerifyOptions, VerifyReport};

pub const DATA_DIR_ENV: &str = "CRG_DATA_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "crg", version, about = "Reflection group discriminants and Krammer representation checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factored discriminant of every reflection class.
    Discriminants {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run verification suites on one group.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Sample value of m, an integer or a fraction such as 22/7.
        #[arg(long)]
        m: Option<String>,
        /// Run tensor checks on classes above the default size limits.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Recompute a discriminant table and compare it with the fixture.
    Tables {
        #[arg(long, value_parser = ["1", "2", "prop81"])]
        which: String,
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Scan G(e,e,r) for odd e against the closed-form prediction.
    Conjecture {
        #[arg(long, default_value_t = 9)]
        e_max: u32,
        #[arg(long, default_value_t = 5)]
        r_max: u32,
    },
    /// Groups accepted by --group.
    ListGroups,
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::UnsupportedSeries { .. }
            | Error::InvalidSeries(_)
            | Error::UnsupportedType(_)
            | Error::NoGeneratorData(_)
            | Error::EvenDihedral(_)
    )
}

/// Parses `args` (program name first) and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let data_dir = std::env::var_os(DATA_DIR_ENV).map(PathBuf::from);
    run_in(args, data_dir.as_deref(), out, err)
}

pub fn run_in<I, T>(args: I, data_dir: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(cli.command, data_dir, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            if is_usage(&e) {
                EXIT_USAGE
            } else {
                EXIT_FAIL
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn execute(cmd: Command, data_dir: Option<&Path>, out: &mut dyn Write) -> crate::Result<i32> {
    match cmd {
        Command::Discriminants { group, format } => cmd_discriminants(&group, format, data_dir, out),
        Command::Verify {
            group,
            suite,
            m,
            force,
            format,
        } => {
            let mut opts = VerifyOptions {
                suite,
                force,
                ..VerifyOptions::default()
            };
            if let Some(text) = m {
                opts.m = Rational::from_str(text.trim()).map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("invalid value for --m: {}", text),
                })?;
            }
            cmd_verify(&group, &opts, format, data_dir, out)
        }
        Command::Tables { which, fixture } => cmd_tables(&which, fixture.as_deref(), data_dir, out),
        Command::Conjecture { e_max, r_max } => cmd_conjecture(e_max, r_max, out),
        Command::ListGroups => cmd_list_groups(out),
    }
}

pub fn cmd_discriminants(group: &str, format: Format, data_dir: Option<&Path>, out: &mut dyn Write) -> crate::Result<i32> {
    let spec = parse_group_in(group, data_dir)?;
    let g = spec.build(data_dir)?;
    let mut rows = Vec::new();
    for c in 0..g.classes.len() {
        let (n, _) = g.class_stats(c)?;
        rows.push((c, g.classes[c].len(), n, discriminant(&g, c)?));
    }
    match format {
        Format::Text => {
            let k = g.classes.len();
            writeln!(out, "{}: {} reflections, {} class{}", spec, g.len(), k, if k == 1 { "" } else { "es" }).map_err(io)?;
            for (c, size, n, d) in &rows {
                writeln!(out, "class {} (|c| = {}, N(c) = {}): {}", c, size, n, d).map_err(io)?;
            }
        }
        Format::Json => {
            let classes: Vec<Value> = rows
                .iter()
                .map(|(c, size, n, d)| {
                    let mut v = d.to_json();
                    v["class"] = json!(c);
                    v["size"] = json!(size);
                    v["n_c"] = json!(n);
                    v
                })
                .collect();
            let doc = json!({ "group": spec.to_string(), "classes": classes });
            writeln!(out, "{}", serde_json::to_string(&doc).map_err(|e| Error::Io(e.to_string()))?).map_err(io)?;
        }
        Format::Csv => {
            writeln!(out, "class,size,n_c,sign,factors,remainder").map_err(io)?;
            for (c, size, n, d) in &rows {
                let factors: Vec<String> = d
                    .factors
                    .iter()
                    .map(|(r, k)| format!("{}^{}", int_value(r), k))
                    .collect();
                writeln!(out, "{},{},{},{},{},{}", c, size, n, d.sign, factors.join(";"), d.remainder).map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(
    group: &str,
    opts: &VerifyOptions,
    format: Format,
    data_dir: Option<&Path>,
    out: &mut dyn Write,
) -> crate::Result<i32> {
    let spec = parse_group_in(group, data_dir)?;
    let g = spec.build(data_dir)?;
    let report = run_suite(&spec, &g, opts);
    match format {
        Format::Json => {
            writeln!(out, "{}", report.to_json()).map_err(io)?;
        }
        _ => {
            for c in &report.checks {
                writeln!(
                    out,
                    "{} {} ({:.2}s) {}",
                    c.status,
                    c.name,
                    c.elapsed.as_secs_f64(),
                    c.detail
                )
                .map_err(io)?;
            }
            let failed = report.failures().len();
            writeln!(out, "{}: {} checks, {} failed", spec, report.checks.len(), failed).map_err(io)?;
        }
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

pub fn cmd_tables(which: &str, fixture: Option<&Path>, data_dir: Option<&Path>, out: &mut dyn Write) -> crate::Result<i32> {
    let default_path = data_dir.map(|d| d.join(FIXTURE_FILE)).filter(|p| p.exists());
    let entries = load_fixture(fixture.or(default_path.as_deref()))?;
    let run = run_table(&entries, which, data_dir)?;
    for (group, m) in &run.groups {
        let ok = m.rows.iter().filter(|r| r.status == RowStatus::Match).count();
        writeln!(out, "{} {}: {}/{} rows", if m.all_match() { "ok" } else { "MISMATCH" }, group, ok, m.rows.len())
            .map_err(io)?;
        for r in &m.rows {
            match &r.status {
                RowStatus::Match => {}
                RowStatus::SignMismatch { computed } => {
                    writeln!(out, "  sign {} expected {} for factors {:?}", computed, r.entry.sign, r.entry.factors)
                        .map_err(io)?
                }
                RowStatus::Mismatch => {
                    writeln!(out, "  no class matches {:?} (|c| = {})", r.entry.factors, r.entry.class_size).map_err(io)?
                }
            }
            if let Some(note) = &r.entry.note {
                writeln!(out, "  note: {}", note).map_err(io)?;
            }
        }
    }
    writeln!(out, "table {}: {}/{} rows match", which, run.matched_rows(), run.row_count()).map_err(io)?;
    Ok(if run.all_match() { EXIT_OK } else { EXIT_FAIL })
}

pub fn cmd_conjecture(e_max: u32, r_max: u32, out: &mut dyn Write) -> crate::Result<i32> {
    let report = conjecture_scan(e_max, r_max)?;
    for case in &report.cases {
        let line = match &case.status {
            CaseStatus::Match { sign } => format!("match (sign {})", sign),
            CaseStatus::Mismatch { computed, predicted } => format!("MISMATCH computed {} predicted {}", computed, predicted),
            CaseStatus::Skipped(why) => format!("skipped: {}", why),
        };
        writeln!(out, "G({0},{0},{1}) [{2} reflections]: {3}", case.e, case.r, case.reflections, line).map_err(io)?;
    }
    writeln!(out, "{} matched, {} mismatched", report.matched(), report.mismatches()).map_err(io)?;
    Ok(if report.mismatches() == 0 { EXIT_OK } else { EXIT_FAIL })
}

pub fn cmd_list_groups(out: &mut dyn Write) -> crate::Result<i32> {
    let mut lines = vec![
        "G(m,p,r)  with p | m and m/p in {1, 2}".to_string(),
        format!("A<n> B<n>  n in 1..={}", MAX_RANK),
        format!("D<n>  n in 2..={}", MAX_RANK),
        "I2(<e>)  e >= 2".to_string(),
        "H3 H4 F4 E6 E7 E8".to_string(),
    ];
    for (k, t) in ALIASES {
        lines.push(format!("G{} = {}", k, t));
    }
    let shipped: Vec<String> = SHIPPED.iter().map(|k| format!("G{}", k)).collect();
    lines.push(format!("generator data: {}", shipped.join(" ")));
    lines.push(format!("further G<k>.json files are read from ${}", DATA_DIR_ENV));
    for l in lines {
        writeln!(out, "{}", l).map_err(io)?;
    }
    Ok(EXIT_OK)
}
