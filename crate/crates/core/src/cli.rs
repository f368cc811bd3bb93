//! Command-line front end. `main.rs` forwards to [`run`].

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::chevalley::{StructureTable, DEFAULT_SEED};
use crate::distsets::{auto_stage, build_stage, find_matched_pairs, find_singles, iops, r_class, CandidateSet, Stage};
use crate::error::Result;
use crate::involution::{build_involution, preset, RealForm, RealFormSpec, RootClass};
use crate::report::PropertyReport;
use crate::rootsystem::{CartanType, RootSystem};
use crate::verifier::{
    check_distinguished, check_realness, complex_algebra_set, run_property_suite, split_chevalley_set, SuiteContext,
    VerificationReport, SUITE_NAMES,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "distinguished", version, about = "Build and verify distinguished sets of real simple Lie algebras")]
struct Cli {
    /// Worker threads for the bracket scans (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify that a stage set is distinguished.
    Verify {
        #[command(flatten)]
        form: FormArgs,
        /// S0, S1, S2, S3, Sstar or auto.
        #[arg(long, default_value = "auto")]
        stage: String,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Leave the per-pair closure table out of the JSON report.
        #[arg(long)]
        summary: bool,
    },
    /// Run the full matrix of real forms and print a verdict table.
    Table1 {
        /// Comma-separated algebra labels to leave out, e.g. E7,E8.
        #[arg(long, value_delimiter = ',')]
        skip: Vec<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the property suites that apply to a real form.
    Props {
        #[command(flatten)]
        form: FormArgs,
        /// Run only these suites (comma-separated).
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print root classes, matched pairs, single roots and iops.
    Classify {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Export the algebra, involution and a stage set as JSON.
    Export {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value = "auto")]
        stage: String,
        /// Output path; stdout when absent.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct FormArgs {
    /// Root system label such as F4, B3 or B (with --rank).
    #[arg(long = "type")]
    type_label: String,
    #[arg(long)]
    rank: Option<usize>,
    /// compact, painted, painted:<node> or quasi-split.
    #[arg(long, default_value = "compact", conflicts_with = "spec")]
    preset: String,
    /// JSON file with an explicit real form spec.
    #[arg(long)]
    spec: Option<PathBuf>,
}

/// A fully resolved invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub cartan_type: CartanType,
    pub form: FormSource,
    pub stage: Option<Stage>,
    pub output: Option<PathBuf>,
    pub summary: bool,
    pub jobs: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub enum FormSource {
    Preset(String),
    Spec(RealFormSpec),
}

impl RunConfig {
    fn resolve(f: &FormArgs, stage: Option<&str>, output: Option<PathBuf>, summary: bool, cli: &Cli) -> Result<Self> {
        let cartan_type = CartanType::parse(&f.type_label, f.rank)?;
        let form = match &f.spec {
            Some(p) => FormSource::Spec(serde_json::from_str(&fs::read_to_string(p)?)?),
            None => FormSource::Preset(f.preset.clone()),
        };
        let stage = match stage {
            None => None,
            Some(s) if s.eq_ignore_ascii_case("auto") => None,
            Some(s) => Some(Stage::parse(s)?),
        };
        Ok(RunConfig { cartan_type, form, stage, output, summary, jobs: cli.jobs, seed: cli.seed })
    }

    pub fn build_form(&self) -> Result<RealForm> {
        let table = StructureTable::build(RootSystem::build(self.cartan_type));
        let spec = match &self.form {
            FormSource::Preset(p) => preset(&table, p)?,
            FormSource::Spec(s) => s.clone(),
        };
        build_involution(&table, &spec)
    }

    pub fn form_name(&self) -> String {
        match &self.form {
            FormSource::Preset(p) => p.clone(),
            FormSource::Spec(s) => s.preset.clone().unwrap_or_else(|| "custom".into()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        // A second call in the same process fails; the first pool stays in place.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Verify { form, stage, json, summary } => {
            cmd_verify(&RunConfig::resolve(form, Some(stage), json.clone(), *summary, cli)?, out)
        }
        Command::Table1 { skip, json } => cmd_table1(skip, json.as_deref(), out),
        Command::Props { form, suite, json } => {
            cmd_props(&RunConfig::resolve(form, None, json.clone(), false, cli)?, suite, out)
        }
        Command::Classify { form, json } => cmd_classify(&RunConfig::resolve(form, None, json.clone(), false, cli)?, out),
        Command::Export { form, stage, json } => {
            cmd_export(&RunConfig::resolve(form, Some(stage), json.clone(), false, cli)?, out)
        }
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let rf = cfg.build_form()?;
    let stage = cfg.stage.unwrap_or_else(|| auto_stage(&rf));
    let set = build_stage(&rf, stage)?;
    let report = check_distinguished(&rf.table, &set, rf.table.dim()).with_form(cfg.form_name());
    let real = check_realness(&report);
    print_verification(out, &report)?;
    if let Some(p) = &cfg.output {
        let r = if cfg.summary { report.clone().summarized() } else { report.clone() };
        write_json(p, &r)?;
    }
    Ok(if report.verdict && real { EXIT_PASS } else { EXIT_FAIL })
}

fn print_verification(out: &mut dyn Write, r: &VerificationReport) -> Result<()> {
    writeln!(
        out,
        "{} {} {}: {} elements, rank {}/{}, zero {}, proportional {}, failed {}, real {}",
        r.algebra,
        r.form.as_deref().unwrap_or(""),
        r.stage,
        r.size,
        r.spanning_rank,
        r.target_rank,
        r.counts.zero,
        r.counts.proportional,
        r.counts.failed,
        yes_no(r.all_real)
    )?;
    if let Some(f) = r.first_failure() {
        writeln!(out, "  closure fails: [{}, {}] is not a real multiple of a member", f.left, f.right)?;
    }
    if !r.generation_failures.is_empty() {
        writeln!(out, "  {} members never arise as a bracket", r.generation_failures.len())?;
    }
    writeln!(out, "verdict: {}", if r.verdict { "distinguished" } else { "not distinguished" })?;
    Ok(())
}

/// One line of the real-form matrix.
#[derive(Clone, Debug)]
pub struct Table1Row {
    pub label: &'static str,
    pub preset: &'static str,
    pub stage: Stage,
    pub kind: RowKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    RealForm,
    /// `{H_α, X_α}` for the split form.
    SplitChevalley,
    /// `S ∪ iS`, with `g` viewed as a real Lie algebra.
    ComplexAlgebra,
}

pub fn table1_rows() -> Vec<Table1Row> {
    let f = |label, preset, stage| Table1Row { label, preset, stage, kind: RowKind::RealForm };
    vec![
        f("A2", "compact", Stage::S0),
        f("A3", "compact", Stage::S0),
        f("D4", "compact", Stage::S0),
        f("E6", "compact", Stage::S0),
        f("E7", "compact", Stage::S0),
        f("E8", "compact", Stage::S0),
        f("B3", "compact", Stage::S1),
        f("B3", "painted", Stage::S1),
        f("C3", "compact", Stage::S1),
        f("C3", "painted", Stage::S1),
        f("A5", "quasi-split", Stage::S1),
        f("D5", "quasi-split", Stage::S1),
        f("F4", "compact", Stage::S2),
        f("E6", "quasi-split", Stage::S2),
        f("G2", "compact", Stage::SStar),
        Table1Row { label: "A2", preset: "split", stage: Stage::Custom, kind: RowKind::SplitChevalley },
        Table1Row { label: "A2", preset: "complex", stage: Stage::Custom, kind: RowKind::ComplexAlgebra },
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Result {
    pub algebra: String,
    pub form: String,
    pub stage: Stage,
    pub size: usize,
    pub target_rank: usize,
    pub spanning_rank: usize,
    pub all_real: bool,
    pub failed_pairs: u64,
    pub verdict: bool,
}

pub fn run_table1_row(row: &Table1Row) -> Result<(Table1Result, VerificationReport)> {
    let table = StructureTable::build(RootSystem::from_label(row.label, None)?);
    let rep = match row.kind {
        RowKind::RealForm => {
            // The involution may come with a re-signed basis, so check against its table.
            let rf = build_involution(&table, &preset(&table, row.preset)?)?;
            check_distinguished(&rf.table, &build_stage(&rf, row.stage)?, rf.table.dim())
        }
        RowKind::SplitChevalley => check_distinguished(&table, &split_chevalley_set(&table), table.dim()),
        RowKind::ComplexAlgebra => check_distinguished(&table, &complex_algebra_set(&table), 2 * table.dim()),
    };
    let rep = rep.with_form(row.preset).summarized();
    let target = rep.target_rank;
    let res = Table1Result {
        algebra: row.label.to_string(),
        form: row.preset.to_string(),
        stage: row.stage,
        size: rep.size,
        target_rank: target,
        spanning_rank: rep.spanning_rank,
        all_real: check_realness(&rep),
        failed_pairs: rep.counts.failed,
        verdict: rep.verdict,
    };
    Ok((res, rep))
}

pub fn cmd_table1(skip: &[String], json: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let rows: Vec<Table1Row> =
        table1_rows().into_iter().filter(|r| !skip.iter().any(|s| s.eq_ignore_ascii_case(r.label))).collect();
    writeln!(
        out,
        "{:<6} {:<12} {:<7} {:>6} {:>11} {:>6} {:>9}  {}",
        "type", "form", "stage", "size", "rank", "real", "time", "verdict"
    )?;
    let mut results = Vec::new();
    for row in &rows {
        let start = Instant::now();
        let (res, _) = run_table1_row(row)?;
        writeln!(
            out,
            "{:<6} {:<12} {:<7} {:>6} {:>11} {:>6} {:>8.2}s  {}",
            res.algebra,
            res.form,
            res.stage.to_string(),
            res.size,
            format!("{}/{}", res.spanning_rank, res.target_rank),
            yes_no(res.all_real),
            start.elapsed().as_secs_f64(),
            res.verdict
        )?;
        results.push(res);
    }
    if let Some(p) = json {
        write_json(p, &results)?;
    }
    Ok(if results.iter().all(|r| r.verdict && r.all_real) { EXIT_PASS } else { EXIT_FAIL })
}

pub fn cmd_props(cfg: &RunConfig, only: &[String], out: &mut dyn Write) -> Result<i32> {
    let rf = cfg.build_form()?;
    let ctx = SuiteContext::new(&rf, cfg.seed);
    let names: Vec<&str> = if only.is_empty() { SUITE_NAMES.to_vec() } else { only.iter().map(String::as_str).collect() };
    let mut reports: Vec<PropertyReport> = Vec::new();
    for n in names {
        let r = run_property_suite(n, &ctx)?;
        writeln!(out, "{}", r.summary_line())?;
        for w in r.failures.iter().take(3) {
            writeln!(out, "    {w}")?;
        }
        reports.push(r);
    }
    if let Some(p) = &cfg.output {
        write_json(p, &reports)?;
    }
    Ok(if reports.iter().all(PropertyReport::passed) { EXIT_PASS } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct Classification {
    algebra: String,
    form: String,
    roots: usize,
    imaginary_compact: usize,
    imaginary_noncompact: usize,
    complex: usize,
    classes: Vec<RootClass>,
    singles: Vec<usize>,
    matched_pairs: Vec<(usize, usize)>,
    iops: Vec<(usize, usize)>,
    iop_classes: usize,
}

pub fn cmd_classify(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let rf = cfg.build_form()?;
    let rs = rf.root_system();
    let classes: Vec<RootClass> = rs.roots().map(|r| rf.inv.classify_root(r)).collect();
    let count = |c: RootClass| classes.iter().filter(|&&x| x == c).count();
    let iop_list = iops(&rf);
    let mut distinct: Vec<_> = iop_list.iter().map(|i| r_class(rs, i.x, i.y)).collect();
    distinct.sort();
    distinct.dedup();
    let c = Classification {
        algebra: rs.cartan_type().to_string(),
        form: cfg.form_name(),
        roots: rs.len(),
        imaginary_compact: count(RootClass::CompactImaginary),
        imaginary_noncompact: count(RootClass::NoncompactImaginary),
        complex: count(RootClass::Complex),
        classes,
        singles: find_singles(&rf).iter().map(|r| r.idx()).collect(),
        matched_pairs: find_matched_pairs(&rf).iter().map(|p| (p.alpha.idx(), p.beta.idx())).collect(),
        iops: iop_list.iter().map(|i| (i.x.idx(), i.y.idx())).collect(),
        iop_classes: distinct.len(),
    };
    writeln!(out, "{} {}: {} roots", c.algebra, c.form, c.roots)?;
    writeln!(
        out,
        "  {} imaginary ({} compact, {} noncompact), {} complex",
        c.imaginary_compact + c.imaginary_noncompact,
        c.imaginary_compact,
        c.imaginary_noncompact,
        c.complex
    )?;
    writeln!(out, "  {} single roots, {} matched pairs", c.singles.len(), c.matched_pairs.len())?;
    writeln!(out, "  {} iops in {} classes", c.iops.len(), c.iop_classes)?;
    if let Some(p) = &cfg.output {
        write_json(p, &c)?;
    }
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct Export<'a> {
    root_system: crate::rootsystem::RootSystemJson,
    involution: crate::involution::InvolutionJson,
    structure_constants: Vec<crate::chevalley::CEntry>,
    set: &'a CandidateSet,
}

pub fn cmd_export(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let rf = cfg.build_form()?;
    let rs = rf.root_system();
    let stage = cfg.stage.unwrap_or_else(|| auto_stage(&rf));
    let set = build_stage(&rf, stage)?;
    let e = Export {
        root_system: rs.to_json(),
        involution: rf.inv.to_json(rs),
        structure_constants: rf.table.c_table_json(),
        set: &set,
    };
    match &cfg.output {
        Some(p) => write_json(p, &e)?,
        None => {
            serde_json::to_writer_pretty(&mut *out, &e)?;
            writeln!(out)?;
        }
    }
    Ok(EXIT_PASS)
}
