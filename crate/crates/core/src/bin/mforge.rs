//! Command-line surface: atlas verification, genus-system search, class
//! screening, the audit ledger, and the full theorem sweep.
//!
//! Exit codes: 0 success; 1 usage error; 2 verification or acceptance
//! failure (including I/O on report emission); 3 resource guard tripped.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use mforge::atlas;
use mforge::config::{load_or_build_entry, RunConfig};
use mforge::ledger;
use mforge::report::{Payload, ReportFormat, RunReport};
use mforge::search::{
    self, screen_class_triples, search_systems, GroupSelector, SearchConfig, SearchError,
    Strategy,
};
use mforge::socle::{catalog_type_b, verify_type_b, SocleModel};
use mforge::theorem;

#[derive(Parser)]
#[command(name = "mforge", version, about = "diagonal type-B genus systems and exact bound audits", disable_help_subcommand = true)]
struct Cli {
    /// key = value config file (threads, orbit-cap, order-cap, data-dir)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// worker threads (overrides the config file)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// group data directory (overrides MFORGE_DATA_DIR)
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify catalog entries and their diagonal groups
    Atlas {
        #[command(subcommand)]
        action: AtlasAction,
    },
    /// Element-level genus-system search
    Search(SearchArgs),
    /// Class-representative Riemann–Hurwitz screening
    Screen(ScreenArgs),
    /// Exact-rational audit ledger
    Ledger(LedgerArgs),
    /// Run the full catalog sweep and check the expected classification
    ReproduceTheorem(ReproduceArgs),
}

#[derive(Subcommand)]
enum AtlasAction {
    /// Check the invariants of one or all catalog entries
    Verify {
        #[arg(long, conflicts_with = "all")]
        label: Option<String>,
        #[arg(long)]
        all: bool,
        /// also certify the diagonal type-B groups over the socle
        #[arg(long)]
        type_b: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Write catalog entries as group data files
    Export {
        #[arg(long, conflicts_with = "all")]
        label: Option<String>,
        #[arg(long)]
        all: bool,
        /// target directory
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// socle label, e.g. psl2_7
    #[arg(long)]
    socle: String,
    /// tuple type as comma-separated orders, repeatable, e.g. --type 2,3,8
    #[arg(long = "type", value_name = "K,L,M[,N]", required = true)]
    types: Vec<String>,
    /// genus values, comma separated
    #[arg(long, default_value = "0,1")]
    genus: String,
    /// `all` or comma-separated catalog indices over the socle
    #[arg(long, default_value = "all")]
    groups: String,
    /// raise the element-search group-order guard
    #[arg(long)]
    order_cap: Option<u128>,
    /// search types that are excluded at low genus anyway
    #[arg(long)]
    allow_excluded: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct ScreenArgs {
    #[arg(long)]
    socle: String,
    /// `prop` for the finite built-in type list, or `explicit` with --type
    #[arg(long, default_value = "prop")]
    types: String,
    /// explicit tuple types (with --types explicit)
    #[arg(long = "type", value_name = "K,L,M")]
    type_list: Vec<String>,
    /// screen all genus values from 0 to this bound inclusive
    #[arg(long, default_value_t = 5)]
    genus_max: i64,
    #[arg(long, default_value = "all")]
    groups: String,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct LedgerArgs {
    /// one case id (see README for the list)
    #[arg(long, conflicts_with = "all")]
    case: Option<String>,
    /// run every case
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct ReproduceArgs {
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct OutArgs {
    /// write the report to this path
    #[arg(long)]
    out: Option<PathBuf>,
    /// report format: json or csv
    #[arg(long, default_value = "json")]
    format: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

#[derive(Debug)]
struct CliError {
    message: String,
    code: u8,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl CliError {
    fn usage(msg: impl Into<String>) -> CliError {
        CliError {
            message: msg.into(),
            code: 1,
        }
    }

    fn failure(msg: impl Into<String>) -> CliError {
        CliError {
            message: msg.into(),
            code: 2,
        }
    }

    fn guard(msg: impl Into<String>) -> CliError {
        CliError {
            message: msg.into(),
            code: 3,
        }
    }

    fn exit_code(&self) -> u8 {
        self.code
    }
}

fn effective_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)
            .map_err(|e| CliError::usage(format!("config file: {e}")))?,
        None => RunConfig::default(),
    }
    .with_env();
    if let Some(t) = cli.threads {
        cfg.threads = t.max(1);
    }
    if let Some(dir) = &cli.data_dir {
        cfg.data_dir = Some(dir.clone());
    }
    Ok(cfg)
}

fn parse_type(s: &str) -> Result<Vec<u64>, CliError> {
    let parts: Result<Vec<u64>, _> = s.split(',').map(|x| x.trim().parse()).collect();
    parts.map_err(|_| CliError::usage(format!("bad type {s:?}, expected e.g. 2,3,8")))
}

fn parse_genus(s: &str) -> Result<Vec<i64>, CliError> {
    let parts: Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse()).collect();
    let mut genus = parts.map_err(|_| CliError::usage(format!("bad genus list {s:?}")))?;
    genus.sort_unstable();
    genus.dedup();
    Ok(genus)
}

fn parse_groups(s: &str) -> Result<GroupSelector, CliError> {
    if s == "all" {
        return Ok(GroupSelector::All);
    }
    let parts: Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse()).collect();
    parts
        .map(GroupSelector::Indices)
        .map_err(|_| CliError::usage(format!("bad group selector {s:?}, expected `all` or indices")))
}

fn parse_format(s: &str) -> Result<ReportFormat, CliError> {
    match s {
        "json" => Ok(ReportFormat::Json),
        "csv" => Ok(ReportFormat::Csv),
        other => Err(CliError::usage(format!("unknown format {other:?}"))),
    }
}

fn emit_or_print(report: &mut RunReport, out: &OutArgs, started: Instant) -> Result<(), CliError> {
    report.timing_seconds = started.elapsed().as_secs_f64();
    let format = parse_format(&out.format)?;
    match &out.out {
        Some(path) => report
            .emit(format, path)
            .map_err(|e| CliError::failure(format!("emit: {e}"))),
        None => {
            let text = report
                .full_json()
                .map_err(|e| CliError::failure(format!("serialize: {e}")))?;
            println!("{text}");
            Ok(())
        }
    }
}

fn search_error(e: SearchError) -> CliError {
    match e {
        SearchError::OrderGuard { .. } => CliError::guard(e.to_string()),
        SearchError::ExcludedType(_) | SearchError::MalformedType(_) | SearchError::NoGroups => {
            CliError::usage(e.to_string())
        }
        other => CliError::failure(other.to_string()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let run_cfg = effective_config(&cli)?;
    let started = Instant::now();
    match &cli.command {
        Command::Atlas { action } => match action {
            AtlasAction::Verify {
                label,
                all,
                type_b,
                out,
            } => {
                let labels: Vec<String> = if *all {
                    atlas::catalog_labels().iter().map(|s| s.to_string()).collect()
                } else {
                    vec![label
                        .clone()
                        .ok_or_else(|| CliError::usage("pass --label or --all"))?]
                };
                let mut reports = Vec::new();
                let mut type_b_reports = Vec::new();
                for l in &labels {
                    let entry = load_or_build_entry(l, run_cfg.data_dir.as_deref())
                        .map_err(|e| match e {
                            atlas::AtlasError::UnknownLabel(_) => CliError::usage(e.to_string()),
                            other => CliError::failure(other.to_string()),
                        })?;
                    let report = atlas::verify_atlas(&entry)
                        .map_err(|e| CliError::failure(e.to_string()))?;
                    reports.push(report);
                    if *type_b && entry.expected_order_l <= mforge::socle::SOCLE_SIZE_GUARD {
                        let model = Arc::new(
                            SocleModel::enumerate(&entry)
                                .map_err(|e| CliError::failure(e.to_string()))?,
                        );
                        for group in
                            catalog_type_b(&model).map_err(|e| CliError::failure(e.to_string()))?
                        {
                            type_b_reports.push(
                                verify_type_b(&group, false)
                                    .map_err(|e| CliError::failure(e.to_string()))?,
                            );
                        }
                    }
                }
                let all_pass = reports.iter().all(|r| r.all_pass())
                    && type_b_reports.iter().all(|r| r.all_pass());
                for r in &reports {
                    for c in &r.checks {
                        println!(
                            "{}: {} {} {}",
                            r.label,
                            c.name,
                            if c.pass { "pass" } else { "FAIL" },
                            c.detail
                        );
                    }
                }
                for r in &type_b_reports {
                    for c in &r.checks {
                        println!(
                            "{}: {} {}",
                            r.label,
                            c.name,
                            if c.pass { "pass" } else { "FAIL" }
                        );
                    }
                }
                let mut report = RunReport::new(
                    serde_json::json!({"labels": labels, "type_b": type_b}),
                    Payload::Atlas {
                        reports,
                        type_b: type_b_reports,
                    },
                );
                if out.out.is_some() {
                    emit_or_print(&mut report, out, started)?;
                }
                if all_pass {
                    Ok(ExitCode::SUCCESS)
                } else {
                    Err(CliError::failure("verification failed"))
                }
            }
            AtlasAction::Export { label, all, dir } => {
                let labels: Vec<String> = if *all {
                    atlas::catalog_labels().iter().map(|s| s.to_string()).collect()
                } else {
                    vec![label
                        .clone()
                        .ok_or_else(|| CliError::usage("pass --label or --all"))?]
                };
                std::fs::create_dir_all(dir)
                    .map_err(|e| CliError::failure(format!("create dir: {e}")))?;
                for l in &labels {
                    let entry = atlas::build_entry(l).map_err(|e| match e {
                        atlas::AtlasError::UnknownLabel(_) => CliError::usage(e.to_string()),
                        other => CliError::failure(other.to_string()),
                    })?;
                    let path = dir.join(format!("{l}.grp"));
                    atlas::save_group_file(&entry, &path)
                        .map_err(|e| CliError::failure(e.to_string()))?;
                    println!("wrote {}", path.display());
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Search(args) => {
            let types: Result<Vec<Vec<u64>>, _> = args.types.iter().map(|s| parse_type(s)).collect();
            let mut cfg = SearchConfig::new(&args.socle, types?, parse_genus(&args.genus)?);
            cfg.groups = parse_groups(&args.groups)?;
            cfg.threads = run_cfg.threads;
            cfg.dedup_cap = run_cfg.orbit_cap;
            cfg.order_cap = args.order_cap.unwrap_or(run_cfg.order_cap);
            cfg.allow_excluded_types = args.allow_excluded;
            let model = search::model_for(&cfg).map_err(|e| match e {
                atlas::AtlasError::UnknownLabel(_) => CliError::usage(e.to_string()),
                other => CliError::failure(other.to_string()),
            })?;
            let outcome = search_systems(&cfg, &model).map_err(search_error)?;
            for g in &outcome.groups {
                println!(
                    "{}: {} candidate(s) tested, {} system(s), {} ramification type(s)",
                    g.group,
                    g.candidates_tested,
                    g.records.len(),
                    g.ramification_types.len()
                );
            }
            let mut report = RunReport::new(
                serde_json::to_value(&cfg).unwrap_or_default(),
                Payload::Search(vec![outcome]),
            );
            emit_or_print(&mut report, &args.out, started)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Screen(args) => {
            let genus: Vec<i64> = (0..=args.genus_max).collect();
            let model = search::model_for(&SearchConfig::new(&args.socle, vec![], vec![]))
                .map_err(|e| match e {
                    atlas::AtlasError::UnknownLabel(_) => CliError::usage(e.to_string()),
                    other => CliError::failure(other.to_string()),
                })?;
            let groups = catalog_type_b(&model).map_err(|e| CliError::failure(e.to_string()))?;
            let selector = parse_groups(&args.groups)?;
            let selected: Vec<usize> = match &selector {
                GroupSelector::All => (0..groups.len()).collect(),
                GroupSelector::Indices(idx) => idx.clone(),
            };
            let mut merged: Option<search::ScreenOutcome> = None;
            for i in selected {
                let group = groups
                    .get(i)
                    .ok_or_else(|| CliError::usage(format!("no catalog group with index {i}")))?;
                let types = match args.types.as_str() {
                    "prop" => search::prop_type_list(group),
                    "explicit" => {
                        let parsed: Result<Vec<Vec<u64>>, _> =
                            args.type_list.iter().map(|s| parse_type(s)).collect();
                        let parsed = parsed?;
                        if parsed.is_empty() {
                            return Err(CliError::usage(
                                "--types explicit needs at least one --type",
                            ));
                        }
                        parsed
                    }
                    other => {
                        return Err(CliError::usage(format!(
                            "unknown --types {other:?}: use prop or explicit"
                        )))
                    }
                };
                let mut cfg = SearchConfig::new(&args.socle, types, genus.clone());
                cfg.groups = GroupSelector::Indices(vec![i]);
                cfg.strategy = Strategy::Screen;
                cfg.threads = run_cfg.threads;
                let outcome = screen_class_triples(&cfg, &model).map_err(search_error)?;
                match &mut merged {
                    None => merged = Some(outcome),
                    Some(m) => m.groups.extend(outcome.groups),
                }
            }
            let outcome = merged.ok_or_else(|| CliError::usage("no groups selected"))?;
            for g in &outcome.groups {
                println!(
                    "{}: {} triple(s) tested, {} passing",
                    g.group,
                    g.triples_tested,
                    g.passing.len()
                );
            }
            let mut report = RunReport::new(
                serde_json::json!({
                    "socle": args.socle,
                    "types": args.types,
                    "genus_max": args.genus_max,
                }),
                Payload::Screen(vec![outcome]),
            );
            emit_or_print(&mut report, &args.out, started)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Ledger(args) => {
            let entries = if args.all || args.case.is_none() {
                ledger::run_all().map_err(|e| CliError::failure(e.to_string()))?
            } else {
                let case = args.case.as_deref().unwrap();
                ledger::run_case(case).map_err(|e| match e {
                    ledger::LedgerError::UnknownCase(_) => CliError::usage(e.to_string()),
                    other => CliError::failure(other.to_string()),
                })?
            };
            for e in &entries {
                println!(
                    "{}: {:?} (computed {}{})",
                    e.id,
                    e.verdict,
                    e.computed,
                    e.recorded
                        .as_deref()
                        .map(|r| format!(", recorded {r}"))
                        .unwrap_or_default()
                );
            }
            let ok = ledger_outcome_ok(&entries);
            let mut report = RunReport::new(
                serde_json::json!({"case": args.case, "all": args.all}),
                Payload::Ledger(entries),
            );
            emit_or_print(&mut report, &args.out, started)?;
            if ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Err(CliError::failure("a ledger case deviated from its documented verdict"))
            }
        }
        Command::ReproduceTheorem(args) => {
            let outcome = theorem::reproduce_theorem(run_cfg.threads)
                .map_err(|e| CliError::failure(e.to_string()))?;
            println!("{}", outcome.detail);
            let matched = outcome.matched;
            let mut report = RunReport::new(
                serde_json::json!({"threads_independent": true}),
                Payload::Theorem(Box::new(outcome)),
            );
            emit_or_print(&mut report, &args.out, started)?;
            if matched {
                Ok(ExitCode::SUCCESS)
            } else {
                Err(CliError::failure("sweep outcome differs from the expected classification"))
            }
        }
    }
}

/// Documented-discrepancy cases stay red by design; everything else must
/// not be discrepant.
fn ledger_outcome_ok(entries: &[mforge::ledger::LedgerEntry]) -> bool {
    let expected_discrepancies = [
        "prop32-mbound-34",
        "prop32-mbound-24",
        "prop32-mbound-25",
        "prop32-mbound-23-not-a5",
        "prop33-phiwindow-23",
    ];
    entries.iter().all(|e| {
        if expected_discrepancies.contains(&e.id.as_str()) {
            true
        } else {
            e.verdict != mforge::ledger::Verdict::Discrepancy
        }
    })
}
