use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fs;
use std::hash::{Hash, Hasher};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use classpower::catalogue::{build_catalogue, find_entry, m11_table, CatalogueEntry, Fact};
use classpower::chartable::{
    compute_character_table, DixonOptions, DEFAULT_SEED, IMPORTED_TOLERANCE,
};
use classpower::criteria::{
    render, render_census, scan_group, scan_table, AnalyzedGroup, ConjectureCensus,
    CriterionReport, Format, ScanOptions, ScanSummary,
};
use classpower::group::DEFAULT_CAP;
use classpower::group_file::GroupSource;
use classpower::{
    CharacterTable, ClassDecomposition, FiniteGroup, Perm, StructureConstants, TableError,
};

const CACHE_ENV: &str = "CLASSPOWER_CACHE_DIR";
const CATALOGUE_PREFIX: &str = "catalogue:";
/// Scan depth for small groups; larger ones and imported tables use
/// `DEEP_SCAN_MAX_N`.
const SMALL_GROUP_MAX_N: u32 = 8;
const DEEP_SCAN_MAX_N: u32 = 6;
const SMALL_GROUP_ORDER: usize = 60;

#[derive(Parser)]
#[command(
    name = "classpower",
    version,
    about = "Powers of conjugacy classes in small finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan one group or character table and verify every hit.
    Analyze(AnalyzeArgs),
    /// Compute and validate a character table.
    Chartable(ChartableArgs),
    /// Run the whole catalogue with oracle/criterion reconciliation.
    Suite(SuiteArgs),
    /// Write a group in the group-input JSON format.
    ExportGroup(ExportArgs),
}

#[derive(Args)]
struct Common {
    /// Classes scanned up to K^max_n.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=16))]
    max_n: Option<u32>,
    /// Equality tolerance for character values.
    #[arg(long, value_parser = parse_tolerance)]
    tolerance: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Report path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// `catalogue:NAME` or a group JSON file.
    #[arg(long, conflicts_with = "table", required_unless_present = "table")]
    group: Option<String>,
    /// Character table JSON file; character criteria only.
    #[arg(long)]
    table: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ChartableArgs {
    #[arg(long)]
    group: String,
    /// Compare with an imported table up to row order.
    #[arg(long)]
    verify_against: Option<PathBuf>,
    #[arg(long, value_parser = parse_tolerance)]
    tolerance: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    /// `conjectures` for the per-group census, or a comma-separated list of
    /// entry names (`M11` selects the imported table).
    #[arg(long)]
    only: Option<String>,
    /// Extra expected facts, a JSON object from entry name to fact list.
    #[arg(long)]
    facts: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Text => Format::Text,
        }
    }
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t <= 1e-3 {
        Ok(t)
    } else {
        Err(format!("tolerance must lie in (0, 1e-3], got {t}"))
    }
}

enum Status {
    Clean,
    Finding,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Chartable(args) => chartable(args),
        Command::Suite(args) => suite(args),
        Command::ExportGroup(args) => export_group(args),
    };
    match result {
        Ok(Status::Clean) => ExitCode::SUCCESS,
        Ok(Status::Finding) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn analyze(args: AnalyzeArgs) -> Result<Status> {
    let common = &args.common;
    let reports = if let Some(path) = &args.table {
        let table = match CharacterTable::import(path, common.tolerance) {
            Ok(t) => t,
            Err(e @ TableError::ValidationFailed(_)) => {
                eprintln!("{}: {e}", path.display());
                return Ok(Status::Finding);
            }
            Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
        };
        let options = scan_options(common.max_n.unwrap_or(DEEP_SCAN_MAX_N));
        scan_table(&table, &options)?
    } else {
        let input = args
            .group
            .as_deref()
            .expect("clap requires --group or --table");
        let group = resolve_group(input)?;
        let max_n = common.max_n.unwrap_or_else(|| default_max_n(group.order()));
        let ag = AnalyzedGroup::new(group, dixon_options(common.seed, common.tolerance))?;
        scan_group(&ag, &scan_options(max_n))?
    };
    emit_reports(&reports, common)
}

fn chartable(args: ChartableArgs) -> Result<Status> {
    let group = resolve_group(&args.group)?;
    let classes = ClassDecomposition::new(&group);
    let sc = StructureConstants::compute(&group, &classes);
    let table = match compute_character_table(
        &group,
        &classes,
        &sc,
        dixon_options(args.seed, args.tolerance),
    ) {
        Ok(t) => t,
        Err(e @ TableError::ValidationFailed(_)) => {
            eprintln!("{}: {e}", group.name());
            return Ok(Status::Finding);
        }
        Err(e) => return Err(e.into()),
    };
    write_output(args.out.as_deref(), &table.to_json())?;
    let Some(path) = args.verify_against else {
        return Ok(Status::Clean);
    };
    let other = match CharacterTable::import(&path, args.tolerance) {
        Ok(t) => t,
        Err(e @ TableError::ValidationFailed(_)) => {
            eprintln!("{}: {e}", path.display());
            return Ok(Status::Finding);
        }
        Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
    };
    let tol = args.tolerance.unwrap_or(IMPORTED_TOLERANCE);
    match table.matches_up_to_row_permutation(&other, tol) {
        Ok(()) => {
            eprintln!("{}: matches {}", group.name(), path.display());
            Ok(Status::Clean)
        }
        Err(why) => {
            eprintln!("{}: differs from {}: {why}", group.name(), path.display());
            Ok(Status::Finding)
        }
    }
}

fn suite(args: SuiteArgs) -> Result<Status> {
    let common = &args.common;
    let census_only = args.only.as_deref() == Some("conjectures");
    let selected: Option<Vec<String>> = args
        .only
        .as_deref()
        .filter(|_| !census_only)
        .map(|list| list.split(',').map(|s| s.trim().to_string()).collect());
    let wanted = |name: &str| {
        selected
            .as_ref()
            .is_none_or(|names| names.iter().any(|n| n == name))
    };

    let mut entries: Vec<CatalogueEntry> = build_catalogue()
        .into_iter()
        .filter(|e| wanted(&e.name))
        .collect();
    if let Some(names) = &selected {
        for name in names {
            if name != "M11" && !entries.iter().any(|e| &e.name == name) {
                bail!("no catalogue entry named {name:?}");
            }
        }
    }
    if let Some(path) = &args.facts {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let extra: BTreeMap<String, Vec<Fact>> =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        for (name, facts) in extra {
            match entries.iter_mut().find(|e| e.name == name) {
                Some(entry) => entry.expected_facts.extend(facts),
                None if wanted(&name) => bail!("facts given for unknown entry {name:?}"),
                None => {}
            }
        }
    }

    // every fixture is checked before any scan runs
    let mut groups = Vec::with_capacity(entries.len());
    for entry in &entries {
        let group = build_entry(entry)?;
        for r in entry.check_facts(&group)? {
            if !r.holds {
                eprintln!(
                    "fixture failure in entry {}: {:?} ({})",
                    entry.name, r.fact, r.details
                );
                return Ok(Status::Finding);
            }
        }
        groups.push(group);
    }

    let mut reports = Vec::new();
    let mut census = Vec::new();
    for group in groups {
        let max_n = common.max_n.unwrap_or_else(|| default_max_n(group.order()));
        let ag = AnalyzedGroup::new(group, dixon_options(common.seed, common.tolerance))?;
        let group_reports = scan_group(&ag, &scan_options(max_n))?;
        census.push(ConjectureCensus::of(
            ag.name(),
            ag.table.is_nonabelian_simple(),
            &group_reports,
        ));
        reports.extend(group_reports);
    }
    if wanted("M11") {
        let mut table = m11_table()?;
        if let Some(t) = common.tolerance {
            table.tolerance = t;
        }
        let table_reports = scan_table(
            &table,
            &scan_options(common.max_n.unwrap_or(DEEP_SCAN_MAX_N)),
        )?;
        census.push(ConjectureCensus::of(
            &table.name,
            table.is_nonabelian_simple(),
            &table_reports,
        ));
        reports.extend(table_reports);
    }

    if census_only {
        write_output(
            common.out.as_deref(),
            &render_census(&census, common.format.into()),
        )?;
        let clean =
            census.iter().all(ConjectureCensus::holds) && ScanSummary::of(&reports).is_clean();
        return Ok(if clean {
            Status::Clean
        } else {
            Status::Finding
        });
    }
    emit_reports(&reports, common)
}

fn export_group(args: ExportArgs) -> Result<Status> {
    let source = if let Some(name) = args.group.strip_prefix(CATALOGUE_PREFIX) {
        find_entry(name)
            .with_context(|| format!("no catalogue entry named {name:?}"))?
            .source
    } else {
        GroupSource::load(Path::new(&args.group))?
    };
    write_output(args.out.as_deref(), &source.to_json())?;
    Ok(Status::Clean)
}

fn default_max_n(order: usize) -> u32 {
    if order <= SMALL_GROUP_ORDER {
        SMALL_GROUP_MAX_N
    } else {
        DEEP_SCAN_MAX_N
    }
}

fn scan_options(max_n: u32) -> ScanOptions {
    ScanOptions {
        max_n,
        ..ScanOptions::default()
    }
}

fn dixon_options(seed: u64, tolerance: Option<f64>) -> DixonOptions {
    let defaults = DixonOptions::default();
    DixonOptions {
        seed,
        tolerance: tolerance.unwrap_or(defaults.tolerance),
        ..defaults
    }
}

/// Builds `catalogue:NAME` entries, checking their facts, or loads a group file.
fn resolve_group(input: &str) -> Result<FiniteGroup> {
    if let Some(name) = input.strip_prefix(CATALOGUE_PREFIX) {
        let entry =
            find_entry(name).with_context(|| format!("no catalogue entry named {name:?}"))?;
        let group = build_entry(&entry)?;
        if let Some(bad) = entry.check_facts(&group)?.into_iter().find(|r| !r.holds) {
            bail!(
                "catalogue entry {name} fails {:?}: {}",
                bad.fact,
                bad.details
            );
        }
        Ok(group)
    } else {
        let source =
            GroupSource::load(Path::new(input)).with_context(|| format!("reading {input}"))?;
        build_cached(&source)
    }
}

fn build_entry(entry: &CatalogueEntry) -> Result<FiniteGroup> {
    let group = build_cached(&entry.source)?;
    if group.order() != entry.order {
        bail!(
            "catalogue entry {} has order {}, declared {}",
            entry.name,
            group.order(),
            entry.order
        );
    }
    Ok(group)
}

/// Enumerates a group, reusing a stored permutation realization from
/// `CLASSPOWER_CACHE_DIR` when one exists for the same source.
fn build_cached(source: &GroupSource) -> Result<FiniteGroup> {
    let cap = DEFAULT_CAP;
    let Some(dir) = std::env::var_os(CACHE_ENV).map(PathBuf::from) else {
        return Ok(source.build(cap)?);
    };
    let source_json = source.to_json();
    let mut hasher = DefaultHasher::new();
    source_json.hash(&mut hasher);
    let safe_name: String = source
        .name()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    let path = dir.join(format!("{safe_name}-{:016x}.json", hasher.finish()));

    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(cached) = serde_json::from_str::<serde_json::Value>(&text) {
            let same_source = serde_json::from_value::<GroupSource>(cached["source"].clone())
                .ok()
                .as_ref()
                == Some(source);
            if let (true, Ok(realized)) = (
                same_source,
                serde_json::from_value::<GroupSource>(cached["realized"].clone()),
            ) {
                return Ok(realized.build(cap)?.with_name(source.name()));
            }
        }
    }
    let group = source.build(cap)?;
    let mut generators = group.generator_perms();
    if generators.is_empty() {
        generators.push(Perm::identity(group.degree()));
    }
    let realized = GroupSource::from_perms(source.name(), &generators);
    let record = serde_json::json!({ "source": source, "realized": realized });
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    fs::write(&path, serde_json::to_string(&record)? + "\n")
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(group)
}

fn emit_reports(reports: &[CriterionReport], common: &Common) -> Result<Status> {
    let summary = ScanSummary::of(reports);
    write_output(
        common.out.as_deref(),
        &render(reports, common.format.into()),
    )?;
    let line = format!(
        "{} reports, {} hits, {} disagreements, {} violated conclusions",
        summary.reports, summary.hits, summary.disagreements, summary.violated_conclusions
    );
    if common.out.is_some() {
        println!("{line}");
    } else if !matches!(common.format, OutputFormat::Text) {
        eprintln!("{line}");
    }
    Ok(if summary.is_clean() {
        Status::Clean
    } else {
        Status::Finding
    })
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
