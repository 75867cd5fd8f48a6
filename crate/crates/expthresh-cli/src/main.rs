//! Command-line front end for the threshold toolkit.
//!
//! Each subcommand reads one family file — or a directory, in which
//! case every `.family` file inside is processed in parallel and
//! reported in filename order — and writes either a human-readable
//! table or canonical JSON. All displayed decimals are six-significant-
//! digit truncations of the exact rationals, which structured output
//! always carries alongside.
//!
//! Exit codes: 0 success, 1 a checked relationship was violated,
//! 2 input error, 3 a structural cap was exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use expthresh::cloning::CloneMap;
use expthresh::expectation::{self, ExpensiveProof, FractionalExpensiveProof};
use expthresh::format::{
    approx_sig, cover_to_value, family_to_value, fractional_cover_to_value, parse_family,
    parse_group, parse_rational, parse_width, render_family, render_rational,
};
use expthresh::solver;
use expthresh::threshold;
use expthresh::verify;
use expthresh::{Cover, Enclosure, Error, Family, GroundSet, Mask};

/// Plateau bound used by `cheapest --all`.
const ALL_OPTIMA_BOUND: usize = 1 << 16;

/// Significant digits in displayed decimals.
const DISPLAY_DIGITS: usize = 6;

#[derive(Parser)]
#[command(
    name = "expthresh",
    version,
    about = "Exact thresholds, expectation thresholds, minimum-cost covers, \
             and the copy-splitting transform for increasing set families"
)]
struct Cli {
    /// Enclosure width target: `2^-k` shorthand or a positive rational.
    #[arg(long, global = true, default_value = "2^-20", value_parser = width_arg)]
    width: BigRational,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Human-readable lines.
    Table,
    /// Canonical JSON, byte-identical for identical inputs.
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Thresholds and structure of a family.
    Analyze {
        /// Family file, or a directory of `.family` files.
        input: PathBuf,
    },
    /// Replace each element by k independent copies; prints the cloned
    /// family in the family file format.
    Clone {
        input: PathBuf,
        /// Copies per element.
        #[arg(short)]
        k: usize,
    },
    /// Expectation threshold, with cheap and expensive certificates.
    Qc { input: PathBuf },
    /// Fractional expectation threshold, with certificates.
    Qf { input: PathBuf },
    /// Probability threshold.
    Pc { input: PathBuf },
    /// One minimum-cost cover at a rate.
    MinCover {
        input: PathBuf,
        /// Rate in (0, 1), e.g. `1/4`.
        #[arg(short, value_parser = rational_arg)]
        q: BigRational,
    },
    /// Minimum-cost covers at a rate, in canonical order.
    Cheapest {
        input: PathBuf,
        /// Rate in (0, 1).
        #[arg(short, value_parser = rational_arg)]
        q: BigRational,
        /// Enumerate the whole optimum plateau (bounded internally).
        #[arg(long, conflicts_with = "limit")]
        all: bool,
        /// Most optima to list.
        #[arg(long, default_value_t = 16)]
        limit: usize,
    },
    /// Check the inequalities relating the three thresholds.
    VerifyBounds {
        input: PathBuf,
        /// Multiplicative constant in the logarithmic bounds.
        #[arg(short = 'K', default_value = "16", value_parser = rational_arg)]
        constant: BigRational,
    },
    /// Check the copy-splitting threshold identities.
    VerifyScaling {
        input: PathBuf,
        /// Copies per element.
        #[arg(short)]
        k: usize,
    },
    /// Search a clone's cheapest covers for one that is not a cloned
    /// base cover.
    Noncloned {
        input: PathBuf,
        /// Copies per element.
        #[arg(short)]
        k: usize,
        /// Rate in (0, 1).
        #[arg(short, value_parser = rational_arg)]
        q: BigRational,
        /// Most optima to inspect.
        #[arg(long, default_value_t = 64)]
        limit: usize,
    },
    /// Sample random families for rates where no cheapest cover is
    /// invariant under a symmetry group.
    FalsifySymmetry {
        /// Permutation group file.
        group: PathBuf,
        /// Families to sample.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Sampling seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn width_arg(text: &str) -> Result<BigRational, String> {
    parse_width(text).map_err(|e| e.to_string())
}

fn rational_arg(text: &str) -> Result<BigRational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// Exit codes, ordered so the worst across a batch wins.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Severity {
    Success = 0,
    Violated = 1,
    InputError = 2,
    CapExceeded = 3,
}

fn error_severity(error: &Error) -> Severity {
    if error.is_cap_exceeded() {
        Severity::CapExceeded
    } else {
        Severity::InputError
    }
}

/// One subcommand's result for one input: both renderings, plus
/// whether a checked relationship failed.
struct Report {
    table: String,
    structured: Value,
    violated: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(&cli) as u8)
}

fn run(cli: &Cli) -> Severity {
    let width = &cli.width;
    match &cli.command {
        Command::Analyze { input } => on_families(input, cli, |f| analyze(f, width)),
        Command::Clone { input, k } => on_families(input, cli, |f| clone_family(f, *k)),
        Command::Qc { input } => on_families(input, cli, |f| qc(f, width)),
        Command::Qf { input } => on_families(input, cli, |f| qf(f, width)),
        Command::Pc { input } => on_families(input, cli, |f| pc(f, width)),
        Command::MinCover { input, q } => on_families(input, cli, |f| min_cover(f, q)),
        Command::Cheapest {
            input,
            q,
            all,
            limit,
        } => {
            let limit = if *all { ALL_OPTIMA_BOUND } else { *limit };
            on_families(input, cli, move |f| cheapest(f, q, limit))
        }
        Command::VerifyBounds { input, constant } => {
            on_families(input, cli, |f| verify_bounds(f, constant, width))
        }
        Command::VerifyScaling { input, k } => {
            on_families(input, cli, |f| verify_scaling(f, *k, width))
        }
        Command::Noncloned {
            input,
            k,
            q,
            limit,
        } => on_families(input, cli, |f| noncloned(f, *k, q, *limit)),
        Command::FalsifySymmetry {
            group,
            trials,
            seed,
        } => falsify_symmetry(group, *trials, *seed, cli.format),
    }
}

/// Runs one family-valued subcommand over a file or a directory of
/// `.family` files, printing reports in filename order.
fn on_families<F>(input: &Path, cli: &Cli, handler: F) -> Severity
where
    F: Fn(&Family) -> Result<Report, Error> + Sync,
{
    let files = match family_inputs(input) {
        Ok(files) => files,
        Err(message) => {
            eprintln!("error: {message}");
            return Severity::InputError;
        }
    };
    let batch = files.len() > 1 || input.is_dir();
    let outcomes: Vec<(String, Result<Report, String>, Severity)> = files
        .par_iter()
        .map(|path| {
            let name = path.display().to_string();
            let text = match std::fs::read_to_string(path) {
                Ok(text) => text,
                Err(e) => return (name, Err(e.to_string()), Severity::InputError),
            };
            let family = match parse_family(&text) {
                Ok(family) => family,
                Err(e) => return (name, Err(e.to_string()), error_severity(&e)),
            };
            match handler(&family) {
                Ok(report) => {
                    let severity = if report.violated {
                        Severity::Violated
                    } else {
                        Severity::Success
                    };
                    (name, Ok(report), severity)
                }
                Err(e) => (name, Err(e.to_string()), error_severity(&e)),
            }
        })
        .collect();
    let mut worst = Severity::Success;
    let mut documents = Vec::new();
    for (name, outcome, severity) in &outcomes {
        worst = worst.max(*severity);
        match outcome {
            Ok(report) => match cli.format {
                OutputFormat::Table => {
                    if batch {
                        println!("== {name} ==");
                    }
                    print!("{}", report.table);
                }
                OutputFormat::Structured => {
                    if batch {
                        documents.push(json!({"file": name, "report": report.structured}));
                    } else {
                        println!("{:#}", report.structured);
                    }
                }
            },
            Err(message) => {
                eprintln!("error: {name}: {message}");
                if batch && cli.format == OutputFormat::Structured {
                    documents.push(json!({"error": message, "file": name}));
                }
            }
        }
    }
    if batch && cli.format == OutputFormat::Structured {
        println!("{:#}", Value::from(documents));
    }
    worst
}

/// The `.family` files a path stands for: itself, or its directory
/// entries sorted by name.
fn family_inputs(input: &Path) -> Result<Vec<PathBuf>, String> {
    if !input.is_dir() {
        return Ok(vec![input.to_path_buf()]);
    }
    let entries = std::fs::read_dir(input)
        .map_err(|e| format!("{}: {e}", input.display()))?
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("{}: {e}", input.display()))?;
    let mut files: Vec<PathBuf> = entries
        .into_iter()
        .map(|entry| entry.path())
        .filter(|path| path.extension().is_some_and(|ext| ext == "family"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(format!("{}: no .family files", input.display()));
    }
    Ok(files)
}

fn approx(value: &BigRational) -> String {
    approx_sig(value, DISPLAY_DIGITS)
}

/// Enclosure as JSON: exact endpoints plus display decimals.
fn enclosure_json(enclosure: &Enclosure) -> Value {
    json!({
        "hi": render_rational(enclosure.hi()),
        "hi_approx": approx(enclosure.hi()),
        "lo": render_rational(enclosure.lo()),
        "lo_approx": approx(enclosure.lo()),
    })
}

/// Enclosure as a table cell: exact when collapsed, decimals otherwise.
fn enclosure_cell(enclosure: &Enclosure) -> String {
    if enclosure.is_point() {
        format!(
            "= {} ({})",
            render_rational(enclosure.lo()),
            approx(enclosure.lo())
        )
    } else {
        format!(
            "in [{}, {}]",
            approx(enclosure.lo()),
            approx(enclosure.hi())
        )
    }
}

/// Subsets as a compact table cell like `{a,b} {c}`.
fn masks_cell(ground: &GroundSet, masks: &[Mask]) -> String {
    masks
        .iter()
        .map(|&m| format!("{{{}}}", ground.labels_of(m).join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cover_cell(ground: &GroundSet, cover: &Cover) -> String {
    masks_cell(ground, cover.members())
}

fn analyze(family: &Family, width: &BigRational) -> Result<Report, Error> {
    let qc = expectation::q_c(family, width)?;
    let qf = expectation::q_f(family, width)?;
    let pc = threshold::p_c(family, width)?;
    let mut table = String::new();
    let _ = writeln!(table, "ground size      {}", family.n());
    let _ = writeln!(table, "generators       {}", family.generators().len());
    let _ = writeln!(table, "largest minimal  {}", family.largest_minimal_size());
    let _ = writeln!(table, "q_c              {}", enclosure_cell(&qc.enclosure));
    let _ = writeln!(table, "q_f              {}", enclosure_cell(&qf.enclosure));
    let _ = writeln!(table, "p_c              {}", enclosure_cell(&pc));
    Ok(Report {
        table,
        structured: json!({
            "generator_count": family.generators().len(),
            "ground_size": family.n(),
            "largest_minimal": family.largest_minimal_size(),
            "p_c": enclosure_json(&pc),
            "q_c": enclosure_json(&qc.enclosure),
            "q_f": enclosure_json(&qf.enclosure),
            "width": render_rational(width),
        }),
        violated: false,
    })
}

fn clone_family(family: &Family, k: usize) -> Result<Report, Error> {
    let map = CloneMap::new(family.ground(), k)?;
    let cloned = map.clone_family(family)?;
    Ok(Report {
        // The cloned family is the deliverable; both modes print it in
        // the family file format so the output feeds straight back in.
        table: render_family(&cloned),
        structured: family_to_value(&cloned),
        violated: false,
    })
}

fn qc(family: &Family, width: &BigRational) -> Result<Report, Error> {
    let out = expectation::q_c(family, width)?;
    let ground = family.ground();
    let proof = match &out.upper.proof {
        ExpensiveProof::SearchExhausted => "search-exhausted",
        ExpensiveProof::MinimumEqualsHalf => "minimum-equals-half",
        ExpensiveProof::UnitCostFloor => "unit-cost-floor",
    };
    let mut table = String::new();
    let _ = writeln!(table, "q_c        {}", enclosure_cell(&out.enclosure));
    let _ = writeln!(
        table,
        "cheap at   q = {}: cover {} costs {}",
        render_rational(&out.lower.q),
        cover_cell(ground, &out.lower.cover),
        render_rational(&out.lower.cover.cost(&out.lower.q)),
    );
    let _ = writeln!(
        table,
        "expensive  q = {}: {proof}",
        render_rational(&out.upper.q),
    );
    Ok(Report {
        table,
        structured: json!({
            "enclosure": enclosure_json(&out.enclosure),
            "lower": {
                "cost": render_rational(&out.lower.cover.cost(&out.lower.q)),
                "cover": cover_to_value(ground, &out.lower.cover),
                "q": render_rational(&out.lower.q),
            },
            "upper": {
                "proof": proof,
                "q": render_rational(&out.upper.q),
            },
            "width": render_rational(width),
        }),
        violated: false,
    })
}

fn qf(family: &Family, width: &BigRational) -> Result<Report, Error> {
    let out = expectation::q_f(family, width)?;
    let ground = family.ground();
    let (proof, dual) = match &out.upper.proof {
        FractionalExpensiveProof::Dual(dual) => (
            "dual-certificate",
            Some(dual.iter().map(render_rational).collect::<Vec<_>>()),
        ),
        FractionalExpensiveProof::UnitCostFloor => ("unit-cost-floor", None),
    };
    let mut table = String::new();
    let _ = writeln!(table, "q_f        {}", enclosure_cell(&out.enclosure));
    let _ = writeln!(
        table,
        "cheap at   q = {}: weighting costs {}",
        render_rational(&out.lower.q),
        render_rational(&out.lower.weighting.cost(&out.lower.q)),
    );
    let _ = writeln!(
        table,
        "expensive  q = {}: {proof}",
        render_rational(&out.upper.q),
    );
    Ok(Report {
        table,
        structured: json!({
            "enclosure": enclosure_json(&out.enclosure),
            "lower": {
                "cost": render_rational(&out.lower.weighting.cost(&out.lower.q)),
                "q": render_rational(&out.lower.q),
                "weighting": fractional_cover_to_value(ground, &out.lower.weighting),
            },
            "upper": {
                "dual": dual,
                "proof": proof,
                "q": render_rational(&out.upper.q),
            },
            "width": render_rational(width),
        }),
        violated: false,
    })
}

fn pc(family: &Family, width: &BigRational) -> Result<Report, Error> {
    let enclosure = threshold::p_c(family, width)?;
    Ok(Report {
        table: format!("p_c  {}\n", enclosure_cell(&enclosure)),
        structured: json!({
            "p_c": enclosure_json(&enclosure),
            "width": render_rational(width),
        }),
        violated: false,
    })
}

fn min_cover(family: &Family, q: &BigRational) -> Result<Report, Error> {
    let (cost, cover) = solver::min_cost_cover(family, q)?;
    let ground = family.ground();
    let mut table = String::new();
    let _ = writeln!(
        table,
        "min cost  {} ({})",
        render_rational(&cost),
        approx(&cost)
    );
    let _ = writeln!(table, "cover     {}", cover_cell(ground, &cover));
    Ok(Report {
        table,
        structured: json!({
            "cost": render_rational(&cost),
            "cost_approx": approx(&cost),
            "cover": cover_to_value(ground, &cover),
            "q": render_rational(q),
        }),
        violated: false,
    })
}

fn cheapest(family: &Family, q: &BigRational, limit: usize) -> Result<Report, Error> {
    let out = solver::cheapest_covers(family, q, limit)?;
    let ground = family.ground();
    let mut table = String::new();
    let _ = writeln!(
        table,
        "min cost  {} ({})",
        render_rational(&out.min_cost),
        approx(&out.min_cost)
    );
    for cover in &out.covers {
        let _ = writeln!(table, "optimum   {}", cover_cell(ground, cover));
    }
    if out.truncated {
        let _ = writeln!(table, "(more optima exist beyond the limit)");
    }
    Ok(Report {
        table,
        structured: json!({
            "count": out.covers.len(),
            "covers": out
                .covers
                .iter()
                .map(|c| cover_to_value(ground, c))
                .collect::<Vec<Value>>(),
            "min_cost": render_rational(&out.min_cost),
            "min_cost_approx": approx(&out.min_cost),
            "q": render_rational(q),
            "truncated": out.truncated,
        }),
        violated: false,
    })
}

fn verify_bounds(
    family: &Family,
    constant: &BigRational,
    width: &BigRational,
) -> Result<Report, Error> {
    let report = verify::check_bounds(family, constant, width)?;
    let mut table = String::new();
    let _ = writeln!(
        table,
        "q_c {}   q_f {}   p_c {}",
        enclosure_cell(&report.q_c),
        enclosure_cell(&report.q_f),
        enclosure_cell(&report.p_c),
    );
    let _ = writeln!(
        table,
        "largest minimal {}, constant {}, refinements {}",
        report.largest_minimal,
        render_rational(&report.constant),
        report.refinements,
    );
    for check in &report.checks {
        let _ = writeln!(
            table,
            "{:<20} {:<18} {}",
            check.verdict.as_str(),
            check.name,
            check.note
        );
    }
    let checks = report
        .checks
        .iter()
        .map(|check| {
            json!({
                "lhs": check.lhs.as_ref().map(enclosure_json),
                "name": check.name,
                "note": check.note,
                "rhs": check.rhs.as_ref().map(enclosure_json),
                "verdict": check.verdict.as_str(),
            })
        })
        .collect::<Vec<Value>>();
    let violated = report.any_violated();
    Ok(Report {
        table,
        structured: json!({
            "checks": checks,
            "constant": render_rational(&report.constant),
            "largest_minimal": report.largest_minimal,
            "p_c": enclosure_json(&report.p_c),
            "q_c": enclosure_json(&report.q_c),
            "q_f": enclosure_json(&report.q_f),
            "refinements": report.refinements,
            "width": render_rational(&report.width),
        }),
        violated,
    })
}

fn verify_scaling(family: &Family, k: usize, width: &BigRational) -> Result<Report, Error> {
    let report = verify::check_clone_scaling(family, k, width)?;
    let mut table = String::new();
    let _ = writeln!(table, "k = {k}");
    let _ = writeln!(
        table,
        "q_c  base {}  clone {}  residual {}",
        enclosure_cell(&report.base_q_c),
        enclosure_cell(&report.cloned_q_c),
        enclosure_cell(&report.q_c_residual),
    );
    let _ = writeln!(
        table,
        "q_f  base {}  clone {}  residual {}",
        enclosure_cell(&report.base_q_f),
        enclosure_cell(&report.cloned_q_f),
        enclosure_cell(&report.q_f_residual),
    );
    let _ = writeln!(
        table,
        "p_c  base {}  clone {}  residual {}",
        enclosure_cell(&report.base_p_c),
        enclosure_cell(&report.cloned_p_c),
        enclosure_cell(&report.p_c_residual),
    );
    let _ = writeln!(
        table,
        "consistent: {}",
        if report.consistent() { "yes" } else { "NO" }
    );
    let violated = !report.consistent();
    Ok(Report {
        table,
        structured: json!({
            "base": {
                "p_c": enclosure_json(&report.base_p_c),
                "q_c": enclosure_json(&report.base_q_c),
                "q_f": enclosure_json(&report.base_q_f),
            },
            "cloned": {
                "p_c": enclosure_json(&report.cloned_p_c),
                "q_c": enclosure_json(&report.cloned_q_c),
                "q_f": enclosure_json(&report.cloned_q_f),
            },
            "consistent": report.consistent(),
            "k": k,
            "residuals": {
                "p_c": enclosure_json(&report.p_c_residual),
                "q_c": enclosure_json(&report.q_c_residual),
                "q_f": enclosure_json(&report.q_f_residual),
            },
            "width": render_rational(&report.width),
        }),
        violated,
    })
}

fn noncloned(family: &Family, k: usize, q: &BigRational, limit: usize) -> Result<Report, Error> {
    let out = verify::find_noncloned_cheapest(family, k, q, limit)?;
    // The witness lives on the cloned ground set.
    let cloned_ground = CloneMap::new(family.ground(), k)?.cloned().clone();
    let mut table = String::new();
    let _ = writeln!(
        table,
        "min cost   {} ({}) across {} optima{}",
        render_rational(&out.min_cost),
        approx(&out.min_cost),
        out.inspected,
        if out.truncated { " (truncated)" } else { "" },
    );
    match &out.witness {
        Some(cover) => {
            let _ = writeln!(table, "non-cloned {}", cover_cell(&cloned_ground, cover));
        }
        None => {
            let _ = writeln!(table, "non-cloned none among the inspected optima");
        }
    }
    Ok(Report {
        table,
        structured: json!({
            "inspected": out.inspected,
            "k": k,
            "min_cost": render_rational(&out.min_cost),
            "min_cost_approx": approx(&out.min_cost),
            "q": render_rational(q),
            "truncated": out.truncated,
            "witness": out.witness.as_ref().map(|c| cover_to_value(&cloned_ground, c)),
        }),
        violated: false,
    })
}

fn falsify_symmetry(
    group_path: &Path,
    trials: usize,
    seed: u64,
    format: OutputFormat,
) -> Severity {
    let loaded = std::fs::read_to_string(group_path)
        .map_err(|e| e.to_string())
        .and_then(|text| parse_group(&text).map_err(|e| e.to_string()));
    let group = match loaded {
        Ok(group) => group,
        Err(message) => {
            eprintln!("error: {}: {message}", group_path.display());
            return Severity::InputError;
        }
    };
    let witnesses = match verify::falsify_symmetry(group.n(), &group, trials, seed) {
        Ok(witnesses) => witnesses,
        Err(e) => {
            eprintln!("error: {}: {e}", group_path.display());
            return error_severity(&e);
        }
    };
    match format {
        OutputFormat::Table => {
            println!(
                "group of order {} on {} points; {trials} trials, seed {seed}",
                group.order(),
                group.n()
            );
            if witnesses.is_empty() {
                println!("no witness found (refutes nothing)");
            }
            for (family, q) in &witnesses {
                println!(
                    "witness at q = {}: generators {}",
                    render_rational(q),
                    masks_cell(family.ground(), family.generators()),
                );
            }
        }
        OutputFormat::Structured => {
            let value = json!({
                "group_order": group.order(),
                "n": group.n(),
                "seed": seed,
                "trials": trials,
                "witnesses": witnesses
                    .iter()
                    .map(|(family, q)| {
                        json!({
                            "family": family_to_value(family),
                            "q": render_rational(q),
                            "q_approx": approx(q),
                        })
                    })
                    .collect::<Vec<Value>>(),
            });
            println!("{value:#}");
        }
    }
    Severity::Success
}
