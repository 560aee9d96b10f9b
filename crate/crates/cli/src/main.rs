//! Command-line driver: dessin utilities, the quotient catalog, and the
//! verification suites.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use icosa_core::catalog::{self, diagram_dot};
use icosa_core::checks::{self, Check};
use icosa_core::dessin::{Dessin, DessinDocument};
use icosa_core::numeric;
use icosa_core::perm::{PermGroup, Permutation};

#[derive(Parser)]
#[command(
    name = "icosa",
    version,
    about = "Verification toolkit for the genus-4 icosahedral dessin, its quotient family and curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect, quotient, dualize and compare dessins given as JSON files.
    Dessin {
        #[command(subcommand)]
        action: DessinAction,
    },
    /// Build the icosahedral dessins, the quotient family and its diagram.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Verify the explicit Belyi functions and their decomposition identities.
    VerifyBelyi {
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Verify the quotient-curve derivations, invariants and the 3-isogeny.
    VerifyCurves {
        #[arg(long)]
        json: bool,
    },
    /// Run the numeric suite on Bring's curve samples.
    VerifyBring {
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run every verification.
    All {
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SamplingArgs {
    /// Number of random samples on Bring's curve.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Seed of the reproducible sample stream.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Numeric tolerance (exact checks ignore it).
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Subcommand)]
enum DessinAction {
    /// Print genus, passport and automorphism count.
    Info {
        #[arg(long)]
        file: PathBuf,
    },
    /// Print the dual dessin as JSON.
    Dual {
        #[arg(long)]
        file: PathBuf,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient by automorphisms given as cycle lists, e.g. '[[[1,2],[3,4]]]'.
    Quotient {
        #[arg(long)]
        file: PathBuf,
        /// JSON array of generators; each generator is a list of cycles.
        #[arg(long)]
        gens: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two dessins are isomorphic.
    Iso { file: PathBuf, other: PathBuf },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print a canonical dessin (i0 or i4) as JSON.
    Build {
        /// Which dessin: "i0" or "i4".
        #[arg(long)]
        which: String,
    },
    /// List all nine quotients with passports and genera.
    Family {
        #[arg(long)]
        json: bool,
    },
    /// Emit the quotient diagram as Graphviz DOT.
    Diagram {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Dessin { action } => run_dessin(action),
        Command::Catalog { action } => run_catalog(action),
        Command::VerifyBelyi { json } => report(checks::run_belyi_checks(), json),
        Command::VerifyCurves { json } => run_curves(json),
        Command::VerifyBring { sampling, json } => run_bring(sampling, json),
        Command::All { sampling, json } => report(
            checks::run_all(sampling.samples, sampling.seed, sampling.tol),
            json,
        ),
    }
}

fn load_dessin(path: &PathBuf) -> Result<Dessin> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc: DessinDocument = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a dessin document", path.display()))?;
    Dessin::from_document(&doc).with_context(|| format!("{} is not a valid dessin", path.display()))
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn run_dessin(action: DessinAction) -> Result<bool> {
    match action {
        DessinAction::Info { file } => {
            let d = load_dessin(&file)?;
            println!("genus {}, passport {}", d.genus(), d.passport());
            println!(
                "{} darts, automorphism group of order {}",
                d.n_darts(),
                d.automorphism_group().order()
            );
            Ok(true)
        }
        DessinAction::Dual { file, out } => {
            let d = load_dessin(&file)?;
            let text = serde_json::to_string_pretty(&d.dual().to_document())?;
            emit(out, &text)?;
            Ok(true)
        }
        DessinAction::Quotient { file, gens, out } => {
            let d = load_dessin(&file)?;
            let cycles: Vec<Vec<Vec<usize>>> =
                serde_json::from_str(&gens).context("generators must be JSON cycle lists")?;
            let mut perms = Vec::new();
            for cycle_list in &cycles {
                perms.push(Permutation::from_cycles(d.n_darts(), cycle_list)?);
            }
            if perms.is_empty() {
                bail!("at least one generator is required");
            }
            let group = PermGroup::closure(&perms)?;
            let q = d.quotient(&group)?;
            let text = serde_json::to_string_pretty(&q.to_document())?;
            emit(out, &text)?;
            Ok(true)
        }
        DessinAction::Iso { file, other } => {
            let a = load_dessin(&file)?;
            let b = load_dessin(&other)?;
            let iso = a.is_isomorphic_to(&b);
            println!("isomorphic: {iso}");
            Ok(true)
        }
    }
}

fn run_catalog(action: CatalogAction) -> Result<bool> {
    match action {
        CatalogAction::Build { which } => {
            let d = match which.as_str() {
                "i0" => catalog::build_i0(),
                "i4" => catalog::build_i4(),
                other => bail!("unknown dessin {other:?}; expected \"i0\" or \"i4\""),
            };
            println!("{}", serde_json::to_string_pretty(&d.to_document())?);
            Ok(true)
        }
        CatalogAction::Family { json } => {
            let family = catalog::quotient_family();
            if json {
                let summaries: Vec<_> = family.iter().map(|n| n.summary()).collect();
                let doc = serde_json::json!({ "nodes": summaries });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                println!(
                    "{:<5} {:>5} {:>5} {:>5}  passport",
                    "group", "order", "darts", "genus"
                );
                for node in &family {
                    println!(
                        "{:<5} {:>5} {:>5} {:>5}  [{}]",
                        node.name.to_string(),
                        node.group_order,
                        node.dessin.n_darts(),
                        node.genus,
                        node.passport.compact()
                    );
                }
            }
            Ok(true)
        }
        CatalogAction::Diagram { out } => {
            let dot = diagram_dot(&catalog::build_quotient_diagram());
            emit(out, dot.trim_end())?;
            Ok(true)
        }
    }
}

fn run_curves(json: bool) -> Result<bool> {
    let checks = checks::run_curve_checks();
    let models = [
        icosa_core::curves::WeierstrassCurve::new(1, 0, 1, -76, 298),
        icosa_core::curves::WeierstrassCurve::new(1, 0, 1, 549, -2202),
    ];
    let reports: Vec<_> = models
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?
        .iter()
        .map(|c| c.report())
        .collect();
    if json {
        let doc = serde_json::json!({ "checks": checks, "curves": reports });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        print_checks(&checks);
        for r in &reports {
            println!(
                "curve {}: c4 = {}, c6 = {}, disc = {}, j = {}",
                r.equation, r.c4, r.c6, r.disc, r.j
            );
        }
    }
    Ok(checks.iter().all(|c| c.passed()))
}

fn run_bring(sampling: SamplingArgs, json: bool) -> Result<bool> {
    let special = numeric::special_points_check(sampling.tol)?;
    let identities = numeric::identity_suite(sampling.samples, sampling.seed, sampling.tol);
    let check = checks::check_bring_numeric(sampling.samples, sampling.seed, sampling.tol);
    if json {
        let doc = serde_json::json!({
            "checks": [check],
            "identity_report": identities,
            "special_points": special,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        print_checks(std::slice::from_ref(&check));
        println!(
            "residuals: union {:.3e}, even {:.3e}, odd {:.3e}, coefficients {:.3e}, \
             power sums {:.3e}, conjugate {:.3e}, repeated-root {:.3e}",
            identities.max_union_identity,
            identities.max_even_invariance,
            identities.max_odd_reciprocal,
            identities.max_coefficient_invariance,
            identities.max_power_sum,
            identities.max_conjugate_identity,
            identities.max_repeated_root,
        );
    }
    Ok(check.passed())
}

fn print_checks(checks: &[Check]) {
    for c in checks {
        let verdict = match c.status {
            checks::CheckStatus::Pass => "PASS",
            checks::CheckStatus::Fail => "FAIL",
            checks::CheckStatus::Error => "ERROR",
        };
        println!("{:<24} {}  {}", c.name, verdict, c.details);
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    println!("{passed}/{} checks passed", checks.len());
}

fn report(checks: Vec<Check>, json: bool) -> Result<bool> {
    if json {
        println!("{}", serde_json::to_string_pretty(&checks)?);
    } else {
        print_checks(&checks);
    }
    Ok(checks.iter().all(|c| c.passed()))
}
