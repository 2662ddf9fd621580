use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use csli_core::cocycle::{
    construct_branch_selection, construct_inverse_count, expectation, repair_continuity, transfer_apply,
    verify_cocycle, CocycleFn,
};
use csli_core::semigroup::{check_dichotomy, check_separation, find_collision, Dichotomy, MultiIndex};
use csli_workbench::gallery;
use csli_workbench::pipeline::{family_of, run_pipeline, Report};
use csli_workbench::schema::{
    parse_certificate, parse_function, Dynamics, FunctionDto, MapDto, PointDto, RationalDto, SystemDescription,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "csli", version, about = "Exact analysis of CSLI dynamical systems on cut-line spaces")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// CSLI verdict, stratification, local-homeomorphism and necessary-condition tests.
    Analyze { system: PathBuf },
    /// Run every configured check of a system file and compare with its expected verdicts.
    Run { system: PathBuf },
    /// Verify or construct cocycles.
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Apply the transfer operator.
    #[command(subcommand)]
    Transfer(TransferCmd),
    /// The conditional expectation f ↦ (𝓛f)∘φ.
    Expectation {
        system: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        function: PathBuf,
    },
    /// Free actions and divisible families.
    #[command(subcommand)]
    Semigroup(SemigroupCmd),
    /// Check a non-admissibility certificate.
    Certify {
        #[arg(long)]
        certificate: PathBuf,
    },
    /// List, run or export the example systems.
    #[command(subcommand)]
    Gallery(GalleryCmd),
}

#[derive(Subcommand)]
enum CocycleCmd {
    /// Verify the cocycle axioms for a weight function (default: the system's cocycles).
    Verify {
        system: PathBuf,
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// Construct a cocycle; `branch+repair` uses the system's pins.
    Construct {
        system: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::Branch)]
        strategy: Strategy,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    InverseCount,
    Branch,
    #[value(name = "branch+repair")]
    BranchRepair,
}

#[derive(Subcommand)]
enum TransferCmd {
    /// The transfer operator y ↦ Σ_{φ(x)=y} ω(x) f(x).
    Apply {
        system: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        function: PathBuf,
    },
}

#[derive(Subcommand)]
enum SemigroupCmd {
    /// Pairwise compatibility of the generator cocycles of a free action.
    Ddag { system: PathBuf },
    /// The extended cocycle ω(m, ·) for a multi-index such as `2,1`.
    Extend {
        system: PathBuf,
        #[arg(long, value_delimiter = ',')]
        index: Vec<u32>,
    },
    /// Injectivity of the first K elements of a family.
    Dichotomy {
        system: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Search a pair identified by every tested element of a family.
    Collision {
        system: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GalleryCmd {
    /// Print the names of the example systems.
    List,
    /// Run one example and compare with its expected verdicts.
    Run { name: String },
    /// Run every example; fails if any verdict differs from its expectation.
    RunAll,
    /// Write a gallery system as JSON.
    Export {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<SystemDescription> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SystemDescription::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn emit_report(report: &Report, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cocycle_of(s: &SystemDescription, file: &Path) -> Result<CocycleFn> {
    let map = s.map()?;
    let w = parse_function(&read(file)?, map.space())?;
    Ok(CocycleFn::new(map, w)?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    match cli.command {
        Command::Analyze { system } => {
            let mut s = load(&system)?;
            s.cocycles.clear();
            s.construct = None;
            s.certificates.clear();
            s.expected = Default::default();
            emit_report(&run_pipeline(&s)?, json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Run { system } => {
            let report = run_pipeline(&load(&system)?)?;
            emit_report(&report, json);
            Ok(status(report.matched()))
        }
        Command::Cocycle(CocycleCmd::Verify { system, cocycle }) => {
            let s = load(&system)?;
            let cocycles = match cocycle {
                Some(f) => vec![cocycle_of(&s, &f)?],
                None => {
                    let map = s.map()?;
                    s.cocycle_functions()?
                        .into_iter()
                        .map(|w| CocycleFn::new(map.clone(), w))
                        .collect::<Result<Vec<_>, _>>()?
                }
            };
            if cocycles.is_empty() {
                bail!("no cocycle given and the system lists none");
            }
            let mut all = true;
            let mut out = Vec::new();
            for w in &cocycles {
                let r = verify_cocycle(w)?;
                all &= r.passes();
                out.push(json!({
                    "passes": r.passes(),
                    "nonnegative": r.nonneg(),
                    "fiber_sums_one": r.fiber_sums(),
                    "continuous": r.continuous(),
                    "strictly_positive": r.strictly_positive,
                }));
            }
            if json {
                println!("{}", pretty(&out));
            } else {
                for (i, o) in out.iter().enumerate() {
                    println!("cocycle {i}: {o}");
                }
            }
            Ok(status(all))
        }
        Command::Cocycle(CocycleCmd::Construct { system, strategy }) => {
            let s = load(&system)?;
            let map = s.map()?;
            let (w, r) = match strategy {
                Strategy::InverseCount => {
                    let w = construct_inverse_count(&map)?;
                    let r = verify_cocycle(&w)?;
                    (w, r)
                }
                Strategy::Branch => construct_branch_selection(&map)?,
                Strategy::BranchRepair => {
                    let (w, _) = construct_branch_selection(&map)?;
                    repair_continuity(&w, &s.pins_core()?)?
                }
            };
            let f = FunctionDto::from_core(w.weight())?;
            if json {
                println!(
                    "{}",
                    pretty(&json!({ "cocycle": f, "passes": r.passes(), "strictly_positive": r.strictly_positive }))
                );
            } else {
                println!("{}", w.weight());
                println!("passes: {}, strictly positive: {}", r.passes(), r.strictly_positive);
            }
            Ok(status(r.passes()))
        }
        Command::Transfer(TransferCmd::Apply { system, cocycle, function }) => {
            let s = load(&system)?;
            let w = cocycle_of(&s, &cocycle)?;
            let f = parse_function(&read(&function)?, w.map().space())?;
            let g = transfer_apply(&w, &f)?;
            if json {
                println!("{}", pretty(&FunctionDto::from_core(&g)?));
            } else {
                println!("{g}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Expectation { system, cocycle, function } => {
            let s = load(&system)?;
            let w = cocycle_of(&s, &cocycle)?;
            let f = parse_function(&read(&function)?, w.map().space())?;
            let g = expectation(&w, &f)?;
            if json {
                println!("{}", pretty(&FunctionDto::from_core(&g)?));
            } else {
                println!("{g}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Semigroup(SemigroupCmd::Ddag { system }) => {
            let mut s = load(&system)?;
            if !matches!(s.dynamics, Dynamics::FreeAction { .. }) {
                bail!("semigroup ddag needs a free_action system");
            }
            if let Dynamics::FreeAction { max_index, .. } = &mut s.dynamics {
                *max_index = 0;
            }
            s.expected = Default::default();
            let report = run_pipeline(&s)?;
            emit_report(&report, json);
            Ok(status(report.verdicts.ddag == Some(true)))
        }
        Command::Semigroup(SemigroupCmd::Extend { system, index }) => {
            let s = load(&system)?;
            let Dynamics::FreeAction { generators, .. } = &s.dynamics else {
                bail!("semigroup extend needs a free_action system");
            };
            let space = s.cut_space()?;
            let mut cocycles = Vec::new();
            for (i, g) in generators.iter().enumerate() {
                let p = format!("dynamics.generators[{i}]");
                cocycles.push(CocycleFn::new(
                    g.map.to_core(&space, &format!("{p}.map"))?,
                    g.cocycle.to_core(&space, &format!("{p}.cocycle"))?,
                )?);
            }
            let action =
                csli_core::semigroup::CompatibleAction::new(csli_core::semigroup::FreeSemigroupAction::new(cocycles)?)?;
            let w = action.extend_cocycle_fn(&MultiIndex::new(index))?;
            let r = verify_cocycle(&w)?;
            if json {
                println!(
                    "{}",
                    pretty(&json!({
                        "map": MapDto::from_core(w.map())?,
                        "cocycle": FunctionDto::from_core(w.weight())?,
                        "passes": r.passes(),
                    }))
                );
            } else {
                println!("map: {}", w.map());
                println!("cocycle: {}", w.weight());
                println!("passes: {}", r.passes());
            }
            Ok(status(r.passes()))
        }
        Command::Semigroup(SemigroupCmd::Dichotomy { system, depth }) => {
            let s = load(&system)?;
            let (family, _, configured) = family_of(&s)?;
            let d = check_dichotomy(&family, depth.unwrap_or(configured))?;
            let (verdict, inj, not_inj) = match d {
                Dichotomy::AllHomeo => ("all_homeo", vec![], vec![]),
                Dichotomy::NoneHomeo => ("none_homeo", vec![], vec![]),
                Dichotomy::Inconsistent { injective, not_injective } => ("inconsistent", injective, not_injective),
            };
            if json {
                let q = |v: &[csli_core::rational::Rational]| -> Result<Vec<RationalDto>> {
                    Ok(v.iter().map(RationalDto::from_core).collect::<Result<_, _>>()?)
                };
                println!(
                    "{}",
                    pretty(&json!({ "dichotomy": verdict, "injective": q(&inj)?, "not_injective": q(&not_inj)? }))
                );
            } else {
                println!("dichotomy: {verdict}");
            }
            Ok(status(verdict != "inconsistent"))
        }
        Command::Semigroup(SemigroupCmd::Collision { system, depth }) => {
            let s = load(&system)?;
            let (family, _, configured) = family_of(&s)?;
            let depth = depth.unwrap_or(configured);
            let composites = family.pairwise_sums(depth)?;
            let Some(cert) = find_collision(&family, depth, &composites)? else {
                if json {
                    println!("null");
                } else {
                    println!("no collision found to depth {depth}");
                }
                return Ok(ExitCode::FAILURE);
            };
            let sep = check_separation(&family, &cert)?;
            if json {
                let images = sep
                    .images
                    .iter()
                    .map(|(d, y)| Ok(json!({ "d": RationalDto::from_core(d)?, "image": PointDto::from_core(y)? })))
                    .collect::<Result<Vec<_>>>()?;
                println!(
                    "{}",
                    pretty(&json!({
                        "u0": PointDto::from_core(&cert.u0)?,
                        "v0": PointDto::from_core(&cert.v0)?,
                        "images": images,
                    }))
                );
            } else {
                println!("u0 = {}, v0 = {}", cert.u0, cert.v0);
                for (d, y) in &sep.images {
                    println!("  φ_{d}: both ↦ {y}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { certificate } => {
            let cert = parse_certificate(&read(&certificate)?)?;
            let verdict = csli_core::certificates::check_certificate(&cert)?;
            let (valid, reason) = match &verdict {
                csli_core::certificates::CertificateVerdict::Valid => (true, None),
                csli_core::certificates::CertificateVerdict::Invalid(r) => (false, Some(r.clone())),
            };
            if json {
                println!("{}", pretty(&json!({ "valid": valid, "reason": reason })));
            } else if let Some(r) = reason {
                println!("invalid: {r}");
            } else {
                println!("valid");
            }
            Ok(status(valid))
        }
        Command::Gallery(GalleryCmd::List) => {
            for s in gallery::all() {
                if json {
                    println!("{}", serde_json::to_string(&json!({ "name": s.name, "summary": s.summary }))?);
                } else {
                    println!("{:14} {}", s.name, s.summary);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gallery(GalleryCmd::Run { name }) => {
            let Some(s) = gallery::entry(&name) else {
                bail!("unknown gallery entry {name:?}; try `csli gallery list`");
            };
            let report = run_pipeline(&s)?;
            emit_report(&report, json);
            Ok(status(report.matched()))
        }
        Command::Gallery(GalleryCmd::RunAll) => {
            let mut all = true;
            let mut reports = Vec::new();
            for s in gallery::all() {
                let report = run_pipeline(&s)?;
                all &= report.matched();
                reports.push(report);
            }
            if json {
                println!("{}", pretty(&reports));
            } else {
                for r in &reports {
                    print!("{}", r.to_text());
                }
            }
            Ok(status(all))
        }
        Command::Gallery(GalleryCmd::Export { name, output }) => {
            let Some(s) = gallery::entry(&name) else {
                bail!("unknown gallery entry {name:?}; try `csli gallery list`");
            };
            let text = s.to_json();
            match output {
                Some(p) => fs::write(&p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
