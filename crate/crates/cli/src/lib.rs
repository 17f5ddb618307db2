//! Command-line front end: generator files, the expected-value table and
//! the reproduction suite.

pub mod cases;
pub mod genfile;
pub mod report;
pub mod reproduce;

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rank3_core::constructions::{build, labels};
use rank3_core::geometry::standard_space;
use rank3_core::higman::{odd_orthogonal_params, CdPair, Eigen, EqVerdicts};
use rank3_core::orbit::{base_type, cd_parameters, orbit};
use rank3_core::{Elem, FiniteField, Sign, SquareClass};
use rank3_meataxe::{composition_factors, invariant_bilinear_form, GModule};
use rank3_mullineux::{mullineux_map, Partition};
use serde_json::json;
use thiserror::Error;

pub use cases::{ExpectedCase, Tier, CASES};
pub use genfile::{parse_generator_file, GenFileError, GeneratorFile};
pub use report::{CaseResult, Summary, VerdictReport};
pub use reproduce::{run_reproduction_suite, Options};

/// Bad input on the command line; exits with status 2.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

#[derive(Parser, Debug)]
#[command(name = "rank3", version, about = "Rank-3 containment checks for orthogonal groups over GF(3)")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Disc {
    Square,
    Nonsquare,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TierArg {
    Core,
    Heavy,
    Ingest,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form and exhaustive counts of vectors of each norm.
    Count {
        n: usize,
        q: u32,
        /// Only this discriminant class (default: both).
        #[arg(long, value_enum)]
        disc: Option<Disc>,
    },
    /// Rank-3 parameters of Ω_{2m+1}(3) on points of type ξ.
    Higman {
        m: u32,
        #[arg(allow_hyphen_values = true)]
        xi: String,
    },
    /// Containment equation, c − 2d identity, quadratic identity and orbit-size bound for (c, d).
    CheckEq {
        m: u32,
        #[arg(allow_hyphen_values = true)]
        xi: String,
        c: i64,
        d: i64,
    },
    /// Summarise a built-in construction (`--list` for all labels).
    Construct {
        label: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Size of the orbit of a projective point.
    Orbit {
        file: PathBuf,
        /// Comma- or space-separated entries, or the name of a `# base` line.
        vector: String,
    },
    /// Orbit size, (c, d) and equation verdicts for a base point.
    Cd { file: PathBuf, vector: String },
    /// Image of a 3-regular partition under the Mullineux map.
    Mullineux {
        partition: String,
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
    /// Composition factors of the module given by a generator file.
    Split {
        file: PathBuf,
        #[arg(long, default_value_t = rank3_meataxe::DEFAULT_SEED)]
        seed: u64,
        /// Write each factor as a generator file into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the expected-value table.
    Reproduce {
        #[arg(value_enum, default_value = "core")]
        tier: TierArg,
        /// Directory holding generator files for the ingest tier.
        #[arg(long)]
        ingest_dir: Option<PathBuf>,
        /// Record seconds per case.
        #[arg(long)]
        timing: bool,
    },
    /// Write a built-in construction as a generator file.
    Export {
        label: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_sign(s: &str) -> Result<Sign> {
    Sign::parse(s).map_or_else(|| usage(format!("'{s}' is not a type; use + or -")), Ok)
}

fn field_of_order(q: u32) -> Result<FiniteField> {
    let p = (2..=q).find(|d| q % d == 0).ok_or_else(|| UsageError(format!("{q} is not a prime power")))?;
    let (mut t, mut a) = (q, 0);
    while t % p == 0 {
        t /= p;
        a += 1;
    }
    if t != 1 {
        return usage(format!("{q} is not a prime power"));
    }
    FiniteField::new(p, a).map_err(|e| UsageError(e.to_string()).into())
}

fn load(path: &Path) -> Result<GeneratorFile> {
    GeneratorFile::read(path).map_err(Into::into)
}

fn parse_vector(file: &GeneratorFile, text: &str) -> Result<Vec<Elem>> {
    if let Some(v) = file.base(text) {
        return Ok(v.to_vec());
    }
    let entries: Result<Vec<Elem>, _> =
        text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(str::parse).collect();
    let Ok(v) = entries else { return usage(format!("'{text}' is neither a vector nor a base-point name")) };
    if v.len() != file.dim || v.iter().any(|&x| x >= file.field.order()) {
        return usage(format!("vector needs {} entries in [0, {})", file.dim, file.field.order()));
    }
    if v.iter().all(|&x| x == 0) {
        return usage("the zero vector is not a point");
    }
    Ok(v)
}

fn yes(b: bool) -> &'static str {
    if b {
        "HOLDS"
    } else {
        "fails"
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serialisable"));
}

/// Runs one command; returns the process exit status.
fn execute(cli: Cli) -> Result<i32> {
    let json_out = cli.json;
    match cli.command {
        Command::Count { n, q, disc } => {
            let f = field_of_order(q)?;
            if f.characteristic() == 2 {
                return usage("only odd characteristic is supported");
            }
            let discs = match disc {
                Some(Disc::Square) => vec![SquareClass::Square],
                Some(Disc::Nonsquare) => vec![SquareClass::NonSquare],
                None => vec![SquareClass::Square, SquareClass::NonSquare],
            };
            let mut rows = Vec::new();
            let mut ok = true;
            for d in discs {
                let space = standard_space(n, &f, d)?;
                for gamma in f.elements() {
                    let c = space.count_norm_vectors(gamma, false)?;
                    ok &= c.agrees();
                    rows.push((d, c));
                }
            }
            if json_out {
                let v: Vec<_> = rows.iter().map(|(d, c)| json!({ "disc": format!("{d:?}"), "count": c })).collect();
                print_json(&json!(v));
            } else {
                for (d, c) in &rows {
                    let ex = c.exhaustive.map_or("-".to_string(), |e| e.to_string());
                    println!("{d:?} γ={}: closed form {} exhaustive {ex}", c.gamma, c.closed_form);
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Higman { m, xi } => {
            let p = odd_orthogonal_params(m, parse_sign(&xi)?).map_err(|e| UsageError(e.to_string()))?;
            if json_out {
                print_json(&json!(p));
            } else {
                println!("({},{},{},{},{},{},{},{},{})", p.total, p.k, p.l, p.lambda, p.mu, p.s, p.t, p.f_s, p.f_t);
            }
            Ok(0)
        }
        Command::CheckEq { m, xi, c, d } => {
            let cd = CdPair::new(c, d, parse_sign(&xi)?);
            let v = EqVerdicts::compute(m, cd).map_err(|e| UsageError(e.to_string()))?;
            if json_out {
                print_json(&json!(v));
            } else {
                println!("r=t: {}; r=s: {}", yes(v.eq1(Eigen::T)), yes(v.eq1(Eigen::S)));
                println!(
                    "c-2d identity: {}; quadratic identity: {}; orbit-size bound: {}",
                    yes(v.eq2),
                    yes(v.eq3),
                    yes(v.eq4)
                );
            }
            Ok(0)
        }
        Command::Construct { label, list } => {
            if list || label.is_none() {
                let all = labels();
                if json_out {
                    print_json(&json!(all));
                } else {
                    all.iter().for_each(|l| println!("{l}"));
                }
                return Ok(0);
            }
            let label = label.unwrap_or_default();
            let case = build(&label).map_err(|e| UsageError(e.to_string()))?;
            let mut bases = Vec::new();
            for b in &case.base_points {
                let ty = base_type(&case.space, &b.vector)?.map(|s| s.symbol().to_string());
                bases.push(json!({ "name": b.name, "vector": b.vector, "type": ty }));
            }
            if json_out {
                print_json(&json!({
                    "label": case.label,
                    "citation": case.citation,
                    "dim": case.space.dim(),
                    "field": case.space.field().order(),
                    "gens": case.group.gens().len(),
                    "bases": bases,
                }));
            } else {
                println!("{}: {}", case.label, case.citation);
                println!(
                    "dim {} over GF({}), {} generators",
                    case.space.dim(),
                    case.space.field().order(),
                    case.group.gens().len()
                );
                for b in &bases {
                    println!("base {} type {}", b["name"].as_str().unwrap_or(""), b["type"].as_str().unwrap_or("n/a"));
                }
            }
            Ok(0)
        }
        Command::Orbit { file, vector } => {
            let g = load(&file)?;
            let v = parse_vector(&g, &vector)?;
            let o = orbit(&g.group(), &v)?;
            if json_out {
                print_json(&json!({ "orbit_size": o.len() }));
            } else {
                println!("{}", o.len());
            }
            Ok(0)
        }
        Command::Cd { file, vector } => {
            let g = load(&file)?;
            let v = parse_vector(&g, &vector)?;
            let space = reproduce::space_for(&g)?;
            let mut r = cd_parameters(&space, &g.group(), &v)?;
            r.stats = Default::default();
            if json_out {
                print_json(&json!({
                    "base": r.base,
                    "type": r.xi.map(|s| s.symbol().to_string()),
                    "orbit_size": r.orbit_size,
                    "c": r.c,
                    "d": r.d,
                    "verdicts": r.verdicts,
                }));
            } else {
                let ty = r.xi.map_or("n/a".to_string(), |s| s.symbol().to_string());
                println!("orbit {} c={} d={} type {ty}", r.orbit_size, r.c, r.d);
                if let Some(v) = r.verdicts {
                    println!("r=t: {}; r=s: {}", yes(v.eq1(Eigen::T)), yes(v.eq1(Eigen::S)));
                    println!(
                        "c-2d identity: {}; quadratic identity: {}; orbit-size bound: {}",
                        yes(v.eq2),
                        yes(v.eq3),
                        yes(v.eq4)
                    );
                }
            }
            Ok(0)
        }
        Command::Mullineux { partition, p } => {
            let l: Partition =
                partition.parse().map_err(|e: rank3_mullineux::MullineuxError| UsageError(e.to_string()))?;
            let m = mullineux_map(&l, p).map_err(|e| UsageError(e.to_string()))?;
            let parts: Vec<String> = m.parts().iter().map(u32::to_string).collect();
            if json_out {
                print_json(&json!({ "partition": l.parts(), "image": m.parts() }));
            } else {
                println!("{}", parts.join(","));
            }
            Ok(0)
        }
        Command::Split { file, seed, out } => {
            let g = load(&file)?;
            let module = GModule::new(g.field.clone(), g.dim, g.gens.clone())?;
            let factors = composition_factors(&module, seed)?;
            let stem = file.file_stem().and_then(|s| s.to_str()).unwrap_or("module").to_string();
            let mut written = Vec::new();
            if let Some(dir) = &out {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (i, fac) in factors.iter().enumerate() {
                    let m = &fac.module;
                    let form = invariant_bilinear_form(m).ok().filter(|b| b.det(m.field()) != 0);
                    let gf = GeneratorFile {
                        field: m.field().clone(),
                        dim: m.dim(),
                        gens: m.gens().to_vec(),
                        form,
                        bases: Vec::new(),
                        meta: vec![(
                            "factor-of".into(),
                            format!("{} dim {} multiplicity {}", file.display(), m.dim(), fac.multiplicity),
                        )],
                    };
                    let path = dir.join(format!("{stem}-factor-{}.gen", i + 1));
                    std::fs::write(&path, gf.to_text()).with_context(|| format!("writing {}", path.display()))?;
                    written.push(path.display().to_string());
                }
            }
            if json_out {
                let v: Vec<_> =
                    factors.iter().map(|c| json!({ "dim": c.dim(), "multiplicity": c.multiplicity })).collect();
                print_json(&json!({ "factors": v, "written": written }));
            } else {
                for c in &factors {
                    println!("dim {} multiplicity {}", c.dim(), c.multiplicity);
                }
                written.iter().for_each(|p| println!("wrote {p}"));
            }
            Ok(0)
        }
        Command::Reproduce { tier, ingest_dir, timing } => {
            let tier = match tier {
                TierArg::Core => Tier::Core,
                TierArg::Heavy => Tier::Heavy,
                TierArg::Ingest => Tier::Ingest,
            };
            let report = run_reproduction_suite(tier, &Options { ingest_dir, timing });
            if json_out {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Export { label, output } => {
            let case = build(&label).map_err(|e| UsageError(e.to_string()))?;
            let text = GeneratorFile::from_case(&case).to_text();
            match output {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

/// Exit status for an error: 2 for bad input, 1 otherwise.
pub fn exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<UsageError>().is_some() || e.downcast_ref::<GenFileError>().is_some() {
        2
    } else {
        1
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
