use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use prismatic_core::algebra::AlexanderFamily;
use prismatic_core::chain::{homology, Complex, HomologyOptions, DEFAULT_GENERATOR_CAP};
use prismatic_core::cocycle::{
    lift_cocycle, verify_bq_cocycle, verify_mcb_cocycle, AlexanderCocycle, AlexanderKind, Coefficients,
    MultilinearForm, TableCochain, VerifyOptions, DEFAULT_SAMPLES,
};
use prismatic_core::coloring::{count_colorings, enumerate_colorings, DEFAULT_NODE_BUDGET};
use prismatic_core::invariant::{mirror_check, phi_invariant};
use prismatic_core::io::{load_biquandle, load_bq_cocycle, load_cochain, load_diagram, load_mcb, load_xset, read_text};
use prismatic_core::mcb::{verify_mcb, verify_mcb_sampled, verify_xset};
use prismatic_core::registry::{self, AnyMcb};
use prismatic_core::{Chain, Error, Mcb, SearchOptions, XSetAction};

/// Multiple conjugation biquandles and cocycle invariants of handlebody-links.
#[derive(Parser)]
#[command(name = "prismatic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cap on coloring search nodes.
    #[arg(long, global = true, env = "PRISMATIC_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,

    /// Cap on generators for homology and exhaustive cocycle checks.
    #[arg(long, global = true, env = "PRISMATIC_GENERATOR_CAP", default_value_t = DEFAULT_GENERATOR_CAP)]
    generator_cap: usize,

    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Built-in name (see `prismatic names`) or a JSON table file.
    #[arg(long)]
    algebra: String,
    /// X-set: trivial, self-under, self-over, index, or a JSON action table.
    #[arg(long)]
    xset: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of an MCB (and of an X-set) or of a biquandle.
    Verify {
        #[arg(long, conflicts_with = "biquandle", required_unless_present = "biquandle")]
        algebra: Option<String>,
        #[arg(long)]
        xset: Option<String>,
        #[arg(long)]
        biquandle: Option<String>,
        /// Random instances per axiom when the carrier is too large to scan.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The type of a biquandle, optionally with an X-set (`trivial`, `under`, or a file).
    Type {
        #[arg(long)]
        biquandle: String,
        #[arg(long)]
        xset: Option<String>,
    },
    /// Count or list the colorings of a diagram.
    Colorings {
        #[arg(long)]
        diagram: PathBuf,
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        count_only: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// The cocycle invariant: each value with its number of colorings.
    Invariant {
        #[arg(long)]
        diagram: PathBuf,
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        cocycle: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Integral (or mod m) homology of the normalized complex.
    Homology {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long = "mod", default_value_t = 0)]
        modulus: u64,
    },
    /// The boundary of a chain given as JSON.
    Boundary {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Lift a biquandle cocycle file to an MCB cocycle on X × Z_type.
    LiftCocycle {
        #[arg(long)]
        cocycle: PathBuf,
        /// Where to write the lifted cochain (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the lifted X-set table.
        #[arg(long)]
        xset_out: Option<PathBuf>,
    },
    /// Tabulate an Alexander-family cocycle.
    MakeCocycle {
        /// Family: sl2z6-det-example, sl2z2, unipotent:P[:K].
        #[arg(long)]
        family: String,
        /// 1, 2 or 2p.
        #[arg(long, default_value = "1")]
        kind: AlexanderKind,
        /// det (kind 1) or det-first (det(u, v)·w₀, kinds 2 and 2p).
        #[arg(long, default_value = "det")]
        form: String,
        /// Comma-separated values of λ on G, `zero` or `det-example`.
        #[arg(long, default_value = "zero")]
        lambda: String,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the invariant of a diagram with that of its mirror image.
    MirrorCheck {
        #[arg(long)]
        diagram: PathBuf,
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        cocycle: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check that a cochain is a cocycle of the normalized complex.
    VerifyCocycle {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        cocycle: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// List the built-in names.
    Names,
}

const NAMES: &str = "\
algebras:
  trivial-group
  trivial:N
  dihedral:N                     X x Z_t from the dihedral quandle R_N
  parallel:B                     the same for any built-in biquandle B
  conjugation:G                  G = cyclic:N, dihedral:N, s3, sl2:N
  alexander:sl2z6-det-example
  alexander:sl2z2
  alexander:unipotent:P[:K]
biquandles:
  trivial:N  dihedral:N  alexander:N:T:S
x-sets:
  trivial  self-under  self-over  index
cocycles:
  phi-det                        on alexander:sl2z6-det-example
  zero:N";

/// Largest carrier whose MCB axioms are scanned exhaustively.
const EXHAUSTIVE_CARRIER: usize = 600;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Axiom(_) => 2,
        Error::Budget(_) => 3,
        Error::Structural(_) | Error::Diagram(_) | Error::Json(_) => 4,
        Error::Io(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("prismatic: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output serialises")
}

fn algebra(a: &AlgebraArgs) -> Result<(AnyMcb, Option<XSetAction>), Error> {
    let m = load_mcb(&a.algebra)?;
    let ys = a.xset.as_deref().map(|y| load_xset(y, &m)).transpose()?;
    if let Some(ys) = &ys {
        let r = verify_xset(ys, &m);
        if let Some(c) = r.first_failure() {
            return Err(Error::Axiom(format!("X-set fails {} at {:?}", c.name, c.witness)));
        }
    }
    Ok((m, ys))
}

fn search(cli: &Cli, jobs: usize) -> SearchOptions {
    SearchOptions { node_budget: cli.node_budget, jobs: jobs.max(1), ..Default::default() }
}

fn trivial_or(ys: &Option<XSetAction>, m: &AnyMcb) -> XSetAction {
    ys.clone().unwrap_or_else(|| XSetAction::trivial(m.size()))
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Names => println!("{NAMES}"),
        Command::Verify { algebra, xset, biquandle, samples, seed } => {
            let report = match (algebra, biquandle) {
                (_, Some(b)) => load_biquandle(b)?.verify(),
                (Some(a), None) => {
                    let m = load_mcb(a)?;
                    let mut r = if m.size() <= EXHAUSTIVE_CARRIER {
                        verify_mcb(&m)
                    } else {
                        verify_mcb_sampled(&m, *samples, *seed)
                    };
                    if let Some(y) = xset {
                        r.merge(verify_xset(&load_xset(y, &m)?, &m));
                    }
                    r
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            if cli.json {
                println!("{}", json(&report));
            } else {
                print!("{report}");
            }
            if let Some(c) = report.first_failure() {
                return Err(Error::Axiom(format!("{} fails at {:?}", c.name, c.witness)));
            }
        }
        Command::Type { biquandle, xset } => {
            let x = load_biquandle(biquandle)?;
            let t = match xset.as_deref() {
                None => x.biquandle_type()?,
                Some("trivial") => x.type_with_xset(&XSetAction::trivial(x.size()))?,
                Some("under") => x.type_with_xset(&XSetAction::biquandle_under(&x))?,
                Some(path) => {
                    let t: Vec<Vec<usize>> = serde_json::from_str(&read_text(path)?)?;
                    x.type_with_xset(&XSetAction::from_table(x.size(), &t)?)?
                }
            };
            println!("{t}");
        }
        Command::Colorings { diagram, alg, count_only, jobs } => {
            let d = load_diagram(diagram)?;
            let (m, ys) = algebra(alg)?;
            let opts = search(cli, *jobs);
            if *count_only {
                let n = count_colorings(&d, &m, ys.as_ref(), &opts)?;
                if cli.json {
                    println!("{}", json(&serde_json::json!({ "colorings": n })));
                } else {
                    println!("{n}");
                }
            } else {
                let cs = enumerate_colorings(&d, &m, ys.as_ref(), &opts)?;
                if cli.json {
                    println!("{}", json(&cs));
                } else {
                    for c in &cs {
                        let arcs: Vec<String> = c.arcs.iter().map(|&a| m.label(a as usize)).collect();
                        match &c.regions {
                            Some(r) => println!("{} | {r:?}", arcs.join(" ")),
                            None => println!("{}", arcs.join(" ")),
                        }
                    }
                    eprintln!("{} colorings", cs.len());
                }
            }
        }
        Command::Invariant { diagram, alg, cocycle, jobs } => {
            let d = load_diagram(diagram)?;
            let (m, ys) = algebra(alg)?;
            let th = load_cochain(cocycle, &m, &trivial_or(&ys, &m))?;
            let r = phi_invariant(&d, &m, ys.as_ref(), th.as_ref(), &search(cli, *jobs))?;
            if cli.json {
                println!("{}", r.to_json());
            } else {
                print!("{r}");
            }
        }
        Command::MirrorCheck { diagram, alg, cocycle, jobs } => {
            let d = load_diagram(diagram)?;
            let (m, ys) = algebra(alg)?;
            let th = load_cochain(cocycle, &m, &trivial_or(&ys, &m))?;
            let r = mirror_check(&d, &m, ys.as_ref(), th.as_ref(), &search(cli, *jobs))?;
            if cli.json {
                println!(
                    r#"{{"holds":{},"original":{},"mirrored":{}}}"#,
                    r.holds(),
                    r.original.to_json(),
                    r.mirrored.to_json()
                );
            } else {
                println!("diagram:\n{}mirror:\n{}", r.original, r.mirrored);
                println!("{}", if r.holds() { "mirror image negates the invariant" } else { "MISMATCH" });
            }
            if !r.holds() {
                return Err(Error::Axiom("the mirror invariant is not the negation".into()));
            }
        }
        Command::Homology { alg, degree, modulus } => {
            let (m, ys) = algebra(alg)?;
            let ys = trivial_or(&ys, &m);
            let c = Complex::new(&m, &ys)?;
            let opts = HomologyOptions { generator_cap: cli.generator_cap, ..Default::default() };
            let h = homology(&c, *degree, *modulus, &opts)?;
            if cli.json {
                let torsion: Vec<String> = h.torsion.iter().map(|t| t.to_string()).collect();
                println!("{}", json(&serde_json::json!({ "degree": degree, "free_rank": h.free_rank, "torsion": torsion })));
            } else {
                println!("{h}");
            }
        }
        Command::Boundary { alg, chain } => {
            let (m, ys) = algebra(alg)?;
            let ys = trivial_or(&ys, &m);
            let c = Complex::new(&m, &ys)?;
            let ch = Chain::from_json(&read_text(chain)?)?;
            for (g, _) in ch.iter() {
                g.validate(&m, &ys)?;
            }
            let b = c.boundary_chain(&ch);
            if cli.json {
                println!("{}", b.to_json());
            } else {
                println!("{b}");
            }
        }
        Command::LiftCocycle { cocycle, out, xset_out } => {
            let th = load_bq_cocycle(cocycle)?;
            if let Some(w) = verify_bq_cocycle(&th) {
                return Err(Error::Axiom(format!("not a biquandle cocycle: {w}")));
            }
            let lift = lift_cocycle(&th)?;
            eprintln!("type {}; carrier {}; {} region colors", lift.period, lift.mcb.size(), lift.xset.num_points());
            if let Some(p) = xset_out {
                std::fs::write(p, json(&lift.xset.table()))?;
            }
            emit(&lift.cochain.to_json(), out.as_ref())?;
        }
        Command::MakeCocycle { family, kind, form, lambda, modulus, out } => {
            let th = make_cocycle(family, *kind, form, lambda, *modulus)?;
            let (m, ys) = (th.mcb(), th.xset());
            let entries = (ys.num_points() as u128) * (m.size() as u128).pow(2);
            if entries > 10_000_000 {
                return Err(Error::Budget(format!("table would have {entries} entries (cap 10000000)")));
            }
            let t = TableCochain::tabulate(&th, m.size(), ys.num_points(), std::iter::empty());
            emit(&t.to_json(), out.as_ref())?;
        }
        Command::VerifyCocycle { alg, cocycle, samples, seed } => {
            let (m, ys) = algebra(alg)?;
            let ys = trivial_or(&ys, &m);
            let th = load_cochain(cocycle, &m, &ys)?;
            let c = Complex::new(&m, &ys)?;
            let opts = VerifyOptions { generator_cap: cli.generator_cap, samples: *samples, seed: *seed, force_sampling: false };
            let r = verify_mcb_cocycle(&c, th.as_ref(), &opts)?;
            if cli.json {
                println!(
                    "{}",
                    json(&serde_json::json!({
                        "degree": r.degree,
                        "checked": r.checked,
                        "sampled": r.sampled,
                        "verified": r.verified(),
                        "violation": r.violation.as_ref().map(|v| v.to_string()),
                    }))
                );
            } else {
                println!("{r}");
            }
            if let Some(v) = r.violation {
                return Err(Error::Axiom(v.to_string()));
            }
        }
    }
    Ok(())
}

fn make_cocycle(
    family: &str,
    kind: AlexanderKind,
    form: &str,
    lambda: &str,
    modulus: Option<u64>,
) -> Result<AlexanderCocycle, Error> {
    let fam: AlexanderFamily = registry::alexander_family(family)?;
    let a = Coefficients::cyclic(modulus.unwrap_or(fam.module.modulus as u64));
    let f = match form {
        "det" => MultilinearForm::det(fam.module, a)?,
        "det-first" => {
            if fam.module.dim != 2 {
                return Err(Error::Structural("det-first needs a module of rank 2".into()));
            }
            MultilinearForm::from_fn(fam.module, 3, a, |v| {
                (v[0][0] as i64 * v[1][1] as i64 - v[0][1] as i64 * v[1][0] as i64) * v[2][0] as i64
            })
        }
        _ => return Err(Error::Structural(format!("unknown form {form:?} (use det or det-first)"))),
    };
    let ng = fam.group().order();
    let lambda = match lambda {
        "zero" => vec![0; ng],
        "det-example" => registry::det_example_lambda(),
        list => list
            .split(',')
            .map(|v| v.trim().parse::<i64>().map_err(|_| Error::Structural(format!("bad λ value {v:?}"))))
            .collect::<Result<_, _>>()?,
    };
    AlexanderCocycle::new(kind, fam, f, lambda)
}
