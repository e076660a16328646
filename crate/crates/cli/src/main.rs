//! `hyperorient`: solve, reduce, verify and query hypergraph instances.
//!
//! Exit codes: 0 yes or valid, 1 no or invalid, 2 usage, input or scale-guard error.

mod selftest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hyperorient::connectivity::{lambda_dyper, lambda_dyper_brute, lambda_hyper, lambda_hyper_brute};
use hyperorient::format::{parse_hypergraph, parse_orientation, write_hypergraph, write_orientation};
use hyperorient::orient::{
    is_well_balanced, solve_srcoh, srcoh_oracle, sscoh_exhaustive, wboh_exhaustive, SrcohInstance,
};
use hyperorient::reductions::{
    assignment_to_hypertree, assignment_to_orientation, b2sat_to_wboh, hypertree_to_assignment,
    orientation_to_assignment, sat_to_sht, srcoh_orientation_to_sscoh, srcoh_to_sscoh,
    sscoh_orientation_to_srcoh, NameMap,
};
use hyperorient::steiner::{sht_oracle, solve_sht, verify_sht_certificate, SOLVE_MAX_TERMINALS};
use hyperorient::{orient, Assignment, CnfFormula, Error, Hypergraph, ShtCertificate, VertexId};

#[derive(Parser)]
#[command(name = "hyperorient", version, about = "Steiner hypertrees and hypergraph orientations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Is there a subhypergraph that trims to a tree spanning the terminals?
    Sht {
        #[command(flatten)]
        input: Instance,
        #[command(flatten)]
        solve: SolveOpts,
    },
    /// Is there an orientation in which every terminal is reachable from the root?
    Srcoh {
        #[command(flatten)]
        input: Instance,
        #[arg(long)]
        root: String,
        #[command(flatten)]
        solve: SolveOpts,
    },
    /// Is there an orientation in which the terminals are mutually reachable? (exhaustive)
    Sscoh {
        #[command(flatten)]
        input: Instance,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Check whether an orientation is well-balanced.
    WboCheck {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        orientation: PathBuf,
    },
    /// Search all orientations for a well-balanced one.
    WboSolve {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Local connectivity between two vertices, of the hypergraph or of an orientation.
    Lambda {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Measure the orientation in this file instead of the hypergraph.
        #[arg(long)]
        orientation: Option<PathBuf>,
        /// Enumerate cuts instead of computing a flow.
        #[arg(long)]
        oracle: bool,
    },
    /// Compile an instance through one of the reductions, optionally translating witnesses.
    Reduce(ReduceArgs),
    /// Check a witness against an instance.
    Verify {
        #[command(flatten)]
        input: Instance,
        #[arg(long, value_enum)]
        kind: VerifyKind,
        /// Root vertex, for `--kind srcoh`.
        #[arg(long)]
        root: Option<String>,
        /// Certificate (`sht`) or orientation file.
        #[arg(long)]
        witness: PathBuf,
    },
    /// Cross-check the solvers against the brute-force oracles on random instances.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
        /// Instances per suite.
        #[arg(long, default_value_t = 60)]
        cases: usize,
    },
}

#[derive(clap::Args)]
struct Instance {
    #[arg(long)]
    hypergraph: PathBuf,
    /// Whitespace-separated vertex names.
    #[arg(long, default_value = "")]
    terminals: String,
}

#[derive(clap::Args)]
struct SolveOpts {
    /// Use the brute-force engine.
    #[arg(long)]
    oracle: bool,
    /// Write the witness here.
    #[arg(long)]
    certificate: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    Sat2sht,
    Srcoh2sscoh,
    B2sat2wboh,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Sht,
    Srcoh,
    Sscoh,
    Wbo,
}

#[derive(clap::Args)]
struct ReduceArgs {
    #[arg(long, value_enum)]
    kind: ReduceKind,
    /// DIMACS formula for the SAT reductions, hypergraph for `srcoh2sscoh`.
    #[arg(long)]
    input: PathBuf,
    /// Root vertex name, for `srcoh2sscoh`.
    #[arg(long)]
    root: Option<String>,
    /// Terminal names, for `srcoh2sscoh`.
    #[arg(long, default_value = "")]
    terminals: String,
    /// Where to write the produced hypergraph (stdout if absent).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Where to write the `name kind base` sidecar.
    #[arg(long)]
    names: Option<PathBuf>,
    /// Forward translation for the SAT kinds: a satisfying assignment in DIMACS literals.
    #[arg(long, conflicts_with_all = ["witness", "orientation"])]
    assignment: Option<PathBuf>,
    /// Forward translation for `srcoh2sscoh`: a rooted orientation of the input.
    #[arg(long, conflicts_with = "witness")]
    orientation: Option<PathBuf>,
    /// Backward translation: a certificate or orientation of the produced instance.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Where to write the translated witness (stdout if absent).
    #[arg(long)]
    certificate: Option<PathBuf>,
}

/// A decided question; the exit code is its only machine contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Yes,
    No,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph> {
    parse_hypergraph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_formula(path: &Path) -> Result<CnfFormula> {
    CnfFormula::parse_dimacs(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn names_of(h: &Hypergraph, set: impl IntoIterator<Item = VertexId>) -> String {
    set.into_iter().map(|v| h.name(v)).collect::<Vec<_>>().join(" ")
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Sht { input, solve } => {
            let h = load_hypergraph(&input.hypergraph)?;
            let s = h.names().resolve_set(&input.terminals)?;
            let cert = if solve.oracle {
                sht_oracle(&h, &s)?
            } else if s.len() > SOLVE_MAX_TERMINALS {
                eprintln!("note: {} terminals exceed the solver limit of {SOLVE_MAX_TERMINALS}; using the exhaustive engine", s.len());
                sht_oracle(&h, &s)?
            } else {
                solve_sht(&h, &s)?
            };
            report_witness(cert.map(|c| c.to_text(&h)), solve.certificate.as_deref())
        }
        Command::Srcoh { input, root, solve } => {
            let h = load_hypergraph(&input.hypergraph)?;
            let s = h.names().resolve_set(&input.terminals)?;
            let r = h.names().resolve(&root)?;
            let inst = SrcohInstance::new(h, r, s)?;
            let rooted = inst.rooted_terminals().len();
            let o = if solve.oracle {
                srcoh_oracle(&inst)?
            } else if rooted > SOLVE_MAX_TERMINALS {
                eprintln!("note: {rooted} terminals with the root exceed the solver limit of {SOLVE_MAX_TERMINALS}; using the exhaustive engine");
                srcoh_oracle(&inst)?
            } else {
                solve_srcoh(&inst)?
            };
            report_witness(o.map(|o| write_orientation(&inst.h, &o)), solve.certificate.as_deref())
        }
        Command::Sscoh { input, certificate } => {
            let h = load_hypergraph(&input.hypergraph)?;
            let s = h.names().resolve_set(&input.terminals)?;
            let o = sscoh_exhaustive(&h, &s)?;
            report_witness(o.map(|o| write_orientation(&h, &o)), certificate.as_deref())
        }
        Command::WboCheck { hypergraph, orientation } => {
            let h = load_hypergraph(&hypergraph)?;
            let o = parse_orientation(&read(&orientation)?, &h).with_context(|| format!("in {}", orientation.display()))?;
            let report = is_well_balanced(&h, &o)?;
            match report.witness {
                None => println!("YES well-balanced"),
                Some(w) => println!(
                    "NO λ_orient({}, {}) = {} < ⌊{}/2⌋",
                    h.name(w.u),
                    h.name(w.v),
                    w.lambda_orientation,
                    w.lambda_hypergraph
                ),
            }
            Ok(report.verdict.into())
        }
        Command::WboSolve { hypergraph, certificate } => {
            let h = load_hypergraph(&hypergraph)?;
            let o = wboh_exhaustive(&h)?;
            report_witness(o.map(|o| write_orientation(&h, &o)), certificate.as_deref())
        }
        Command::Lambda { hypergraph, from, to, orientation, oracle } => {
            let h = load_hypergraph(&hypergraph)?;
            let (u, v) = (h.names().resolve(&from)?, h.names().resolve(&to)?);
            let value = match orientation {
                None if oracle => lambda_hyper_brute(&h, u, v)?,
                None => lambda_hyper(&h, u, v)?,
                Some(path) => {
                    let o = parse_orientation(&read(&path)?, &h).with_context(|| format!("in {}", path.display()))?;
                    let d = orient(&h, &o)?;
                    if oracle {
                        lambda_dyper_brute(&d, u, v)?
                    } else {
                        lambda_dyper(&d, u, v)?
                    }
                }
            };
            println!("{value}");
            Ok(Verdict::Yes)
        }
        Command::Reduce(args) => reduce(args),
        Command::Verify { input, kind, root, witness } => {
            let h = load_hypergraph(&input.hypergraph)?;
            let s = h.names().resolve_set(&input.terminals)?;
            let text = read(&witness)?;
            let valid = match kind {
                VerifyKind::Sht => {
                    let cert = ShtCertificate::parse(&text, &h).with_context(|| format!("in {}", witness.display()))?;
                    verify_sht_certificate(&h, &s, &cert)
                }
                VerifyKind::Srcoh => {
                    let Some(root) = root else { bail!("--kind srcoh needs --root") };
                    let r = h.names().resolve(&root)?;
                    let o = parse_orientation(&text, &h)?;
                    SrcohInstance::new(h, r, s)?.is_satisfied_by(&o)?
                }
                VerifyKind::Sscoh => {
                    let o = parse_orientation(&text, &h)?;
                    hyperorient::connectivity::strongly_connected_in(&orient(&h, &o)?, &s)
                }
                VerifyKind::Wbo => is_well_balanced(&h, &parse_orientation(&text, &h)?)?.verdict,
            };
            println!("{}", if valid { "VALID" } else { "INVALID" });
            Ok(valid.into())
        }
        Command::Selftest { seed, cases } => selftest::run(seed, cases),
    }
}

fn report_witness(witness: Option<String>, path: Option<&Path>) -> Result<Verdict> {
    match witness {
        Some(text) => {
            println!("YES");
            emit(path, &text)?;
            Ok(Verdict::Yes)
        }
        None => {
            println!("NO");
            Ok(Verdict::No)
        }
    }
}

/// Translation failures caused by the supplied witness are a "no", everything else an error.
fn translated(result: hyperorient::Result<String>, out: Option<&Path>) -> Result<Verdict> {
    match result {
        Ok(text) => {
            emit(out, &text)?;
            Ok(Verdict::Yes)
        }
        Err(e @ (Error::InvalidWitness(_) | Error::ConstructionFailure(_))) => {
            eprintln!("rejected: {e}");
            Ok(Verdict::No)
        }
        Err(e) => Err(e.into()),
    }
}

fn reduce(args: ReduceArgs) -> Result<Verdict> {
    let out = args.certificate.as_deref();
    let (h, terminals, names) = match args.kind {
        ReduceKind::Sat2sht => {
            let f = load_formula(&args.input)?;
            let map = sat_to_sht(&f)?;
            if let Some(path) = &args.assignment {
                let phi = Assignment::parse(&read(path)?, f.var_count())?;
                return translated(assignment_to_hypertree(&map, &phi).map(|c| c.to_text(&map.hypergraph)), out);
            }
            if let Some(path) = &args.witness {
                let cert = ShtCertificate::parse(&read(path)?, &map.hypergraph)?;
                return translated(hypertree_to_assignment(&map, &cert).map(|a| a.to_dimacs() + "\n"), out);
            }
            let terminals = Some(names_of(&map.hypergraph, map.terminals.iter().copied()));
            (map.hypergraph, terminals, map.names)
        }
        ReduceKind::B2sat2wboh => {
            let f = load_formula(&args.input)?;
            let map = b2sat_to_wboh(&f)?;
            if let Some(path) = &args.assignment {
                let phi = Assignment::parse(&read(path)?, f.var_count())?;
                return translated(
                    assignment_to_orientation(&map, &phi).map(|o| write_orientation(&map.hypergraph, &o)),
                    out,
                );
            }
            if let Some(path) = &args.witness {
                let o = parse_orientation(&read(path)?, &map.hypergraph)?;
                return translated(orientation_to_assignment(&map, &o).map(|a| a.to_dimacs() + "\n"), out);
            }
            (map.hypergraph, None, map.names)
        }
        ReduceKind::Srcoh2sscoh => {
            let h = load_hypergraph(&args.input)?;
            let Some(root) = &args.root else { bail!("srcoh2sscoh needs --root") };
            let r = h.names().resolve(root)?;
            let s = h.names().resolve_set(&args.terminals)?;
            let inst = SrcohInstance::new(h, r, s)?;
            let red = srcoh_to_sscoh(&inst)?;
            if let Some(path) = &args.orientation {
                let o = parse_orientation(&read(path)?, &inst.h)?;
                if !inst.is_satisfied_by(&o)? {
                    eprintln!("rejected: orientation does not reach every terminal from the root");
                    return Ok(Verdict::No);
                }
                return translated(Ok(write_orientation(&red.hypergraph, &srcoh_orientation_to_sscoh(&red, &o))), out);
            }
            if let Some(path) = &args.witness {
                let o = parse_orientation(&read(path)?, &red.hypergraph)?;
                if !hyperorient::connectivity::strongly_connected_in(&orient(&red.hypergraph, &o)?, &red.terminals) {
                    eprintln!("rejected: orientation is not strongly connected on the terminals");
                    return Ok(Verdict::No);
                }
                return translated(sscoh_orientation_to_srcoh(&red, &o).map(|o| write_orientation(&inst.h, &o)), out);
            }
            let mut names = NameMap::default();
            for v in 0..red.hypergraph.n() {
                let kind = if v == red.root { "root" } else if red.terminals.contains(&v) { "terminal" } else { "vertex" };
                names.entries.push(hyperorient::reductions::NameEntry {
                    name: red.hypergraph.name(v).to_string(),
                    kind: kind.to_string(),
                    base: "-".to_string(),
                });
            }
            let terminals = Some(names_of(&red.hypergraph, red.terminals.iter().copied()));
            (red.hypergraph, terminals, names)
        }
    };
    let mut text = String::new();
    if let Some(t) = &terminals {
        text.push_str(&format!("# terminals: {t}\n"));
    }
    text.push_str(&write_hypergraph(&h));
    emit(args.output.as_deref(), &text)?;
    if let Some(path) = &args.names {
        fs::write(path, names.to_text()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    if let (Some(t), Some(_)) = (&terminals, &args.output) {
        println!("terminals: {t}");
    }
    Ok(Verdict::Yes)
}
