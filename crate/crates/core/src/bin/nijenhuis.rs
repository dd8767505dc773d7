use std::collections::HashSet;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use nijenhuis::checks::{associativity_sweep, nijenhuis_sweep, SweepReport};
use nijenhuis::enveloping::{
    alphabet_of, check_ndendriform_fd, check_nijenhuis_fd, check_ns_axioms, default_names,
    enveloping_generators, evaluate_hom, induced_ns, AlgebraFile, IdealSpan, MapFile, Membership,
    NSAlgebraFD, NSFile, NijenhuisAlgebraFD, Report,
};
use nijenhuis::expr::{eval_str, parse_generator_list, JsonLinComb};
use nijenhuis::matrix::{in_span, subspace_equal, Vector};
use nijenhuis::relations::{
    check_relation_universal, ndendriform_relation_set, ns_relation_set, relation_system,
    solve_relation_space, RelVector,
};
use nijenhuis::{LinComb, Symbol};

#[derive(Parser)]
#[command(
    name = "nijenhuis",
    version,
    about = "Computations in free Nijenhuis algebras"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Declared generator names, comma separated.
    #[arg(long, global = true, value_name = "x,y,z")]
    generators: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two expressions.
    Mul { left: String, right: String },
    /// Evaluate an expression to normal form.
    Eval { expr: String },
    /// Check associativity on all triples of basis words.
    AssocCheck {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value = "x,y")]
        alphabet: String,
    },
    /// Check the Nijenhuis identity for the bracket operator on all pairs.
    NijenhuisCheck {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value = "x,y")]
        alphabet: String,
    },
    /// Verify the NS relations on free generators.
    NsCheck,
    /// Verify the N-dendriform relations on free generators.
    NdendCheck,
    /// Solve for every quadratic relation the induced operations satisfy.
    SolveRelspace,
    /// Print the enveloping-ideal generators of an algebra file.
    EnvGenerators { file: String },
    /// Check the axioms of an algebra file.
    FdCheck { file: String },
    /// Print the NS algebra induced by a Nijenhuis algebra file.
    InduceNs { file: String },
    /// Evaluate an expression in a Nijenhuis algebra under a generator map.
    EvalHom {
        file: String,
        mapfile: String,
        expr: String,
    },
    /// Search the truncated enveloping ideal for an expression.
    IdealMember {
        file: String,
        expr: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
}

/// Exit 1 with a message: a check ran and failed.
struct Failure(String);

enum CliError {
    Usage(String),
    Check(Failure),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn fail(msg: impl Into<String>) -> CliError {
    CliError::Check(Failure(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Check(Failure(msg))) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cap(bound: usize) -> usize {
    std::env::var("NF_MAX_SIZE")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map_or(bound, |m| bound.min(m))
}

fn declared(cli: &Cli, default: &[Symbol]) -> Result<Vec<Symbol>, CliError> {
    match &cli.generators {
        Some(list) => Ok(parse_generator_list(list)?),
        None => Ok(default.to_vec()),
    }
}

fn xyz() -> Vec<Symbol> {
    parse_generator_list("x,y,z").expect("valid names")
}

fn lincomb_json(a: &LinComb) -> Value {
    serde_json::to_value(JsonLinComb::from(a)).expect("serializable")
}

fn print_lincomb(cli: &Cli, a: &LinComb) {
    if cli.json {
        println!("{}", lincomb_json(a));
    } else {
        println!("{a}");
    }
}

fn print_sweep(cli: &Cli, r: &SweepReport) -> CliResult {
    if cli.json {
        println!(
            "{}",
            json!({"check": r.name, "pass": r.passed(), "checked": r.checked, "counterexample": r.failure})
        );
    } else {
        println!("{r}");
    }
    if r.passed() {
        Ok(())
    } else {
        Err(fail(format!("{} failed", r.name)))
    }
}

fn read_algebra(path: &str) -> Result<AlgebraFile, CliError> {
    let text =
        fs::read_to_string(Path::new(path)).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

fn read_nijenhuis(path: &str) -> Result<NijenhuisAlgebraFD, CliError> {
    match read_algebra(path)? {
        AlgebraFile::Nijenhuis(f) => Ok(NijenhuisAlgebraFD::try_from(f)?),
        AlgebraFile::NS(_) => Err(CliError::Usage(format!(
            "{path}: expected a Nijenhuis algebra"
        ))),
    }
}

/// An NS algebra file as is, or the NS algebra induced by a Nijenhuis file.
fn read_ns(path: &str) -> Result<NSAlgebraFD, CliError> {
    match read_algebra(path)? {
        AlgebraFile::NS(f) => Ok(NSAlgebraFD::try_from(f)?),
        AlgebraFile::Nijenhuis(f) => {
            let n = NijenhuisAlgebraFD::try_from(f)?;
            induced_ns(&n).map_err(|e| fail(e.to_string()))
        }
    }
}

fn relation_report(cli: &Cli, name: &str, rels: &[RelVector]) -> CliResult {
    let results: Vec<bool> = rels.iter().map(check_relation_universal).collect();
    if cli.json {
        let items: Vec<Value> = rels
            .iter()
            .zip(&results)
            .map(|(r, ok)| json!({"relation": r.to_string(), "vector": r, "holds": ok}))
            .collect();
        println!(
            "{}",
            json!({"check": name, "pass": results.iter().all(|b| *b), "relations": items})
        );
    } else {
        for (i, (r, ok)) in rels.iter().zip(&results).enumerate() {
            println!(
                "{} relation {}: {}  [{r}]",
                name,
                i + 1,
                if *ok { "holds" } else { "FAILS" }
            );
        }
    }
    if results.iter().all(|b| *b) {
        Ok(())
    } else {
        Err(fail(format!(
            "{name}: some relation fails on free generators"
        )))
    }
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Mul { left, right } => {
            let d: HashSet<Symbol> = declared(cli, &xyz())?.into_iter().collect();
            let a = eval_str(left, &d)?;
            let b = eval_str(right, &d)?;
            print_lincomb(cli, &nijenhuis::product(&a, &b));
        }
        Command::Eval { expr } => {
            let d: HashSet<Symbol> = declared(cli, &xyz())?.into_iter().collect();
            print_lincomb(cli, &eval_str(expr, &d)?);
        }
        Command::AssocCheck { max_size, alphabet } => {
            let alpha = parse_generator_list(alphabet)?;
            print_sweep(cli, &associativity_sweep(&alpha, cap(*max_size)))?;
        }
        Command::NijenhuisCheck { max_size, alphabet } => {
            let alpha = parse_generator_list(alphabet)?;
            print_sweep(cli, &nijenhuis_sweep(&alpha, cap(*max_size)))?;
        }
        Command::NsCheck => relation_report(cli, "ns", &ns_relation_set())?,
        Command::NdendCheck => relation_report(cli, "n-dendriform", &ndendriform_relation_set())?,
        Command::SolveRelspace => solve_relspace(cli)?,
        Command::EnvGenerators { file } => {
            let m = read_ns(file)?;
            let names = declared(cli, &default_names(m.dim()))?;
            let gens = enveloping_generators(&m, &names)?;
            if cli.json {
                let items: Vec<Value> = gens.iter().map(lincomb_json).collect();
                println!("{}", json!({"count": gens.len(), "generators": items}));
            } else {
                for g in &gens {
                    println!("{g}");
                }
            }
        }
        Command::FdCheck { file } => fd_check(cli, file)?,
        Command::InduceNs { file } => {
            let n = read_nijenhuis(file)?;
            let m = induced_ns(&n).map_err(|e| fail(e.to_string()))?;
            let out = serde_json::to_string_pretty(&NSFile::from(&m))?;
            println!("{out}");
        }
        Command::EvalHom {
            file,
            mapfile,
            expr,
        } => {
            let n = read_nijenhuis(file)?;
            let text = fs::read_to_string(mapfile)
                .map_err(|e| CliError::Usage(format!("{mapfile}: {e}")))?;
            let map: MapFile = serde_json::from_str(&text)?;
            let (names, f) = map.into_parts(n.dim())?;
            let d: HashSet<Symbol> = names.iter().cloned().collect();
            let a = eval_str(expr, &d)?;
            let v = evaluate_hom(&n, &f, &names, &a)?;
            if cli.json {
                println!("{}", json!({"vector": v}));
            } else {
                let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                println!("[{}]", parts.join(", "));
            }
        }
        Command::IdealMember { file, expr, bound } => {
            let m = read_ns(file)?;
            let names = declared(cli, &default_names(m.dim()))?;
            let gens = enveloping_generators(&m, &names)?;
            let d: HashSet<Symbol> = names.iter().cloned().collect();
            let candidate = eval_str(expr, &d)?;
            let bound = cap(*bound);
            let mut alphabet = names.clone();
            alphabet.extend(alphabet_of([&candidate]));
            alphabet.sort();
            alphabet.dedup();
            let span = IdealSpan::new(&gens, &alphabet, bound);
            let verdict = span.contains(&candidate)?;
            let member = verdict == Membership::Member;
            if cli.json {
                println!(
                    "{}",
                    json!({"member": member, "verdict": if member { "Member" } else { "NotDetected" },
                           "bound": bound, "span_dimension": span.dimension()})
                );
            } else {
                println!(
                    "{} (bound {bound}, truncated ideal dimension {})",
                    if member { "Member" } else { "NotDetected" },
                    span.dimension()
                );
            }
        }
    }
    Ok(())
}

fn solve_relspace(cli: &Cli) -> CliResult {
    let sys = relation_system();
    let basis = solve_relation_space();
    let coords: Vec<Vector> = basis.iter().map(RelVector::coords).collect();
    let nd: Vec<Vector> = ndendriform_relation_set()
        .iter()
        .map(RelVector::coords)
        .collect();
    let matches = subspace_equal(&coords, &nd)?;
    let ns_inside = ns_relation_set()
        .iter()
        .map(|r| in_span(&r.coords(), &coords))
        .collect::<Result<Vec<bool>, _>>()?
        .into_iter()
        .all(|b| b);
    if cli.json {
        let monomials: Vec<&str> = sys.monomials.iter().map(|w| w.canonical()).collect();
        println!(
            "{}",
            json!({
                "dimension": basis.len(),
                "basis": basis,
                "monomials": monomials,
                "matrix": sys.matrix,
                "equals_ndendriform": matches,
                "contains_ns": ns_inside,
            })
        );
    } else {
        println!(
            "coefficient system: {} monomials x {} coordinates",
            sys.matrix.rows(),
            sys.matrix.cols()
        );
        println!("relation space dimension: {}", basis.len());
        for (i, r) in basis.iter().enumerate() {
            println!("  {}: {r}", i + 1);
        }
        println!("equals N-dendriform span: {matches}");
        println!("contains NS relations: {ns_inside}");
    }
    if matches && ns_inside {
        Ok(())
    } else {
        Err(fail("relation space differs from the expected span"))
    }
}

fn fd_check(cli: &Cli, file: &str) -> CliResult {
    let reports: Vec<(&str, Report)> = match read_algebra(file)? {
        AlgebraFile::Nijenhuis(f) => {
            let n = NijenhuisAlgebraFD::try_from(f)?;
            let base = check_nijenhuis_fd(&n);
            let mut out = vec![("nijenhuis", base.clone())];
            if base.is_pass() {
                let m = induced_ns(&n).map_err(|e| fail(e.to_string()))?;
                out.push(("induced ns", check_ns_axioms(&m)));
                out.push(("induced n-dendriform", check_ndendriform_fd(&m)));
            }
            out
        }
        AlgebraFile::NS(f) => {
            let m = NSAlgebraFD::try_from(f)?;
            vec![("ns", check_ns_axioms(&m))]
        }
    };
    if cli.json {
        let items: Vec<Value> = reports
            .iter()
            .map(|(name, r)| json!({"check": name, "pass": r.is_pass(), "report": r.to_string()}))
            .collect();
        println!(
            "{}",
            json!({"pass": reports.iter().all(|(_, r)| r.is_pass()), "checks": items})
        );
    } else {
        for (name, r) in &reports {
            println!("{name}: {r}");
        }
    }
    match reports.iter().find(|(_, r)| !r.is_pass()) {
        None => Ok(()),
        Some((name, r)) => Err(fail(format!("{name}: {r}"))),
    }
}
