use std::collections::BTreeSet;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use leibniz_cli::io::{read_family, read_map, resolve_lattice, write_family, write_lattice, write_map, BUILTIN_FORMS};
use leibniz_cli::suites::{self, RunConfig, DEFAULT_GUARD, DEFAULT_INSTANCES, DEFAULT_SYMBOLIC_N};
use leibniz_core::lattice::FiniteLattice;
use leibniz_core::shapes::{enumerate_horn, enumerate_simplex, HornSpec, SimplexPoint};
use leibniz_core::symlat::{decide_equal, parse_constraints, parse_term, Bound, OrderContext};

#[derive(Parser)]
#[command(name = "leibniz", version, about = "Finite models of Leibniz constructions and inner horn retracts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect and validate finite lattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// List simplex and horn points.
    #[command(subcommand)]
    Shapes(ShapesCmd),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Print a map file in canonical form.
    #[command(subcommand)]
    Map(ShowCmd),
    /// Print a family file in canonical form.
    #[command(subcommand)]
    Family(ShowCmd),
    /// Decide an equation in all bounded distributive lattices.
    Decide(DecideArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// List the built-in lattice names.
    List,
    /// Check the lattice axioms; exits nonzero on a violation.
    Check {
        source: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the operation tables.
    Show {
        source: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ShapesCmd {
    /// Points of the n-simplex.
    Simplex {
        lattice: String,
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
    /// Points of the (n,k)-horn.
    Horn {
        lattice: String,
        n: usize,
        k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
}

#[derive(Subcommand)]
enum ShowCmd {
    Show {
        file: PathBuf,
        /// Also print the fibers (maps) or the total map (families).
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run: adjunction, fiberwise-join, orthogonality, closure, retract, symbolic or all.
    suite: Option<String>,
    /// Additional suites.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Lattice name or file (repeatable); defaults to C2, C3, C4, B2.
    #[arg(long = "lattice")]
    lattices: Vec<String>,
    /// Largest simplex dimension for the retract suite.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    nmax: Option<u64>,
    /// Largest dimension for the symbolic suite.
    #[arg(long = "n", default_value_t = DEFAULT_SYMBOLIC_N as u64, value_parser = clap::value_parser!(u64).range(1..))]
    symbolic_n: u64,
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    guard: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_INSTANCES)]
    instances: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct DecideArgs {
    lhs: String,
    rhs: String,
    /// Hypotheses such as "x>=y, y>=z".
    #[arg(long, default_value = "")]
    assume: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means the command ran but found a failure.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Lattice(c) => lattice(c),
        Command::Shapes(c) => shapes(c),
        Command::Verify(a) => verify(a),
        Command::Map(ShowCmd::Show { file, verbose }) => {
            let f = read_map(&file)?;
            print!("{}", write_map(&f));
            if verbose {
                for (x, fiber) in f.fibers().iter().enumerate() {
                    println!("fiber {x}: {fiber:?}");
                }
            }
            Ok(true)
        }
        Command::Family(ShowCmd::Show { file, verbose }) => {
            let fam = read_family(&file)?;
            print!("{}", write_family(&fam));
            if verbose {
                println!("total map: {}", leibniz_core::fincat::chi_inverse(&fam));
            }
            Ok(true)
        }
        Command::Decide(a) => decide(a),
    }
}

fn lattice(cmd: LatticeCmd) -> Result<bool> {
    match cmd {
        LatticeCmd::List => {
            for form in BUILTIN_FORMS {
                println!("{form}");
            }
            Ok(true)
        }
        LatticeCmd::Check { source, format } => {
            let l = resolve_lattice(&source)?.lattice;
            let violations = l.validate();
            match format {
                Format::Json => {
                    let rows: Vec<_> = violations
                        .iter()
                        .map(|v| serde_json::json!({ "axiom": format!("{:?}", v.axiom), "equation": v.axiom.equation(), "witness": v.witness }))
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows)?);
                }
                Format::Text => {
                    for v in &violations {
                        let labels: Vec<String> = v.witness.iter().map(|&x| l.label(x)).collect();
                        println!("{:?}: {} fails at ({})", v.axiom, v.axiom.equation(), labels.join(", "));
                    }
                    if violations.is_empty() {
                        println!("{source}: all axioms hold ({} elements)", l.size());
                    }
                }
            }
            Ok(violations.is_empty())
        }
        LatticeCmd::Show { source, format } => {
            let l = resolve_lattice(&source)?.lattice;
            match format {
                Format::Json => print!("{}", write_lattice(&l)),
                Format::Text => {
                    print_table(&l, "meet", FiniteLattice::meet);
                    println!();
                    print_table(&l, "join", FiniteLattice::join);
                    println!("\nbottom {}, top {}", l.label(l.bottom()), l.label(l.top()));
                }
            }
            Ok(true)
        }
    }
}

fn print_table(l: &FiniteLattice, name: &str, op: fn(&FiniteLattice, usize, usize) -> usize) {
    let n = l.size();
    let width = (0..n).map(|x| l.label(x).chars().count()).max().unwrap_or(1).max(name.chars().count());
    let mut header = format!("{name:>width$} |");
    for y in 0..n {
        header.push_str(&format!(" {:>width$}", l.label(y)));
    }
    println!("{header}");
    println!("{}", "-".repeat(header.chars().count()));
    for x in 0..n {
        let mut line = format!("{:>width$} |", l.label(x));
        for y in 0..n {
            line.push_str(&format!(" {:>width$}", l.label(op(l, x, y))));
        }
        println!("{line}");
    }
}

fn shapes(cmd: ShapesCmd) -> Result<bool> {
    let (source, points, format) = match cmd {
        ShapesCmd::Simplex { lattice, n, format, guard } => {
            let l = resolve_lattice(&lattice)?.lattice;
            let pts = enumerate_simplex(&l, n, guard)?;
            (l, pts, format)
        }
        ShapesCmd::Horn { lattice, n, k, format, guard } => {
            if k > n {
                bail!("horn index k = {k} exceeds n = {n}");
            }
            let l = resolve_lattice(&lattice)?.lattice;
            let pts = enumerate_horn(&l, HornSpec::new(n, k)?, guard)?;
            (l, pts, format)
        }
    };
    print_points(&source, &points, format)?;
    Ok(true)
}

fn print_points(l: &FiniteLattice, points: &[SimplexPoint], format: Format) -> Result<()> {
    let mut out = std::io::stdout().lock();
    for p in points {
        let labels: Vec<String> = p.coords().iter().map(|&x| l.label(x)).collect();
        match format {
            Format::Text => writeln!(out, "{}", labels.join(" "))?,
            Format::Json => writeln!(out, "{}", serde_json::to_string(&labels)?)?,
        }
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<bool> {
    let mut names: Vec<String> = a.suite.into_iter().chain(a.suites).collect();
    if names.is_empty() {
        names.push("all".into());
    }
    let selected = suites::parse_suites(&names).map_err(anyhow::Error::msg)?;
    let lattices = if a.lattices.is_empty() {
        suites::default_lattices()
    } else {
        a.lattices
            .iter()
            .map(|s| resolve_lattice(s).with_context(|| format!("--lattice {s}")))
            .collect::<Result<_>>()?
    };
    let cfg = RunConfig {
        lattices,
        nmax: a.nmax.map(|n| n as usize),
        symbolic_n: a.symbolic_n as usize,
        guard: a.guard,
        seed: a.seed,
        instances: a.instances,
    };
    let report = suites::run(&selected, &cfg);
    match a.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
    Ok(report.success())
}

fn decide(a: DecideArgs) -> Result<bool> {
    let lhs = parse_term(&a.lhs).map_err(|e| anyhow::anyhow!("{e}"))?;
    let rhs = parse_term(&a.rhs).map_err(|e| anyhow::anyhow!("{e}"))?;
    let constraints = parse_constraints(&a.assume).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut vars: BTreeSet<String> = lhs.variables().into_iter().chain(rhs.variables()).map(String::from).collect();
    for c in &constraints {
        for b in [&c.greater, &c.lesser] {
            if let Bound::Var(v) = b {
                vars.insert(v.clone());
            }
        }
    }
    let ctx = OrderContext::new(vars).with_constraints(constraints);
    let d = decide_equal(&lhs, &rhs, &ctx)?;
    if d.holds {
        println!("holds ({} valuations checked)", d.valuations_checked);
    } else {
        let cx = d.counterexample.expect("a failing decision has a counterexample");
        println!("fails at {}", cx.valuation);
    }
    Ok(d.holds)
}
