//! One binary exposing the library's operations with stable text/JSON output
//! for scripting. Family and code formats are newline-framed and
//! self-describing, so subcommands compose through pipes.

mod io;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use kneser_lab_core::bridge::{self, SplitOutcome};
use kneser_lab_core::constructions;
use kneser_lab_core::search::{self, SearchBudget};
use kneser_lab_core::stabilizer;
use kneser_lab_core::{LinearCode, PrimeField, SetFamily};

use io::{parse_coords, read_code, read_family, CliFailure, EXIT_PASS, EXIT_USAGE, EXIT_VIOLATION};

#[derive(Parser)]
#[command(
    name = "kneser-lab",
    about = "Schur products of linear codes, divisible set families, and exhaustive verification",
    version
)]
struct Cli {
    /// Emit JSON instead of the text formats.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the sweeps (output is independent of this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schur (coordinate-wise) product of two codes.
    Product { a: String, b: String },
    /// k-th Schur power of a code.
    Power {
        #[arg(default_value = "-")]
        code: String,
        #[arg(long)]
        k: u32,
    },
    /// Stabilizer St(C) = { x : x*C ⊆ C }.
    Stabilizer {
        #[arg(default_value = "-")]
        code: String,
    },
    /// Disjoint-support decomposition of a full-support code.
    Decompose {
        #[arg(default_value = "-")]
        code: String,
    },
    /// Check dim CD >= dim C + dim D - dim St(CD) on a pair of codes.
    Kneser { a: String, b: String },
    /// Power-sequence growth diagnostics for a full-support code.
    Growth {
        #[arg(default_value = "-")]
        code: String,
        #[arg(long)]
        t: u32,
    },
    /// Atom partition of a family's support.
    Atoms {
        #[arg(default_value = "-")]
        family: String,
    },
    /// F^k: intersections of at most k members.
    Closure {
        #[arg(default_value = "-")]
        family: String,
        #[arg(long)]
        k: u32,
    },
    /// Is every intersection of k members divisible by l?
    CheckDivisible {
        #[arg(default_value = "-")]
        family: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
    },
    /// Restrict a family to a 1-based coordinate list.
    Restrict {
        #[arg(default_value = "-")]
        family: String,
        #[arg(long)]
        coords: String,
    },
    /// The binary points V ∩ {0,1}^n of a code.
    BinaryPoints {
        #[arg(default_value = "-")]
        code: String,
    },
    /// Compare k-wise p-divisibility with the orthogonality of the span's
    /// k-th power; the verdicts must agree.
    BridgeCheck {
        #[arg(default_value = "-")]
        family: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: u32,
    },
    /// Certify |supp(v)| ≡ 0 mod p^alpha through the integer lift of v.
    LiftCheck {
        #[arg(default_value = "-")]
        family: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        alpha: u32,
        /// Vector in the text form (digit string for p <= 7).
        #[arg(long)]
        v: String,
    },
    /// Split a divisible family along the decomposition of its span's power.
    Split {
        #[arg(default_value = "-")]
        family: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: u32,
    },
    /// Atom divisibility outside the high-dimensional components.
    Tphi {
        #[arg(default_value = "-")]
        family: String,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        k: u32,
    },
    /// Canonical families and matrices.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Exhaustive and randomized verification runs.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Atomic family over consecutive blocks, e.g. --sizes 3,3.
    Atomic {
        #[arg(long)]
        sizes: String,
    },
    /// Order-12 Hadamard matrix from quadratic residues mod 11.
    Hadamard12,
    /// 24^m subsets of {1..12m} with pairwise intersections divisible by 3.
    FranklOdlyzko {
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Size bound for p-wise p-divisible families, exhaustively over
    /// subspaces of F_p^n.
    Theorem1(SweepArgs),
    /// Extremal atomic structure for (p+1)-wise p-divisible families.
    Theorem2(SweepArgs),
    /// Composite-modulus structure by pruned family DFS.
    Theorem4 {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        n: usize,
    },
    /// Seeded random property suite over the algebraic invariants.
    Suite {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: usize,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version are not usage errors
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("kneser-lab: thread pool: {e}");
            std::process::exit(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("kneser-lab: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}

fn budget_from_env() -> SearchBudget {
    let mut budget = SearchBudget::default();
    if let Ok(value) = std::env::var("KNESER_LAB_BUDGET") {
        match value.trim().parse::<u128>() {
            Ok(cap) => {
                budget.max_subspaces = cap;
                budget.max_nodes = cap.min(u64::MAX as u128) as u64;
            }
            Err(e) => {
                eprintln!("kneser-lab: ignoring KNESER_LAB_BUDGET ({e})");
            }
        }
    }
    budget
}

fn print_code(code: &LinearCode, json_mode: bool) {
    if json_mode {
        let rows: Vec<Vec<u16>> = code.basis().map(|v| v.coords().to_vec()).collect();
        println!(
            "{}",
            json!({
                "schema": kneser_lab_core::report::SCHEMA,
                "p": code.field().p(),
                "n": code.ambient_len(),
                "dim": code.dim(),
                "rows": rows,
            })
        );
    } else {
        print!("{}", code.render());
    }
}

fn print_family(family: &SetFamily, json_mode: bool) {
    if json_mode {
        println!("{}", family.to_json());
    } else {
        print!("{}", family.render());
    }
}

fn report_exit(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    }
}

fn run(cli: &Cli) -> Result<i32, CliFailure> {
    let json_mode = cli.json;
    match &cli.command {
        Command::Product { a, b } => {
            let left = read_code(a)?;
            let right = read_code(b)?;
            let product = left.schur_product(&right)?;
            print_code(&product, json_mode);
            Ok(EXIT_PASS)
        }
        Command::Power { code, k } => {
            let code = read_code(code)?;
            let power = code.power(*k)?;
            print_code(&power, json_mode);
            Ok(EXIT_PASS)
        }
        Command::Stabilizer { code } => {
            let code = read_code(code)?;
            print_code(&stabilizer::stabilizer(&code), json_mode);
            Ok(EXIT_PASS)
        }
        Command::Decompose { code } => {
            let code = read_code(code)?;
            let decomposition = stabilizer::decompose(&code)?;
            if json_mode {
                println!("{}", decomposition.to_json());
            } else {
                println!("m = {}", decomposition.m());
                println!("stab_dim = {}", decomposition.stab_dim());
                for (part, component) in decomposition
                    .parts()
                    .iter()
                    .zip(decomposition.components())
                {
                    let coords: Vec<String> =
                        part.iter().map(|&i| (i + 1).to_string()).collect();
                    println!("part {{{}}} dim {}", coords.join(","), component.dim());
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Kneser { a, b } => {
            let left = read_code(a)?;
            let right = read_code(b)?;
            let report = stabilizer::kneser_check(&left, &right)?;
            if json_mode {
                println!("{}", report.to_json());
            } else {
                println!(
                    "dim CD = {} >= {} = dim C + dim D - dim St(CD): {}",
                    report.details["dim_product"],
                    report.details["lower_bound"],
                    if report.pass { "pass" } else { "FAIL" }
                );
            }
            Ok(report_exit(report.pass))
        }
        Command::Growth { code, t } => {
            let code = read_code(code)?;
            let report = stabilizer::growth_check(&code, *t)?;
            if json_mode {
                println!("{}", report.to_json());
            } else {
                println!(
                    "dims = {} dim W = {}: {}",
                    report.details["dims"],
                    report.details["dim_w"],
                    if report.pass { "pass" } else { "FAIL" }
                );
            }
            Ok(report_exit(report.pass))
        }
        Command::Atoms { family } => {
            let family = read_family(family)?;
            let partition = family.atoms();
            if json_mode {
                println!(
                    "{}",
                    json!({
                        "schema": kneser_lab_core::report::SCHEMA,
                        "atoms": partition.render(),
                        "sizes": partition.sizes(),
                    })
                );
            } else {
                for atom in partition.render() {
                    println!("{atom}");
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Closure { family, k } => {
            let family = read_family(family)?;
            print_family(&family.product_family(*k)?, json_mode);
            Ok(EXIT_PASS)
        }
        Command::CheckDivisible { family, k, l } => {
            let family = read_family(family)?;
            let report = family.is_kwise_divisible(*k, *l)?;
            if json_mode {
                println!("{}", report.to_json());
            } else if report.pass {
                println!("pass: family is {k}-wise {l}-divisible");
            } else {
                println!("fail: witness {}", report.witness.as_ref().unwrap());
            }
            Ok(report_exit(report.pass))
        }
        Command::Restrict { family, coords } => {
            let family = read_family(family)?;
            let mask = parse_coords(coords, family.n())?;
            print_family(&family.restrict(mask)?, json_mode);
            Ok(EXIT_PASS)
        }
        Command::BinaryPoints { code } => {
            let code = read_code(code)?;
            let points = code.binary_points()?;
            if json_mode {
                println!(
                    "{}",
                    json!({
                        "schema": kneser_lab_core::report::SCHEMA,
                        "count": points.len(),
                        "points": points.iter().map(|v| v.render()).collect::<Vec<_>>(),
                    })
                );
            } else {
                for point in &points {
                    println!("{}", point.render());
                }
            }
            Ok(EXIT_PASS)
        }
        Command::BridgeCheck { family, k, p } => {
            let family = read_family(family)?;
            let certificate = bridge::bridge_check(&family, *k, *p)?;
            if json_mode {
                println!("{}", certificate.to_json());
            } else {
                println!(
                    "combinatorial = {}, algebraic = {}: {}",
                    certificate.combinatorial,
                    certificate.algebraic,
                    if certificate.agree() {
                        "agree"
                    } else {
                        "DISAGREE"
                    }
                );
            }
            Ok(report_exit(certificate.agree()))
        }
        Command::LiftCheck {
            family,
            k,
            p,
            alpha,
            v,
        } => {
            let family = read_family(family)?;
            let field = PrimeField::new(*p)?;
            let vector = io::parse_vector(field, v)?;
            let report = bridge::prime_power_lift_check(&family, *k, *p, *alpha, &vector)?;
            if json_mode {
                println!("{}", report.to_json());
            } else {
                println!(
                    "|supp(v)| = {} mod p^alpha = {}: {}",
                    report.details["support_size"],
                    report.details["support_size_mod"],
                    if report.pass { "pass" } else { "FAIL" }
                );
            }
            Ok(report_exit(report.pass))
        }
        Command::Split { family, k, p } => {
            let family = read_family(family)?;
            match bridge::split_family(&family, *k, *p)? {
                SplitOutcome::Split {
                    s1,
                    s2,
                    first,
                    second,
                } => {
                    if json_mode {
                        println!(
                            "{}",
                            json!({
                                "schema": kneser_lab_core::report::SCHEMA,
                                "outcome": "split",
                                "s1": kneser_lab_core::family::render_mask(s1, family.n()),
                                "s2": kneser_lab_core::family::render_mask(s2, family.n()),
                                "first": first.to_json(),
                                "second": second.to_json(),
                            })
                        );
                    } else {
                        print!("{}", first.render());
                        println!();
                        print!("{}", second.render());
                    }
                }
                SplitOutcome::Indecomposable => {
                    if json_mode {
                        println!(
                            "{}",
                            json!({
                                "schema": kneser_lab_core::report::SCHEMA,
                                "outcome": "indecomposable",
                            })
                        );
                    } else {
                        println!("indecomposable");
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Tphi {
            family,
            t,
            p,
            alpha,
            l,
            k,
        } => {
            let family = read_family(family)?;
            let report = bridge::tphi_atom_report(&family, *t, *p, *alpha, *l, *k)?;
            if json_mode {
                println!("{}", report.to_json());
            } else {
                println!(
                    "S = {} outside-atom evidence: {}",
                    report.details["s"],
                    if report.pass { "pass" } else { "FAIL" }
                );
            }
            Ok(report_exit(report.pass))
        }
        Command::Construct(cmd) => {
            match cmd {
                ConstructCommand::Atomic { sizes } => {
                    let sizes: Vec<u32> = sizes
                        .split(',')
                        .map(|t| {
                            t.trim().parse().map_err(|e| {
                                CliFailure::new(format!("size '{t}': {e}"), EXIT_USAGE)
                            })
                        })
                        .collect::<Result<_, _>>()?;
                    let family = constructions::atomic_family(&sizes)?;
                    print_family(&family, json_mode);
                }
                ConstructCommand::Hadamard12 => {
                    let h = constructions::paley_hadamard_12();
                    if json_mode {
                        println!(
                            "{}",
                            json!({
                                "schema": kneser_lab_core::report::SCHEMA,
                                "order": h.order(),
                                "entries": h.entries(),
                            })
                        );
                    } else {
                        print!("{}", h.render());
                    }
                }
                ConstructCommand::FranklOdlyzko { m } => {
                    let family = constructions::frankl_odlyzko_family(*m)?;
                    print_family(&family, json_mode);
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Verify(cmd) => {
            let budget = budget_from_env();
            match cmd {
                VerifyCommand::Theorem1(args) => {
                    let report = search::verify_theorem1(args.p, args.n, &budget)?;
                    print_sweep(&report, json_mode);
                    Ok(report.exit_code())
                }
                VerifyCommand::Theorem2(args) => {
                    let report = search::verify_theorem2(args.p, args.n, &budget)?;
                    print_sweep(&report, json_mode);
                    Ok(report.exit_code())
                }
                VerifyCommand::Theorem4 { l, n } => {
                    let report = search::verify_theorem4(*l, *n, &budget)?;
                    print_sweep(&report, json_mode);
                    Ok(report.exit_code())
                }
                VerifyCommand::Suite { trials, seed } => {
                    let report = search::random_property_suite(*trials, *seed)?;
                    if json_mode {
                        println!("{}", report.to_json());
                    } else {
                        println!(
                            "trials = {} seed = {}: {}",
                            report.trials,
                            report.seed,
                            if report.pass { "pass" } else { "FAIL" }
                        );
                        for (name, stats) in [
                            ("kneser", &report.kneser),
                            ("kneser_chain", &report.kneser_chain),
                            ("growth", &report.growth),
                            ("bridge", &report.bridge),
                            ("odlyzko", &report.odlyzko),
                            ("improved_odlyzko", &report.improved_odlyzko),
                        ] {
                            println!(
                                "{name}: run {} passed {} hypothesis_not_met {} failed {}",
                                stats.run, stats.passed, stats.hypothesis_not_met, stats.failed
                            );
                        }
                    }
                    Ok(report.exit_code())
                }
            }
        }
    }
}

fn print_sweep(report: &search::SweepReport, json_mode: bool) {
    if json_mode {
        println!("{}", report.to_json());
    } else {
        println!(
            "{} n = {} universe = {} max = {} bound = {} attained = {}: {}",
            report.check,
            report.n,
            report.universe,
            report.max,
            report.bound,
            report.attained,
            if report.inconclusive {
                "INCONCLUSIVE"
            } else if report.pass {
                "pass"
            } else {
                "FAIL"
            }
        );
    }
}
