//! Command-line front end.
//!
//! Every subcommand builds one assertion and runs it through the same
//! dispatcher as the scenario files, so the command line and the suite
//! runner cannot drift apart. Exit codes: 0 when the run produced its
//! report (and, under --assert, the verdict holds), 1 when --assert is
//! given and the verdict or expected comparison fails, 2 on input or
//! parse errors. `suite run` always asserts.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{Map, Value};

use crate::ops::run_assertion;
use crate::report::{Report, ScenarioReport};
use crate::spec::{load_matrix_arg, load_ring_arg};
use crate::suite::run_suite;

#[derive(Parser)]
#[command(
    name = "cizero",
    version,
    about = "Exact structure checks for Artinian local algebras",
    long_about = "Exact structure checks for Artinian local algebras: Wiebe and nice \
matrices, complete-intersection ideals, socles and colon ideals, matrix-factorization \
chains, and decomposability searches. All arithmetic is exact (rationals or GF(p))."
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Print the report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Exit 1 when the mathematical verdict is false
    #[arg(long, global = true)]
    assert: bool,
    /// Seed for randomized searches
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Expected outcome as a JSON value; the report records the comparison
    #[arg(long, global = true)]
    expect: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Matrix reports against the variable row
    #[command(subcommand)]
    Check(CheckCmd),
    /// Complete-intersection ideal tests
    #[command(subcommand)]
    Ci0(Ci0Cmd),
    /// Ideal computations: socle, colon, annihilator, powers
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Ideal chains from factorizations
    #[command(subcommand)]
    Chain(ChainCmd),
    /// Minimal-generator profiles
    #[command(subcommand)]
    Mingen(MingenCmd),
    /// Matrix normal forms preserving the row ideal
    #[command(subcommand)]
    Normalize(NormalizeCmd),
    /// Diagonalization at unit pivots
    #[command(subcommand)]
    Pivot(PivotCmd),
    /// Koszul submodule membership
    #[command(subcommand)]
    Koszul(KoszulCmd),
    /// Factorization searches with certified negatives
    #[command(subcommand)]
    Decompose(DecomposeCmd),
    /// Bounded searches for extremal structures
    #[command(subcommand)]
    Probe(ProbeCmd),
    /// Regenerate presentations from block factorizations
    #[command(subcommand)]
    Realize(RealizeCmd),
    /// Scenario suite runner
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Is the matrix nice: row ideal a complete intersection, det spanning its socle
    Nice {
        /// Ring description: JSON file path or inline JSON
        #[arg(long)]
        ring: String,
        /// Matrix: JSON file path or inline JSON {"entries": [[...]]}
        #[arg(long)]
        matrix: String,
    },
    /// Is the matrix a Wiebe matrix: columns syzygies of x, det spanning the socle
    Wiebe {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
        /// Replacement row entries (default: the variables), repeatable
        #[arg(long = "row")]
        row: Vec<String>,
    },
}

#[derive(Subcommand)]
enum Ci0Cmd {
    /// Test an ideal given by generators
    Ideal {
        #[arg(long)]
        ring: String,
        /// Generator polynomial, repeatable
        #[arg(long = "gens", required = true)]
        gens: Vec<String>,
    },
    /// Test the annihilator of an element
    Ann {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        elem: String,
    },
}

#[derive(Subcommand)]
enum IdealCmd {
    /// Socle 0 : M with principality data
    Socle {
        #[arg(long)]
        ring: String,
    },
    /// Colon ideal I : J
    Colon {
        #[arg(long)]
        ring: String,
        /// Generator of I, repeatable
        #[arg(long = "gens", required = true)]
        gens: Vec<String>,
        /// Generator of J, repeatable
        #[arg(long = "by", required = true)]
        by: Vec<String>,
    },
    /// Annihilator 0 : b of an element
    Ann {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        elem: String,
    },
    /// Power M^k of the maximal ideal
    Power {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        k: usize,
    },
    /// Minimal generator count and a minimal generating set
    Mingens {
        #[arg(long)]
        ring: String,
        #[arg(long = "gens", required = true)]
        gens: Vec<String>,
    },
    /// Least r with M^r = 0, for the ring or a quotient
    Exponent {
        #[arg(long)]
        ring: String,
        /// Quotient by this ideal first; generator, repeatable
        #[arg(long = "modulo")]
        modulo: Vec<String>,
        /// Quotient by the annihilator of this element first
        #[arg(long = "modulo-ann", conflicts_with = "modulo")]
        modulo_ann: Option<String>,
    },
}

#[derive(Subcommand)]
enum ChainCmd {
    /// Chain of ideals from a matrix factorization of a Wiebe matrix
    FromFactors {
        #[arg(long)]
        ring: String,
        /// Factor matrix, left to right, repeatable
        #[arg(long = "matrix", required = true)]
        matrix: Vec<String>,
    },
    /// Gorenstein chain from a factorization of a socle generator
    FromSocle {
        #[arg(long)]
        ring: String,
        /// Socle factor, left to right, repeatable
        #[arg(long = "factor", required = true)]
        factor: Vec<String>,
    },
    /// Saturated chain from a triangular Wiebe matrix
    Triangular {
        #[arg(long)]
        ring: String,
        /// Chain generator, one per link, repeatable
        #[arg(long = "elem", required = true)]
        elem: Vec<String>,
        /// Upper triangular matrix to verify (default: construct one)
        #[arg(long)]
        matrix: Option<String>,
    },
}

#[derive(Subcommand)]
enum MingenCmd {
    /// Four equivalent properties of a minimal generator of M
    Profile {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        elem: String,
    },
}

#[derive(Subcommand)]
enum NormalizeCmd {
    /// Rewrite so the first row becomes (x_1^r, 0, ..., 0)
    FirstRow {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Subcommand)]
enum PivotCmd {
    /// Reduce to diag(d, 1, ..., 1) when det lies in M outside M^2
    Diag {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Subcommand)]
enum KoszulCmd {
    /// Does a column lie in the Koszul submodule of A^n
    Member {
        #[arg(long)]
        ring: String,
        /// Column entry, one per variable, repeatable
        #[arg(long = "entry", required = true)]
        entry: Vec<String>,
    },
}

#[derive(Subcommand)]
enum DecomposeCmd {
    /// Factor an element as a product of two maximal-ideal elements
    Elem {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        elem: String,
        /// Search budget for the bounded fallback
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Factor a matrix as a product of two non-invertible matrices
    Matrix {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Subcommand)]
enum ProbeCmd {
    /// Longest strict chain of complete-intersection ideals found
    Maxchain {
        #[arg(long)]
        ring: String,
        /// First link generator, repeatable (default: start at zero)
        #[arg(long = "start")]
        start: Vec<String>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Subcommand)]
enum RealizeCmd {
    /// Read a presentation of the ring off a block Wiebe factorization
    Split {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        elem: String,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Run every scenario file in a directory
    Run {
        /// Directory of scenario JSON files
        dir: PathBuf,
    },
}

fn sarr(items: Vec<String>) -> Value {
    Value::Array(items.into_iter().map(Value::String).collect())
}

fn matrices(args: &[String]) -> Result<Value, String> {
    let mut out = Vec::with_capacity(args.len());
    for a in args {
        out.push(load_matrix_arg(a)?);
    }
    Ok(Value::Array(out))
}

/// Translates a subcommand into (ring argument, op name, inputs).
fn command_assertion(cmd: &Cmd) -> Result<(String, &'static str, Map<String, Value>), String> {
    let mut inputs = Map::new();
    let (ring, op) = match cmd {
        Cmd::Check(CheckCmd::Nice { ring, matrix }) => {
            inputs.insert("matrix".into(), load_matrix_arg(matrix)?);
            (ring, "nice")
        }
        Cmd::Check(CheckCmd::Wiebe { ring, matrix, row }) => {
            inputs.insert("matrix".into(), load_matrix_arg(matrix)?);
            if !row.is_empty() {
                inputs.insert("row".into(), sarr(row.clone()));
            }
            (ring, "wiebe")
        }
        Cmd::Ci0(Ci0Cmd::Ideal { ring, gens }) => {
            inputs.insert("ideal".into(), sarr(gens.clone()));
            (ring, "ci0_ideal")
        }
        Cmd::Ci0(Ci0Cmd::Ann { ring, elem }) => {
            inputs.insert("elem".into(), Value::String(elem.clone()));
            (ring, "ci0_ann")
        }
        Cmd::Ideal(IdealCmd::Socle { ring }) => (ring, "socle"),
        Cmd::Ideal(IdealCmd::Colon { ring, gens, by }) => {
            inputs.insert("ideal".into(), sarr(gens.clone()));
            inputs.insert("by".into(), sarr(by.clone()));
            (ring, "colon")
        }
        Cmd::Ideal(IdealCmd::Ann { ring, elem }) => {
            inputs.insert("elem".into(), Value::String(elem.clone()));
            (ring, "ann")
        }
        Cmd::Ideal(IdealCmd::Power { ring, k }) => {
            inputs.insert("k".into(), Value::from(*k));
            (ring, "power")
        }
        Cmd::Ideal(IdealCmd::Mingens { ring, gens }) => {
            inputs.insert("ideal".into(), sarr(gens.clone()));
            (ring, "mingens")
        }
        Cmd::Ideal(IdealCmd::Exponent { ring, modulo, modulo_ann }) => {
            if let Some(e) = modulo_ann {
                inputs.insert(
                    "modulo".into(),
                    serde_json::json!({ "annihilator_of": e }),
                );
            } else if !modulo.is_empty() {
                inputs.insert("modulo".into(), sarr(modulo.clone()));
            }
            (ring, "exponent")
        }
        Cmd::Chain(ChainCmd::FromFactors { ring, matrix }) => {
            inputs.insert("factors".into(), matrices(matrix)?);
            (ring, "chain_factors")
        }
        Cmd::Chain(ChainCmd::FromSocle { ring, factor }) => {
            inputs.insert("factors".into(), sarr(factor.clone()));
            (ring, "chain_socle")
        }
        Cmd::Chain(ChainCmd::Triangular { ring, elem, matrix }) => {
            inputs.insert("elems".into(), sarr(elem.clone()));
            if let Some(m) = matrix {
                inputs.insert("matrix".into(), load_matrix_arg(m)?);
            }
            (ring, "chain_triangular")
        }
        Cmd::Mingen(MingenCmd::Profile { ring, elem }) => {
            inputs.insert("elem".into(), Value::String(elem.clone()));
            (ring, "profile")
        }
        Cmd::Normalize(NormalizeCmd::FirstRow { ring, matrix }) => {
            inputs.insert("matrix".into(), load_matrix_arg(matrix)?);
            (ring, "normalize_row")
        }
        Cmd::Pivot(PivotCmd::Diag { ring, matrix }) => {
            inputs.insert("matrix".into(), load_matrix_arg(matrix)?);
            (ring, "pivot_diag")
        }
        Cmd::Koszul(KoszulCmd::Member { ring, entry }) => {
            inputs.insert("column".into(), sarr(entry.clone()));
            (ring, "koszul_member")
        }
        Cmd::Decompose(DecomposeCmd::Elem { ring, elem, budget }) => {
            inputs.insert("elem".into(), Value::String(elem.clone()));
            if let Some(b) = budget {
                inputs.insert("budget".into(), Value::from(*b));
            }
            (ring, "decompose_elem")
        }
        Cmd::Decompose(DecomposeCmd::Matrix { ring, matrix, budget }) => {
            inputs.insert("matrix".into(), load_matrix_arg(matrix)?);
            if let Some(b) = budget {
                inputs.insert("budget".into(), Value::from(*b));
            }
            (ring, "decompose_matrix")
        }
        Cmd::Probe(ProbeCmd::Maxchain { ring, start, budget }) => {
            if !start.is_empty() {
                inputs.insert("start".into(), sarr(start.clone()));
            }
            if let Some(b) = budget {
                inputs.insert("budget".into(), Value::from(*b));
            }
            (ring, "probe_maxchain")
        }
        Cmd::Realize(RealizeCmd::Split { ring, elem }) => {
            inputs.insert("elem".into(), Value::String(elem.clone()));
            (ring, "realize")
        }
        Cmd::Suite(_) => unreachable!("suite handled separately"),
    };
    Ok((ring.clone(), op, inputs))
}

fn print_report(report: &Report, json: bool) {
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

/// Parses argv and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };

    if let Cmd::Suite(SuiteCmd::Run { dir }) = &cli.cmd {
        return match run_suite(dir) {
            Err(msg) => {
                eprintln!("error: {}", msg);
                2
            }
            Ok(report) => {
                print_report(&report, cli.json);
                if report.all_passed {
                    0
                } else {
                    1
                }
            }
        };
    }

    let expected: Option<Value> = match &cli.expect {
        None => None,
        Some(s) => match serde_json::from_str(s) {
            Ok(v) => Some(v),
            Err(e) => {
                eprintln!("error: invalid --expect JSON: {}", e);
                return 2;
            }
        },
    };

    let (ring_arg, op, inputs) = match command_assertion(&cli.cmd) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {}", msg);
            return 2;
        }
    };
    let alg = match load_ring_arg(&ring_arg) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {}", msg);
            return 2;
        }
    };
    let assertion = match run_assertion(&alg, op, &inputs, expected.as_ref(), cli.seed) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {}", msg);
            return 2;
        }
    };

    let failed_on_error = assertion.error.is_some() && !assertion.pass;
    let passed = assertion.pass;
    let report = Report::from_scenarios(
        vec![ScenarioReport {
            scenario: op.to_string(),
            path: None,
            seed: cli.seed,
            assertions: vec![assertion],
        }],
        Vec::new(),
    );
    print_report(&report, cli.json);

    if failed_on_error {
        eprintln!("error: the operation produced no verdict; see the report");
        2
    } else if cli.assert && !passed {
        1
    } else {
        0
    }
}
