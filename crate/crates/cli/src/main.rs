//! `qbn`: classify quartic bicirculant graphs and reproduce the enumeration tables.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use qbn_core::classify::classify;
use qbn_core::cyclo::{cyclotomic, poly_b3, poly_p, poly_q, poly_r, residue_search, residue_search_raw};
use qbn_core::enumerate::{crosscheck, table};
use qbn_core::graph::build_graph;
use qbn_core::kernel::{adjacency_matrix, kernel_basis, nut_oracle};
use qbn_core::report::{self, TableKind};
use qbn_core::spec::parse_raw_spec;

/// Keeps polynomial degrees small enough to print.
const MAX_POLY_PARAM: i64 = 100_000;

const AFTER_HELP: &str = "\
Exit codes: 0 success (classify: nut), 1 classify: not nut / crosscheck: disagreements, 2 invalid input.
Specs are written like B2(24;4,6,3) or B3(10;1,3).";

#[derive(Debug, Parser)]
#[command(name = "qbn", version, about = "Nut-graph classification of quartic bicirculant graphs", after_help = AFTER_HELP)]
struct Cli {
    /// Worker threads for enumerate and crosscheck (default: all cores)
    #[arg(long, global = true, env = "QBN_THREADS")]
    threads: Option<usize>,

    /// Report timings on standard error
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a spec gives a nut graph from its parameters
    Classify {
        spec: String,
        #[arg(long, value_enum, default_value_t = VerdictFormat::Text)]
        format: VerdictFormat,
    },
    /// Count graphs up to isomorphism for every even order from 8 to the maximum
    Enumerate {
        #[arg(long)]
        max_order: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        #[arg(long, value_enum, default_value_t = TableChoice::Both)]
        table: TableChoice,
    },
    /// Compare the classifier, the divisor scan and the kernel oracle on every connected spec
    Crosscheck {
        #[arg(long)]
        max_order: u64,
        #[arg(long, value_enum, default_value_t = VerdictFormat::Text)]
        format: VerdictFormat,
    },
    /// Residues (a+b, a-b, c) mod f for which Phi_f divides P_{a,b,c}
    ResidueSearch {
        f: u64,
        /// Print every (a, b, c) in 1..=f instead of the deduplicated residues
        #[arg(long)]
        raw: bool,
    },
    /// Exact kernel of the adjacency matrix
    Oracle { spec: String },
    /// Print a class polynomial or a cyclotomic polynomial
    Poly {
        #[arg(value_enum)]
        kind: PolyKind,
        /// Parameters: a b for r, q and b3 (a <= b); a b c for p; f for phi
        #[arg(required = true, value_parser = clap::value_parser!(i64).range(0..=MAX_POLY_PARAM))]
        params: Vec<i64>,
        /// Test divisibility by Phi_f (repeatable)
        #[arg(long = "f")]
        divisors: Vec<u64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerdictFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableChoice {
    Aggregate,
    PerClass,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolyKind {
    R,
    Q,
    P,
    B3,
    Phi,
}

fn kind_name(kind: PolyKind) -> String {
    kind.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

impl From<TableChoice> for TableKind {
    fn from(t: TableChoice) -> Self {
        match t {
            TableChoice::Aggregate => TableKind::Aggregate,
            TableChoice::PerClass => TableKind::PerClass,
            TableChoice::Both => TableKind::Both,
        }
    }
}

/// What the process prints and the exit code it returns.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

fn run(command: Command) -> CliResult<Output> {
    match command {
        Command::Classify { spec, format } => {
            let v = classify(&parse_raw_spec(&spec)?);
            let text = match format {
                VerdictFormat::Text => report::verdict_text(&v),
                VerdictFormat::Json => report::verdict_json(&v),
            };
            Ok(Output {
                text,
                code: if v.is_nut { 0 } else { 1 },
            })
        }
        Command::Enumerate {
            max_order,
            format,
            table: kind,
        } => {
            let rows = table(max_order)?;
            Ok(Output::ok(match format {
                TableFormat::Text => report::table_text(&rows, kind.into()),
                TableFormat::Csv => report::table_csv(&rows, kind.into()),
                TableFormat::Json => report::table_json(&rows),
            }))
        }
        Command::Crosscheck { max_order, format } => {
            let r = crosscheck(max_order)?;
            let text = match format {
                VerdictFormat::Text => report::crosscheck_text(&r),
                VerdictFormat::Json => report::crosscheck_json(&r),
            };
            Ok(Output {
                text,
                code: if r.is_clean() { 0 } else { 1 },
            })
        }
        Command::ResidueSearch { f, raw } => Ok(Output::ok(if raw {
            report::raw_residues_csv(f, &residue_search_raw(f)?)
        } else {
            report::residues_csv(&residue_search(f)?)
        })),
        Command::Oracle { spec } => {
            let spec = parse_raw_spec(&spec)?;
            let g = build_graph(&spec);
            let basis = kernel_basis(&adjacency_matrix(&g));
            Ok(Output::ok(report::kernel_text(&spec, &basis, nut_oracle(&g))))
        }
        Command::Poly { kind, params, divisors } => {
            let arity = match kind {
                PolyKind::P => 3,
                PolyKind::Phi => 1,
                _ => 2,
            };
            if params.len() != arity {
                return Err(format!("{} takes {arity} parameters, got {}", kind_name(kind), params.len()).into());
            }
            let (name, p) = match kind {
                PolyKind::R => ("R", poly_r(params[0], params[1])),
                PolyKind::Q => ("Q", poly_q(params[0], params[1])),
                PolyKind::P => ("P", poly_p(params[0], params[1], params[2])),
                PolyKind::B3 if params[0] > params[1] => return Err("b3 needs a <= b".into()),
                PolyKind::B3 => ("B3", poly_b3(params[0], params[1])),
                PolyKind::Phi => {
                    let f = u64::try_from(params[0])
                        .ok()
                        .filter(|&f| f > 0)
                        .ok_or("f must be positive")?;
                    ("Phi", cyclotomic(f))
                }
            };
            if divisors.contains(&0) {
                return Err("--f must be positive".into());
            }
            Ok(Output::ok(report::poly_text(name, &p, &divisors)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    match run(cli.command) {
        Ok(out) => {
            if cli.verbose {
                eprintln!("finished in {:.2?}", start.elapsed());
            }
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
