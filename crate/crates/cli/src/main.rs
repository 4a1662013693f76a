use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qsing_core::classify::TheoremWitness;
use qsing_core::construct::{even_family_generators, odd_composite_generators};
use qsing_core::format::{emit_spec, parse_spec, GroupSpec};
use qsing_core::group::{FiniteMatrixGroup, DEFAULT_CAP};
use qsing_core::report::ReportDocument;
use qsing_core::suites::{self, DEFAULT_CONJUGATIONS, DEFAULT_N_LIST};

/// Exit code for operational errors.
const EXIT_ERROR: u8 = 1;
/// Exit code when a report carries a theorem violation.
const EXIT_VIOLATION: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "qsing", version, about = "Classify quotient singularities of finite matrix groups over cyclotomic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the group generated by the matrices in a spec file.
    Classify {
        path: PathBuf,
        /// Print the report as a JSON object.
        #[arg(long)]
        json: bool,
        /// Give up once the group has more elements than this.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_order: usize,
    },
    /// Build a non-cyclic fixed-point-free group in SL(n).
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Prime factor of n used by the odd-composite family.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, value_enum, default_value_t = Emit::Spec)]
        emit: Emit,
        /// With `--emit report`, print JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in property suites.
    VerifyPaper {
        /// Dimensions to cover, comma separated.
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Even,
    OddComposite,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Spec,
    Report,
}

fn print_report(doc: &ReportDocument, json: bool) -> u8 {
    if json {
        println!("{}", doc.to_json());
    } else {
        print!("{}", doc.to_table());
    }
    if doc.theorem_witness == TheoremWitness::Violation {
        eprintln!("error: non-cyclic group with Gorenstein isolated quotient in odd prime dimension");
        EXIT_VIOLATION
    } else {
        0
    }
}

fn classify_spec(spec: &GroupSpec, cap: usize, json: bool) -> Result<u8, String> {
    let group = FiniteMatrixGroup::closure(&spec.generators, cap).map_err(|e| e.to_string())?;
    Ok(print_report(&suites::document(&group), json))
}

fn cmd_classify(path: &PathBuf, json: bool, max_order: usize) -> Result<u8, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let text = String::from_utf8(bytes).map_err(|_| format!("{}: not valid UTF-8", path.display()))?;
    let spec = parse_spec(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    classify_spec(&spec, max_order, json)
}

fn cmd_construct(family: Family, n: usize, q: Option<u64>, emit: Emit, json: bool) -> Result<u8, String> {
    let generators = match family {
        Family::Even => {
            if q.is_some() {
                return Err("--q applies only to the odd-composite family".into());
            }
            even_family_generators(n)
        }
        Family::OddComposite => odd_composite_generators(n, q),
    }
    .map_err(|e| e.to_string())?;
    let spec = GroupSpec::from_generators(&generators).map_err(|e| e.to_string())?;
    match emit {
        Emit::Spec => {
            print!("{}", emit_spec(&spec));
            Ok(0)
        }
        Emit::Report => classify_spec(&spec, DEFAULT_CAP, json),
    }
}

fn cmd_verify(n_list: Option<Vec<usize>>) -> Result<u8, String> {
    let n_list = n_list.unwrap_or_else(|| DEFAULT_N_LIST.to_vec());
    if n_list.is_empty() {
        return Err("--n-list is empty".into());
    }
    let outcomes = suites::run_corpus(&n_list, DEFAULT_CONJUGATIONS, |s| {
        let secs = s.elapsed.as_secs_f64();
        if s.passed() {
            println!("PASS  {}  ({} checks, {secs:.2}s)", s.name, s.checks);
        } else {
            println!("FAIL  {}  ({} checks, {secs:.2}s)", s.name, s.checks);
            for f in &s.failures {
                println!("        failed: {f}");
            }
        }
    });
    let failed = outcomes.iter().filter(|s| !s.passed()).count();
    println!("{} suites, {} passed, {failed} failed", outcomes.len(), outcomes.len() - failed);
    Ok(if failed == 0 { 0 } else { EXIT_ERROR })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Classify { path, json, max_order } => cmd_classify(&path, json, max_order),
        Command::Construct { family, n, q, emit, json } => cmd_construct(family, n, q, emit, json),
        Command::VerifyPaper { n_list } => cmd_verify(n_list),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
