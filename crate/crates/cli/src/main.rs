//! `epiq`: check epistemic formulas, tabulate constrained truth tables and derive
//! incompatibility axioms from interval declarations.
//!
//! Exit codes: 0 affirmative verdict, 1 negative verdict, 2 usage or input error.

mod demo;
mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use epiq::classical::{ClassicalChecker, DEFAULT_ATOM_LIMIT};
use epiq::epistemic::{ModalChecker, DEFAULT_MODAL_ATOM_LIMIT};
use epiq::formula::{parse, Formula};
use epiq::quantum;
use epiq::{ConstraintSet, LogicError, Theory};
use serde::Serialize;

use crate::report::{axiom_reports, AxiomReport, CheckReport, PropositionReport, TableReport};

#[derive(Debug, Parser)]
#[command(name = "epiq", version, about = "Epistemic propositional logic for interval-valued quantum observations")]
struct Cli {
    /// Output format; csv is available for tables only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Valid,
    Sat,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Valid => "valid",
            Mode::Sat => "sat",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a formula and print its normal rendering, atoms and modal depth.
    Parse { formula: String },
    /// Decide validity or satisfiability over S5 models.
    Check {
        formula: String,
        /// File of global axioms, one formula per line.
        #[arg(long)]
        theory: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Valid)]
        mode: Mode,
        /// Raise the atom limit; the search covers 2^(2^n) - 1 cells for n atoms.
        #[arg(long)]
        atom_limit: Option<usize>,
    },
    /// Print the truth table of K-free formulas, excluding rows that violate constraints.
    Table {
        #[arg(required = true)]
        formulas: Vec<String>,
        /// File of K-free constraints, one formula per line.
        #[arg(long, visible_alias = "theory", conflicts_with = "quantum")]
        constraints: Option<PathBuf>,
        /// Declaration file; its incompatible pairs become constraints.
        #[arg(long)]
        quantum: Option<PathBuf>,
        #[arg(long)]
        atom_limit: Option<usize>,
    },
    /// Generate incompatibility axioms from a declaration file and optionally check a formula under them.
    Quantum {
        decl: PathBuf,
        #[arg(long)]
        list_axioms: bool,
        /// Print the declarations in canonical form.
        #[arg(long)]
        echo: bool,
        #[arg(long)]
        check: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Valid)]
        mode: Mode,
        #[arg(long)]
        atom_limit: Option<usize>,
    },
    /// Walk through the particle-on-a-line example end to end.
    Demo,
}

struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let format = cli.format;
    if format == Format::Csv && !matches!(cli.command, Command::Table { .. }) {
        bail!("--format csv is only available for `table`");
    }
    match cli.command {
        Command::Parse { formula } => cmd_parse(&formula, format),
        Command::Check { formula, theory, mode, atom_limit } => {
            let f = parse_arg(&formula)?;
            let axioms = match theory {
                Some(path) => input::parse_formula_lines(&input::read_file(&path)?, &path.display().to_string())?,
                None => Vec::new(),
            };
            let report = check(&f, axioms, mode, modal_checker(atom_limit))?;
            let code = exit_code(&report);
            Ok(Outcome { stdout: render(format, &report, CheckReport::text)?, code })
        }
        Command::Table { formulas, constraints, quantum, atom_limit } => {
            cmd_table(&formulas, constraints.as_deref(), quantum.as_deref(), atom_limit, format)
        }
        Command::Quantum { decl, list_axioms, echo, check, mode, atom_limit } => {
            cmd_quantum(&decl, list_axioms, echo, check.as_deref(), mode, atom_limit, format)
        }
        Command::Demo => {
            let report = demo::run()?;
            Ok(Outcome::ok(render(format, &report, demo::DemoReport::text)?))
        }
    }
}

fn render<T: Serialize>(format: Format, report: &T, text: impl Fn(&T) -> String) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        _ => text(report),
    })
}

fn exit_code(report: &CheckReport) -> u8 {
    match report.verdict {
        "VALID" | "SATISFIABLE" => 0,
        _ => 1,
    }
}

/// Parses a command-line formula, pointing at the error position.
fn parse_arg(text: &str) -> Result<Formula> {
    parse(text).map_err(|e| {
        let caret = " ".repeat(e.offset.saturating_sub(1));
        anyhow!("{e}\n  {text}\n  {caret}^")
    })
}

fn modal_checker(atom_limit: Option<usize>) -> ModalChecker {
    match atom_limit {
        Some(n) => {
            if n > DEFAULT_MODAL_ATOM_LIMIT {
                eprintln!("note: modal atom limit raised to {n}; the search may visit up to 2^(2^{n}) - 1 cells");
            }
            ModalChecker::with_atom_limit(n)
        }
        None => ModalChecker::default(),
    }
}

fn check(f: &Formula, axioms: Vec<Formula>, mode: Mode, checker: ModalChecker) -> Result<CheckReport> {
    let theory = Theory::new(axioms);
    let result = match mode {
        Mode::Valid => checker.is_valid(f, &theory)?,
        Mode::Sat => checker.is_satisfiable(f, &theory)?,
    };
    Ok(CheckReport::new(f, mode.name(), theory.axioms(), &result))
}

#[derive(Serialize)]
struct ParseReport {
    formula: String,
    atoms: Vec<String>,
    modal_depth: usize,
}

fn cmd_parse(text: &str, format: Format) -> Result<Outcome> {
    let f = parse_arg(text)?;
    let report = ParseReport {
        formula: f.render(),
        atoms: f.atoms().iter().map(ToString::to_string).collect(),
        modal_depth: f.modal_depth(),
    };
    let text = |r: &ParseReport| {
        format!("{}\natoms: {}\nmodal depth: {}\n", r.formula, r.atoms.join(" "), r.modal_depth)
    };
    Ok(Outcome::ok(render(format, &report, text)?))
}

fn cmd_table(
    formulas: &[String],
    constraints: Option<&Path>,
    decl: Option<&Path>,
    atom_limit: Option<usize>,
    format: Format,
) -> Result<Outcome> {
    let formulas: Vec<Formula> = formulas.iter().map(|t| parse_arg(t)).collect::<Result<_>>()?;
    let constraints = match (constraints, decl) {
        (Some(path), _) => {
            let fs = input::parse_formula_lines(&input::read_file(path)?, &path.display().to_string())?;
            ConstraintSet::new(fs)?
        }
        (None, Some(path)) => {
            let decls = input::parse_declarations(&input::read_file(path)?, &path.display().to_string())?;
            quantum::generate(&decls.props, &decls.config)?.classical_constraints
        }
        (None, None) => ConstraintSet::default(),
    };
    let checker = match atom_limit {
        Some(n) => {
            if n > DEFAULT_ATOM_LIMIT {
                eprintln!("note: atom limit raised to {n}; the table may have up to 2^{n} rows");
            }
            ClassicalChecker::with_atom_limit(n)
        }
        None => ClassicalChecker::default(),
    };
    let table = checker.truth_table(&formulas, &constraints).map_err(|e| match e {
        LogicError::ModalOperatorPresent(_) => {
            anyhow!("{e}\nhint: use `epiq check` for formulas with K")
        }
        other => other.into(),
    })?;
    let report = TableReport::new(&table);
    let stdout = match format {
        Format::Csv => report.csv(),
        _ => render(format, &report, TableReport::text)?,
    };
    Ok(Outcome::ok(stdout))
}

#[derive(Serialize)]
struct QuantumReport {
    bound: String,
    propositions: Vec<PropositionReport>,
    axioms: Vec<AxiomReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    echo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<CheckReport>,
}

fn cmd_quantum(
    path: &Path,
    list_axioms: bool,
    echo: bool,
    check_formula: Option<&str>,
    mode: Mode,
    atom_limit: Option<usize>,
    format: Format,
) -> Result<Outcome> {
    let decls = input::parse_declarations(&input::read_file(path)?, &path.display().to_string())?;
    let generated = quantum::generate(&decls.props, &decls.config)?;
    let check = match check_formula {
        Some(text) => {
            let f = parse_arg(text)?;
            let axioms = generated.epistemic_axioms.axioms().to_vec();
            Some(check(&f, axioms, mode, modal_checker(atom_limit))?)
        }
        None => None,
    };
    let list_axioms = list_axioms || (!echo && check.is_none());
    let report = QuantumReport {
        bound: decls.config.bound().to_string(),
        propositions: decls.props.iter().map(PropositionReport::new).collect(),
        axioms: axiom_reports(&generated),
        echo: echo.then(|| input::echo_declarations(&decls)),
        check,
    };
    let code = report.check.as_ref().map_or(0, exit_code);
    let text = |r: &QuantumReport| {
        let mut out = String::new();
        if let Some(e) = &r.echo {
            out.push_str(e);
        }
        if list_axioms {
            if r.axioms.is_empty() {
                out.push_str("no axioms generated\n");
            }
            for a in &r.axioms {
                out.push_str(&a.text());
                out.push('\n');
            }
        }
        if let Some(c) = &r.check {
            out.push_str(&c.text());
        }
        out
    };
    Ok(Outcome { stdout: render(format, &report, text)?, code })
}
