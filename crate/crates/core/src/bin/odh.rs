//! `odh`: compute winners, check axioms and search for counterexamples on
//! approval elections.
//!
//! Exit codes: 0 success or satisfied, 1 violated (or counterexample found),
//! 2 unreadable input, 3 cap exceeded, 4 inconclusive, 5 precondition not met.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use approval_dhondt::axioms::{
    check_rule, search_counterexample, Axiom, AxiomCaps, AxiomError, ElectionGenerator, GeneratorBounds, Status,
};
use approval_dhondt::format::{emit_election, parse_election};
use approval_dhondt::render::{render_apportionment, render_report, render_verdict, Format};
use approval_dhondt::rules::{divisor_apportionment, DivisorSequence, Rule, RuleConfig, RuleError, TieMode};
use approval_dhondt::Election;

const EXIT_VIOLATED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;
const EXIT_PRECONDITION: u8 = 5;

#[derive(Parser)]
#[command(name = "odh", version, about = "Approval-based D'Hondt rules and axiom checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ties {
    Det,
    Enum,
}

impl From<Ties> for TieMode {
    fn from(t: Ties) -> Self {
        match t {
            Ties::Det => TieMode::Deterministic,
            Ties::Enum => TieMode::Enumerated,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Compute winners. RULE is a rule name, `dhondt` or `all`.
    Compute {
        rule: String,
        file: PathBuf,
        #[arg(long, value_enum, default_value = "det")]
        ties: Ties,
        /// Show per-iteration values of sequential rules.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Check an axiom for a rule on an election.
    Check {
        rule: String,
        axiom: String,
        file: PathBuf,
        #[arg(long, value_enum, default_value = "enum")]
        ties: Ties,
        /// Most distinct ballot types the lower-quota check scans.
        #[arg(long, default_value_t = 15)]
        max_ballot_types: usize,
        /// Most candidate subsets the EJR check scans.
        #[arg(long, default_value_t = 1_000_000)]
        ejr_cap: u64,
    },
    /// Search random elections for a violation.
    Search {
        rule: String,
        axiom: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        min_candidates: usize,
        #[arg(long, default_value_t = 6)]
        max_candidates: usize,
        #[arg(long, default_value_t = 4)]
        max_seats: usize,
        #[arg(long, default_value_t = 8)]
        max_ballot_types: usize,
        #[arg(long, default_value_t = 50)]
        max_count: u64,
        #[arg(long, value_enum, default_value = "enum")]
        ties: Ties,
    },
    /// Grid of every axiom check for every rule on one election.
    Compare {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "enum")]
        ties: Ties,
    },
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("odh: {message}");
    ExitCode::from(code)
}

fn load(path: &PathBuf) -> Result<Election, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|err| fail(EXIT_INPUT, format!("{}: {err}", path.display())))?;
    parse_election(&text).map_err(|err| fail(EXIT_INPUT, format!("{}:{err}", path.display())))
}

fn parse_rule(name: &str) -> Result<Rule, ExitCode> {
    name.parse::<Rule>().map_err(|err| fail(EXIT_INPUT, err))
}

fn parse_axiom(name: &str) -> Result<Axiom, ExitCode> {
    name.parse::<Axiom>().map_err(|err| fail(EXIT_INPUT, err))
}

fn rule_error_code(err: &RuleError) -> u8 {
    match err {
        RuleError::InstanceTooLarge { .. } => EXIT_CAP,
        _ => EXIT_PRECONDITION,
    }
}

fn axiom_error_code(err: &AxiomError) -> u8 {
    match err {
        AxiomError::RuleCannotRun(e) => rule_error_code(e),
        _ => EXIT_PRECONDITION,
    }
}

fn compute(rule: &str, file: &PathBuf, ties: Ties, trace: bool, format: OutputFormat) -> ExitCode {
    let e = match load(file) {
        Ok(e) => e,
        Err(code) => return code,
    };
    let format = match format {
        OutputFormat::Table => Format::Table,
        OutputFormat::Machine => Format::Machine,
    };
    if rule.eq_ignore_ascii_case("dhondt") {
        let Some(cle) = e.as_closed_list() else {
            return fail(EXIT_PRECONDITION, "election is not shaped like a closed-list election");
        };
        let a = divisor_apportionment(&cle, &DivisorSequence::DHondt);
        emit(&render_apportionment(&e, &cle, &a, format));
        return ExitCode::SUCCESS;
    }
    let rules: Vec<Rule> = if rule.eq_ignore_ascii_case("all") {
        Rule::ALL.to_vec()
    } else {
        match parse_rule(rule) {
            Ok(r) => vec![r],
            Err(code) => return code,
        }
    };
    let cfg = RuleConfig::from_env().with_ties(ties.into());
    let mut status = 0;
    for (i, r) in rules.iter().enumerate() {
        if i > 0 {
            emit("\n");
        }
        match r.run(&e, &cfg) {
            Ok(report) => emit(&render_report(&e, &report, format, trace)),
            Err(err) => {
                eprintln!("odh: {r}: {err}");
                status = status.max(rule_error_code(&err));
            }
        }
    }
    ExitCode::from(status)
}

fn status_code(status: &Status) -> u8 {
    match status {
        Status::Satisfied => 0,
        Status::Violated => EXIT_VIOLATED,
        Status::Inconclusive(_) => EXIT_INCONCLUSIVE,
    }
}

fn check(rule: &str, axiom: &str, file: &PathBuf, ties: Ties, caps: AxiomCaps) -> ExitCode {
    let (rule, axiom) = match (parse_rule(rule), parse_axiom(axiom)) {
        (Ok(r), Ok(a)) => (r, a),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    let e = match load(file) {
        Ok(e) => e,
        Err(code) => return code,
    };
    let cfg = RuleConfig::from_env().with_ties(ties.into());
    match check_rule(rule, axiom, &e, &cfg, &caps) {
        Ok(v) => {
            emit(&render_verdict(&e, rule.name(), &v));
            ExitCode::from(status_code(&v.status))
        }
        Err(err) => fail(axiom_error_code(&err), err),
    }
}

fn search(rule: &str, axiom: &str, seed: u64, trials: usize, bounds: GeneratorBounds, ties: Ties) -> ExitCode {
    let (rule, axiom) = match (parse_rule(rule), parse_axiom(axiom)) {
        (Ok(r), Ok(a)) => (r, a),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    if bounds.min_candidates == 0
        || bounds.min_candidates > bounds.max_candidates
        || bounds.max_candidates > approval_dhondt::model::MAX_CANDIDATES
        || bounds.max_seats == 0
        || bounds.max_ballot_types == 0
        || bounds.max_count == 0
    {
        return fail(EXIT_INPUT, "invalid generator bounds");
    }
    let cfg = RuleConfig::from_env().with_ties(ties.into());
    let mut generator = ElectionGenerator::new(seed, bounds);
    match search_counterexample(rule, axiom, &mut generator, trials, &cfg, &AxiomCaps::default()) {
        Some(found) => {
            emit(&format!("# counterexample: {rule} {axiom} seed={seed} trial={}\n", found.trial));
            for line in render_verdict(&found.election, rule.name(), &found.verdict).lines() {
                emit(&format!("# {line}\n"));
            }
            emit(&emit_election(&found.election));
            ExitCode::from(EXIT_VIOLATED)
        }
        None => {
            emit(&format!("# no violation of {axiom} by {rule} in {trials} trials (seed {seed})\n"));
            ExitCode::SUCCESS
        }
    }
}

fn compare(file: &PathBuf, ties: Ties) -> ExitCode {
    let e = match load(file) {
        Ok(e) => e,
        Err(code) => return code,
    };
    let cfg = RuleConfig::from_env().with_ties(ties.into());
    let caps = AxiomCaps::default();
    emit(&format!("{:<6}", "rule"));
    for a in Axiom::ALL {
        emit(&format!(" {:>12}", a.name()));
    }
    emit("\n");
    for rule in Rule::ALL {
        emit(&format!("{:<6}", rule.name()));
        for axiom in Axiom::ALL {
            let cell = match check_rule(rule, axiom, &e, &cfg, &caps) {
                Ok(v) => match v.status {
                    Status::Satisfied => "yes",
                    Status::Violated => "NO",
                    Status::Inconclusive(_) => "?",
                },
                Err(AxiomError::RuleCannotRun(_)) => "cap",
                Err(_) => "n/a",
            };
            emit(&format!(" {cell:>12}"));
        }
        emit("\n");
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute {
            rule,
            file,
            ties,
            trace,
            format,
        } => compute(&rule, &file, ties, trace, format),
        Command::Check {
            rule,
            axiom,
            file,
            ties,
            max_ballot_types,
            ejr_cap,
        } => check(
            &rule,
            &axiom,
            &file,
            ties,
            AxiomCaps {
                max_ballot_types,
                ejr_subsets: ejr_cap,
                ..AxiomCaps::default()
            },
        ),
        Command::Search {
            rule,
            axiom,
            seed,
            trials,
            min_candidates,
            max_candidates,
            max_seats,
            max_ballot_types,
            max_count,
            ties,
        } => search(
            &rule,
            &axiom,
            seed,
            trials,
            GeneratorBounds {
                min_candidates,
                max_candidates,
                max_seats,
                max_ballot_types,
                max_count,
            },
            ties,
        ),
        Command::Compare { file, ties } => compare(&file, ties),
    }
}
