//! `ccp`: solve, check and explore contract choice problems from the shell.
//!
//! Exit codes: 0 success or every property holds, 1 a property fails (or
//! the outcome given to `check` is unstable), 2 bad input.

use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use ccp_core::verify::{self, PropertyReport};
use ccp_core::{
    blocking_coalitions, builtin, enumerate_core, enumerate_procedure_outcomes, gen_random, is_superadditive,
    outcome_is_feasible, run_procedure, EnumerationBudget, Error, GenParams, Instance, Outcome, TieBreakPolicy,
    BUILTIN_NAMES,
};

#[derive(Parser)]
#[command(name = "ccp", version, about = "Stable outcomes for contract choice problems")]
struct Cli {
    /// Cap on the number of outcomes (or procedure runs) any enumeration may visit.
    #[arg(long, global = true, env = "CCP_MAX_OUTCOMES", default_value_t = EnumerationBudget::DEFAULT.max_outcomes)]
    max_outcomes: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run firm-proposing deferred acceptance.
    Solve {
        /// Instance file, or a builtin name.
        instance: String,
        /// Tie-break policy: default, reverse or switch.
        #[arg(long, default_value = "default")]
        policy: TieBreakPolicy,
        /// Print one record per stage after the outcome.
        #[arg(long)]
        trace: bool,
        /// Print every outcome reachable under some resolution of ties.
        #[arg(long, conflicts_with_all = ["trace", "policy"])]
        all_tiebreaks: bool,
    },
    /// Check an outcome for stability.
    Check {
        instance: String,
        /// Outcome file.
        outcome: String,
    },
    /// List every stable outcome, then the count.
    Core {
        instance: String,
        /// Overrides --max-outcomes for this run.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Run property checkers, one report per line.
    Verify {
        instance: String,
        /// Comma-separated property names; all applicable ones by default.
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
        /// Outcome checked by prop1 and firm-optimality; defaults to the procedure outcome.
        #[arg(long)]
        outcome: Option<String>,
        /// Policy used for the procedure outcome.
        #[arg(long, default_value = "default")]
        policy: TieBreakPolicy,
    },
    /// Generate a random two-sided instance.
    Gen(GenArgs),
    /// Print a builtin instance.
    Example {
        /// One of gale-shapley-4, illustration, illustration-modified.
        name: Option<String>,
        /// List builtin names.
        #[arg(long, conflicts_with = "name")]
        list: bool,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 2)]
    firms: u32,
    #[arg(long, default_value_t = 2)]
    workers: u32,
    #[arg(long, default_value_t = 1)]
    min_contracts: usize,
    #[arg(long, default_value_t = 3)]
    max_contracts: usize,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    min_value: i64,
    #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
    max_value: i64,
    /// Probability that a firm-worker pair gets a menu.
    #[arg(long, default_value_t = 1.0)]
    density: f64,
    #[arg(long)]
    pairwise_efficient: bool,
    #[arg(long)]
    disjoint_yields: bool,
    /// No agent sees the same payoff twice.
    #[arg(long)]
    strict_preferences: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

const PROPERTIES: [&str; 10] = [
    "pairwise-efficiency",
    "disjoint-yields",
    "superadditive",
    "prop1",
    "prop1-positive",
    "firm-optimality",
    "observation",
    "lemma1",
    "lemma2",
    "note",
];

/// Exit with a code other than 2.
struct Verdict(u8);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = EnumerationBudget::new(cli.max_outcomes);
    match run(cli.command, budget) {
        Ok(Verdict(code)) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn print_line<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn load_instance(arg: &str) -> anyhow::Result<Instance> {
    let inst = if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        Instance::from_json(&text).with_context(|| format!("invalid instance {arg}"))?
    } else if BUILTIN_NAMES.contains(&arg) {
        builtin(arg)?
    } else {
        return Err(anyhow!("{arg}: no such file or builtin instance"));
    };
    for (pair, c) in inst.negative_contracts() {
        eprintln!("warning: menu {pair} has a contract with a negative share ({c}); it can never be used");
    }
    Ok(inst)
}

fn load_outcome(inst: &Instance, arg: &str) -> anyhow::Result<Outcome> {
    let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
    Outcome::from_json(inst, &text).with_context(|| format!("invalid outcome {arg}"))
}

fn run(command: Command, budget: EnumerationBudget) -> anyhow::Result<Verdict> {
    match command {
        Command::Solve { instance, policy, trace, all_tiebreaks } => {
            let inst = load_instance(&instance)?;
            if all_tiebreaks {
                for o in enumerate_procedure_outcomes(&inst, budget)? {
                    println!("{}", o.to_json());
                }
            } else {
                let (o, t) = run_procedure(&inst, policy)?;
                println!("{}", o.to_json());
                if trace {
                    for step in &t.steps {
                        print_line(step)?;
                    }
                }
            }
            Ok(Verdict(0))
        }
        Command::Check { instance, outcome } => {
            let inst = load_instance(&instance)?;
            let o = load_outcome(&inst, &outcome)?;
            let certs = blocking_coalitions(&inst, &o)?;
            for c in &certs {
                print_line(c)?;
            }
            print_line(&serde_json::json!({ "stable": certs.is_empty(), "blocking": certs.len() }))?;
            Ok(Verdict(if certs.is_empty() { 0 } else { 1 }))
        }
        Command::Core { instance, max } => {
            let inst = load_instance(&instance)?;
            let budget = max.map_or(budget, EnumerationBudget::new);
            let core = enumerate_core(&inst, budget)?;
            for o in &core {
                println!("{}", o.to_json());
            }
            print_line(&serde_json::json!({ "count": core.len() }))?;
            Ok(Verdict(0))
        }
        Command::Verify { instance, properties, outcome, policy } => {
            let inst = load_instance(&instance)?;
            verify_cmd(&inst, properties, outcome.as_deref(), policy, budget)
        }
        Command::Gen(a) => {
            let p = GenParams {
                n_firms: a.firms,
                n_workers: a.workers,
                contracts_per_pair: (a.min_contracts, a.max_contracts),
                value_range: (a.min_value, a.max_value),
                menu_density: a.density,
                force_pairwise_efficient: a.pairwise_efficient,
                force_disjoint_yields: a.disjoint_yields,
                strict_preferences: a.strict_preferences,
                seed: a.seed,
            };
            println!("{}", gen_random(&p)?.to_json_pretty());
            Ok(Verdict(0))
        }
        Command::Example { name, list } => {
            match name {
                Some(name) if !list => println!("{}", builtin(&name)?.to_json_pretty()),
                _ => BUILTIN_NAMES.iter().for_each(|n| println!("{n}")),
            }
            Ok(Verdict(0))
        }
    }
}

/// Errors that mean "this property does not apply here" rather than bad input.
fn is_precondition(e: &Error) -> bool {
    matches!(e, Error::PreconditionViolated(_) | Error::NotTwoSided | Error::UnstableInput(_))
}

fn verify_cmd(
    inst: &Instance,
    properties: Vec<String>,
    outcome: Option<&str>,
    policy: TieBreakPolicy,
    budget: EnumerationBudget,
) -> anyhow::Result<Verdict> {
    let explicit = !properties.is_empty();
    let requested: Vec<String> = if explicit { properties } else { PROPERTIES.iter().map(|s| s.to_string()).collect() };
    if let Some(bad) = requested.iter().find(|p| !PROPERTIES.contains(&p.as_str())) {
        return Err(anyhow!("unknown property {bad:?} (known: {})", PROPERTIES.join(", ")));
    }

    let given = outcome.map(|path| load_outcome(inst, path)).transpose()?;
    if let Some(o) = &given {
        if !outcome_is_feasible(inst, o) {
            return Err(Error::InfeasibleOutcome("outcome passed with --outcome".into()).into());
        }
    }
    let subject = || -> ccp_core::Result<Outcome> {
        match &given {
            Some(o) => Ok(o.clone()),
            None => run_procedure(inst, policy).map(|(o, _)| o),
        }
    };

    let mut failed = false;
    for name in &requested {
        let result: ccp_core::Result<(PropertyReport, Option<usize>)> = match name.as_str() {
            "pairwise-efficiency" => verify::is_pairwise_efficient(inst).map(|r| (r, None)),
            "disjoint-yields" => verify::has_disjoint_yields(inst).map(|r| (r, None)),
            "superadditive" => {
                let holds = is_superadditive(inst);
                Ok((
                    PropertyReport {
                        property: "superadditive".into(),
                        holds,
                        witnesses: Vec::new(),
                        strict_form_holds: None,
                        notes: Vec::new(),
                    },
                    None,
                ))
            }
            "prop1" => {
                subject().and_then(|o| verify::is_weakly_pareto_optimal_for_firms(inst, &o, budget)).map(|r| (r, None))
            }
            "prop1-positive" => subject()
                .and_then(|o| verify::is_weakly_pareto_optimal_among_positive_outcomes(inst, &o, budget))
                .map(|r| (r, None)),
            "firm-optimality" => {
                subject().and_then(|o| verify::check_firm_optimality(inst, &o, budget)).map(|r| (r, None))
            }
            "observation" => verify::check_observation(inst, budget).map(|r| (r, None)),
            "lemma1" => verify::sweep_lemma1(inst, budget).map(|(r, n)| (r, Some(n))),
            "lemma2" => verify::sweep_lemma2(inst, budget).map(|(r, n)| (r, Some(n))),
            "note" => verify::sweep_note(inst, budget).map(|(r, n)| (r, Some(n))),
            _ => unreachable!("checked above"),
        };
        match result {
            Ok((report, samples)) => {
                failed |= !report.holds;
                let mut record = serde_json::to_value(&report)?;
                if let (Some(n), Value::Object(map)) = (samples, &mut record) {
                    map.insert("samples".into(), n.into());
                }
                print_line(&record)?;
            }
            Err(e) if is_precondition(&e) && !explicit => {
                print_line(&serde_json::json!({ "property": name, "skipped": e.to_string() }))?;
            }
            Err(e) => return Err(anyhow::Error::new(e).context(format!("property {name}"))),
        }
    }
    Ok(Verdict(if failed { 1 } else { 0 }))
}
