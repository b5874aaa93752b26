use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use snc_cli::commands::{
    self, CohesionArgs, Context, IndecomposableArgs, Outcome, ReachArgs, ReachTarget, SimulateArgs,
    TauChoice, TrajectoryFormat,
};
use snc_cli::document::{parse_document, ResolvedGame};
use snc_cli::fixtures::{fixture_names, fixture_text};
use snc_cli::report::{emit, RunReport, SCHEMA_VERSION};
use snc_cli::{CliError, CAP_ENV};
use snc_core::Action;

/// Analyse signed network coordination games with binary actions.
#[derive(Debug, Parser)]
#[command(name = "snc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GameArgs {
    /// Game document (JSON).
    #[arg(long, value_name = "FILE", conflicts_with = "fixture")]
    game: Option<PathBuf>,
    /// Bundled fixture instead of a file (see `snc fixture --list`).
    #[arg(long, value_name = "NAME")]
    fixture: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Largest node count for exhaustive searches (overrides SNC_CAP).
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Debug, Args)]
struct TauArgs {
    /// Profile whose entries on the set give tau.
    #[arg(long, value_name = "PROFILE")]
    tau: Option<String>,
    /// Uniform action on the set: 1 or -1.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_action)]
    a: Option<Action>,
}

impl TauArgs {
    fn choice(&self) -> TauChoice {
        TauChoice {
            profile: self.tau.clone(),
            action: self.a,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Nash,
    Strict,
    Consensus,
    Profile,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every pure Nash equilibrium.
    Nash {
        #[command(flatten)]
        game: GameArgs,
    },
    /// Run asynchronous best-response dynamics.
    Simulate {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
        /// Named full profile to start from (default: all -1).
        #[arg(long, value_name = "PROFILE")]
        profile: Option<String>,
        /// Stop as soon as a Nash equilibrium is reached.
        #[arg(long)]
        stop_at_nash: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Test structural balance of the whole network or a named set.
    Balance {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        set: Option<String>,
    },
    /// Test indecomposability of a (gauge-transformed) subnetwork.
    Indecomposable {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        set: Option<String>,
        #[command(flatten)]
        tau: TauArgs,
        /// Comma-separated upper field bounds, one per member.
        #[arg(long, allow_hyphen_values = true)]
        hplus: Option<String>,
        /// Comma-separated lower field bounds (default: minus hplus).
        #[arg(long, allow_hyphen_values = true)]
        hminus: Option<String>,
    },
    /// Test consensus, polarized or strict cohesion of a named set.
    Cohesion {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        set: String,
        #[command(flatten)]
        tau: TauArgs,
        #[arg(long, conflicts_with_all = ["tau", "a"])]
        strict: bool,
    },
    /// Build an equilibrium with the set in (polarized) consensus.
    Existence {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        set: String,
        #[command(flatten)]
        tau: TauArgs,
    },
    /// Certify global stability of consensus on the set.
    Stability {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        set: String,
        #[command(flatten)]
        tau: TauArgs,
        /// Also compute the outcome on the transition graph.
        #[arg(long)]
        empirical: bool,
    },
    /// Global reachability and invariance of a target set.
    Reach {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum, default_value = "nash")]
        target: Target,
        /// Target profile for `--target profile`.
        #[arg(long, value_name = "PROFILE")]
        profile: Option<String>,
        /// Report a shortest best-response path from this profile.
        #[arg(long, value_name = "PROFILE")]
        from: Option<String>,
    },
    /// Potential value and maximiser, or an obstruction for directed games.
    Potential {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_name = "PROFILE")]
        profile: Option<String>,
    },
    /// Print a bundled fixture document.
    Fixture {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        list: bool,
    },
}

fn parse_action(s: &str) -> Result<Action, String> {
    let v: i64 = s
        .trim_start_matches('+')
        .parse()
        .map_err(|_| format!("`{s}` is not 1 or -1"))?;
    Action::from_sign(v).map_err(|_| format!("`{s}` is not 1 or -1"))
}

fn load(args: &GameArgs) -> Result<Context, CliError> {
    let (text, source) = match (&args.game, &args.fixture) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            (text, path.display().to_string())
        }
        (None, Some(name)) => (fixture_text(name)?, format!("fixture:{name}")),
        _ => {
            return Err(CliError::Usage(
                "pass exactly one of --game or --fixture".into(),
            ))
        }
    };
    let game = ResolvedGame::new(parse_document(&text)?)?;
    let cap = match args.cap {
        Some(c) => Some(c),
        None => match std::env::var(CAP_ENV) {
            Ok(v) => Some(
                v.parse()
                    .map_err(|_| CliError::Usage(format!("{CAP_ENV}=`{v}` is not a number")))?,
            ),
            Err(_) => None,
        },
    };
    Ok(Context { game, source, cap })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (name, game_args, outcome): (&str, &GameArgs, Outcome) = match &cli.command {
        Command::Fixture { name, list } => {
            let text = match (name, list) {
                (_, true) | (None, false) => fixture_names().join("\n") + "\n",
                (Some(n), false) => fixture_text(n)?,
            };
            emit(&text, None)?;
            return Ok(0);
        }
        Command::Nash { game } => ("nash", game, commands::nash(&load(game)?)?),
        Command::Simulate {
            game,
            seed,
            steps,
            profile,
            stop_at_nash,
            format,
        } => {
            let args = SimulateArgs {
                seed: *seed,
                steps: *steps,
                start: profile.clone(),
                stop_at_nash: *stop_at_nash,
                format: match format {
                    Format::Json => TrajectoryFormat::Json,
                    Format::Csv => TrajectoryFormat::Csv,
                },
            };
            (
                "simulate",
                game,
                commands::simulate_cmd(&load(game)?, &args)?,
            )
        }
        Command::Balance { game, set } => (
            "balance",
            game,
            commands::balance(&load(game)?, set.as_deref())?,
        ),
        Command::Indecomposable {
            game,
            set,
            tau,
            hplus,
            hminus,
        } => {
            let args = IndecomposableArgs {
                set: set.clone(),
                tau: tau.choice(),
                hplus: hplus.clone(),
                hminus: hminus.clone(),
            };
            (
                "indecomposable",
                game,
                commands::indecomposable(&load(game)?, &args)?,
            )
        }
        Command::Cohesion {
            game,
            set,
            tau,
            strict,
        } => {
            let args = CohesionArgs {
                set: set.clone(),
                tau: tau.choice(),
                strict: *strict,
            };
            ("cohesion", game, commands::cohesion(&load(game)?, &args)?)
        }
        Command::Existence { game, set, tau } => (
            "existence",
            game,
            commands::existence(&load(game)?, set, &tau.choice())?,
        ),
        Command::Stability {
            game,
            set,
            tau,
            empirical,
        } => (
            "stability",
            game,
            commands::stability(&load(game)?, set, &tau.choice(), *empirical)?,
        ),
        Command::Reach {
            game,
            target,
            profile,
            from,
        } => {
            let args = ReachArgs {
                target: match target {
                    Target::Nash => ReachTarget::Nash,
                    Target::Strict => ReachTarget::Strict,
                    Target::Consensus => ReachTarget::Consensus,
                    Target::Profile => ReachTarget::Profile,
                },
                profile: profile.clone(),
                from: from.clone(),
            };
            ("reach", game, commands::reach(&load(game)?, &args)?)
        }
        Command::Potential { game, profile } => (
            "potential",
            game,
            commands::potential(&load(game)?, profile.as_deref())?,
        ),
    };
    let text = match outcome.raw {
        Some(raw) => raw,
        None => RunReport {
            schema_version: SCHEMA_VERSION,
            command: name.to_string(),
            config: outcome.config,
            result: outcome.result,
            exit_code: outcome.exit_code,
        }
        .to_json(),
    };
    emit(&text, game_args.out.as_deref())?;
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
