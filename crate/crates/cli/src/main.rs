//! `urnstat`: exact inference on finite urns from the command line.

mod demo;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigUint;
use serde_json::{json, Map, Value as Json};
use urnstat::{
    binomial, confidence_set, coverage_urn, mc_p_value, p_value, p_value_enumerated, power,
    randomization_p_value, space_size, Composition, Sided, UrnError, DEFAULT_ENUMERATION_LIMIT,
};

use crate::input::{load_urn, parse_family, parse_grid, parse_statistic, parse_value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{origin}: {source}")]
    Input { origin: String, source: UrnError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Urn(#[from] UrnError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Urn(e) | CliError::Input { source: e, .. } if e.is_capacity() => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exact proportions, p-values, confidence sets and power for finite urns.
#[derive(Debug, Parser)]
#[command(name = "urnstat", version)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: Format,
    /// Decimal places for the rounded companion of each exact proportion.
    #[arg(long, global = true, default_value_t = 4)]
    places: usize,
    /// Largest sample space that full enumeration will walk.
    #[arg(long, global = true, env = "URNSTAT_ENUM_LIMIT", default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct UrnSource {
    /// Urn JSON file: {"entries":[{"value":"1","count":3,"label":"red"}]}.
    #[arg(long)]
    urn: Option<PathBuf>,
    /// The same document given inline.
    #[arg(long)]
    urn_json: Option<String>,
}

impl UrnSource {
    fn load(&self) -> Result<urnstat::Urn, CliError> {
        load_urn(self.urn.as_ref(), self.urn_json.as_deref())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PMethod {
    /// Count compositions with their weights.
    Exact,
    /// Visit every subset of balls.
    Enum,
    /// Seeded simple random samples.
    Mc,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Proportion of balls in an urn that satisfy an event.
    Prop {
        #[command(flatten)]
        source: UrnSource,
        /// Balls carrying this label.
        #[arg(long, conflicts_with = "value", required_unless_present = "value")]
        event: Option<String>,
        /// Balls carrying this value.
        #[arg(long)]
        value: Option<String>,
    },
    /// Upper-tail p-value of a statistic over size-n samples.
    Pvalue {
        #[command(flatten)]
        source: UrnSource,
        #[arg(long)]
        n: u64,
        /// sum | mean | count:<v> | absdev:<c> | table:<file.json>
        #[arg(long)]
        stat: String,
        #[arg(long = "t-obs")]
        t_obs: String,
        #[arg(long, value_enum, default_value = "exact")]
        method: PMethod,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        draws: Option<u64>,
    },
    /// Randomization test for a two-group trial with a binary outcome.
    Randtest {
        #[arg(long = "nA", requires_all = ["n_b", "fav_a", "fav_b"], conflicts_with = "table")]
        n_a: Option<u64>,
        #[arg(long = "nB")]
        n_b: Option<u64>,
        #[arg(long = "favA")]
        fav_a: Option<u64>,
        #[arg(long = "favB")]
        fav_b: Option<u64>,
        /// CSV with header group,outcome.
        #[arg(long, required_unless_present = "n_a")]
        table: Option<PathBuf>,
        /// one-a | one-b | two
        #[arg(long, default_value = "one-a")]
        sided: Sided,
    },
    /// Confidence set by inverting exact tests over a grid.
    Ci {
        /// binary or binary:<urn size>
        #[arg(long, default_value = "binary")]
        family: String,
        /// step:<h> | lattice | comma-separated values
        #[arg(long, default_value = "step:0.01")]
        grid: String,
        #[arg(long)]
        n: u64,
        /// Number of ones in the observed sample.
        #[arg(long)]
        ones: u64,
        #[arg(long)]
        alpha: String,
    },
    /// Exact coverage of the confidence set at a true parameter.
    Coverage {
        #[arg(long, default_value = "binary")]
        family: String,
        #[arg(long, default_value = "step:0.01")]
        grid: String,
        #[arg(long = "theta-star")]
        theta_star: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alpha: String,
    },
    /// Critical value, achieved size and rejection rate under an alternative.
    Power {
        /// Null urn JSON file.
        #[arg(long)]
        null: PathBuf,
        /// Alternative urn JSON file.
        #[arg(long)]
        alt: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        stat: String,
        #[arg(long)]
        alpha: String,
    },
    /// Monte Carlo estimate of an upper-tail proportion.
    Mc {
        #[command(flatten)]
        source: UrnSource,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        stat: String,
        #[arg(long = "t-obs")]
        t_obs: String,
        #[arg(long)]
        draws: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Worked examples.
    Demo {
        #[arg(value_enum)]
        name: demo::DemoName,
        /// Envelopes opened before the question is asked.
        #[arg(long, default_value_t = 0)]
        open: u64,
        /// The opened envelopes held no winner (default).
        #[arg(long, conflicts_with = "opened_wins")]
        opened_loses: bool,
        /// One of the opened envelopes held the winner.
        #[arg(long)]
        opened_wins: bool,
        /// Seed for the Monte Carlo cross-check.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Draws for the Monte Carlo cross-check.
        #[arg(long, default_value_t = 100_000)]
        draws: u64,
    },
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Prop { .. } => "prop",
        Command::Pvalue { .. } => "pvalue",
        Command::Randtest { .. } => "randtest",
        Command::Ci { .. } => "ci",
        Command::Coverage { .. } => "coverage",
        Command::Power { .. } => "power",
        Command::Mc { .. } => "mc",
        Command::Demo { .. } => "demo",
    }
}

fn run(cli: &Cli) -> Result<Map<String, Json>, CliError> {
    let places = cli.places;
    let mut out = match &cli.command {
        Command::Prop {
            source,
            event,
            value,
        } => {
            let urn = source.load()?;
            let target = match (event, value) {
                (Some(label), None) => urn
                    .value_for_label(label)
                    .cloned()
                    .ok_or_else(|| CliError::Usage(format!("no ball is labeled {label:?}")))?,
                (None, Some(v)) => parse_value(v)?,
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of --event or --value".into(),
                    ))
                }
            };
            let p = urn.event_proportion(|v| *v == target);
            let mut m = Map::new();
            m.insert("value".into(), json!(target.to_string()));
            m.insert("hits".into(), json!(urn.count_of(&target)));
            m.insert("total".into(), json!(urn.total()));
            m.insert("method".into(), json!("counting"));
            m.insert("space_size".into(), json!(urn.total().to_string()));
            m.insert("p".into(), report::proportion(&p, places));
            m
        }
        Command::Pvalue {
            source,
            n,
            stat,
            t_obs,
            method,
            seed,
            draws,
        } => {
            let urn = source.load()?;
            let stat = parse_statistic(stat)?;
            let t_obs = parse_value(t_obs)?;
            let r = match method {
                PMethod::Exact => p_value(&urn, *n, &stat, &t_obs)?,
                PMethod::Enum => {
                    p_value_enumerated(&urn, *n, &stat, &t_obs, &BigUint::from(cli.limit))?
                }
                PMethod::Mc => {
                    let (Some(seed), Some(draws)) = (seed, draws) else {
                        return Err(CliError::Usage(
                            "--method mc needs both --seed and --draws".into(),
                        ));
                    };
                    mc_p_value(&urn, *n, &stat, &t_obs, *draws, *seed)?
                }
            };
            let mut m = report::p_value(&r, places);
            m.insert("stat".into(), json!(stat.name()));
            m.insert("n".into(), json!(n));
            m
        }
        Command::Randtest {
            n_a,
            n_b,
            fav_a,
            fav_b,
            table,
            sided,
        } => {
            let counts = match (table, n_a, n_b, fav_a, fav_b) {
                (Some(path), ..) => input::read_trial_table(path)?,
                (None, Some(n_a), Some(n_b), Some(fav_a), Some(fav_b)) => input::TrialCounts {
                    n_a: *n_a,
                    n_b: *n_b,
                    fav_a: *fav_a,
                    fav_b: *fav_b,
                },
                _ => {
                    return Err(CliError::Usage(
                        "give --nA --nB --favA --favB or --table".into(),
                    ))
                }
            };
            let r =
                randomization_p_value(counts.n_a, counts.n_b, counts.fav_a, counts.fav_b, *sided)?;
            let mut m = report::p_value(&r, places);
            m.insert("sided".into(), json!(sided.as_str()));
            m.insert(
                "groups".into(),
                json!({
                    "A": {"n": counts.n_a, "favorable": counts.fav_a},
                    "B": {"n": counts.n_b, "favorable": counts.fav_b},
                }),
            );
            m
        }
        Command::Ci {
            family,
            grid,
            n,
            ones,
            alpha,
        } => {
            let fam = parse_family(family)?;
            let grid = parse_grid(grid, &fam)?;
            if ones > n {
                return Err(CliError::Usage(format!("--ones {ones} exceeds --n {n}")));
            }
            let x = Composition::new(vec![n - ones, *ones]);
            let set = confidence_set(&fam, &grid, &x, &parse_value(alpha)?)?;
            let mut m = report::confidence_set(&set, places);
            m.insert("method".into(), json!("counting"));
            m.insert(
                "space_size".into(),
                json!(binomial(fam.denominator(), *n).to_string()),
            );
            m.insert(
                "family".into(),
                json!(format!("binary:{}", fam.denominator())),
            );
            m.insert("n".into(), json!(n));
            m.insert("ones".into(), json!(ones));
            m
        }
        Command::Coverage {
            family,
            grid,
            theta_star,
            n,
            alpha,
        } => {
            let fam = parse_family(family)?;
            let grid = parse_grid(grid, &fam)?;
            let r = coverage_urn(
                &fam,
                &grid,
                &parse_value(theta_star)?,
                *n,
                &parse_value(alpha)?,
            )?;
            let mut m = report::coverage(&r, places);
            m.insert("method".into(), json!("counting"));
            m.insert("space_size".into(), json!(r.n_samples.to_string()));
            m.insert(
                "family".into(),
                json!(format!("binary:{}", fam.denominator())),
            );
            m.insert("n".into(), json!(n));
            m
        }
        Command::Power {
            null,
            alt,
            n,
            stat,
            alpha,
        } => {
            let null_urn = load_urn(Some(null), None)?;
            let alt_urn = load_urn(Some(alt), None)?;
            let stat = parse_statistic(stat)?;
            let r = power(&null_urn, &alt_urn, *n, &stat, &parse_value(alpha)?)?;
            let mut m = report::power(&r, places);
            m.insert("method".into(), json!("counting"));
            m.insert(
                "space_size".into(),
                json!(space_size(&null_urn, *n)?.to_string()),
            );
            m.insert("stat".into(), json!(stat.name()));
            m.insert("n".into(), json!(n));
            m
        }
        Command::Mc {
            source,
            n,
            stat,
            t_obs,
            draws,
            seed,
        } => {
            let urn = source.load()?;
            let stat = parse_statistic(stat)?;
            let r = mc_p_value(&urn, *n, &stat, &parse_value(t_obs)?, *draws, *seed)?;
            let mut m = report::p_value(&r, places);
            m.insert("stat".into(), json!(stat.name()));
            m.insert("n".into(), json!(n));
            m
        }
        Command::Demo {
            name,
            open,
            opened_loses: _,
            opened_wins,
            seed,
            draws,
        } => {
            let opts = demo::DemoOptions {
                open: *open,
                opened_wins: *opened_wins,
                seed: *seed,
                draws: *draws,
            };
            let mut m = demo::run(*name, &opts, places)?;
            m.insert(
                "demo".into(),
                json!(name
                    .to_possible_value()
                    .expect("no skipped variants")
                    .get_name()),
            );
            m
        }
    };
    out.insert("command".into(), json!(command_name(&cli.command)));
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let report = Json::Object(report);
            match cli.output {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("reports serialize")
                ),
                Format::Text => print!("{}", report::to_text(&report)),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
