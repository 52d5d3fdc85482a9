use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use homcodes::cli::{
    parse_config_text, parse_group_arg, run_blowup, run_cert_decode, run_decode, run_homext,
    run_lambda, run_oracle, run_srg_probe, BlowupConfig, BlowupVariant, DecodeConfig, DecodeMode,
    HomextConfig, LambdaConfig, OracleConfig, SrgProbeConfig,
};
use homcodes::error::{Error, Result};
use homcodes::rat::parse_rat;

#[derive(Parser)]
#[command(
    name = "homcode",
    version,
    about = "List decoding of homomorphism codes over finite groups"
)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum agreement of distinct codewords over a group pair.
    Lambda {
        /// Domain group: z:N,N,.., alt:N, sym:N, or GroupSpec JSON.
        #[arg(long)]
        domain: String,
        /// Codomain group, same syntax.
        #[arg(long)]
        codomain: String,
    },
    /// Run the decoder described by a JSON config file.
    Decode {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Sample agreement certificates without touching the codomain.
    CertDecode {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Classify the extensions of a partial map: none, unique, or multiple.
    Homext {
        config: PathBuf,
        /// Replace the config's closure-node budget.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Exhaustive reference decoding at an explicit threshold.
    Oracle { config: PathBuf },
    /// Build a conjugation family meeting its agreement bound exactly.
    Blowup {
        /// Degree of the alternating domain.
        #[arg(long)]
        n: u32,
        /// Number of codomain blocks.
        #[arg(long)]
        k: u32,
        /// `point` (agreement 1/n) or `binom` (agreement 1/C(n,2)).
        #[arg(long)]
        variant: String,
    },
    /// Estimate how often two random even permutations act fully on a
    /// near-complete orbit.
    SrgProbe {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        trials: u64,
        /// Orbits may miss up to this many points.
        #[arg(long, default_value_t = 0)]
        k_check: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Command-line overrides of a decode config file; the report embeds the
/// overridden values.
#[derive(Args)]
struct Overrides {
    /// Replace the config's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Replace the config's agreement margin, as p/q.
    #[arg(long)]
    eps: Option<String>,
    /// Replace the config's failure budget, as p/q.
    #[arg(long)]
    eta: Option<String>,
    /// Replace the config's extension node budget.
    #[arg(long)]
    budget: Option<u64>,
}

impl Overrides {
    fn apply(&self, config: &mut DecodeConfig) -> Result<()> {
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(eps) = &self.eps {
            config.eps = parse_rat(eps)?;
        }
        if let Some(eta) = &self.eta {
            config.eta = parse_rat(eta)?;
        }
        if let Some(budget) = self.budget {
            config.node_budget = Some(budget);
        }
        Ok(())
    }
}

fn load_config<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_config_text(&text)
}

fn render<T: Serialize>(report: &T) -> Result<String> {
    let mut json = serde_json::to_string_pretty(report)
        .map_err(|e| Error::invalid(format!("report serialization failed: {e}")))?;
    json.push('\n');
    Ok(json)
}

fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Lambda { domain, codomain } => {
            let config = LambdaConfig {
                domain: parse_group_arg(domain)?,
                codomain: parse_group_arg(codomain)?,
            };
            render(&run_lambda(&config)?)
        }
        Command::Decode { config, overrides } => {
            let mut config: DecodeConfig = load_config(config)?;
            overrides.apply(&mut config)?;
            if config.mode == DecodeMode::SrgCert {
                render(&run_cert_decode(&config)?)
            } else {
                render(&run_decode(&config)?)
            }
        }
        Command::CertDecode { config, overrides } => {
            let mut config: DecodeConfig = load_config(config)?;
            overrides.apply(&mut config)?;
            render(&run_cert_decode(&config)?)
        }
        Command::Homext { config, budget } => {
            let mut config: HomextConfig = load_config(config)?;
            if let Some(b) = budget {
                config.node_budget = Some(*b);
            }
            render(&run_homext(&config)?)
        }
        Command::Oracle { config } => {
            let config: OracleConfig = load_config(config)?;
            render(&run_oracle(&config)?)
        }
        Command::Blowup { n, k, variant } => {
            let variant = match variant.as_str() {
                "point" => BlowupVariant::Point,
                "binom" => BlowupVariant::Binom,
                other => {
                    return Err(Error::invalid(format!(
                        "unknown blowup variant `{other}` (point or binom)"
                    )))
                }
            };
            let config = BlowupConfig {
                n: *n,
                k: *k,
                variant,
            };
            render(&run_blowup(&config)?)
        }
        Command::SrgProbe {
            n,
            trials,
            k_check,
            seed,
        } => {
            let config = SrgProbeConfig {
                n: *n,
                trials: *trials,
                k_check: *k_check,
                seed: *seed,
            };
            render(&run_srg_probe(&config)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = match execute(&cli) {
        Ok(json) => json,
        Err(e) => {
            eprintln!("homcode: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &json) {
                eprintln!("homcode: cannot write {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None => print!("{json}"),
    }
    ExitCode::SUCCESS
}
