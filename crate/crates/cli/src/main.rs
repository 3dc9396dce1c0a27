use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use noncomm_cli::report::{to_json, Envelope};
use noncomm_cli::{commands, CampaignConfig, CliError, EXIT_VIOLATION};

#[derive(Parser)]
#[command(
    name = "noncomm-lab",
    version,
    about = "Noncommuting graphs and discrete functional inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a group: order, center, element labels.
    Group {
        /// Group spec such as Q8, D4, S3xC2.
        spec: String,
    },
    /// Build the noncommuting graph and optionally export it.
    Graph {
        #[arg(long)]
        group: String,
        /// Write Graphviz DOT to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write a JSON vertex/edge dump to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a verification campaign.
    Verify {
        #[command(flatten)]
        campaign: CampaignArgs,
        /// Run every check (the default when --checks is absent).
        #[arg(long)]
        all: bool,
        /// Comma-separated subset of p_property, isoperimetric, sobolev_flat,
        /// dagger, double_dagger, chain.
        #[arg(long)]
        checks: Option<String>,
        /// Directory for per-check reports and summary.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print ν₂, c and empirical inequality constants.
    Constants {
        #[command(flatten)]
        campaign: CampaignArgs,
    },
    /// Evaluate the dyadic chain on seeded random functions.
    Chain {
        #[command(flatten)]
        campaign: CampaignArgs,
    },
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long)]
    group: Option<String>,
    /// key = value config file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// exhaustive or sampled (isoperimetric scan).
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Random functions in the family, subsets in sampled mode.
    #[arg(long)]
    count: Option<usize>,
    /// indicators, subsets, random, random:N, truncations, default.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    iota: Option<f64>,
    #[arg(long)]
    r0: Option<f64>,
    /// Dimension override.
    #[arg(long)]
    n: Option<f64>,
    /// Exponent of the flat Sobolev form.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    v0: Option<f64>,
    /// general or gamma_g.
    #[arg(long)]
    c_variant: Option<String>,
}

impl CampaignArgs {
    fn into_config(self) -> Result<CampaignConfig, CliError> {
        let mut config = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
                    path: path.clone(),
                    source: e,
                })?;
                CampaignConfig::from_key_values(&text)?
            }
            None => CampaignConfig::new(""),
        };
        let overrides = [
            ("group", self.group),
            ("mode", self.mode),
            ("seed", self.seed.map(|v| v.to_string())),
            ("count", self.count.map(|v| v.to_string())),
            ("family", self.family),
            ("delta", self.delta.map(|v| v.to_string())),
            ("iota", self.iota.map(|v| v.to_string())),
            ("r0", self.r0.map(|v| v.to_string())),
            ("n", self.n.map(|v| v.to_string())),
            ("p", self.p.map(|v| v.to_string())),
            ("v0", self.v0.map(|v| v.to_string())),
            ("c_variant", self.c_variant),
        ];
        for (key, value) in overrides {
            if let Some(value) = value {
                config.apply(key, &value)?;
            }
        }
        Ok(config)
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Group { spec } => print(&Envelope::new("group", commands::group(&spec)?)),
        Command::Graph { group, dot, json } => {
            let info = commands::graph(&group, dot.as_deref(), json.as_deref())?;
            print(&Envelope::new("graph", info))
        }
        Command::Verify {
            campaign,
            all,
            checks,
            out,
        } => {
            let mut config = campaign.into_config()?;
            if let Some(checks) = checks {
                config.apply("checks", &checks)?;
            }
            if all {
                config.apply("checks", "all")?;
            }
            if let Some(out) = out {
                config.output = Some(out);
            }
            let result = noncomm_cli::run(&config)?;
            if let Some(dir) = &config.output {
                result.write(dir)?;
            }
            print!("{}", to_json(&result.summary));
            Ok(result.exit_code())
        }
        Command::Constants { campaign } => {
            let config = campaign.into_config()?;
            print(&Envelope::new("constants", commands::constants(&config)?))
        }
        Command::Chain { campaign } => {
            let config = campaign.into_config()?;
            let (value, passed) = commands::chain(&config)?;
            print!("{}", to_json(&Envelope::new("chain", value)));
            Ok(if passed { 0 } else { EXIT_VIOLATION })
        }
    }
}

fn print<T: serde::Serialize>(value: &T) -> Result<i32, CliError> {
    print!("{}", to_json(value));
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("noncomm-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
