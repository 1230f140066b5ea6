use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use logbound::boundengine::BoundMode;
use logbound::cli::{
    cmd_bound, cmd_height, cmd_jordan, cmd_selftest, cmd_subspace_height, cmd_verify, CommandOutput, InstanceSource, EXIT_USAGE,
};
use logbound::heights::HeightVariant;

#[derive(Parser)]
#[command(name = "logbound", version, about = "Certified lower bounds for linear forms in logarithms on algebraic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Source {
    /// Instance JSON file, or the name of a built-in family
    #[arg(long)]
    instance: Option<String>,
    /// Built-in family: remark10 or remark11
    #[arg(long)]
    family: Option<String>,
    /// Family parameter: N, A..B or a comma list
    #[arg(long)]
    k: Option<String>,
}

impl Source {
    fn resolve(&self) -> Result<InstanceSource> {
        Ok(InstanceSource::from_args(self.instance.as_deref(), self.family.as_deref(), self.k.as_deref())?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Height of a projective point
    Height {
        /// JSON array of coordinates, e.g. '[1,2]' or '[[0,1],[1,0]]'
        #[arg(long)]
        point: String,
        /// Q, Q(i), Q(sqrt(d)) or minimal polynomial coefficients
        #[arg(long, default_value = "Q")]
        field: String,
        /// h, hprime or hhat
        #[arg(long, default_value = "h")]
        variant: String,
        #[arg(long, default_value_t = 128)]
        precision: u32,
        #[arg(long)]
        json: bool,
    },
    /// Height of an instance's subspace
    SubspaceHeight {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "h")]
        variant: String,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Jordan factorization of an instance's K-point
    Jordan {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Certified lower bound for log d(u, W)
    Bound {
        #[command(flatten)]
        source: Source,
        /// hyperplane or theorem
        #[arg(long, default_value = "theorem")]
        mode: String,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Compare bounds against the computed distance
    Verify {
        #[command(flatten)]
        source: Source,
        /// hyperplane, theorem or both
        #[arg(long, default_value = "both")]
        mode: String,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Built-in consistency checks
    Selftest {
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        json: bool,
    },
}

fn modes(s: &str) -> Result<Vec<BoundMode>> {
    if s == "both" {
        return Ok(vec![BoundMode::Hyperplane, BoundMode::Theorem]);
    }
    Ok(vec![s.parse()?])
}

fn run(cli: Cli) -> Result<CommandOutput> {
    Ok(match cli.command {
        Command::Height { point, field, variant, precision, json } => {
            cmd_height(&point, &field, variant.parse::<HeightVariant>()?, precision, json)?
        }
        Command::SubspaceHeight { source, variant, precision, json } => {
            cmd_subspace_height(&source.resolve()?, variant.parse()?, precision, json)?
        }
        Command::Jordan { source, precision, json } => cmd_jordan(&source.resolve()?, precision, json)?,
        Command::Bound { source, mode, precision, json } => cmd_bound(&source.resolve()?, mode.parse()?, precision, json)?,
        Command::Verify { source, mode, precision, json } => cmd_verify(&source.resolve()?, &modes(&mode)?, precision, json)?,
        Command::Selftest { precision, json } => cmd_selftest(precision, json)?,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
