// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use safevote::campaign::{CampaignConfig, DEFAULT_BUDGET, DEFAULT_MAX_ATTEMPTS};
use safevote::commands::{self, Format, Output, EXIT_ERROR};
use safevote::format::{load_profile, load_rule};
use safevote::{Error, Result};

/// Safe strategic voting: analysis, safety verdicts, verification campaigns
/// and simplex figures.
#[derive(Parser, Debug)]
#[command(name = "safevote", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Winner, manipulators, incentives and escapes of a profile.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Safety of one strategic vote for one voter type.
    Safety {
        #[command(flatten)]
        input: Input,
        /// Sincere order of the type, e.g. "A > B > C".
        #[arg(long = "type")]
        type_order: String,
        /// Order the type switches to.
        #[arg(long)]
        strategic: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample onto non-dictatorial table rules and certify each.
    Verify {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        /// Profiles scanned per search before giving up.
        #[arg(long, env = "SAFEVOTE_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Tables drawn per sample before giving up.
        #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Render the simplex figure described by a rule config.
    Figure {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = FormatArg::Svg)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the worked examples.
    Examples {
        /// Directory with example1 .. example5 to use instead of the bundled fixtures.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct Input {
    #[arg(long)]
    profile: PathBuf,
    #[arg(long)]
    rule: PathBuf,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Svg,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Svg => Format::Svg,
        }
    }
}

fn run(command: Command) -> Result<(Output, Option<PathBuf>)> {
    Ok(match command {
        Command::Analyze { input, output } => {
            let rule = load_rule(&input.rule)?;
            let profile = load_profile(&input.profile)?;
            (commands::analyze(&rule.rule, &profile, output.format.into())?, output.out)
        }
        Command::Safety { input, type_order, strategic, output } => {
            let rule = load_rule(&input.rule)?;
            let profile = load_profile(&input.profile)?;
            let d = profile.domain();
            let t = d.parse_order(&type_order)?;
            let l = d.parse_order(&strategic)?;
            (commands::safety(&rule.rule, &profile, &t, &l, output.format.into())?, output.out)
        }
        Command::Verify { n, m, samples, seed, budget, max_attempts, output } => {
            let config = CampaignConfig { n, m, samples, seed, budget, max_attempts };
            (commands::verify(&config, output.format.into())?, output.out)
        }
        Command::Figure { input, format, out } => {
            let rule = load_rule(&input.rule)?;
            let profile = load_profile(&input.profile)?;
            (commands::figure(&rule, &profile, format.into())?, out)
        }
        Command::Examples { fixtures, output } => {
            (commands::examples(fixtures.as_deref(), output.format.into())?, output.out)
        }
    })
}

fn write(body: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|source| Error::Io { path: path.to_path_buf(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command).and_then(|(output, out)| {
        write(&output.body, out.as_deref())?;
        Ok(output.status)
    }) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
