use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use fibknot::braid::{build_family, BraidWord, EnhancedPhiRule, FamilyOptions, FamilySpec, Variant};
use fibknot::report::{emit, run_family, run_word, sweep, Check, Format, Report, SweepConfig};

#[derive(Parser)]
#[command(
    name = "fibknot",
    version,
    about = "Fibred knot families from braids: generation and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a braid word of the family in the signed-integer text format.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        /// Which word to print.
        #[arg(long, default_value = "beta", value_parser = ["beta", "pi", "phi"])]
        part: String,
    },
    /// Run one named verification on a family member or a braid word.
    Check {
        /// One of: unknot, alexander-trivial, fibre-genus, pa, filling, periodic-identity,
        /// band-witness, homology-invariance, alexander-module, twobridge-crosscheck, growth-proxy.
        name: String,
        #[command(flatten)]
        family: FamilyArgs,
        /// Braid word text, e.g. "strands 3 1 -2 1". Overrides the family arguments.
        #[arg(long, conflicts_with = "word_file")]
        word: Option<String>,
        /// File holding a braid word.
        #[arg(long)]
        word_file: Option<PathBuf>,
    },
    /// Run checks over a grid of parameters given by a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's output path; "-" writes to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Overrides the config's format.
        #[arg(long)]
        format: Option<String>,
    },
    /// Re-render a JSON report as json, csv or table.
    Emit {
        #[arg(long)]
        format: String,
        /// JSON report; stdin when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, default_value_t = 2)]
    genus: u32,
    #[arg(long, default_value_t = 0)]
    power: u32,
    #[arg(long, default_value = "original")]
    variant: String,
    /// How the enhanced Phi is chosen away from genus 2: genus2-only or embed-genus2.
    #[arg(long, default_value = "genus2-only")]
    enhanced_phi: String,
}

impl FamilyArgs {
    fn spec(&self) -> Result<(FamilySpec, FamilyOptions)> {
        let variant: Variant = self.variant.parse()?;
        let rule: EnhancedPhiRule = self.enhanced_phi.parse()?;
        if self.genus == 0 {
            bail!("genus must be at least 1");
        }
        Ok((
            FamilySpec::new(self.genus, self.power, variant),
            FamilyOptions::with_rule(rule),
        ))
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
        }
        _ => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Family { family, part } => {
            let (spec, opts) = family.spec()?;
            let f = build_family(spec, &opts)?;
            let w = match part.as_str() {
                "pi" => f.pi,
                "phi" => f.phi,
                _ => f.beta,
            };
            println!("{w}");
            Ok(0)
        }
        Command::Check {
            name,
            family,
            word,
            word_file,
        } => {
            let check: Check = name.parse()?;
            let word = match (word, word_file) {
                (Some(text), _) => Some(text),
                (None, Some(p)) => {
                    Some(fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?)
                }
                (None, None) => None,
            };
            let (json, code) = match word {
                Some(text) => {
                    let w: BraidWord = text.parse()?;
                    let r = run_word(check, &w)?;
                    (serde_json::to_string_pretty(&r)?, r.exit_code())
                }
                None => {
                    let (spec, opts) = family.spec()?;
                    let r = run_family(spec, &opts, &[check], false);
                    let code = r.checks[0].status.exit_code();
                    (serde_json::to_string_pretty(&r)?, code)
                }
            };
            println!("{json}");
            Ok(code)
        }
        Command::Sweep {
            config,
            output,
            format,
        } => {
            let mut cfg =
                SweepConfig::from_file(&config).with_context(|| format!("config {}", config.display()))?;
            if let Some(f) = format {
                cfg.format = f.parse()?;
            }
            if output.is_some() {
                cfg.output = output;
            }
            let report = sweep(&cfg)?;
            write_out(cfg.output.as_deref(), &emit(&report, &cfg.format)?)?;
            Ok(report.exit_code())
        }
        Command::Emit {
            format,
            input,
            output,
        } => {
            let format: Format = format.parse()?;
            let text = match &input {
                Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
                None => std::io::read_to_string(std::io::stdin())?,
            };
            let report: Report = serde_json::from_str(&text).context("input is not a JSON report")?;
            write_out(output.as_deref(), &emit(&report, &format)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
