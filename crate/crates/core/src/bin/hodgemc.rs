//! Command-line surface: compute, check, reduce and oracle-verify module
//! data documents.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hodgemc::angle::Angle;
use hodgemc::error::{Error, Result};
use hodgemc::invariants::{FiniteLabel, ModuleData, PointLocation};
use hodgemc::io;
use hodgemc::katz;
use hodgemc::oracle::{self, VerifyOptions};
use hodgemc::transforms::{self, KummerParameter, TwistParameter};

#[derive(Parser)]
#[command(
    name = "hodgemc",
    version,
    about = "Exact Hodge numerical invariants under middle convolution with a Kummer module"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the resulting document here instead of stdout (atomic: the
    /// file appears complete or not at all)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Shift Hodge indices so the smallest populated p is 0.  Defaults to
    /// on for stdout and off for --out, so piped documents stay raw
    #[arg(long)]
    anchor_p: Option<bool>,
}

#[derive(Subcommand)]
enum Command {
    /// Middle convolution MC_{lambda0} of a data document
    Mc {
        /// Kummer parameter gamma0 as a fraction a/b (lambda0 = exp(-2*i*pi*gamma0))
        #[arg(long)]
        gamma0: String,
        /// Input data document
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rank-one twist of a data document
    Twist {
        /// Twist exponent at a finite point, e.g. --at 0=1/3 (repeatable)
        #[arg(long = "at", value_name = "LOC=A/B")]
        at: Vec<String>,
        /// Input data document
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rank-consistency and invariant report; exit 0 iff clean
    Check {
        /// Input data document
        input: PathBuf,
    },
    /// Katz reduction chain down to rank one
    Reduce {
        /// Input data document
        input: PathBuf,
        /// Write the chain document here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hypergeometric system data from alpha/beta angle lists
    Hypergeom {
        /// Comma-separated angles at infinity, e.g. 1/3,2/3
        #[arg(long)]
        alpha: String,
        /// Comma-separated beta parameters, e.g. 1/12,11/12
        #[arg(long)]
        beta: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Replay the reduction chain through the matrix oracle; exit 0 iff
    /// the comparison report is empty
    Verify {
        /// Input data document
        input: PathBuf,
        /// Seed for the randomized part of the irreducibility certificate
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on the cyclotomic order of oracle tuples
        /// [default: HODGEMC_MAX_CYCLOTOMIC_ORDER or 60]
        #[arg(long)]
        max_order: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Mc {
            gamma0,
            input,
            output,
        } => {
            let data = read_data(&input)?;
            let g0 = KummerParameter::new(parse_angle(&gamma0)?)?;
            let result = transforms::middle_convolve(&data, &g0)?;
            emit_data(&result, &output)?;
            Ok(true)
        }
        Command::Twist { at, input, output } => {
            let data = read_data(&input)?;
            let tw = parse_twist(&at)?;
            let result = transforms::twist(&data, &tw)?;
            emit_data(&result, &output)?;
            Ok(true)
        }
        Command::Check { input } => {
            let data = read_data(&input)?;
            let (text, clean) = io::serialize_check(&data);
            print!("{text}");
            Ok(clean)
        }
        Command::Reduce { input, out } => {
            let data = read_data(&input)?;
            let chain = katz::reduce(&data)?;
            let text = io::serialize_chain(&chain);
            write_or_print(&text, out.as_deref())?;
            Ok(true)
        }
        Command::Hypergeom {
            alpha,
            beta,
            output,
        } => {
            let alpha = parse_angle_list(&alpha)?;
            let beta = parse_angle_list(&beta)?;
            let data = katz::hypergeometric(&alpha, &beta)?;
            emit_data(&data, &output)?;
            Ok(true)
        }
        Command::Verify {
            input,
            seed,
            max_order,
        } => {
            let data = read_data(&input)?;
            let max_order = max_order.unwrap_or_else(max_order_from_env);
            let chain = katz::reduce(&data)?;
            let report = oracle::verify_chain(&chain, &VerifyOptions { max_order, seed })?;
            let clean = report.is_clean();
            print!("{}", io::serialize_verify(&report));
            Ok(clean)
        }
    }
}

fn max_order_from_env() -> u64 {
    std::env::var("HODGEMC_MAX_CYCLOTOMIC_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(oracle::DEFAULT_MAX_ORDER)
}

fn read_data(path: &Path) -> Result<ModuleData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    io::parse_data(&text)
}

fn parse_angle(s: &str) -> Result<Angle> {
    s.parse()
}

fn parse_angle_list(s: &str) -> Result<Vec<Angle>> {
    s.split(',').map(|part| parse_angle(part.trim())).collect()
}

fn parse_twist(specs: &[String]) -> Result<TwistParameter> {
    let mut exponents: BTreeMap<FiniteLabel, Angle> = BTreeMap::new();
    for spec in specs {
        let (loc, angle) = spec.split_once('=').ok_or_else(|| {
            Error::InvalidArgument(format!("expected LOC=A/B in --at, got '{spec}'"))
        })?;
        let label = match io::parse_location(loc)? {
            PointLocation::Finite(l) => l,
            PointLocation::Infinity => {
                return Err(Error::InvalidArgument(
                    "the infinity exponent is derived; twist only finite points".into(),
                ))
            }
        };
        if exponents.insert(label, parse_angle(angle)?).is_some() {
            return Err(Error::InvalidArgument(format!(
                "duplicate twist location in '{spec}'"
            )));
        }
    }
    Ok(TwistParameter::new(exponents))
}

fn emit_data(data: &ModuleData, output: &OutputArgs) -> Result<()> {
    let anchor = output.anchor_p.unwrap_or(output.out.is_none());
    let presented = if anchor { io::anchor_p(data) } else { data.clone() };
    let text = io::serialize_data(&presented);
    write_or_print(&text, output.out.as_deref())
}

fn write_or_print(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            // write to a sibling temp file and rename: no partial outputs
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let tmp = match dir {
                Some(d) => d.join(format!(
                    ".{}.tmp-{}",
                    path.file_name().unwrap_or_default().to_string_lossy(),
                    std::process::id()
                )),
                None => PathBuf::from(format!(".hodgemc.tmp-{}", std::process::id())),
            };
            std::fs::write(&tmp, text)?;
            std::fs::rename(&tmp, path)?;
            Ok(())
        }
    }
}
