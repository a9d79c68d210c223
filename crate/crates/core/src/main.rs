use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use qdarwin::sweep::{self, Command, Format, ParamsSpec, RangeSpec, RedundancyMode, SweepSpec};
use qdarwin::{Error, Result};

/// Information-flow datasets for the c-maybe model of quantum Darwinism.
#[derive(Parser)]
#[command(name = "qdarwin", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// One row per fragment size with the requested measures
    Curve(Flags),
    /// Redundancy reports, or the large-N fragment-size ratio with --mode ratio
    Redundancy(Flags),
    /// Deviations of the normalized curves from p = 1/2
    Universality(Flags),
    /// Closed form vs model series vs photon-scattering series
    Photon(Flags),
    /// Compare every closed form against the state-vector oracle
    Verify(Flags),
}

#[derive(Args, Clone, Default)]
#[command(group(ArgGroup::new("coupling").args(["angle", "c2", "s"])))]
struct Flags {
    /// Number of environment qubits
    #[arg(long = "N")]
    n: Option<u32>,
    /// Probability of the pointer state |0>
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    /// Gate angle a, with s = cos a
    #[arg(long, allow_negative_numbers = true)]
    angle: Option<f64>,
    /// Squared coupling c^2 = 1 - s^2
    #[arg(long, allow_negative_numbers = true)]
    c2: Option<f64>,
    /// Record overlap s
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    /// First fragment size
    #[arg(long)]
    m_start: Option<u32>,
    /// Last fragment size
    #[arg(long)]
    m_end: Option<u32>,
    /// Comma-separated delta values
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    delta: Option<Vec<f64>>,
    /// Comma-separated measure names (e.g. MutualInfo,HolevoFragment)
    #[arg(long, value_delimiter = ',')]
    measures: Option<Vec<String>>,
    /// Comma-separated p (redundancy) or p' (universality) values
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    p_grid: Option<Vec<f64>>,
    /// Comma-separated c^2 values for redundancy
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    c2_grid: Option<Vec<f64>>,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<Format>,
    /// report or ratio (redundancy only)
    #[arg(long)]
    mode: Option<RedundancyMode>,
    /// JSON config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// RNG seed for verify
    #[arg(long)]
    seed: Option<u64>,
    /// Random parameter draws for verify
    #[arg(long)]
    samples: Option<usize>,
    /// Largest environment drawn by verify
    #[arg(long = "max-N", alias = "max-n")]
    max_n: Option<u32>,
}

impl Flags {
    fn to_spec(&self) -> SweepSpec {
        SweepSpec {
            params: ParamsSpec {
                n: self.n,
                p: self.p,
                c2: self.c2,
                angle: self.angle,
                s: self.s,
            },
            m_range: RangeSpec {
                start: self.m_start,
                end: self.m_end,
            },
            p_grid: self.p_grid.clone(),
            delta_grid: self.delta.clone(),
            c2_grid: self.c2_grid.clone(),
            measures: self.measures.clone(),
            output_path: self.out.clone(),
            format: self.format,
            mode: self.mode,
            seed: self.seed,
            samples: self.samples,
            max_n: self.max_n,
        }
    }
}

fn emit(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut out = BufWriter::new(File::create(p)?);
            write(&mut out)?;
            out.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            write(&mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn run(command: Command, flags: &Flags) -> Result<u8> {
    let base = match &flags.config {
        Some(path) => SweepSpec::from_path(path)?,
        None => SweepSpec::default(),
    };
    let config = base.merge(flags.to_spec()).resolve(command)?;
    let out = config.output_path.as_deref();

    if command == Command::Verify {
        let report = sweep::run_verify(config.max_n, config.samples, config.seed)?;
        emit(out, |w| Ok(w.write_all(report.render().as_bytes())?))?;
        if report.passed() {
            return Ok(0);
        }
        for r in report.failures() {
            eprintln!(
                "qdarwin: {} residual {:e} exceeds {:e} at {}",
                r.name,
                r.max_residual,
                r.tolerance,
                r.worst.as_deref().unwrap_or("-")
            );
        }
        return Ok(2);
    }

    let table = sweep::build_table(&config, command)?;
    emit(out, |w| table.write(config.format, w))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (command, flags) = match &cli.command {
        Cmd::Curve(f) => (Command::Curve, f),
        Cmd::Redundancy(f) => (Command::Redundancy, f),
        Cmd::Universality(f) => (Command::Universality, f),
        Cmd::Photon(f) => (Command::Photon, f),
        Cmd::Verify(f) => (Command::Verify, f),
    };
    match run(command, flags) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qdarwin: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}

fn exit_status(e: &Error) -> u8 {
    e.exit_code().clamp(1, 255) as u8
}
