//! Dataset sweeps behind the `qdarwin` command line: configuration merging,
//! the per-command row generators and the oracle verification suite.

mod commands;
mod table;
mod verify;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::kernels::{Overlap, Probability};
use crate::measures::MeasureKind;
use crate::model::CouplingParams;

pub use commands::{curve, photon, ratio_table, redundancy, universality};
pub use table::{format_float, Cell, Format, Table, SIG_DIGITS};
pub use verify::{run_verify, InvariantResult, VerifyReport};

pub const DEFAULT_N: u32 = 100;
pub const DEFAULT_P: f64 = 0.5;
pub const DEFAULT_C2: f64 = 0.4;
pub const DEFAULT_DELTA: f64 = 0.1;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_MAX_N: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Curve,
    Redundancy,
    Universality,
    Photon,
    Verify,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Curve => "curve",
            Command::Redundancy => "redundancy",
            Command::Universality => "universality",
            Command::Photon => "photon",
            Command::Verify => "verify",
        })
    }
}

/// Output of the `redundancy` command: per-measure reports or the
/// large-`N` fragment-size ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RedundancyMode {
    #[default]
    Report,
    Ratio,
}

impl FromStr for RedundancyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "report" => Ok(RedundancyMode::Report),
            "ratio" => Ok(RedundancyMode::Ratio),
            other => Err(Error::Config(format!("unknown mode '{other}' (report or ratio)"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    #[serde(rename = "N")]
    pub n: Option<u32>,
    pub p: Option<f64>,
    pub c2: Option<f64>,
    pub angle: Option<f64>,
    pub s: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub start: Option<u32>,
    pub end: Option<u32>,
}

/// Partially specified sweep, as read from a JSON config file or assembled
/// from command-line flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub params: ParamsSpec,
    #[serde(default)]
    pub m_range: RangeSpec,
    pub p_grid: Option<Vec<f64>>,
    pub delta_grid: Option<Vec<f64>>,
    pub c2_grid: Option<Vec<f64>>,
    pub measures: Option<Vec<String>>,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub mode: Option<RedundancyMode>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    #[serde(rename = "max_N")]
    pub max_n: Option<u32>,
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Fields set in `over` replace those in `self`. Setting any coupling
    /// field in `over` replaces the whole coupling.
    pub fn merge(mut self, over: SweepSpec) -> Self {
        let p = over.params;
        if p.c2.is_some() || p.angle.is_some() || p.s.is_some() {
            self.params.c2 = p.c2;
            self.params.angle = p.angle;
            self.params.s = p.s;
        }
        self.params.n = p.n.or(self.params.n);
        self.params.p = p.p.or(self.params.p);
        self.m_range.start = over.m_range.start.or(self.m_range.start);
        self.m_range.end = over.m_range.end.or(self.m_range.end);
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(p_grid, delta_grid, c2_grid, measures, output_path, format, mode, seed, samples, max_n);
        self
    }

    pub fn resolve(&self, command: Command) -> Result<SweepConfig> {
        SweepConfig::resolve(self, command)
    }
}

/// Fully resolved sweep with every default applied and validated.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub params: CouplingParams,
    pub m_start: u32,
    pub m_end: u32,
    pub p_grid: Vec<f64>,
    pub delta_grid: Vec<f64>,
    pub overlap_grid: Vec<Overlap>,
    pub measures: Vec<MeasureKind>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub mode: RedundancyMode,
    pub seed: u64,
    pub samples: usize,
    pub max_n: u32,
}

fn overlap_from_spec(spec: &ParamsSpec) -> Result<Overlap> {
    match (spec.c2, spec.angle, spec.s) {
        (None, None, None) => Overlap::from_c2(DEFAULT_C2),
        (Some(c2), None, None) => Overlap::from_c2(c2),
        (None, Some(a), None) => Overlap::from_angle(a),
        (None, None, Some(s)) => Overlap::from_s(s),
        _ => Err(Error::Config(
            "specify at most one of c2, angle, s for the coupling".into(),
        )),
    }
}

fn check_grid(name: &str, grid: &[f64], ok: impl Fn(f64) -> bool, domain: &str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Config(format!("{name} must not be empty")));
    }
    if let Some(bad) = grid.iter().find(|&&v| !ok(v)) {
        return Err(Error::Config(format!("{name} value {bad} outside {domain}")));
    }
    Ok(())
}

/// `0.05, 0.10, ..., 0.95`.
pub fn default_p_prime_grid() -> Vec<f64> {
    (1..20).map(|i| i as f64 / 20.0).collect()
}

impl SweepConfig {
    fn resolve(spec: &SweepSpec, command: Command) -> Result<SweepConfig> {
        let n = spec.params.n.unwrap_or(DEFAULT_N);
        let p = Probability::new(spec.params.p.unwrap_or(DEFAULT_P))?;
        let params = CouplingParams::new(n, p, overlap_from_spec(&spec.params)?)?;

        let first_m = match command {
            Command::Universality => 1,
            _ => 0,
        };
        let m_start = spec.m_range.start.unwrap_or(first_m);
        let m_end = spec.m_range.end.unwrap_or(n);
        if m_start > m_end || m_end > n || m_start < first_m {
            return Err(Error::Config(format!(
                "m_range [{m_start}, {m_end}] must satisfy {first_m} <= start <= end <= N = {n}"
            )));
        }

        let p_grid = match (&spec.p_grid, command) {
            (Some(g), _) => g.clone(),
            (None, Command::Universality) => default_p_prime_grid(),
            (None, _) => vec![p.value()],
        };
        check_grid("p_grid", &p_grid, |v| (0.0..=1.0).contains(&v), "[0, 1]")?;

        let delta_grid = spec.delta_grid.clone().unwrap_or_else(|| vec![DEFAULT_DELTA]);
        check_grid("delta_grid", &delta_grid, |v| v > 0.0 && v < 1.0, "(0, 1)")?;

        let overlap_grid = match &spec.c2_grid {
            Some(g) => {
                check_grid("c2_grid", g, |v| (0.0..=1.0).contains(&v), "[0, 1]")?;
                g.iter().map(|&c2| Overlap::from_c2(c2)).collect::<Result<_>>()?
            }
            None => vec![params.overlap()],
        };

        let measures = match &spec.measures {
            Some(names) => names
                .iter()
                .map(|s| s.parse::<MeasureKind>())
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Config(e.to_string()))?,
            None => match command {
                Command::Redundancy => vec![MeasureKind::MutualInfo, MeasureKind::HolevoFragment],
                _ => vec![
                    MeasureKind::MutualInfo,
                    MeasureKind::HolevoSystem,
                    MeasureKind::HolevoFragment,
                ],
            },
        };
        if measures.is_empty() {
            return Err(Error::Config("measures must not be empty".into()));
        }
        for (i, m) in measures.iter().enumerate() {
            if measures[..i].contains(m) {
                return Err(Error::Config(format!("measure {m} listed twice")));
            }
        }
        if command == Command::Redundancy {
            if let Some(bad) = measures.iter().find(|m| !m.is_monotone()) {
                return Err(Error::Config(format!(
                    "redundancy needs a monotone measure (MutualInfo, HolevoSystem, HolevoFragment), got {bad}"
                )));
            }
        }

        let samples = spec.samples.unwrap_or(DEFAULT_SAMPLES);
        if samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }

        Ok(SweepConfig {
            params,
            m_start,
            m_end,
            p_grid,
            delta_grid,
            overlap_grid,
            measures,
            output_path: spec.output_path.clone(),
            format: spec.format.unwrap_or_default(),
            mode: spec.mode.unwrap_or_default(),
            seed: spec.seed.unwrap_or(DEFAULT_SEED),
            samples,
            max_n: spec.max_n.unwrap_or(DEFAULT_MAX_N),
        })
    }

    pub fn m_values(&self) -> impl Iterator<Item = u32> {
        self.m_start..=self.m_end
    }
}

/// Builds the table for a dataset command. `verify` produces a report
/// rather than a table and is not accepted here.
pub fn build_table(config: &SweepConfig, command: Command) -> Result<Table> {
    match command {
        Command::Curve => curve(config),
        Command::Redundancy => match config.mode {
            RedundancyMode::Report => redundancy(config),
            RedundancyMode::Ratio => ratio_table(config),
        },
        Command::Universality => universality(config),
        Command::Photon => photon(config),
        Command::Verify => Err(Error::InvalidParameter(
            "verify emits a report, not a table".into(),
        )),
    }
}
