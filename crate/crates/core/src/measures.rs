//! Closed-form information measures between the system `S` and an
//! `m`-qubit environment fragment `F_m`.
//!
//! Every function also accepts `m = 0` (the empty fragment), where the
//! correlation measures vanish and the entanglement with the complement is
//! the full `H_S`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{arctanh2_from_gap, branch_entropy, entropy_bits};
use crate::model::CouplingParams;

/// Selector over the nine measures the toolkit can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasureKind {
    MutualInfo,
    HolevoSystem,
    HolevoFragment,
    HolevoSystemGoodDec,
    HolevoFragmentGoodDec,
    DiscordSystemic,
    DiscordFragmentary,
    EoF,
    Concurrence,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 9] = [
        MeasureKind::MutualInfo,
        MeasureKind::HolevoSystem,
        MeasureKind::HolevoFragment,
        MeasureKind::HolevoSystemGoodDec,
        MeasureKind::HolevoFragmentGoodDec,
        MeasureKind::DiscordSystemic,
        MeasureKind::DiscordFragmentary,
        MeasureKind::EoF,
        MeasureKind::Concurrence,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            MeasureKind::MutualInfo => "MutualInfo",
            MeasureKind::HolevoSystem => "HolevoSystem",
            MeasureKind::HolevoFragment => "HolevoFragment",
            MeasureKind::HolevoSystemGoodDec => "HolevoSystemGoodDec",
            MeasureKind::HolevoFragmentGoodDec => "HolevoFragmentGoodDec",
            MeasureKind::DiscordSystemic => "DiscordSystemic",
            MeasureKind::DiscordFragmentary => "DiscordFragmentary",
            MeasureKind::EoF => "EoF",
            MeasureKind::Concurrence => "Concurrence",
        }
    }

    /// Column name used in emitted datasets.
    pub fn column(self) -> &'static str {
        match self {
            MeasureKind::MutualInfo => "mutual_info",
            MeasureKind::HolevoSystem => "holevo_system",
            MeasureKind::HolevoFragment => "holevo_fragment",
            MeasureKind::HolevoSystemGoodDec => "holevo_system_good_dec",
            MeasureKind::HolevoFragmentGoodDec => "holevo_fragment_good_dec",
            MeasureKind::DiscordSystemic => "discord_systemic",
            MeasureKind::DiscordFragmentary => "discord_fragmentary",
            MeasureKind::EoF => "eof",
            MeasureKind::Concurrence => "concurrence",
        }
    }

    /// Measures that increase with `m` and saturate at `H_S`, so that a
    /// redundancy threshold is well defined.
    pub fn is_monotone(self) -> bool {
        matches!(
            self,
            MeasureKind::MutualInfo | MeasureKind::HolevoSystem | MeasureKind::HolevoFragment
        )
    }

    pub fn evaluate(
        self,
        params: &CouplingParams,
        m: u32,
        policy: &GoodDecoherencePolicy,
    ) -> Result<f64> {
        match self {
            MeasureKind::MutualInfo => mutual_information(params, m),
            MeasureKind::HolevoSystem => holevo_system(params, m),
            MeasureKind::HolevoFragment => holevo_fragment(params, m),
            MeasureKind::HolevoSystemGoodDec => holevo_system_good_dec(params, m, policy),
            MeasureKind::HolevoFragmentGoodDec => holevo_fragment_good_dec(params, m, policy),
            MeasureKind::DiscordSystemic => discord_systemic(params, m),
            MeasureKind::DiscordFragmentary => discord_fragmentary(params, m),
            MeasureKind::EoF => entanglement_of_formation(params, m),
            MeasureKind::Concurrence => concurrence(params, m),
        }
    }

    /// Same closed forms with a real-valued fragment size `m` in `[0, N]`.
    /// Only defined for the monotone measures.
    pub fn evaluate_continuous(self, params: &CouplingParams, m: f64) -> Result<f64> {
        let n = params.n() as f64;
        if !(0.0..=n).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "continuous fragment size {m} outside [0, {n}]"
            )));
        }
        match self {
            MeasureKind::MutualInfo => Ok(mutual_information_at(params, m)),
            MeasureKind::HolevoSystem => Ok(holevo_system_at(params, m)),
            MeasureKind::HolevoFragment => Ok(holevo_fragment_at(params, m)),
            other => Err(Error::InvalidParameter(format!(
                "{other} has no continuous redundancy form"
            ))),
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    /// Accepts either the tag (`HolevoFragment`) or the column name
    /// (`holevo_fragment`), case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim();
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.tag().eq_ignore_ascii_case(key) || k.column().eq_ignore_ascii_case(key))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown measure '{key}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum GoodDecoherenceMode {
    /// Evaluate the limit form only where the predicate holds, error otherwise.
    #[default]
    Auto,
    /// Evaluate the limit form unconditionally.
    Force,
    /// Never use the limit form; fall back to the exact counterpart.
    Forbid,
}

/// When the good-decoherence closed forms may be used. The predicate is
/// `s^(2(N-m)) <= threshold * max(s^(2m), 1e-300)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoodDecoherencePolicy {
    pub mode: GoodDecoherenceMode,
    pub threshold: f64,
}

impl Default for GoodDecoherencePolicy {
    fn default() -> Self {
        GoodDecoherencePolicy {
            mode: GoodDecoherenceMode::Auto,
            threshold: 1e-12,
        }
    }
}

impl GoodDecoherencePolicy {
    pub fn new(mode: GoodDecoherenceMode, threshold: f64) -> Result<Self> {
        if threshold.is_nan() || threshold <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "good-decoherence threshold must be positive, got {threshold}"
            )));
        }
        Ok(GoodDecoherencePolicy { mode, threshold })
    }

    pub fn force() -> Self {
        GoodDecoherencePolicy {
            mode: GoodDecoherenceMode::Force,
            ..Default::default()
        }
    }

    pub fn holds(&self, params: &CouplingParams, m: u32) -> bool {
        let tail = params.sq((params.n() - m) as f64).value;
        let head = params.sq(m as f64).value.max(1e-300);
        tail <= self.threshold * head
    }

    fn check(&self, params: &CouplingParams, m: u32) -> Result<()> {
        if self.holds(params, m) {
            return Ok(());
        }
        Err(Error::GoodDecoherenceViolation {
            n: params.n(),
            m,
            tail: params.sq((params.n() - m) as f64).value,
            threshold: self.threshold,
        })
    }
}

/// Entropy of the marginal whose coherence is damped by `s^k`.
#[inline]
fn marginal_entropy(params: &CouplingParams, k: f64) -> f64 {
    branch_entropy(params.p(), params.sq(k))
}

/// Von Neumann entropy of `rho_S`, the plateau height `H_S = h(lambda+_{N,p})`.
pub fn system_entropy(params: &CouplingParams) -> f64 {
    marginal_entropy(params, params.n() as f64)
}

fn mutual_information_at(params: &CouplingParams, m: f64) -> f64 {
    if params.p().is_degenerate() {
        return 0.0;
    }
    let n = params.n() as f64;
    let i = marginal_entropy(params, n) + marginal_entropy(params, m)
        - marginal_entropy(params, n - m);
    i.max(0.0)
}

fn holevo_system_at(params: &CouplingParams, m: f64) -> f64 {
    marginal_entropy(params, m)
}

/// `h` of `(1 + sqrt(1 - C^2)) / 2` with `C^2 = 4 p q u (1 - w)`, using the
/// stable smaller root.
pub(crate) fn concurrence_entropy(c2: f64) -> f64 {
    let c2 = c2.clamp(0.0, 1.0);
    let minor = c2 / (2.0 * (1.0 + (1.0 - c2).sqrt()));
    entropy_bits(minor.min(0.5))
}

fn holevo_fragment_at(params: &CouplingParams, m: f64) -> f64 {
    if params.p().is_degenerate() {
        return 0.0;
    }
    let n = params.n() as f64;
    // 4pq(s^(2m) - s^(2N)) = 4pq s^(2m) (1 - s^(2(N-m)))
    let c2 = 4.0 * params.p().pq() * params.sq(m).value * params.sq(n - m).complement;
    (marginal_entropy(params, n) - concurrence_entropy(c2)).max(0.0)
}

/// Symmetric mutual information `I(S:F_m) = h(l_N) + h(l_m) - h(l_(N-m))`.
pub fn mutual_information(params: &CouplingParams, m: u32) -> Result<f64> {
    params.check_m(m, 0)?;
    Ok(mutual_information_at(params, m as f64))
}

/// `chi(S^:F_m)`, conditioning on the system. Measuring the pointer basis
/// leaves pure fragment states, so this equals `H_F` for every `m`.
pub fn holevo_system(params: &CouplingParams, m: u32) -> Result<f64> {
    params.check_m(m, 0)?;
    Ok(holevo_system_at(params, m as f64))
}

/// Good-decoherence form
/// `-1/2 log2(pq(1-s^2m)) - sqrt(1-4pq(1-s^2m)) Arctanh2(sqrt(1-4pq(1-s^2m)))`.
pub fn holevo_system_good_dec(
    params: &CouplingParams,
    m: u32,
    policy: &GoodDecoherencePolicy,
) -> Result<f64> {
    params.check_m(m, 0)?;
    match policy.mode {
        GoodDecoherenceMode::Forbid => return holevo_system(params, m),
        GoodDecoherenceMode::Auto => policy.check(params, m)?,
        GoodDecoherenceMode::Force => {}
    }
    let sq = params.sq(m as f64);
    let y = params.p().pq() * sq.complement;
    Ok(limit_entropy_form(y))
}

/// `-1/2 log2 y - x Arctanh2(x)` with `x = sqrt(1 - 4y)`; equals
/// `h((1 + x) / 2)`. At `y = 0` the limit is zero.
fn limit_entropy_form(y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    let x = (1.0 - 4.0 * y).max(0.0).sqrt();
    // 1 - x without cancellation
    let gap = 4.0 * y / (1.0 + x);
    (-0.5 * y.log2() - x * arctanh2_from_gap(gap)).max(0.0)
}

/// `chi(S:F^_m) = h(r_p) - h(t_{p,m})`, the information extractable by
/// measuring the fragment, obtained through the Koashi-Winter relation.
pub fn holevo_fragment(params: &CouplingParams, m: u32) -> Result<f64> {
    params.check_m(m, 0)?;
    Ok(holevo_fragment_at(params, m as f64))
}

/// Good-decoherence form
/// `H_S + 1/2 log2(pq s^2m) + sqrt(1-4pq s^2m) Arctanh2(sqrt(1-4pq s^2m))`
/// with `H_S = -p log2 p - q log2 q`.
pub fn holevo_fragment_good_dec(
    params: &CouplingParams,
    m: u32,
    policy: &GoodDecoherencePolicy,
) -> Result<f64> {
    params.check_m(m, 0)?;
    match policy.mode {
        GoodDecoherenceMode::Forbid => return holevo_fragment(params, m),
        GoodDecoherenceMode::Auto => policy.check(params, m)?,
        GoodDecoherenceMode::Force => {}
    }
    let p = params.p();
    if p.is_degenerate() {
        return Ok(0.0);
    }
    let y = p.pq() * params.sq(m as f64).value;
    Ok((p.entropy() - limit_entropy_form(y)).max(0.0))
}

/// Closed-form nonzero eigenvalues `(mu1, mu2)` of `rho rho~` for
/// `rho_{S F_(N-m)}`.
pub fn wootters_mu_closed(params: &CouplingParams, m: u32) -> Result<(f64, f64)> {
    params.check_m(m, 0)?;
    let sm = params.overlap().pow(m as f64);
    let rest = params.sq((params.n() - m) as f64).complement;
    let base = params.p().pq() * rest;
    Ok((base * (1.0 - sm).powi(2), base * (1.0 + sm).powi(2)))
}

/// Concurrence between `S` and the complement `F_(N-m)`.
pub fn concurrence(params: &CouplingParams, m: u32) -> Result<f64> {
    let (mu1, mu2) = wootters_mu_closed(params, m)?;
    Ok((mu1.sqrt() - mu2.sqrt()).abs().min(1.0))
}

/// Entanglement of formation between `S` and `F_(N-m)`.
pub fn entanglement_of_formation(params: &CouplingParams, m: u32) -> Result<f64> {
    let con = concurrence(params, m)?;
    Ok(concurrence_entropy(con * con))
}

/// `h((1 + sqrt(1 - C^2)) / 2)` for an arbitrary two-qubit concurrence.
pub fn eof_from_concurrence(con: f64) -> Result<f64> {
    let con = crate::kernels::clamp_unit("concurrence", con)?;
    Ok(concurrence_entropy(con * con))
}

/// `D(S^:F_m) = I(S:F_m) - chi(S^:F_m)`.
pub fn discord_systemic(params: &CouplingParams, m: u32) -> Result<f64> {
    Ok((mutual_information(params, m)? - holevo_system(params, m)?).max(0.0))
}

/// `D(S:F^_m) = I(S:F_m) - chi(S:F^_m)`.
pub fn discord_fragmentary(params: &CouplingParams, m: u32) -> Result<f64> {
    Ok((mutual_information(params, m)? - holevo_fragment(params, m)?).max(0.0))
}
