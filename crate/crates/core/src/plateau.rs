//! Redundancy of the classical plateau: the fragment size needed to supply
//! all but a fraction `delta` of `H_S`, the large-`N` ratio between the
//! Holevo and mutual-information fragment sizes, and the deviations from
//! the `p = 1/2` curves.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{entropy_drop, Probability};
use crate::measures::{concurrence_entropy, system_entropy, GoodDecoherencePolicy, MeasureKind};
use crate::model::CouplingParams;
use crate::roots::{bisect, MAX_ITER, RESIDUAL_TOL};

/// `H_S` below which a plateau has no meaningful height.
pub const DEGENERATE_ENTROPY: f64 = 1e-12;

/// Bracket for `ln(s^(2m))` in the large-`N` ratio.
const LOG_U_MIN: f64 = -700.0;
const LOG_U_MAX: f64 = -1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RedundancyReport {
    pub delta: f64,
    pub measure: MeasureKind,
    /// Smallest integer `m` with `measure(m) >= target`.
    pub m_int: u32,
    /// Root of `measure(m) = target` with `m` treated as real.
    pub m_cont: f64,
    /// `N / m_int`.
    #[serde(rename = "R")]
    pub r: f64,
    /// `(1 - delta) H_S` in bits.
    pub target: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniversalityDelta {
    pub m: u32,
    pub p_prime: f64,
    pub delta_i: f64,
    pub delta_chi: f64,
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain {
            what: "delta",
            value: delta,
            domain: "(0, 1)",
        });
    }
    Ok(())
}

fn plateau_entropy(params: &CouplingParams) -> Result<f64> {
    let hs = system_entropy(params);
    if hs < DEGENERATE_ENTROPY {
        return Err(Error::PlateauDegenerate { entropy: hs });
    }
    Ok(hs)
}

/// Fragment size `m_delta` for which `measure` first reaches `(1 - delta) H_S`,
/// together with the redundancy `R = N / m_delta`.
pub fn m_delta(params: &CouplingParams, delta: f64, measure: MeasureKind) -> Result<RedundancyReport> {
    check_delta(delta)?;
    if !measure.is_monotone() {
        return Err(Error::InvalidParameter(format!(
            "{measure} is not monotone in m; redundancy needs MutualInfo, HolevoSystem or HolevoFragment"
        )));
    }
    let hs = plateau_entropy(params)?;
    let target = (1.0 - delta) * hs;
    let policy = GoodDecoherencePolicy::default();
    let n = params.n();
    let meets = |m: u32| -> Result<bool> { Ok(measure.evaluate(params, m, &policy)? >= target) };

    if n == 0 || !meets(n)? {
        return Err(Error::NoPlateau {
            measure: measure.tag().to_string(),
            target,
            n,
        });
    }
    let (mut lo, mut hi) = (0u32, n);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if meets(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let m_int = hi;

    let residual = |m: f64| measure.evaluate_continuous(params, m).map_or(f64::NAN, |v| v - target);
    let upper = m_int as f64;
    let m_cont = if residual(upper) <= 0.0 {
        upper
    } else {
        bisect(residual, upper - 1.0, upper, RESIDUAL_TOL, MAX_ITER)?
    };

    Ok(RedundancyReport {
        delta,
        measure,
        m_int,
        m_cont,
        r: n as f64 / m_int as f64,
        target,
    })
}

/// Relative excess `(m_chi - m_I) / m_chi` of the fragment size needed by
/// the fragment-side Holevo quantity over the mutual information, in the
/// limit `N -> infinity`. Both sizes are `ln u / (2 ln s)` for the root
/// `u = s^(2m)` of the respective condition, so the ratio does not depend
/// on `s`.
pub fn delta_m_ratio(p: Probability, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if p.is_degenerate() {
        return Err(Error::Domain {
            what: "p",
            value: p.value(),
            domain: "(0, 1)",
        });
    }
    let hs = p.entropy();
    let pq = p.pq();

    // I = h(lambda_m) once the complement has fully decohered S, so the
    // shortfall is h(min(p, q)) - h(lambda_m)
    let gap = (p.complement() - p.value()).abs();
    let minor = p.value().min(p.complement());
    let info = |ell: f64| {
        let u = ell.exp();
        let d = -2.0 * pq * u / (gap + (gap * gap + 4.0 * pq * u).sqrt());
        delta * hs - entropy_drop(minor, d.max(-minor))
    };
    // chi = H_S - EoF with C^2 = 4 p q s^(2m)
    let holevo = |ell: f64| delta * hs - concurrence_entropy(4.0 * pq * ell.exp());

    let ell_i = bisect(info, LOG_U_MIN, LOG_U_MAX, 0.0, MAX_ITER)?;
    let ell_chi = bisect(holevo, LOG_U_MIN, LOG_U_MAX, 0.0, MAX_ITER)?;
    Ok(1.0 - ell_i / ell_chi)
}

/// `Delta_I` and `Delta_chi` at fragment size `m`: the normalized curves at
/// `p_prime` compared against the same coupling at `p = 1/2`.
///
/// `params_ref` supplies `N` and the coupling; its `p` is replaced by `1/2`.
pub fn universality_deltas(params_ref: &CouplingParams, p_prime: f64, m: u32) -> Result<UniversalityDelta> {
    if !(p_prime > 0.0 && p_prime < 1.0) {
        return Err(Error::Domain {
            what: "p_prime",
            value: p_prime,
            domain: "(0, 1)",
        });
    }
    params_ref.check_m(m, 1)?;
    let reference = params_ref.with_p(Probability::HALF);
    let other = params_ref.with_p(Probability::new(p_prime)?);
    let h_ref = plateau_entropy(&reference)?;
    let h_other = plateau_entropy(&other)?;

    let info = |pr: &CouplingParams, h: f64| -> Result<f64> {
        Ok(crate::measures::mutual_information(pr, m)? / h)
    };
    let chi = |pr: &CouplingParams, h: f64| -> Result<f64> {
        Ok(crate::measures::holevo_fragment(pr, m)? / h)
    };
    Ok(UniversalityDelta {
        m,
        p_prime,
        delta_i: info(&reference, h_ref)? - info(&other, h_other)?,
        delta_chi: chi(&other, h_other)? - chi(&reference, h_ref)?,
    })
}
