//! The photon-scattering form of the mutual information and the equivalent
//! power series of the qubit model, connected by `s^N = exp(-t / 2 tau_D)`.
//!
//! Both series are sums of `G^i / (2i (2i - 1))` over bases `G` in `[0, 1]`.
//! A base equal to one contributes exactly `ln 2`.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::Probability;
use crate::model::CouplingParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonParams {
    p: Probability,
    t_over_tau: f64,
    f: f64,
}

impl PhotonParams {
    pub fn new(p: Probability, t_over_tau: f64, f: f64) -> Result<Self> {
        if !t_over_tau.is_finite() || t_over_tau < 0.0 {
            return Err(Error::Domain {
                what: "t_over_tau",
                value: t_over_tau,
                domain: "[0, inf)",
            });
        }
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::Domain {
                what: "f",
                value: f,
                domain: "[0, 1]",
            });
        }
        Ok(PhotonParams { p, t_over_tau, f })
    }

    pub fn p(&self) -> Probability {
        self.p
    }

    pub fn t_over_tau(&self) -> f64 {
        self.t_over_tau
    }

    pub fn f(&self) -> f64 {
        self.f
    }
}

/// Truncation control for the infinite sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub max_terms: u64,
    pub tail_tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            max_terms: 1_000_000,
            tail_tol: 1e-12,
        }
    }
}

impl SeriesControl {
    pub fn new(max_terms: u64, tail_tol: f64) -> Result<Self> {
        if max_terms < 1 {
            return Err(Error::InvalidParameter("max_terms must be at least 1".into()));
        }
        if tail_tol.is_nan() || tail_tol <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "tail_tol must be positive, got {tail_tol}"
            )));
        }
        Ok(SeriesControl { max_terms, tail_tol })
    }
}

/// `1 - 4pq (1 - e^(-x))`, exactly one when `pq = 0` or `x = 0`.
fn base_from_decay(p: Probability, decay: f64) -> f64 {
    (1.0 - 4.0 * p.pq() * decay).clamp(0.0, 1.0)
}

/// `1 + (1/ln 2) sum_i (G_a^i - G_b^i - G_c^i) / (2i (2i - 1))` with
/// `[G_a, G_b, G_c] = bases`.
fn entropy_series(bases: [f64; 3], ctl: &SeriesControl) -> Result<f64> {
    const SIGNS: [f64; 3] = [1.0, -1.0, -1.0];
    let mut total = 0.0;
    let mut powers = [0.0; 3];
    let mut active = [false; 3];
    for (k, &g) in bases.iter().enumerate() {
        if g >= 1.0 {
            total += SIGNS[k] * LN_2;
        } else if g > 0.0 {
            active[k] = true;
            powers[k] = 1.0;
        }
    }
    let n_active = active.iter().filter(|&&a| a).count() as f64;
    let g_max = (0..3).filter(|&k| active[k]).map(|k| bases[k]).fold(0.0, f64::max);

    if n_active > 0.0 {
        let mut i: u64 = 1;
        loop {
            let two_i = 2.0 * i as f64;
            let denom = two_i * (two_i - 1.0);
            for k in 0..3 {
                if active[k] {
                    powers[k] *= bases[k];
                    total += SIGNS[k] * powers[k] / denom;
                }
            }
            // sum over j > i of G^j / (2j (2j - 1))
            let tail = n_active * g_max.powf(i as f64 + 1.0)
                / ((two_i + 2.0) * (two_i + 1.0) * (1.0 - g_max));
            if tail < ctl.tail_tol {
                break;
            }
            if i >= ctl.max_terms {
                return Err(Error::ConvergenceFailure(format!(
                    "series not converged after {i} terms (tail bound {tail:e}, base {g_max})"
                )));
            }
            i += 1;
        }
    }
    Ok(1.0 + total / LN_2)
}

/// Mutual information of the photon-scattering model as a function of the
/// decoherence time and the accessed fraction `f` of photons.
pub fn photon_mutual_information(ph: &PhotonParams, ctl: &SeriesControl) -> Result<f64> {
    let t = ph.t_over_tau;
    let g = |x: f64| base_from_decay(ph.p, -(-t * x).exp_m1());
    entropy_series([g(1.0 - ph.f), g(ph.f), g(1.0)], ctl)
}

/// The model's mutual information written as the power series in
/// `X_k^2 = (p - q)^2 + 4 pq s^(2k)` for `k = N - m, m, N`.
pub fn series_mutual_information(params: &CouplingParams, m: u32, ctl: &SeriesControl) -> Result<f64> {
    params.check_m(m, 0)?;
    let n = params.n();
    let x2 = |k: u32| base_from_decay(params.p(), params.sq(k as f64).complement);
    entropy_series([x2(n - m), x2(m), x2(n)], ctl)
}

/// Elapsed time in units of the decoherence time matching the qubit model,
/// `t / tau_D = -2 N ln s`.
pub fn map_photon_time(params: &CouplingParams) -> Result<f64> {
    let s = params.overlap().s();
    if s == 0.0 {
        return Err(Error::PerfectRecords);
    }
    if s == 1.0 {
        return Ok(0.0);
    }
    Ok(-2.0 * params.n() as f64 * s.ln())
}
