//! Seeded comparison of every closed form against the state-vector oracle.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernels::{lambda_minus, lambda_plus};
use crate::measures::{
    eof_from_concurrence, holevo_fragment, holevo_system, mutual_information, system_entropy,
    wootters_mu_closed,
};
use crate::model::CouplingParams;
use crate::oracle::{concurrence_from_mu, wootters_mu, MeasurementBasis, Oracle, MAX_ENV_QUBITS, MAX_KEPT_QUBITS};

/// Measurement grid used for the Holevo lower bound during verification.
pub const VERIFY_GRID: usize = 64;

const EXACT_TOL: f64 = 1e-10;
const IDENTITY_TOL: f64 = 1e-12;
const GRID_GAP_TOL: f64 = 1e-4;
const GRID_BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantResult {
    pub name: &'static str,
    pub tolerance: f64,
    pub checked: usize,
    pub max_residual: f64,
    /// Parameters of the largest residual.
    pub worst: Option<String>,
}

impl InvariantResult {
    fn new(name: &'static str, tolerance: f64) -> Self {
        InvariantResult {
            name,
            tolerance,
            checked: 0,
            max_residual: 0.0,
            worst: None,
        }
    }

    fn record(&mut self, residual: f64, at: &str) {
        self.checked += 1;
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        if self.worst.is_none() || residual > self.max_residual {
            self.max_residual = residual;
            self.worst = Some(at.to_string());
        }
    }

    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub max_n: u32,
    pub results: Vec<InvariantResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(InvariantResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InvariantResult> {
        self.results.iter().filter(|r| !r.passed())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "qdarwin verify: seed={} samples={} max_N={}",
            self.seed, self.samples, self.max_n
        );
        let _ = writeln!(
            out,
            "{:<26} {:>7} {:>12} {:>9}  {:<6} worst",
            "invariant", "checked", "max_residual", "tolerance", "result"
        );
        for r in &self.results {
            let _ = writeln!(
                out,
                "{:<26} {:>7} {:>12.3e} {:>9.0e}  {:<6} {}",
                r.name,
                r.checked,
                r.max_residual,
                r.tolerance,
                if r.passed() { "PASS" } else { "FAIL" },
                r.worst.as_deref().unwrap_or("-")
            );
        }
        let _ = writeln!(out, "overall: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// Spectrum residual against `[lambda+, lambda-, 0, ...]`.
fn spectrum_residual(numeric: &[f64], plus: f64, minus: f64) -> f64 {
    numeric
        .iter()
        .enumerate()
        .map(|(i, &e)| match i {
            0 => (e - plus).abs(),
            1 => (e - minus).abs(),
            _ => e.abs(),
        })
        .fold(0.0, f64::max)
}

/// Draws `samples` random `(N, p, c^2, m)` with `N <= max_n` and checks
/// each closed form against the oracle.
pub fn run_verify(max_n: u32, samples: usize, seed: u64) -> Result<VerifyReport> {
    if max_n > MAX_ENV_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "verify supports max_N <= {MAX_ENV_QUBITS}, got {max_n}"
        )));
    }
    if max_n == 0 || samples == 0 {
        return Err(Error::InvalidParameter(
            "verify needs max_N >= 1 and samples >= 1".into(),
        ));
    }
    let mut mi = InvariantResult::new("mutual_information", EXACT_TOL);
    let mut spectra = InvariantResult::new("marginal_spectra", EXACT_TOL);
    let mut mu = InvariantResult::new("wootters_mu", EXACT_TOL);
    let mut kw = InvariantResult::new("koashi_winter_numeric", EXACT_TOL);
    let mut pointer = InvariantResult::new("pointer_holevo_system", EXACT_TOL);
    let mut gap = InvariantResult::new("holevo_grid_gap", GRID_GAP_TOL);
    let mut bound = InvariantResult::new("holevo_grid_bound", GRID_BOUND_TOL);
    let mut anti = InvariantResult::new("mutual_info_antisymmetry", IDENTITY_TOL);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(1..=max_n);
        let p = rng.gen_range(0.02..0.98);
        let c2 = rng.gen_range(0.02..0.98);
        let m = rng.gen_range(1..=n);
        let params = CouplingParams::from_c2(n, p, c2)?;
        let at = format!("N={n} p={p:.6} c2={c2:.6} m={m}");
        let oracle = Oracle::new(&params)?;
        let hs = system_entropy(&params);

        mi.record((mutual_information(&params, m)? - oracle.mutual_information(m)?).abs(), &at);
        anti.record(
            (mutual_information(&params, m)? + mutual_information(&params, n - m)? - 2.0 * hs).abs(),
            &at,
        );

        let frag = Oracle::env_qubits(0, m);
        let mut joint = vec![0usize];
        joint.extend(&frag);
        let (pr, ov) = (params.p(), params.overlap());
        let mut worst = 0.0f64;
        for (qubits, k) in [(vec![0usize], n), (frag.clone(), m), (joint, n - m)] {
            let ev = oracle.spectrum(&qubits)?;
            let k = k as u64;
            worst = worst.max(spectrum_residual(&ev, lambda_plus(k, pr, ov), lambda_minus(k, pr, ov)));
        }
        spectra.record(worst, &at);

        let rho = oracle.system_complement(m)?;
        let numeric = wootters_mu(&rho)?;
        let (mu1, mu2) = wootters_mu_closed(&params, m)?;
        let residual = (numeric[0] - mu1.max(mu2))
            .abs()
            .max((numeric[1] - mu1.min(mu2)).abs())
            .max(numeric[2])
            .max(numeric[3]);
        mu.record(residual, &at);

        let eof = eof_from_concurrence(concurrence_from_mu(&numeric))?;
        let chi = holevo_fragment(&params, m)?;
        kw.record((chi - (hs - eof)).abs(), &at);

        let j = oracle.system_measurement_information(m, &MeasurementBasis::pointer())?;
        pointer.record((j - holevo_system(&params, m)?).abs(), &at);

        if m as usize <= MAX_KEPT_QUBITS {
            let lb = oracle.holevo_fragment_lower_bound(m, VERIFY_GRID)?;
            gap.record((chi - lb).max(0.0), &at);
            bound.record((lb - chi).max(0.0), &at);
        }
    }

    Ok(VerifyReport {
        seed,
        samples,
        max_n,
        results: vec![mi, spectra, mu, kw, pointer, gap, bound, anti],
    })
}
