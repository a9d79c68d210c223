//! Model configuration and the closed-form reduced states of the branching
//! state `sqrt(p)|0_S>|0..0> + sqrt(q)|1_S>|1_E..1_E>`.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{Overlap, Probability, SquaredPower};

/// Trace tolerance shared by the closed-form density types.
const TRACE_EPS: f64 = 1e-12;

/// `N` environment qubits, pointer weight `p`, and the per-qubit overlap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    n: u32,
    p: Probability,
    overlap: Overlap,
}

impl CouplingParams {
    pub fn new(n: u32, p: Probability, overlap: Overlap) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "environment size N must be at least 1".into(),
            ));
        }
        Ok(CouplingParams { n, p, overlap })
    }

    /// Shorthand for tests and sweeps: `p` and `c^2` as raw reals.
    pub fn from_c2(n: u32, p: f64, c2: f64) -> Result<Self> {
        Self::new(n, Probability::new(p)?, Overlap::from_c2(c2)?)
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn p(&self) -> Probability {
        self.p
    }

    #[inline]
    pub fn overlap(&self) -> Overlap {
        self.overlap
    }

    /// Same coupling, different pointer weight.
    pub fn with_p(&self, p: Probability) -> Self {
        CouplingParams { p, ..*self }
    }

    pub fn with_n(&self, n: u32) -> Result<Self> {
        Self::new(n, self.p, self.overlap)
    }

    /// `s^(2k)` for a possibly fractional fragment size.
    #[inline]
    pub(crate) fn sq(&self, k: f64) -> SquaredPower {
        self.overlap.squared_pow(k)
    }

    /// Validates `lo <= m <= N`.
    pub(crate) fn check_m(&self, m: u32, lo: u32) -> Result<()> {
        if m < lo || m > self.n {
            return Err(Error::InvalidParameter(format!(
                "fragment size m = {m} outside [{lo}, {}]",
                self.n
            )));
        }
        Ok(())
    }
}

/// Real symmetric 2x2 density `[[diag0, offdiag], [offdiag, diag1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QubitDensity {
    pub diag0: f64,
    pub diag1: f64,
    pub offdiag: f64,
}

impl QubitDensity {
    pub fn new(diag0: f64, diag1: f64, offdiag: f64) -> Result<Self> {
        if ((diag0 + diag1) - 1.0).abs() > TRACE_EPS {
            return Err(Error::InvalidParameter(format!(
                "qubit density trace {} != 1",
                diag0 + diag1
            )));
        }
        if diag0 * diag1 - offdiag * offdiag < -TRACE_EPS || diag0 < -TRACE_EPS || diag1 < -TRACE_EPS
        {
            return Err(Error::InvalidParameter(
                "qubit density is not positive semidefinite".into(),
            ));
        }
        Ok(QubitDensity {
            diag0,
            diag1,
            offdiag,
        })
    }

    /// Marginal `[[p, s^k sqrt(pq)], [s^k sqrt(pq), q]]`.
    fn with_coherence(p: Probability, coherence: f64) -> Self {
        QubitDensity {
            diag0: p.value(),
            diag1: p.complement(),
            offdiag: coherence * p.pq().sqrt(),
        }
    }

    pub fn trace(&self) -> f64 {
        self.diag0 + self.diag1
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.diag0, self.offdiag, self.offdiag, self.diag1)
    }

    /// Eigenvalues, larger first.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let mean = 0.5 * (self.diag0 + self.diag1);
        let half_gap = 0.5 * (self.diag0 - self.diag1);
        let r = half_gap.hypot(self.offdiag);
        [mean + r, mean - r]
    }
}

/// Real symmetric 4x4 density on `S` and a virtual qubit, rows and columns
/// ordered `|0 o>, |0 i>, |1 o>, |1 i>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairDensity {
    pub entries: [[f64; 4]; 4],
}

impl PairDensity {
    pub fn new(entries: [[f64; 4]; 4]) -> Result<Self> {
        let d = PairDensity { entries };
        let tr = d.trace();
        if (tr - 1.0).abs() > TRACE_EPS {
            return Err(Error::InvalidParameter(format!(
                "pair density trace {tr} != 1"
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate().take(i) {
                if (x - entries[j][i]).abs() > TRACE_EPS {
                    return Err(Error::InvalidParameter(
                        "pair density is not symmetric".into(),
                    ));
                }
            }
        }
        if d.eigenvalues().iter().any(|&e| e < -1e-10) {
            return Err(Error::InvalidParameter(
                "pair density is not positive semidefinite".into(),
            ));
        }
        Ok(d)
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    pub fn matrix(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| self.entries[i][j])
    }

    /// Spectrum sorted in descending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let eig = SymmetricEigen::new(self.matrix()).eigenvalues;
        let mut out = [eig[0], eig[1], eig[2], eig[3]];
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }

    /// Trace over the virtual qubit, leaving the system qubit.
    pub fn trace_virtual(&self) -> QubitDensity {
        let e = &self.entries;
        QubitDensity {
            diag0: e[0][0] + e[1][1],
            diag1: e[2][2] + e[3][3],
            offdiag: e[0][2] + e[1][3],
        }
    }
}

/// `rho_S`: coherence suppressed by the whole environment, `s^N`.
pub fn rho_system(params: &CouplingParams) -> QubitDensity {
    QubitDensity::with_coherence(params.p, params.overlap.pow(params.n as f64))
}

/// `rho_F` for an `m`-qubit fragment, written as the Gram matrix of the two
/// weighted branch records (same spectrum as the fragment marginal).
pub fn rho_fragment(params: &CouplingParams, m: u32) -> Result<QubitDensity> {
    params.check_m(m, 0)?;
    Ok(QubitDensity::with_coherence(
        params.p,
        params.overlap.pow(m as f64),
    ))
}

/// Effective-qubit form of `rho_SF`: coherence `s^(N-m)` from the unread
/// remainder of the environment.
pub fn rho_joint(params: &CouplingParams, m: u32) -> Result<QubitDensity> {
    params.check_m(m, 0)?;
    Ok(QubitDensity::with_coherence(
        params.p,
        params.overlap.pow((params.n - m) as f64),
    ))
}

/// `rho_{S F_(N-m)}`: the system together with the complement of an
/// `m`-qubit fragment, the complement collapsed onto its virtual qubit.
pub fn rho_system_complement(params: &CouplingParams, m: u32) -> Result<PairDensity> {
    params.check_m(m, 1)?;
    let p = params.p.value();
    let q = params.p.complement();
    let rpq = params.p.pq().sqrt();
    let ov = params.overlap;
    let k = (params.n - m) as f64;
    let sk = ov.pow(k);
    let rest = ov.squared_pow(k).complement;
    let root_rest = rest.sqrt();

    let a02 = ov.pow(params.n as f64) * rpq;
    let a03 = ov.pow(m as f64) * root_rest * rpq;
    let a22 = q * sk * sk;
    let a23 = q * sk * root_rest;
    let a33 = q * rest;
    let entries = [
        [p, 0.0, a02, a03],
        [0.0, 0.0, 0.0, 0.0],
        [a02, 0.0, a22, a23],
        [a03, 0.0, a23, a33],
    ];
    Ok(PairDensity { entries })
}
