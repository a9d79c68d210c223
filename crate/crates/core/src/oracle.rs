//! Brute-force ground truth: the full `2^(N+1)` branching state, dense
//! partial traces, spectral entropies, numeric Wootters concurrence and
//! projective-measurement lower bounds on both Holevo quantities.
//!
//! Qubit 0 is the system, qubits `1..=N` are `E_1..E_N`; qubit 0 is the most
//! significant bit of a basis index. Fragments are the first `m` environment
//! qubits and the complement is the remaining `N - m`.
//!
//! Amplitudes are real throughout, so `rho* = rho` in the spin flip and the
//! only complex arithmetic is in the measurement vectors.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, DVector, Matrix4, SymmetricEigen};

use crate::error::{Error, Result};
use crate::kernels::{Overlap, CLAMP_EPS};
use crate::model::CouplingParams;
use crate::roots::golden_section_min;

pub const MAX_ENV_QUBITS: u32 = 14;
pub const MAX_KEPT_QUBITS: usize = 8;

const NORM_EPS: f64 = 1e-12;
const TRACE_EPS: f64 = 1e-10;
const PSD_EPS: f64 = 1e-9;
const SYM_EPS: f64 = 1e-12;

/// Pure state of `S` plus `N` environment qubits.
#[derive(Debug, Clone)]
pub struct StateVector {
    n_env: u32,
    amplitudes: Vec<f64>,
}

impl StateVector {
    pub fn n_env(&self) -> u32 {
        self.n_env
    }

    pub fn num_qubits(&self) -> usize {
        self.n_env as usize + 1
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }

    /// Overlap of the two normalized environment branches.
    pub fn branch_overlap(&self) -> f64 {
        let half = self.amplitudes.len() / 2;
        let (b0, b1) = self.amplitudes.split_at(half);
        let n0 = b0.iter().map(|a| a * a).sum::<f64>().sqrt();
        let n1 = b1.iter().map(|a| a * a).sum::<f64>().sqrt();
        if n0 == 0.0 || n1 == 0.0 {
            return 0.0;
        }
        b0.iter().zip(b1).map(|(x, y)| x * y).sum::<f64>() / (n0 * n1)
    }
}

fn check_env_size(n: u32) -> Result<()> {
    if n > MAX_ENV_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "oracle supports N <= {MAX_ENV_QUBITS}, got N = {n}"
        )));
    }
    Ok(())
}

/// `sqrt(p)|0>|0..0> + sqrt(q)|1>(s|0> + c|1>)^(x N)` in the computational basis.
pub fn build_state(params: &CouplingParams) -> Result<StateVector> {
    let n = params.n();
    check_env_size(n)?;
    let env_dim = 1usize << n;
    let (s, c) = (params.overlap().s(), params.overlap().c());
    let sqrt_p = params.p().value().sqrt();
    let sqrt_q = params.p().complement().sqrt();

    let mut amplitudes = vec![0.0; 2 * env_dim];
    amplitudes[0] = sqrt_p;
    for (e, amp) in amplitudes[env_dim..].iter_mut().enumerate() {
        let ones = e.count_ones() as i32;
        *amp = sqrt_q * s.powi(n as i32 - ones) * c.powi(ones);
    }
    let state = StateVector {
        n_env: n,
        amplitudes,
    };
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > NORM_EPS {
        return Err(Error::InvalidParameter(format!(
            "branching state norm {norm} != 1"
        )));
    }
    Ok(state)
}

/// Real symmetric density matrix on up to [`MAX_KEPT_QUBITS`] qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<f64>,
}

impl DensityMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let dim = entries.nrows();
        if dim == 0 || dim != entries.ncols() || !dim.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "density matrix must be square with power-of-two dimension, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if (entries.trace() - 1.0).abs() > TRACE_EPS {
            return Err(Error::InvalidParameter(format!(
                "density trace {} != 1",
                entries.trace()
            )));
        }
        if (&entries - entries.transpose()).amax() > SYM_EPS {
            return Err(Error::InvalidParameter("density is not symmetric".into()));
        }
        let rho = DensityMatrix { entries };
        if rho.eigenvalues().last().is_some_and(|&e| e < -PSD_EPS) {
            return Err(Error::InvalidParameter(
                "density is not positive semidefinite".into(),
            ));
        }
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Spectrum in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.entries.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    /// Orthonormal eigenvectors of the two largest eigenvalues.
    pub fn support(&self) -> [DVector<f64>; 2] {
        let eig = SymmetricEigen::new(self.entries.clone());
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let pick = |i: usize| -> DVector<f64> {
            match order.get(i) {
                Some(&k) => eig.eigenvectors.column(k).into_owned(),
                None => DVector::zeros(self.dim()),
            }
        };
        [pick(0), pick(1)]
    }

    fn as_matrix4(&self) -> Result<Matrix4<f64>> {
        if self.dim() != 4 {
            return Err(Error::InvalidParameter(format!(
                "expected a two-qubit density, got dimension {}",
                self.dim()
            )));
        }
        Ok(Matrix4::from_fn(|i, j| self.entries[(i, j)]))
    }
}

/// Reduced state on the qubits in `keep` (the first listed qubit becomes the
/// most significant bit of the reduced index).
pub fn partial_trace(state: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let nq = state.num_qubits();
    if keep.len() > MAX_KEPT_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "partial trace keeps at most {MAX_KEPT_QUBITS} qubits, asked for {}",
            keep.len()
        )));
    }
    let mut seen = vec![false; nq];
    for &q in keep {
        if q >= nq || seen[q] {
            return Err(Error::InvalidParameter(format!(
                "invalid or repeated qubit index {q} for {nq} qubits"
            )));
        }
        seen[q] = true;
    }
    let traced: Vec<usize> = (0..nq).filter(|q| !seen[*q]).collect();
    let bit = |q: usize| nq - 1 - q;

    let kdim = 1usize << keep.len();
    let rdim = 1usize << traced.len();
    let mut a = DMatrix::<f64>::zeros(kdim, rdim);
    for (idx, &amp) in state.amplitudes.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let gather = |qs: &[usize]| {
            qs.iter()
                .fold(0usize, |acc, &q| (acc << 1) | ((idx >> bit(q)) & 1))
        };
        a[(gather(keep), gather(&traced))] = amp;
    }
    DensityMatrix::new(&a * a.transpose())
}

/// `-sum e log2 e` over eigenvalues above the clamp band.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .into_iter()
        .filter(|&e| e > CLAMP_EPS)
        .map(|e| -e * e.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Eigenvalues of `rho` at or below this are treated as numerical zeros
/// when decomposing into subnormalized pure states.
const RANK_EPS: f64 = 1e-13;

/// Eigenvalues of `rho rho~`, `rho~ = (Y x Y) rho* (Y x Y)`, sorted in
/// descending order. With `rho = V V^T` over its significant eigenvectors,
/// `sqrt(mu)` are the singular values of the symmetric `V^T (Y x Y) V`.
pub fn wootters_mu(rho4: &DensityMatrix) -> Result<[f64; 4]> {
    let rho = rho4.as_matrix4()?;
    // sigma_y x sigma_y is real: anti-diagonal (-1, 1, 1, -1)
    let mut flip = Matrix4::<f64>::zeros();
    flip[(0, 3)] = -1.0;
    flip[(1, 2)] = 1.0;
    flip[(2, 1)] = 1.0;
    flip[(3, 0)] = -1.0;

    let eig = SymmetricEigen::new(rho);
    let kept: Vec<usize> = (0..4).filter(|&k| eig.eigenvalues[k] > RANK_EPS).collect();
    let mut mu = [0.0; 4];
    if kept.is_empty() {
        return Ok(mu);
    }
    let v = DMatrix::from_fn(4, kept.len(), |i, j| {
        let k = kept[j];
        eig.eigenvalues[k].sqrt() * eig.eigenvectors[(i, k)]
    });
    let flip = DMatrix::from_fn(4, 4, |i, j| flip[(i, j)]);
    let tau = v.transpose() * flip * &v;
    for (slot, sigma) in mu.iter_mut().zip(tau.singular_values().iter()) {
        *slot = sigma * sigma;
    }
    mu.sort_by(|a, b| b.total_cmp(a));
    Ok(mu)
}

/// `max(0, sqrt(mu1) - sqrt(mu2) - sqrt(mu3) - sqrt(mu4))`.
pub fn concurrence_from_mu(mu: &[f64; 4]) -> f64 {
    (mu[0].sqrt() - mu[1].sqrt() - mu[2].sqrt() - mu[3].sqrt()).max(0.0)
}

/// Orthonormal pair `{|o>, |i>}` spanning the branch records of `k`
/// environment qubits: `|o> = |0..0>` and `|i>` the normalized part of
/// `(s|0> + c|1>)^(x k)` orthogonal to it. `|i>` is the zero vector when the
/// records coincide (`k = 0` or `s = 1`).
pub fn record_basis(ov: Overlap, k: u32) -> [DVector<f64>; 2] {
    let dim = 1usize << k;
    let mut o = DVector::zeros(dim);
    o[0] = 1.0;
    let (s, c) = (ov.s(), ov.c());
    let record = DVector::from_fn(dim, |e, _| {
        let ones = e.count_ones() as i32;
        s.powi(k as i32 - ones) * c.powi(ones)
    });
    let sk = record[0];
    let mut i = record;
    i[0] -= sk;
    let norm = i.norm();
    if norm > 1e-300 {
        i /= norm;
    } else {
        i.fill(0.0);
    }
    [o, i]
}

/// Which block of environment qubits is collapsed onto a two-dimensional
/// basis when reducing to a system/virtual-qubit pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// The first `m` environment qubits; the rest is traced out.
    Fragment,
    /// The last `N - m` environment qubits; the fragment is traced out.
    Complement,
}

/// 4x4 state of `S` and one block expressed in `basis`, the other block
/// traced out. Row order `|0 b0>, |0 b1>, |1 b0>, |1 b1>`.
pub fn reduce_to_pair(
    state: &StateVector,
    m: u32,
    block: Block,
    basis: &[DVector<f64>; 2],
) -> Result<DensityMatrix> {
    let n = state.n_env;
    if m > n {
        return Err(Error::InvalidParameter(format!(
            "fragment size {m} exceeds N = {n}"
        )));
    }
    let fdim = 1usize << m;
    let cdim = 1usize << (n - m);
    let (bdim, odim) = match block {
        Block::Fragment => (fdim, cdim),
        Block::Complement => (cdim, fdim),
    };
    if basis.iter().any(|v| v.len() != bdim) {
        return Err(Error::InvalidParameter(format!(
            "basis vectors must have length {bdim}"
        )));
    }
    let amp = |s: usize, f: usize, c: usize| state.amplitudes[(s * fdim + f) * cdim + c];
    // projected[(s, v)][other]
    let mut projected = DMatrix::<f64>::zeros(4, odim);
    for s in 0..2 {
        for (v, w) in basis.iter().enumerate() {
            for other in 0..odim {
                let mut acc = 0.0;
                for b in 0..bdim {
                    let a = match block {
                        Block::Fragment => amp(s, b, other),
                        Block::Complement => amp(s, other, b),
                    };
                    acc += a * w[b];
                }
                projected[(2 * s + v, other)] = acc;
            }
        }
    }
    DensityMatrix::new(&projected * projected.transpose())
}

/// Rank-1 projective measurement on a qubit (or a two-dimensional support),
/// parameterized by Bloch angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    theta: f64,
    phi: f64,
}

impl MeasurementBasis {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::Domain {
                what: "measurement angles",
                value: if (0.0..=PI).contains(&theta) { phi } else { theta },
                domain: "theta in [0, pi], phi in [0, 2pi)",
            });
        }
        Ok(MeasurementBasis { theta, phi })
    }

    /// `{|0>, |1>}` of the support, i.e. the pointer basis on `S`.
    pub fn pointer() -> Self {
        MeasurementBasis {
            theta: 0.0,
            phi: 0.0,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    fn vectors(&self) -> [[Complex<f64>; 2]; 2] {
        vectors_at(self.theta, self.phi)
    }
}

/// Measurement vectors for unrestricted angles (used by the refinement pass).
fn vectors_at(theta: f64, phi: f64) -> [[Complex<f64>; 2]; 2] {
    let (sn, cs) = (0.5 * theta).sin_cos();
    let phase = Complex::from_polar(1.0, phi);
    [
        [Complex::new(cs, 0.0), phase * sn],
        [Complex::new(-sn, 0.0), phase * cs],
    ]
}

/// Which qubit of a 4x4 pair density is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    First,
    Second,
}

/// Entropy (bits) of the normalized 2x2 Hermitian `[[a, b], [b*, d]] / (a + d)`.
fn hermitian2_entropy(a: f64, d: f64, b: Complex<f64>) -> f64 {
    let tr = a + d;
    let r = (a - d).hypot(2.0 * b.norm());
    [(tr + r) / (2.0 * tr), (tr - r) / (2.0 * tr)]
        .into_iter()
        .filter(|&e| e > CLAMP_EPS)
        .map(|e| -e * e.log2())
        .sum()
}

/// Average entropy of the unmeasured qubit after measuring `measured` in the
/// basis `vectors`: `sum_k p_k H(rho_k)`.
fn conditional_entropy(rho: &Matrix4<f64>, measured: Party, vectors: &[[Complex<f64>; 2]; 2]) -> f64 {
    let idx = |x: usize, y: usize| match measured {
        Party::First => 2 * x + y,
        Party::Second => 2 * y + x,
    };
    let mut total = 0.0;
    for v in vectors {
        let mut sigma = [[Complex::new(0.0, 0.0); 2]; 2];
        for (r, row) in sigma.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                let mut acc = Complex::new(0.0, 0.0);
                for x in 0..2 {
                    for xp in 0..2 {
                        acc += v[x].conj() * rho[(idx(x, r), idx(xp, c))] * v[xp];
                    }
                }
                *cell = acc;
            }
        }
        let pk = sigma[0][0].re + sigma[1][1].re;
        if pk > CLAMP_EPS {
            total += pk * hermitian2_entropy(sigma[0][0].re, sigma[1][1].re, sigma[0][1]);
        }
    }
    total
}

/// Number of grid local minima refined by [`grid_minimize`].
const REFINE_CANDIDATES: usize = 32;
const REFINE_ROUNDS: usize = 3;

/// Minimizes `f(theta, phi)` over the uniform grid
/// `theta = pi i / grid` (`i = 0..=grid`), `phi = pi j / grid` (`j < grid`),
/// then refines the lowest grid local minima by alternating golden-section
/// searches in each angle.
fn grid_minimize<F: Fn(f64, f64) -> f64>(f: F, grid: usize) -> f64 {
    let step = PI / grid as f64;
    let rows = grid + 1;
    let mut values = vec![0.0; rows * grid];
    for j in 0..grid {
        for i in 0..rows {
            values[j * rows + i] = f(step * i as f64, step * j as f64);
        }
    }
    let at = |i: isize, j: isize| -> Option<f64> {
        if i < 0 || i >= rows as isize || j < 0 || j >= grid as isize {
            return None;
        }
        Some(values[j as usize * rows + i as usize])
    };
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for j in 0..grid {
        for i in 0..rows {
            let v = values[j * rows + i];
            let (ii, jj) = (i as isize, j as isize);
            let is_min = (-1..=1)
                .flat_map(|di| (-1..=1).map(move |dj| (di, dj)))
                .filter(|&d| d != (0, 0))
                .all(|(di, dj)| at(ii + di, jj + dj).is_none_or(|w| v <= w));
            if is_min {
                candidates.push((v, i, j));
            }
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut best = candidates.first().map_or(f64::INFINITY, |c| c.0);
    for &(v, i, j) in candidates.iter().take(REFINE_CANDIDATES) {
        let (mut t, mut ph, mut val) = (step * i as f64, step * j as f64, v);
        for _ in 0..REFINE_ROUNDS {
            let (nt, vt) = golden_section_min(|x| f(x, ph), (t - step).max(0.0), (t + step).min(PI), 1e-12, 200);
            if vt < val {
                (t, val) = (nt, vt);
            }
            let (np, vp) = golden_section_min(|y| f(t, y), ph - step, ph + step, 1e-12, 200);
            if vp < val {
                (ph, val) = (np, vp);
            }
        }
        best = best.min(val);
    }
    best
}

fn check_holevo_args(params: &CouplingParams, m: u32, grid: usize) -> Result<()> {
    check_env_size(params.n())?;
    if grid < 16 {
        return Err(Error::InvalidParameter(format!(
            "measurement grid must be at least 16, got {grid}"
        )));
    }
    params.check_m(m, 1)?;
    if m as usize > MAX_KEPT_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "fragment support search needs m <= {MAX_KEPT_QUBITS}, got {m}"
        )));
    }
    Ok(())
}

/// Brute-force evaluator for one parameter set. Holds the state vector so
/// that several marginals can be drawn from a single construction.
#[derive(Debug, Clone)]
pub struct Oracle {
    params: CouplingParams,
    state: StateVector,
}

impl Oracle {
    pub fn new(params: &CouplingParams) -> Result<Self> {
        Ok(Oracle {
            params: *params,
            state: build_state(params)?,
        })
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn params(&self) -> &CouplingParams {
        &self.params
    }

    /// Environment qubit indices `E_(first+1) .. E_(first+count)`.
    pub fn env_qubits(first: u32, count: u32) -> Vec<usize> {
        (first + 1..=first + count).map(|q| q as usize).collect()
    }

    pub fn rho_system(&self) -> Result<DensityMatrix> {
        partial_trace(&self.state, &[0])
    }

    pub fn rho_fragment(&self, m: u32) -> Result<DensityMatrix> {
        self.params.check_m(m, 0)?;
        partial_trace(&self.state, &Self::env_qubits(0, m))
    }

    /// Nonzero-relevant spectrum of the marginal on `qubits`, taken from
    /// whichever side of the pure bipartition is smaller.
    pub fn spectrum(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        let rest: Vec<usize> = (0..self.state.num_qubits())
            .filter(|q| !qubits.contains(q))
            .collect();
        if rest.is_empty() {
            let mut ev = vec![0.0; 1 << qubits.len().min(MAX_KEPT_QUBITS)];
            ev[0] = self.state.norm_sqr();
            return Ok(ev);
        }
        let side = if qubits.len() <= rest.len() { qubits } else { &rest };
        Ok(partial_trace(&self.state, side)?.eigenvalues())
    }

    /// Von Neumann entropy of the marginal on `qubits` (either side of the
    /// pure bipartition may be used).
    pub fn entropy(&self, qubits: &[usize]) -> Result<f64> {
        let ev = self.spectrum(qubits)?;
        Ok(ev
            .into_iter()
            .filter(|&e| e > CLAMP_EPS)
            .map(|e| -e * e.log2())
            .sum::<f64>()
            .max(0.0))
    }

    /// `H_S + H_F - H_SF` from dense marginals.
    pub fn mutual_information(&self, m: u32) -> Result<f64> {
        self.params.check_m(m, 0)?;
        let frag = Self::env_qubits(0, m);
        let mut joint = vec![0usize];
        joint.extend(&frag);
        Ok(self.entropy(&[0])? + self.entropy(&frag)? - self.entropy(&joint)?)
    }

    /// `rho_{S F_(N-m)}` with the complement written in its record basis.
    pub fn system_complement(&self, m: u32) -> Result<DensityMatrix> {
        self.params.check_m(m, 1)?;
        let basis = record_basis(self.params.overlap(), self.params.n() - m);
        reduce_to_pair(&self.state, m, Block::Complement, &basis)
    }

    /// `rho_{S F_m}` with the fragment written in the eigenbasis of its
    /// (rank-two) marginal.
    pub fn system_fragment(&self, m: u32) -> Result<DensityMatrix> {
        self.params.check_m(m, 1)?;
        let support = self.fragment_support(m)?;
        reduce_to_pair(&self.state, m, Block::Fragment, &support)
    }

    /// Leading eigenvectors of `rho_{F_m}`. When the fragment is the larger
    /// side of the `F | S F_(N-m)` cut they are obtained from the Schmidt
    /// vectors of the other side, `w = A^T u / sqrt(e)`.
    pub fn fragment_support(&self, m: u32) -> Result<[DVector<f64>; 2]> {
        let n = self.params.n();
        self.params.check_m(m, 0)?;
        if m <= n + 1 - m {
            return Ok(self.rho_fragment(m)?.support());
        }
        let mut rest = vec![0usize];
        rest.extend(Self::env_qubits(m, n - m));
        let rho_rest = partial_trace(&self.state, &rest)?;
        let eig = SymmetricEigen::new(rho_rest.entries().clone());
        let mut order: Vec<usize> = (0..rho_rest.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

        let fdim = 1usize << m;
        let cdim = 1usize << (n - m);
        let amps = &self.state.amplitudes;
        let lift = |k: Option<&usize>| -> DVector<f64> {
            let mut w = DVector::zeros(fdim);
            let Some(&k) = k else { return w };
            let e = eig.eigenvalues[k];
            if e <= RANK_EPS {
                return w;
            }
            let u = eig.eigenvectors.column(k);
            for s in 0..2 {
                for c in 0..cdim {
                    let coeff = u[s * cdim + c];
                    if coeff == 0.0 {
                        continue;
                    }
                    for f in 0..fdim {
                        w[f] += amps[(s * fdim + f) * cdim + c] * coeff;
                    }
                }
            }
            w / e.sqrt()
        };
        Ok([lift(order.first()), lift(order.get(1))])
    }

    /// `H_S - min_B sum_k p_k H(rho_S|k)` over projective measurements `B`
    /// on the fragment support.
    pub fn holevo_fragment_lower_bound(&self, m: u32, grid: usize) -> Result<f64> {
        check_holevo_args(&self.params, m, grid)?;
        let rho = self.system_fragment(m)?.as_matrix4()?;
        let hs = self.entropy(&[0])?;
        let min = grid_minimize(
            |t, p| conditional_entropy(&rho, Party::Second, &vectors_at(t, p)),
            grid,
        );
        Ok(hs - min)
    }

    /// `H_F - min_B sum_k p_k H(rho_F|k)` over projective measurements `B`
    /// on the system.
    pub fn holevo_system_check(&self, m: u32, grid: usize) -> Result<f64> {
        check_holevo_args(&self.params, m, grid)?;
        let rho = self.system_fragment(m)?.as_matrix4()?;
        let hf = self.entropy(&Self::env_qubits(0, m))?;
        let min = grid_minimize(
            |t, p| conditional_entropy(&rho, Party::First, &vectors_at(t, p)),
            grid,
        );
        Ok(hf - min)
    }

    /// `J(S^:F_m)` for one fixed measurement basis on the system.
    pub fn system_measurement_information(&self, m: u32, basis: &MeasurementBasis) -> Result<f64> {
        self.params.check_m(m, 1)?;
        let rho = self.system_fragment(m)?.as_matrix4()?;
        let hf = self.entropy(&Self::env_qubits(0, m))?;
        Ok(hf - conditional_entropy(&rho, Party::First, &basis.vectors()))
    }
}

/// Projective lower bound on `chi(S:F^_m)`; see [`Oracle::holevo_fragment_lower_bound`].
pub fn holevo_fragment_lower_bound(params: &CouplingParams, m: u32, grid: usize) -> Result<f64> {
    check_holevo_args(params, m, grid)?;
    Oracle::new(params)?.holevo_fragment_lower_bound(m, grid)
}

/// Grid maximum of `J(S^:F_m)`; see [`Oracle::holevo_system_check`].
pub fn holevo_system_check(params: &CouplingParams, m: u32, grid: usize) -> Result<f64> {
    check_holevo_args(params, m, grid)?;
    Oracle::new(params)?.holevo_system_check(m, grid)
}
