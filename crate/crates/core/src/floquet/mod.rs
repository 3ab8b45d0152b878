//! One-period Floquet operators of delta-kicked rotors.
//!
//! All parameters are dimensionless: `k_kick = K/ħ`, `tau_free = ħT` for the
//! quadratic (standard) rotor and `phi_free = αT` for the linear rotor. The
//! free factor of the standard rotor is `exp(-i n² τ/2)` by default; the
//! opposite sign is available through [`PhaseSign::Paper`].

mod bessel;
mod split_step;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use bessel::{bessel_j, bessel_j_sequence, BesselTable, MAX_ARG, MAX_ORDER};
pub use split_step::{split_step_apply, SplitStepOutput, SplitStepper, EDGE_WEIGHT_LIMIT};

use crate::error::{Error, Result};
use crate::fourier::FourierGrid;
use crate::hilbert::{BasisSpec, StateVector};

const ALIASING_LIMIT: f64 = 1e-12;
const BAND_FLOOR: f64 = 1e-14;

/// Width of the Bessel band beyond which Floquet entries are numerically zero:
/// the larger of `ceil(k + 8 sqrt(k))` and the first order past which
/// `|J_q(k)| < 1e-14`.
pub fn band_margin(k_kick: f64) -> usize {
    let k = k_kick.abs();
    let heuristic = (k + 8.0 * k.sqrt()).ceil() as usize;
    if k == 0.0 || k > MAX_ARG {
        return heuristic;
    }
    // J_q(k) decreases monotonically in q once q > k
    let mut q = k.ceil() as usize;
    while q < MAX_ORDER as usize && bessel_j(q as i64 + 1, k).map_or(0.0, f64::abs) >= BAND_FLOOR {
        q += 1;
    }
    heuristic.max(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotorKind {
    Standard,
    Linear,
    Generic,
}

/// Sign of the quadratic free phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseSign {
    /// `exp(-i n² τ/2)`, from `U₀ = exp(-(i/2ħ) P² T)`.
    #[default]
    Derived,
    /// `exp(+i n² τ/2)`, the sign printed in the classic matrix form.
    Paper,
}

impl PhaseSign {
    pub(crate) fn factor(self) -> f64 {
        match self {
            PhaseSign::Derived => -1.0,
            PhaseSign::Paper => 1.0,
        }
    }
}

/// Kick potential `V(θ)/ħ` sampled on `θ_k = 2πk/M`, `M` a power of two.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KickProfile {
    samples: Vec<f64>,
}

impl KickProfile {
    pub fn from_samples(samples: Vec<f64>) -> Result<Self> {
        let m = samples.len();
        if m < 4 || !m.is_power_of_two() {
            return Err(Error::InvalidParameter {
                name: "kick_profile",
                reason: format!("sample count {m} is not a power of two >= 4"),
            });
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter { name: "kick_profile", reason: "non-finite sample".into() });
        }
        Ok(Self { samples })
    }

    pub fn from_fn(len: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let h = std::f64::consts::TAU / len as f64;
        Self::from_samples((0..len).map(|k| f(k as f64 * h)).collect())
    }

    /// `k cos θ`.
    pub fn cosine(k_kick: f64, len: usize) -> Result<Self> {
        Self::from_fn(len, |t| k_kick * t.cos())
    }

    /// `-2 arctan(k cos θ − E)`: its half-angle tangent is `-(k cos θ − E)`.
    pub fn lloyd(k: f64, energy: f64, len: usize) -> Result<Self> {
        Self::from_fn(len, |t| -2.0 * (k * t.cos() - energy).atan())
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        let h = std::f64::consts::TAU / self.len() as f64;
        (0..self.len()).map(move |k| k as f64 * h)
    }

    fn shifted(&self, delta: f64) -> Self {
        let samples = self.thetas().zip(&self.samples).map(|(t, v)| v + delta * t.cos()).collect();
        Self { samples }
    }
}

/// Smallest power of two that is at least `4 * dim`.
pub fn default_grid_len(dim: usize) -> usize {
    (4 * dim).next_power_of_two()
}

/// Rotor model and its truncated basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    kind: RotorKind,
    k_kick: f64,
    tau_free: Option<f64>,
    phi_free: Option<f64>,
    kick_profile: Option<KickProfile>,
    phase_sign: PhaseSign,
    basis: BasisSpec,
}

impl ModelParams {
    /// Standard rotor, `V(θ) = K cos θ`.
    pub fn standard(k_kick: f64, tau_free: f64, basis: BasisSpec) -> Result<Self> {
        check_finite("k_kick", k_kick)?;
        check_finite("tau_free", tau_free)?;
        if k_kick < 0.0 {
            return Err(Error::InvalidParameter { name: "k_kick", reason: format!("must be >= 0, got {k_kick}") });
        }
        Ok(Self {
            kind: RotorKind::Standard,
            k_kick,
            tau_free: Some(tau_free),
            phi_free: None,
            kick_profile: None,
            phase_sign: PhaseSign::Derived,
            basis,
        })
    }

    /// Linear rotor, `H₀ = α P`.
    pub fn linear(k_kick: f64, phi_free: f64, basis: BasisSpec) -> Result<Self> {
        check_finite("k_kick", k_kick)?;
        check_finite("phi_free", phi_free)?;
        if k_kick < 0.0 {
            return Err(Error::InvalidParameter { name: "k_kick", reason: format!("must be >= 0, got {k_kick}") });
        }
        Ok(Self {
            kind: RotorKind::Linear,
            k_kick,
            tau_free: None,
            phi_free: Some(phi_free),
            kick_profile: None,
            phase_sign: PhaseSign::Derived,
            basis,
        })
    }

    /// Quadratic rotor with an arbitrary sampled kick. `k_kick` records
    /// `max |V/ħ|`, which sets the band margin.
    pub fn generic(profile: KickProfile, tau_free: f64, basis: BasisSpec) -> Result<Self> {
        check_finite("tau_free", tau_free)?;
        if profile.len() < 4 * basis.dim() {
            return Err(Error::InvalidParameter {
                name: "kick_profile",
                reason: format!("{} samples < 4 * dim = {}", profile.len(), 4 * basis.dim()),
            });
        }
        Ok(Self {
            kind: RotorKind::Generic,
            k_kick: profile.max_abs(),
            tau_free: Some(tau_free),
            phi_free: None,
            kick_profile: Some(profile),
            phase_sign: PhaseSign::Derived,
            basis,
        })
    }

    pub fn with_phase_sign(mut self, sign: PhaseSign) -> Self {
        self.phase_sign = sign;
        self
    }

    /// The same model with the kick strength moved by `delta_k`. For the
    /// generic kind this adds `delta_k cos θ` to the sampled profile.
    pub fn perturbed(&self, delta_k: f64) -> Result<Self> {
        let mut p = self.clone();
        match self.kind {
            RotorKind::Standard | RotorKind::Linear => {
                p.k_kick = self.k_kick + delta_k;
                if p.k_kick < 0.0 {
                    return Err(Error::InvalidParameter {
                        name: "delta_k",
                        reason: format!("perturbed kick {} < 0", p.k_kick),
                    });
                }
            }
            RotorKind::Generic => {
                let profile = self.kick_profile.as_ref().expect("generic kind carries a profile").shifted(delta_k);
                p.k_kick = profile.max_abs();
                p.kick_profile = Some(profile);
            }
        }
        Ok(p)
    }

    pub fn kind(&self) -> RotorKind {
        self.kind
    }
    pub fn k_kick(&self) -> f64 {
        self.k_kick
    }
    pub fn tau_free(&self) -> Option<f64> {
        self.tau_free
    }
    pub fn phi_free(&self) -> Option<f64> {
        self.phi_free
    }
    pub fn kick_profile(&self) -> Option<&KickProfile> {
        self.kick_profile.as_ref()
    }
    pub fn phase_sign(&self) -> PhaseSign {
        self.phase_sign
    }
    pub fn basis(&self) -> &BasisSpec {
        &self.basis
    }

    pub fn band_margin(&self) -> usize {
        band_margin(self.k_kick)
    }

    /// Diagonal free factor for quantum number `n`.
    pub fn free_phase(&self, n: i64) -> Complex64 {
        let nf = n as f64;
        match self.kind {
            RotorKind::Linear => Complex64::from_polar(1.0, -nf * self.phi_free.unwrap_or(0.0)),
            _ => {
                let tau = self.tau_free.unwrap_or(0.0);
                Complex64::from_polar(1.0, self.phase_sign.factor() * 0.5 * nf * nf * tau)
            }
        }
    }

    fn require(&self, kind: RotorKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::InvalidParameter {
                name: "kind",
                reason: format!("expected {kind:?}, got {:?}", self.kind),
            });
        }
        Ok(())
    }
}

fn check_finite(name: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::InvalidParameter { name, reason: format!("not finite: {v}") });
    }
    Ok(())
}

/// `i^q` for integer `q`.
pub(crate) fn i_pow(q: i64) -> Complex64 {
    match q.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Dense one-period evolution operator on the truncated basis. Row index is
/// `n + N`, column index `m + N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FloquetMatrix {
    entries: DMatrix<Complex64>,
    params: ModelParams,
}

impl FloquetMatrix {
    pub fn from_parts(entries: DMatrix<Complex64>, params: ModelParams) -> Result<Self> {
        let dim = params.basis().dim();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: entries.nrows().max(entries.ncols()) });
        }
        Ok(Self { entries, params })
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn basis(&self) -> &BasisSpec {
        self.params.basis()
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// `⟨n|U|m⟩` by quantum numbers.
    pub fn entry(&self, n: i64, m: i64) -> Result<Complex64> {
        let b = self.basis();
        Ok(self.entries[(b.index_of(n)?, b.index_of(m)?)])
    }

    pub fn band_margin(&self) -> usize {
        self.params.band_margin()
    }

    /// Quantum numbers of columns at least one band margin away from the cutoff.
    pub fn interior_columns(&self) -> Vec<i64> {
        let b = *self.basis();
        let margin = self.band_margin();
        b.labels().map(|(_, n)| n).filter(|&n| !b.is_edge(n, margin)).collect()
    }

    /// `max | ‖column m‖ − 1 |` over interior columns, `None` if there are none.
    pub fn interior_unitarity_deviation(&self) -> Option<f64> {
        let b = *self.basis();
        let cols = self.interior_columns();
        if cols.is_empty() {
            return None;
        }
        Some(
            cols.iter()
                .map(|&m| {
                    let j = b.index_of(m).expect("interior column in range");
                    (self.entries.column(j).norm() - 1.0).abs()
                })
                .fold(0.0, f64::max),
        )
    }

    /// `max |U†U − I|` over the whole truncated matrix.
    pub fn unitarity_deviation(&self) -> f64 {
        let g = self.entries.adjoint() * &self.entries;
        max_identity_deviation(&g)
    }

    /// The nearest unitary matrix (polar factor `W V†` of `U = W Σ V†`).
    ///
    /// `U†U` differs from the identity only on the edge blocks within a band
    /// margin of the cutoff, so interior columns are left unchanged.
    pub fn unitary_closure(&self) -> FloquetMatrix {
        FloquetMatrix { entries: crate::spectral::polar_factor(&self.entries), params: self.params.clone() }
    }

    /// `U^j` by repeated dense products.
    pub fn power(&self, j: u32) -> DMatrix<Complex64> {
        let mut acc = DMatrix::identity(self.dim(), self.dim());
        for _ in 0..j {
            acc = &self.entries * acc;
        }
        acc
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.entries * v
    }
}

pub(crate) fn max_identity_deviation(g: &DMatrix<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..g.ncols() {
        for i in 0..g.nrows() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

/// `⟨n|U|m⟩ = free(m) · (−i)^{m−n} · J_{m−n}(k)`.
pub fn build_standard_floquet(params: &ModelParams) -> Result<FloquetMatrix> {
    params.require(RotorKind::Standard)?;
    build_banded(params, |q| i_pow(-q))
}

/// `⟨n|U|m⟩ = e^{−imφ} · i^{m−n} · J_{m−n}(k)`.
pub fn build_linear_floquet(params: &ModelParams) -> Result<FloquetMatrix> {
    params.require(RotorKind::Linear)?;
    build_banded(params, i_pow)
}

fn build_banded(params: &ModelParams, phase_of_offset: impl Fn(i64) -> Complex64) -> Result<FloquetMatrix> {
    let b = *params.basis();
    let dim = b.dim();
    let table = BesselTable::new(dim.saturating_sub(1), params.k_kick())?;
    let free: Vec<Complex64> = b.labels().map(|(_, m)| params.free_phase(m)).collect();
    let entries = DMatrix::from_fn(dim, dim, |row, col| {
        let q = col as i64 - row as i64;
        free[col] * phase_of_offset(q) * table.get(q)
    });
    Ok(FloquetMatrix { entries, params: params.clone() })
}

/// Kick factor of a sampled profile times the quadratic free factor.
pub fn build_generic_floquet(params: &ModelParams) -> Result<FloquetMatrix> {
    params.require(RotorKind::Generic)?;
    let profile = params.kick_profile().expect("generic kind carries a profile");
    let b = *params.basis();
    let dim = b.dim();
    let coeffs = kick_coefficients(profile, dim)?;
    let grid_len = profile.len() as i64;
    let free: Vec<Complex64> = b.labels().map(|(_, m)| params.free_phase(m)).collect();
    let entries = DMatrix::from_fn(dim, dim, |row, col| {
        let q = (row as i64 - col as i64).rem_euclid(grid_len) as usize;
        coeffs[q] * free[col]
    });
    Ok(FloquetMatrix { entries, params: params.clone() })
}

/// Builder matching the model's kind.
pub fn build_floquet(params: &ModelParams) -> Result<FloquetMatrix> {
    match params.kind() {
        RotorKind::Standard => build_standard_floquet(params),
        RotorKind::Linear => build_linear_floquet(params),
        RotorKind::Generic => build_generic_floquet(params),
    }
}

/// Fourier coefficients of `exp(−i V(θ)/ħ)` with the aliasing guard applied.
pub(crate) fn kick_coefficients(profile: &KickProfile, dim: usize) -> Result<Vec<Complex64>> {
    let m = profile.len();
    let grid = FourierGrid::new(m);
    let samples: Vec<Complex64> = profile.samples().iter().map(|&v| Complex64::from_polar(1.0, -v)).collect();
    let coeffs = grid.coefficients(&samples);
    let tail = (dim + 1..=m / 2)
        .flat_map(|q| [coeffs[q], coeffs[(m - q) % m]])
        .fold(0.0, |a: f64, c| a.max(c.norm()));
    if tail > ALIASING_LIMIT {
        return Err(Error::Aliasing { order: dim, tail, samples: m });
    }
    Ok(coeffs)
}

/// `U^j ψ` by `j` successive matrix-vector products. No renormalization.
pub fn propagate(u: &FloquetMatrix, state: &StateVector, j: usize) -> Result<StateVector> {
    if state.basis().dim() != u.dim() {
        return Err(Error::DimensionMismatch { expected: u.dim(), got: state.basis().dim() });
    }
    let mut v = state.amplitudes().clone();
    for _ in 0..j {
        v = u.apply(&v);
    }
    StateVector::from_amplitudes(*state.basis(), v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::momentum_eigenstate;
    use std::f64::consts::PI;

    fn basis(n: usize) -> BasisSpec {
        BasisSpec::new(n, 1.0).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn standard_without_kick_is_free_diagonal() {
        let p = ModelParams::standard(0.0, 1.0, basis(1)).unwrap();
        let u = build_standard_floquet(&p).unwrap();
        let e = Complex64::from_polar(1.0, -0.5);
        let want = DMatrix::from_diagonal(&DVector::from_vec(vec![e, Complex64::new(1.0, 0.0), e]));
        assert!((u.entries() - want).norm() < 1e-15);
    }

    #[test]
    fn standard_entry_examples() {
        let p = ModelParams::standard(1.0, 1.0, basis(4)).unwrap();
        let u = build_standard_floquet(&p).unwrap();
        let j1 = 0.440_050_585_744_933_5;
        let want = Complex64::from_polar(1.0, -0.5) * Complex64::new(0.0, -1.0) * j1;
        assert!(close(u.entry(0, 1).unwrap(), want, 1e-15));
        let j0 = bessel_j(0, 1.0).unwrap();
        for n in -4..=4i64 {
            let want = Complex64::from_polar(1.0, -0.5 * (n * n) as f64) * j0;
            assert!(close(u.entry(n, n).unwrap(), want, 1e-15));
        }
    }

    #[test]
    fn paper_phase_sign_flips_free_factor() {
        let p = ModelParams::standard(0.0, 1.0, basis(2)).unwrap().with_phase_sign(PhaseSign::Paper);
        let u = build_standard_floquet(&p).unwrap();
        assert!(close(u.entry(2, 2).unwrap(), Complex64::from_polar(1.0, 2.0), 1e-15));
    }

    #[test]
    fn linear_examples() {
        let phi = PI / 2.0;
        let p = ModelParams::linear(0.0, phi, basis(3)).unwrap();
        let u = build_linear_floquet(&p).unwrap();
        for m in -3..=3i64 {
            assert!(close(u.entry(m, m).unwrap(), Complex64::from_polar(1.0, -(m as f64) * phi), 1e-15));
        }
        let p = ModelParams::linear(1.0, phi, basis(3)).unwrap();
        let u = build_linear_floquet(&p).unwrap();
        let want = Complex64::from_polar(1.0, -phi) * Complex64::new(0.0, 1.0) * bessel_j(1, 1.0).unwrap();
        assert!(close(u.entry(0, 1).unwrap(), want, 1e-15));
    }

    #[test]
    fn toeplitz_plus_diagonal_structure() {
        let p = ModelParams::standard(2.5, 0.7, basis(12)).unwrap();
        let u = build_standard_floquet(&p).unwrap();
        for q in -5..=5i64 {
            let reference = u.entry(0, q).unwrap() / p.free_phase(q);
            for n in -6..=6i64 {
                let m = n + q;
                let v = u.entry(n, m).unwrap() / p.free_phase(m);
                assert!(close(v, reference, 1e-14));
            }
        }
    }

    #[test]
    fn band_margin_values() {
        assert_eq!(band_margin(0.0), 0);
        for &k in &[0.5, 2.0, 3.0, 5.0, 12.0] {
            let m = band_margin(k) as i64;
            assert!(m >= (k + 8.0 * k.sqrt()).ceil() as i64);
            for q in m + 1..m + 40 {
                assert!(bessel_j(q, k).unwrap().abs() < 1e-14, "k = {k}, q = {q}");
            }
        }
    }

    #[test]
    fn interior_unitarity_and_band_decay() {
        let k = 3.0;
        let b = BasisSpec::for_kick(k, 1.0).unwrap();
        let p = ModelParams::standard(k, 1.0, b).unwrap();
        let u = build_standard_floquet(&p).unwrap();
        assert!(u.interior_unitarity_deviation().unwrap() < 1e-10);
        let margin = u.band_margin() as i64;
        for (r, n) in b.labels() {
            for (c, m) in b.labels() {
                if (n - m).abs() > margin {
                    assert!(u.entries()[(r, c)].norm() < 1e-14);
                }
            }
        }
        // the truncated matrix is not unitary at the edges
        assert!(u.unitarity_deviation() > 1e-3);
    }

    #[test]
    fn closure_keeps_interior_columns() {
        let k = 2.0;
        let b = BasisSpec::for_kick(k, 1.0).unwrap();
        let p = ModelParams::standard(k, 1.0, b).unwrap();
        let u = build_standard_floquet(&p).unwrap();
        let w = u.unitary_closure();
        assert!(w.unitarity_deviation() < 1e-13);
        for m in u.interior_columns() {
            let c = b.index_of(m).unwrap();
            let d = (u.entries().column(c) - w.entries().column(c)).norm();
            assert!(d < 1e-12, "column {m} moved by {d}");
        }
    }

    #[test]
    fn zero_kick_commutes_with_momentum() {
        let p = ModelParams::standard(0.0, 0.9, basis(5)).unwrap();
        let u = build_standard_floquet(&p).unwrap();
        let pm = DMatrix::from_diagonal(&DVector::from_iterator(11, (-5..=5).map(|n| Complex64::new(n as f64, 0.0))));
        let comm = u.entries() * &pm - &pm * u.entries();
        assert!(comm.norm() < 1e-14);
    }

    #[test]
    fn generic_cosine_matches_standard() {
        let k = 1.7;
        let b = basis(30);
        let profile = KickProfile::cosine(k, default_grid_len(b.dim())).unwrap();
        let g = build_generic_floquet(&ModelParams::generic(profile, 0.8, b).unwrap()).unwrap();
        let s = build_standard_floquet(&ModelParams::standard(k, 0.8, b).unwrap()).unwrap();
        let diff = (g.entries() - s.entries()).iter().fold(0.0f64, |a, z| a.max(z.norm()));
        assert!(diff < 1e-10, "max deviation {diff}");
    }

    #[test]
    fn generic_zero_profile_is_free() {
        let b = basis(6);
        let profile = KickProfile::from_fn(64, |_| 0.0).unwrap();
        let p = ModelParams::generic(profile, 1.3, b).unwrap();
        let g = build_generic_floquet(&p).unwrap();
        for (r, n) in b.labels() {
            for (c, _) in b.labels() {
                let want = if r == c { p.free_phase(n) } else { Complex64::new(0.0, 0.0) };
                assert!(close(g.entries()[(r, c)], want, 1e-15));
            }
        }
    }

    #[test]
    fn generic_sine_against_quadrature() {
        // ⟨n|e^{-ik sin θ}|m⟩ by direct quadrature of the Fourier integral
        let k = 1.2;
        let b = basis(12);
        let profile = KickProfile::from_fn(default_grid_len(b.dim()), |t| k * t.sin()).unwrap();
        let p = ModelParams::generic(profile, 0.0, b).unwrap();
        let g = build_generic_floquet(&p).unwrap();
        let nodes = 4000;
        for &(n, m) in &[(0i64, 0i64), (2, 0), (0, 3), (-4, 1), (5, 5)] {
            let q = (n - m) as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for s in 0..nodes {
                let t = std::f64::consts::TAU * (s as f64 + 0.5) / nodes as f64;
                acc += Complex64::from_polar(1.0, -k * t.sin() - q * t);
            }
            acc /= nodes as f64;
            assert!(close(g.entry(n, m).unwrap(), acc, 1e-12));
            // generating function: e^{-ik sin θ} = Σ_q J_q(-k) e^{iqθ}
            assert!(close(acc, Complex64::new(bessel_j(n - m, -k).unwrap(), 0.0), 1e-12));
        }
    }

    #[test]
    fn generic_aliasing_guard() {
        let b = basis(10);
        let profile = KickProfile::cosine(30.0, 128).unwrap();
        let p = ModelParams::generic(profile, 1.0, b).unwrap();
        assert!(matches!(build_generic_floquet(&p), Err(Error::Aliasing { .. })));
    }

    #[test]
    fn generic_profile_validation() {
        assert!(KickProfile::from_samples(vec![0.0; 6]).is_err());
        let profile = KickProfile::cosine(1.0, 16).unwrap();
        assert!(ModelParams::generic(profile, 1.0, basis(5)).is_err());
    }

    #[test]
    fn propagate_identities() {
        let p = ModelParams::standard(1.3, 0.6, basis(20)).unwrap();
        let u = build_standard_floquet(&p).unwrap();
        let psi = momentum_eigenstate(p.basis(), 2).unwrap();
        assert_eq!(propagate(&u, &psi, 0).unwrap(), psi);
        let two = propagate(&u, &psi, 2).unwrap();
        let one_one = propagate(&u, &propagate(&u, &psi, 1).unwrap(), 1).unwrap();
        assert_eq!(two, one_one);

        let free = build_standard_floquet(&ModelParams::standard(0.0, 0.6, basis(20)).unwrap()).unwrap();
        let out = propagate(&free, &psi, 7).unwrap();
        for (a, b) in out.amplitudes().iter().zip(psi.amplitudes().iter()) {
            assert!((a.norm() - b.norm()).abs() < 1e-15);
        }
    }
}
