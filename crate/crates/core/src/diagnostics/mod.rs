//! Chaos diagnostics by direct propagation and from Floquet eigendata.

mod momentum;
mod wigner;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

pub use momentum::{heisenberg_p_element, otoc, spectral_autocorr, spectral_form_factor, ModeMomentum, OtocValue};
pub use wigner::{wigner, wigner_from_eigensystem, WignerGrid, WIGNER_RESIDUE_LIMIT};

use crate::error::{Error, Result};
use crate::floquet::{bessel_j, build_floquet, band_margin, ModelParams, SplitStepper, EDGE_WEIGHT_LIMIT};
use crate::hilbert::{unchecked_p_squared, BasisSpec, StateVector};
use crate::spectral::FloquetEigensystem;

/// Edge weight above which an echo series is cut short.
pub const ECHO_EDGE_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Echo,
    Autocorr,
    Sff,
    Otoc,
    P2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Eigensystem,
    SplitStep,
    ClosedForm,
    Ensemble,
}

/// A kick-indexed diagnostic with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticSeries {
    pub kind: SeriesKind,
    pub method: Method,
    pub times: Vec<i64>,
    pub values: Vec<Complex64>,
    /// Label of the initial state, e.g. `|0>`.
    pub initial_state: String,
    pub dim: usize,
    /// Largest edge weight seen during propagation.
    pub max_edge_weight: f64,
    /// First kick index that failed the edge guard; the series stops before it.
    pub truncated_at: Option<i64>,
}

impl DiagnosticSeries {
    pub fn new(kind: SeriesKind, method: Method, initial_state: String, dim: usize) -> Self {
        Self {
            kind,
            method,
            times: Vec::new(),
            values: Vec::new(),
            initial_state,
            dim,
            max_edge_weight: 0.0,
            truncated_at: None,
        }
    }

    pub fn push(&mut self, j: i64, value: Complex64) {
        self.times.push(j);
        self.values.push(value);
    }

    pub fn push_real(&mut self, j: i64, value: f64) {
        self.push(j, Complex64::new(value, 0.0));
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    pub fn edge_contaminated(&self) -> bool {
        self.truncated_at.is_some()
    }

    /// Least-squares slope of the real part over `j ∈ [from, to]`.
    pub fn slope(&self, from: i64, to: i64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .times
            .iter()
            .zip(&self.values)
            .filter(|(&j, _)| j >= from && j <= to)
            .map(|(&j, v)| (j as f64, v.re))
            .collect();
        least_squares_slope(&pts)
    }
}

pub(crate) fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// `|n>` for a momentum eigenstate, `psi` otherwise.
pub fn state_label(state: &StateVector) -> String {
    match state.as_momentum_eigenstate() {
        Some(n) => format!("|{n}>"),
        None => "psi".into(),
    }
}

/// `L = |Σ_{m'} J_{n−m'}(k') J_{n−m'}(k)|²`, summed over the basis within the
/// Bessel band.
pub fn echo_single_kick(n_init: i64, k: f64, k_prime: f64, basis: &BasisSpec) -> Result<f64> {
    basis.index_of(n_init)?;
    let band = band_margin(k.abs().max(k_prime.abs())) as i64;
    let cutoff = basis.cutoff() as i64;
    let mut sum = 0.0;
    for m in (n_init - band).max(-cutoff)..=(n_init + band).min(cutoff) {
        let q = n_init - m;
        sum += bessel_j(q, k_prime)? * bessel_j(q, k)?;
    }
    Ok(sum * sum)
}

/// `L(j) = |⟨U'^j ψ₀|U^j ψ₀⟩|²` with `U'` the model at `k + δk`, by two dense
/// propagations. The overlap is divided by both propagated norms, so the
/// truncated basis cannot leak weight into the echo and `δk = 0` gives exactly 1.
pub fn loschmidt_echo_direct(
    params: &ModelParams,
    delta_k: f64,
    psi0: &StateVector,
    j_max: usize,
) -> Result<DiagnosticSeries> {
    let u = build_floquet(params)?;
    let up = build_floquet(&params.perturbed(delta_k)?)?;
    check_dim(psi0, u.dim())?;
    let margin = u.band_margin().max(up.band_margin());
    let mut series = DiagnosticSeries::new(SeriesKind::Echo, Method::Direct, state_label(psi0), u.dim());
    let mut a = psi0.amplitudes().clone();
    let mut b = a.clone();
    for j in 0..=j_max {
        if j > 0 {
            a = u.apply(&a);
            b = up.apply(&b);
        }
        let w = edge_weight(&a, psi0.basis(), margin).max(edge_weight(&b, psi0.basis(), margin));
        series.max_edge_weight = series.max_edge_weight.max(w);
        if w > ECHO_EDGE_LIMIT {
            series.truncated_at = Some(j as i64);
            break;
        }
        let norms = a.dotc(&a).re * b.dotc(&b).re;
        series.push_real(j as i64, b.dotc(&a).norm_sqr() / norms);
    }
    Ok(series)
}

fn edge_weight(v: &DVector<Complex64>, basis: &BasisSpec, margin: usize) -> f64 {
    basis.labels().filter(|&(_, n)| basis.is_edge(n, margin)).map(|(i, _)| v[i].norm_sqr()).sum()
}

fn check_dim(state: &StateVector, dim: usize) -> Result<()> {
    if state.basis().dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: state.basis().dim() });
    }
    Ok(())
}

/// `L(j) = |⟨E_j⟩|²` from two eigensystems:
/// `⟨E_j⟩ = Σ_{m,m'} conj(μ'_{m'}^j c'_{m'}) ⟨μ'_{m'}|μ_m⟩ μ_m^j c_m`.
pub fn loschmidt_echo_floquet(
    es_k: &FloquetEigensystem,
    es_kp: &FloquetEigensystem,
    psi0: &StateVector,
    j_max: usize,
) -> Result<DiagnosticSeries> {
    if es_k.dim() != es_kp.dim() {
        return Err(Error::DimensionMismatch { expected: es_k.dim(), got: es_kp.dim() });
    }
    let c = es_k.coefficients(psi0)?;
    let cp = es_kp.coefficients(psi0)?;
    let overlap = es_kp.modes().ad_mul(es_k.modes());
    let mu = es_k.eigenvalues();
    let mup = es_kp.eigenvalues();
    let mut series = DiagnosticSeries::new(SeriesKind::Echo, Method::Eigensystem, state_label(psi0), es_k.dim());
    let mut a = c;
    let mut b = cp;
    for j in 0..=j_max {
        if j > 0 {
            a.iter_mut().zip(mu).for_each(|(x, m)| *x *= m);
            b.iter_mut().zip(mup).for_each(|(x, m)| *x *= m);
        }
        let e = b.dotc(&(&overlap * &a));
        series.push_real(j as i64, e.norm_sqr());
    }
    Ok(series)
}

/// `⟨P²⟩(j)` for `j = 0..=j_max` by split-step iteration.
pub fn energy_growth(params: &ModelParams, psi0: &StateVector, j_max: usize) -> Result<DiagnosticSeries> {
    let stepper = SplitStepper::new(params)?;
    check_dim(psi0, params.basis().dim())?;
    let mut series = DiagnosticSeries::new(SeriesKind::P2, Method::SplitStep, state_label(psi0), params.basis().dim());
    let mut state = psi0.clone();
    series.push_real(0, unchecked_p_squared(&state));
    for j in 1..=j_max {
        let out = stepper.apply(&state)?;
        series.max_edge_weight = series.max_edge_weight.max(out.edge_weight);
        if out.edge_weight > EDGE_WEIGHT_LIMIT {
            series.truncated_at = Some(j as i64);
            break;
        }
        state = out.state;
        series.push_real(j as i64, unchecked_p_squared(&state));
    }
    Ok(series)
}
