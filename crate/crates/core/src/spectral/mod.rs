//! Floquet eigensystems and the Hermitian Toeplitz reformulation.

mod cayley;
mod quadrature;
mod schur;
mod szego;

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub use cayley::{
    cayley_coefficients, cayley_floquet, hermitian_scan, FourierSymbol, ScanResult, ToeplitzSystem,
    DEFAULT_LAMBDA_GRID,
};
pub use quadrature::integrate_adaptive;
pub use schur::{schur, NoConvergence, Schur};
pub use szego::{szego_average, SzegoAverage, SzegoFn};

use crate::error::{Error, Result};
use crate::floquet::{max_identity_deviation, FloquetMatrix};
use crate::hilbert::{BasisSpec, StateVector};

/// Eigenphase distance below which modes are treated as one degenerate cluster.
pub const CLUSTER_TOLERANCE: f64 = 1e-10;
/// Residual above which diagonalization is reported as failed.
pub const RESIDUAL_LIMIT: f64 = 1e-6;

/// Eigen-decomposition `U = V Λ V†` of a (closed) Floquet operator, sorted by
/// quasi-energy.
#[derive(Debug, Clone)]
pub struct FloquetEigensystem {
    eigenvalues: Vec<Complex64>,
    quasi_energies: Vec<f64>,
    modes: DMatrix<Complex64>,
    basis: BasisSpec,
    report: DiagonalizationReport,
}

/// Numerical quality of a diagonalization.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DiagonalizationReport {
    /// `max |U V − V Λ|` for the operator that was diagonalized.
    pub residual: f64,
    /// `max |V†V − I|`.
    pub orthonormality: f64,
    /// `max | |μ| − 1 |`.
    pub modulus_deviation: f64,
    /// `max |U†U − I|` of the input matrix.
    pub edge_deviation: f64,
    /// `max | ‖column‖ − 1 |` over interior columns of the input.
    pub interior_deviation: Option<f64>,
    /// `max |U − U_closed|` introduced by the unitary closure (0 if none).
    pub closure_shift: f64,
}

impl FloquetEigensystem {
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// Dimensionless quasi-energies in `[0, 2π)`, with `μ = e^{-iε}`.
    pub fn quasi_energies(&self) -> &[f64] {
        &self.quasi_energies
    }

    pub fn modes(&self) -> &DMatrix<Complex64> {
        &self.modes
    }

    pub fn basis(&self) -> &BasisSpec {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn report(&self) -> &DiagonalizationReport {
        &self.report
    }

    pub fn residual(&self) -> f64 {
        self.report.residual
    }

    /// Component `⟨m|μ_k⟩` of mode `k` on quantum number `m`.
    pub fn mode_component(&self, k: usize, m: i64) -> Result<Complex64> {
        Ok(self.modes[(self.basis.index_of(m)?, k)])
    }

    /// Expansion coefficients `c_k = ⟨μ_k|ψ⟩`.
    pub fn coefficients(&self, state: &StateVector) -> Result<DVector<Complex64>> {
        if state.basis().dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: state.basis().dim() });
        }
        Ok(self.modes.ad_mul(state.amplitudes()))
    }

    /// `μ_k^j` for every mode; negative `j` uses inverse powers.
    pub fn eigenvalue_powers(&self, j: i64) -> Vec<Complex64> {
        self.eigenvalues.iter().map(|&mu| complex_powi(mu, j)).collect()
    }

    /// `V Λ^j V†`.
    pub fn reconstruct_power(&self, j: i64) -> DMatrix<Complex64> {
        let scaled = scale_columns(&self.modes, &self.eigenvalue_powers(j));
        scaled * self.modes.adjoint()
    }

    /// The state `Σ c_k μ_k^j |μ_k⟩`.
    pub fn evolve(&self, coeffs: &DVector<Complex64>, j: i64) -> Result<StateVector> {
        let powers = self.eigenvalue_powers(j);
        let weighted = DVector::from_iterator(self.dim(), coeffs.iter().zip(&powers).map(|(c, p)| c * p));
        StateVector::from_amplitudes(self.basis, &self.modes * weighted)
    }

    /// Copy with every mode column multiplied by `e^{i phases[k]}`.
    pub fn rephased(&self, phases: &[f64]) -> Result<Self> {
        if phases.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: phases.len() });
        }
        let factors: Vec<Complex64> = phases.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
        let mut out = self.clone();
        out.modes = scale_columns(&self.modes, &factors);
        Ok(out)
    }
}

pub(crate) fn scale_columns(m: &DMatrix<Complex64>, factors: &[Complex64]) -> DMatrix<Complex64> {
    let mut out = m.clone();
    for (mut col, f) in out.column_iter_mut().zip(factors) {
        col *= *f;
    }
    out
}

pub(crate) fn complex_powi(mu: Complex64, j: i64) -> Complex64 {
    if j >= 0 {
        mu.powu(j as u32)
    } else {
        mu.inv().powu(j.unsigned_abs() as u32)
    }
}

/// `ε = −arg μ` folded into `[0, 2π)`.
pub fn quasi_energy(mu: Complex64) -> f64 {
    let e = (-mu.arg()).rem_euclid(TAU);
    if e >= TAU {
        0.0
    } else {
        e
    }
}

/// Quasi-energies of an eigensystem, dimensionless, in `[0, 2π)`.
pub fn quasi_energies(es: &FloquetEigensystem) -> Vec<f64> {
    es.eigenvalues.iter().map(|&mu| quasi_energy(mu)).collect()
}

/// Converts a dimensionless quasi-energy to units of `ħ/T` given `ħ` and
/// `τ = ħT`.
pub fn to_energy_units(epsilon: f64, hbar_eff: f64, tau_free: f64) -> f64 {
    epsilon * hbar_eff * hbar_eff / tau_free
}

/// Full eigensystem of a Floquet matrix.
///
/// A truncated matrix loses norm through its edge columns, so it is first
/// replaced by its unitary polar factor; interior columns are unaffected and
/// the closure shift is recorded in the report. The closed operator is then
/// brought to complex Schur form, whose triangular factor is diagonal for a
/// unitary matrix.
pub fn diagonalize(u: &FloquetMatrix) -> Result<FloquetEigensystem> {
    let mut es = diagonalize_matrix(u.entries(), *u.basis())?;
    es.report.interior_deviation = u.interior_unitarity_deviation();
    Ok(es)
}

/// [`diagonalize`] for a bare matrix on `basis`.
pub fn diagonalize_matrix(entries: &DMatrix<Complex64>, basis: BasisSpec) -> Result<FloquetEigensystem> {
    if entries.nrows() != basis.dim() || entries.ncols() != basis.dim() {
        return Err(Error::DimensionMismatch { expected: basis.dim(), got: entries.nrows().max(entries.ncols()) });
    }
    let edge_deviation = max_identity_deviation(&(entries.adjoint() * entries));
    let (target, closure_shift) = if edge_deviation > 1e-12 {
        let closed = polar_factor(entries);
        let shift = max_abs(&(&closed - entries));
        (closed, shift)
    } else {
        (entries.clone(), 0.0)
    };
    diagonalize_unitary(&target, basis, edge_deviation, None, closure_shift)
}

pub(crate) fn polar_factor(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let svd = m.clone().svd(true, true);
    svd.u.expect("left singular vectors requested") * svd.v_t.expect("right singular vectors requested")
}

fn diagonalize_unitary(
    target: &DMatrix<Complex64>,
    basis: BasisSpec,
    edge_deviation: f64,
    interior_deviation: Option<f64>,
    closure_shift: f64,
) -> Result<FloquetEigensystem> {
    let n = target.nrows();
    let decomposition = schur(target).map_err(|_| Error::Diagonalization {
        residual: f64::INFINITY,
        orthonormality: f64::INFINITY,
        unitarity: edge_deviation,
    })?;
    let mut order: Vec<usize> = (0..n).collect();
    let raw: Vec<Complex64> = (0..n).map(|k| decomposition.t[(k, k)]).collect();
    let eps_raw: Vec<f64> = raw.iter().map(|&mu| quasi_energy(mu)).collect();
    order.sort_by(|&a, &b| eps_raw[a].total_cmp(&eps_raw[b]));

    let eigenvalues: Vec<Complex64> = order.iter().map(|&k| raw[k]).collect();
    let quasi: Vec<f64> = order.iter().map(|&k| eps_raw[k]).collect();
    let mut modes = DMatrix::from_fn(n, n, |i, k| decomposition.q[(i, order[k])]);
    for cluster in clusters(&quasi) {
        orthonormalize(&mut modes, &cluster);
    }

    let lambda = DMatrix::from_diagonal(&DVector::from_vec(eigenvalues.clone()));
    let residual = max_abs(&(target * &modes - &modes * lambda));
    let orthonormality = max_identity_deviation(&(modes.adjoint() * &modes));
    let modulus_deviation = eigenvalues.iter().fold(0.0f64, |a, mu| a.max((mu.norm() - 1.0).abs()));
    if residual > RESIDUAL_LIMIT || !residual.is_finite() {
        return Err(Error::Diagonalization { residual, orthonormality, unitarity: edge_deviation });
    }
    Ok(FloquetEigensystem {
        eigenvalues,
        quasi_energies: quasi,
        modes,
        basis,
        report: DiagonalizationReport {
            residual,
            orthonormality,
            modulus_deviation,
            edge_deviation,
            interior_deviation,
            closure_shift,
        },
    })
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

/// Runs of sorted eigenphases closer than [`CLUSTER_TOLERANCE`], including the
/// wrap from `2π` back to `0`.
fn clusters(sorted: &[f64]) -> Vec<Vec<usize>> {
    let n = sorted.len();
    if n == 0 {
        return Vec::new();
    }
    let mut groups: Vec<Vec<usize>> = vec![vec![0]];
    for k in 1..n {
        if sorted[k] - sorted[k - 1] < CLUSTER_TOLERANCE {
            groups.last_mut().unwrap().push(k);
        } else {
            groups.push(vec![k]);
        }
    }
    if groups.len() > 1 && sorted[0] + TAU - sorted[n - 1] < CLUSTER_TOLERANCE {
        let last = groups.pop().unwrap();
        groups[0].extend(last);
    }
    groups.into_iter().filter(|g| g.len() > 1).collect()
}

/// Modified Gram–Schmidt (applied twice) on the listed columns.
fn orthonormalize(modes: &mut DMatrix<Complex64>, cols: &[usize]) {
    for _ in 0..2 {
        for (a, &ca) in cols.iter().enumerate() {
            for &cb in &cols[..a] {
                let proj = modes.column(cb).dotc(&modes.column(ca));
                let sub = modes.column(cb) * proj;
                let mut col = modes.column_mut(ca);
                col -= sub;
            }
            let norm = modes.column(ca).norm();
            modes.column_mut(ca).unscale_mut(norm);
        }
    }
}
