//! Wigner function on the cylinder `(θ, p_l)` with integer momentum labels.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::FourierGrid;
use crate::hilbert::{BasisSpec, StateVector};
use crate::spectral::FloquetEigensystem;

pub const WIGNER_RESIDUE_LIMIT: f64 = 1e-10;

/// `W(θ_k, p_l)` on `θ_k = 2πk/n_θ` and every `p_l` of the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    thetas: Vec<f64>,
    p_labels: Vec<i64>,
    /// Rows follow `p_labels`, columns follow `thetas`.
    values: DMatrix<f64>,
    imag_residue: f64,
    j: Option<i64>,
}

impl WignerGrid {
    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }
    pub fn p_labels(&self) -> &[i64] {
        &self.p_labels
    }
    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }
    /// Largest imaginary part discarded.
    pub fn imag_residue(&self) -> f64 {
        self.imag_residue
    }
    pub fn time(&self) -> Option<i64> {
        self.j
    }

    pub fn value(&self, theta_index: usize, p_l: i64) -> Option<f64> {
        let row = self.p_labels.iter().position(|&p| p == p_l)?;
        self.values.get((row, theta_index)).copied()
    }

    /// Trapezoid `∫₀^{2π} W(θ, p_l) dθ` on the grid.
    pub fn marginal(&self, p_l: i64) -> Option<f64> {
        let row = self.p_labels.iter().position(|&p| p == p_l)?;
        Some(self.values.row(row).sum() * TAU / self.thetas.len() as f64)
    }

    fn with_time(mut self, j: i64) -> Self {
        self.j = Some(j);
        self
    }
}

/// `W(θ, p_l) = (1/π) Σ_m Ψ(p_l+m) Ψ*(p_l−m) e^{2imθ}`.
pub fn wigner(state: &StateVector, n_theta: usize) -> Result<WignerGrid> {
    wigner_amplitudes(state.amplitudes(), state.basis(), n_theta)
}

fn wigner_amplitudes(psi: &DVector<Complex64>, basis: &BasisSpec, n_theta: usize) -> Result<WignerGrid> {
    let dim = basis.dim();
    if n_theta < 2 * dim || n_theta % 2 != 0 {
        return Err(Error::InvalidParameter {
            name: "n_theta",
            reason: format!("{n_theta} must be even and at least 2 * dim = {}", 2 * dim),
        });
    }
    let grid = FourierGrid::new(n_theta);
    let cutoff = basis.cutoff() as i64;
    let mut values = DMatrix::zeros(dim, n_theta);
    let mut residue: f64 = 0.0;
    let mut buf = vec![Complex64::new(0.0, 0.0); n_theta];
    for (row, p) in basis.labels() {
        buf.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        let reach = cutoff - p.abs();
        for m in -reach..=reach {
            let a = psi[(p + m + cutoff) as usize];
            let b = psi[(p - m + cutoff) as usize];
            buf[grid.slot(2 * m)] += a * b.conj();
        }
        grid.synthesize(&mut buf);
        for (k, z) in buf.iter().enumerate() {
            values[(row, k)] = z.re / PI;
            residue = residue.max(z.im.abs() / PI);
        }
    }
    if residue > WIGNER_RESIDUE_LIMIT {
        return Err(Error::ImaginaryResidue { what: "wigner", residue, bound: WIGNER_RESIDUE_LIMIT });
    }
    Ok(WignerGrid {
        thetas: grid.thetas().collect(),
        p_labels: basis.labels().map(|(_, n)| n).collect(),
        values,
        imag_residue: residue,
        j: None,
    })
}

/// Wigner grid of `Σ_n c_n μ_n^j |μ_n⟩` built from eigendata.
pub fn wigner_from_eigensystem(
    es: &FloquetEigensystem,
    coeffs: &DVector<Complex64>,
    j: i64,
    n_theta: usize,
) -> Result<WignerGrid> {
    if coeffs.len() != es.dim() {
        return Err(Error::DimensionMismatch { expected: es.dim(), got: coeffs.len() });
    }
    let state = es.evolve(coeffs, j)?;
    Ok(wigner(&state, n_theta)?.with_time(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floquet::{build_standard_floquet, propagate, ModelParams};
    use crate::hilbert::momentum_eigenstate;
    use crate::spectral::diagonalize;

    #[test]
    fn momentum_eigenstate_is_flat() {
        let b = BasisSpec::new(4, 1.0).unwrap();
        let w = wigner(&momentum_eigenstate(&b, 2).unwrap(), 18).unwrap();
        for (_, p) in b.labels() {
            for k in 0..18 {
                let want = if p == 2 { 1.0 / PI } else { 0.0 };
                assert!((w.value(k, p).unwrap() - want).abs() < 1e-15);
            }
        }
        assert!(wigner(&momentum_eigenstate(&b, 0).unwrap(), 17).is_err());
        assert!(wigner(&momentum_eigenstate(&b, 0).unwrap(), 16).is_err());
    }

    #[test]
    fn two_mode_cross_term() {
        // (|1⟩ + e^{iα}|−1⟩)/√2 at p = 0: m = ±1 terms give cos(2θ − α)/π
        let b = BasisSpec::new(3, 1.0).unwrap();
        let alpha = 0.6;
        let s = StateVector::superposition(&b, &[(1, Complex64::new(1.0, 0.0)), (-1, Complex64::from_polar(1.0, alpha))])
            .unwrap();
        let w = wigner(&s, 16).unwrap();
        for (k, &t) in w.thetas().iter().enumerate() {
            let want = (2.0 * t - alpha).cos() / PI;
            assert!((w.value(k, 0).unwrap() - want).abs() < 1e-14);
            assert!((w.value(k, 1).unwrap() - 0.5 / PI).abs() < 1e-14);
        }
        for (i, p) in b.labels() {
            let want = 2.0 * s.amplitudes()[i].norm_sqr();
            assert!((w.marginal(p).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn eigensystem_route_matches_propagation() {
        let b = BasisSpec::new(20, 1.0).unwrap();
        let u = build_standard_floquet(&ModelParams::standard(1.2, 0.9, b).unwrap()).unwrap().unitary_closure();
        let es = diagonalize(&u).unwrap();
        let psi = StateVector::superposition(&b, &[(0, Complex64::new(1.0, 0.0)), (3, Complex64::new(0.3, -0.4))]).unwrap();
        let c = es.coefficients(&psi).unwrap();
        let w0 = wigner_from_eigensystem(&es, &c, 0, 82).unwrap();
        assert!((w0.values() - wigner(&psi, 82).unwrap().values()).amax() < 1e-12);
        let w = wigner_from_eigensystem(&es, &c, 12, 82).unwrap();
        let direct = wigner(&propagate(&u, &psi, 12).unwrap(), 82).unwrap();
        assert!((w.values() - direct.values()).amax() < 1e-9);
        assert_eq!(w.time(), Some(12));
    }
}
