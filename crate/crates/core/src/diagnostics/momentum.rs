//! Momentum observables in the Floquet basis: autocorrelation, Heisenberg
//! momentum and the OTOC.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::StateVector;
use crate::spectral::{scale_columns, FloquetEigensystem};

/// Bound on the discarded imaginary part of `A_j`, relative to `max(1, Tr P₀²)`.
pub const AUTOCORR_RESIDUE: f64 = 1e-9;
/// Allowed gap between the two OTOC expressions.
pub const OTOC_AGREEMENT: f64 = 1e-8;

/// `Q = V† P₀ V` formed once, with the eigendata needed for `j`-sweeps.
#[derive(Debug, Clone)]
pub struct ModeMomentum<'a> {
    es: &'a FloquetEigensystem,
    q: DMatrix<Complex64>,
    p0: Vec<f64>,
}

impl<'a> ModeMomentum<'a> {
    pub fn new(es: &'a FloquetEigensystem) -> Self {
        let basis = es.basis();
        let p0: Vec<f64> = basis.labels().map(|(_, n)| basis.momentum(n)).collect();
        let pv = DMatrix::from_fn(es.dim(), es.dim(), |i, k| es.modes()[(i, k)] * p0[i]);
        let q = es.modes().ad_mul(&pv);
        Self { es, q, p0 }
    }

    /// `⟨μ_m|P₀|μ_n⟩`.
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.q
    }

    /// `Tr P₀²` on the truncated basis.
    pub fn trace_p0_squared(&self) -> f64 {
        self.p0.iter().map(|p| p * p).sum()
    }

    /// `A_j = Σ_{m,n} |Q_mn|² (μ_n* μ_m)^j`.
    pub fn autocorr(&self, j: i64) -> Result<f64> {
        Ok(self.autocorr_complex(j)?.re)
    }

    /// `A_j` before the imaginary part is dropped. Errors if that part exceeds
    /// the residue bound.
    pub fn autocorr_complex(&self, j: i64) -> Result<Complex64> {
        let mu = self.es.eigenvalue_powers(j);
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 0..self.q.ncols() {
            let cn = mu[n].conj();
            for m in 0..self.q.nrows() {
                acc += self.q[(m, n)].norm_sqr() * mu[m] * cn;
            }
        }
        let bound = AUTOCORR_RESIDUE * self.trace_p0_squared().max(1.0);
        if acc.im.abs() > bound {
            return Err(Error::ImaginaryResidue { what: "spectral autocorrelation", residue: acc.im.abs(), bound });
        }
        Ok(acc)
    }

    /// `P_j v` with `P_j = U^{†j} P₀ U^j = V Λ^{*j} Q Λ^j V†`.
    pub fn heisenberg_apply(&self, j: i64, v: &DVector<Complex64>) -> DVector<Complex64> {
        let mu = self.es.eigenvalue_powers(j);
        let mut c = self.es.modes().ad_mul(v);
        c.iter_mut().zip(&mu).for_each(|(x, m)| *x *= m);
        let mut d = &self.q * c;
        d.iter_mut().zip(&mu).for_each(|(x, m)| *x *= m.conj());
        self.es.modes() * d
    }

    /// Dense `P_j`.
    pub fn heisenberg(&self, j: i64) -> DMatrix<Complex64> {
        let conj: Vec<Complex64> = self.es.eigenvalue_powers(j).iter().map(|m| m.conj()).collect();
        // V Λ^{*j} Q Λ^j V† = (V Λ^{*j}) Q (V Λ^{*j})†
        let left = scale_columns(self.es.modes(), &conj);
        &left * &self.q * left.adjoint()
    }

    /// `⟨m|P_j|n⟩`.
    pub fn heisenberg_element(&self, m: i64, n: i64, j: i64) -> Result<Complex64> {
        let basis = self.es.basis();
        let (r, c) = (basis.index_of(m)?, basis.index_of(n)?);
        let mut e = DVector::zeros(self.es.dim());
        e[c] = Complex64::new(1.0, 0.0);
        Ok(self.heisenberg_apply(j, &e)[r])
    }

    /// `C_j = ‖[P_j, P₀]ψ‖²`. For a momentum eigenstate `|n⟩` the value is
    /// cross-checked against `ħ² Σ_m (n−m)² |⟨m|P_j|n⟩|²`.
    pub fn otoc(&self, psi0: &StateVector, j: i64) -> Result<OtocValue> {
        if psi0.basis().dim() != self.es.dim() {
            return Err(Error::DimensionMismatch { expected: self.es.dim(), got: psi0.basis().dim() });
        }
        let psi = psi0.amplitudes();
        let p0psi = DVector::from_iterator(psi.len(), psi.iter().zip(&self.p0).map(|(a, p)| a * p));
        let pjpsi = self.heisenberg_apply(j, psi);
        let first = self.heisenberg_apply(j, &p0psi);
        let commutator = DVector::from_iterator(
            psi.len(),
            first.iter().zip(pjpsi.iter()).zip(&self.p0).map(|((a, b), p)| a - b * p),
        );
        let value = commutator.norm_squared();
        let elements = psi0.as_momentum_eigenstate().map(|n| {
            let basis = self.es.basis();
            let hbar = basis.hbar_eff();
            let col = pjpsi.clone() / psi[basis.index_of(n).expect("occupied label in range")];
            basis
                .labels()
                .map(|(i, m)| hbar * hbar * ((n - m) as f64).powi(2) * col[i].norm_sqr())
                .sum::<f64>()
        });
        if let Some(alt) = elements {
            let deviation = (value - alt).abs();
            if deviation > OTOC_AGREEMENT {
                return Err(Error::OtocMismatch { j, commutator: value, elements: alt, deviation });
            }
        }
        Ok(OtocValue { value, elements })
    }
}

/// OTOC value and, for momentum eigenstates, the matrix-element form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OtocValue {
    pub value: f64,
    pub elements: Option<f64>,
}

pub fn spectral_autocorr(es: &FloquetEigensystem, j: i64) -> Result<f64> {
    ModeMomentum::new(es).autocorr(j)
}

/// `S(j) = |Σ_n μ_n^j|²`.
pub fn spectral_form_factor(es: &FloquetEigensystem, j: i64) -> f64 {
    es.eigenvalue_powers(j).iter().sum::<Complex64>().norm_sqr()
}

pub fn heisenberg_p_element(es: &FloquetEigensystem, m: i64, n: i64, j: i64) -> Result<Complex64> {
    ModeMomentum::new(es).heisenberg_element(m, n, j)
}

pub fn otoc(es: &FloquetEigensystem, psi0: &StateVector, j: i64) -> Result<f64> {
    Ok(ModeMomentum::new(es).otoc(psi0, j)?.value)
}
