//! Truncated momentum basis and states on it.
//!
//! Quantum numbers run over the symmetric window `n ∈ [-N, N]`; amplitude
//! index `i` stores the component of `|n = i - N⟩`. The momentum operator acts
//! as `P|n⟩ = n ħ|n⟩` with the rotor mass and radius set to one.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Norm tolerance accepted by observables that require a normalized state.
pub const NORM_TOLERANCE: f64 = 1e-6;

/// Symmetric momentum-basis truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisSpec {
    cutoff: usize,
    hbar_eff: f64,
}

impl BasisSpec {
    pub fn new(cutoff: usize, hbar_eff: f64) -> Result<Self> {
        if !(hbar_eff > 0.0 && hbar_eff.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "hbar_eff",
                reason: format!("must be positive and finite, got {hbar_eff}"),
            });
        }
        Ok(Self { cutoff, hbar_eff })
    }

    /// Basis sized by the default truncation rule for a dimensionless kick
    /// strength `k_kick = K/ħ`.
    pub fn for_kick(k_kick: f64, hbar_eff: f64) -> Result<Self> {
        Self::new(rule_cutoff(k_kick), hbar_eff)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        2 * self.cutoff + 1
    }

    pub fn hbar_eff(&self) -> f64 {
        self.hbar_eff
    }

    /// Amplitude index of quantum number `n`.
    pub fn index_of(&self, n: i64) -> Result<usize> {
        if n.unsigned_abs() as usize > self.cutoff {
            return Err(Error::OutOfRange { n, cutoff: self.cutoff });
        }
        Ok((n + self.cutoff as i64) as usize)
    }

    /// Quantum number stored at amplitude index `i`.
    pub fn quantum_number(&self, i: usize) -> i64 {
        i as i64 - self.cutoff as i64
    }

    pub fn contains(&self, n: i64) -> bool {
        n.unsigned_abs() as usize <= self.cutoff
    }

    /// Iterator over `(index, n)` pairs.
    pub fn labels(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        (0..self.dim()).map(move |i| (i, self.quantum_number(i)))
    }

    /// Momentum eigenvalue `n ħ`.
    pub fn momentum(&self, n: i64) -> f64 {
        n as f64 * self.hbar_eff
    }

    /// Whether `n` lies within `margin` of either end of the window.
    pub fn is_edge(&self, n: i64, margin: usize) -> bool {
        n.unsigned_abs() as usize + margin > self.cutoff
    }
}

/// Default cutoff: `ceil(k + 8 sqrt(k) + 20)`.
pub fn rule_cutoff(k_kick: f64) -> usize {
    let k = k_kick.abs();
    (k + 8.0 * k.sqrt() + 20.0).ceil() as usize
}

/// Amplitudes on a truncated momentum basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
    basis: BasisSpec,
}

impl StateVector {
    pub fn from_amplitudes(basis: BasisSpec, amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::DimensionMismatch { expected: basis.dim(), got: amplitudes.len() });
        }
        Ok(Self { amplitudes, basis })
    }

    /// Builds a state from `(n, amplitude)` pairs and normalizes it.
    pub fn superposition(basis: &BasisSpec, terms: &[(i64, Complex64)]) -> Result<Self> {
        let mut amps = DVector::zeros(basis.dim());
        for &(n, a) in terms {
            amps[basis.index_of(n)?] += a;
        }
        let norm = amps.norm();
        if norm == 0.0 {
            return Err(Error::InvalidParameter { name: "terms", reason: "zero vector".into() });
        }
        Ok(Self { amplitudes: amps / Complex64::from(norm), basis: *basis })
    }

    pub fn basis(&self) -> &BasisSpec {
        &self.basis
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<Complex64> {
        self.amplitudes
    }

    /// Amplitude of `|n⟩`, zero outside the window.
    pub fn amplitude(&self, n: i64) -> Complex64 {
        match self.basis.index_of(n) {
            Ok(i) => self.amplitudes[i],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if other.amplitudes.len() != self.amplitudes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.amplitudes.len(),
                got: other.amplitudes.len(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Probability weight on quantum numbers within `margin` of the cutoff.
    pub fn edge_weight(&self, margin: usize) -> f64 {
        self.basis
            .labels()
            .filter(|&(_, n)| self.basis.is_edge(n, margin))
            .map(|(i, _)| self.amplitudes[i].norm_sqr())
            .sum()
    }

    /// The single occupied quantum number, if the state is a momentum
    /// eigenstate up to phase.
    pub fn as_momentum_eigenstate(&self) -> Option<i64> {
        let mut found = None;
        for (i, n) in self.basis.labels() {
            if self.amplitudes[i] != Complex64::new(0.0, 0.0) {
                if found.is_some() {
                    return None;
                }
                found = Some(n);
            }
        }
        found
    }

    pub fn with_phase(&self, chi: f64) -> StateVector {
        let phase = Complex64::from_polar(1.0, chi);
        StateVector { amplitudes: self.amplitudes.map(|a| a * phase), basis: self.basis }
    }
}

/// `|n⟩`.
pub fn momentum_eigenstate(basis: &BasisSpec, n: i64) -> Result<StateVector> {
    let i = basis.index_of(n)?;
    let mut amps = DVector::zeros(basis.dim());
    amps[i] = Complex64::new(1.0, 0.0);
    Ok(StateVector { amplitudes: amps, basis: *basis })
}

/// The uniform wave function on the circle, i.e. `|0⟩`.
pub fn uniform_state(basis: &BasisSpec) -> StateVector {
    momentum_eigenstate(basis, 0).expect("n = 0 is always in range")
}

/// `⟨P²⟩ = Σ (nħ)² |a_n|²`.
pub fn p_squared_expectation(state: &StateVector) -> Result<f64> {
    let norm_sq = state.norm_sq();
    if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(unchecked_p_squared(state))
}

pub(crate) fn unchecked_p_squared(state: &StateVector) -> f64 {
    let b = &state.basis;
    b.labels()
        .map(|(i, n)| b.momentum(n).powi(2) * state.amplitudes[i].norm_sqr())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn eigenstate_layout() {
        let b = BasisSpec::new(2, 1.0).unwrap();
        let s = momentum_eigenstate(&b, 0).unwrap();
        let want: Vec<_> = [0.0, 0.0, 1.0, 0.0, 0.0].iter().map(|&x| c(x)).collect();
        assert_eq!(s.amplitudes().as_slice(), want.as_slice());
        let s = momentum_eigenstate(&b, -2).unwrap();
        assert_eq!(s.amplitudes()[0], c(1.0));
        assert_eq!(
            momentum_eigenstate(&b, 3),
            Err(Error::OutOfRange { n: 3, cutoff: 2 })
        );
    }

    #[test]
    fn uniform_is_zero_mode() {
        let b = BasisSpec::new(1, 1.0).unwrap();
        let s = uniform_state(&b);
        assert_eq!(s.amplitudes().as_slice(), &[c(0.0), c(1.0), c(0.0)]);
        let b0 = BasisSpec::new(0, 1.0).unwrap();
        assert_eq!(uniform_state(&b0).amplitudes().as_slice(), &[c(1.0)]);
        assert_eq!(uniform_state(&b).norm_sq(), 1.0);
    }

    #[test]
    fn p_squared_examples() {
        let b = BasisSpec::new(3, 1.0).unwrap();
        assert_eq!(p_squared_expectation(&momentum_eigenstate(&b, 0).unwrap()).unwrap(), 0.0);
        assert_eq!(p_squared_expectation(&momentum_eigenstate(&b, 2).unwrap()).unwrap(), 4.0);
        let b = BasisSpec::new(3, 0.5).unwrap();
        let s = StateVector::superposition(&b, &[(1, c(1.0)), (-1, c(1.0))]).unwrap();
        assert!((p_squared_expectation(&s).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn p_squared_rejects_unnormalized() {
        let b = BasisSpec::new(1, 1.0).unwrap();
        let s = StateVector::from_amplitudes(b, DVector::from_element(3, c(1.0))).unwrap();
        assert!(matches!(p_squared_expectation(&s), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn basis_validation() {
        assert!(BasisSpec::new(3, 0.0).is_err());
        assert!(BasisSpec::new(3, -1.0).is_err());
        let b = BasisSpec::new(7, 1.0).unwrap();
        assert_eq!(b.dim(), 15);
        for n in -7..=7 {
            let i = b.index_of(n).unwrap();
            assert!(i < b.dim());
            assert_eq!(b.quantum_number(i), n);
        }
    }

    #[test]
    fn truncation_rule() {
        assert_eq!(rule_cutoff(0.0), 20);
        assert_eq!(rule_cutoff(4.0), 40);
    }
}
