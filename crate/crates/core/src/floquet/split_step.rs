use num_complex::Complex64;

use super::{default_grid_len, ModelParams, RotorKind};
use crate::error::{Error, Result};
use crate::fourier::FourierGrid;
use crate::hilbert::StateVector;

/// Weight allowed within a band margin of the cutoff before a propagated
/// state is flagged as edge-contaminated.
pub const EDGE_WEIGHT_LIMIT: f64 = 1e-8;

/// Result of one split-step period.
#[derive(Debug, Clone)]
pub struct SplitStepOutput {
    pub state: StateVector,
    /// Input weight within one band margin of the cutoff.
    pub edge_weight: f64,
    pub edge_contaminated: bool,
}

/// Reusable FFT plan and phase tables for split-step propagation.
#[derive(Debug, Clone)]
pub struct SplitStepper {
    grid: FourierGrid,
    kick: Vec<Complex64>,
    free: Vec<Complex64>,
    margin: usize,
    params: ModelParams,
}

impl SplitStepper {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let basis = *params.basis();
        let (grid, kick) = match params.kind() {
            RotorKind::Standard => {
                let grid = FourierGrid::new(default_grid_len(basis.dim()));
                let k = params.k_kick();
                let kick = grid.thetas().map(|t| Complex64::from_polar(1.0, -k * t.cos())).collect();
                (grid, kick)
            }
            RotorKind::Generic => {
                let profile = params.kick_profile().expect("generic kind carries a profile");
                let grid = FourierGrid::new(profile.len());
                let kick = profile.samples().iter().map(|&v| Complex64::from_polar(1.0, -v)).collect();
                (grid, kick)
            }
            RotorKind::Linear => {
                return Err(Error::InvalidParameter {
                    name: "kind",
                    reason: "split-step propagation supports the standard and generic kinds".into(),
                })
            }
        };
        let free = basis.labels().map(|(_, n)| params.free_phase(n)).collect();
        Ok(Self { grid, kick, free, margin: params.band_margin(), params: params.clone() })
    }

    pub fn grid_len(&self) -> usize {
        self.grid.len()
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// One period: free phase, kick on the θ grid, back to momentum, truncate.
    pub fn apply(&self, state: &StateVector) -> Result<SplitStepOutput> {
        let basis = *self.params.basis();
        if state.basis().dim() != basis.dim() {
            return Err(Error::DimensionMismatch { expected: basis.dim(), got: state.basis().dim() });
        }
        let edge_weight = state.edge_weight(self.margin);
        let mut buf = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        for (i, n) in basis.labels() {
            buf[self.grid.slot(n)] = state.amplitudes()[i] * self.free[i];
        }
        self.grid.synthesize(&mut buf);
        for (v, k) in buf.iter_mut().zip(&self.kick) {
            *v *= k;
        }
        self.grid.analyze(&mut buf);
        let scale = 1.0 / self.grid.len() as f64;
        let amps = nalgebra::DVector::from_iterator(
            basis.dim(),
            basis.labels().map(|(_, n)| buf[self.grid.slot(n)] * scale),
        );
        Ok(SplitStepOutput {
            state: StateVector::from_amplitudes(basis, amps)?,
            edge_weight,
            edge_contaminated: edge_weight > EDGE_WEIGHT_LIMIT,
        })
    }
}

/// One split-step period of `params` applied to `state`.
pub fn split_step_apply(params: &ModelParams, state: &StateVector) -> Result<SplitStepOutput> {
    SplitStepper::new(params)?.apply(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floquet::{build_generic_floquet, build_standard_floquet, propagate, KickProfile};
    use crate::hilbert::{momentum_eigenstate, BasisSpec};

    fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
        (a.amplitudes() - b.amplitudes()).iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    #[test]
    fn zero_kick_is_free_phase() {
        let b = BasisSpec::new(8, 1.0).unwrap();
        let p = ModelParams::standard(0.0, 0.9, b).unwrap();
        let psi = StateVector::superposition(&b, &[(3, Complex64::new(1.0, 0.0)), (-2, Complex64::new(0.0, 1.0))]).unwrap();
        let out = split_step_apply(&p, &psi).unwrap();
        for (i, n) in b.labels() {
            let want = psi.amplitudes()[i] * p.free_phase(n);
            assert!((out.state.amplitudes()[i] - want).norm() < 1e-15);
        }
    }

    #[test]
    fn one_kick_matches_dense() {
        let b = BasisSpec::for_kick(1.0, 1.0).unwrap();
        let p = ModelParams::standard(1.0, 1.0, b).unwrap();
        let psi = momentum_eigenstate(&b, 0).unwrap();
        let out = split_step_apply(&p, &psi).unwrap();
        let dense = propagate(&build_standard_floquet(&p).unwrap(), &psi, 1).unwrap();
        assert!(max_diff(&out.state, &dense) < 1e-10);
        assert!((out.state.norm_sq() - 1.0).abs() < 1e-12);
        assert!(!out.edge_contaminated);
    }

    #[test]
    fn repeated_steps_match_dense_power() {
        let b = BasisSpec::new(80, 1.0).unwrap();
        let p = ModelParams::standard(2.0, 1.0, b).unwrap();
        let u = build_standard_floquet(&p).unwrap();
        let stepper = SplitStepper::new(&p).unwrap();
        let mut s = momentum_eigenstate(&b, 1).unwrap();
        for j in 1..=15 {
            s = stepper.apply(&s).unwrap().state;
            let dense = propagate(&u, &momentum_eigenstate(&b, 1).unwrap(), j).unwrap();
            assert!(max_diff(&s, &dense) < 1e-8 * j as f64);
        }
    }

    #[test]
    fn generic_profile_steps() {
        let b = BasisSpec::new(30, 1.0).unwrap();
        let profile = KickProfile::from_fn(256, |t| 0.8 * t.cos() + 0.3 * (2.0 * t).sin()).unwrap();
        let p = ModelParams::generic(profile, 0.7, b).unwrap();
        let psi = momentum_eigenstate(&b, 0).unwrap();
        let out = split_step_apply(&p, &psi).unwrap();
        let dense = propagate(&build_generic_floquet(&p).unwrap(), &psi, 1).unwrap();
        assert!(max_diff(&out.state, &dense) < 1e-10);
    }

    #[test]
    fn edge_state_is_flagged() {
        let b = BasisSpec::new(30, 1.0).unwrap();
        let p = ModelParams::standard(1.0, 1.0, b).unwrap();
        let out = split_step_apply(&p, &momentum_eigenstate(&b, 29).unwrap()).unwrap();
        assert!(out.edge_contaminated);
    }

    #[test]
    fn linear_kind_rejected() {
        let b = BasisSpec::new(4, 1.0).unwrap();
        let p = ModelParams::linear(1.0, 0.5, b).unwrap();
        assert!(SplitStepper::new(&p).is_err());
    }
}
