//! Periodic-grid Fourier helpers on top of `rustfft`.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Forward/inverse transform pair of a fixed length.
#[derive(Clone)]
pub struct FourierGrid {
    len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for FourierGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FourierGrid").field("len", &self.len).finish()
    }
}

impl FourierGrid {
    pub fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self { len, forward: planner.plan_fft_forward(len), inverse: planner.plan_fft_inverse(len) }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Sample angles `θ_k = 2πk/len`.
    pub fn thetas(&self) -> impl Iterator<Item = f64> {
        let h = std::f64::consts::TAU / self.len as f64;
        (0..self.len).map(move |k| k as f64 * h)
    }

    /// Fourier coefficients `c_q = (1/len) Σ_k f_k e^{-iqθ_k}`, stored at
    /// index `q mod len`.
    pub fn coefficients(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let mut buf = samples.to_vec();
        self.forward.process(&mut buf);
        let scale = 1.0 / self.len as f64;
        buf.iter_mut().for_each(|c| *c *= scale);
        buf
    }

    /// Samples `f(θ_k) = Σ_q c_q e^{iqθ_k}` from coefficients at `q mod len`.
    pub fn synthesize(&self, coeffs: &mut [Complex64]) {
        self.inverse.process(coeffs);
    }

    /// In-place unnormalized forward transform.
    pub fn analyze(&self, samples: &mut [Complex64]) {
        self.forward.process(samples);
    }

    pub fn slot(&self, q: i64) -> usize {
        q.rem_euclid(self.len as i64) as usize
    }
}
