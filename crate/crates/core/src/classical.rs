//! Chirikov standard map and ensemble momentum spreading.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diagnostics::{DiagnosticSeries, Method, SeriesKind};
use crate::error::{Error, Result};

/// Trajectories per parallel work unit. Fixed so the reduction order does not
/// depend on the thread count.
const CHUNK: usize = 512;
pub const MIN_ENSEMBLE: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub theta: f64,
    pub momentum: f64,
}

impl PhasePoint {
    pub fn new(theta: f64, momentum: f64) -> Self {
        Self { theta: reduce(theta), momentum }
    }
}

fn reduce(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// `θ' = θ + T P`, then `P' = P + K sin θ'` (mass 1).
pub fn chirikov_step(pt: PhasePoint, k: f64, t: f64) -> PhasePoint {
    let theta = reduce(pt.theta + t * pt.momentum);
    PhasePoint { theta, momentum: pt.momentum + k * theta.sin() }
}

/// Inverse of [`chirikov_step`].
pub fn chirikov_step_inverse(pt: PhasePoint, k: f64, t: f64) -> PhasePoint {
    let momentum = pt.momentum - k * pt.theta.sin();
    PhasePoint { theta: reduce(pt.theta - t * momentum), momentum }
}

/// `⟨P²⟩(j)` for `j = 0..=j_max` over `n_points` trajectories started at
/// `P = 0` with `θ` uniform from a ChaCha8 stream seeded by `seed`.
pub fn ensemble_second_moment(k: f64, t: f64, n_points: usize, seed: u64, j_max: usize) -> Result<DiagnosticSeries> {
    if n_points < MIN_ENSEMBLE {
        return Err(Error::InvalidParameter {
            name: "n_points",
            reason: format!("{n_points} < {MIN_ENSEMBLE}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let thetas: Vec<f64> = (0..n_points).map(|_| rng.random_range(0.0..TAU)).collect();
    let partials: Vec<Vec<f64>> = thetas
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut sums = vec![0.0; j_max + 1];
            for &theta in chunk {
                let mut pt = PhasePoint::new(theta, 0.0);
                for s in sums.iter_mut().skip(1) {
                    pt = chirikov_step(pt, k, t);
                    *s += pt.momentum * pt.momentum;
                }
            }
            sums
        })
        .collect();
    let mut totals = vec![0.0; j_max + 1];
    for part in &partials {
        for (tot, p) in totals.iter_mut().zip(part) {
            *tot += p;
        }
    }
    let label = format!("ensemble(n={n_points},seed={seed})");
    let mut series = DiagnosticSeries::new(SeriesKind::P2, Method::Ensemble, label, n_points);
    for (j, tot) in totals.iter().enumerate() {
        series.push_real(j as i64, tot / n_points as f64);
    }
    Ok(series)
}
