//! Cayley-transformed eigen-problem.
//!
//! Writing the kick factor as `e^{-iV} = (1 − i tan(V/2)) / (1 + i tan(V/2))`
//! turns `U φ = e^{-iλ} φ` into the singularity of the Hermitian matrix
//!
//! ```text
//! M(λ) = F + diag(tan(b_m/2 − λ/2)),   F_{mn} = f_{m−n},
//! ```
//!
//! where `f_k` are the Fourier coefficients of `tan(V/2)` and `e^{-i b_m}` is
//! the free factor. `dM/dλ` is negative definite, so the number of negative
//! eigenvalues of `M` grows by one at every root and drops at every pole of
//! the diagonal. Roots are isolated by bisection on that count.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::floquet::{default_grid_len, FloquetMatrix, KickProfile, ModelParams, PhaseSign, RotorKind};
use crate::fourier::FourierGrid;
use crate::hilbert::BasisSpec;

pub const DEFAULT_LAMBDA_GRID: usize = 10_000;
/// Minimum distance of `V/2` from a pole of `tan`.
const POLE_CLEARANCE: f64 = 1e-3;
/// Half-width of the λ window excluded around each diagonal pole.
const POLE_WINDOW: f64 = 1e-6;
/// Bisection stops once the bracket is narrower than this.
const ROOT_BRACKET: f64 = 1e-11;
const MAX_SCAN_DIM: usize = 101;
const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Fourier coefficients `f_k` of a periodic symbol `f(θ) = Σ f_k e^{ikθ}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FourierSymbol {
    coeffs: BTreeMap<i64, Complex64>,
}

impl FourierSymbol {
    pub fn new(coeffs: BTreeMap<i64, Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn from_pairs(pairs: &[(i64, Complex64)]) -> Self {
        Self { coeffs: pairs.iter().copied().collect() }
    }

    /// Real symbol `Σ_k c_k cos(kθ)` given as `(k, c_k)` pairs with `k ≥ 1`,
    /// plus a constant term.
    pub fn cosine_series(constant: f64, terms: &[(i64, f64)]) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, Complex64::new(constant, 0.0));
        for &(k, c) in terms {
            coeffs.insert(k, Complex64::new(0.5 * c, 0.0));
            coeffs.insert(-k, Complex64::new(0.5 * c, 0.0));
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Complex64> {
        &self.coeffs
    }

    pub fn get(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn max_order(&self) -> usize {
        self.coeffs.keys().map(|k| k.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// `max |f_{-k} − conj(f_k)|`.
    pub fn hermitian_defect(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |a, (&k, &c)| a.max((self.get(-k) - c.conj()).norm()))
    }

    /// The same symbol with `shift` added to `f_0`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut out = self.clone();
        *out.coeffs.entry(0).or_default() += shift;
        out
    }

    pub fn evaluate(&self, theta: f64) -> Complex64 {
        self.coeffs.iter().map(|(&k, &c)| c * Complex64::from_polar(1.0, k as f64 * theta)).sum()
    }

    /// `n×n` section with entries `f_{i−j}`.
    pub fn toeplitz_section(&self, n: usize) -> DMatrix<Complex64> {
        DMatrix::from_fn(n, n, |i, j| self.get(i as i64 - j as i64))
    }

    pub(crate) fn require_hermitian(&self) -> Result<()> {
        let defect = self.hermitian_defect();
        if defect > HERMITIAN_TOLERANCE {
            return Err(Error::InvalidParameter {
                name: "symbol",
                reason: format!("coefficients are not Hermitian (defect {defect:e})"),
            });
        }
        Ok(())
    }
}

/// Fourier coefficients of `tan(V(θ)/2ħ)` up to `max_order`, Hermitian
/// symmetry enforced.
pub fn cayley_coefficients(profile: &KickProfile, max_order: usize) -> Result<FourierSymbol> {
    let m = profile.len();
    if max_order >= m / 2 {
        return Err(Error::InvalidParameter {
            name: "max_order",
            reason: format!("{max_order} must be below half the sample count {m}"),
        });
    }
    let mut poles = Vec::new();
    let samples: Vec<Complex64> = profile
        .samples()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let r = (0.5 * v - FRAC_PI_2).rem_euclid(PI);
            if r.min(PI - r) < POLE_CLEARANCE {
                poles.push(i);
            }
            Complex64::new((0.5 * v).tan(), 0.0)
        })
        .collect();
    if !poles.is_empty() {
        return Err(Error::TanPole { indices: poles });
    }
    let grid = FourierGrid::new(m);
    let raw = grid.coefficients(&samples);
    let mut coeffs = BTreeMap::new();
    coeffs.insert(0, Complex64::new(raw[0].re, 0.0));
    for k in 1..=max_order as i64 {
        let c = 0.5 * (raw[grid.slot(k)] + raw[grid.slot(-k)].conj());
        coeffs.insert(k, c);
        coeffs.insert(-k, c.conj());
    }
    Ok(FourierSymbol { coeffs })
}

/// Hermitian Toeplitz data of the tan eigen-equation.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSystem {
    symbol: FourierSymbol,
    tau_free: f64,
    phase_sign: PhaseSign,
    lambda_grid: usize,
}

impl ToeplitzSystem {
    pub fn new(symbol: FourierSymbol, tau_free: f64) -> Self {
        Self { symbol, tau_free, phase_sign: PhaseSign::Derived, lambda_grid: DEFAULT_LAMBDA_GRID }
    }

    /// System for a standard or generic model; the standard kick is sampled
    /// on the default grid.
    pub fn from_model(params: &ModelParams) -> Result<Self> {
        let dim = params.basis().dim();
        let profile = match params.kind() {
            RotorKind::Standard => KickProfile::cosine(params.k_kick(), default_grid_len(dim))?,
            RotorKind::Generic => params.kick_profile().expect("generic kind carries a profile").clone(),
            RotorKind::Linear => {
                return Err(Error::InvalidParameter {
                    name: "kind",
                    reason: "the tan eigen-equation needs a quadratic free factor".into(),
                })
            }
        };
        let symbol = cayley_coefficients(&profile, dim - 1)?;
        let tau = params.tau_free().expect("quadratic kinds carry tau_free");
        Ok(Self::new(symbol, tau).with_phase_sign(params.phase_sign()))
    }

    pub fn with_phase_sign(mut self, sign: PhaseSign) -> Self {
        self.phase_sign = sign;
        self
    }

    pub fn with_lambda_grid(mut self, points: usize) -> Self {
        self.lambda_grid = points.max(16);
        self
    }

    pub fn symbol(&self) -> &FourierSymbol {
        &self.symbol
    }
    pub fn tau_free(&self) -> f64 {
        self.tau_free
    }
    pub fn phase_sign(&self) -> PhaseSign {
        self.phase_sign
    }
    pub fn lambda_grid(&self) -> usize {
        self.lambda_grid
    }

    /// Free factor is `e^{-i b_m}`.
    fn free_angle(&self, m: i64) -> f64 {
        -self.phase_sign.factor() * 0.5 * (m * m) as f64 * self.tau_free
    }

    /// `M(λ)` on the given basis.
    pub fn matrix(&self, lambda: f64, basis: &BasisSpec) -> DMatrix<Complex64> {
        let mut m = self.symbol.toeplitz_section(basis.dim());
        for (i, n) in basis.labels() {
            m[(i, i)] += (0.5 * self.free_angle(n) - 0.5 * lambda).tan();
        }
        m
    }

    fn negative_count(&self, lambda: f64, basis: &BasisSpec) -> usize {
        self.matrix(lambda, basis).symmetric_eigenvalues().iter().filter(|&&e| e < 0.0).count()
    }

    /// The unitary `(1 − iF)(1 + iF)^{-1} · diag(e^{-i b_m})` whose eigenphases
    /// are exactly the roots of `M(λ)` on this basis.
    pub fn cayley_unitary(&self, basis: &BasisSpec) -> DMatrix<Complex64> {
        let n = basis.dim();
        let f = self.symbol.toeplitz_section(n);
        let i = Complex64::new(0.0, 1.0);
        let id = DMatrix::<Complex64>::identity(n, n);
        let plus = &id + &f * i;
        let minus = &id - &f * i;
        let kick = plus.lu().solve(&minus).expect("1 + iF is invertible for Hermitian F");
        let mut u = kick;
        for (c, m) in basis.labels() {
            let phase = Complex64::from_polar(1.0, -self.free_angle(m));
            let mut col = u.column_mut(c);
            col *= phase;
        }
        u
    }
}

/// Cayley-form Floquet operator of a standard or generic model.
///
/// In the interior of a large basis it agrees with the Fourier kick factor;
/// near the cutoff it differs because the truncated tan-Toeplitz section is
/// inverted exactly.
pub fn cayley_floquet(params: &ModelParams) -> Result<FloquetMatrix> {
    let sys = ToeplitzSystem::from_model(params)?;
    FloquetMatrix::from_parts(sys.cayley_unitary(params.basis()), params.clone())
}

/// Roots of `det M(λ) = 0` in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    /// Sorted roots, repeated by multiplicity.
    pub roots: Vec<f64>,
    /// Roots whose bracket still held more than one eigenvalue crossing.
    pub degenerate: Vec<f64>,
    /// Roots inside an excluded pole window, placed at the pole.
    pub near_pole: Vec<f64>,
    /// Number of inertia evaluations.
    pub evaluations: usize,
}

struct Pole {
    at: f64,
    mult: usize,
}

pub fn hermitian_scan(sys: &ToeplitzSystem, basis: &BasisSpec) -> Result<ScanResult> {
    let dim = basis.dim();
    if dim > MAX_SCAN_DIM {
        return Err(Error::InvalidParameter { name: "dim", reason: format!("{dim} > {MAX_SCAN_DIM} for the scan") });
    }
    sys.symbol.require_hermitian()?;

    // pole loci λ ≡ b_m − π, grouped when closer than the exclusion window
    let mut raw: Vec<f64> = basis.labels().map(|(_, m)| (sys.free_angle(m) - PI).rem_euclid(TAU)).collect();
    raw.sort_by(f64::total_cmp);
    let start = largest_gap_midpoint(&raw);
    let mut unwrapped: Vec<f64> = raw.iter().map(|&p| start + (p - start).rem_euclid(TAU)).collect();
    unwrapped.sort_by(f64::total_cmp);
    let mut poles: Vec<Pole> = Vec::new();
    for p in unwrapped {
        match poles.last_mut() {
            Some(last) if p - last.at < 2.0 * POLE_WINDOW => {
                last.at = (last.at * last.mult as f64 + p) / (last.mult + 1) as f64;
                last.mult += 1;
            }
            _ => poles.push(Pole { at: p, mult: 1 }),
        }
    }

    // sample points: the grid minus pole windows, plus both flanks of each pole
    let g = sys.lambda_grid;
    let mut points: Vec<(f64, Option<usize>)> = (0..=g)
        .map(|i| start + TAU * i as f64 / g as f64)
        .filter(|x| poles.iter().all(|p| (x - p.at).abs() > POLE_WINDOW))
        .map(|x| (x, None))
        .collect();
    for (idx, p) in poles.iter().enumerate() {
        points.push((p.at - POLE_WINDOW, None));
        points.push((p.at + POLE_WINDOW, Some(idx)));
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut counts: Vec<usize> = points.par_iter().map(|&(x, _)| sys.negative_count(x, basis)).collect();
    // the two ends are the same λ modulo 2π
    let last = counts.len() - 1;
    if (points[last].0 - points[0].0 - TAU).abs() < 1e-12 {
        counts[last] = counts[0];
    }
    let mut evaluations = counts.len();

    let intervals: Vec<usize> = (0..points.len() - 1).collect();
    let found: Vec<(Vec<f64>, Vec<f64>, Vec<f64>, usize, bool)> = intervals
        .par_iter()
        .map(|&i| {
            let (a, _) = points[i];
            let (b, pole_after) = points[i + 1];
            let (ca, cb) = (counts[i] as i64, counts[i + 1] as i64);
            let mut roots = Vec::new();
            let mut degenerate = Vec::new();
            let mut near = Vec::new();
            let mut evals = 0;
            let mut anomaly = false;
            if let Some(pi) = pole_after {
                let inside = cb - ca + poles[pi].mult as i64;
                if inside > 0 {
                    for _ in 0..inside {
                        near.push(poles[pi].at);
                        roots.push(poles[pi].at);
                    }
                } else if inside < 0 {
                    anomaly = true;
                }
            } else if cb > ca {
                isolate(sys, basis, a, ca, b, cb, &mut roots, &mut degenerate, &mut evals);
            } else if cb < ca {
                anomaly = true;
            }
            (roots, degenerate, near, evals, anomaly)
        })
        .collect();

    let mut roots = Vec::new();
    let mut degenerate = Vec::new();
    let mut near_pole = Vec::new();
    let mut anomalies = 0;
    for (r, d, n, e, bad) in found {
        roots.extend(r);
        degenerate.extend(d);
        near_pole.extend(n);
        evaluations += e;
        anomalies += bad as usize;
    }
    let fold = |v: &mut Vec<f64>| {
        for x in v.iter_mut() {
            *x = x.rem_euclid(TAU);
            // a root at 0 may be bracketed from below
            if TAU - *x < ROOT_BRACKET {
                *x = 0.0;
            }
        }
        v.sort_by(f64::total_cmp);
    };
    fold(&mut roots);
    fold(&mut degenerate);
    fold(&mut near_pole);
    if roots.len() < dim || anomalies > 0 {
        return Err(Error::MissedRoots {
            found: roots.len(),
            expected: dim,
            unresolved: near_pole.len() + anomalies,
            degenerate: degenerate.len(),
        });
    }
    Ok(ScanResult { roots, degenerate, near_pole, evaluations })
}

fn largest_gap_midpoint(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    let mut best = (sorted[0] + TAU - sorted[n - 1], sorted[n - 1]);
    for w in sorted.windows(2) {
        if w[1] - w[0] > best.0 {
            best = (w[1] - w[0], w[0]);
        }
    }
    best.1 + 0.5 * best.0
}

#[allow(clippy::too_many_arguments)]
fn isolate(
    sys: &ToeplitzSystem,
    basis: &BasisSpec,
    a: f64,
    ca: i64,
    b: f64,
    cb: i64,
    roots: &mut Vec<f64>,
    degenerate: &mut Vec<f64>,
    evals: &mut usize,
) {
    if cb <= ca {
        return;
    }
    let mid = 0.5 * (a + b);
    if b - a < ROOT_BRACKET {
        let mult = (cb - ca) as usize;
        if mult > 1 {
            degenerate.extend(std::iter::repeat_n(mid, mult));
        }
        roots.extend(std::iter::repeat_n(mid, mult));
        return;
    }
    let cm = sys.negative_count(mid, basis) as i64;
    *evals += 1;
    // the count is monotone between poles; clamp rounding noise
    let cm = cm.clamp(ca, cb);
    isolate(sys, basis, a, ca, mid, cm, roots, degenerate, evals);
    isolate(sys, basis, mid, cm, b, cb, roots, degenerate, evals);
}
