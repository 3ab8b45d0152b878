//! Closed-form dynamics of the linear kicked rotor.
//!
//! The linear-rotor Floquet matrix `e^{-imφ} i^{m−n} J_{m−n}(k)` is the
//! unitary irreducible representation of the planar Euclidean group,
//! `U(θ, a, φ)_{nm} = e^{-imθ} e^{i(m−n)φ} J_{m−n}(a)`, evaluated at rotation
//! `θ = φ_free` and a translation of length `k` along `φ = π/2`. Powers of the
//! Floquet operator are therefore representations of group powers.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::floquet::{band_margin, bessel_j, build_linear_floquet, BesselTable, FloquetMatrix, ModelParams, RotorKind};
use crate::hilbert::BasisSpec;

/// `|sin(θ/2)|` below which the closed forms are not used.
pub const RESONANCE_TOLERANCE: f64 = 1e-12;
const RESIDUE_LIMIT: f64 = 1e-10;

/// Rotation by `rot` followed by a translation of length `trans_mag` in
/// direction `trans_dir`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct E2Element {
    rot: f64,
    trans_mag: f64,
    trans_dir: f64,
}

impl E2Element {
    /// Canonical form: angles in `[0, 2π)`, `a ≥ 0`, and `φ = 0` when `a = 0`.
    pub fn new(rot: f64, trans_mag: f64, trans_dir: f64) -> Self {
        let (mag, dir) = if trans_mag < 0.0 { (-trans_mag, trans_dir + PI) } else { (trans_mag, trans_dir) };
        let dir = if mag == 0.0 { 0.0 } else { wrap(dir) };
        Self { rot: wrap(rot), trans_mag: mag, trans_dir: dir }
    }

    pub fn identity() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    pub fn from_vector(rot: f64, x: f64, y: f64) -> Self {
        Self::new(rot, x.hypot(y), y.atan2(x))
    }

    /// The group element of one linear-rotor period.
    pub fn linear_kick(params: &ModelParams) -> Result<Self> {
        require_linear(params)?;
        Ok(Self::new(params.phi_free().expect("linear kind carries phi_free"), params.k_kick(), FRAC_PI_2))
    }

    pub fn rot(&self) -> f64 {
        self.rot
    }
    pub fn trans_mag(&self) -> f64 {
        self.trans_mag
    }
    pub fn trans_dir(&self) -> f64 {
        self.trans_dir
    }

    pub fn translation(&self) -> (f64, f64) {
        (self.trans_mag * self.trans_dir.cos(), self.trans_mag * self.trans_dir.sin())
    }

    /// `U(θ, a, φ)` on a truncated basis.
    pub fn representation(&self, basis: &BasisSpec) -> Result<DMatrix<Complex64>> {
        let dim = basis.dim();
        let table = BesselTable::new(dim.saturating_sub(1), self.trans_mag)?;
        Ok(DMatrix::from_fn(dim, dim, |r, c| {
            let (n, m) = (basis.quantum_number(r), basis.quantum_number(c));
            let phase = -(m as f64) * self.rot + (m - n) as f64 * self.trans_dir;
            Complex64::from_polar(table.get(m - n), phase)
        }))
    }
}

fn wrap(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

fn require_linear(params: &ModelParams) -> Result<()> {
    if params.kind() != RotorKind::Linear {
        return Err(Error::InvalidParameter { name: "kind", reason: "closed forms need the linear rotor".into() });
    }
    Ok(())
}

/// `(R₂, a₂)(R₁, a₁) = (R₂R₁, R₂a₁ + a₂)`.
pub fn e2_compose(g2: E2Element, g1: E2Element) -> E2Element {
    let (x1, y1) = g1.translation();
    let (x2, y2) = g2.translation();
    let (s, c) = g2.rot.sin_cos();
    E2Element::from_vector(g2.rot + g1.rot, c * x1 - s * y1 + x2, s * x1 + c * y1 + y2)
}

/// `g^j`. The translation is `Σ_{k<j} R^k a`, of signed length
/// `a sin(jθ/2)/sin(θ/2)` along `φ + (j−1)θ/2`; resonant rotations fall back
/// to repeated composition.
pub fn e2_power(g: E2Element, j: u32) -> E2Element {
    let half = 0.5 * g.rot;
    if half.sin().abs() < RESONANCE_TOLERANCE {
        return (0..j).fold(E2Element::identity(), |acc, _| e2_compose(g, acc));
    }
    let ratio = (j as f64 * half).sin() / half.sin();
    E2Element::new(j as f64 * g.rot, g.trans_mag * ratio, g.trans_dir + (j as f64 - 1.0) * half)
}

/// `U^j` of the linear rotor.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearPropagator {
    pub matrix: FloquetMatrix,
    /// Set when `sin(φ/2) = 0` and the matrix came from a dense power.
    pub resonant_fallback: bool,
}

/// `(U_j)_{nm} = e^{-i(j+1)mφ/2} e^{-i(j−1)nφ/2} i^{m−n} J_{m−n}(k S_j)` with
/// `S_j = sin(jφ/2)/sin(φ/2)`.
pub fn linear_propagator_closed_form(params: &ModelParams, j: u32) -> Result<LinearPropagator> {
    require_linear(params)?;
    let phi = params.phi_free().expect("linear kind carries phi_free");
    if (0.5 * phi).sin().abs() < RESONANCE_TOLERANCE {
        let u = build_linear_floquet(params)?;
        let matrix = FloquetMatrix::from_parts(u.power(j), params.clone())?;
        return Ok(LinearPropagator { matrix, resonant_fallback: true });
    }
    let basis = *params.basis();
    let z = params.k_kick() * sine_ratio(phi, j);
    let table = BesselTable::new(basis.dim().saturating_sub(1), z)?;
    let jf = j as f64;
    let entries = DMatrix::from_fn(basis.dim(), basis.dim(), |r, c| {
        let (n, m) = (basis.quantum_number(r), basis.quantum_number(c));
        let phase = -0.5 * (jf + 1.0) * m as f64 * phi - 0.5 * (jf - 1.0) * n as f64 * phi + FRAC_PI_2 * (m - n) as f64;
        Complex64::from_polar(table.get(m - n), phase)
    });
    Ok(LinearPropagator { matrix: FloquetMatrix::from_parts(entries, params.clone())?, resonant_fallback: false })
}

fn sine_ratio(phi: f64, j: u32) -> f64 {
    (0.5 * j as f64 * phi).sin() / (0.5 * phi).sin()
}

/// `L_j = J₀²(|δk| sin(jθ₀)/sin θ₀)`, `θ₀ = φ/2`.
pub fn linear_echo_closed_form(k_kick_delta: f64, phi_free: f64, j: u32) -> Result<f64> {
    let theta0 = 0.5 * phi_free;
    if theta0.sin().abs() < RESONANCE_TOLERANCE {
        return Err(Error::Resonant { angle: phi_free });
    }
    let x = k_kick_delta.abs() * (j as f64 * theta0).sin() / theta0.sin();
    Ok(bessel_j(0, x)?.powi(2))
}

/// Wigner function of `U^j|n⟩`:
/// `(1/π) Σ_r e^{2ir(θ + π/2 − (j−1)φ/2)} J_{n−p−r}(z) J_{n−p+r}(z)`, `z = k S_j`.
pub fn linear_wigner_closed_form(n_init: i64, params: &ModelParams, j: u32, theta: f64, p_l: i64) -> Result<f64> {
    require_linear(params)?;
    let basis = params.basis();
    basis.index_of(n_init)?;
    basis.index_of(p_l)?;
    let phi = params.phi_free().expect("linear kind carries phi_free");
    if (0.5 * phi).sin().abs() < RESONANCE_TOLERANCE {
        return Err(Error::Resonant { angle: phi });
    }
    let z = params.k_kick() * sine_ratio(phi, j);
    let d = n_init - p_l;
    let reach = band_margin(z) as i64 + d.abs();
    let table = BesselTable::new(reach as usize + d.unsigned_abs() as usize, z)?;
    let shift = theta + FRAC_PI_2 - 0.5 * (j as f64 - 1.0) * phi;
    let mut acc = Complex64::new(0.0, 0.0);
    for r in -reach..=reach {
        acc += Complex64::from_polar(table.get(d - r) * table.get(d + r), 2.0 * r as f64 * shift);
    }
    acc /= PI;
    if acc.im.abs() > RESIDUE_LIMIT {
        return Err(Error::ImaginaryResidue { what: "linear wigner", residue: acc.im.abs(), bound: RESIDUE_LIMIT });
    }
    Ok(acc.re)
}

/// Allowed gap between a closed form and its numeric counterpart.
pub const ORACLE_TOLERANCE: f64 = 1e-8;

/// One closed-form versus numeric comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Largest `j` compared.
    pub j_max: u32,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.max_deviation < self.tolerance
    }
}

/// Width of the edge strip excluded from closed-form comparisons: the band of
/// the largest Bessel argument `k / |sin(φ/2)|` reached by any power.
pub fn oracle_margin(params: &ModelParams) -> Result<usize> {
    require_linear(params)?;
    let phi = params.phi_free().expect("linear kind carries phi_free");
    let s = (0.5 * phi).sin().abs();
    if s < RESONANCE_TOLERANCE {
        return Err(Error::Resonant { angle: phi });
    }
    Ok(band_margin(params.k_kick() / s))
}

/// Compares the closed-form propagator, echo and Wigner function against
/// dense numerics on `|n_init⟩` for `j = 0..=j_max`. Only labels at least
/// [`oracle_margin`] away from the cutoff enter the propagator and Wigner
/// comparisons.
pub fn linear_oracle_checks(
    params: &ModelParams,
    j_max: u32,
    delta_k: f64,
    n_init: i64,
    n_theta: usize,
) -> Result<Vec<OracleCheck>> {
    use crate::diagnostics::{loschmidt_echo_direct, wigner};
    use crate::hilbert::momentum_eigenstate;

    let margin = oracle_margin(params)?;
    let basis = *params.basis();
    let inside = |n: i64| !basis.is_edge(n, margin);
    if !inside(n_init) {
        return Err(Error::InvalidParameter {
            name: "cutoff",
            reason: format!("initial label {n_init} lies within {margin} of the cutoff {}", basis.cutoff()),
        });
    }
    let phi = params.phi_free().expect("linear kind carries phi_free");
    let u = build_linear_floquet(params)?;
    let psi0 = momentum_eigenstate(&basis, n_init)?;

    let mut dense = DMatrix::identity(basis.dim(), basis.dim());
    let mut state = psi0.clone();
    let (mut prop_dev, mut wig_dev): (f64, f64) = (0.0, 0.0);
    for j in 0..=j_max {
        if j > 0 {
            dense = u.entries() * dense;
            state = crate::floquet::propagate(&u, &state, 1)?;
        }
        let closed = linear_propagator_closed_form(params, j)?;
        for (r, _) in basis.labels().filter(|&(_, n)| inside(n)) {
            for (c, _) in basis.labels().filter(|&(_, m)| inside(m)) {
                prop_dev = prop_dev.max((closed.matrix.entries()[(r, c)] - dense[(r, c)]).norm());
            }
        }
        let w = wigner(&state, n_theta)?;
        for (k, &theta) in w.thetas().iter().enumerate() {
            for &p in w.p_labels().iter().filter(|&&p| inside(p)) {
                let numeric = w.value(k, p).expect("label on grid");
                wig_dev = wig_dev.max((linear_wigner_closed_form(n_init, params, j, theta, p)? - numeric).abs());
            }
        }
    }

    let echo = loschmidt_echo_direct(params, delta_k, &psi0, j_max as usize)?;
    if let Some(j) = echo.truncated_at {
        return Err(Error::InvalidParameter {
            name: "cutoff",
            reason: format!("numeric echo reached the basis edge at j = {j}"),
        });
    }
    let mut echo_dev: f64 = 0.0;
    for (j, v) in echo.times.iter().zip(&echo.values) {
        echo_dev = echo_dev.max((v.re - linear_echo_closed_form(delta_k, phi, *j as u32)?).abs());
    }

    let check = |name, max_deviation| OracleCheck { name, max_deviation, tolerance: ORACLE_TOLERANCE, j_max };
    Ok(vec![check("propagator", prop_dev), check("echo", echo_dev), check("wigner", wig_dev)])
}
