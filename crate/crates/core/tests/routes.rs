//! Independent computational routes that must agree.

use nalgebra::DMatrix;
use num_complex::Complex64;

use floquet_lab::diagnostics::{energy_growth, wigner, wigner_from_eigensystem, ModeMomentum};
use floquet_lab::floquet::{
    build_floquet, build_generic_floquet, build_standard_floquet, default_grid_len, propagate, KickProfile, ModelParams,
    PhaseSign, SplitStepper,
};
use floquet_lab::hilbert::{momentum_eigenstate, p_squared_expectation, BasisSpec, StateVector};
use floquet_lab::spectral::{cayley_floquet, diagonalize};

fn camax(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

#[test]
fn split_step_matches_dense_propagation() {
    let b = BasisSpec::new(40, 1.0).unwrap();
    let p = ModelParams::standard(2.5, 0.9, b).unwrap();
    let u = build_floquet(&p).unwrap();
    let stepper = SplitStepper::new(&p).unwrap();
    let psi = StateVector::superposition(&b, &[(0, Complex64::new(0.8, 0.0)), (2, Complex64::new(0.0, 0.6))]).unwrap();
    let mut s = psi.clone();
    for _ in 0..8 {
        s = stepper.apply(&s).unwrap().state;
    }
    let d = propagate(&u, &psi, 8).unwrap();
    assert!((s.amplitudes() - d.amplitudes()).iter().all(|z| z.norm() < 1e-10));
}

#[test]
fn generic_cosine_kick_is_the_standard_rotor() {
    let b = BasisSpec::new(20, 1.0).unwrap();
    for sign in [PhaseSign::Derived, PhaseSign::Paper] {
        let std = ModelParams::standard(1.7, 0.6, b).unwrap().with_phase_sign(sign);
        let profile = KickProfile::cosine(1.7, default_grid_len(b.dim())).unwrap();
        let gen = ModelParams::generic(profile, 0.6, b).unwrap().with_phase_sign(sign);
        let a = build_standard_floquet(&std).unwrap();
        let g = build_generic_floquet(&gen).unwrap();
        assert!(camax(&(a.entries() - g.entries())) < 1e-10);
    }
}

#[test]
fn paper_sign_is_the_complex_conjugate_free_phase() {
    let b = BasisSpec::new(10, 1.0).unwrap();
    let d = build_floquet(&ModelParams::standard(0.0, 0.8, b).unwrap()).unwrap();
    let p = build_floquet(&ModelParams::standard(0.0, 0.8, b).unwrap().with_phase_sign(PhaseSign::Paper)).unwrap();
    assert!(camax(&(d.entries().conjugate() - p.entries())) < 1e-15);
}

#[test]
fn eigensystem_reproduces_dense_powers() {
    let b = BasisSpec::new(30, 1.0).unwrap();
    let u = build_floquet(&ModelParams::standard(3.0, 1.0, b).unwrap()).unwrap().unitary_closure();
    let es = diagonalize(&u).unwrap();
    for j in [1u32, 7, 25] {
        assert!(camax(&(es.reconstruct_power(j as i64) - u.power(j))) < 1e-9);
    }
}

#[test]
fn wigner_routes_agree() {
    let b = BasisSpec::new(25, 1.0).unwrap();
    let u = build_floquet(&ModelParams::standard(1.4, 1.1, b).unwrap()).unwrap().unitary_closure();
    let es = diagonalize(&u).unwrap();
    let psi = momentum_eigenstate(&b, 1).unwrap();
    let c = es.coefficients(&psi).unwrap();
    for j in [0i64, 4, 15] {
        let a = wigner_from_eigensystem(&es, &c, j, 102).unwrap();
        let d = wigner(&propagate(&u, &psi, j as usize).unwrap(), 102).unwrap();
        assert!((a.values() - d.values()).amax() < 1e-9);
    }
}

#[test]
fn autocorr_at_zero_and_energy_growth_start() {
    let b = BasisSpec::new(15, 0.5).unwrap();
    let p = ModelParams::standard(2.0, 1.0, b).unwrap();
    let es = diagonalize(&build_floquet(&p).unwrap()).unwrap();
    let mm = ModeMomentum::new(&es);
    assert!((mm.autocorr(0).unwrap() - mm.trace_p0_squared()).abs() < 1e-9);
    let psi = momentum_eigenstate(&b, 2).unwrap();
    let s = energy_growth(&p, &psi, 3).unwrap();
    assert!((s.values[0].re - p_squared_expectation(&psi).unwrap()).abs() < 1e-15);
    assert!((s.values[0].re - 1.0).abs() < 1e-15);
}

#[test]
fn cayley_kick_matches_fourier_kick_in_the_interior() {
    let b = BasisSpec::new(50, 1.0).unwrap();
    let profile = KickProfile::lloyd(0.9, 0.1, default_grid_len(b.dim())).unwrap();
    let p = ModelParams::generic(profile, 0.7, b).unwrap();
    let c = cayley_floquet(&p).unwrap();
    let f = build_generic_floquet(&p).unwrap();
    for n in -10..=10i64 {
        for m in -10..=10i64 {
            assert!((c.entry(n, m).unwrap() - f.entry(n, m).unwrap()).norm() < 1e-10);
        }
    }
}
