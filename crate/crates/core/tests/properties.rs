//! Invariants checked over randomized inputs.

use std::f64::consts::TAU;

use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;

use floquet_lab::analytic::{e2_compose, e2_power, E2Element};
use floquet_lab::classical::{chirikov_step, chirikov_step_inverse, PhasePoint};
use floquet_lab::cli::Table;
use floquet_lab::diagnostics::{loschmidt_echo_direct, spectral_form_factor, wigner, ModeMomentum};
use floquet_lab::floquet::{build_floquet, build_standard_floquet, propagate, ModelParams};
use floquet_lab::hilbert::{momentum_eigenstate, BasisSpec, StateVector};
use floquet_lab::spectral::diagonalize;

fn state_strategy(max_cutoff: usize) -> impl Strategy<Value = StateVector> {
    (1..=max_cutoff).prop_flat_map(|cutoff| {
        let dim = 2 * cutoff + 1;
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim).prop_filter_map("nonzero", move |v| {
            let mut amps = DVector::from_iterator(dim, v.into_iter().map(|(re, im)| Complex64::new(re, im)));
            let norm = amps.norm();
            if norm < 1e-3 {
                return None;
            }
            amps /= Complex64::new(norm, 0.0);
            StateVector::from_amplitudes(BasisSpec::new(cutoff, 1.0).unwrap(), amps).ok()
        })
    })
}

fn close(a: E2Element, b: E2Element, tol: f64) -> bool {
    let (ax, ay) = a.translation();
    let (bx, by) = b.translation();
    let d = (a.rot() - b.rot()).rem_euclid(TAU);
    d.min(TAU - d) < tol && (ax - bx).abs() < tol && (ay - by).abs() < tol
}

fn e2() -> impl Strategy<Value = E2Element> {
    (0.0..TAU, 0.0f64..3.0, 0.0..TAU).prop_map(|(r, a, d)| E2Element::new(r, a, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn interior_columns_are_unit(k in 0.0f64..6.0, tau in 0.0f64..TAU) {
        let b = BasisSpec::for_kick(k, 1.0).unwrap();
        let u = build_standard_floquet(&ModelParams::standard(k, tau, b).unwrap()).unwrap();
        prop_assert!(u.interior_unitarity_deviation().unwrap() < 1e-10);
    }

    #[test]
    fn spectrum_on_unit_circle(k in 0.0f64..4.0, tau in 0.1f64..6.0) {
        let b = BasisSpec::new(12, 1.0).unwrap();
        let es = diagonalize(&build_floquet(&ModelParams::standard(k, tau, b).unwrap()).unwrap()).unwrap();
        for (mu, eps) in es.eigenvalues().iter().zip(es.quasi_energies()) {
            prop_assert!((mu.norm() - 1.0).abs() < 1e-10);
            prop_assert!((0.0..TAU).contains(eps));
        }
        prop_assert!(es.quasi_energies().windows(2).all(|w| w[0] <= w[1]));
        let dim2 = (es.dim() * es.dim()) as f64;
        for j in [0i64, 3, 11] {
            let s = spectral_form_factor(&es, j);
            prop_assert!(s >= 0.0 && s <= dim2 + 1e-9);
        }
    }

    #[test]
    fn echo_is_a_probability(k in 0.0f64..3.0, dk in -0.5f64..0.5, n in -3i64..=3) {
        let b = BasisSpec::new(30, 1.0).unwrap();
        let p = ModelParams::standard(k, 1.0, b).unwrap();
        prop_assume!(k + dk >= 0.0);
        let s = loschmidt_echo_direct(&p, dk, &momentum_eigenstate(&b, n).unwrap(), 10).unwrap();
        prop_assert!((s.values[0].re - 1.0).abs() < 1e-14);
        for v in &s.values {
            prop_assert!(v.re >= 0.0 && v.re <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn wigner_is_real_with_exact_marginals(s in state_strategy(20)) {
        let w = wigner(&s, 2 * s.basis().dim()).unwrap();
        prop_assert!(w.imag_residue() < 1e-10);
        for (i, p) in s.basis().labels() {
            prop_assert!((w.marginal(p).unwrap() - 2.0 * s.amplitudes()[i].norm_sqr()).abs() < 1e-10);
        }
    }

    #[test]
    fn global_phase_leaves_wigner_alone(s in state_strategy(8), chi in 0.0..TAU) {
        let n = 2 * s.basis().dim();
        let a = wigner(&s, n).unwrap();
        let b = wigner(&s.with_phase(chi), n).unwrap();
        prop_assert!((a.values() - b.values()).amax() < 1e-13);
    }

    #[test]
    fn rephasing_changes_no_diagnostic(k in 0.5f64..3.0, phases in prop::collection::vec(0.0..TAU, 21)) {
        let b = BasisSpec::new(10, 1.0).unwrap();
        let es = diagonalize(&build_floquet(&ModelParams::standard(k, 1.0, b).unwrap()).unwrap()).unwrap();
        let re = es.rephased(&phases).unwrap();
        let (ma, mb) = (ModeMomentum::new(&es), ModeMomentum::new(&re));
        let psi = momentum_eigenstate(&b, 0).unwrap();
        for j in [1i64, 5] {
            prop_assert!((ma.autocorr(j).unwrap() - mb.autocorr(j).unwrap()).abs() < 1e-10);
            prop_assert!((ma.otoc(&psi, j).unwrap().value - mb.otoc(&psi, j).unwrap().value).abs() < 1e-10);
            let (pa, pb) = (ma.heisenberg(j), mb.heisenberg(j));
            prop_assert!((pa - pb).iter().all(|z| z.norm() < 1e-10));
        }
    }

    #[test]
    fn dense_propagation_keeps_interior_norm(k in 0.0f64..2.0, tau in 0.0f64..TAU, j in 0usize..15) {
        let b = BasisSpec::new(60, 1.0).unwrap();
        let u = build_floquet(&ModelParams::standard(k, tau, b).unwrap()).unwrap();
        let out = propagate(&u, &momentum_eigenstate(&b, 0).unwrap(), j).unwrap();
        prop_assert!((out.norm_sq() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn e2_composition_is_associative(a in e2(), b in e2(), c in e2()) {
        prop_assert!(close(e2_compose(a, e2_compose(b, c)), e2_compose(e2_compose(a, b), c), 1e-9));
        prop_assert!(close(e2_compose(E2Element::identity(), a), a, 1e-12));
    }

    #[test]
    fn e2_powers_add(g in e2(), i in 0u32..12, j in 0u32..12) {
        prop_assert!(close(e2_compose(e2_power(g, i), e2_power(g, j)), e2_power(g, i + j), 1e-8));
    }

    #[test]
    fn chirikov_map_is_reversible(theta in 0.0..TAU, p in -20.0f64..20.0, k in 0.0f64..10.0, t in 0.1f64..2.0) {
        let start = PhasePoint::new(theta, p);
        let mut pt = start;
        // few steps: roundoff grows like the Lyapunov factor
        for _ in 0..6 {
            pt = chirikov_step(pt, k, t);
        }
        for _ in 0..6 {
            pt = chirikov_step_inverse(pt, k, t);
        }
        let d = (pt.theta - start.theta).rem_euclid(TAU);
        prop_assert!(d.min(TAU - d) < 1e-8 && (pt.momentum - start.momentum).abs() < 1e-8);
    }

    #[test]
    fn csv_floats_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let mut t = Table::new("x", &["j", "v"]);
        t.push(vec![0.into(), x.into()]);
        let csv = t.to_csv();
        let field = csv.lines().nth(1).unwrap().split(',').nth(1).unwrap();
        prop_assert_eq!(field.parse::<f64>().unwrap().to_bits(), x.to_bits());
    }
}
