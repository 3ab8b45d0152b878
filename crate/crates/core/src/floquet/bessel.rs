//! Integer-order Bessel functions of the first kind.
//!
//! Small arguments use the power series directly. Everything else goes
//! through Miller's backward recurrence, normalized with
//! `J_0 + 2 Σ_k J_{2k} = 1`, which stays stable for the high orders needed by
//! the Floquet band.

use crate::error::{Error, Result};

pub const MAX_ORDER: i64 = 1_000_000;
pub const MAX_ARG: f64 = 1e4;

const SERIES_LIMIT: f64 = 2.0;
const RESCALE_AT: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// `J_order(x)`.
pub fn bessel_j(order: i64, x: f64) -> Result<f64> {
    check_envelope(order, x)?;
    let n = order.unsigned_abs() as usize;
    let mut value = j_nonneg(n, x.abs());
    // J_{-n} = (-1)^n J_n and J_n(-x) = (-1)^n J_n(x).
    let flips = (order < 0) as usize + (x < 0.0) as usize;
    if n % 2 == 1 && flips == 1 {
        value = -value;
    }
    Ok(value)
}

/// `[J_0(x), J_1(x), …, J_max_order(x)]` from a single recurrence pass.
pub fn bessel_j_sequence(max_order: usize, x: f64) -> Result<Vec<f64>> {
    check_envelope(max_order as i64, x)?;
    let ax = x.abs();
    let mut out = if ax == 0.0 {
        let mut v = vec![0.0; max_order + 1];
        v[0] = 1.0;
        v
    } else if ax <= SERIES_LIMIT {
        (0..=max_order).map(|n| series(n, ax)).collect()
    } else {
        miller(max_order, ax)
    };
    if x < 0.0 {
        for v in out.iter_mut().skip(1).step_by(2) {
            *v = -*v;
        }
    }
    Ok(out)
}

/// Lookup of `J_q(x)` for `|q| ≤ max_order` with the reflection rule applied.
#[derive(Debug, Clone)]
pub struct BesselTable {
    values: Vec<f64>,
}

impl BesselTable {
    pub fn new(max_order: usize, x: f64) -> Result<Self> {
        Ok(Self { values: bessel_j_sequence(max_order, x)? })
    }

    pub fn get(&self, q: i64) -> f64 {
        let n = q.unsigned_abs() as usize;
        let v = self.values.get(n).copied().unwrap_or(0.0);
        if q < 0 && n % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

fn check_envelope(order: i64, x: f64) -> Result<()> {
    if order.abs() > MAX_ORDER || !(x.abs() <= MAX_ARG) {
        return Err(Error::BesselEnvelope { order, x });
    }
    Ok(())
}

fn j_nonneg(n: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_LIMIT {
        return series(n, x);
    }
    miller_single(n, x)
}

/// Power series `Σ_s (-1)^s (x/2)^{2s+n} / (s! (s+n)!)`, used for `x ≤ 2`.
fn series(n: usize, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut lead = 1.0;
    for k in 1..=n {
        lead *= half / k as f64;
        if lead == 0.0 {
            return 0.0;
        }
    }
    let q = half * half;
    let mut term = lead;
    let mut sum = lead;
    for s in 1.. {
        term *= -q / (s as f64 * (n + s) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn start_order(n: usize, x: f64) -> usize {
    let top = (n as f64).max(x);
    let m = top + (160.0 * top).sqrt() + 30.0;
    // even start keeps the normalization bookkeeping simple
    let m = m.ceil() as usize;
    m + (m % 2)
}

fn miller(max_order: usize, x: f64) -> Vec<f64> {
    let m = start_order(max_order, x);
    let mut out = vec![0.0; max_order + 1];
    let mut above = 0.0; // J_{k+1}
    let mut cur = 1e-30; // J_k, k = m
    let mut norm = 0.0;
    for k in (1..=m).rev() {
        let below = 2.0 * k as f64 / x * cur - above;
        above = cur;
        cur = below;
        let order = k - 1;
        if order <= max_order {
            out[order] = cur;
        }
        if order % 2 == 0 {
            norm += if order == 0 { cur } else { 2.0 * cur };
        }
        if cur.abs() > RESCALE_AT {
            cur *= RESCALE_BY;
            above *= RESCALE_BY;
            norm *= RESCALE_BY;
            for v in out.iter_mut().skip(order) {
                *v *= RESCALE_BY;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

fn miller_single(n: usize, x: f64) -> f64 {
    let m = start_order(n, x);
    let mut above = 0.0;
    let mut cur = 1e-30;
    let mut norm = 0.0;
    let mut value = 0.0;
    for k in (1..=m).rev() {
        let below = 2.0 * k as f64 / x * cur - above;
        above = cur;
        cur = below;
        let order = k - 1;
        if order == n {
            value = cur;
        }
        if order % 2 == 0 {
            norm += if order == 0 { cur } else { 2.0 * cur };
        }
        if cur.abs() > RESCALE_AT {
            cur *= RESCALE_BY;
            above *= RESCALE_BY;
            norm *= RESCALE_BY;
            value *= RESCALE_BY;
        }
    }
    value / norm
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trapezoid rule on `(1/2π)∫ cos(nτ − x sin τ) dτ`; exact up to
    /// `J_{n±M}(x)` aliasing for `M` nodes.
    fn quadrature_oracle(n: i64, x: f64, nodes: usize) -> f64 {
        let h = std::f64::consts::TAU / nodes as f64;
        (0..nodes)
            .map(|k| {
                let t = k as f64 * h;
                (n as f64 * t - x * t.sin()).cos()
            })
            .sum::<f64>()
            / nodes as f64
    }

    /// Plain power series, summed until terms stop changing the total.
    fn series_oracle(n: u32, x: f64) -> f64 {
        let mut sum = 0.0;
        let mut fact_s = 1.0;
        let mut fact_sn: f64 = (1..=n).map(f64::from).product();
        for s in 0..200u32 {
            if s > 0 {
                fact_s *= f64::from(s);
                fact_sn *= f64::from(s + n);
            }
            let term = (-1f64).powi(s as i32) * (x / 2.0).powi((2 * s + n) as i32) / (fact_s * fact_sn);
            let next = sum + term;
            if next == sum && s > 2 {
                break;
            }
            sum = next;
        }
        sum
    }

    #[test]
    fn trivial_values() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn j1_of_one_against_series() {
        let oracle = series_oracle(1, 1.0);
        assert!((oracle - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((bessel_j(1, 1.0).unwrap() - oracle).abs() < 1e-15);
    }

    #[test]
    fn moderate_arguments_against_series() {
        for &x in &[0.3, 1.7, 2.5, 4.0, 6.5] {
            for n in 0..12 {
                let got = bessel_j(n as i64, x).unwrap();
                let want = series_oracle(n, x);
                assert!((got - want).abs() < 1e-12, "J_{n}({x}) = {got}, series {want}");
            }
        }
    }

    #[test]
    fn large_arguments_against_quadrature() {
        for &(n, x) in &[(0i64, 50.0), (7, 123.4), (300, 250.0), (5, 1000.0), (40, 9999.0), (1500, 1400.0)] {
            let got = bessel_j(n, x).unwrap();
            let want = quadrature_oracle(n, x, 32768);
            assert!((got - want).abs() < 1e-12, "J_{n}({x}) = {got}, quadrature {want}");
        }
    }

    #[test]
    fn reflection_rules() {
        for &x in &[0.7, 3.3, 17.0] {
            for n in 1..6i64 {
                let j = bessel_j(n, x).unwrap();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(bessel_j(-n, x).unwrap(), sign * j);
                assert_eq!(bessel_j(n, -x).unwrap(), sign * j);
                assert_eq!(bessel_j(-n, -x).unwrap(), j);
            }
        }
    }

    #[test]
    fn sequence_matches_single_and_sums_to_one() {
        for &x in &[0.5, 2.0, 5.0, 37.5] {
            let seq = bessel_j_sequence(120, x).unwrap();
            for (n, v) in seq.iter().enumerate().step_by(7) {
                assert!((v - bessel_j(n as i64, x).unwrap()).abs() < 1e-14);
            }
            let s: f64 = seq[0] * seq[0] + 2.0 * seq[1..].iter().map(|v| v * v).sum::<f64>();
            assert!((s - 1.0).abs() < 1e-13, "x = {x}: sum {s}");
        }
    }

    #[test]
    fn huge_order_underflows_cleanly() {
        assert_eq!(bessel_j(1_000_000, 3.0).unwrap(), 0.0);
        assert_eq!(bessel_j(900, 1.5).unwrap(), 0.0);
        let v = bessel_j(60, 10.0).unwrap();
        assert!(v > 0.0 && v < 1e-30);
    }

    #[test]
    fn envelope() {
        assert!(bessel_j(1_000_001, 1.0).is_err());
        assert!(bessel_j(1, 1.0e4 + 1.0).is_err());
        assert!(bessel_j(1, f64::NAN).is_err());
    }

    #[test]
    fn table_lookup() {
        let t = BesselTable::new(10, 2.0).unwrap();
        assert_eq!(t.get(-3), -t.get(3));
        assert_eq!(t.get(-4), t.get(4));
        assert_eq!(t.get(50), 0.0);
    }
}
