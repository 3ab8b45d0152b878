//! Eigenvalue averages of Hermitian Toeplitz sections and their Szegő limit.

use std::f64::consts::TAU;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::Serialize;

use super::cayley::FourierSymbol;
use super::quadrature::integrate_adaptive;
use crate::error::{Error, Result};

pub const MAX_SECTION: usize = 4096;
const LIMIT_TOLERANCE: f64 = 1e-10;

/// Test functions applied to Toeplitz eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SzegoFn {
    Identity,
    Square,
    Abs,
    Cos,
}

impl SzegoFn {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            SzegoFn::Identity => x,
            SzegoFn::Square => x * x,
            SzegoFn::Abs => x.abs(),
            SzegoFn::Cos => x.cos(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SzegoFn::Identity => "x",
            SzegoFn::Square => "x^2",
            SzegoFn::Abs => "abs",
            SzegoFn::Cos => "cos",
        }
    }
}

impl FromStr for SzegoFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "identity" => Ok(SzegoFn::Identity),
            "x^2" | "x2" | "square" => Ok(SzegoFn::Square),
            "abs" | "|x|" => Ok(SzegoFn::Abs),
            "cos" => Ok(SzegoFn::Cos),
            other => Err(Error::InvalidParameter {
                name: "szego_fn",
                reason: format!("`{other}` is not one of x, x^2, abs, cos"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SzegoAverage {
    /// `(1/n) Σ F(λ_k)` over the eigenvalues of the `n×n` section.
    pub finite_avg: f64,
    /// `(1/2π) ∫ F(f(θ)) dθ`.
    pub limit: f64,
}

pub fn szego_average(symbol: &FourierSymbol, f: SzegoFn, n: usize) -> Result<SzegoAverage> {
    if n == 0 || n > MAX_SECTION {
        return Err(Error::InvalidParameter { name: "n", reason: format!("{n} outside 1..={MAX_SECTION}") });
    }
    symbol.require_hermitian()?;
    let section = symbol.toeplitz_section(n);
    let eigenvalues = if symbol.coeffs().values().all(|c| c.im == 0.0) {
        DMatrix::from_fn(n, n, |i, j| section[(i, j)].re).symmetric_eigenvalues()
    } else {
        section.symmetric_eigenvalues()
    };
    let finite_avg = eigenvalues.iter().map(|&x| f.apply(x)).sum::<f64>() / n as f64;
    let limit = integrate_adaptive(|t| f.apply(symbol.evaluate(t).re), 0.0, TAU, LIMIT_TOLERANCE) / TAU;
    Ok(SzegoAverage { finite_avg, limit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn cosine_symbol() {
        let s = FourierSymbol::cosine_series(0.0, &[(1, 1.0)]);
        let a = szego_average(&s, SzegoFn::Identity, 64).unwrap();
        assert!(a.finite_avg.abs() < 1e-12 && a.limit.abs() < 1e-12);
        let a = szego_average(&s, SzegoFn::Square, 64).unwrap();
        assert!((a.limit - 0.5).abs() < 1e-10);
        // (1/n) tr T² = (n-1)/(2n) for the tridiagonal section
        assert!((a.finite_avg - 63.0 / 128.0).abs() < 1e-12);
    }

    #[test]
    fn constant_symbol_is_exact() {
        let s = FourierSymbol::from_pairs(&[(0, Complex64::new(0.7, 0.0))]);
        for f in [SzegoFn::Identity, SzegoFn::Square, SzegoFn::Abs, SzegoFn::Cos] {
            let a = szego_average(&s, f, 17).unwrap();
            assert!((a.finite_avg - f.apply(0.7)).abs() < 1e-14);
            assert!((a.limit - f.apply(0.7)).abs() < 1e-14);
        }
    }

    #[test]
    fn convergence_improves_with_n() {
        let s = FourierSymbol::cosine_series(0.2, &[(1, 1.0), (2, -0.4)]);
        for f in [SzegoFn::Square, SzegoFn::Abs, SzegoFn::Cos] {
            let errs: Vec<f64> = [16, 64, 256]
                .iter()
                .map(|&n| {
                    let a = szego_average(&s, f, n).unwrap();
                    (a.finite_avg - a.limit).abs()
                })
                .collect();
            assert!(errs[2] < errs[0], "{f:?}: {errs:?}");
        }
    }

    #[test]
    fn catalog_parsing() {
        assert_eq!("x^2".parse::<SzegoFn>().unwrap(), SzegoFn::Square);
        assert!("exp".parse::<SzegoFn>().is_err());
        let bad = FourierSymbol::from_pairs(&[(1, Complex64::new(1.0, 0.0))]);
        assert!(szego_average(&bad, SzegoFn::Identity, 4).is_err());
    }
}
