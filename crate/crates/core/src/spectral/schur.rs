//! Complex Schur decomposition `A = Q T Q†`.
//!
//! Householder reduction to upper Hessenberg form followed by implicit
//! single-shift QR sweeps with Wilkinson shifts. For a normal matrix the
//! triangular factor is diagonal up to rounding, so `Q` holds orthonormal
//! eigenvectors.

use nalgebra::DMatrix;
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone)]
pub struct Schur {
    pub q: DMatrix<Complex64>,
    pub t: DMatrix<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoConvergence {
    pub iterations: usize,
}

pub fn schur(a: &DMatrix<Complex64>) -> Result<Schur, NoConvergence> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "schur needs a square matrix");
    let mut h = a.clone();
    let mut q = DMatrix::identity(n, n);
    hessenberg(&mut h, &mut q);
    qr_iterate(&mut h, &mut q)?;
    Ok(Schur { q, t: h })
}

fn hessenberg(h: &mut DMatrix<Complex64>, q: &mut DMatrix<Complex64>) {
    let n = h.nrows();
    if n < 3 {
        return;
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        let xnorm = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        for i in k + 1..n {
            v[i] = h[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for i in k + 1..n {
            v[i] /= vnorm;
        }
        // H ← (I − 2vv†) H
        for j in k..n {
            let s: Complex64 = (k + 1..n).map(|i| v[i].conj() * h[(i, j)]).sum();
            let s = s * 2.0;
            for i in k + 1..n {
                h[(i, j)] -= v[i] * s;
            }
        }
        // H ← H (I − 2vv†), Q ← Q (I − 2vv†)
        for m in [&mut *h, &mut *q] {
            for i in 0..n {
                let s: Complex64 = (k + 1..n).map(|j| m[(i, j)] * v[j]).sum();
                let s = s * 2.0;
                for j in k + 1..n {
                    m[(i, j)] -= s * v[j].conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}

/// Givens pair `(c, s)` with `[c s; −s̄ c] [a; b] = [r; 0]`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    if an == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

fn rotate_rows(h: &mut DMatrix<Complex64>, i: usize, c: f64, s: Complex64, cols: std::ops::Range<usize>) {
    for j in cols {
        let x = h[(i, j)];
        let y = h[(i + 1, j)];
        h[(i, j)] = x * c + s * y;
        h[(i + 1, j)] = -s.conj() * x + y * c;
    }
}

fn rotate_cols(m: &mut DMatrix<Complex64>, i: usize, c: f64, s: Complex64, rows: std::ops::Range<usize>) {
    for r in rows {
        let x = m[(r, i)];
        let y = m[(r, i + 1)];
        m[(r, i)] = x * c + y * s.conj();
        m[(r, i + 1)] = -x * s + y * c;
    }
}

fn l1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let den_plus = p + disc;
    let den_minus = p - disc;
    let den = if den_plus.norm() >= den_minus.norm() { den_plus } else { den_minus };
    if den.norm() == 0.0 {
        d
    } else {
        d - bc / den
    }
}

fn qr_iterate(h: &mut DMatrix<Complex64>, q: &mut DMatrix<Complex64>) -> Result<(), NoConvergence> {
    let n = h.nrows();
    if n < 2 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    let hnorm = h.iter().fold(0.0f64, |a, z| a.max(z.norm())).max(f64::MIN_POSITIVE);
    let max_iter = 30 * n.max(10);
    let mut total = 0;
    let mut hi = n - 1;
    let mut since_deflation = 0;
    while hi > 0 {
        // find the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = l1(h[(lo, lo - 1)]);
            let mut diag = l1(h[(lo, lo)]) + l1(h[(lo - 1, lo - 1)]);
            if diag == 0.0 {
                diag = hnorm;
            }
            if sub <= eps * diag {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > max_iter {
            return Err(NoConvergence { iterations: total });
        }
        let shift = if since_deflation % 11 == 0 {
            // exceptional shift breaks rare stagnation cycles
            h[(hi, hi)] + h[(hi, hi - 1)].norm() * 0.75
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        let (c, s) = givens(h[(lo, lo)] - shift, h[(lo + 1, lo)]);
        rotate_rows(h, lo, c, s, lo..n);
        rotate_cols(h, lo, c, s, 0..(lo + 3).min(hi + 1));
        rotate_cols(q, lo, c, s, 0..n);
        for k in lo + 1..hi {
            let (c, s) = givens(h[(k, k - 1)], h[(k + 1, k - 1)]);
            rotate_rows(h, k, c, s, k - 1..n);
            h[(k + 1, k - 1)] = ZERO;
            rotate_cols(h, k, c, s, 0..(k + 3).min(hi + 1));
            rotate_cols(q, k, c, s, 0..n);
        }
    }
    Ok(())
}
