//! Momentum autocorrelation and spectral form factor.

use floquet_lab::diagnostics::{spectral_form_factor, ModeMomentum};
use floquet_lab::floquet::{build_floquet, ModelParams};
use floquet_lab::hilbert::BasisSpec;
use floquet_lab::spectral::diagonalize;

pub fn run_example() -> floquet_lab::Result<()> {
    let basis = BasisSpec::new(40, 1.0)?;
    let es = diagonalize(&build_floquet(&ModelParams::standard(5.0, 1.0, basis)?)?)?;
    let mm = ModeMomentum::new(&es);
    let dim = es.dim() as f64;

    println!("A_0 = Tr P^2 = {:.1}", mm.autocorr(0)?);
    for j in [1i64, 2, 5, 10, 50, 200] {
        let a = mm.autocorr(j)?;
        let s = spectral_form_factor(&es, j);
        println!("j = {j:>3}  A_j = {a:>12.4}  S(j)/dim = {:.4}", s / dim);
    }
    // time average of S approaches dim for a nondegenerate spectrum
    let late: f64 = (1000..3000).map(|j| spectral_form_factor(&es, j)).sum::<f64>() / 2000.0;
    println!("late-time <S>/dim = {:.3}", late / dim);
    Ok(())
}

#[allow(dead_code)]
fn main() -> floquet_lab::Result<()> {
    run_example()
}
