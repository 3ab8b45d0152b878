//! Out-of-time-order momentum correlator from Floquet eigendata.

use floquet_lab::diagnostics::ModeMomentum;
use floquet_lab::floquet::{build_floquet, ModelParams};
use floquet_lab::hilbert::{momentum_eigenstate, BasisSpec};
use floquet_lab::spectral::diagonalize;

pub fn run_example() -> floquet_lab::Result<()> {
    let basis = BasisSpec::new(25, 1.0)?;
    let es = diagonalize(&build_floquet(&ModelParams::standard(2.5, 1.0, basis)?)?)?;
    let mm = ModeMomentum::new(&es);
    let psi = momentum_eigenstate(&basis, 0)?;

    println!("<1|P_0|1> = {:.3}", mm.heisenberg_element(1, 1, 0)?.re);
    for j in 0..=10 {
        let c = mm.otoc(&psi, j)?;
        // for |n> both forms are available and agree
        println!("j = {j:>2}  C = {:>12.6}  matrix-element form {:>12.6}", c.value, c.elements.unwrap_or(f64::NAN));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> floquet_lab::Result<()> {
    run_example()
}
