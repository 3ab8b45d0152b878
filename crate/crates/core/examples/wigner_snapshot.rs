//! Wigner function on the cylinder after a few kicks.

use floquet_lab::diagnostics::{wigner, wigner_from_eigensystem};
use floquet_lab::floquet::{build_floquet, ModelParams};
use floquet_lab::hilbert::{momentum_eigenstate, BasisSpec};
use floquet_lab::spectral::diagonalize;

pub fn run_example() -> floquet_lab::Result<()> {
    let basis = BasisSpec::new(30, 1.0)?;
    let params = ModelParams::standard(1.5, 1.0, basis)?;
    let es = diagonalize(&build_floquet(&params)?)?;
    let psi = momentum_eigenstate(&basis, 0)?;
    let c = es.coefficients(&psi)?;
    let n_theta = 2 * basis.dim();

    println!("initial state is flat in theta: W(0, 0) = {:.6}", wigner(&psi, n_theta)?.value(0, 0).unwrap());
    for j in [1i64, 5, 20] {
        let w = wigner_from_eigensystem(&es, &c, j, n_theta)?;
        let cell = w.thetas()[1] - w.thetas()[0];
        let negative: f64 = w.values().iter().filter(|&&v| v < 0.0).map(|v| -v * cell).sum();
        let total: f64 = w.p_labels().iter().map(|&p| w.marginal(p).unwrap()).sum();
        println!(
            "j = {j:>2}  min W {:+.4}  max W {:+.4}  negative volume {:.4}  sum of marginals {:.12}  residue {:.1e}",
            w.values().min(),
            w.values().max(),
            negative,
            total,
            w.imag_residue()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> floquet_lab::Result<()> {
    run_example()
}
