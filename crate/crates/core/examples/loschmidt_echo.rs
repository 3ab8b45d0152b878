//! Loschmidt echo of a momentum eigenstate, two ways.

use floquet_lab::diagnostics::{echo_single_kick, loschmidt_echo_direct, loschmidt_echo_floquet};
use floquet_lab::floquet::{build_floquet, ModelParams};
use floquet_lab::hilbert::{momentum_eigenstate, BasisSpec};
use floquet_lab::spectral::diagonalize;

pub fn run_example() -> floquet_lab::Result<()> {
    let (k, dk) = (2.0, 0.01);
    let basis = BasisSpec::new(100, 1.0)?;
    let params = ModelParams::standard(k, 1.0, basis)?;
    let psi = momentum_eigenstate(&basis, 0)?;

    // propagate both models
    let direct = loschmidt_echo_direct(&params, dk, &psi, 50)?;

    // or expand in Floquet modes once and reuse
    let es = diagonalize(&build_floquet(&params)?)?;
    let esp = diagonalize(&build_floquet(&params.perturbed(dk)?)?)?;
    let spectral = loschmidt_echo_floquet(&es, &esp, &psi, 50)?;

    for j in [0usize, 1, 10, 25, 50] {
        println!("j = {j:>2}  L = {:.12}  (eigen {:.12})", direct.values[j].re, spectral.values[j].re);
    }
    let worst = direct.values.iter().zip(&spectral.values).map(|(a, b)| (a.re - b.re).abs()).fold(0.0, f64::max);
    println!("max route gap {worst:.1e}, truncated at {:?}", direct.truncated_at);
    println!("one kick, closed form: {:.12}", echo_single_kick(0, k, k + dk, &basis)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> floquet_lab::Result<()> {
    run_example()
}
