//! Quantum suppression of classical momentum diffusion.
//!
//! The quantum `<P²>` is propagated by split-step on a large basis, the
//! classical one is averaged over a Chirikov-map ensemble with the same `K`.

use floquet_lab::classical::ensemble_second_moment;
use floquet_lab::diagnostics::energy_growth;
use floquet_lab::floquet::ModelParams;
use floquet_lab::hilbert::{momentum_eigenstate, BasisSpec};

pub fn run_example() -> floquet_lab::Result<()> {
    let (k, hbar, tau) = (5.0, 1.0, 1.0);
    let basis = BasisSpec::new(256, hbar)?;
    let params = ModelParams::standard(k, tau, basis)?;
    let quantum = energy_growth(&params, &momentum_eigenstate(&basis, 0)?, 1000)?;
    let classical = ensemble_second_moment(k * hbar, tau / hbar, 10_000, 1, 1000)?;

    println!("   j   quantum <P^2>   classical <P^2>");
    for j in [0usize, 10, 50, 100, 200, 500, 1000] {
        println!("{j:>4}  {:>14.2}  {:>16.2}", quantum.values[j].re, classical.values[j].re);
    }
    let (qe, ql) = (quantum.slope(0, 100).unwrap(), quantum.slope(500, 1000).unwrap());
    let (ce, cl) = (classical.slope(0, 100).unwrap(), classical.slope(500, 1000).unwrap());
    println!("quantum slope   early {qe:.3}  late {ql:.3}  ratio {:.3}", ql / qe);
    println!("classical slope early {ce:.3}  late {cl:.3}  ratio {:.3}", cl / ce);
    println!("max edge weight {:.1e}", quantum.max_edge_weight);
    Ok(())
}

#[allow(dead_code)]
fn main() -> floquet_lab::Result<()> {
    run_example()
}
