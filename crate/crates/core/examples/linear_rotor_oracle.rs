//! The linear kicked rotor as a representation of the planar Euclidean group.

use floquet_lab::analytic::{
    e2_power, linear_echo_closed_form, linear_oracle_checks, linear_propagator_closed_form, E2Element,
};
use floquet_lab::floquet::ModelParams;
use floquet_lab::hilbert::BasisSpec;

pub fn run_example() -> floquet_lab::Result<()> {
    let (k, phi) = (1.5, 0.7);
    let basis = BasisSpec::new(60, 1.0)?;
    let params = ModelParams::linear(k, phi, basis)?;

    let g = E2Element::linear_kick(&params)?;
    let g10 = e2_power(g, 10);
    println!("one period: rot {:.3}, |a| {:.3}, dir {:.3}", g.rot(), g.trans_mag(), g.trans_dir());
    println!("ten periods: rot {:.3}, |a| {:.3}, dir {:.3}", g10.rot(), g10.trans_mag(), g10.trans_dir());

    let u10 = linear_propagator_closed_form(&params, 10)?;
    println!("U_10(0,0) = {:.10}", u10.matrix.entry(0, 0)?);

    for j in [1u32, 5, 9] {
        println!("echo j = {j}: {:.10}", linear_echo_closed_form(0.3, phi, j)?);
    }
    for c in linear_oracle_checks(&params, 20, 0.3, 0, 2 * basis.dim())? {
        println!("{:<10} max deviation {:.1e}  passed {}", c.name, c.max_deviation, c.passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> floquet_lab::Result<()> {
    run_example()
}
