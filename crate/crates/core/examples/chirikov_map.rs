//! Classical standard map: single orbits and ensemble diffusion.

use floquet_lab::classical::{chirikov_step, ensemble_second_moment, PhasePoint};

pub fn run_example() -> floquet_lab::Result<()> {
    let mut pt = PhasePoint::new(0.5, 0.2);
    for j in 1..=5 {
        pt = chirikov_step(pt, 0.9, 1.0);
        println!("K = 0.9  j = {j}  theta {:.6}  P {:.6}", pt.theta, pt.momentum);
    }

    for k in [0.5, 1.0, 5.0, 10.0] {
        let s = ensemble_second_moment(k, 1.0, 5_000, 3, 400)?;
        // quasilinear estimate for large K
        println!("K = {k:>4}  diffusion slope {:.3}  K^2/4 = {:.3}", s.slope(100, 400).unwrap(), k * k / 4.0);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> floquet_lab::Result<()> {
    run_example()
}
