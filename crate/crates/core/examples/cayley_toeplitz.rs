//! Hermitian Toeplitz form of the Floquet problem and Szegő averages.

use floquet_lab::floquet::{default_grid_len, KickProfile, ModelParams};
use floquet_lab::hilbert::BasisSpec;
use floquet_lab::spectral::{
    cayley_floquet, diagonalize, hermitian_scan, szego_average, FourierSymbol, SzegoFn, ToeplitzSystem,
};

pub fn run_example() -> floquet_lab::Result<()> {
    // Lloyd-type kick: tan(V/2) is a trigonometric polynomial
    let basis = BasisSpec::new(5, 1.0)?;
    let profile = KickProfile::lloyd(1.0, 0.3, default_grid_len(basis.dim()))?;
    let params = ModelParams::generic(profile, 1.0, basis)?;
    let sys = ToeplitzSystem::from_model(&params)?;
    println!("f_0 = {:.6}, f_1 = {:.6}", sys.symbol().get(0), sys.symbol().get(1));

    let scan = hermitian_scan(&sys, &basis)?;
    let es = diagonalize(&cayley_floquet(&params)?)?;
    println!("{} roots from {} inertia counts", scan.roots.len(), scan.evaluations);
    for (lambda, eps) in scan.roots.iter().zip(es.quasi_energies()) {
        println!("lambda {lambda:.9}  eigenphase {eps:.9}");
    }

    let cosine = FourierSymbol::cosine_series(0.0, &[(1, 1.0)]);
    for f in [SzegoFn::Identity, SzegoFn::Square, SzegoFn::Abs] {
        for n in [16, 128, 512] {
            let s = szego_average(&cosine, f, n)?;
            println!("F = {:<4} n = {n:>3}  finite {:.6}  limit {:.6}", f.name(), s.finite_avg, s.limit);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> floquet_lab::Result<()> {
    run_example()
}
