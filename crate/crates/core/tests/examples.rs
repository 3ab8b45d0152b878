//! Every example runs to completion.

#[path = "../examples/quasi_energy_spectrum.rs"]
mod quasi_energy_spectrum;
#[path = "../examples/loschmidt_echo.rs"]
mod loschmidt_echo;
#[path = "../examples/wigner_snapshot.rs"]
mod wigner_snapshot;
#[path = "../examples/otoc_growth.rs"]
mod otoc_growth;
#[path = "../examples/spectral_statistics.rs"]
mod spectral_statistics;
#[path = "../examples/dynamical_localization.rs"]
mod dynamical_localization;
#[path = "../examples/linear_rotor_oracle.rs"]
mod linear_rotor_oracle;
#[path = "../examples/cayley_toeplitz.rs"]
mod cayley_toeplitz;
#[path = "../examples/chirikov_map.rs"]
mod chirikov_map;

#[test]
fn examples_run() {
    quasi_energy_spectrum::run_example().unwrap();
    loschmidt_echo::run_example().unwrap();
    wigner_snapshot::run_example().unwrap();
    otoc_growth::run_example().unwrap();
    spectral_statistics::run_example().unwrap();
    dynamical_localization::run_example().unwrap();
    linear_rotor_oracle::run_example().unwrap();
    cayley_toeplitz::run_example().unwrap();
    chirikov_map::run_example().unwrap();
}
