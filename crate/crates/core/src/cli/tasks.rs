//! Task dispatch: each task turns a resolved config into tables.

use serde_json::{json, Map, Value};

use super::config::{EchoMethod, RunConfig, Task};
use super::output::Table;
use crate::analytic::{linear_oracle_checks, OracleCheck, ORACLE_TOLERANCE};
use crate::classical::ensemble_second_moment;
use crate::diagnostics::{
    energy_growth, loschmidt_echo_direct, loschmidt_echo_floquet, spectral_form_factor, wigner_from_eigensystem,
    DiagnosticSeries, ModeMomentum,
};
use crate::error::{Error, Result};
use crate::floquet::{build_floquet, ModelParams, RotorKind};
use crate::hilbert::momentum_eigenstate;
use crate::spectral::{diagonalize, FloquetEigensystem};

/// Tables plus everything the metadata block reports about them.
#[derive(Debug, Default)]
pub struct TaskOutput {
    pub tables: Vec<Table>,
    /// Per-series truncation and edge diagnostics.
    pub series: Vec<Value>,
    pub extra: Map<String, Value>,
    pub sidecars: Map<String, Value>,
    /// Names of oracle checks that missed their tolerance.
    pub failed_checks: Vec<String>,
}

impl TaskOutput {
    pub fn edge_contaminated(&self) -> bool {
        self.series.iter().any(|s| s["edge_contaminated"] == json!(true))
    }
}

fn series_meta(name: &str, s: &DiagnosticSeries) -> Value {
    json!({
        "name": name,
        "kind": s.kind,
        "method": s.method,
        "initial_state": s.initial_state,
        "dim": s.dim,
        "points": s.len(),
        "max_edge_weight": s.max_edge_weight,
        "truncated_at": s.truncated_at,
        "edge_contaminated": s.edge_contaminated(),
    })
}

fn real_table(name: &str, column: &'static str, s: &DiagnosticSeries) -> Table {
    let mut t = Table::new(name, &["j", column]);
    for (j, v) in s.times.iter().zip(&s.values) {
        t.push(vec![(*j).into(), v.re.into()]);
    }
    t
}

fn eigensystem(params: &ModelParams, out: &mut TaskOutput) -> Result<FloquetEigensystem> {
    let es = diagonalize(&build_floquet(params)?)?;
    out.extra.insert("diagonalization".into(), serde_json::to_value(es.report()).expect("report serializes"));
    Ok(es)
}

fn j_max(cfg: &RunConfig) -> usize {
    cfg.task.j_max.expect("validated by the parser")
}

fn classical_constants(cfg: &RunConfig) -> Result<(f64, f64)> {
    if cfg.model.kind != RotorKind::Standard {
        return Err(Error::InvalidParameter { name: "kind", reason: "the classical map needs the standard rotor".into() });
    }
    let hbar = cfg.basis.hbar_eff;
    let tau = cfg.model.tau_free.expect("standard rotor carries tau_free");
    Ok((cfg.model.k_kick * hbar, tau / hbar))
}

fn classical_series(cfg: &RunConfig, out: &mut TaskOutput) -> Result<DiagnosticSeries> {
    let (k, t) = classical_constants(cfg)?;
    out.extra.insert("classical_map".into(), json!({ "K": k, "T": t }));
    ensemble_second_moment(k, t, cfg.task.n_points, cfg.task.seed, j_max(cfg))
}

pub fn run_task(cfg: &RunConfig) -> Result<TaskOutput> {
    let params = cfg.model_params()?;
    let basis = *params.basis();
    let mut out = TaskOutput::default();
    match cfg.task.task {
        Task::Spectrum => {
            let es = eigensystem(&params, &mut out)?;
            let mut t = Table::new("spectrum", &["index", "mu_re", "mu_im", "epsilon"]);
            for (i, (mu, eps)) in es.eigenvalues().iter().zip(es.quasi_energies()).enumerate() {
                t.push(vec![(i as i64).into(), mu.re.into(), mu.im.into(), (*eps).into()]);
            }
            out.tables.push(t);
        }
        Task::Echo => {
            let psi = momentum_eigenstate(&basis, cfg.task.initial_n)?;
            let dk = cfg.task.delta_k.expect("validated by the parser");
            let s = match cfg.task.echo_method {
                EchoMethod::Direct => loschmidt_echo_direct(&params, dk, &psi, j_max(cfg))?,
                EchoMethod::Eigensystem => {
                    let es = eigensystem(&params, &mut out)?;
                    let esp = diagonalize(&build_floquet(&params.perturbed(dk)?)?)?;
                    loschmidt_echo_floquet(&es, &esp, &psi, j_max(cfg))?
                }
            };
            out.series.push(series_meta("echo", &s));
            out.tables.push(real_table("echo", "L", &s));
        }
        Task::Wigner => {
            let es = eigensystem(&params, &mut out)?;
            let psi = momentum_eigenstate(&basis, cfg.task.initial_n)?;
            let c = es.coefficients(&psi)?;
            let n_theta = cfg.task.n_theta.expect("resolved by the parser");
            let times = cfg.task.times.as_ref().expect("validated by the parser");
            let mut residues = Vec::new();
            let mut grid = None;
            for &j in times {
                let w = wigner_from_eigensystem(&es, &c, j as i64, n_theta)?;
                let mut t = Table::new(format!("wigner_j{j}"), &["theta", "p_l", "W"]);
                for (row, &p) in w.p_labels().iter().enumerate() {
                    for (col, &theta) in w.thetas().iter().enumerate() {
                        t.push(vec![theta.into(), p.into(), w.values()[(row, col)].into()]);
                    }
                }
                residues.push(w.imag_residue());
                grid.get_or_insert_with(|| (w.thetas().to_vec(), w.p_labels().to_vec()));
                out.tables.push(t);
            }
            let (thetas, p_labels) = grid.unwrap_or_default();
            out.sidecars.insert(
                "wigner_grid".into(),
                json!({
                    "n_theta": n_theta,
                    "thetas": thetas,
                    "p_labels": p_labels,
                    "times": times,
                    "imag_residue": residues,
                    "initial_state": format!("|{}>", cfg.task.initial_n),
                    "normalization": "W(theta, p_l) = (1/pi) sum_m psi(p_l+m) conj(psi(p_l-m)) exp(2 i m theta)",
                }),
            );
        }
        Task::Otoc => {
            let es = eigensystem(&params, &mut out)?;
            let mm = ModeMomentum::new(&es);
            let psi = momentum_eigenstate(&basis, cfg.task.initial_n)?;
            let mut t = Table::new("otoc", &["j", "C"]);
            let mut worst: f64 = 0.0;
            for j in 0..=j_max(cfg) as i64 {
                let v = mm.otoc(&psi, j)?;
                worst = worst.max(v.elements.map_or(0.0, |e| (e - v.value).abs()));
                t.push(vec![j.into(), v.value.into()]);
            }
            out.extra.insert("otoc_form_deviation".into(), json!(worst));
            out.tables.push(t);
        }
        Task::Autocorr => {
            let es = eigensystem(&params, &mut out)?;
            let mm = ModeMomentum::new(&es);
            let mut t = Table::new("autocorr", &["j", "A_re", "A_im"]);
            for j in 0..=j_max(cfg) as i64 {
                let a = mm.autocorr_complex(j)?;
                t.push(vec![j.into(), a.re.into(), a.im.into()]);
            }
            out.tables.push(t);
        }
        Task::Sff => {
            let es = eigensystem(&params, &mut out)?;
            let mut t = Table::new("sff", &["j", "S"]);
            for j in 0..=j_max(cfg) as i64 {
                t.push(vec![j.into(), spectral_form_factor(&es, j).into()]);
            }
            out.tables.push(t);
        }
        Task::Localization => {
            let psi = momentum_eigenstate(&basis, cfg.task.initial_n)?;
            let q = energy_growth(&params, &psi, j_max(cfg))?;
            let c = classical_series(cfg, &mut out)?;
            out.series.push(series_meta("localization_quantum", &q));
            out.series.push(series_meta("localization_classical", &c));
            out.tables.push(real_table("localization_quantum", "P2", &q));
            out.tables.push(real_table("localization_classical", "P2", &c));
        }
        Task::Classical => {
            let c = classical_series(cfg, &mut out)?;
            out.series.push(series_meta("classical", &c));
            out.tables.push(real_table("classical", "P2", &c));
        }
        Task::OracleCheck => {
            let checks = oracle_checks(cfg, &params, &mut out)?;
            let mut t = Table::new("oracle_check", &["check", "max_deviation", "tolerance", "passed"]);
            for c in &checks {
                t.push(vec![c.name.into(), c.max_deviation.into(), c.tolerance.into(), c.passed().into()]);
                if !c.passed() {
                    out.failed_checks.push(c.name.to_string());
                }
            }
            out.tables.push(t);
        }
    }
    Ok(out)
}

/// Linear rotor: closed forms against numerics. Other kinds: the two echo
/// routes and the two OTOC forms against each other, and the eigensystem
/// residual.
fn oracle_checks(cfg: &RunConfig, params: &ModelParams, out: &mut TaskOutput) -> Result<Vec<OracleCheck>> {
    let j_max = j_max(cfg);
    let dk = cfg.task.delta_k.expect("resolved by the parser");
    if params.kind() == RotorKind::Linear {
        let n_theta = cfg.task.n_theta.expect("resolved by the parser");
        return linear_oracle_checks(params, j_max as u32, dk, cfg.task.initial_n, n_theta);
    }
    let check = |name, max_deviation| OracleCheck { name, max_deviation, tolerance: ORACLE_TOLERANCE, j_max: j_max as u32 };
    let es = eigensystem(params, out)?;
    let esp = diagonalize(&build_floquet(&params.perturbed(dk)?)?)?;
    let psi = momentum_eigenstate(params.basis(), cfg.task.initial_n)?;
    let direct = loschmidt_echo_direct(params, dk, &psi, j_max)?;
    let spectral = loschmidt_echo_floquet(&es, &esp, &psi, j_max)?;
    out.series.push(series_meta("echo_direct", &direct));
    let echo_dev = direct.values.iter().zip(&spectral.values).fold(0.0f64, |a, (x, y)| a.max((x.re - y.re).abs()));
    let mm = ModeMomentum::new(&es);
    let mut otoc_dev: f64 = 0.0;
    for j in 0..=j_max as i64 {
        let v = match mm.otoc(&psi, j) {
            Ok(v) => (v.value - v.elements.expect("momentum eigenstate")).abs(),
            Err(Error::OtocMismatch { deviation, .. }) => deviation,
            Err(e) => return Err(e),
        };
        otoc_dev = otoc_dev.max(v);
    }
    Ok(vec![
        check("echo_routes", echo_dev),
        check("otoc_forms", otoc_dev),
        check("eigensystem_residual", es.residual()),
    ])
}
