//! `spectrum`, `decohere` and `sweep` pipelines. Each returns a [`Bundle`]
//! so that nothing touches the disk until every computation succeeded.

use std::f64::consts::E;

use rayon::prelude::*;
use ringdec_core::decoherence::{
    auto_window, build_ensemble, decoherence_bessel, decoherence_erfi, decoherence_exact,
    first_decay_time, r_ratio, regime, uniform_times, DecoherenceTrace, Method, RegimeDiagnostics,
};
use ringdec_core::spectrum::{assemble_thin_spectrum, linearize, LinearizedCoeffs, ThinSpectrum};
use ringdec_core::{ModeTable, RingParams, SolverConfig, HBAR};
use serde_json::{json, Value};

use crate::config::{Format, RunConfig, SweepAxis, SweepSpec, Window};
use crate::error::Result;
use crate::output::{Bundle, Cell, Table};

/// Threshold of the reported first decay time.
pub const DECAY_THRESHOLD: f64 = 1.0 / E;

pub fn spectrum_table(spec: &ThinSpectrum, n_max: i64) -> Table {
    let unit = HBAR * spec.omega(1);
    let mut t = Table::new(&[
        "n",
        "alpha",
        "eps_joule",
        "E_joule",
        "eps_hbar_omega1",
        "E_hbar_omega1",
    ]);
    for n in -n_max..=n_max {
        for alpha in 0..=spec.alpha_max() {
            let eps = spec.eps(n, alpha);
            let e = spec.energy(n, alpha);
            t.push(vec![
                n.into(),
                alpha.into(),
                eps.into(),
                e.into(),
                (eps / unit).into(),
                (e / unit).into(),
            ]);
        }
    }
    t
}

pub fn modes_table(params: &RingParams) -> Table {
    let modes = ModeTable::new(params);
    let mut t = Table::new(&["k", "omega_rad_s", "q_per_m", "l_m", "degenerate_flag"]);
    for k in 1..=modes.n_modes() {
        t.push(vec![
            k.into(),
            modes.omega(k).into(),
            modes.wave_vector(k, 1).into(),
            modes.period(k).into(),
            i64::from(modes.is_degenerate(k)).into(),
        ]);
    }
    t
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Bundle> {
    let spec = assemble_thin_spectrum(&cfg.params, cfg.n_max, cfg.alpha_max, &cfg.solver)?;
    let mut out = Bundle::new();
    out.table(
        "thin_spectrum",
        &spectrum_table(&spec, cfg.n_max),
        cfg.output.format,
    );
    out.table("modes", &modes_table(&cfg.params), cfg.output.format);
    Ok(out)
}

/// Everything one decoherence run produces.
#[derive(Debug, Clone)]
pub struct DecoherenceRun {
    pub params: RingParams,
    pub coeffs: LinearizedCoeffs,
    pub regime: RegimeDiagnostics,
    pub n_trunc: i64,
    pub traces: Vec<DecoherenceTrace>,
    /// First `1/e` crossing of the exact trace, or of the first trace when
    /// the exact one was not requested.
    pub first_decay_time: f64,
}

pub fn run_decoherence(
    params: &RingParams,
    solver: &SolverConfig,
    window: Window,
    points: usize,
    methods: &[Method],
) -> Result<DecoherenceRun> {
    let spec = assemble_thin_spectrum(params, 1, 1, solver)?;
    let coeffs = linearize(&spec)?;
    let diag = regime(params, &coeffs, solver.gamma_threshold);
    if methods.contains(&Method::Erfi) && diag.tau.is_none() {
        return Err(ringdec_core::Error::InvalidParameter {
            field: "delta_g",
            reason: format!("erfi needs Δg ≠ 0, got {:e}", coeffs.delta_g),
        }
        .into());
    }
    let t_max = match window {
        Window::Fixed(t) => t,
        Window::Auto => auto_window(params, &coeffs)?,
    };
    let times = uniform_times(t_max, points)?;
    let ens = build_ensemble(&spec, solver)?;
    let mut traces = Vec::with_capacity(methods.len());
    for &m in methods {
        traces.push(match m {
            Method::Exact => decoherence_exact(&ens, &spec, &times)?,
            Method::Bessel => {
                decoherence_bessel(&coeffs, params, &times, None, solver.gamma_threshold)?
            }
            Method::Erfi => decoherence_erfi(&coeffs, params, &times)?,
        });
    }
    let lead = traces
        .iter()
        .find(|t| t.method == Method::Exact)
        .or_else(|| traces.first())
        .expect("at least one method");
    let first_decay_time = first_decay_time(lead, DECAY_THRESHOLD)?;
    Ok(DecoherenceRun {
        params: *params,
        coeffs,
        regime: diag,
        n_trunc: ens.n_trunc,
        traces,
        first_decay_time,
    })
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

pub fn diagnostics_json(run: &DecoherenceRun) -> Value {
    let lead = run
        .traces
        .iter()
        .find(|t| t.method == Method::Exact)
        .or_else(|| run.traces.first())
        .map(|t| t.method.name());
    let p = &run.params;
    json!({
        "n_fwhm": num(run.regime.n_fwhm),
        "r": num(run.regime.r),
        "eta": num(run.regime.eta),
        "gamma_cutoff": run.regime.gamma_cutoff,
        "tau_s": opt(run.regime.tau),
        "tau_spon_s": opt(run.regime.tau_spon),
        "g": num(run.coeffs.g),
        "delta_e_prime_joule": num(run.coeffs.delta_e_prime),
        "delta_g": num(run.coeffs.delta_g),
        "first_decay_time_s": num(run.first_decay_time),
        "first_decay_method": lead,
        "n_trunc": run.n_trunc,
        "quadratic_fit_poor": run.coeffs.quadratic_fit_poor,
        "params": {
            "N": p.n(),
            "mass_kg": num(p.mass()),
            "kappa_N_per_m": num(p.kappa()),
            "R_m": num(p.radius()),
            "T_K": num(p.temperature()),
        },
    })
}

pub fn trace_table(trace: &DecoherenceTrace) -> Table {
    let mut t = Table::new(&["t_s", "F"]);
    for (&ti, &fi) in trace.t.iter().zip(&trace.f) {
        t.push(vec![ti.into(), fi.into()]);
    }
    t
}

pub fn decoherence_bundle(run: &DecoherenceRun, format: Format) -> Bundle {
    let mut out = Bundle::new();
    for tr in &run.traces {
        out.table(&format!("trace_{}", tr.method), &trace_table(tr), format);
    }
    out.json("diagnostics.json", &diagnostics_json(run));
    out
}

pub fn cmd_decohere(cfg: &RunConfig) -> Result<Bundle> {
    let run = run_decoherence(
        &cfg.params,
        &cfg.solver,
        cfg.times.window,
        cfg.times.points,
        &cfg.methods,
    )?;
    Ok(decoherence_bundle(&run, cfg.output.format))
}

/// Directory name of sweep point `i`.
pub fn point_dir(i: usize) -> String {
    format!("point_{i:03}")
}

fn axis_cell(axis: SweepAxis, v: f64) -> Cell {
    if matches!(axis, SweepAxis::N | SweepAxis::FixedDensityN) {
        Cell::Int(v as i64)
    } else {
        Cell::Num(v)
    }
}

/// Runs every sweep point; point failures are recorded in the summary and
/// do not stop the sweep.
pub fn cmd_sweep(cfg: &RunConfig, sweep: &SweepSpec) -> Result<Bundle> {
    let results: Vec<(
        f64,
        std::result::Result<DecoherenceRun, String>,
        Option<f64>,
    )> = sweep
        .values
        .par_iter()
        .map(|&v| {
            let params = match sweep.apply(&cfg.params, v) {
                Ok(p) => p,
                Err(e) => return (v, Err(e.to_string()), None),
            };
            let run = run_decoherence(
                &params,
                &cfg.solver,
                cfg.times.window,
                cfg.times.points,
                &cfg.methods,
            )
            .map_err(|e| e.to_string());
            (v, run, Some(r_ratio(&params)))
        })
        .collect();

    let mut out = Bundle::new();
    let mut summary = Table::new(&["axis_value", "first_decay_time_s", "r", "tau_s", "status"]);
    for (i, (v, run, r)) in results.into_iter().enumerate() {
        match run {
            Ok(run) => {
                summary.push(vec![
                    axis_cell(sweep.axis, v),
                    run.first_decay_time.into(),
                    run.regime.r.into(),
                    run.regime.tau.unwrap_or(f64::NAN).into(),
                    "ok".into(),
                ]);
                out.nest(point_dir(i), decoherence_bundle(&run, cfg.output.format));
            }
            Err(msg) => summary.push(vec![
                axis_cell(sweep.axis, v),
                f64::NAN.into(),
                r.unwrap_or(f64::NAN).into(),
                f64::NAN.into(),
                format!("error: {msg}").into(),
            ]),
        }
    }
    out.table("sweep_summary", &summary, cfg.output.format);
    Ok(out)
}
