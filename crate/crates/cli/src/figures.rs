//! Named parameter bundles reproducing the published figures.

use std::f64::consts::PI;

use rayon::prelude::*;
use ringdec_core::decoherence::{build_ensemble, Method};
use ringdec_core::spectrum::{assemble_thin_spectrum, solve_mode_levels, ModeEigenProblem};
use ringdec_core::{RingParams, SolverConfig, HBAR, M_P};
use serde_json::json;

use crate::commands::{cmd_sweep, decoherence_bundle, run_decoherence};
use crate::config::{Format, RunConfig, SweepAxis, SweepSpec, Window, DEFAULT_POINTS};
use crate::error::Result;
use crate::output::{Bundle, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig3,
    Fig4a,
    Fig4b,
    Fig5a,
    Fig5b,
    Fig5c,
    Fig5d,
    Fig5e,
    Fig5f,
    A1,
}

impl Preset {
    pub const ALL: [Preset; 10] = [
        Preset::Fig3,
        Preset::Fig4a,
        Preset::Fig4b,
        Preset::Fig5a,
        Preset::Fig5b,
        Preset::Fig5c,
        Preset::Fig5d,
        Preset::Fig5e,
        Preset::Fig5f,
        Preset::A1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig3 => "fig3",
            Preset::Fig4a => "fig4a",
            Preset::Fig4b => "fig4b",
            Preset::Fig5a => "fig5a",
            Preset::Fig5b => "fig5b",
            Preset::Fig5c => "fig5c",
            Preset::Fig5d => "fig5d",
            Preset::Fig5e => "fig5e",
            Preset::Fig5f => "fig5f",
            Preset::A1 => "a1",
        }
    }
}

/// `N = 80, m = 40 m_p, κ = 1e-13 N/m, R = 0.5 µm` at temperature `t`.
pub fn small_ring(t: f64) -> RingParams {
    RingParams::new(80, 40.0 * M_P, 1e-13, 0.5e-6, t).expect("preset parameters are valid")
}

/// `N = 80, T = 10 µK, κ = 1e-13 N/m, R = 1 µm, m = 4 m_p`.
pub fn sweep_base() -> RingParams {
    RingParams::new(80, 4.0 * M_P, 1e-13, 1e-6, 1e-5).expect("preset parameters are valid")
}

pub const FIG3_TEMPERATURES: [(f64, &str); 2] = [(1e-7, "T_0.1uK"), (8e-6, "T_8uK")];
pub const FIG4_TEMPERATURES: [(f64, &str); 3] =
    [(483e-9, "T_483nK"), (121e-9, "T_121nK"), (31e-9, "T_31nK")];

pub fn fig5_sweep(preset: Preset) -> Option<SweepSpec> {
    let (axis, values) = match preset {
        Preset::Fig5a => (SweepAxis::N, vec![40.0, 80.0, 160.0]),
        Preset::Fig5b => (SweepAxis::Temperature, vec![5e-6, 1e-5, 2e-5]),
        Preset::Fig5c => (SweepAxis::Kappa, vec![5e-14, 1e-13, 2e-13]),
        Preset::Fig5d => (SweepAxis::Radius, vec![0.5e-6, 1e-6, 2e-6]),
        Preset::Fig5e => (SweepAxis::Mass, vec![2.0, 4.0, 8.0]),
        Preset::Fig5f => (SweepAxis::FixedDensityN, vec![80.0, 160.0, 320.0, 640.0]),
        _ => return None,
    };
    Some(SweepSpec::new(axis, values).expect("preset sweeps are valid"))
}

/// `λ = 5` phase grid and `θ = π/2` cell-size grid of the level curves.
pub const A1_THETA_POINTS: usize = 200;
pub const A1_LAMBDA: f64 = 5.0;
pub const A1_LAMBDA_RANGE: (f64, f64, usize) = (1.0, 12.0, 221);
pub const A1_LEVELS: usize = 3;

pub fn a1_theta_grid() -> Vec<f64> {
    (0..A1_THETA_POINTS)
        .map(|j| 2.0 * PI * j as f64 / A1_THETA_POINTS as f64)
        .collect()
}

pub fn a1_lambda_grid() -> Vec<f64> {
    let (lo, hi, n) = A1_LAMBDA_RANGE;
    (0..n)
        .map(|j| lo + (hi - lo) * j as f64 / (n - 1) as f64)
        .collect()
}

fn level_table(key: &'static str, points: &[(f64, f64)], solver: &SolverConfig) -> Result<Table> {
    let rows = points
        .par_iter()
        .map(|&(lambda, theta)| {
            solve_mode_levels(
                &ModeEigenProblem::new(lambda, theta, 1.0),
                A1_LEVELS,
                solver,
            )
        })
        .collect::<ringdec_core::Result<Vec<_>>>()?;
    let mut t = Table::new(&[key, "nu_0", "nu_1", "nu_2", "nu_3"]);
    for (&(lambda, theta), levels) in points.iter().zip(rows) {
        let x = if key == "theta" { theta } else { lambda };
        let mut row = vec![x.into()];
        row.extend(levels.nu.iter().map(|&v| v.into()));
        t.push(row);
    }
    Ok(t)
}

fn fig_a1(solver: &SolverConfig) -> Result<Bundle> {
    let theta: Vec<(f64, f64)> = a1_theta_grid()
        .into_iter()
        .map(|t| (A1_LAMBDA, t))
        .collect();
    let lambda: Vec<(f64, f64)> = a1_lambda_grid()
        .into_iter()
        .map(|l| (l, PI / 2.0))
        .collect();
    let mut out = Bundle::new();
    out.table(
        "levels_vs_theta",
        &level_table("theta", &theta, solver)?,
        Format::Csv,
    );
    out.table(
        "levels_vs_lambda",
        &level_table("lambda", &lambda, solver)?,
        Format::Csv,
    );
    Ok(out)
}

fn fig3(solver: &SolverConfig) -> Result<Bundle> {
    let mut out = Bundle::new();
    for (t, label) in FIG3_TEMPERATURES {
        let params = small_ring(t);
        let spec = assemble_thin_spectrum(&params, 1, 1, solver)?;
        let ens = build_ensemble(&spec, solver)?;
        let unit = HBAR * spec.omega(1);
        let beta = params.beta();
        let gauss: Vec<f64> = (-ens.n_trunc..=ens.n_trunc)
            .map(|n| (-beta * params.kinetic_energy(n)).exp())
            .collect();
        let z: f64 = gauss.iter().sum();
        let mut table = Table::new(&[
            "n",
            "eps1_joule",
            "eps1_hbar_omega1",
            "P_gaussian",
            "w_thermal",
        ]);
        for (i, n) in (-ens.n_trunc..=ens.n_trunc).enumerate() {
            let e1 = spec.mode_energy(1, n, 0).energy;
            table.push(vec![
                n.into(),
                e1.into(),
                (e1 / unit).into(),
                (gauss[i] / z).into(),
                ens.weight(n).into(),
            ]);
        }
        let mut sub = Bundle::new();
        sub.table("spectrum", &table, Format::Csv);
        sub.json(
            "diagnostics.json",
            &json!({
                "n_fwhm": ringdec_core::decoherence::n_fwhm(&params),
                "r": ringdec_core::decoherence::r_ratio(&params),
                "n_trunc": ens.n_trunc,
            }),
        );
        out.nest(label, sub);
    }
    Ok(out)
}

fn fig4(solver: &SolverConfig, approx: Method) -> Result<Bundle> {
    let mut out = Bundle::new();
    for (t, label) in FIG4_TEMPERATURES {
        let run = run_decoherence(
            &small_ring(t),
            solver,
            Window::Auto,
            DEFAULT_POINTS,
            &[Method::Exact, approx],
        )?;
        out.nest(label, decoherence_bundle(&run, Format::Csv));
    }
    Ok(out)
}

fn fig5(preset: Preset, solver: &SolverConfig) -> Result<Bundle> {
    let sweep = fig5_sweep(preset).expect("fig5 preset");
    let mut cfg = RunConfig::with_params(sweep_base());
    cfg.solver = *solver;
    cfg.methods = vec![Method::Exact];
    cmd_sweep(&cfg, &sweep)
}

/// Files of one preset, relative to the preset directory.
pub fn render(preset: Preset, solver: &SolverConfig) -> Result<Bundle> {
    match preset {
        Preset::Fig3 => fig3(solver),
        Preset::Fig4a => fig4(solver, Method::Bessel),
        Preset::Fig4b => fig4(solver, Method::Erfi),
        Preset::A1 => fig_a1(solver),
        p => fig5(p, solver),
    }
}
