//! Number-basis checks of one invariant state.

use crate::args::VerifyArgs;
use crate::error::CliResult;
use crate::table::{Cell, Table};
use gsqueeze_core::eigenstates::{build_state, StateSpec};
use gsqueeze_core::fockspace::{apply_gk, build_hk, evolve_u, FockVector};
use gsqueeze_core::specfun::ln_gamma;
use num_complex::Complex64;
use std::f64::consts::TAU;

fn state_vector(k: u32, alpha: u32, dim: usize) -> CliResult<FockVector> {
    let state = build_state(StateSpec::fitting(k, alpha, dim)?)?;
    Ok(state.to_fock(dim)?)
}

/// `‖(H_k ψ)_{n < dim-k}‖ / (r ‖ψ‖)`: the rows untouched by truncation.
pub fn interior_residual(k: u32, alpha: u32, dim: usize, r: f64) -> CliResult<f64> {
    let v = state_vector(k, alpha, dim)?;
    let out = build_hk(k as usize, r, dim)?.apply(&v)?;
    let interior: f64 = out.amps()[..dim - k as usize].iter().map(|z| z.norm_sqr()).sum();
    Ok(interior.sqrt() / (r * v.norm()))
}

/// `max |G_k ψ - e^{2πiα/k} ψ|`.
pub fn gk_phase_error(k: u32, alpha: u32, dim: usize) -> CliResult<f64> {
    let v = state_vector(k, alpha, dim)?;
    let phase = Complex64::from_polar(1.0, TAU * alpha as f64 / k as f64);
    Ok(apply_gk(k as usize, &v)?.max_abs_diff(&v.scaled(phase))?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invariance {
    pub dim: usize,
    /// `‖(Uψ - ψ)_{n < dim/2}‖`.
    pub deviation: f64,
    pub reliable: bool,
}

pub fn invariance(k: u32, alpha: u32, dim: usize, tau: f64, tol: f64) -> CliResult<Invariance> {
    let v = state_vector(k, alpha, dim)?;
    let ev = evolve_u(k as usize, tau, &v, tol)?;
    Ok(Invariance {
        dim,
        deviation: ev.state.distance_below(&v, dim / 2)?,
        reliable: ev.reliable,
    })
}

/// `max |U(τ) U(-τ) ψ - ψ|`.
pub fn round_trip_error(k: u32, alpha: u32, dim: usize, tau: f64, tol: f64) -> CliResult<f64> {
    let v = state_vector(k, alpha, dim)?;
    let fwd = evolve_u(k as usize, tau, &v, tol)?;
    let back = evolve_u(k as usize, -tau, &fwd.state, tol)?;
    Ok(back.state.max_abs_diff(&v)?)
}

/// `max_n |⟨n|e^{τ(a† - a)}|0⟩ - e^{-τ²/2} τ^n / sqrt(n!)|`.
pub fn coherent_error(tau: f64, tol: f64) -> CliResult<f64> {
    let dim = 96;
    let ev = evolve_u(1, tau, &FockVector::basis(dim, 0)?, tol)?;
    let mut worst: f64 = 0.0;
    for (n, z) in ev.state.amps().iter().enumerate().take(dim / 2) {
        let nf = n as f64;
        let want = if tau == 0.0 {
            if n == 0 { 1.0 } else { 0.0 }
        } else {
            tau.signum().powi(n as i32) * (-0.5 * tau * tau + nf * tau.abs().ln() - 0.5 * ln_gamma(nf + 1.0)?).exp()
        };
        worst = worst.max((z - want).norm());
    }
    Ok(worst)
}

/// Same against the squeezed vacuum with squeezing `2τ`:
/// `⟨2n| = tanh(2τ)^n sqrt((2n)!) / (2^n n! sqrt(cosh 2τ))`.
pub fn squeezed_error(tau: f64, tol: f64) -> CliResult<f64> {
    let dim = 256;
    let ev = evolve_u(2, tau, &FockVector::basis(dim, 0)?, tol)?;
    let r = 2.0 * tau;
    let mut worst: f64 = 0.0;
    for (n, z) in ev.state.amps().iter().enumerate().take(dim / 2) {
        let want = if n % 2 == 1 {
            0.0
        } else {
            let h = (n / 2) as f64;
            let ln_c = 0.5 * ln_gamma(2.0 * h + 1.0)? - h * 2f64.ln() - ln_gamma(h + 1.0)?;
            r.tanh().powi(n as i32 / 2) * ln_c.exp() / r.cosh().sqrt()
        };
        worst = worst.max((z - want).norm());
    }
    Ok(worst)
}

struct Checks(Table);

impl Checks {
    fn new() -> Self {
        Self(Table::new(["check", "measured", "limit", "passed", "detail"]))
    }

    fn add(&mut self, name: &str, measured: f64, limit: Option<f64>, passed: bool, detail: impl Into<String>) {
        self.0.push(vec![
            name.into(),
            Cell::Real(measured),
            limit.into(),
            passed.into(),
            Cell::Text(detail.into()),
        ]);
    }

    fn le(&mut self, name: &str, measured: f64, limit: f64) {
        self.add(name, measured, Some(limit), measured <= limit, "");
    }
}

pub fn verify_table(args: &VerifyArgs) -> CliResult<Table> {
    args.validate()?;
    let (k, alpha) = (args.k, args.alpha);
    let mut c = Checks::new();
    c.le("residual", interior_residual(k, alpha, args.dim, args.r)?, 1e-10);
    c.le("gk_phase", gk_phase_error(k, alpha, args.dim)?, 1e-14);

    let dims = [args.dim / 4, args.dim / 2, args.dim];
    let runs = dims
        .iter()
        .map(|&d| invariance(k, alpha, d, args.tau, args.tol))
        .collect::<CliResult<Vec<_>>>()?;
    for run in &runs {
        let note = if run.reliable { "" } else { "truncation unreliable" };
        c.add(&format!("invariance_dim_{}", run.dim), run.deviation, None, true, note);
    }
    let decreasing = runs.windows(2).all(|w| w[1].deviation < w[0].deviation);
    let last = runs[2].deviation;
    c.add(
        "invariance_decreasing",
        last,
        Some(1e-3),
        decreasing && last <= 1e-3,
        format!(
            "deviations {}",
            runs.iter().map(|r| format!("{:.3e}", r.deviation)).collect::<Vec<_>>().join(" > ")
        ),
    );
    c.le(
        "round_trip",
        round_trip_error(k, alpha, args.dim, args.tau, args.tol)?,
        1e3 * args.tol,
    );
    c.le("coherent_k1", coherent_error(0.8, args.tol.min(1e-10))?, 1e-8);
    c.le("squeezed_k2", squeezed_error(0.4, args.tol.min(1e-10))?, 1e-8);

    let mut t = c.0;
    let all = t.rows.iter().all(|r| r[3] == Cell::from(true));
    t.meta("k", k)
        .meta("alpha", alpha)
        .meta("dim", args.dim)
        .meta_real("tau", args.tau)
        .meta_real("r", args.r)
        .meta_real("tol", args.tol)
        .meta("all_passed", all);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_flows() {
        assert!(coherent_error(0.8, 1e-11).unwrap() < 1e-8);
        assert!(squeezed_error(0.4, 1e-11).unwrap() < 1e-8);
        assert!(coherent_error(-0.3, 1e-11).unwrap() < 1e-8);
    }

    #[test]
    fn residual_and_phase() {
        for alpha in 0..4 {
            assert!(interior_residual(4, alpha, 400, 0.7).unwrap() < 1e-10);
            assert_eq!(gk_phase_error(4, alpha, 400).unwrap(), 0.0);
        }
    }
}
