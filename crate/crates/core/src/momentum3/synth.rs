//! `⟨p|ψ^α⟩` summed from the number basis.
//!
//! With the `(-i)^n` phases folded in, the terms behave like
//! `cos(p sqrt(2n+1) + const) / m` for `n = α + 6m`, so partial sums drift
//! slowly and oscillate with a period that grows as `p → 0`. The partial sums
//! `S_M` over the last 90% of terms are fitted to
//! `S + Σ_j M^(-j/2) (A_j sin θ_M + B_j cos θ_M)`, `θ_M = p sqrt(2n_M + 1)`,
//! the oscillating part is removed, and the reported value is the mean of the
//! corrected partial sums over the last 10%. The difference between the means
//! of the two halves of that band is the convergence diagnostic.

use super::{minus_i_pow, HermiteRecurrence};
use crate::eigenstates::{build_state, InvariantState, StateSpec};
use crate::error::{Error, Result};
use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

pub const DEFAULT_BAND_TOL: f64 = 1e-4;
const MIN_TERMS: usize = 1000;
const MIN_ABS_P: f64 = 0.3;
const TAIL_ORDER: usize = 3;
const COLS: usize = 1 + 2 * TAIL_ORDER;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Synthesis {
    pub value: Complex64,
    /// Difference between the means of the two halves of the averaging band.
    pub band_fluctuation: f64,
    /// Largest misfit of the tail model over the fitted partial sums; NaN
    /// when the model was not applicable and a plain band mean was used.
    pub fit_residual: f64,
    pub converged: bool,
    pub terms: usize,
}

/// Reusable `k = 3` amplitudes for repeated evaluation of one `ψ^α`.
#[derive(Debug, Clone)]
pub struct Synthesizer {
    alpha: u32,
    amps: Vec<f64>,
    hermite: HermiteRecurrence,
    tol: f64,
}

impl Synthesizer {
    pub fn new(alpha: u32, m_terms: usize) -> Result<Self> {
        if m_terms < MIN_TERMS {
            return Err(Error::invalid(format!("need at least {MIN_TERMS} terms, got {m_terms}")));
        }
        let state = build_state(StateSpec::new(3, alpha, m_terms - 1)?)?;
        Self::from_state(&state)
    }

    pub fn from_state(state: &InvariantState) -> Result<Self> {
        if state.k() != 3 || !state.spec().normalize {
            return Err(Error::invalid("synthesis needs a normalised k = 3 state"));
        }
        let m_max = state.spec().m_max;
        Ok(Self {
            alpha: state.alpha(),
            amps: (0..=m_max).map(|m| state.amplitude(m)).collect(),
            hermite: HermiteRecurrence::new(state.spec().support_index(m_max)),
            tol: DEFAULT_BAND_TOL,
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn terms(&self) -> usize {
        self.amps.len()
    }

    pub fn eval(&self, p: f64) -> Result<Synthesis> {
        if !p.is_finite() || (self.alpha != 1 && p.abs() < MIN_ABS_P) {
            return Err(Error::domain(
                "synthesize_psi",
                format!("p = {p} is inside the logarithmic region |p| < {MIN_ABS_P}"),
            ));
        }
        let terms = self.amps.len();
        let fit_start = terms / 10;
        let alpha = self.alpha as usize;
        // partial[i] is the sum of the first fit_start + i terms
        let mut partial = Vec::with_capacity(terms - fit_start + 1);
        let mut sum = 0.0;
        self.hermite.run(p, |n, h| {
            if n < alpha || !(n - alpha).is_multiple_of(6) {
                return;
            }
            let m = (n - alpha) / 6;
            let term = self.amps[m] * h;
            sum += if m.is_multiple_of(2) { term } else { -term };
            if m + 1 >= fit_start {
                partial.push(sum);
            }
        });

        let rows = partial.len();
        let (oscillation, fit_residual) = tail_model(p, alpha, fit_start, terms, &partial)
            .unwrap_or_else(|| (vec![0.0; rows], f64::NAN));

        let band_start = rows - terms / 10;
        let half = band_start + (rows - band_start) / 2;
        let mean = |r: std::ops::Range<usize>| {
            let len = r.len() as f64;
            r.map(|i| partial[i] - oscillation[i]).sum::<f64>() / len
        };
        let value = mean(band_start..rows);
        let band_fluctuation = (mean(band_start..half) - mean(half..rows)).abs();
        Ok(Synthesis {
            value: minus_i_pow(alpha) * value,
            band_fluctuation,
            fit_residual,
            converged: band_fluctuation < self.tol,
            terms,
        })
    }
}

/// Fitted oscillating tail at each partial sum and the largest misfit, or
/// `None` when the phase `θ_M` sweeps less than two periods over the fit
/// range and the model cannot be told apart from a constant.
fn tail_model(p: f64, alpha: usize, fit_start: usize, terms: usize, partial: &[f64]) -> Option<(Vec<f64>, f64)> {
    let theta = |big_m: usize| p * (2.0 * (alpha + 6 * big_m) as f64 + 1.0).sqrt();
    if (theta(terms) - theta(fit_start)).abs() < 4.0 * PI {
        return None;
    }
    let row = |i: usize| -> SVector<f64, COLS> {
        let big_m = fit_start + i;
        let (sin, cos) = theta(big_m).sin_cos();
        let x = (terms as f64 / big_m as f64).sqrt();
        let mut r = SVector::<f64, COLS>::zeros();
        r[0] = 1.0;
        let mut scale = 1.0;
        for j in 0..TAIL_ORDER {
            scale *= x;
            r[1 + 2 * j] = scale * sin;
            r[2 + 2 * j] = scale * cos;
        }
        r
    };
    let design: Vec<SVector<f64, COLS>> = (0..partial.len()).map(row).collect();
    let mut gram = SMatrix::<f64, COLS, COLS>::zeros();
    let mut rhs = SVector::<f64, COLS>::zeros();
    for (r, &s) in design.iter().zip(partial) {
        gram.syger(1.0, r, r, 1.0);
        rhs.axpy(s, r, 1.0);
    }
    gram.fill_upper_triangle_with_lower_triangle();
    let coef = gram.lu().solve(&rhs)?;
    let oscillation: Vec<f64> = design.iter().map(|r| r.dot(&coef) - coef[0]).collect();
    let fit_residual = partial
        .iter()
        .zip(&oscillation)
        .map(|(s, o)| (s - coef[0] - o).abs())
        .fold(0.0, f64::max);
    Some((oscillation, fit_residual))
}

/// One-off evaluation of `⟨p|ψ^α⟩` from `m_terms` number-basis components.
pub fn synthesize_psi(alpha: u32, p: f64, m_terms: usize) -> Result<Synthesis> {
    Synthesizer::new(alpha, m_terms)?.eval(p)
}
