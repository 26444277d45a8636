//! Special-function kernel.
//!
//! Everything here is a pure function of its arguments. Series evaluators
//! report a [`SeriesResult`] carrying an error estimate so callers can decide
//! whether a value is good enough.

mod bessel;
mod elliptic;
mod gamma;
mod hyper;

pub use bessel::{bessel_j0, bessel_j1, bessel_y0, bessel_y1};
pub use elliptic::{elliptic_e, elliptic_e_modulus, elliptic_k, elliptic_k_modulus};
pub use gamma::{gamma, ln_gamma, EULER_GAMMA};
pub use hyper::{
    bernoulli_poly, gauss_2f1, gauss_2f1_with, genhyp_unit, genhyp_unit_detailed,
    hurwitz_zeta_tail, GenHypDetail, SeriesOptions,
};

use serde::Serialize;

/// Value of a (possibly accelerated) series together with its bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult {
    pub value: f64,
    /// Estimated absolute error of `value`.
    pub est_error: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl SeriesResult {
    pub fn rel_error(&self) -> f64 {
        if self.value == 0.0 {
            self.est_error
        } else {
            self.est_error / self.value.abs()
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
