//! Reconstruction through the Sturm–Liouville family.
//!
//! For `p > 0`,
//! `g(p) = (1/6) ∫₀^∞ dl l J0(l u) ∫ dp' p'³ J0(l u') g(p')` with
//! `u = p²/(2√3)`; for `p < 0` both `l` and `p'³` change sign. The `l`
//! integral is truncated at `l_max`.

use super::{sturm_liouville_f, Branch};
use crate::error::{Error, Result};
use crate::quad::GaussLegendre;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletenessReport {
    pub l_max: f64,
    pub grid: Vec<f64>,
    pub reconstructed: Vec<f64>,
    pub max_error: f64,
    /// Panels per unit length used in `p'` and `l` after refinement.
    pub panels: usize,
}

const GL_ORDER: usize = 20;
const MAX_DENSITY: usize = 256;

/// Applies the truncated completeness kernel to `test_fn`, which must live
/// on `support` (an interval not containing 0), and compares on `p_grid`.
pub fn completeness_check(
    test_fn: impl Fn(f64) -> f64,
    support: (f64, f64),
    p_grid: &[f64],
    l_max: f64,
    quad_tol: f64,
) -> Result<CompletenessReport> {
    let (lo, hi) = support;
    if !(lo < hi) || (lo < 0.0 && hi > 0.0) {
        return Err(Error::invalid("support must be an interval on one side of p = 0"));
    }
    if !(l_max > 0.0) {
        return Err(Error::invalid("l_max must be positive"));
    }
    let branch = if hi > 0.0 { Branch::Plus } else { Branch::Minus };
    let l_sign = if branch == Branch::Plus { 1.0 } else { -1.0 };
    let gl = GaussLegendre::new(GL_ORDER);

    let run = |density: usize| -> Vec<f64> {
        let panels = |len: f64| ((len * density as f64).ceil() as usize).max(1);
        let (ps, pw) = gl.composite(lo, hi, panels(hi - lo));
        let (ls, lw) = gl.composite(0.0, l_max, panels(l_max));
        let g: Vec<f64> = ps.iter().zip(&pw).map(|(&p, &w)| w * p.powi(3) * test_fn(p)).collect();
        let transform: Vec<f64> = ls
            .iter()
            .map(|&l| {
                let l = l_sign * l;
                ps.iter().zip(&g).map(|(&p, &gw)| sturm_liouville_f(branch, l, p) * gw).sum()
            })
            .collect();
        p_grid
            .iter()
            .map(|&p| {
                ls.iter()
                    .zip(&lw)
                    .zip(&transform)
                    .map(|((&l, &w), &t)| {
                        let l = l_sign * l;
                        w * l * sturm_liouville_f(branch, l, p) * t
                    })
                    .sum::<f64>()
                    / 6.0
            })
            .collect()
    };

    let mut density = 4;
    let mut prev = run(density);
    loop {
        let next = run(2 * density);
        let change = prev.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        density *= 2;
        if change <= quad_tol {
            let max_error = p_grid
                .iter()
                .zip(&next)
                .map(|(&p, r)| (r - test_fn(p)).abs())
                .fold(0.0, f64::max);
            return Ok(CompletenessReport {
                l_max,
                grid: p_grid.to_vec(),
                reconstructed: next,
                max_error,
                panels: density,
            });
        }
        if density >= MAX_DENSITY {
            return Err(Error::Convergence {
                what: "completeness quadrature",
                terms: density,
                est_error: change,
            });
        }
        prev = next;
    }
}
