//! Action of `exp(τ (a†^k - a^k))` by adaptive Dormand–Prince 5(4)
//! integration of `dv/dτ = (a†^k - a^k) v` on the truncated basis.
//!
//! The truncated generator is real and antisymmetric, so the exact flow is
//! unitary; the step controller bounds the error per unit time so the
//! accumulated drift stays at the requested tolerance.

use super::{ladder_power_coeffs, FockVector};
use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Target global error (max-norm) of the result.
    pub tol: f64,
    /// Result is flagged unreliable when its guard-band mass exceeds
    /// `guard_factor * tol`.
    pub guard_factor: f64,
    /// Turn an unreliable result into [`Error::Truncation`].
    pub strict: bool,
    pub max_steps: usize,
}

impl EvolveOptions {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            guard_factor: 100.0,
            strict: false,
            max_steps: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub state: FockVector,
    pub steps: usize,
    pub rejected: usize,
    pub input_guard_mass: f64,
    pub output_guard_mass: f64,
    /// `‖out‖ - ‖in‖`.
    pub norm_drift: f64,
    /// False when truncation leakage into the guard band is significant.
    pub reliable: bool,
}

/// `exp(τ (a†^k - a^k)) v` with default options.
pub fn evolve_u(k: usize, tau: f64, v: &FockVector, tol: f64) -> Result<Evolution> {
    evolve_u_with(k, tau, v, &EvolveOptions::new(tol))
}

// Dormand–Prince 5(4) tableau (autonomous system, so no time nodes)
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// b5 - b4
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

struct Generator {
    k: usize,
    coeffs: Vec<f64>,
}

impl Generator {
    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        let k = self.k;
        let c = &self.coeffs;
        let dim = out.len();
        for n in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            if n >= k {
                acc += v[n - k] * c[n - k];
            }
            if n + k < dim {
                acc -= v[n + k] * c[n];
            }
            out[n] = acc;
        }
    }

    fn norm_bound(&self) -> f64 {
        2.0 * self.coeffs.last().copied().unwrap_or(0.0)
    }
}

pub fn evolve_u_with(k: usize, tau: f64, v: &FockVector, opts: &EvolveOptions) -> Result<Evolution> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    if v.dim() <= 4 * k {
        return Err(Error::invalid(format!("evolution needs dim > {}, got {}", 4 * k, v.dim())));
    }
    if !(opts.tol > 0.0) || !tau.is_finite() {
        return Err(Error::invalid("tolerance must be positive and tau finite"));
    }
    let dim = v.dim();
    let gen = Generator {
        k,
        coeffs: ladder_power_coeffs(k, dim),
    };
    let input_norm = v.norm();
    let input_guard_mass = v.tail_mass();
    let total = tau.abs();

    let mut y: Vec<Complex64> = v.amps().to_vec();
    let mut stages = vec![vec![Complex64::new(0.0, 0.0); dim]; 7];
    let mut tmp = vec![Complex64::new(0.0, 0.0); dim];
    let mut err = vec![Complex64::new(0.0, 0.0); dim];
    if total == 0.0 {
        return finish(v.clone(), 0, 0, input_norm, input_guard_mass, opts);
    }

    let dir = tau.signum();
    let mut t = 0.0;
    let mut h = (0.5 / gen.norm_bound().max(1.0)).min(total.max(f64::MIN_POSITIVE));
    let mut steps = 0;
    let mut rejected = 0;
    gen.apply(&y, &mut stages[0]);

    while t < total {
        if steps + rejected >= opts.max_steps {
            return Err(Error::Convergence {
                what: "evolve_u",
                terms: steps + rejected,
                est_error: f64::NAN,
            });
        }
        let last = t + h >= total;
        if last {
            h = total - t;
        }
        let hs = dir * h;
        // stages 1..=5 are intermediate; stage 6 (row A[6]) is the 5th-order
        // solution, and its derivative is both the last stage and the next
        // step's first stage
        for s in 1..7 {
            tmp.copy_from_slice(&y);
            for (j, a) in A[s][..s].iter().enumerate() {
                if *a != 0.0 {
                    let c = hs * a;
                    for (t, k) in tmp.iter_mut().zip(&stages[j]) {
                        *t += k * c;
                    }
                }
            }
            gen.apply(&tmp, &mut stages[s]);
        }
        err.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for (j, coef) in E.iter().enumerate() {
            if *coef != 0.0 {
                for (e, k) in err.iter_mut().zip(&stages[j]) {
                    *e += k * *coef;
                }
            }
        }
        let err_max = err.iter().map(|z| z.norm_sqr()).fold(0.0f64, f64::max).sqrt() * h;
        let allowed = opts.tol * (h / total).min(1.0);
        if err_max <= allowed {
            y.copy_from_slice(&tmp);
            let (first, rest) = stages.split_at_mut(1);
            first[0].copy_from_slice(&rest[5]);
            t = if last { total } else { t + h };
            steps += 1;
        } else {
            rejected += 1;
        }
        let factor = if err_max == 0.0 {
            5.0
        } else {
            (0.9 * (allowed / err_max).powf(0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }

    finish(FockVector::from_amps(y)?, steps, rejected, input_norm, input_guard_mass, opts)
}

fn finish(
    state: FockVector,
    steps: usize,
    rejected: usize,
    input_norm: f64,
    input_guard_mass: f64,
    opts: &EvolveOptions,
) -> Result<Evolution> {
    let output_guard_mass = state.tail_mass();
    let limit = opts.guard_factor * opts.tol;
    let reliable = output_guard_mass <= limit;
    if opts.strict && !reliable {
        return Err(Error::Truncation {
            guard_mass: output_guard_mass,
            limit,
        });
    }
    let norm_drift = state.norm() - input_norm;
    Ok(Evolution {
        state,
        steps,
        rejected,
        input_guard_mass,
        output_guard_mass,
        norm_drift,
        reliable,
    })
}
