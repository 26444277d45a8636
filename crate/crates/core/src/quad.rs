//! Quadrature rules: Gauss–Legendre (fixed and adaptive) and tanh–sinh for
//! integrands with integrable endpoint singularities.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub est_error: f64,
    pub evals: usize,
}

/// n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss–Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(c + h * x))
            .sum::<f64>()
            * h
    }

    /// Nodes and weights of the composite rule on `panels` equal pieces of [a, b].
    pub fn composite(&self, a: f64, b: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
        let width = (b - a) / panels as f64;
        let mut xs = Vec::with_capacity(panels * self.len());
        let mut ws = Vec::with_capacity(panels * self.len());
        for p in 0..panels {
            let lo = a + width * p as f64;
            let c = lo + 0.5 * width;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                xs.push(c + 0.5 * width * x);
                ws.push(0.5 * width * w);
            }
        }
        (xs, ws)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Globally adaptive bisection with a 15-point Gauss–Legendre rule; the
/// error of a panel is estimated by comparing it with its two halves.
pub fn adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    const MAX_PANELS: usize = 20_000;
    let rule = GaussLegendre::new(15);
    let mut evals = 0usize;
    let eval = |lo: f64, hi: f64, evals: &mut usize, f: &mut F| {
        *evals += rule.len();
        rule.integrate(&mut *f, lo, hi)
    };
    let whole = eval(a, b, &mut evals, &mut f);
    let mut stack = vec![(a, b, whole)];
    let mut total = 0.0;
    let mut err = 0.0;
    let mut panels = 0;
    let span = (b - a).abs();
    while let Some((lo, hi, coarse)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = eval(lo, mid, &mut evals, &mut f);
        let right = eval(mid, hi, &mut evals, &mut f);
        let fine = left + right;
        let diff = (fine - coarse).abs();
        let local_tol = tol * ((hi - lo) / span).max(1e-6);
        if diff <= local_tol || (hi - lo) < 1e-12 * span {
            total += fine;
            err += diff;
        } else {
            panels += 1;
            if panels > MAX_PANELS {
                return Err(Error::Convergence {
                    what: "adaptive quadrature",
                    terms: evals,
                    est_error: diff,
                });
            }
            stack.push((lo, mid, left));
            stack.push((mid, hi, right));
        }
    }
    Ok(QuadResult {
        value: total,
        est_error: err,
        evals,
    })
}

/// Tanh–sinh (double exponential) quadrature on a finite interval.
///
/// The integrand is never evaluated at the endpoints, and abscissae near them
/// are formed from their distance to the endpoint, so integrable algebraic or
/// logarithmic endpoint singularities are handled.
pub fn tanh_sinh<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    const T_MAX: f64 = 4.0;
    const MAX_LEVEL: usize = 14;
    let d = 0.5 * (b - a);
    let point = |t: f64| -> (f64, f64) {
        let u = FRAC_PI_2 * t.sinh();
        let w = d * FRAC_PI_2 * t.cosh() / (u.cosh() * u.cosh());
        let x = if t < 0.0 {
            a + 2.0 * d / (1.0 + (-2.0 * u).exp())
        } else {
            b - 2.0 * d / (1.0 + (2.0 * u).exp())
        };
        (x, w)
    };
    let mut sample = |t: f64, evals: &mut usize| -> f64 {
        let (x, w) = point(t);
        if w == 0.0 || x <= a || x >= b {
            return 0.0;
        }
        *evals += 1;
        w * f(x)
    };
    let mut evals = 0;
    let mut h = 0.5;
    let mut sum = sample(0.0, &mut evals);
    let mut j = 1;
    while j as f64 * h <= T_MAX {
        let t = j as f64 * h;
        sum += sample(t, &mut evals) + sample(-t, &mut evals);
        j += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..MAX_LEVEL {
        h *= 0.5;
        let mut j = 1;
        while j as f64 * h <= T_MAX {
            let t = j as f64 * h;
            sum += sample(t, &mut evals) + sample(-t, &mut evals);
            j += 2;
        }
        let next = sum * h;
        let diff = (next - estimate).abs();
        estimate = next;
        if diff <= tol * estimate.abs().max(1e-300) || diff < tol * 1e-3 {
            return Ok(QuadResult {
                value: estimate,
                est_error: diff,
                evals,
            });
        }
    }
    Err(Error::Convergence {
        what: "tanh-sinh quadrature",
        terms: evals,
        est_error: f64::NAN,
    })
}
