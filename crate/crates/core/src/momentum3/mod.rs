//! Momentum-space zero modes for `k = 3`.
//!
//! In the momentum representation the zero-eigenvalue equation becomes
//! `p f'' + f' + p³ f / 3 = 0`, solved by `J0(p²/(2√3))` and `Y0(p²/(2√3))`;
//! the odd solution is `J0(p²/(2√3)) sgn p`.

mod completeness;
mod overlaps;
mod synth;

pub use completeness::{completeness_check, CompletenessReport};
pub use overlaps::{
    a1_modulus, fit_coefficients, leading_amplitudes, overlap_quadrature, overlaps_closed_form, overlaps_numeric, printed_variants, CoefficientFit, OverlapSet, PrintedVariants,
    NumericOverlaps,
};
pub use synth::{synthesize_psi, Synthesis, Synthesizer, DEFAULT_BAND_TOL};

use crate::error::{Error, Result};
use crate::specfun::{bessel_j0, bessel_y0};
use num_complex::Complex64;
use serde::Serialize;

/// `2√3`, the scale in the Bessel argument `p²/(2√3)`.
pub const BESSEL_SCALE: f64 = 3.464_101_615_137_754_6;

/// Largest oscillator index accepted by [`oscillator_wave_p`].
pub const MAX_OSCILLATOR_N: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveKind {
    Phi1,
    Phi2,
    Phi3,
    Combination,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// One of the three momentum-space solutions, or `c1 φ¹ + c2 φ²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumWave {
    pub kind: WaveKind,
    pub coeffs: [Complex64; 2],
    pub parity: Parity,
}

impl MomentumWave {
    const ONE: Complex64 = Complex64::new(1.0, 0.0);
    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    pub fn phi1() -> Self {
        Self::of(WaveKind::Phi1)
    }

    pub fn phi2() -> Self {
        Self::of(WaveKind::Phi2)
    }

    pub fn phi3() -> Self {
        Self::of(WaveKind::Phi3)
    }

    pub fn of(kind: WaveKind) -> Self {
        let (coeffs, parity) = match kind {
            WaveKind::Phi1 => ([Self::ONE, Self::ZERO], Parity::Even),
            WaveKind::Phi2 => ([Self::ZERO, Self::ONE], Parity::Even),
            WaveKind::Phi3 => ([Self::ONE, Self::ZERO], Parity::Odd),
            WaveKind::Combination => ([Self::ZERO, Self::ZERO], Parity::Even),
        };
        Self { kind, coeffs, parity }
    }

    pub fn combination(c1: Complex64, c2: Complex64) -> Self {
        Self {
            kind: WaveKind::Combination,
            coeffs: [c1, c2],
            parity: Parity::Even,
        }
    }

    pub fn is_singular_at_origin(&self) -> bool {
        match self.kind {
            WaveKind::Phi2 => true,
            WaveKind::Combination => self.coeffs[1] != Self::ZERO,
            _ => false,
        }
    }

    pub fn eval(&self, p: f64) -> Result<Complex64> {
        match self.kind {
            WaveKind::Combination => {
                let mut v = self.coeffs[0] * eval_phi(WaveKind::Phi1, p)?;
                if self.coeffs[1] != Self::ZERO {
                    v += self.coeffs[1] * eval_phi(WaveKind::Phi2, p)?;
                }
                Ok(v)
            }
            kind => eval_phi(kind, p),
        }
    }
}

fn bessel_arg(p: f64) -> f64 {
    p * p / BESSEL_SCALE
}

/// `φ¹(p) = J0(p²/(2√3))`, `φ²(p) = Y0(p²/(2√3))`, `φ³(p) = J0(p²/(2√3)) sgn p`.
pub fn eval_phi(kind: WaveKind, p: f64) -> Result<Complex64> {
    if !p.is_finite() {
        return Err(Error::domain("eval_phi", format!("p = {p}")));
    }
    let v = match kind {
        WaveKind::Phi1 => bessel_j0(bessel_arg(p)),
        WaveKind::Phi2 => {
            if p == 0.0 {
                return Err(Error::domain("eval_phi", "phi2 is singular at p = 0"));
            }
            bessel_y0(bessel_arg(p))?
        }
        WaveKind::Phi3 => match p.partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Greater) => bessel_j0(bessel_arg(p)),
            Some(std::cmp::Ordering::Less) => -bessel_j0(bessel_arg(p)),
            _ => 0.0,
        },
        WaveKind::Combination => {
            return Err(Error::invalid("combinations are evaluated through MomentumWave::eval"))
        }
    };
    Ok(Complex64::new(v, 0.0))
}

/// Central-difference value of `|p f'' + f' + p³ f / 3|`.
pub fn ode_residual(wave: &MomentumWave, p: f64, h: f64) -> Result<f64> {
    sl_operator_residual(|x| wave.eval(x), p, h, 0.0)
}

/// `|L f - λ p³ f|` with `L = p d²/dp² + d/dp + p³/3`, by central differences.
fn sl_operator_residual(
    f: impl Fn(f64) -> Result<Complex64>,
    p: f64,
    h: f64,
    lambda: f64,
) -> Result<f64> {
    if !(h > 0.0) || p.abs() <= 5.0 * h {
        return Err(Error::invalid(format!("need h > 0 and |p| > 5h, got p = {p}, h = {h}")));
    }
    let (fm, f0, fp) = (f(p - h)?, f(p)?, f(p + h)?);
    let d2 = (fp - 2.0 * f0 + fm) / (h * h);
    let d1 = (fp - fm) / (2.0 * h);
    let p3 = p * p * p;
    Ok((p * d2 + d1 + (1.0 / 3.0 - lambda) * p3 * f0).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

/// `f±_l(p) = J0(l p²/(2√3)) θ(±p) θ(±l)`.
pub fn sturm_liouville_f(branch: Branch, l: f64, p: f64) -> f64 {
    let inside = match branch {
        Branch::Plus => p > 0.0 && l > 0.0,
        Branch::Minus => p < 0.0 && l < 0.0,
    };
    if inside {
        bessel_j0(l * bessel_arg(p))
    } else {
        0.0
    }
}

/// Residual of the eigenrelation `L f = (1 - l²)/3 · p³ f`.
pub fn sturm_liouville_residual(branch: Branch, l: f64, p: f64, h: f64) -> Result<f64> {
    sl_operator_residual(
        |x| Ok(Complex64::new(sturm_liouville_f(branch, l, x), 0.0)),
        p,
        h,
        (1.0 - l * l) / 3.0,
    )
}

/// Coefficients of `h_{n+1} = sqrt(2/(n+1)) p h_n - sqrt(n/(n+1)) h_{n-1}`.
#[derive(Debug, Clone)]
pub(crate) struct HermiteRecurrence {
    coef: Vec<(f64, f64)>,
}

impl HermiteRecurrence {
    pub(crate) fn new(n_max: usize) -> Self {
        Self {
            coef: (0..=n_max)
                .map(|n| {
                    let n1 = (n + 1) as f64;
                    ((2.0 / n1).sqrt(), (n as f64 / n1).sqrt())
                })
                .collect(),
        }
    }

    /// Calls `visit(n, h_n(p))` for `n = 0..=n_max`. Runs in a rescaled
    /// frame so that neither the Gaussian factor nor the growth region
    /// underflows or overflows.
    pub(crate) fn run(&self, p: f64, mut visit: impl FnMut(usize, f64)) {
        const BIG: f64 = 1e200;
        let mut log_scale = -0.5 * p * p - 0.25 * std::f64::consts::PI.ln();
        let mut factor = log_scale.exp();
        let (mut prev, mut cur) = (0.0, 1.0);
        for (n, &(up, down)) in self.coef.iter().enumerate() {
            visit(n, cur * factor);
            let next = up * p * cur - down * prev;
            prev = cur;
            cur = next;
            if cur.abs() > BIG {
                prev /= BIG;
                cur /= BIG;
                log_scale += BIG.ln();
                factor = log_scale.exp();
            }
        }
    }
}

pub(crate) fn hermite_functions(p: f64, n_max: usize, visit: impl FnMut(usize, f64)) {
    HermiteRecurrence::new(n_max).run(p, visit)
}

/// `h_n(p)`, the real normalised Hermite function.
pub fn hermite_function(n: usize, p: f64) -> f64 {
    let mut out = 0.0;
    hermite_functions(p, n, |m, v| {
        if m == n {
            out = v;
        }
    });
    out
}

/// `(-i)^n`.
pub(crate) fn minus_i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// `⟨p|n⟩ = (-i)^n h_n(p)`.
pub fn oscillator_wave_p(n: usize, p: f64) -> Result<Complex64> {
    if n > MAX_OSCILLATOR_N {
        return Err(Error::domain("oscillator_wave_p", format!("n = {n} exceeds {MAX_OSCILLATOR_N}")));
    }
    if !p.is_finite() {
        return Err(Error::domain("oscillator_wave_p", format!("p = {p}")));
    }
    Ok(minus_i_pow(n) * hermite_function(n, p))
}
