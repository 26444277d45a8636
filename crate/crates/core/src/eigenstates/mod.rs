//! The `k` zero modes of `H_k = i r (a†^k - a^k)`.
//!
//! State `α` (0 ≤ α < k) lives on `n = α + 2mk`; its unnormalised components
//! are `(2k)^(km) Π_i Γ(m + (α+i)/2k) / sqrt((α+2mk)!)`. Consecutive
//! components obey the two-step recurrence of the zero-eigenvalue equation,
//! and every component with `n ≡ α + k (mod 2k)` vanishes.

mod moments;

pub use moments::{
    classify_moments, classify_series, moment_rule_divergent, xp_superposition_expectations,
    MomentClass, MomentReport, MomentRow, SeriesClass, XpTable, DEFAULT_MOMENT_CUTOFFS,
};

use crate::error::{Error, Result};
use crate::fockspace::FockVector;
use crate::specfun::{genhyp_unit, hurwitz_zeta_tail, ln_gamma, CompensatedSum};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

/// Selects one invariant state and how many of its components to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StateSpec {
    pub k: u32,
    pub alpha: u32,
    /// Components are kept for `m = 0..=m_max`.
    pub m_max: usize,
    pub normalize: bool,
}

impl StateSpec {
    pub fn new(k: u32, alpha: u32, m_max: usize) -> Result<Self> {
        let spec = Self {
            k,
            alpha,
            m_max,
            normalize: true,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Raw components without the `1/sqrt(c)` factor; allowed for every `k`.
    pub fn unnormalized(k: u32, alpha: u32, m_max: usize) -> Result<Self> {
        let spec = Self {
            k,
            alpha,
            m_max,
            normalize: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Largest `m_max` whose support fits in a basis of size `dim`.
    pub fn fitting(k: u32, alpha: u32, dim: usize) -> Result<Self> {
        let step = 2 * k as usize;
        if k == 0 || dim <= alpha as usize {
            return Err(Error::invalid(format!(
                "basis of size {dim} cannot hold state alpha = {alpha}"
            )));
        }
        Self::new(k, alpha, (dim - 1 - alpha as usize) / step)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        if self.alpha >= self.k {
            return Err(Error::invalid(format!(
                "alpha = {} must be below k = {}",
                self.alpha, self.k
            )));
        }
        if self.normalize && self.k < 3 {
            return Err(Error::domain(
                "StateSpec",
                format!("norm diverges for k<3 (k = {})", self.k),
            ));
        }
        Ok(())
    }

    /// Occupation number carrying component `m`.
    pub fn support_index(&self, m: usize) -> usize {
        self.alpha as usize + 2 * m * self.k as usize
    }

    /// Smallest basis holding every kept component.
    pub fn dim(&self) -> usize {
        self.support_index(self.m_max) + 1
    }
}

fn check_k_alpha(k: u32, alpha: u32) -> Result<()> {
    if k == 0 || alpha >= k {
        return Err(Error::invalid(format!("need 0 <= alpha < k, got k = {k}, alpha = {alpha}")));
    }
    Ok(())
}

fn lower_params(k: u32, alpha: u32) -> impl Iterator<Item = f64> {
    (1..=k).map(move |i| (alpha + i) as f64 / (2.0 * k as f64))
}

/// ln of the unnormalised component at `n = α + 2mk`, via log-gamma.
pub fn component_log(k: u32, alpha: u32, m: usize) -> Result<f64> {
    check_k_alpha(k, alpha)?;
    let kf = k as f64;
    let mf = m as f64;
    let n = (alpha as usize + 2 * m * k as usize) as f64;
    let mut acc = kf * mf * (2.0 * kf).ln() - 0.5 * ln_gamma(n + 1.0)?;
    for a in lower_params(k, alpha) {
        acc += ln_gamma(mf + a)?;
    }
    Ok(acc)
}

/// ln(component(m+1) / component(m)), the two-step recurrence ratio.
pub fn two_step_log_ratio(k: u32, alpha: u32, m: usize) -> f64 {
    // component² ratio = Π (m + a_i) / (m + a_i + 1/2)
    let mf = m as f64;
    0.5 * lower_params(k, alpha)
        .map(|a| (-0.5 / (mf + a + 0.5)).ln_1p())
        .sum::<f64>()
}

/// The same ratio written directly as the number-basis recurrence
/// `⟨n+k|ψ⟩ = sqrt(n(n-1)…(n-k+1) / ((n+1)…(n+k))) ⟨n-k|ψ⟩`.
pub fn recurrence_ratio(k: u32, n: usize) -> f64 {
    let mut r = 1.0;
    for i in 0..k as usize {
        r *= (n - i) as f64 / (n + i + 1) as f64;
    }
    r.sqrt()
}

/// Normalisation constant from the unit-argument hypergeometric series.
pub fn normalization_c_hypergeometric(k: u32, alpha: u32) -> Result<f64> {
    check_k_alpha(k, alpha)?;
    let series = genhyp_unit(k, alpha)?;
    let mut ln_pref = -ln_gamma(alpha as f64 + 1.0)?;
    for a in lower_params(k, alpha) {
        ln_pref += 2.0 * ln_gamma(a)?;
    }
    Ok(series.value * ln_pref.exp())
}

/// Terms summed directly by [`normalization_c_direct`].
pub const DIRECT_NORM_TERMS: usize = 1 << 18;

/// Normalisation constant as the sum of squared components, with the
/// remainder past `terms` taken from the `m^(-k/2)` power law matched to the
/// last summed term.
pub fn normalization_c_direct(k: u32, alpha: u32, terms: usize) -> Result<f64> {
    check_k_alpha(k, alpha)?;
    if k < 3 {
        return Err(Error::domain("normalization_c", "norm diverges for k<3"));
    }
    let base = component_log(k, alpha, 0)?;
    let mut sum = CompensatedSum::default();
    for m in 0..terms {
        sum.add((2.0 * (component_log(k, alpha, m)? - base)).exp());
    }
    let n = terms as f64;
    let s = k as f64 / 2.0;
    let last = (2.0 * (component_log(k, alpha, terms)? - base)).exp();
    let tail = last * n.powf(s) * hurwitz_zeta_tail(s, n);
    Ok((sum.value() + tail) * (2.0 * base).exp())
}

/// `c(k, α)` from the hypergeometric formula, checked against the direct
/// sum to 1e-8 relative.
pub fn normalization_c(k: u32, alpha: u32) -> Result<f64> {
    if k < 3 {
        return Err(Error::domain("normalization_c", format!("norm diverges for k<3 (k = {k})")));
    }
    let hyper = normalization_c_hypergeometric(k, alpha)?;
    let direct = normalization_c_direct(k, alpha, DIRECT_NORM_TERMS)?;
    let rel = ((hyper - direct) / hyper).abs();
    if rel > 1e-8 {
        return Err(Error::Consistency {
            what: "normalization_c",
            detail: format!("hypergeometric {hyper:e} vs direct {direct:e} (rel {rel:e})"),
        });
    }
    Ok(hyper)
}

/// Tail prefactor `d(k, α)` in `⟨α+2mk|ψ⟩ ~ d m^(-k/4)`.
pub fn prefactor_d(k: u32, alpha: u32) -> Result<f64> {
    let c = normalization_c(k, alpha)?;
    Ok(prefactor_from_c(k, alpha, c))
}

fn prefactor_from_c(k: u32, alpha: u32, c: f64) -> f64 {
    let kf = k as f64;
    TAU.powf((2.0 * kf - 1.0) / 4.0) / (2.0 * kf).powf((2.0 * alpha as f64 + 1.0) / 4.0) / c.sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantState {
    spec: StateSpec,
    log_amps: Vec<f64>,
    c_norm: f64,
    d_prefactor: f64,
}

/// Builds the state described by `spec`.
///
/// Components are accumulated in the log domain from the exact two-step
/// ratio, anchored at `m = 0`; this keeps neighbouring components consistent
/// to a few ulps, which is what the zero-eigenvalue residual measures.
pub fn build_state(spec: StateSpec) -> Result<InvariantState> {
    spec.validate()?;
    let (k, alpha) = (spec.k, spec.alpha);
    let (c_norm, d_prefactor) = if k >= 3 {
        let c = normalization_c(k, alpha)?;
        (c, prefactor_from_c(k, alpha, c))
    } else {
        (f64::INFINITY, 0.0)
    };
    let shift = if spec.normalize { -0.5 * c_norm.ln() } else { 0.0 };
    let mut log_amps = Vec::with_capacity(spec.m_max + 1);
    let mut acc = component_log(k, alpha, 0)?;
    for m in 0..=spec.m_max {
        log_amps.push(acc + shift);
        acc += two_step_log_ratio(k, alpha, m);
    }
    Ok(InvariantState {
        spec,
        log_amps,
        c_norm,
        d_prefactor,
    })
}

impl InvariantState {
    pub fn spec(&self) -> &StateSpec {
        &self.spec
    }

    pub fn k(&self) -> u32 {
        self.spec.k
    }

    pub fn alpha(&self) -> u32 {
        self.spec.alpha
    }

    /// `c(k, α)`; infinite for `k < 3`.
    pub fn c_norm(&self) -> f64 {
        self.c_norm
    }

    pub fn d_prefactor(&self) -> f64 {
        self.d_prefactor
    }

    pub fn log_amps(&self) -> &[f64] {
        &self.log_amps
    }

    pub fn amplitude(&self, m: usize) -> f64 {
        self.log_amps[m].exp()
    }

    /// `(n, ⟨n|ψ⟩)` for every kept component.
    pub fn components(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.log_amps
            .iter()
            .enumerate()
            .map(|(m, la)| (self.spec.support_index(m), la.exp()))
    }

    /// `⟨n|ψ⟩` for arbitrary `n` (zero off the support or past `m_max`).
    pub fn amplitude_at(&self, n: usize) -> f64 {
        let step = 2 * self.spec.k as usize;
        let alpha = self.spec.alpha as usize;
        if n < alpha || !(n - alpha).is_multiple_of(step) {
            return 0.0;
        }
        self.log_amps
            .get((n - alpha) / step)
            .map_or(0.0, |la| la.exp())
    }

    /// Every component below this occupation number is kept.
    pub fn covered(&self) -> usize {
        self.spec.support_index(self.spec.m_max + 1)
    }

    /// Components with `n < dim` placed in a number basis of size `dim`.
    pub fn to_fock(&self, dim: usize) -> Result<FockVector> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        for (n, a) in self.components().take_while(|(n, _)| *n < dim) {
            amps[n] = Complex64::new(a, 0.0);
        }
        FockVector::from_amps(amps)
    }

    /// Least-squares slope of ln|amplitude| against ln m over `[m_lo, m_hi]`.
    pub fn tail_exponent(&self, m_lo: usize, m_hi: usize) -> Result<f64> {
        tail_exponent(self, m_lo, m_hi)
    }
}

pub fn tail_exponent(state: &InvariantState, m_lo: usize, m_hi: usize) -> Result<f64> {
    if m_lo < 10 || m_lo >= m_hi || m_hi > state.spec.m_max {
        return Err(Error::invalid(format!(
            "need 10 <= m_lo < m_hi <= m_max = {}, got [{m_lo}, {m_hi}]",
            state.spec.m_max
        )));
    }
    let pts = (m_lo..=m_hi).map(|m| ((m as f64).ln(), state.log_amps[m]));
    Ok(least_squares(pts).0)
}

/// (slope, intercept, r²) of an ordinary least-squares line.
pub(crate) fn least_squares(pts: impl Iterator<Item = (f64, f64)>) -> (f64, f64, f64) {
    let pts: Vec<(f64, f64)> = pts.collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, my - slope * mx, r2)
}
