//! Divergence of number moments and of position/momentum expectations.
//!
//! A sum is judged from its increments over doubling windows of the cutoff.
//! If the window increments scale as `N^γ`, the sum grows like a power when
//! `γ > 0`, like `ln N` when `γ = 0`, and converges when `γ < 0`.

use super::{least_squares, InvariantState};
use crate::error::{Error, Result};
use crate::specfun::CompensatedSum;
use num_complex::Complex64;
use serde::Serialize;

/// Cutoffs `2^10, 2^11, ..., 2^20`.
pub const DEFAULT_MOMENT_CUTOFFS: [usize; 11] = [
    1 << 10,
    1 << 11,
    1 << 12,
    1 << 13,
    1 << 14,
    1 << 15,
    1 << 16,
    1 << 17,
    1 << 18,
    1 << 19,
    1 << 20,
];

const EXPONENT_BAND: f64 = 0.05;
const LOG_R2: f64 = 0.999;
/// Number of trailing windows used for the fits.
const FIT_WINDOWS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentClass {
    Convergent,
    PowerDivergent,
    LogDivergent,
    Inconclusive,
}

impl MomentClass {
    pub fn diverges(self) -> bool {
        matches!(self, Self::PowerDivergent | Self::LogDivergent)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Convergent => "convergent",
            Self::PowerDivergent => "power-divergent",
            Self::LogDivergent => "log-divergent",
            Self::Inconclusive => "inconclusive",
        }
    }
}

impl std::fmt::Display for MomentClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Verdict on one sequence of partial sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesClass {
    pub class: MomentClass,
    /// Scaling exponent of the window increments.
    pub growth_exponent: f64,
    /// r² of the partial sums fitted linearly in `ln N`.
    pub log_r2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentRow {
    pub j: u32,
    pub partial_sums: Vec<f64>,
    pub verdict: SeriesClass,
    /// What `j >= k/2 - 1` predicts.
    pub rule_divergent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub k: u32,
    pub alpha: u32,
    pub cutoffs: Vec<usize>,
    pub rows: Vec<MomentRow>,
}

impl MomentReport {
    pub fn row(&self, j: u32) -> Option<&MomentRow> {
        self.rows.iter().find(|r| r.j == j)
    }

    /// True when every row's verdict agrees with the divergence rule.
    pub fn matches_rule(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.verdict.class != MomentClass::Inconclusive && r.verdict.class.diverges() == r.rule_divergent)
    }
}

/// `⟨n^j⟩` diverges exactly when `j >= k/2 - 1`.
pub fn moment_rule_divergent(k: u32, j: u32) -> bool {
    2 * j + 2 >= k
}

fn check_cutoffs(cutoffs: &[usize], limit: usize) -> Result<()> {
    if cutoffs.len() < FIT_WINDOWS + 1 {
        return Err(Error::invalid(format!(
            "need at least {} cutoffs, got {}",
            FIT_WINDOWS + 1,
            cutoffs.len()
        )));
    }
    if cutoffs.windows(2).any(|w| w[1] <= w[0]) || cutoffs[0] == 0 {
        return Err(Error::invalid("cutoffs must be positive and strictly increasing"));
    }
    let last = *cutoffs.last().unwrap();
    if last > limit {
        return Err(Error::invalid(format!(
            "cutoff {last} exceeds the {limit} basis states covered by the state"
        )));
    }
    Ok(())
}

/// Classifies partial sums `sums[i]` taken at `cutoffs[i]`, given the
/// window increments `increments[i] = sums[i+1] - sums[i]` computed without
/// cancellation.
pub fn classify_series(cutoffs: &[usize], sums: &[f64], increments: &[f64]) -> SeriesClass {
    let n = increments.len();
    let lo = n.saturating_sub(FIT_WINDOWS);
    let inc: Vec<(f64, f64)> = (lo..n)
        .map(|i| ((cutoffs[i] as f64).ln(), increments[i].abs()))
        .collect();
    let growth_exponent = if inc.iter().all(|p| p.1 == 0.0) {
        f64::NEG_INFINITY
    } else if inc.iter().any(|p| p.1 == 0.0) {
        f64::NAN
    } else {
        least_squares(inc.iter().map(|&(x, y)| (x, y.ln()))).0
    };
    let m = sums.len();
    let (_, _, log_r2) = least_squares(
        (m.saturating_sub(FIT_WINDOWS + 1)..m).map(|i| ((cutoffs[i] as f64).ln(), sums[i])),
    );
    let class = if growth_exponent.is_nan() {
        MomentClass::Inconclusive
    } else if growth_exponent > EXPONENT_BAND {
        MomentClass::PowerDivergent
    } else if growth_exponent < -EXPONENT_BAND {
        MomentClass::Convergent
    } else if log_r2 > LOG_R2 {
        MomentClass::LogDivergent
    } else {
        MomentClass::Inconclusive
    };
    SeriesClass {
        class,
        growth_exponent,
        log_r2,
    }
}

/// Partial sums of `⟨n^j⟩` at `cutoffs` for `j = 0..=j_max`, each classified.
pub fn classify_moments(state: &InvariantState, j_max: u32, cutoffs: &[usize]) -> Result<MomentReport> {
    if j_max > 4 {
        return Err(Error::invalid("j_max must be at most 4"));
    }
    check_cutoffs(cutoffs, state.covered())?;
    let rows = (0..=j_max)
        .map(|j| {
            let windows = window_sums(cutoffs, |lo, hi| {
                let mut s = CompensatedSum::default();
                for (n, a) in state.components().skip_while(|(n, _)| *n < lo).take_while(|(n, _)| *n < hi) {
                    s.add((n as f64).powi(j as i32) * a * a);
                }
                s.value()
            });
            let sums = accumulate(&windows);
            let verdict = classify_series(cutoffs, &sums, &windows[1..]);
            MomentRow {
                j,
                partial_sums: sums,
                verdict,
                rule_divergent: moment_rule_divergent(state.k(), j),
            }
        })
        .collect();
    Ok(MomentReport {
        k: state.k(),
        alpha: state.alpha(),
        cutoffs: cutoffs.to_vec(),
        rows,
    })
}

/// `[f(0, c0), f(c0, c1), ...]`.
fn window_sums(cutoffs: &[usize], mut f: impl FnMut(usize, usize) -> f64) -> Vec<f64> {
    let mut lo = 0;
    cutoffs
        .iter()
        .map(|&hi| {
            let v = f(lo, hi);
            lo = hi;
            v
        })
        .collect()
}

fn accumulate(windows: &[f64]) -> Vec<f64> {
    let mut acc = CompensatedSum::default();
    windows
        .iter()
        .map(|&w| {
            acc.add(w);
            acc.value()
        })
        .collect()
}

/// Truncated `⟨x⟩, ⟨p⟩, ⟨x²⟩, ⟨p²⟩` of a superposition, with `x = (a + a†)/√2`
/// and `p = i(a† - a)/√2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XpTable {
    pub k: u32,
    pub coefficients: Vec<(u32, Complex64)>,
    pub cutoffs: Vec<usize>,
    pub x: Vec<f64>,
    pub p: Vec<f64>,
    pub x2: Vec<f64>,
    pub p2: Vec<f64>,
    pub x_class: SeriesClass,
    pub p_class: SeriesClass,
    pub x2_class: SeriesClass,
    pub p2_class: SeriesClass,
}

/// Expectations of `Σ c_i |ψ^{α_i}⟩` truncated to `n < N` for each cutoff.
///
/// All states must share `k` and the coefficients must be normalised.
pub fn xp_superposition_expectations(
    terms: &[(Complex64, &InvariantState)],
    cutoffs: &[usize],
) -> Result<XpTable> {
    let Some(&(_, first)) = terms.first() else {
        return Err(Error::invalid("empty superposition"));
    };
    let k = first.k();
    if terms.iter().any(|(_, s)| s.k() != k) {
        return Err(Error::invalid("superposed states must share the same k"));
    }
    let weight: f64 = terms.iter().map(|(c, _)| c.norm_sqr()).sum();
    if (weight - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(format!("coefficients have total weight {weight}, expected 1")));
    }
    let limit = terms.iter().map(|(_, s)| s.covered()).min().unwrap();
    check_cutoffs(cutoffs, limit)?;
    let last = *cutoffs.last().unwrap();
    let mut psi = vec![Complex64::new(0.0, 0.0); last + 2];
    for (c, s) in terms {
        for (n, a) in s.components().take_while(|(n, _)| *n < last) {
            psi[n] += c * a;
        }
    }
    // window contributions of ⟨a⟩, ⟨a²⟩, ⟨N⟩ and the norm; every operator
    // index must lie below the cutoff
    let a1 = window_sums_c(cutoffs, |lo, hi| {
        (lo.saturating_sub(1)..hi.saturating_sub(1))
            .map(|n| psi[n].conj() * psi[n + 1] * ((n + 1) as f64).sqrt())
            .sum()
    });
    let a2 = window_sums_c(cutoffs, |lo, hi| {
        (lo.saturating_sub(2)..hi.saturating_sub(2))
            .map(|n| psi[n].conj() * psi[n + 2] * (((n + 1) * (n + 2)) as f64).sqrt())
            .sum()
    });
    let num = window_sums(cutoffs, |lo, hi| (lo..hi).map(|n| n as f64 * psi[n].norm_sqr()).sum());
    let norm = window_sums(cutoffs, |lo, hi| (lo..hi).map(|n| psi[n].norm_sqr()).sum());

    let sqrt2 = std::f64::consts::SQRT_2;
    let x_w: Vec<f64> = a1.iter().map(|z| sqrt2 * z.re).collect();
    let p_w: Vec<f64> = a1.iter().map(|z| sqrt2 * z.im).collect();
    let x2_w: Vec<f64> = (0..cutoffs.len()).map(|i| a2[i].re + num[i] + 0.5 * norm[i]).collect();
    let p2_w: Vec<f64> = (0..cutoffs.len()).map(|i| -a2[i].re + num[i] + 0.5 * norm[i]).collect();

    let series = |w: &[f64]| {
        let sums = accumulate(w);
        let class = classify_series(cutoffs, &sums, &w[1..]);
        (sums, class)
    };
    let (x, x_class) = series(&x_w);
    let (p, p_class) = series(&p_w);
    let (x2, x2_class) = series(&x2_w);
    let (p2, p2_class) = series(&p2_w);
    Ok(XpTable {
        k,
        coefficients: terms.iter().map(|(c, s)| (s.alpha(), *c)).collect(),
        cutoffs: cutoffs.to_vec(),
        x,
        p,
        x2,
        p2,
        x_class,
        p_class,
        x2_class,
        p2_class,
    })
}

fn window_sums_c(cutoffs: &[usize], mut f: impl FnMut(usize, usize) -> Complex64) -> Vec<Complex64> {
    let mut lo = 0;
    cutoffs
        .iter()
        .map(|&hi| {
            let v = f(lo, hi);
            lo = hi;
            v
        })
        .collect()
}
