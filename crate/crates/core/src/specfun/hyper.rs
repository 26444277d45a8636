//! Hypergeometric series: Gauss `2F1` at non-positive argument and the
//! unit-argument `(k+1)F(k)` whose value fixes the norm of the invariant
//! states.

use super::gamma::ln_gamma;
use super::{CompensatedSum, SeriesResult};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Requested relative accuracy.
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tol: 1e-16,
            max_terms: 100_000,
        }
    }
}

fn is_non_positive_integer(c: f64) -> bool {
    c <= 0.0 && c.fract() == 0.0
}

/// Gauss hypergeometric function `2F1(a, b; c; x)` for `x <= 0`.
///
/// The argument is mapped into `[0, 1)` with the Pfaff transformation
/// `2F1(a,b;c;x) = (1-x)^(-a) 2F1(a, c-b; c; x/(x-1))` and the transformed
/// series is summed directly.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<SeriesResult> {
    gauss_2f1_with(a, b, c, x, SeriesOptions::default())
}

pub fn gauss_2f1_with(a: f64, b: f64, c: f64, x: f64, opts: SeriesOptions) -> Result<SeriesResult> {
    if is_non_positive_integer(c) || !c.is_finite() {
        return Err(Error::domain("gauss_2f1", format!("c = {c} is a pole")));
    }
    if !(x <= 0.0) || !x.is_finite() || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain("gauss_2f1", format!("x = {x} must be finite and <= 0")));
    }
    if x == 0.0 {
        return Ok(SeriesResult {
            value: 1.0,
            est_error: 0.0,
            terms_used: 1,
            converged: true,
        });
    }

    let z = x / (x - 1.0);
    let cb = c - b;
    let prefactor = (1.0 - x).powf(-a);

    let mut sum = CompensatedSum::default();
    let mut term = 1.0f64;
    sum.add(term);
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        let ratio = (a + nf) * (cb + nf) / ((c + nf) * (nf + 1.0)) * z;
        term *= ratio;
        n += 1;
        if term == 0.0 {
            // terminating polynomial
            return Ok(SeriesResult {
                value: prefactor * sum.value(),
                est_error: prefactor.abs() * f64::EPSILON * n as f64 * sum.value().abs(),
                terms_used: n,
                converged: true,
            });
        }
        sum.add(term);

        // Once the ratio sits below one the remaining terms are dominated by
        // a geometric series with ratio max(|ratio|, z).
        let rho = ratio.abs().max(z);
        if rho < 1.0 {
            let next = (a + n as f64) * (cb + n as f64) / ((c + n as f64) * (n as f64 + 1.0)) * z;
            if next.abs() <= ratio.abs().max(z) + 1e-12 {
                let tail = (term * next).abs() / (1.0 - rho);
                let s = sum.value();
                let rounding = f64::EPSILON * s.abs();
                if tail <= opts.tol * s.abs() {
                    return Ok(SeriesResult {
                        value: prefactor * s,
                        est_error: prefactor.abs() * (tail + rounding),
                        terms_used: n + 1,
                        converged: true,
                    });
                }
            }
        }
        if n + 1 >= opts.max_terms {
            return Err(Error::Convergence {
                what: "gauss_2f1",
                terms: n + 1,
                est_error: (term / (1.0 - z)).abs() * prefactor.abs(),
            });
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
fn bernoulli_numbers(n: usize) -> Vec<f64> {
    let mut b = vec![0.0; n + 1];
    b[0] = 1.0;
    for m in 1..=n {
        let mut s = 0.0;
        for (j, bj) in b.iter().enumerate().take(m) {
            s += binomial(m + 1, j) * bj;
        }
        b[m] = -s / (m as f64 + 1.0);
    }
    b
}

/// Bernoulli polynomial `B_n(x)`.
pub fn bernoulli_poly(n: usize, x: f64) -> f64 {
    let b = bernoulli_numbers(n);
    (0..=n)
        .map(|j| binomial(n, j) * b[j] * x.powi((n - j) as i32))
        .sum()
}

/// `sum_{m >= n} m^(-s)` for `s > 1` and large `n`, by Euler–Maclaurin.
pub fn hurwitz_zeta_tail(s: f64, n: f64) -> f64 {
    // B_2, B_4, B_6, B_8 over (2p)!
    const COEFFS: [f64; 4] = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1_209_600.0];
    let mut total = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // d^(2p-1)/dm^(2p-1) m^-s = -(s)_(2p-1) m^(-s-2p+1)
    let mut rising = s;
    let mut power = n.powf(-s - 1.0);
    for (p, c) in COEFFS.iter().enumerate() {
        total += c * rising * power;
        let k = (2 * p + 1) as f64;
        rising *= (s + k) * (s + k + 1.0);
        power /= n * n;
    }
    total
}

/// Raw and tail-corrected pieces of a unit-argument series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenHypDetail {
    /// Direct partial sum over `m < terms`.
    pub raw: f64,
    /// Analytic estimate of the remainder `sum_{m >= terms}`.
    pub tail: f64,
    pub result: SeriesResult,
}

/// Number of directly summed terms before the asymptotic tail takes over.
pub const GENHYP_DIRECT_TERMS: usize = 1_000_000;

const TAIL_ORDER: usize = 6;

/// `(k+1)F(k)(1, a_1..a_k; a_1+1/2..a_k+1/2; 1)` with
/// `a_i = (i + alpha) / 2k`.
///
/// Terms decay like `m^(-k/2)`, so direct summation alone stalls for small
/// `k`. The remainder past the direct block is added from the large-`m`
/// expansion of the term ratio of gamma functions.
pub fn genhyp_unit(k: u32, alpha: u32) -> Result<SeriesResult> {
    genhyp_unit_detailed(k, alpha, GENHYP_DIRECT_TERMS).map(|d| d.result)
}

pub fn genhyp_unit_detailed(k: u32, alpha: u32, direct_terms: usize) -> Result<GenHypDetail> {
    if k < 3 {
        return Err(Error::domain(
            "genhyp_unit",
            format!("k = {k}: series diverges for k < 3"),
        ));
    }
    if alpha >= k {
        return Err(Error::domain("genhyp_unit", format!("alpha = {alpha} must be < k = {k}")));
    }
    if direct_terms < 100 {
        return Err(Error::invalid("genhyp_unit needs at least 100 direct terms"));
    }
    let kf = k as f64;
    let a: Vec<f64> = (1..=k).map(|i| (i + alpha) as f64 / (2.0 * kf)).collect();
    let b: Vec<f64> = a.iter().map(|ai| ai + 0.5).collect();

    let mut sum = CompensatedSum::default();
    let mut term = 1.0f64;
    for m in 0..direct_terms {
        sum.add(term);
        let mf = m as f64;
        for (ai, bi) in a.iter().zip(&b) {
            term *= (mf + ai) / (mf + bi);
        }
    }
    let raw = sum.value();

    // ln T(x) = ln C - (k/2) ln x + sum_n s_n x^-n
    let mut ln_c = 0.0;
    for (ai, bi) in a.iter().zip(&b) {
        ln_c += ln_gamma(*bi)? - ln_gamma(*ai)?;
    }
    let mut s = [0.0f64; TAIL_ORDER + 1];
    for (n, sn) in s.iter_mut().enumerate().skip(1) {
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let nf = n as f64;
        *sn = a
            .iter()
            .zip(&b)
            .map(|(ai, bi)| bernoulli_poly(n + 1, *ai) - bernoulli_poly(n + 1, *bi))
            .sum::<f64>()
            * sign
            / (nf * (nf + 1.0));
    }
    // exp of the power series: e_j = (1/j) sum_{n=1..j} n s_n e_{j-n}
    let mut e = [0.0f64; TAIL_ORDER + 1];
    e[0] = 1.0;
    for j in 1..=TAIL_ORDER {
        let mut acc = 0.0;
        for n in 1..=j {
            acc += n as f64 * s[n] * e[j - n];
        }
        e[j] = acc / j as f64;
    }
    let big_n = direct_terms as f64;
    let c = ln_c.exp();
    let mut tail = 0.0;
    let mut last = 0.0;
    for (j, ej) in e.iter().enumerate() {
        last = c * ej * hurwitz_zeta_tail(kf / 2.0 + j as f64, big_n);
        tail += last;
    }
    let value = raw + tail;
    let rounding = 4.0 * (direct_terms as f64).sqrt() * kf * f64::EPSILON * value;
    let est_error = last.abs() + rounding + 1e-16 * tail.abs() * 10.0;
    let result = SeriesResult {
        value,
        est_error,
        terms_used: direct_terms,
        converged: est_error <= 1e-10 * value,
    };
    if !result.converged {
        return Err(Error::Convergence {
            what: "genhyp_unit",
            terms: direct_terms,
            est_error,
        });
    }
    Ok(GenHypDetail { raw, tail, result })
}
