//! Complete elliptic integrals by the arithmetic–geometric mean.
//!
//! Arguments use the parameter convention `K(m) = ∫ dθ / sqrt(1 - m sin²θ)`.
//! The `_modulus` variants take `k` with `m = k²`.

use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

const MAX_ITER: usize = 60;

/// Runs the AGM from (1, sqrt(1-m)); returns (agm, sum_n 2^(n-1) c_n^2).
fn agm(m: f64) -> (f64, f64) {
    let mut a = 1.0f64;
    let mut b = (1.0 - m).sqrt();
    let mut c = m.sqrt();
    let mut weight = 0.5;
    let mut sum = weight * c * c;
    for _ in 0..MAX_ITER {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = (a * b).sqrt();
        a = an;
        weight *= 2.0;
        sum += weight * c * c;
    }
    (a, sum)
}

/// Complete elliptic integral of the first kind, `0 <= m < 1`.
pub fn elliptic_k(m: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&m) {
        return Err(Error::domain("elliptic_k", format!("parameter m = {m} outside [0, 1)")));
    }
    Ok(FRAC_PI_2 / agm(m).0)
}

/// Complete elliptic integral of the second kind, `0 <= m <= 1`.
pub fn elliptic_e(m: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::domain("elliptic_e", format!("parameter m = {m} outside [0, 1]")));
    }
    if m == 1.0 {
        return Ok(1.0);
    }
    let (a, sum) = agm(m);
    Ok(FRAC_PI_2 / a * (1.0 - sum))
}

pub fn elliptic_k_modulus(k: f64) -> Result<f64> {
    elliptic_k(k * k)
}

pub fn elliptic_e_modulus(k: f64) -> Result<f64> {
    elliptic_e(k * k)
}
