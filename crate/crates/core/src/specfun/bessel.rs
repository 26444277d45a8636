//! Bessel functions of integer order 0 and 1 for real argument.
//!
//! Three regimes: ascending series for `x <= 4`, Miller backward recurrence
//! with the `J0 + 2 sum J_2k = 1` normalisation (and Neumann series for the
//! second kind) for `4 < x < 25`, Hankel asymptotic expansion beyond.

use super::gamma::EULER_GAMMA;
use crate::error::{Error, Result};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_2_PI, PI};

const SERIES_MAX: f64 = 4.0;
const ASYMPTOTIC_MIN: f64 = 25.0;

pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= SERIES_MAX {
        series_j(x).0
    } else if x < ASYMPTOTIC_MIN {
        Miller::new(x).j0()
    } else {
        hankel(0, x).0
    }
}

pub fn bessel_j1(x: f64) -> f64 {
    let s = x.signum();
    let x = x.abs();
    let v = if x <= SERIES_MAX {
        series_j(x).1
    } else if x < ASYMPTOTIC_MIN {
        Miller::new(x).j1()
    } else {
        hankel(1, x).0
    };
    s * v
}

/// Bessel function of the second kind, order 0 (a.k.a. `N0`).
pub fn bessel_y0(x: f64) -> Result<f64> {
    check_positive("bessel_y0", x)?;
    Ok(if x <= SERIES_MAX {
        series_y(x).0
    } else if x < ASYMPTOTIC_MIN {
        Miller::new(x).y0()
    } else {
        hankel(0, x).1
    })
}

pub fn bessel_y1(x: f64) -> Result<f64> {
    check_positive("bessel_y1", x)?;
    Ok(if x <= SERIES_MAX {
        series_y(x).1
    } else if x < ASYMPTOTIC_MIN {
        Miller::new(x).y1()
    } else {
        hankel(1, x).1
    })
}

fn check_positive(func: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(func, format!("x = {x} must be positive (log singularity at 0)")))
    }
}

/// (J0, J1) by the ascending series.
fn series_j(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let (mut t0, mut t1) = (1.0, 0.5 * x);
    let (mut j0, mut j1) = (t0, t1);
    for k in 1..60 {
        let kf = k as f64;
        t0 *= -q / (kf * kf);
        t1 *= -q / (kf * (kf + 1.0));
        j0 += t0;
        j1 += t1;
        if t0.abs() < 1e-18 && t1.abs() < 1e-18 {
            break;
        }
    }
    (j0, j1)
}

/// (Y0, Y1) by the ascending series with harmonic-number coefficients.
fn series_y(x: f64) -> (f64, f64) {
    let (j0, j1) = series_j(x);
    let q = 0.25 * x * x;
    let lg = (0.5 * x).ln() + EULER_GAMMA;

    // Y0: (2/pi)[(ln(x/2)+g) J0 + sum_{k>=1} (-1)^(k+1) H_k q^k/(k!)^2]
    let mut t = 1.0;
    let mut h = 0.0;
    let mut s0 = 0.0;
    // Y1 series: sum_k (H_k + H_{k+1}) (-q)^k / (k!(k+1)!)
    let mut u = 1.0;
    let mut s1 = 1.0; // k = 0: H_0 + H_1 = 1
    for k in 1..60 {
        let kf = k as f64;
        t *= -q / (kf * kf);
        h += 1.0 / kf;
        s0 -= h * t;
        u *= -q / (kf * (kf + 1.0));
        s1 += (2.0 * h + 1.0 / (kf + 1.0)) * u;
        if t.abs() * h < 1e-18 && u.abs() * h < 1e-18 {
            break;
        }
    }
    let y0 = FRAC_2_PI * (lg * j0 + s0);
    // psi(k+1) + psi(k+2) = -2g + H_k + H_{k+1}; the -2g part folds into lg
    let y1 = -FRAC_2_PI / x + FRAC_2_PI * lg * j1 - 0.5 * FRAC_2_PI * (0.5 * x) * s1;
    (y0, y1)
}

/// Bessel functions J_n(x), n = 0..=order, from a normalised backward sweep.
struct Miller {
    x: f64,
    j: Vec<f64>,
}

impl Miller {
    fn new(x: f64) -> Self {
        let start = 2 * (((1.5 * x + 40.0) / 2.0).ceil() as usize);
        let mut j = vec![0.0; start + 2];
        j[start] = 1e-30;
        for n in (1..=start).rev() {
            j[n - 1] = 2.0 * n as f64 / x * j[n] - j[n + 1];
            if j[n - 1].abs() > 1e200 {
                for v in j.iter_mut().skip(n - 1) {
                    *v *= 1e-200;
                }
            }
        }
        let norm: f64 = j[0] + 2.0 * j.iter().skip(2).step_by(2).sum::<f64>();
        for v in &mut j {
            *v /= norm;
        }
        Self { x, j }
    }

    fn j0(&self) -> f64 {
        self.j[0]
    }

    fn j1(&self) -> f64 {
        self.j[1]
    }

    fn log_term(&self) -> f64 {
        (0.5 * self.x).ln() + EULER_GAMMA
    }

    fn y0(&self) -> f64 {
        // Y0 = (2/pi)(ln(x/2)+g) J0 - (4/pi) sum_{k>=1} (-1)^k J_2k / k
        let mut s = 0.0;
        for k in 1..self.j.len() / 2 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * self.j[2 * k] / k as f64;
        }
        FRAC_2_PI * self.log_term() * self.j[0] - 2.0 * FRAC_2_PI * s
    }

    fn y1(&self) -> f64 {
        // Y1 = -Y0', differentiating the Neumann series term by term with
        // J_2k' = (J_{2k-1} - J_{2k+1}) / 2
        let mut s = 0.0;
        for k in 1..(self.j.len() - 1) / 2 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * (self.j[2 * k - 1] - self.j[2 * k + 1]) / (2.0 * k as f64);
        }
        -FRAC_2_PI * (self.j[0] / self.x - self.log_term() * self.j[1]) + 2.0 * FRAC_2_PI * s
    }
}

/// (J_nu, Y_nu) for nu in {0, 1} from the Hankel asymptotic expansion.
fn hankel(nu: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * (nu * nu) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0; // a_j / x^j
    let mut prev = f64::INFINITY;
    for j in 1..80 {
        let odd = (2 * j - 1) as f64;
        a *= (mu - odd * odd) / (j as f64 * 8.0 * x);
        if a.abs() > prev {
            break;
        }
        prev = a.abs();
        // a_j contributes to q for odd j and to p for even j, alternating
        match j % 4 {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
        if a.abs() < 1e-18 {
            break;
        }
    }
    let (s, c) = x.sin_cos();
    // chi = x - (nu/2 + 1/4) pi, expanded to avoid rounding x - pi/4
    let (cos_chi, sin_chi) = if nu == 0 {
        ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2)
    } else {
        ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2)
    };
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * cos_chi - q * sin_chi), amp * (p * sin_chi + q * cos_chi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin() {
        assert_eq!(bessel_j0(0.0), 1.0);
        assert_eq!(bessel_j1(0.0), 0.0);
        assert!(bessel_y0(0.0).is_err());
        assert!(bessel_y0(-1.0).is_err());
    }

    #[test]
    fn parity() {
        for &x in &[0.3, 7.0, 40.0] {
            assert_eq!(bessel_j0(-x), bessel_j0(x));
            assert_eq!(bessel_j1(-x), -bessel_j1(x));
        }
    }

    #[test]
    fn regimes_agree_at_boundaries() {
        for &x in &[SERIES_MAX, ASYMPTOTIC_MIN] {
            let lo = x - 4.0 * f64::EPSILON * x;
            let hi = x + 4.0 * f64::EPSILON * x;
            assert!((bessel_j0(lo) - bessel_j0(hi)).abs() < 1e-13, "J0 at {x}");
            assert!((bessel_j1(lo) - bessel_j1(hi)).abs() < 1e-13, "J1 at {x}");
            assert!((bessel_y0(lo).unwrap() - bessel_y0(hi).unwrap()).abs() < 1e-13, "Y0 at {x}");
            assert!((bessel_y1(lo).unwrap() - bessel_y1(hi).unwrap()).abs() < 1e-13, "Y1 at {x}");
        }
    }

    #[test]
    fn derivative_of_j0_is_minus_j1() {
        for &x in &[1.0, 6.0, 18.0, 60.0] {
            let h = 1e-5;
            let d = (bessel_j0(x + h) - bessel_j0(x - h)) / (2.0 * h);
            assert!((d + bessel_j1(x)).abs() < 1e-9, "x={x}");
            let dy = (bessel_y0(x + h).unwrap() - bessel_y0(x - h).unwrap()) / (2.0 * h);
            assert!((dy + bessel_y1(x).unwrap()).abs() < 1e-9, "x={x}");
        }
    }
}
