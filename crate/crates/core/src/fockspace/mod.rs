//! Truncated number-basis linear algebra.
//!
//! A [`FockVector`] holds the amplitudes `⟨n|v⟩` for `n < dim`; a
//! [`BandedOperator`] stores a truncated operator by its populated diagonals.
//! Diagonal offsets follow `offset = row - col`, so `a†` lives on `+1` and
//! `a` on `-1`.

mod evolve;

pub use evolve::{evolve_u, evolve_u_with, EvolveOptions, Evolution};

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Fraction of the basis (from the top) monitored for truncation leakage.
pub const GUARD_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<Complex64>,
}

impl FockVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            amps: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    /// Number state `|n⟩` in a basis of size `dim`.
    pub fn basis(dim: usize, n: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::invalid(format!("|{n}⟩ is outside a basis of size {dim}")));
        }
        let mut v = Self::zeros(dim);
        v.amps[n] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn from_amps(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::invalid("empty Fock vector"));
        }
        if let Some(n) = amps.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid(format!("non-finite amplitude at n = {n}")));
        }
        Ok(Self { amps })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::from_amps(amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// First index of the guard band.
    pub fn guard_start(&self) -> usize {
        let width = ((self.dim() as f64) * GUARD_FRACTION).ceil() as usize;
        self.dim() - width.min(self.dim())
    }

    /// Squared norm carried by the guard band.
    pub fn tail_mass(&self) -> f64 {
        self.amps[self.guard_start()..]
            .iter()
            .map(|z| z.norm_sqr())
            .sum()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            amps: self.amps.iter().map(|z| z * s).collect(),
        }
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Euclidean norm of `self - other` restricted to `n < upto`.
    pub fn distance_below(&self, other: &Self, upto: usize) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        let upto = upto.min(self.dim());
        Ok(self.amps[..upto]
            .iter()
            .zip(&other.amps[..upto])
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandedOperator {
    dim: usize,
    offsets: Vec<isize>,
    /// `diagonals[i][s]` is the entry at `(row, col)` with
    /// `row - col = offsets[i]` and `min(row, col) = s`.
    diagonals: Vec<Vec<Complex64>>,
    hermitian: bool,
}

impl BandedOperator {
    pub fn new(
        dim: usize,
        offsets: Vec<isize>,
        diagonals: Vec<Vec<Complex64>>,
        hermitian: bool,
    ) -> Result<Self> {
        if offsets.len() != diagonals.len() {
            return Err(Error::invalid("one diagonal per offset required"));
        }
        for (off, d) in offsets.iter().zip(&diagonals) {
            let want = dim.checked_sub(off.unsigned_abs()).ok_or_else(|| {
                Error::invalid(format!("offset {off} does not fit in dimension {dim}"))
            })?;
            if d.len() != want {
                return Err(Error::invalid(format!(
                    "diagonal at offset {off} has {} entries, expected {want}",
                    d.len()
                )));
            }
        }
        Ok(Self {
            dim,
            offsets,
            diagonals,
            hermitian,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn offsets(&self) -> &[isize] {
        &self.offsets
    }

    pub fn is_flagged_hermitian(&self) -> bool {
        self.hermitian
    }

    /// Matrix element `⟨row|op|col⟩`.
    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        let off = row as isize - col as isize;
        self.offsets
            .iter()
            .position(|&o| o == off)
            .map(|i| self.diagonals[i][row.min(col)])
            .unwrap_or_default()
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        check_dims(self.dim, v.dim())?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (&off, diag) in self.offsets.iter().zip(&self.diagonals) {
            let shift = off.unsigned_abs();
            if off >= 0 {
                for (s, d) in diag.iter().enumerate() {
                    out[s + shift] += d * v.amps[s];
                }
            } else {
                for (s, d) in diag.iter().enumerate() {
                    out[s] += d * v.amps[s + shift];
                }
            }
        }
        Ok(FockVector { amps: out })
    }

    /// Largest `|⟨r|op|c⟩ - conj(⟨c|op|r⟩)|` over all stored entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (&off, diag) in self.offsets.iter().zip(&self.diagonals) {
            let shift = off.unsigned_abs();
            for (s, d) in diag.iter().enumerate() {
                let (row, col) = if off >= 0 { (s + shift, s) } else { (s, s + shift) };
                worst = worst.max((d - self.element(col, row).conj()).norm());
            }
        }
        worst
    }
}

/// `sqrt((n+1)(n+2)…(n+k))` for `n = 0..dim-k`, the entries of `a†^k`.
pub(crate) fn ladder_power_coeffs(k: usize, dim: usize) -> Vec<f64> {
    (0..dim.saturating_sub(k))
        .map(|n| {
            (1..=k)
                .map(|i| (n + i) as f64)
                .product::<f64>()
                .sqrt()
        })
        .collect()
}

/// Truncated annihilation and creation operators.
pub fn build_ladder(dim: usize) -> Result<(BandedOperator, BandedOperator)> {
    if dim < 2 {
        return Err(Error::invalid(format!("ladder operators need dim >= 2, got {dim}")));
    }
    let d: Vec<Complex64> = (1..dim).map(|n| Complex64::new((n as f64).sqrt(), 0.0)).collect();
    let a = BandedOperator::new(dim, vec![-1], vec![d.clone()], false)?;
    let a_dag = BandedOperator::new(dim, vec![1], vec![d], false)?;
    Ok((a, a_dag))
}

/// `H_k = i r (a†^k - a^k)` on the first `dim` number states.
pub fn build_hk(k: usize, r: f64, dim: usize) -> Result<BandedOperator> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::invalid(format!("r = {r} must be positive")));
    }
    if dim <= 2 * k {
        return Err(Error::invalid(format!("H_{k} needs dim > {}, got {dim}", 2 * k)));
    }
    let coeffs = ladder_power_coeffs(k, dim);
    let up: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(0.0, r * c)).collect();
    let down: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(0.0, -r * c)).collect();
    BandedOperator::new(dim, vec![k as isize, -(k as isize)], vec![up, down], true)
}

/// Applies `G_k = exp(i 2π a†a / k)`.
pub fn apply_gk(k: usize, v: &FockVector) -> Result<FockVector> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let phases: Vec<Complex64> = (0..k)
        .map(|r| {
            if r == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::from_polar(1.0, TAU * r as f64 / k as f64)
            }
        })
        .collect();
    Ok(FockVector {
        amps: v
            .amps
            .iter()
            .enumerate()
            .map(|(n, z)| z * phases[n % k])
            .collect(),
    })
}

/// Partial sums `sum_{n < cutoff} n^j |⟨n|v⟩|²`.
pub fn number_moment_partial(v: &FockVector, j: u32, cutoffs: &[usize]) -> Result<Vec<f64>> {
    if let Some(&c) = cutoffs.iter().find(|&&c| c > v.dim()) {
        return Err(Error::invalid(format!("cutoff {c} exceeds dimension {}", v.dim())));
    }
    let mut order: Vec<usize> = (0..cutoffs.len()).collect();
    order.sort_by_key(|&i| cutoffs[i]);
    let mut out = vec![0.0; cutoffs.len()];
    let mut acc = 0.0;
    let mut n = 0usize;
    for i in order {
        while n < cutoffs[i] {
            let p = v.amps[n].norm_sqr();
            if p != 0.0 {
                acc += (n as f64).powi(j as i32) * p;
            }
            n += 1;
        }
        out[i] = acc;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ladder_action() {
        let (a, ad) = build_ladder(6).unwrap();
        let one = FockVector::basis(6, 1).unwrap();
        let zero = FockVector::basis(6, 0).unwrap();
        assert_eq!(a.apply(&one).unwrap(), zero);
        assert_eq!(ad.apply(&zero).unwrap(), one);
        assert_eq!(a.apply(&zero).unwrap(), FockVector::zeros(6));
        assert_eq!(ad.element(4, 3), c(2.0, 0.0));
        assert_eq!(a.element(3, 4), c(2.0, 0.0));
        assert!(build_ladder(1).is_err());
    }

    #[test]
    fn hk_entries() {
        let r = 0.7;
        let h1 = build_hk(1, r, 8).unwrap();
        assert_eq!(h1.element(1, 0), c(0.0, r));
        let h2 = build_hk(2, r, 8).unwrap();
        assert!((h2.element(2, 0) - c(0.0, r * 2f64.sqrt())).norm() < 1e-16);
        assert!((h2.element(0, 2) - c(0.0, -r * 2f64.sqrt())).norm() < 1e-16);
        let h3 = build_hk(3, r, 20).unwrap();
        assert_eq!(h3.offsets(), &[3, -3]);
        assert_eq!(h3.element(4, 2), c(0.0, 0.0));
        assert_eq!(h3.hermiticity_defect(), 0.0);
        assert!(build_hk(3, r, 6).is_err());
        assert!(build_hk(3, -1.0, 20).is_err());
    }

    #[test]
    fn gk_phases() {
        let three = FockVector::basis(8, 3).unwrap();
        assert_eq!(apply_gk(3, &three).unwrap(), three);
        let one = FockVector::basis(8, 1).unwrap();
        let g = apply_gk(3, &one).unwrap();
        let want = Complex64::from_polar(1.0, TAU / 3.0);
        assert!((g.amps()[1] - want).norm() < 1e-16);
    }

    #[test]
    fn moment_partial_sums() {
        let v = FockVector::basis(20, 5).unwrap();
        assert_eq!(number_moment_partial(&v, 1, &[10]).unwrap(), vec![5.0]);
        assert_eq!(number_moment_partial(&v, 2, &[3, 10]).unwrap(), vec![0.0, 25.0]);
        let vac = FockVector::basis(20, 0).unwrap();
        assert_eq!(number_moment_partial(&vac, 3, &[20]).unwrap(), vec![0.0]);
        assert!(number_moment_partial(&v, 1, &[21]).is_err());
    }

    #[test]
    fn guard_band() {
        let v = FockVector::from_real(&[1.0; 100]).unwrap();
        assert_eq!(v.guard_start(), 90);
        assert_eq!(v.tail_mass(), 10.0);
        assert!(FockVector::from_real(&[f64::NAN]).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let h = build_hk(2, 1.0, 10).unwrap();
        let v = FockVector::zeros(11);
        assert_eq!(
            h.apply(&v).unwrap_err(),
            Error::DimensionMismatch { expected: 10, got: 11 }
        );
    }

    fn arb_vector(dim: usize) -> impl Strategy<Value = FockVector> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
            .prop_map(|v| FockVector::from_amps(v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn gk_preserves_norm(k in 1usize..7, v in arb_vector(40)) {
            let g = apply_gk(k, &v).unwrap();
            prop_assert!((g.norm() - v.norm()).abs() < 1e-13);
        }

        #[test]
        fn gk_commutes_with_hk(k in 1usize..6, r in 0.1f64..3.0, v in arb_vector(48)) {
            let h = build_hk(k, r, 48).unwrap();
            let lhs = apply_gk(k, &h.apply(&v).unwrap()).unwrap();
            let rhs = h.apply(&apply_gk(k, &v).unwrap()).unwrap();
            let scale = h.apply(&v).unwrap().norm().max(1.0);
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-14 * scale);
        }

        #[test]
        fn hk_is_hermitian(k in 1usize..8, r in 0.01f64..10.0, extra in 1usize..40) {
            let h = build_hk(k, r, 2 * k + extra).unwrap();
            prop_assert_eq!(h.hermiticity_defect(), 0.0);
            prop_assert!(h.is_flagged_hermitian());
        }
    }
}
