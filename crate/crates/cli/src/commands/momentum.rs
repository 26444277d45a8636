use crate::args::MomentumArgs;
use crate::error::{invalid, CliError, CliResult};
use crate::table::{Cell, Table};
use gsqueeze_core::momentum3::{overlaps_closed_form, printed_variants, MomentumWave, OverlapSet, Synthesizer};
use num_complex::Complex64;
use rayon::prelude::*;

/// `φ²` is not evaluated for `|p|` below this.
pub const PHI2_MASK: f64 = 0.05;
/// `ψ⁰`, `ψ²` (logarithmic at the origin) are not synthesized below this.
pub const EVEN_PSI_MASK: f64 = 0.3;
/// `ψ¹` (a jump at the origin) is not synthesized below this.
pub const ODD_PSI_MASK: f64 = 0.1;

pub fn psi_mask(alpha: u32) -> f64 {
    if alpha == 1 {
        ODD_PSI_MASK
    } else {
        EVEN_PSI_MASK
    }
}

/// `ψ^α` written through the Bessel solutions with the closed-form coefficients.
pub fn bessel_combination(set: &OverlapSet, alpha: u32) -> MomentumWave {
    match alpha {
        0 => MomentumWave::combination(set.a0.into(), set.b0.into()),
        2 => MomentumWave::combination(set.a2.into(), set.b2.into()),
        _ => MomentumWave::phi3(),
    }
}

pub fn eval_bessel_combination(set: &OverlapSet, alpha: u32, p: f64) -> CliResult<Complex64> {
    let v = bessel_combination(set, alpha).eval(p)?;
    Ok(if alpha == 1 { set.a1 * v } else { v })
}

/// Synthesized value and band fluctuation, or `None` where masked.
pub type MaskedSynthesis = Option<(Complex64, f64)>;

/// Synthesizes on `grid`, masking `|p| < psi_mask(α)`. Fails with a
/// convergence error if any unmasked point misses the band tolerance.
pub fn synthesize_grid(synth: &Synthesizer, grid: &[f64]) -> CliResult<Vec<MaskedSynthesis>> {
    let mask = psi_mask(synth.alpha());
    let out = grid
        .par_iter()
        .map(|&p| -> CliResult<MaskedSynthesis> {
            if p.abs() < mask {
                return Ok(None);
            }
            let s = synth.eval(p)?;
            if !s.converged {
                return Err(CliError::NotConverged(format!(
                    "synthesis of psi{} at p = {p} fluctuates by {:e}",
                    synth.alpha(),
                    s.band_fluctuation
                )));
            }
            Ok(Some((s.value, s.band_fluctuation)))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(out)
}

pub fn momentum_table(args: &MomentumArgs) -> CliResult<Table> {
    args.grid.validate()?;
    if args.alpha > 2 {
        return Err(invalid("alpha must be 0, 1 or 2"));
    }
    let set = overlaps_closed_form()?;
    let printed = printed_variants()?;
    let synth = Synthesizer::new(args.alpha, args.m_max)?;
    let grid = args.grid.points();
    let psi = synthesize_grid(&synth, &grid)?;

    let mut t = Table::new([
        "p",
        "phi1",
        "phi2",
        "phi3",
        "psi_re",
        "psi_im",
        "bessel_re",
        "bessel_im",
        "band_fluctuation",
    ]);
    t.meta("alpha", args.alpha).meta("m_max", args.m_max);
    for (key, v) in [
        ("ov_0_phi1", set.ov_0_phi1),
        ("ov_2_phi1", set.ov_2_phi1),
        ("ov_0_phi2", set.ov_0_phi2),
        ("ov_2_phi2", set.ov_2_phi2),
        ("D", set.d),
        ("a0", set.a0),
        ("b0", set.b0),
        ("a2", set.a2),
        ("b2", set.b2),
        ("a1_im", set.a1.im),
        ("printed_ov_2_phi1", printed.ov_2_phi1),
        ("printed_ov_2_phi2_first_group", printed.ov_2_phi2_first_group),
        ("printed_b0", printed.b0),
        ("printed_b2", printed.b2),
        ("printed_a1_im", printed.a1.im),
    ] {
        t.meta_real(key, v);
    }
    for (&p, s) in grid.iter().zip(&psi) {
        let phi = |w: MomentumWave| w.eval(p).map(|z| z.re);
        let phi2 = if p.abs() < PHI2_MASK { None } else { Some(phi(MomentumWave::phi2())?) };
        let bessel = if p.abs() < psi_mask(args.alpha) {
            None
        } else {
            Some(eval_bessel_combination(&set, args.alpha, p)?)
        };
        t.push(vec![
            Cell::Real(p),
            Cell::Real(phi(MomentumWave::phi1())?),
            phi2.into(),
            Cell::Real(phi(MomentumWave::phi3())?),
            s.map(|v| v.0.re).into(),
            s.map(|v| v.0.im).into(),
            bessel.map(|z| z.re).into(),
            bessel.map(|z| z.im).into(),
            s.map(|v| v.1).into(),
        ]);
    }
    Ok(t)
}
