//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use gsqueeze_cli::args::{FiguresArgs, Format, GridArgs};
use gsqueeze_cli::commands::figures::figure_tables;
use gsqueeze_cli::commands::verify::{coherent_error, interior_residual, invariance, squeezed_error};
use gsqueeze_core::eigenstates::{
    build_state, classify_moments, normalization_c_direct, normalization_c_hypergeometric, MomentClass, StateSpec,
    DEFAULT_MOMENT_CUTOFFS, DIRECT_NORM_TERMS,
};
use gsqueeze_core::momentum3::{
    a1_modulus, completeness_check, fit_coefficients, ode_residual, overlap_quadrature, overlaps_closed_form,
    printed_variants, sturm_liouville_residual, Branch, MomentumWave, Synthesizer, WaveKind,
};
use num_complex::Complex64;
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Outcome = Result<(bool, String), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fmt_secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn construction() -> Outcome {
    let start = Instant::now();
    let mut worst = (0.0f64, 0, 0);
    let mut failures = Vec::new();
    for k in 3..=6u32 {
        for alpha in 0..k {
            let r = interior_residual(k, alpha, 4096, 1.0).map_err(|e| e.to_string())?;
            if r > worst.0 {
                worst = (r, k, alpha);
            }
            if r > 1e-10 {
                failures.push(format!("k={k} a={alpha}: {r:.2e}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed <= Duration::from_secs(10);
    Ok((
        ok,
        format!(
            "worst residual {:.3e} (k={}, alpha={}) vs 1e-10; over limit: [{}]; runtime {} (limit 10s)",
            worst.0,
            worst.1,
            worst.2,
            failures.join(", "),
            fmt_secs(elapsed)
        ),
    ))
}

fn tail_law() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for k in [3u32, 4, 6] {
        for alpha in 0..k {
            let s = build_state(StateSpec::new(k, alpha, 10_000).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let g = s.tail_exponent(1_000, 10_000).map_err(|e| e.to_string())?;
            worst = worst.max((g + k as f64 / 4.0).abs());
            if alpha == 0 {
                parts.push(format!("k={k}: {g:.5}"));
            }
        }
    }
    Ok((worst <= 0.01, format!("{}; max |gamma + k/4| = {worst:.2e} vs 0.01", parts.join(", "))))
}

fn prefactor() -> Outcome {
    let m = 10_000usize;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 3..=6u32 {
        for alpha in 0..k {
            let s = build_state(StateSpec::new(k, alpha, m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let ratio = s.amplitude(m) / (s.d_prefactor() * (m as f64).powf(-(k as f64) / 4.0));
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    Ok((
        lo >= 0.995 && hi <= 1.005,
        format!("ratio range [{lo:.6}, {hi:.6}] at m = 1e4, k = 3..6, all alpha; target [0.995, 1.005]"),
    ))
}

fn normalization() -> Outcome {
    let mut worst = (0.0f64, 0, 0);
    for k in 3..=6u32 {
        for alpha in 0..k {
            let h = normalization_c_hypergeometric(k, alpha).map_err(|e| e.to_string())?;
            let d = normalization_c_direct(k, alpha, DIRECT_NORM_TERMS).map_err(|e| e.to_string())?;
            let rel = ((h - d) / h).abs();
            if rel > worst.0 {
                worst = (rel, k, alpha);
            }
        }
    }
    Ok((
        worst.0 <= 1e-8,
        format!("max relative difference {:.3e} (k={}, alpha={}) vs 1e-8", worst.0, worst.1, worst.2),
    ))
}

fn moment_rule() -> Outcome {
    let cutoffs = DEFAULT_MOMENT_CUTOFFS;
    let top = *cutoffs.last().unwrap();
    let mut grid = Vec::new();
    let mut mismatches = Vec::new();
    let mut k3j1 = f64::NAN;
    let mut k4j1 = MomentClass::Inconclusive;
    for k in 3..=8u32 {
        let state = build_state(StateSpec::fitting(k, 0, top).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let report = classify_moments(&state, 3, &cutoffs).map_err(|e| e.to_string())?;
        let mut line = String::new();
        for row in &report.rows {
            let d = row.verdict.class.diverges();
            line.push(if d { 'D' } else { 'C' });
            if row.verdict.class == MomentClass::Inconclusive || d != row.rule_divergent {
                mismatches.push(format!("k={k} j={} {}", row.j, row.verdict.class));
            }
        }
        if k == 3 {
            k3j1 = report.row(1).unwrap().verdict.growth_exponent;
        }
        if k == 4 {
            k4j1 = report.row(1).unwrap().verdict.class;
        }
        grid.push(format!("k{k}:{line}"));
    }
    let ok = mismatches.is_empty() && (k3j1 - 0.5).abs() <= 0.05 && k4j1 == MomentClass::LogDivergent;
    Ok((
        ok,
        format!(
            "grid {} (mismatches [{}]); k=3 j=1 exponent {k3j1:.4} (0.5 +/- 0.05); k=4 j=1 {k4j1}",
            grid.join(" "),
            mismatches.join(", ")
        ),
    ))
}

fn invariance_check() -> Outcome {
    let start = Instant::now();
    let mut devs = Vec::new();
    for dim in [256usize, 512, 1024] {
        let r = invariance(3, 0, dim, 0.05, 1e-10).map_err(|e| e.to_string())?;
        devs.push(r.deviation);
    }
    let decreasing = devs.windows(2).all(|w| w[1] < w[0]);
    let coherent = coherent_error(0.8, 1e-11).map_err(|e| e.to_string())?;
    let squeezed = squeezed_error(0.4, 1e-11).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let ok = decreasing
        && devs[2] <= 1e-3
        && coherent <= 1e-8
        && squeezed <= 1e-8
        && elapsed <= Duration::from_secs(60);
    Ok((
        ok,
        format!(
            "lower-half deviations dim 256/512/1024 = {:.3e}/{:.3e}/{:.3e} (monotone: {decreasing}, last <= 1e-3: {}); \
             coherent {coherent:.2e}, squeezed {squeezed:.2e} vs 1e-8; runtime {} (limit 60s)",
            devs[0],
            devs[1],
            devs[2],
            devs[2] <= 1e-3,
            fmt_secs(elapsed)
        ),
    ))
}

fn momentum_cross_check() -> Outcome {
    let fit = fit_coefficients(20_000).map_err(|e| e.to_string())?;
    let phi = |kind, p: f64| MomentumWave::of(kind).eval(p).map(|z| z.re).map_err(|e| e.to_string());
    let model = |alpha: u32, p: f64| -> Result<Complex64, String> {
        Ok(match alpha {
            0 => Complex64::from(fit.a0 * phi(WaveKind::Phi1, p)? + fit.b0 * phi(WaveKind::Phi2, p)?),
            2 => Complex64::from(fit.a2 * phi(WaveKind::Phi1, p)? + fit.b2 * phi(WaveKind::Phi2, p)?),
            _ => fit.a1 * phi(WaveKind::Phi3, p)?,
        })
    };
    let even: Vec<f64> = (0..=470).map(|i| 0.3 + 0.01 * i as f64).collect();
    let odd: Vec<f64> = (0..=1000)
        .map(|i| -5.0 + 0.01 * i as f64)
        .filter(|p| p.abs() >= 0.1 - 1e-12)
        .collect();
    let mut worst = [0.0f64; 3];
    for alpha in 0..3u32 {
        let synth = Synthesizer::new(alpha, 20_000).map_err(|e| e.to_string())?;
        let grid = if alpha == 1 { &odd } else { &even };
        for &p in grid {
            let s = synth.eval(p).map_err(|e| e.to_string())?;
            worst[alpha as usize] = worst[alpha as usize].max((s.value - model(alpha, p)?).norm());
        }
    }
    let max = worst.iter().copied().fold(0.0, f64::max);
    Ok((
        max <= 1e-3,
        format!(
            "max |synthesis - fitted Bessel combination|: psi0 {:.2e}, psi1 {:.2e}, psi2 {:.2e} vs 1e-3 (2e4 terms)",
            worst[0], worst[1], worst[2]
        ),
    ))
}

fn coefficients() -> Outcome {
    let a1 = a1_modulus().map_err(|e| e.to_string())?;
    let synth = Synthesizer::new(1, 20_000).map_err(|e| e.to_string())?;
    let mut ratio_err: f64 = 0.0;
    let mut ratios = Vec::new();
    for p in [1.0, 2.0, 3.0] {
        let s = synth.eval(p).map_err(|e| e.to_string())?.value;
        let f = MomentumWave::phi3().eval(p).map_err(|e| e.to_string())?.re;
        let r = s.norm() / f.abs();
        ratios.push(format!("{r:.10}"));
        ratio_err = ratio_err.max((r - a1).abs() / a1);
    }
    let closed = overlaps_closed_form().map_err(|e| e.to_string())?;
    let mut ov_err: f64 = 0.0;
    let mut quad = [0.0; 4];
    for (i, (n, kind, c)) in [
        (0, WaveKind::Phi1, closed.ov_0_phi1),
        (2, WaveKind::Phi1, closed.ov_2_phi1),
        (0, WaveKind::Phi2, closed.ov_0_phi2),
        (2, WaveKind::Phi2, closed.ov_2_phi2),
    ]
    .into_iter()
    .enumerate()
    {
        let (q, _) = overlap_quadrature(n, kind).map_err(|e| e.to_string())?;
        quad[i] = q;
        ov_err = ov_err.max((q - c).abs());
    }
    let printed = printed_variants().map_err(|e| e.to_string())?;
    println!(
        "  info  <2|phi1>: printed {:.8} vs quadrature {:.8}; <2|phi2>: printed first group {:.8} vs quadrature {:.8}",
        printed.ov_2_phi1, quad[1], printed.ov_2_phi2_first_group, quad[3]
    );
    println!(
        "  info  b0: printed {:.8} vs corrected {:.8}; b2: printed {:.8} vs corrected {:.8}; a1: printed {} vs corrected {}",
        printed.b0, closed.b0, printed.b2, closed.b2, printed.a1, closed.a1
    );
    Ok((
        ratio_err <= 1e-6 && ov_err <= 1e-8,
        format!(
            "|a1| = {a1:.10} vs synthesis ratios [{}] rel err {ratio_err:.2e} (1e-6); overlaps max |closed - quadrature| {ov_err:.2e} (1e-8)",
            ratios.join(", ")
        ),
    ))
}

fn ode_and_completeness() -> Outcome {
    let h = 1e-4;
    let points = [-4.1, -2.3, -0.9, 0.7, 1.6, 3.2, 4.8];
    let mut worst_res: f64 = 0.0;
    let mut slopes = Vec::new();
    let waves = [MomentumWave::phi1(), MomentumWave::phi2(), MomentumWave::phi3()];
    for w in &waves {
        for &p in &points {
            worst_res = worst_res.max(ode_residual(w, p, h).map_err(|e| e.to_string())?);
        }
        let (r1, r2) = (
            ode_residual(w, 1.6, 2e-2).map_err(|e| e.to_string())?,
            ode_residual(w, 1.6, 1e-2).map_err(|e| e.to_string())?,
        );
        slopes.push((r1 / r2).log2());
    }
    for (branch, l, p) in [(Branch::Plus, 0.4, 1.3), (Branch::Plus, 2.5, 2.1), (Branch::Minus, -1.7, -1.8)] {
        worst_res = worst_res.max(sturm_liouville_residual(branch, l, p, h).map_err(|e| e.to_string())?);
        let (r1, r2) = (
            sturm_liouville_residual(branch, l, p, 2e-2).map_err(|e| e.to_string())?,
            sturm_liouville_residual(branch, l, p, 1e-2).map_err(|e| e.to_string())?,
        );
        slopes.push((r1 / r2).log2());
    }
    let slope_ok = slopes.iter().all(|s| (s - 2.0).abs() <= 0.1);

    let bump = |p: f64| (-(p - 2.0f64).powi(2) / 0.5).exp();
    let grid: Vec<f64> = (0..=30).map(|i| 0.5 + 0.1 * i as f64).collect();
    let e40 = completeness_check(bump, (1e-9, 6.0), &grid, 40.0, 1e-9).map_err(|e| e.to_string())?.max_error;
    let e80 = completeness_check(bump, (1e-9, 6.0), &grid, 80.0, 1e-9).map_err(|e| e.to_string())?.max_error;
    let ok = worst_res <= 1e-6 && slope_ok && e40 <= 1e-2 && e80 * 2.0 <= e40;
    Ok((
        ok,
        format!(
            "max residual {worst_res:.2e} at h=1e-4 (1e-6); refinement slopes [{}] (2.0 +/- 0.1); \
             completeness max error {e40:.3e} at l_max=40 (1e-2), {e80:.3e} at l_max=80 (gain {:.2}x, need 2x)",
            slopes.iter().map(|s| format!("{s:.3}")).collect::<Vec<_>>().join(", "),
            e40 / e80
        ),
    ))
}

fn kernels() -> Outcome {
    let fixtures = common::load_fixtures();
    let mut worst = (0.0f64, String::new());
    for f in &fixtures {
        let e = common::rel_err(common::evaluate(f), f.value);
        if e > worst.0 {
            worst = (e, f.name.clone());
        }
    }
    let w = common::wronskian_defect();
    let l = common::legendre_defect();
    Ok((
        fixtures.len() >= 12 && worst.0 <= 1e-12 && w <= 1e-11 && l <= 1e-11,
        format!(
            "{} fixtures, worst relative error {:.2e} ({}) vs 1e-12; Wronskian {w:.2e}, Legendre {l:.2e} vs 1e-11",
            fixtures.len(),
            worst.0,
            worst.1
        ),
    ))
}

fn figures() -> Outcome {
    let args = FiguresArgs {
        m_max: 20_000,
        n_max: 120,
        grid: GridArgs { p_min: -6.0, p_max: 6.0, p_steps: 1201 },
        output: ".".into(),
        format: Format::Csv,
    };
    let [(_, fig1), (_, fig2), (_, fig3)] = figure_tables(&args).map_err(|e| e.to_string())?;

    let mut fig1_ok = fig1.rows.len() == 121;
    for (alpha, name) in ["psi0", "psi1", "psi2"].iter().enumerate() {
        let col = fig1.reals(name).ok_or("missing fig1 column")?;
        let mut last = f64::INFINITY;
        for (n, v) in col.iter().enumerate() {
            fig1_ok &= v.is_some() == (n % 6 == alpha);
            if let Some(v) = *v {
                fig1_ok &= v > 0.0 && v < last;
                last = v;
            }
        }
    }
    let fig2_ok = fig2.rows.len() == 1201;

    let p = fig3.reals("p").ok_or("missing p")?;
    let re = fig3.reals("minus_i_psi1").ok_or("missing column")?;
    let im = fig3.reals("minus_i_psi1_imag").ok_or("missing column")?;
    let (mut max_im, mut max_odd, mut filled) = (0.0f64, 0.0f64, 0usize);
    let n = p.len();
    for i in 0..n {
        if let (Some(r), Some(m)) = (re[i], im[i]) {
            filled += 1;
            max_im = max_im.max(m.abs());
            let j = n - 1 - i;
            assert_eq!(p[j].unwrap(), -p[i].unwrap());
            if let Some(rm) = re[j] {
                max_odd = max_odd.max((r + rm).abs());
            }
        }
    }
    let fig3_ok = filled > 1000 && max_im <= 1e-12 && max_odd <= 1e-12;
    Ok((
        fig1_ok && fig2_ok && fig3_ok,
        format!(
            "fig1 supports and monotone decrease: {fig1_ok}; fig2 rows: {}; fig3 -i psi1 max |imag| {max_im:.1e}, \
             max |f(p) + f(-p)| {max_odd:.1e} over {filled} points",
            fig2.rows.len()
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("construction exactness", construction),
        ("tail law", tail_law),
        ("prefactor", prefactor),
        ("normalization consistency", normalization),
        ("moment rule", moment_rule),
        ("unitary invariance", invariance_check),
        ("momentum cross-check", momentum_cross_check),
        ("coefficient closed forms", coefficients),
        ("ODE and Sturm-Liouville", ode_and_completeness),
        ("kernel accuracy", kernels),
        ("figures", figures),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} [{:>2}] {name}: {detail} ({})",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            fmt_secs(start.elapsed())
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
