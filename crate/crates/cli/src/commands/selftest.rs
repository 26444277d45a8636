//! A fast battery of consistency checks across the core layers.

use super::momentum::eval_bessel_combination;
use super::verify::{coherent_error, gk_phase_error, interior_residual, squeezed_error};
use crate::error::CliResult;
use crate::table::{Cell, Table};
use gsqueeze_core::eigenstates::{normalization_c_direct, normalization_c_hypergeometric, DIRECT_NORM_TERMS};
use gsqueeze_core::momentum3::{ode_residual, overlap_quadrature, overlaps_closed_form, MomentumWave, Synthesizer, WaveKind};

struct Check {
    name: String,
    measured: f64,
    limit: f64,
}

fn checks() -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let mut push = |name: String, measured: f64, limit: f64| out.push(Check { name, measured, limit });

    for (k, alpha) in [(3, 0), (4, 3), (6, 5)] {
        let hyp = normalization_c_hypergeometric(k, alpha)?;
        let direct = normalization_c_direct(k, alpha, DIRECT_NORM_TERMS)?;
        push(format!("norm_c_k{k}_a{alpha}"), ((hyp - direct) / hyp).abs(), 1e-8);
    }
    for alpha in 0..3 {
        push(format!("residual_k3_a{alpha}"), interior_residual(3, alpha, 512, 1.0)?, 1e-10);
        push(format!("gk_phase_k3_a{alpha}"), gk_phase_error(3, alpha, 512)?, 1e-14);
    }
    push("coherent_k1".into(), coherent_error(0.8, 1e-11)?, 1e-8);
    push("squeezed_k2".into(), squeezed_error(0.4, 1e-11)?, 1e-8);

    for (kind, name) in [(WaveKind::Phi1, "phi1"), (WaveKind::Phi2, "phi2"), (WaveKind::Phi3, "phi3")] {
        push(format!("ode_{name}"), ode_residual(&MomentumWave::of(kind), 1.7, 1e-3)?, 1e-5);
    }
    let set = overlaps_closed_form()?;
    for (n, kind, closed) in [
        (0, WaveKind::Phi1, set.ov_0_phi1),
        (2, WaveKind::Phi1, set.ov_2_phi1),
        (0, WaveKind::Phi2, set.ov_0_phi2),
        (2, WaveKind::Phi2, set.ov_2_phi2),
    ] {
        let (q, _) = overlap_quadrature(n, kind)?;
        let label = if kind == WaveKind::Phi1 { "phi1" } else { "phi2" };
        push(format!("overlap_{n}_{label}"), (q - closed).abs(), 1e-10);
    }
    for alpha in 0..3 {
        let s = Synthesizer::new(alpha, 20_000)?.eval(1.5)?;
        let b = eval_bessel_combination(&set, alpha, 1.5)?;
        push(format!("synthesis_psi{alpha}"), (s.value - b).norm(), 1e-6);
    }
    Ok(out)
}

pub fn selftest_table() -> CliResult<Table> {
    let mut t = Table::new(["check", "measured", "limit", "passed"]);
    let mut all = true;
    for c in checks()? {
        let ok = c.measured <= c.limit;
        all &= ok;
        t.push(vec![Cell::Text(c.name), Cell::Real(c.measured), Cell::Real(c.limit), ok.into()]);
    }
    t.meta("all_passed", all);
    Ok(t)
}
