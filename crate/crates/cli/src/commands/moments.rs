use crate::args::MomentsArgs;
use crate::error::{invalid, CliResult};
use crate::table::{Cell, Table};
use gsqueeze_core::eigenstates::{
    build_state, classify_moments, moment_rule_divergent, xp_superposition_expectations, InvariantState,
    SeriesClass, StateSpec,
};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::FRAC_1_SQRT_2;

pub const COLUMNS: [&str; 10] = [
    "k",
    "state",
    "quantity",
    "final_sum",
    "growth_exponent",
    "log_r2",
    "class",
    "expected_divergent",
    "agrees",
    "cutoff",
];

fn row(k: u32, state: &str, quantity: &str, sum: f64, v: &SeriesClass, expected: bool, cutoff: usize) -> Vec<Cell> {
    vec![
        k.into(),
        state.into(),
        quantity.into(),
        Cell::Real(sum),
        Cell::Real(v.growth_exponent),
        Cell::Real(v.log_r2),
        v.class.as_str().into(),
        expected.into(),
        (v.class.diverges() == expected && v.class != gsqueeze_core::MomentClass::Inconclusive).into(),
        cutoff.into(),
    ]
}

/// The partner used for the position expectation: the state whose support
/// sits next to `α` in the number basis.
fn partner(k: u32, alpha: u32) -> u32 {
    if alpha + 1 < k {
        alpha + 1
    } else {
        alpha - 1
    }
}

fn rows_for_k(k: u32, args: &MomentsArgs, cutoffs: &[usize]) -> CliResult<Vec<Vec<Cell>>> {
    let top = *cutoffs.last().unwrap();
    let build = |alpha| -> CliResult<InvariantState> { Ok(build_state(StateSpec::fitting(k, alpha, top)?)?) };
    let state = build(args.alpha)?;
    let report = classify_moments(&state, args.j_max, cutoffs)?;
    let label = format!("psi{}", args.alpha);
    let mut rows = Vec::new();
    for r in &report.rows {
        rows.push(row(
            k,
            &label,
            &format!("n^{}", r.j),
            *r.partial_sums.last().unwrap(),
            &r.verdict,
            r.rule_divergent,
            top,
        ));
    }

    let one = Complex64::new(1.0, 0.0);
    let single = xp_superposition_expectations(&[(one, &state)], cutoffs)?;
    let other_alpha = partner(k, args.alpha);
    let other = build(other_alpha)?;
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let pair = xp_superposition_expectations(&[(h, &state), (h, &other)], cutoffs)?;
    let pair_label = format!("(psi{}+psi{})/sqrt2", args.alpha, other_alpha);
    let second_diverges = moment_rule_divergent(k, 1);
    for (label, t, x_div) in [(&label, &single, false), (&pair_label, &pair, k < 4)] {
        let last = |v: &Vec<f64>| *v.last().unwrap();
        rows.push(row(k, label, "x", last(&t.x), &t.x_class, x_div, top));
        rows.push(row(k, label, "p", last(&t.p), &t.p_class, false, top));
        rows.push(row(k, label, "x^2", last(&t.x2), &t.x2_class, second_diverges, top));
        rows.push(row(k, label, "p^2", last(&t.p2), &t.p2_class, second_diverges, top));
    }
    Ok(rows)
}

pub fn moments_table(args: &MomentsArgs) -> CliResult<Table> {
    let k_max = args.k_max.unwrap_or(args.k);
    if args.k < 3 || k_max < args.k {
        return Err(invalid("need 3 <= k <= k-max (norm diverges for k<3)"));
    }
    if args.alpha >= args.k {
        return Err(invalid(format!("alpha = {} must be below k = {}", args.alpha, args.k)));
    }
    if args.j_max > 4 {
        return Err(invalid("j-max must be at most 4"));
    }
    if !(17..=24).contains(&args.cutoff_exp) {
        return Err(invalid("cutoff-exp must lie in 17..=24"));
    }
    let cutoffs: Vec<usize> = (args.cutoff_exp - 10..=args.cutoff_exp).map(|e| 1usize << e).collect();
    let per_k = (args.k..=k_max)
        .into_par_iter()
        .map(|k| rows_for_k(k, args, &cutoffs))
        .collect::<CliResult<Vec<_>>>()?;
    let mut t = Table::new(COLUMNS);
    t.meta("alpha", args.alpha)
        .meta("j_max", args.j_max)
        .meta("cutoffs", format!("2^{}..2^{}", args.cutoff_exp - 10, args.cutoff_exp))
        .meta("rule", "n^j diverges iff j >= k/2 - 1");
    for r in per_k.into_iter().flatten() {
        t.push(r);
    }
    Ok(t)
}
