//! Data behind the three figures: number-basis amplitudes of the `k = 3`
//! states, the two even Bessel solutions, and the synthesized momentum-space
//! states.

use super::momentum::{synthesize_grid, EVEN_PSI_MASK, ODD_PSI_MASK, PHI2_MASK};
use crate::args::FiguresArgs;
use crate::error::{invalid, CliResult};
use crate::table::{Cell, Table};
use gsqueeze_core::eigenstates::{build_state, StateSpec};
use gsqueeze_core::momentum3::{MomentumWave, Synthesizer};
use std::path::PathBuf;

/// `n, psi0, psi1, psi2` for `n ≤ n_max`; cells off the support `n ≡ α (mod 6)` are empty.
pub fn fig1(n_max: usize) -> CliResult<Table> {
    let mut cols: Vec<Vec<Option<f64>>> = Vec::with_capacity(3);
    for alpha in 0..3u32 {
        let mut col = vec![None; n_max + 1];
        if n_max >= alpha as usize {
            let state = build_state(StateSpec::fitting(3, alpha, n_max + 1)?)?;
            for (n, a) in state.components() {
                if n <= n_max {
                    col[n] = Some(a);
                }
            }
        }
        cols.push(col);
    }
    let mut t = Table::new(["n", "psi0", "psi1", "psi2"]);
    t.meta("k", 3).meta("n_max", n_max);
    for (n, ((a, b), c)) in cols[0].iter().zip(&cols[1]).zip(&cols[2]).enumerate() {
        t.push(vec![n.into(), (*a).into(), (*b).into(), (*c).into()]);
    }
    Ok(t)
}

/// `p, phi1, phi2`, with `φ²` masked for `|p| < 0.05`.
pub fn fig2(grid: &[f64]) -> CliResult<Table> {
    let mut t = Table::new(["p", "phi1", "phi2"]);
    t.meta_real("phi2_mask", PHI2_MASK);
    for &p in grid {
        let phi2 = if p.abs() < PHI2_MASK { None } else { Some(MomentumWave::phi2().eval(p)?.re) };
        t.push(vec![Cell::Real(p), Cell::Real(MomentumWave::phi1().eval(p)?.re), phi2.into()]);
    }
    Ok(t)
}

/// `p, psi0, minus_i_psi1, minus_i_psi1_imag, psi2` from synthesis.
pub fn fig3(grid: &[f64], m_terms: usize) -> CliResult<Table> {
    let cols: Vec<_> = (0..3u32)
        .map(|alpha| synthesize_grid(&Synthesizer::new(alpha, m_terms)?, grid))
        .collect::<CliResult<_>>()?;
    let mut t = Table::new(["p", "psi0", "minus_i_psi1", "minus_i_psi1_imag", "psi2"]);
    t.meta("m_terms", m_terms)
        .meta_real("even_mask", EVEN_PSI_MASK)
        .meta_real("odd_mask", ODD_PSI_MASK);
    let minus_i = num_complex::Complex64::new(0.0, -1.0);
    for (i, &p) in grid.iter().enumerate() {
        let odd = cols[1][i].map(|(z, _)| minus_i * z);
        t.push(vec![
            Cell::Real(p),
            cols[0][i].map(|(z, _)| z.re).into(),
            odd.map(|z| z.re).into(),
            odd.map(|z| z.im).into(),
            cols[2][i].map(|(z, _)| z.re).into(),
        ]);
    }
    Ok(t)
}

pub fn figure_tables(args: &FiguresArgs) -> CliResult<[(String, Table); 3]> {
    args.grid.validate()?;
    if args.n_max > 100_000 {
        return Err(invalid("n-max must be at most 100000"));
    }
    let grid = args.grid.points();
    Ok([
        ("fig1".into(), fig1(args.n_max)?),
        ("fig2".into(), fig2(&grid)?),
        ("fig3".into(), fig3(&grid, args.m_max)?),
    ])
}

pub fn write_figures(args: &FiguresArgs) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(&args.output)?;
    let mut paths = Vec::new();
    for (name, table) in figure_tables(args)? {
        let path = args.output.join(format!("{name}.{}", args.format.extension()));
        super::write_table_file(&table, &path, args.format)?;
        paths.push(path);
    }
    Ok(paths)
}
