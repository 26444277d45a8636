use crate::args::StateArgs;
use crate::error::CliResult;
use crate::table::{Cell, Table};
use gsqueeze_core::eigenstates::{build_state, StateSpec};

/// Rows `(m, n, amplitude, log_amplitude)` for `n = α + 2mk`, `m ≤ m_max`.
pub fn state_table(args: &StateArgs) -> CliResult<Table> {
    let state = build_state(StateSpec::new(args.k, args.alpha, args.m_max)?)?;
    let mut t = Table::new(["m", "n", "amplitude", "log_amplitude"]);
    t.meta("k", args.k)
        .meta("alpha", args.alpha)
        .meta("m_max", args.m_max)
        .meta_real("c", state.c_norm())
        .meta_real("d", state.d_prefactor())
        .meta_real("tail_exponent", -(args.k as f64) / 4.0);
    for (m, &la) in state.log_amps().iter().enumerate() {
        t.push(vec![
            m.into(),
            state.spec().support_index(m).into(),
            Cell::Real(la.exp()),
            Cell::Real(la),
        ]);
    }
    Ok(t)
}
