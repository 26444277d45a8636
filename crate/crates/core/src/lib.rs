//! Invariant states of the generalized squeezing operator
//! `U_k(z) = exp(z a†^k − z* a^k)`.
//!
//! The crate is split into four layers:
//!
//! * [`specfun`]: log-gamma, Gauss and unit-argument generalized
//!   hypergeometric series, Bessel `J0`/`Y0`, complete elliptic integrals.
//! * [`fockspace`]: truncated number-basis vectors and banded operators,
//!   the phase operator `G_k`, and the unitary flow generated by
//!   `a†^k − a^k`.
//! * [`eigenstates`]: the `k` closed-form zero modes of
//!   `H_k = i r (a†^k − a^k)`, their normalization, tail law and moment
//!   divergence.
//! * [`momentum3`]: the `k = 3` momentum-representation solutions built from
//!   Bessel functions, their decomposition coefficients and the weighted
//!   Sturm–Liouville family.
//!
//! [`quad`] holds the quadrature rules shared by the last two layers.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eigenstates;
pub mod error;
pub mod fockspace;
pub mod momentum3;
pub mod quad;
pub mod specfun;

pub use eigenstates::{
    build_state, InvariantState, MomentClass, MomentReport, MomentRow, SeriesClass, StateSpec, XpTable,
};
pub use error::{Error, Result};
pub use fockspace::{BandedOperator, EvolveOptions, Evolution, FockVector};
pub use momentum3::{CompletenessReport, MomentumWave, OverlapSet, Synthesis, Synthesizer, WaveKind};
pub use specfun::SeriesResult;
