//! Library side of the `gsqueeze` binary: argument types, table I/O and the
//! subcommand implementations.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod table;
