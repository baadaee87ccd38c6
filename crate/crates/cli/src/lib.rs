//! Library side of the `wit` command: argument types, the subcommands, table
//! caching, figure data and the OEIS cross-check.

pub mod cache;
pub mod commands;
pub mod figure;
pub mod oeis;
