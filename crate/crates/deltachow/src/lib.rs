//! Exact differential algebra over the rationals: characteristic sets,
//! prolongation (jet) ideals and admissibility, dominant components, Kolchin
//! polynomials, and algebraic/differential Chow forms with their index
//! invariants.
//!
//! The `examples/` directory has one runnable example per capability; the
//! `deltachow` binary runs small script files and emits JSON reports.

pub mod chain;
pub mod chow;
pub mod diff;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod order;
pub mod poly;
pub mod prolong;
pub mod script;
pub mod text;
mod util;
