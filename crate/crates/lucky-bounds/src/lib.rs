//! Lucky numbers: efficient generation, exact sieve statistics, certified
//! interval arithmetic, and explicit lower/upper bounds on the n-th lucky
//! number verified directly against the generated table.
//!
//! The crate is organized around one data flow:
//!
//! 1. [`sieve`] generates a [`sieve::LuckyTable`] (rank/select deletion
//!    sieve, with a naive oracle for cross-validation).
//! 2. [`interval`] provides arbitrary-precision interval arithmetic with
//!    outward rounding, plus the special functions the constant pipeline
//!    needs (log, exp, Lambert W, closed-form tail integrals).
//! 3. [`stats`] evaluates exact derived quantities of the table (the
//!    density product rho, the correction terms tau and varrho, reciprocal
//!    sums xi) as certified enclosures.
//! 4. [`pipeline`] chains the lemma-by-lemma constant derivations into
//!    bound statements of the form `ell_n > / < f(n; constants)`.
//! 5. [`verify`] checks bound statements exhaustively against the table
//!    over finite ranges and re-checks a handful of fixed spot values.
//!
//! The `lucky-bounds` binary exposes all of this as subcommands; the
//! `examples/` directory demonstrates each capability in isolation.

// Certified comparisons are written in fail-closed form: `!(a >= b)`
// must take the rejecting branch when the operands are unordered, which
// `a < b` would not.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod interval;
pub mod pipeline;
pub mod sieve;
pub mod stats;
pub mod verify;

pub use interval::Interval;
pub use sieve::{generate, intermediate, naive_generate, LuckyTable};
