//! Exact classification, decomposition, and minimization for discrete
//! midpoint convex functions on the integer lattice.
//!
//! A function `f : Z^n -> Q ∪ {+∞}` is *discrete midpoint convex* at a pair
//! `(x, y)` when `f(x) + f(y) >= f(ceil((x+y)/2)) + f(floor((x+y)/2))`.
//! Requiring this at sup-distance exactly two yields the locally midpoint
//! convex class, at distance at least two the globally midpoint convex
//! class; together with submodularity (distance one), L♮-convexity (all
//! distances), and integral convexity (the weak variant through the local
//! convex envelope) these form a strict hierarchy that the [`classify`]
//! module decides exactly on finite boxes, with counterexample witnesses.
//!
//! The toolkit is built on exact integer/rational arithmetic end to end;
//! the only floating point lives in the quarantined eigenvalue-based
//! sufficiency test, which can answer "yes" or "inconclusive" but never
//! declares failure.
//!
//! Modules:
//!
//! - [`lattice`]: points, boxes, midpoint rounding, integer neighborhoods,
//!   and the canonical chain decomposition of a difference vector.
//! - [`funcs`]: the counted function-oracle abstraction, built-in families,
//!   invariance combinators, and the JSON document loader.
//! - [`envelope`]: the local convex envelope through an exact rational
//!   simplex solver, and the weak midpoint inequality.
//! - [`classify`]: box-certified membership checkers for every class in the
//!   hierarchy, quadratic-form classifiers, and parallelogram inequalities.
//! - [`dmcset`]: midpoint convex point sets, set scaling, parallelogram
//!   point generation, and the three-stage decomposition pipeline.
//! - [`optimize`]: local optimality certificates, 2-neighborhood steepest
//!   descent, proximity-scaling minimization, and brute-force oracles.
//! - [`gen`]: seeded random instance generators used by the test suites.
//! - [`fixtures`]: small named instances that recur throughout the tests
//!   and examples.
//! - [`cli`]: the `dmc-kit` command-line front end.

#![forbid(unsafe_code)]

pub mod classify;
pub mod cli;
pub mod dmcset;
pub mod envelope;
pub mod error;
pub mod fixtures;
pub mod funcs;
pub mod gen;
pub mod lattice;
pub mod optimize;

pub use error::{Error, Result};
pub use lattice::{ExtValue, LatticeBox, LatticePoint, RationalPoint, StepChain};
