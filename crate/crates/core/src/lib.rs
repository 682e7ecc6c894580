//! Exact, desk-scale machinery for computing a function `f(X, Y)` in a
//! three-node relay network and in the broadcast network with complementary
//! side information.
//!
//! The crate is `no_std` (it needs `alloc`). Probabilities are exact
//! rationals; entropies are evaluated in double precision from them.
//!
//! Module map:
//!
//! * [`model`]: joint sources, function tables, fixtures, Shannon quantities.
//! * [`graphs`]: rook's graphs, confusability graphs, n-instance graphs,
//!   AND/OR powers and the auxiliary graph on pairs of independent sets.
//! * [`graphalg`]: independent sets, cliques, chromatic number, perfection.
//! * [`entropy`]: chromatic, graph, conditional graph and complementary
//!   graph entropy.
//! * [`regions`]: rate regions in `(R_A, R_B, R_C)` and their bounds.
//! * [`protocol`]: concrete schemes, zero-error verification, color covers.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod config;
pub mod entropy;
mod error;
pub mod graphalg;
pub mod graphs;
pub mod model;
pub mod protocol;
pub mod regions;

pub use config::{Config, Limits, SolverConfig};
pub use error::{AuxCondition, Error, Result};
pub use model::{
    fixture, Alphabet, Fixture, FunctionTable, JointPmf, ProblemInstance, RateTriple, Rational,
};
