//! Exact solver for the exponential Diophantine equation
//! M_p^x + (M_q+1)^y = (lz)^2, where M_p and M_q are Mersenne primes and
//! l is prime.
//!
//! The crate has four layers:
//!
//! - [`ntcore`]: big-integer primitives (Lucas-Lehmer, deterministic
//!   primality, integer square root, capped factorization).
//! - [`solver`]: the closed-form classification of the full non-negative
//!   solution set, with case labels and structured nonexistence reasons.
//! - [`oracle`]: an independent bounded brute-force search used as ground
//!   truth against the solver, plus the a^x - b^y = 1 desk check.
//! - [`catalog`]: reproduction of the printed solvable/unsolvable tables
//!   (errata flagged, never silently corrected) and CSV/JSON emitters.

pub mod catalog;
mod error;
pub mod ntcore;
pub mod oracle;
pub mod serde_util;
pub mod solver;

pub use error::{Error, Result};
pub use ntcore::{Factorization, MersennePrime};
pub use oracle::SearchBounds;
pub use solver::{EquationInstance, Solution, SolutionSet};
