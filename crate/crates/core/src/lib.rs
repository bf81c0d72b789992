//! Knapsack problems over `Z_r` and their security under an oracle-based
//! quantum attack.
//!
//! The crate is organised by capability:
//!
//! - [`knapsack`]: instances over `Z_r`, the 0/1 bit-vector convention,
//!   brute-force and meet-in-the-middle solvers, and the extended
//!   (`{-1, 0, 1, 2}`-coefficient) solution counter.
//! - [`quantum_sim`]: exact counting-based simulation of the five-register
//!   quantum algorithm (oracle, measurement distribution, sampled runs,
//!   success probability and the adjoint-function identities).
//! - [`chor_rivest`]: the Chor-Rivest cryptosystem over `F_{p^h}` at desk
//!   scale, including polynomial arithmetic, Pohlig-Hellman discrete logs
//!   and constant-weight message encoding.
//! - [`param_security`]: auditing `(p, h)` and `(n, r)` parameters.
//! - [`cli`]: the `knapqsec` command-line front end.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod chor_rivest;
pub mod cli;
pub mod exact;
pub mod knapsack;
pub mod nt;
pub mod param_security;
pub mod quantum_sim;

pub use knapsack::{BitVector, ExtendedVector, KnapsackError, KnapsackInstance, Limits};
