//! Exact-arithmetic toolkit for plane-curve enumeration experiments:
//! curve counts via the Kontsevich–Manin recursion, pencils of cubics
//! through eight points and their degree-12 discriminants, symmetric-group
//! certification of Galois groups from Frobenius cycle types, censuses of
//! rational points of bounded height, and per-prime sieve densities.
//!
//! Everything is exact (arbitrary-precision integers and rationals) and
//! deterministic: identical inputs and seeds give identical outputs
//! regardless of thread count. The `parallel` feature (on by default) runs
//! the enumeration-heavy inner loops on rayon; without it the same code
//! paths run sequentially.

pub mod arith;
pub mod budget;
pub mod census;
pub mod counts;
pub mod galois;
pub mod par;
pub mod pencil;
pub mod rng;
pub mod serde_util;
pub mod sieve;

pub use arith::{Int, Rational};
