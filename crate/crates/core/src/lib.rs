//! Core algorithms for the relation algebras `L(q, n)`.
//!
//! The crate is `no_std` (it only needs `alloc`) and is organised bottom-up:
//!
//! * [`primes`]: prime power recognition and enumeration.
//! * [`gf`]: arithmetic in `GF(p^k)`.
//! * [`algebra`]: the atom structure of `L(q, n)` and its composition table.
//! * [`geometry`]: the slope representation over `F_q x F_q` and its doubling.
//! * [`verify`]: a full representation checker.
//! * [`coloring`]: random t-edge colorings and the resampling search.
//! * [`bounds`]: the union bound and local lemma thresholds.
//!
//! File formats, the command-line driver and thread-parallel drivers live in
//! the `lqn` crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod algebra;
pub mod bitset;
pub mod bounds;
pub mod coloring;
mod error;
pub mod geometry;
pub mod gf;
pub mod primes;
pub mod verify;

pub use error::{Error, Result};
