//! Arithmetic and protocol engine for key establishment over non-associative
//! and non-commutative platforms.
//!
//! The crate is `no_std` (with `alloc`). It contains:
//!
//! * [`braid`]: braid words, Garside normal forms, handle reduction, the shift
//!   endomorphism and pure-braid strand removal.
//! * [`platform`]: a uniform group interface over braid groups, symmetric
//!   groups and multiplicative groups modulo a prime.
//! * [`magma`]: tree-words with per-node operation labels.
//! * [`ldops`]: the catalog of (multi-)LD operations and their law checkers.
//! * [`protocols`]: the generic two-party engine and its instantiations.
//! * [`attacks`]: brute-force oracles and executable reductions.
//!
//! File formats, sockets and the command line live in the companion
//! `magmakey` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod attacks;
pub mod braid;
pub mod codec;
mod error;
pub mod ldops;
pub mod magma;
pub mod perm;
pub mod platform;
pub mod protocols;

pub use error::{Error, Result};
pub use perm::Permutation;

/// Deterministic generator used everywhere a seed is accepted.
pub type SeededRng = rand_chacha::ChaCha20Rng;

/// Build the crate's deterministic RNG from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    SeededRng::seed_from_u64(seed)
}
