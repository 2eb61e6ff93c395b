//! Exact solver for the N-player, two-colour hat guessing game.
//!
//! A strategy loses exactly on an *adequate set* of configurations, so the
//! best strategy comes from the cheapest adequate set. The crate enumerates
//! and optimizes those sets, turns them back into decision matrices, checks
//! them against brute force, and analyses the resulting loss polynomials.

pub mod adequate;
pub mod analysis;
pub mod error;
pub mod exact;
pub mod hatcore;
pub mod strategy;

pub use error::{HatError, Result};

/// Largest supported number of players.
pub const MAX_PLAYERS: usize = 16;
