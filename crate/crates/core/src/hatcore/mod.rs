//! Configurations, scores, decision matrices and exact game evaluation.
//!
//! Players are numbered `1..=N` throughout the public API. Player 1 owns the
//! most significant bit of a configuration code; bit value 0 is a white hat and
//! 1 a black hat.

mod config;
mod matrix;
mod params;

pub use config::{HatConfig, ScoreVector};
pub use matrix::{
    evaluate_matrix, winning_configs, wins, Decision, DecisionMatrix, FreeRule, MatrixJson,
    PlayerRow,
};
pub(crate) use params::check_players;
pub use params::GameParams;
