//! Seeded game simulation.

pub mod game;
pub mod layout;
pub mod rng;

pub use game::{resolve_kick, run_game, GameRecord, KickEvent, KickOutcome, KickResult, LossCause, Outcome, MAX_KICKS};
pub use layout::{generate_attack_layout, generate_random_layout, LayoutKind};
pub use rng::{derive_seed, game_stream, Rng};
