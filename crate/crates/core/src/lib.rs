//! Bounded game-semantics checker for the EVM dialect of Yul.

pub mod abi;
pub mod dialect;
pub mod eval;
pub mod game;
pub mod preprocess;
pub mod state;
pub mod word;
pub mod yul;

pub use word::{Address, Word};
