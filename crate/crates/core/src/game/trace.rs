use thiserror::Error;

use super::config::Move;
use super::explore::{Stats, Violation};
use super::step::Step;
use super::{Game, SetupError};
use crate::word::Address;

/// The textual counterexample: Opponent addresses, one line per recorded
/// move (all but the last followed by ` ->`), then the error line.
pub fn render_trace(opponents: &[Address], v: &Violation) -> String {
    let mut out = String::new();
    for op in opponents {
        out.push_str(&format!("[new opponent address: <{op}>]\n"));
    }
    let n = v.lines.len();
    for (i, l) in v.lines.iter().enumerate() {
        out.push_str(&l.text);
        if i + 1 < n {
            out.push_str(" ->");
        }
        out.push('\n');
    }
    out.push_str(&format!("ERROR! {}\n", v.message));
    out
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error(transparent)]
    Setup(#[from] SetupError),
    #[error("move {index} is not enabled in the configuration it is applied to")]
    NotEnabled { index: usize },
    #[error("the trace ended before move {index}")]
    Ended { index: usize },
    #[error("move {index} violated early: {message}")]
    Early { index: usize, message: String },
    #[error("the moves ran out without a violation")]
    NoViolation,
    #[error("interrupted")]
    Interrupted,
}

impl Game {
    /// Re-applies a recorded move sequence from the initial configuration,
    /// checking that each move is enabled when it is played, and returns the
    /// violation the last move produces.
    pub fn replay(&self, moves: &[Move]) -> Result<Violation, ReplayError> {
        let mut cfg = self.initial_config()?;
        let mut stats = Stats::default();
        for (index, mv) in moves.iter().enumerate() {
            if !self.moves(&cfg).contains(mv) {
                return Err(ReplayError::NotEnabled { index });
            }
            match self.apply(&mut cfg, mv, &mut stats, &|| false) {
                Step::Continue => {}
                Step::Dead => return Err(ReplayError::Ended { index }),
                Step::Interrupted => return Err(ReplayError::Interrupted),
                Step::Violation(message) if index + 1 == moves.len() => {
                    return Ok(Violation {
                        message,
                        lines: cfg.lines(),
                        moves: moves.to_vec(),
                    })
                }
                Step::Violation(message) => return Err(ReplayError::Early { index, message }),
            }
        }
        Err(ReplayError::NoViolation)
    }
}
