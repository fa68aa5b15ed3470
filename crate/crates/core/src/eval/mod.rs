//! The Yul interpreter: code blocks are lowered to flat instruction lists and
//! run on a resumable machine.

mod compile;
mod machine;

pub use compile::{compile, CompileError, Function, Instr, Program};
pub use machine::{Machine, ResumeArity, RunResult};
