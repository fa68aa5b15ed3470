use std::sync::Arc;

use super::compile::{Instr, Program, NO_LIT};
use crate::dialect::{exec, CallContext, ControlEvent, Fault, Halt, Host, Outcome};
use crate::state::World;
use crate::word::Word;

/// How a run of the machine ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunResult {
    /// Suspended on a control-passing builtin; call [`Machine::resume`] with
    /// its result values before running again.
    Stuck(ControlEvent),
    Halted(Halt),
    Fault(Fault),
    /// The interrupt callback asked to stop.
    Interrupted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Activation {
    func: u32,
    pc: u32,
    base: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("resumed with {given} value(s), the suspended builtin yields {expected}")]
pub struct ResumeArity {
    pub expected: usize,
    pub given: usize,
}

/// A suspendable interpreter over one compiled code block. Plain data, so a
/// suspended machine can be cloned or sent to another thread.
#[derive(Debug, Clone)]
pub struct Machine {
    program: Arc<Program>,
    frames: Vec<Activation>,
    locals: Vec<Word>,
    stack: Vec<Word>,
    /// Result count owed by the builtin we are suspended on.
    pending: Option<usize>,
}

const INTERRUPT_EVERY: u32 = 1 << 14;

impl Machine {
    pub fn new(program: Arc<Program>) -> Self {
        let n = program.functions[0].locals as usize;
        Machine {
            program,
            frames: vec![Activation {
                func: 0,
                pc: 0,
                base: 0,
            }],
            locals: vec![Word::ZERO; n],
            stack: Vec::new(),
            pending: None,
        }
    }

    pub fn is_suspended(&self) -> bool {
        self.pending.is_some()
    }

    /// Supplies the results of the builtin the machine is suspended on.
    pub fn resume(&mut self, values: &[Word]) -> Result<(), ResumeArity> {
        let expected = self.pending.unwrap_or(0);
        if values.len() != expected {
            return Err(ResumeArity {
                expected,
                given: values.len(),
            });
        }
        self.stack.extend_from_slice(values);
        self.pending = None;
        Ok(())
    }

    /// Runs until a halt, fault or control event.
    pub fn run(
        &mut self,
        ctx: &mut CallContext,
        world: &mut World,
        host: &Host<'_>,
        interrupt: &dyn Fn() -> bool,
    ) -> RunResult {
        let program = Arc::clone(&self.program);
        let mut budget = INTERRUPT_EVERY;
        loop {
            budget -= 1;
            if budget == 0 {
                budget = INTERRUPT_EVERY;
                if interrupt() {
                    return RunResult::Interrupted;
                }
            }
            let Some(act) = self.frames.last_mut() else {
                return RunResult::Halted(Halt::Stop);
            };
            let func = &program.functions[act.func as usize];
            let instr = &func.code[act.pc as usize];
            act.pc += 1;
            let base = act.base as usize;
            match instr {
                Instr::Push(w) => self.stack.push(*w),
                Instr::Load(s) => self.stack.push(self.locals[base + *s as usize]),
                Instr::Store(s) => {
                    let v = self.stack.pop().expect("operand on stack");
                    self.locals[base + *s as usize] = v;
                }
                Instr::Pop => {
                    self.stack.pop();
                }
                Instr::Jump(t) => act.pc = *t,
                Instr::JumpIfZero(t) => {
                    if self.stack.pop().expect("condition on stack").is_zero() {
                        act.pc = *t;
                    }
                }
                Instr::JumpIfEq {
                    slot,
                    value,
                    target,
                } => {
                    if self.locals[base + *slot as usize] == *value {
                        act.pc = *target;
                    }
                }
                Instr::Call(idx) => {
                    let callee = &program.functions[*idx as usize];
                    let new_base = self.locals.len();
                    self.locals
                        .resize(new_base + callee.locals as usize, Word::ZERO);
                    let p = callee.params as usize;
                    let args_at = self.stack.len() - p;
                    self.locals[new_base..new_base + p].copy_from_slice(&self.stack[args_at..]);
                    self.stack.truncate(args_at);
                    self.frames.push(Activation {
                        func: *idx,
                        pc: 0,
                        base: new_base as u32,
                    });
                }
                Instr::Ret => {
                    let r0 = base + func.params as usize;
                    let r1 = r0 + func.returns as usize;
                    self.stack.extend_from_slice(&self.locals[r0..r1]);
                    self.locals.truncate(base);
                    self.frames.pop();
                    if self.frames.is_empty() {
                        return RunResult::Halted(Halt::Stop);
                    }
                }
                Instr::Builtin { op, argc, lit } => {
                    let at = self.stack.len() - *argc as usize;
                    let lit = (*lit != NO_LIT).then(|| program.strings[*lit as usize].as_str());
                    let result = exec(*op, &self.stack[at..], lit, ctx, world, host);
                    self.stack.truncate(at);
                    match result {
                        Ok(Outcome::Value(v)) => self.stack.push(v),
                        Ok(Outcome::Done) => {}
                        Ok(Outcome::Event(e)) => {
                            self.pending = Some(op.returns());
                            return RunResult::Stuck(e);
                        }
                        Ok(Outcome::Halt(h)) => {
                            self.frames.clear();
                            return RunResult::Halted(h);
                        }
                        Err(f) => {
                            self.frames.clear();
                            return RunResult::Fault(f);
                        }
                    }
                }
            }
        }
    }
}
