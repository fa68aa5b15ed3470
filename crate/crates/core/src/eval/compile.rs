use std::collections::HashMap;

use thiserror::Error;

use crate::dialect::Builtin;
use crate::word::Word;
use crate::yul::{Block, Expression, Literal, Statement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct CompileError(pub String);

/// No literal argument.
pub const NO_LIT: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instr {
    Push(Word),
    Load(u32),
    Store(u32),
    Builtin {
        op: Builtin,
        argc: u8,
        lit: u32,
    },
    Call(u32),
    Jump(u32),
    JumpIfZero(u32),
    /// Jumps when local `slot` equals `value`.
    JumpIfEq {
        slot: u32,
        value: Word,
        target: u32,
    },
    Pop,
    Ret,
}

#[derive(Debug, Clone, Default)]
pub struct Function {
    pub name: String,
    pub params: u32,
    pub returns: u32,
    /// Total local slots: params, then returns, then declared variables.
    pub locals: u32,
    pub code: Vec<Instr>,
}

/// A code block lowered to flat per-function instruction lists. Function 0 is
/// the block itself.
#[derive(Debug, Clone, Default)]
pub struct Program {
    pub functions: Vec<Function>,
    pub strings: Vec<String>,
}

struct Loop {
    breaks: Vec<usize>,
    continues: Vec<usize>,
}

#[derive(Default)]
struct FnBuilder {
    code: Vec<Instr>,
    vars: Vec<HashMap<String, u32>>,
    locals: u32,
    loops: Vec<Loop>,
}

impl FnBuilder {
    fn declare(&mut self, name: &str) -> u32 {
        let slot = self.locals;
        self.locals += 1;
        self.vars
            .last_mut()
            .expect("a scope is open")
            .insert(name.to_string(), slot);
        slot
    }

    fn temp(&mut self) -> u32 {
        let slot = self.locals;
        self.locals += 1;
        slot
    }

    fn lookup(&self, name: &str) -> Option<u32> {
        self.vars.iter().rev().find_map(|s| s.get(name).copied())
    }

    fn here(&self) -> u32 {
        self.code.len() as u32
    }

    fn patch(&mut self, at: usize, target: u32) {
        match &mut self.code[at] {
            Instr::Jump(t) | Instr::JumpIfZero(t) => *t = target,
            Instr::JumpIfEq { target: t, .. } => *t = target,
            _ => unreachable!("patching a non-jump"),
        }
    }
}

struct Compiler {
    program: Program,
    funcs: Vec<HashMap<String, u32>>,
    /// (params, returns) per function index.
    sigs: Vec<(usize, usize)>,
}

/// Lowers a code block into a [`Program`].
pub fn compile(block: &Block) -> Result<Program, CompileError> {
    let mut c = Compiler {
        program: Program::default(),
        funcs: Vec::new(),
        sigs: Vec::new(),
    };
    c.program.functions.push(Function {
        name: "<code>".into(),
        ..Function::default()
    });
    c.sigs.push((0, 0));
    let mut f = FnBuilder::default();
    c.block(block, &mut f)?;
    f.code.push(Instr::Ret);
    c.program.functions[0].locals = f.locals;
    c.program.functions[0].code = f.code;
    Ok(c.program)
}

impl Compiler {
    fn lookup_fn(&self, name: &str) -> Option<u32> {
        self.funcs.iter().rev().find_map(|s| s.get(name).copied())
    }

    fn block(&mut self, b: &Block, f: &mut FnBuilder) -> Result<(), CompileError> {
        f.vars.push(HashMap::new());
        self.statements(&b.statements, f)?;
        f.vars.pop();
        Ok(())
    }

    /// Compiles statements in the current variable scope, with their function
    /// definitions hoisted into a new function scope.
    fn statements(&mut self, stmts: &[Statement], f: &mut FnBuilder) -> Result<(), CompileError> {
        let defs: Vec<_> = stmts
            .iter()
            .filter_map(|s| match s {
                Statement::Function(d) => Some(d),
                _ => None,
            })
            .collect();
        let mut scope = HashMap::new();
        for d in &defs {
            let idx = self.program.functions.len() as u32;
            if scope.insert(d.name.clone(), idx).is_some() {
                return Err(CompileError(format!("function `{}` defined twice", d.name)));
            }
            self.program.functions.push(Function {
                name: d.name.clone(),
                params: d.params.len() as u32,
                returns: d.returns.len() as u32,
                ..Function::default()
            });
            self.sigs.push((d.params.len(), d.returns.len()));
        }
        self.funcs.push(scope);
        for d in &defs {
            let idx = self.lookup_fn(&d.name).expect("just registered");
            let mut g = FnBuilder::default();
            g.vars.push(HashMap::new());
            for p in d.params.iter().chain(d.returns.iter()) {
                g.declare(p);
            }
            self.block(&d.body, &mut g)?;
            g.code.push(Instr::Ret);
            let func = &mut self.program.functions[idx as usize];
            func.locals = g.locals;
            func.code = g.code;
        }
        for s in stmts {
            self.statement(s, f)?;
        }
        self.funcs.pop();
        Ok(())
    }

    fn statement(&mut self, s: &Statement, f: &mut FnBuilder) -> Result<(), CompileError> {
        match s {
            Statement::Let { names, value } => match value {
                Some(v) => {
                    let n = self.expr(v, f)?;
                    if n != names.len() {
                        return Err(CompileError(format!(
                            "`let {}` binds {} name(s) to {} value(s)",
                            names.join(", "),
                            names.len(),
                            n
                        )));
                    }
                    let slots: Vec<u32> = names.iter().map(|n| f.declare(n)).collect();
                    for slot in slots.into_iter().rev() {
                        f.code.push(Instr::Store(slot));
                    }
                }
                None => {
                    for n in names {
                        let slot = f.declare(n);
                        f.code.push(Instr::Push(Word::ZERO));
                        f.code.push(Instr::Store(slot));
                    }
                }
            },
            Statement::Assign { names, value } => {
                let n = self.expr(value, f)?;
                if n != names.len() {
                    return Err(CompileError(format!(
                        "assignment to {} name(s) from {} value(s)",
                        names.len(),
                        n
                    )));
                }
                let mut slots = Vec::new();
                for name in names {
                    slots.push(f.lookup(name).ok_or_else(|| {
                        CompileError(format!("assignment to undeclared `{name}`"))
                    })?);
                }
                for slot in slots.into_iter().rev() {
                    f.code.push(Instr::Store(slot));
                }
            }
            Statement::Expr(e) => {
                let n = self.expr(e, f)?;
                for _ in 0..n {
                    f.code.push(Instr::Pop);
                }
            }
            Statement::If { condition, body } => {
                self.expr1(condition, f)?;
                let jz = f.code.len();
                f.code.push(Instr::JumpIfZero(0));
                self.block(body, f)?;
                let end = f.here();
                f.patch(jz, end);
            }
            Statement::Switch {
                scrutinee,
                cases,
                default,
            } => {
                self.expr1(scrutinee, f)?;
                let slot = f.temp();
                f.code.push(Instr::Store(slot));
                let mut case_jumps = Vec::new();
                for c in cases {
                    case_jumps.push(f.code.len());
                    f.code.push(Instr::JumpIfEq {
                        slot,
                        value: c.value.value(),
                        target: 0,
                    });
                }
                let to_default = f.code.len();
                f.code.push(Instr::Jump(0));
                let mut ends = Vec::new();
                for (c, at) in cases.iter().zip(case_jumps) {
                    let start = f.here();
                    f.patch(at, start);
                    self.block(&c.body, f)?;
                    ends.push(f.code.len());
                    f.code.push(Instr::Jump(0));
                }
                let start = f.here();
                f.patch(to_default, start);
                if let Some(d) = default {
                    self.block(d, f)?;
                }
                let end = f.here();
                for at in ends {
                    f.patch(at, end);
                }
            }
            Statement::For {
                init,
                condition,
                post,
                body,
            } => {
                f.vars.push(HashMap::new());
                self.statements(&init.statements, f)?;
                self.loop_rest(condition, post, body, f)?;
                f.vars.pop();
            }
            Statement::Function(_) => {}
            Statement::Break | Statement::Continue => {
                let at = f.code.len();
                f.code.push(Instr::Jump(0));
                let l = f
                    .loops
                    .last_mut()
                    .ok_or_else(|| CompileError("break/continue outside a loop".into()))?;
                if matches!(s, Statement::Break) {
                    l.breaks.push(at);
                } else {
                    l.continues.push(at);
                }
            }
            Statement::Leave => f.code.push(Instr::Ret),
            Statement::Block(b) => self.block(b, f)?,
        }
        Ok(())
    }

    fn loop_rest(
        &mut self,
        condition: &Expression,
        post: &Block,
        body: &Block,
        f: &mut FnBuilder,
    ) -> Result<(), CompileError> {
        let start = f.here();
        self.expr1(condition, f)?;
        let exit = f.code.len();
        f.code.push(Instr::JumpIfZero(0));
        f.loops.push(Loop {
            breaks: Vec::new(),
            continues: Vec::new(),
        });
        self.block(body, f)?;
        let l = f.loops.pop().expect("pushed above");
        let cont = f.here();
        self.block(post, f)?;
        f.code.push(Instr::Jump(start));
        let end = f.here();
        f.patch(exit, end);
        for at in l.breaks {
            f.patch(at, end);
        }
        for at in l.continues {
            f.patch(at, cont);
        }
        Ok(())
    }

    fn expr1(&mut self, e: &Expression, f: &mut FnBuilder) -> Result<(), CompileError> {
        match self.expr(e, f)? {
            1 => Ok(()),
            n => Err(CompileError(format!(
                "expected one value, expression yields {n}"
            ))),
        }
    }

    /// Emits code for `e` and returns how many values it leaves on the stack.
    fn expr(&mut self, e: &Expression, f: &mut FnBuilder) -> Result<usize, CompileError> {
        match e {
            Expression::Literal(l) => {
                f.code.push(Instr::Push(l.value()));
                Ok(1)
            }
            Expression::Identifier(name) => {
                let slot = f
                    .lookup(name)
                    .ok_or_else(|| CompileError(format!("unbound identifier `{name}`")))?;
                f.code.push(Instr::Load(slot));
                Ok(1)
            }
            Expression::Call { name, args } => {
                if let Some(idx) = self.lookup_fn(name) {
                    let (params, returns) = self.sigs[idx as usize];
                    if args.len() != params {
                        return Err(CompileError(format!(
                            "`{name}` takes {params} argument(s), {} given",
                            args.len()
                        )));
                    }
                    for a in args {
                        self.expr1(a, f)?;
                    }
                    f.code.push(Instr::Call(idx));
                    return Ok(returns);
                }
                let op = Builtin::from_name(name)
                    .ok_or_else(|| CompileError(format!("call to undefined function `{name}`")))?;
                if args.len() != op.arity() {
                    return Err(CompileError(format!(
                        "`{name}` takes {} argument(s), {} given",
                        op.arity(),
                        args.len()
                    )));
                }
                let mut lit = NO_LIT;
                let mut argc = 0u8;
                for (i, a) in args.iter().enumerate() {
                    if Some(i) == op.literal_arg() {
                        let Expression::Literal(Literal::String(s)) = a else {
                            return Err(CompileError(format!(
                                "`{name}` needs a string literal argument"
                            )));
                        };
                        lit = self.program.strings.len() as u32;
                        self.program
                            .strings
                            .push(String::from_utf8_lossy(s).into_owned());
                    } else {
                        self.expr1(a, f)?;
                        argc += 1;
                    }
                }
                f.code.push(Instr::Builtin { op, argc, lit });
                Ok(op.returns())
            }
        }
    }
}
