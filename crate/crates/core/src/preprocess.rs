//! Yul-to-Yul passes run before analysis: hook injection, library linking and
//! legacy (wrapping) arithmetic.

use thiserror::Error;

use crate::word::Word;
use crate::yul::{
    contract_name, for_each_expr, for_each_expr_mut, Block, Expression, Literal, Statement,
    YulObject,
};

/// Hook name fragments and the opcode each one becomes, with its arity.
pub const HOOKS: &[(&str, &str, usize)] = &[
    ("__yult__assert", "ASSERT", 1),
    ("__yult__printHex", "PRINT_hex", 1),
    ("__yult__print", "PRINT", 1),
    ("__yult__print_signed", "PRINT_signed", 1),
    ("__yult__reveal_uint", "REVEAL_UINT", 1),
    ("__yult__reveal_addr", "REVEAL_ADDR", 1),
    ("__yult__ext_fund", "EXT_FUND", 2),
    ("__yult__impersonate_call", "IMPERSONATECALL", 8),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreprocessError {
    #[error("hook call `{callee}` passes {found} argument(s) but {opcode} takes {expected}")]
    HookArity {
        callee: String,
        opcode: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("no object found for library \"{0}\"")]
    UnresolvedLibrary(String),
}

/// The hook entry whose fragment is the longest one contained in `name`.
pub fn match_hook(name: &str) -> Option<(&'static str, usize)> {
    HOOKS
        .iter()
        .filter(|(frag, _, _)| name.contains(frag))
        .max_by_key(|(frag, _, _)| frag.len())
        .map(|&(_, op, arity)| (op, arity))
}

/// Rewrites every call to a hook function into the matching custom opcode.
pub fn inject_hooks(root: &mut YulObject) -> Result<(), PreprocessError> {
    let mut err = None;
    root.walk_mut(&mut |o| {
        for_each_expr_mut(&mut o.code, &mut |e| {
            if let Expression::Call { name, args } = e {
                if let Some((op, arity)) = match_hook(name) {
                    if args.len() != arity && err.is_none() {
                        err = Some(PreprocessError::HookArity {
                            callee: name.clone(),
                            opcode: op,
                            expected: arity,
                            found: args.len(),
                        });
                    }
                    *name = op.to_string();
                }
            }
        });
    });
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Libraries that must be deployed before the top-level constructor runs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinkPlan {
    /// (library id as written in `linkersymbol`, creation object name)
    pub entries: Vec<(String, String)>,
}

impl LinkPlan {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Collects every `linkersymbol` id and pairs it with the creation object of
/// the library it names. The tree itself is left unchanged.
pub fn link_libraries(root: &YulObject) -> Result<LinkPlan, PreprocessError> {
    let mut ids: Vec<String> = Vec::new();
    root.walk(&mut |o| {
        for_each_expr(&o.code, &mut |e| {
            if let Expression::Call { name, args } = e {
                if name == "linkersymbol" {
                    if let Some(Expression::Literal(Literal::String(s))) = args.first() {
                        let id = String::from_utf8_lossy(s).into_owned();
                        if !ids.contains(&id) {
                            ids.push(id);
                        }
                    }
                }
            }
        });
    });
    let mut names = Vec::new();
    root.walk(&mut |o| names.push(o.name.clone()));
    let mut plan = LinkPlan::default();
    for id in ids {
        let short = id.rsplit(':').next().unwrap_or(&id);
        let found = names
            .iter()
            .find(|n| !n.ends_with("_deployed") && contract_name(n) == short)
            .ok_or_else(|| PreprocessError::UnresolvedLibrary(id.clone()))?;
        plan.entries.push((id, found.clone()));
    }
    Ok(plan)
}

const CHECKED: &[(&str, &str)] = &[
    ("checked_add_", "add"),
    ("checked_sub_", "sub"),
    ("checked_mul_", "mul"),
    ("checked_div_", "div"),
    ("checked_exp_", "exp"),
];

/// Replaces the bodies of compiler-emitted checked arithmetic helpers with
/// the plain wrapping opcode. Division keeps its zero-divisor guard.
pub fn strip_checked_arithmetic(root: &mut YulObject) {
    root.walk_mut(&mut |o| strip_block(&mut o.code));
}

fn strip_block(b: &mut Block) {
    for s in &mut b.statements {
        match s {
            Statement::Function(f) => {
                strip_block(&mut f.body);
                if let Some(body) = wrapping_body(&f.name, &f.params, &f.returns, &f.body) {
                    f.body = body;
                }
            }
            Statement::Block(inner) => strip_block(inner),
            _ => {}
        }
    }
}

/// Width and signedness of the first `t_intN`/`t_uintN` in a helper name.
fn operand_type(name: &str) -> Option<(bool, u32)> {
    let i = name.find("t_")?;
    let rest = &name[i + 2..];
    let (signed, digits) = if let Some(r) = rest.strip_prefix("uint") {
        (false, r)
    } else {
        let r = rest.strip_prefix("int")?;
        (true, r)
    };
    let n: String = digits.chars().take_while(|c| c.is_ascii_digit()).collect();
    n.parse().ok().map(|bits| (signed, bits))
}

fn wrapping_body(name: &str, params: &[String], returns: &[String], old: &Block) -> Option<Block> {
    let &(prefix, op) = CHECKED.iter().find(|(p, _)| name.starts_with(p))?;
    if params.len() != 2 || returns.len() != 1 {
        return None;
    }
    let ty = operand_type(&name[prefix.len()..]);
    let signed = ty.is_some_and(|t| t.0);
    let op = if op == "div" && signed { "sdiv" } else { op };
    let x = Expression::ident(params[0].clone());
    let y = Expression::ident(params[1].clone());
    let mut value = Expression::call(op, vec![x, y.clone()]);
    match ty {
        Some((false, bits)) if bits < 256 && bits > 0 => {
            let mask = (Word::from(1u8) << bits as usize) - Word::from(1u8);
            value = Expression::call(
                "and",
                vec![value, Expression::Literal(Literal::Number(mask))],
            );
        }
        Some((true, bits)) if bits < 256 && bits > 0 => {
            let k = Word::from(bits / 8 - 1);
            value = Expression::call(
                "signextend",
                vec![Expression::Literal(Literal::Number(k)), value],
            );
        }
        _ => {}
    }
    let mut stmts = Vec::new();
    if op == "div" || op == "sdiv" {
        let guard = Expression::call("iszero", vec![y]);
        for s in &old.statements {
            if let Statement::If { condition, .. } = s {
                if *condition == guard {
                    stmts.push(s.clone());
                }
            }
        }
    }
    stmts.push(Statement::Assign {
        names: vec![returns[0].clone()],
        value,
    });
    Some(Block::new(stmts))
}
