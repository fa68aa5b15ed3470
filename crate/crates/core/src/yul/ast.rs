use crate::word::{word_from_padded, Word};

/// A Yul object: a code block plus nested objects and data segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YulObject {
    pub name: String,
    /// Assigned by [`super::index_objects`]; zero straight after parsing.
    pub id: Word,
    pub code: Block,
    pub subobjects: Vec<YulObject>,
    pub data: Vec<DataSegment>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataSegment {
    pub name: String,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Block {
    pub statements: Vec<Statement>,
}

impl Block {
    pub fn new(statements: Vec<Statement>) -> Self {
        Block { statements }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Let {
        names: Vec<String>,
        value: Option<Expression>,
    },
    Assign {
        names: Vec<String>,
        value: Expression,
    },
    Expr(Expression),
    If {
        condition: Expression,
        body: Block,
    },
    Switch {
        scrutinee: Expression,
        cases: Vec<Case>,
        default: Option<Block>,
    },
    For {
        init: Block,
        condition: Expression,
        post: Block,
        body: Block,
    },
    Function(FunctionDef),
    Break,
    Continue,
    Leave,
    Block(Block),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub value: Literal,
    pub body: Block,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionDef {
    pub name: String,
    pub params: Vec<String>,
    pub returns: Vec<String>,
    pub body: Block,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    Call { name: String, args: Vec<Expression> },
    Identifier(String),
    Literal(Literal),
}

impl Expression {
    pub fn call(name: impl Into<String>, args: Vec<Expression>) -> Self {
        Expression::Call {
            name: name.into(),
            args,
        }
    }

    pub fn ident(name: impl Into<String>) -> Self {
        Expression::Identifier(name.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Number(Word),
    Bool(bool),
    /// Raw bytes of a quoted string, escapes resolved.
    String(Vec<u8>),
    HexString(Vec<u8>),
}

impl Literal {
    /// The literal as a machine word. Strings and hex strings are left-aligned.
    pub fn value(&self) -> Word {
        match self {
            Literal::Number(w) => *w,
            Literal::Bool(b) => crate::word::bool_word(*b),
            Literal::String(s) | Literal::HexString(s) => word_from_padded(s),
        }
    }

    pub fn as_text(&self) -> Option<String> {
        match self {
            Literal::String(s) => Some(String::from_utf8_lossy(s).into_owned()),
            _ => None,
        }
    }
}

impl YulObject {
    /// Depth-first walk over this object and every nested object.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a YulObject)) {
        f(self);
        for sub in &self.subobjects {
            sub.walk(f);
        }
    }

    pub fn walk_mut(&mut self, f: &mut dyn FnMut(&mut YulObject)) {
        f(self);
        for sub in &mut self.subobjects {
            sub.walk_mut(f);
        }
    }

    pub fn find(&self, name: &str) -> Option<&YulObject> {
        if self.name == name {
            return Some(self);
        }
        self.subobjects.iter().find_map(|s| s.find(name))
    }
}

/// Visits every expression in a block, innermost calls first.
pub fn for_each_expr_mut(block: &mut Block, f: &mut dyn FnMut(&mut Expression)) {
    for stmt in &mut block.statements {
        stmt_exprs_mut(stmt, f);
    }
}

fn stmt_exprs_mut(stmt: &mut Statement, f: &mut dyn FnMut(&mut Expression)) {
    match stmt {
        Statement::Let { value, .. } => {
            if let Some(v) = value {
                expr_mut(v, f);
            }
        }
        Statement::Assign { value, .. } | Statement::Expr(value) => expr_mut(value, f),
        Statement::If { condition, body } => {
            expr_mut(condition, f);
            for_each_expr_mut(body, f);
        }
        Statement::Switch {
            scrutinee,
            cases,
            default,
        } => {
            expr_mut(scrutinee, f);
            for c in cases {
                for_each_expr_mut(&mut c.body, f);
            }
            if let Some(d) = default {
                for_each_expr_mut(d, f);
            }
        }
        Statement::For {
            init,
            condition,
            post,
            body,
        } => {
            for_each_expr_mut(init, f);
            expr_mut(condition, f);
            for_each_expr_mut(post, f);
            for_each_expr_mut(body, f);
        }
        Statement::Function(def) => for_each_expr_mut(&mut def.body, f),
        Statement::Block(b) => for_each_expr_mut(b, f),
        Statement::Break | Statement::Continue | Statement::Leave => {}
    }
}

fn expr_mut(e: &mut Expression, f: &mut dyn FnMut(&mut Expression)) {
    if let Expression::Call { args, .. } = e {
        for a in args.iter_mut() {
            expr_mut(a, f);
        }
    }
    f(e);
}

/// Visits every expression in a block (read-only).
pub fn for_each_expr<'a>(block: &'a Block, f: &mut dyn FnMut(&'a Expression)) {
    fn expr<'a>(e: &'a Expression, f: &mut dyn FnMut(&'a Expression)) {
        if let Expression::Call { args, .. } = e {
            for a in args {
                expr(a, f);
            }
        }
        f(e);
    }
    for stmt in &block.statements {
        match stmt {
            Statement::Let { value, .. } => {
                if let Some(v) = value {
                    expr(v, f);
                }
            }
            Statement::Assign { value, .. } | Statement::Expr(value) => expr(value, f),
            Statement::If { condition, body } => {
                expr(condition, f);
                for_each_expr(body, f);
            }
            Statement::Switch {
                scrutinee,
                cases,
                default,
            } => {
                expr(scrutinee, f);
                for c in cases {
                    for_each_expr(&c.body, f);
                }
                if let Some(d) = default {
                    for_each_expr(d, f);
                }
            }
            Statement::For {
                init,
                condition,
                post,
                body,
            } => {
                for_each_expr(init, f);
                expr(condition, f);
                for_each_expr(post, f);
                for_each_expr(body, f);
            }
            Statement::Function(def) => for_each_expr(&def.body, f),
            Statement::Block(b) => for_each_expr(b, f),
            Statement::Break | Statement::Continue | Statement::Leave => {}
        }
    }
}
