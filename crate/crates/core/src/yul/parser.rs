use super::ast::*;
use super::lexer::{Lexer, Tok, Token};
use super::SyntaxError;
use crate::word::Word;

/// Builtins whose arguments are compile-time string literals naming an object,
/// library or immutable; these may exceed 32 bytes.
fn literal_arg_allowed(callee: &str, index: usize) -> bool {
    matches!(
        (callee, index),
        ("dataoffset", 0)
            | ("datasize", 0)
            | ("linkersymbol", 0)
            | ("loadimmutable", 0)
            | ("setimmutable", 1)
    )
}

/// Parses a Yul source file containing one top-level object.
pub fn parse_object(text: &str) -> Result<YulObject, SyntaxError> {
    let tokens = Lexer::new(text).tokenize()?;
    let mut p = Parser {
        tokens,
        pos: 0,
        loop_depth: 0,
        in_function: false,
    };
    let obj = p.object()?;
    if !matches!(p.peek().tok, Tok::Eof) {
        return Err(p.err_here("trailing input after top-level object"));
    }
    Ok(obj)
}

/// Parses a bare code block, e.g. `{ let x := 1 }`.
pub fn parse_block(text: &str) -> Result<Block, SyntaxError> {
    let tokens = Lexer::new(text).tokenize()?;
    let mut p = Parser {
        tokens,
        pos: 0,
        loop_depth: 0,
        in_function: false,
    };
    let b = p.block()?;
    if !matches!(p.peek().tok, Tok::Eof) {
        return Err(p.err_here("trailing input after block"));
    }
    Ok(b)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    loop_depth: usize,
    in_function: bool,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek2(&self) -> &Tok {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, t: &Token, msg: impl Into<String>) -> SyntaxError {
        SyntaxError {
            line: t.line,
            col: t.col,
            message: msg.into(),
        }
    }

    fn err_here(&self, msg: impl Into<String>) -> SyntaxError {
        self.err_at(self.peek(), msg)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token, SyntaxError> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else if t.tok == Tok::Eof {
            Err(self.err_at(&t, format!("unexpected end of input, expected {what}")))
        } else {
            Err(self.err_at(&t, format!("expected {what}, found {}", describe(&t.tok))))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(()),
            other => Err(self.err_at(&t, format!("expected '{kw}', found {}", describe(other)))),
        }
    }

    fn ident(&mut self) -> Result<String, SyntaxError> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) if !is_reserved(&s) => {
                self.skip_type_annotation()?;
                Ok(s)
            }
            other => Err(pos_err(
                t.line,
                t.col,
                format!("expected identifier, found {}", describe(&other)),
            )),
        }
    }

    fn skip_type_annotation(&mut self) -> Result<(), SyntaxError> {
        if self.peek().tok == Tok::Colon {
            self.next();
            let t = self.next();
            if !matches!(t.tok, Tok::Ident(_)) {
                return Err(self.err_at(&t, "expected type name after ':'"));
            }
        }
        Ok(())
    }

    fn string_lit(&mut self, what: &str) -> Result<String, SyntaxError> {
        let t = self.next();
        match t.tok {
            Tok::Str(s) => Ok(String::from_utf8_lossy(&s).into_owned()),
            other => Err(pos_err(
                t.line,
                t.col,
                format!("expected {what}, found {}", describe(&other)),
            )),
        }
    }

    fn object(&mut self) -> Result<YulObject, SyntaxError> {
        self.keyword("object")?;
        let name = self.string_lit("object name")?;
        let open = self.expect(Tok::LBrace, "'{'")?;
        self.keyword("code")?;
        let code = self.block()?;
        let mut subobjects = Vec::new();
        let mut data = Vec::new();
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::RBrace => {
                    self.next();
                    break;
                }
                Tok::Ident(k) if k == "object" => subobjects.push(self.object()?),
                Tok::Ident(k) if k == "data" => {
                    self.next();
                    let dname = self.string_lit("data segment name")?;
                    let v = self.next();
                    let bytes = match v.tok {
                        Tok::Hex(b) | Tok::Str(b) => b,
                        other => {
                            return Err(pos_err(
                                v.line,
                                v.col,
                                format!("expected data literal, found {}", describe(&other)),
                            ))
                        }
                    };
                    data.push(DataSegment { name: dname, bytes });
                }
                Tok::Eof => {
                    return Err(self.err_at(
                        &t,
                        format!(
                            "unexpected end of input: unclosed object \"{name}\" opened at {}:{}",
                            open.line, open.col
                        ),
                    ))
                }
                other => {
                    return Err(self.err_at(
                        &t,
                        format!(
                            "expected 'object', 'data' or '}}', found {}",
                            describe(other)
                        ),
                    ))
                }
            }
        }
        Ok(YulObject {
            name,
            id: Word::ZERO,
            code,
            subobjects,
            data,
        })
    }

    fn block(&mut self) -> Result<Block, SyntaxError> {
        let open = self.expect(Tok::LBrace, "'{'")?;
        let mut statements = Vec::new();
        loop {
            match &self.peek().tok {
                Tok::RBrace => {
                    self.next();
                    return Ok(Block { statements });
                }
                Tok::Eof => {
                    return Err(self.err_here(format!(
                        "unexpected end of input: unclosed block opened at {}:{}",
                        open.line, open.col
                    )))
                }
                _ => statements.push(self.statement()?),
            }
        }
    }

    fn statement(&mut self) -> Result<Statement, SyntaxError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::LBrace => Ok(Statement::Block(self.block()?)),
            Tok::Ident(k) => match k.as_str() {
                "let" => {
                    self.next();
                    let names = self.ident_list()?;
                    let value = if self.peek().tok == Tok::Assign {
                        self.next();
                        Some(self.expression()?)
                    } else {
                        None
                    };
                    Ok(Statement::Let { names, value })
                }
                "if" => {
                    self.next();
                    let condition = self.expression()?;
                    let body = self.block()?;
                    Ok(Statement::If { condition, body })
                }
                "switch" => self.switch(),
                "for" => {
                    self.next();
                    let saved = self.loop_depth;
                    self.loop_depth = 0;
                    let init = self.block()?;
                    self.loop_depth = saved;
                    let condition = self.expression()?;
                    self.loop_depth = 0;
                    let post = self.block()?;
                    self.loop_depth = saved + 1;
                    let body = self.block()?;
                    self.loop_depth = saved;
                    Ok(Statement::For {
                        init,
                        condition,
                        post,
                        body,
                    })
                }
                "function" => {
                    self.next();
                    let name = self.ident()?;
                    self.expect(Tok::LParen, "'('")?;
                    let params = if self.peek().tok == Tok::RParen {
                        Vec::new()
                    } else {
                        self.ident_list()?
                    };
                    self.expect(Tok::RParen, "')'")?;
                    let returns = if self.peek().tok == Tok::Arrow {
                        self.next();
                        self.ident_list()?
                    } else {
                        Vec::new()
                    };
                    let (saved_loop, saved_fn) = (self.loop_depth, self.in_function);
                    self.loop_depth = 0;
                    self.in_function = true;
                    let body = self.block()?;
                    self.loop_depth = saved_loop;
                    self.in_function = saved_fn;
                    Ok(Statement::Function(FunctionDef {
                        name,
                        params,
                        returns,
                        body,
                    }))
                }
                "break" | "continue" => {
                    self.next();
                    if self.loop_depth == 0 {
                        return Err(self.err_at(&t, format!("'{k}' outside of a for-loop body")));
                    }
                    Ok(if k == "break" {
                        Statement::Break
                    } else {
                        Statement::Continue
                    })
                }
                "leave" => {
                    self.next();
                    if !self.in_function {
                        return Err(self.err_at(&t, "'leave' outside of a function body"));
                    }
                    Ok(Statement::Leave)
                }
                "true" | "false" => Err(self.err_at(&t, "literal is not a statement")),
                _ => {
                    if matches!(self.peek2(), Tok::Assign | Tok::Comma | Tok::Colon) {
                        let names = self.ident_list()?;
                        self.expect(Tok::Assign, "':='")?;
                        let value = self.expression()?;
                        Ok(Statement::Assign { names, value })
                    } else {
                        let e = self.expression()?;
                        if !matches!(e, Expression::Call { .. }) {
                            return Err(self.err_at(&t, "expression statement must be a call"));
                        }
                        Ok(Statement::Expr(e))
                    }
                }
            },
            other => Err(self.err_at(&t, format!("expected statement, found {}", describe(other)))),
        }
    }

    fn switch(&mut self) -> Result<Statement, SyntaxError> {
        self.next();
        let scrutinee = self.expression()?;
        let mut cases = Vec::new();
        let mut default = None;
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Ident(k) if k == "case" => {
                    if default.is_some() {
                        return Err(self.err_at(&t, "'case' after 'default'"));
                    }
                    self.next();
                    let lt = self.next();
                    let value = self.literal_from(&lt, None)?;
                    if cases
                        .iter()
                        .any(|c: &Case| c.value.value() == value.value())
                    {
                        return Err(self.err_at(&lt, "duplicate case value"));
                    }
                    let body = self.block()?;
                    cases.push(Case { value, body });
                }
                Tok::Ident(k) if k == "default" => {
                    if default.is_some() {
                        return Err(self.err_at(&t, "duplicate 'default'"));
                    }
                    self.next();
                    default = Some(self.block()?);
                }
                _ => break,
            }
        }
        if cases.is_empty() && default.is_none() {
            return Err(self.err_here("switch without cases"));
        }
        Ok(Statement::Switch {
            scrutinee,
            cases,
            default,
        })
    }

    fn ident_list(&mut self) -> Result<Vec<String>, SyntaxError> {
        let mut names = vec![self.ident()?];
        while self.peek().tok == Tok::Comma {
            self.next();
            names.push(self.ident()?);
        }
        Ok(names)
    }

    fn literal_from(
        &mut self,
        t: &Token,
        callee: Option<(&str, usize)>,
    ) -> Result<Literal, SyntaxError> {
        let lit = match &t.tok {
            Tok::Number(w) => Literal::Number(*w),
            Tok::Ident(s) if s == "true" => Literal::Bool(true),
            Tok::Ident(s) if s == "false" => Literal::Bool(false),
            Tok::Str(s) => {
                let allowed = callee.is_some_and(|(c, i)| literal_arg_allowed(c, i));
                if s.len() > 32 && !allowed {
                    return Err(self.err_at(t, "string literal longer than 32 bytes"));
                }
                Literal::String(s.clone())
            }
            Tok::Hex(b) => {
                if b.len() > 32 {
                    return Err(self.err_at(t, "hex literal longer than 32 bytes"));
                }
                Literal::HexString(b.clone())
            }
            other => {
                return Err(self.err_at(t, format!("expected literal, found {}", describe(other))))
            }
        };
        self.skip_type_annotation()?;
        Ok(lit)
    }

    fn expression(&mut self) -> Result<Expression, SyntaxError> {
        self.expression_in(None)
    }

    fn expression_in(&mut self, callee: Option<(&str, usize)>) -> Result<Expression, SyntaxError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s != "true" && s != "false" => {
                if is_reserved(s) {
                    return Err(self.err_at(&t, format!("unexpected keyword '{s}'")));
                }
                if self.peek().tok == Tok::LParen {
                    self.next();
                    let name = s.clone();
                    let mut args = Vec::new();
                    if self.peek().tok != Tok::RParen {
                        loop {
                            args.push(self.expression_in(Some((&name, args.len())))?);
                            if self.peek().tok == Tok::Comma {
                                self.next();
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expression::Call { name, args })
                } else {
                    self.skip_type_annotation()?;
                    Ok(Expression::Identifier(s.clone()))
                }
            }
            Tok::Eof => Err(self.err_at(&t, "unexpected end of input, expected expression")),
            _ => Ok(Expression::Literal(self.literal_from(&t, callee)?)),
        }
    }
}

fn pos_err(line: usize, col: usize, msg: impl Into<String>) -> SyntaxError {
    SyntaxError {
        line,
        col,
        message: msg.into(),
    }
}

fn is_reserved(s: &str) -> bool {
    matches!(
        s,
        "let"
            | "if"
            | "switch"
            | "case"
            | "default"
            | "for"
            | "function"
            | "break"
            | "continue"
            | "leave"
    )
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::LBrace => "'{'".into(),
        Tok::RBrace => "'}'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Colon => "':'".into(),
        Tok::Assign => "':='".into(),
        Tok::Arrow => "'->'".into(),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Number(n) => format!("number {n}"),
        Tok::Str(_) => "string literal".into(),
        Tok::Hex(_) => "hex literal".into(),
        Tok::Eof => "end of input".into(),
    }
}
