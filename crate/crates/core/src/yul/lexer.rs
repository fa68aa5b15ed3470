use super::SyntaxError;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Assign,
    Arrow,
    Ident(String),
    Number(Word),
    Str(Vec<u8>),
    Hex(Vec<u8>),
    Eof,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    pub fn tokenize(mut self) -> Result<Vec<Token>, SyntaxError> {
        let mut out = Vec::new();
        loop {
            let t = self.next_token()?;
            let eof = t.tok == Tok::Eof;
            out.push(t);
            if eof {
                return Ok(out);
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, off: usize) -> Option<u8> {
        self.src.get(self.pos + off).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> SyntaxError {
        SyntaxError {
            line,
            col,
            message: msg.into(),
        }
    }

    fn skip_trivia(&mut self) -> Result<(), SyntaxError> {
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b'/') if self.peek_at(1) == Some(b'/') => {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                Some(b'/') if self.peek_at(1) == Some(b'*') => {
                    let (line, col) = (self.line, self.col);
                    self.bump();
                    self.bump();
                    loop {
                        match self.bump() {
                            None => return Err(self.err(line, col, "unterminated block comment")),
                            Some(b'*') if self.peek() == Some(b'/') => {
                                self.bump();
                                break;
                            }
                            _ => {}
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn next_token(&mut self) -> Result<Token, SyntaxError> {
        self.skip_trivia()?;
        let (line, col) = (self.line, self.col);
        let mk = |tok| Token { tok, line, col };
        let Some(c) = self.peek() else {
            return Ok(mk(Tok::Eof));
        };
        let tok = match c {
            b'{' => {
                self.bump();
                Tok::LBrace
            }
            b'}' => {
                self.bump();
                Tok::RBrace
            }
            b'(' => {
                self.bump();
                Tok::LParen
            }
            b')' => {
                self.bump();
                Tok::RParen
            }
            b',' => {
                self.bump();
                Tok::Comma
            }
            b':' => {
                self.bump();
                if self.peek() == Some(b'=') {
                    self.bump();
                    Tok::Assign
                } else {
                    Tok::Colon
                }
            }
            b'-' if self.peek_at(1) == Some(b'>') => {
                self.bump();
                self.bump();
                Tok::Arrow
            }
            b'"' | b'\'' => Tok::Str(self.string(c, line, col)?),
            b'0'..=b'9' => Tok::Number(self.number(line, col)?),
            c if is_ident_start(c) => {
                let ident = self.ident();
                if ident == "hex" && matches!(self.peek(), Some(b'"') | Some(b'\'')) {
                    let q = self.peek().unwrap_or(b'"');
                    Tok::Hex(self.hex_string(q, line, col)?)
                } else {
                    Tok::Ident(ident)
                }
            }
            other => {
                return Err(self.err(
                    line,
                    col,
                    format!("unexpected character '{}'", other as char),
                ))
            }
        };
        Ok(mk(tok))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if is_ident_continue(c) {
                self.bump();
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn number(&mut self, line: usize, col: usize) -> Result<Word, SyntaxError> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() {
                self.bump();
            } else {
                break;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        let parsed = if let Some(hex) = text.strip_prefix("0x") {
            if hex.is_empty() || hex.len() > 64 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
                None
            } else {
                Word::from_str_radix(hex, 16).ok()
            }
        } else if text.bytes().all(|b| b.is_ascii_digit()) {
            Word::from_str_radix(text, 10).ok()
        } else {
            None
        };
        parsed.ok_or_else(|| self.err(line, col, format!("invalid number literal '{text}'")))
    }

    fn string(&mut self, quote: u8, line: usize, col: usize) -> Result<Vec<u8>, SyntaxError> {
        self.bump();
        let mut out = Vec::new();
        loop {
            match self.bump() {
                None | Some(b'\n') => {
                    return Err(self.err(line, col, "unterminated string literal"))
                }
                Some(c) if c == quote => return Ok(out),
                Some(b'\\') => {
                    let esc = self
                        .bump()
                        .ok_or_else(|| self.err(line, col, "unterminated string literal"))?;
                    match esc {
                        b'n' => out.push(b'\n'),
                        b'r' => out.push(b'\r'),
                        b't' => out.push(b'\t'),
                        b'\\' => out.push(b'\\'),
                        b'"' => out.push(b'"'),
                        b'\'' => out.push(b'\''),
                        b'\n' => {}
                        b'x' => {
                            let hi = self.bump().and_then(hex_val);
                            let lo = self.bump().and_then(hex_val);
                            match (hi, lo) {
                                (Some(h), Some(l)) => out.push(h << 4 | l),
                                _ => return Err(self.err(self.line, self.col, "bad \\x escape")),
                            }
                        }
                        b'u' => {
                            let mut v = 0u32;
                            for _ in 0..4 {
                                let d = self.bump().and_then(hex_val).ok_or_else(|| {
                                    self.err(self.line, self.col, "bad \\u escape")
                                })?;
                                v = v << 4 | u32::from(d);
                            }
                            let ch = char::from_u32(v)
                                .ok_or_else(|| self.err(self.line, self.col, "bad \\u escape"))?;
                            let mut buf = [0u8; 4];
                            out.extend_from_slice(ch.encode_utf8(&mut buf).as_bytes());
                        }
                        other => {
                            return Err(self.err(
                                self.line,
                                self.col,
                                format!("unknown escape '\\{}'", other as char),
                            ))
                        }
                    }
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn hex_string(&mut self, quote: u8, line: usize, col: usize) -> Result<Vec<u8>, SyntaxError> {
        self.bump();
        let mut digits = Vec::new();
        loop {
            match self.bump() {
                None => return Err(self.err(line, col, "unterminated hex literal")),
                Some(c) if c == quote => break,
                Some(b'_') => {}
                Some(c) => digits.push(
                    hex_val(c)
                        .ok_or_else(|| self.err(line, col, "invalid digit in hex literal"))?,
                ),
            }
        }
        if digits.len() % 2 != 0 {
            return Err(self.err(line, col, "hex literal has an odd number of digits"));
        }
        Ok(digits.chunks(2).map(|p| p[0] << 4 | p[1]).collect())
    }
}

fn hex_val(c: u8) -> Option<u8> {
    (c as char).to_digit(16).map(|d| d as u8)
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_' || c == b'$'
}

fn is_ident_continue(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'$' || c == b'.'
}
