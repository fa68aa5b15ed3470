use std::fmt::Write;

use super::ast::*;

/// Renders an object tree back to Yul source text.
pub fn render(object: &YulObject) -> String {
    let mut out = String::new();
    render_object(object, 0, &mut out);
    out
}

/// Renders a single block at indentation level zero.
pub fn render_block(block: &Block) -> String {
    let mut out = String::new();
    write_block(block, 0, &mut out);
    out.push('\n');
    out
}

fn indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("    ");
    }
}

fn render_object(o: &YulObject, level: usize, out: &mut String) {
    indent(level, out);
    let _ = writeln!(out, "object {} {{", quote(o.name.as_bytes()));
    indent(level + 1, out);
    out.push_str("code ");
    write_block(&o.code, level + 1, out);
    out.push('\n');
    for sub in &o.subobjects {
        render_object(sub, level + 1, out);
    }
    for d in &o.data {
        indent(level + 1, out);
        let _ = writeln!(
            out,
            "data {} hex\"{}\"",
            quote(d.name.as_bytes()),
            hex(&d.bytes)
        );
    }
    indent(level, out);
    out.push_str("}\n");
}

fn write_block(b: &Block, level: usize, out: &mut String) {
    if b.statements.is_empty() {
        out.push_str("{ }");
        return;
    }
    out.push_str("{\n");
    for s in &b.statements {
        indent(level + 1, out);
        write_stmt(s, level + 1, out);
        out.push('\n');
    }
    indent(level, out);
    out.push('}');
}

fn write_stmt(s: &Statement, level: usize, out: &mut String) {
    match s {
        Statement::Let { names, value } => {
            let _ = write!(out, "let {}", names.join(", "));
            if let Some(v) = value {
                out.push_str(" := ");
                write_expr(v, out);
            }
        }
        Statement::Assign { names, value } => {
            let _ = write!(out, "{} := ", names.join(", "));
            write_expr(value, out);
        }
        Statement::Expr(e) => write_expr(e, out),
        Statement::If { condition, body } => {
            out.push_str("if ");
            write_expr(condition, out);
            out.push(' ');
            write_block(body, level, out);
        }
        Statement::Switch {
            scrutinee,
            cases,
            default,
        } => {
            out.push_str("switch ");
            write_expr(scrutinee, out);
            for c in cases {
                out.push('\n');
                indent(level, out);
                out.push_str("case ");
                write_literal(&c.value, out);
                out.push(' ');
                write_block(&c.body, level, out);
            }
            if let Some(d) = default {
                out.push('\n');
                indent(level, out);
                out.push_str("default ");
                write_block(d, level, out);
            }
        }
        Statement::For {
            init,
            condition,
            post,
            body,
        } => {
            out.push_str("for ");
            write_block(init, level, out);
            out.push(' ');
            write_expr(condition, out);
            out.push(' ');
            write_block(post, level, out);
            out.push(' ');
            write_block(body, level, out);
        }
        Statement::Function(f) => {
            let _ = write!(out, "function {}({})", f.name, f.params.join(", "));
            if !f.returns.is_empty() {
                let _ = write!(out, " -> {}", f.returns.join(", "));
            }
            out.push(' ');
            write_block(&f.body, level, out);
        }
        Statement::Break => out.push_str("break"),
        Statement::Continue => out.push_str("continue"),
        Statement::Leave => out.push_str("leave"),
        Statement::Block(b) => write_block(b, level, out),
    }
}

fn write_expr(e: &Expression, out: &mut String) {
    match e {
        Expression::Call { name, args } => {
            out.push_str(name);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(a, out);
            }
            out.push(')');
        }
        Expression::Identifier(n) => out.push_str(n),
        Expression::Literal(l) => write_literal(l, out),
    }
}

fn write_literal(l: &Literal, out: &mut String) {
    match l {
        Literal::Number(w) => {
            if w.bit_len() > 64 {
                let _ = write!(out, "0x{w:x}");
            } else {
                let _ = write!(out, "{w}");
            }
        }
        Literal::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Literal::String(s) => out.push_str(&quote(s)),
        Literal::HexString(b) => {
            let _ = write!(out, "hex\"{}\"", hex(b));
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn quote(bytes: &[u8]) -> String {
    let mut s = String::from("\"");
    for &b in bytes {
        match b {
            b'"' => s.push_str("\\\""),
            b'\\' => s.push_str("\\\\"),
            b'\n' => s.push_str("\\n"),
            b'\r' => s.push_str("\\r"),
            b'\t' => s.push_str("\\t"),
            0x20..=0x7e => s.push(b as char),
            _ => {
                let _ = write!(s, "\\x{b:02x}");
            }
        }
    }
    s.push('"');
    s
}
