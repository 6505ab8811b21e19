//! Recursive-descent parser for identities such as
//! `phi(h2,g2,f2) (h1 (g1 f1)) = phi(h1,g1,f1) ((h2 g2) f2)`.

use std::collections::BTreeMap;

use thiserror::Error;

use super::ast::{ElemExpr, ElemOp, ScalarFactor, Side, SweedlerIdentity};

/// Deepest Sweedler subscript accepted.
pub const MAX_DEPTH: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("syntax error at {line}:{column}: {message}")]
    SyntaxError { line: usize, column: usize, message: String },
    #[error("subscript gap: {variable}{missing} is missing on one side")]
    SubscriptGap { variable: String, missing: usize },
    #[error("duplicate subscript: {variable}{subscript} occurs twice on one side")]
    DuplicateSubscript { variable: String, subscript: usize },
    #[error("one side is scalar-valued and the other element-valued")]
    MixedResultKind,
    #[error("ambiguous product at {line}:{column}: element products need explicit parentheses")]
    AmbiguousProduct { line: usize, column: usize },
    #[error("sides use different variables: {lhs:?} vs {rhs:?}")]
    VariableMismatch { lhs: Vec<String>, rhs: Vec<String> },
    #[error("subscript {subscript} of `{variable}` exceeds the maximum depth {MAX_DEPTH}")]
    DepthExceeded { variable: String, subscript: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    One,
    LParen,
    RParen,
    Comma,
    Equals,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, IdentityError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 0);
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        column += 1;
        let (l, col) = (line, column);
        let tok = match c {
            '\n' => {
                line += 1;
                column = 0;
                continue;
            }
            c if c.is_whitespace() => continue,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '=' => Tok::Equals,
            c if c.is_ascii_alphabetic() => {
                let mut s = c.to_string();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            c if c.is_ascii_digit() => {
                let mut s = c.to_string();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                if s != "1" {
                    return Err(syntax(l, col, format!("unexpected number `{s}` (only `1` denotes the unit)")));
                }
                Tok::One
            }
            other => return Err(syntax(l, col, format!("unexpected character `{other}`"))),
        };
        out.push(Token { tok, line: l, column: col });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: column + 1,
    });
    Ok(out)
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> IdentityError {
    IdentityError::SyntaxError {
        line,
        column,
        message: message.into(),
    }
}

/// Fixed arities of the built-in functionals.
pub fn builtin_arity(name: &str) -> Option<usize> {
    match name {
        "phi" | "phiinv" => Some(3),
        "alpha" | "beta" | "eps" | "T" => Some(1),
        _ => None,
    }
}

/// Identifiers ending in a digit are Sweedler legs; all others name functionals.
pub fn is_function_name(ident: &str) -> bool {
    !ident.ends_with(|c: char| c.is_ascii_digit())
}

fn element_op(name: &str) -> Option<ElemOp> {
    match name {
        "S" => Some(ElemOp::S),
        "Sl" => Some(ElemOp::Sl),
        _ => None,
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token, IdentityError> {
        let t = self.bump();
        if t.tok == want {
            Ok(t)
        } else {
            Err(syntax(t.line, t.column, format!("expected {what}, found {}", describe(&t.tok))))
        }
    }

    fn side(&mut self) -> Result<Side, IdentityError> {
        let start = self.peek().clone();
        let mut scalars = Vec::new();
        let mut elements: Vec<(ElemExpr, Token)> = Vec::new();
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Equals | Tok::End => break,
                Tok::Ident(name) if *self.peek2() == Tok::LParen && is_function_name(name) && element_op(name).is_none() => {
                    scalars.push(self.scalar_factor()?);
                }
                _ => {
                    let e = self.element()?;
                    elements.push((e, t));
                }
            }
        }
        if elements.len() > 1 {
            let t = &elements[1].1;
            return Err(IdentityError::AmbiguousProduct {
                line: t.line,
                column: t.column,
            });
        }
        if scalars.is_empty() && elements.is_empty() {
            return Err(syntax(start.line, start.column, "empty side"));
        }
        Ok(Side {
            scalars,
            element: elements.pop().map(|(e, _)| e),
        })
    }

    fn scalar_factor(&mut self) -> Result<ScalarFactor, IdentityError> {
        let head = self.bump();
        let Tok::Ident(name) = head.tok else { unreachable!("checked by caller") };
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.element()?];
        loop {
            let t = self.bump();
            match t.tok {
                Tok::Comma => args.push(self.element()?),
                Tok::RParen => break,
                other => {
                    return Err(syntax(
                        t.line,
                        t.column,
                        format!("expected `,` or `)`, found {}", describe(&other)),
                    ))
                }
            }
        }
        if let Some(k) = builtin_arity(&name) {
            if args.len() != k {
                return Err(syntax(
                    head.line,
                    head.column,
                    format!("`{name}` takes {k} argument(s), found {}", args.len()),
                ));
            }
        }
        Ok(ScalarFactor { name, args })
    }

    fn element(&mut self) -> Result<ElemExpr, IdentityError> {
        let t = self.bump();
        match t.tok {
            Tok::One => Ok(ElemExpr::One),
            Tok::Ident(name) => {
                if let Some(op) = element_op(&name) {
                    if self.peek().tok == Tok::LParen {
                        self.expect(Tok::LParen, "`(`")?;
                        let arg = self.element()?;
                        self.expect(Tok::RParen, "`)`")?;
                        return Ok(ElemExpr::apply(op, arg));
                    }
                }
                if self.peek().tok == Tok::LParen && is_function_name(&name) {
                    return Err(syntax(
                        t.line,
                        t.column,
                        format!("scalar factor `{name}` cannot appear inside an element expression"),
                    ));
                }
                variable(&name, t.line, t.column)
            }
            Tok::LParen => {
                let mut items = Vec::new();
                while !matches!(self.peek().tok, Tok::RParen | Tok::End | Tok::Equals | Tok::Comma) {
                    let at = self.peek().clone();
                    if items.len() == 2 {
                        return Err(IdentityError::AmbiguousProduct {
                            line: at.line,
                            column: at.column,
                        });
                    }
                    items.push(self.element()?);
                }
                self.expect(Tok::RParen, "`)`")?;
                let mut items = items.into_iter();
                match (items.next(), items.next()) {
                    (Some(a), None) => Ok(a),
                    (Some(a), Some(b)) => Ok(ElemExpr::product(a, b)),
                    _ => Err(syntax(t.line, t.column, "empty parentheses")),
                }
            }
            other => Err(syntax(
                t.line,
                t.column,
                format!("expected an element expression, found {}", describe(&other)),
            )),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::One => "`1`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Equals => "`=`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Splits `h3` or `h_3` into `("h", 3)`.
fn variable(ident: &str, line: usize, column: usize) -> Result<ElemExpr, IdentityError> {
    let digits = ident.len() - ident.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (name, sub) = ident.split_at(ident.len() - digits);
    let name = name.strip_suffix('_').unwrap_or(name);
    if digits == 0 || name.is_empty() {
        return Err(syntax(
            line,
            column,
            format!("`{ident}` is not a variable with a Sweedler subscript (write e.g. `{ident}1`)"),
        ));
    }
    let sub: usize = sub
        .parse()
        .map_err(|_| syntax(line, column, format!("subscript of `{ident}` is too large")))?;
    if sub == 0 {
        return Err(syntax(line, column, "subscripts start at 1"));
    }
    if sub > MAX_DEPTH {
        return Err(IdentityError::DepthExceeded {
            variable: name.to_string(),
            subscript: sub,
        });
    }
    Ok(ElemExpr::var(name, sub))
}

fn check_subscripts(side: &Side) -> Result<(), IdentityError> {
    let mut seen: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (name, sub) in side.occurrences() {
        let subs = seen.entry(name).or_default();
        if subs.contains(&sub) {
            return Err(IdentityError::DuplicateSubscript {
                variable: name.to_string(),
                subscript: sub,
            });
        }
        subs.push(sub);
    }
    for (name, subs) in seen {
        let max = *subs.iter().max().expect("nonempty");
        if let Some(missing) = (1..=max).find(|k| !subs.contains(k)) {
            return Err(IdentityError::SubscriptGap {
                variable: name.to_string(),
                missing,
            });
        }
    }
    Ok(())
}

pub fn parse_identity(text: &str) -> Result<SweedlerIdentity, IdentityError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let lhs = p.side()?;
    p.expect(Tok::Equals, "`=`")?;
    let rhs = p.side()?;
    p.expect(Tok::End, "end of input")?;
    check_subscripts(&lhs)?;
    check_subscripts(&rhs)?;
    if lhs.is_scalar() != rhs.is_scalar() {
        return Err(IdentityError::MixedResultKind);
    }
    let (lv, rv): (Vec<String>, Vec<String>) = (lhs.depths().into_keys().collect(), rhs.depths().into_keys().collect());
    if lv != rv {
        return Err(IdentityError::VariableMismatch { lhs: lv, rhs: rv });
    }
    Ok(SweedlerIdentity { lhs, rhs })
}
