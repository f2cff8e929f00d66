//! Lexer and recursive-descent parser for multivector expressions.
//!
//! Precedence, loosest first: `+`/`-`, `^` (wedge), `*`, unary minus. An
//! integer literal after `^` directly following a variable or a
//! parenthesized group is a power, so `3*x1^2*d1` reads as `3·x1²·∂₁`.

use std::fmt;

use rinehart::scalar::parse_rational;
use rinehart::{LieRinehartPair, Rational};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Comma,
    Underscore,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number(s) | Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Underscore => f.write_str("`_`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

/// Positions are 1-based character columns.
fn lex(input: &str) -> Result<Vec<(Tok, usize)>, CliError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push((Tok::Number(chars[start..i].iter().collect()), pos));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            ',' => Tok::Comma,
            '_' => Tok::Underscore,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            _ => return Err(CliError::parse(pos, format!("unexpected character `{c}`"))),
        };
        out.push((tok, pos));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    /// 1-based column of the node's first token.
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Number(Rational),
    /// 1-based variable index, `x1` is 1.
    Variable(usize),
    /// Prefix letter and 1-based index.
    Generator(char, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Antisym(Box<Expr>, Box<Expr>),
    Sym(Box<Expr>, Box<Expr>),
    NBracket(Vec<Expr>),
    Differential(Box<Expr>),
    Injection(Vec<Expr>),
}

impl Expr {
    fn new(kind: ExprKind, pos: usize) -> Self {
        Expr { kind, pos }
    }

    /// Every generator and variable symbol with its position.
    pub fn symbols(&self) -> Vec<(Symbol, usize)> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<(Symbol, usize)>) {
        match &self.kind {
            ExprKind::Number(_) => {}
            ExprKind::Variable(k) => out.push((Symbol::Variable(*k), self.pos)),
            ExprKind::Generator(p, k) => out.push((Symbol::Generator(*p, *k), self.pos)),
            ExprKind::Neg(a) | ExprKind::Pow(a, _) | ExprKind::Differential(a) => a.collect_symbols(out),
            ExprKind::Add(a, b)
            | ExprKind::Sub(a, b)
            | ExprKind::Mul(a, b)
            | ExprKind::Wedge(a, b)
            | ExprKind::Antisym(a, b)
            | ExprKind::Sym(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            ExprKind::NBracket(xs) | ExprKind::Injection(xs) => xs.iter().for_each(|x| x.collect_symbols(out)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Variable(usize),
    Generator(char, usize),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, context: &str) -> Result<usize, CliError> {
        if *self.peek() == want {
            Ok(self.bump().1)
        } else {
            Err(CliError::parse(
                self.pos(),
                format!("expected {want} {context}, found {}", self.peek()),
            ))
        }
    }

    fn sum(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.wedge()?;
        loop {
            let pos = lhs.pos;
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.wedge()?;
                    lhs = Expr::new(ExprKind::Add(Box::new(lhs), Box::new(rhs)), pos);
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.wedge()?;
                    lhs = Expr::new(ExprKind::Sub(Box::new(lhs), Box::new(rhs)), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn wedge(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.product()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let rhs = self.product()?;
            let pos = lhs.pos;
            lhs = Expr::new(ExprKind::Wedge(Box::new(lhs), Box::new(rhs)), pos);
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            let pos = lhs.pos;
            lhs = Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), pos);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        if *self.peek() == Tok::Minus {
            let (_, pos) = self.bump();
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), pos));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, CliError> {
        let powerable = matches!(self.peek(), Tok::LParen)
            || matches!(self.peek(), Tok::Ident(s) if classify(s) == Some(Ident::Variable));
        let mut base = self.atom()?;
        if powerable {
            while *self.peek() == Tok::Caret {
                let Tok::Number(text) = self.peek_at(1).clone() else {
                    break;
                };
                if text.contains('/') {
                    break;
                }
                self.bump();
                let (_, pos) = self.bump();
                let k: u32 = text
                    .parse()
                    .map_err(|_| CliError::parse(pos, format!("exponent `{text}` is too large")))?;
                let at = base.pos;
                base = Expr::new(ExprKind::Pow(Box::new(base), k), at);
            }
        }
        Ok(base)
    }

    fn list(&mut self, close: Tok, context: &str) -> Result<Vec<Expr>, CliError> {
        let mut items = vec![self.sum()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            items.push(self.sum()?);
        }
        self.expect(close, context)?;
        Ok(items)
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Number(text) => {
                let value = parse_rational(&text).map_err(|e| CliError::parse(pos, e.to_string()))?;
                Ok(Expr::new(ExprKind::Number(value), pos))
            }
            Tok::Ident(name) => self.ident(name, pos),
            Tok::LParen => {
                let inner = self.sum()?;
                self.expect(Tok::RParen, "to close `(`")?;
                Ok(Expr { pos, ..inner })
            }
            Tok::LBracket => {
                let a = self.sum()?;
                self.expect(Tok::Comma, "between the arguments of `[…]`")?;
                let b = self.sum()?;
                self.expect(Tok::RBracket, "to close `[`")?;
                Ok(Expr::new(ExprKind::Antisym(Box::new(a), Box::new(b)), pos))
            }
            Tok::LBrace => {
                let mut items = self.list(Tok::RBrace, "to close `{`")?;
                if *self.peek() == Tok::Underscore {
                    self.bump();
                    let (arity_tok, arity_pos) = self.bump();
                    let arity = match arity_tok {
                        Tok::Number(t) if !t.contains('/') => t.parse::<usize>().ok(),
                        _ => None,
                    }
                    .ok_or_else(|| CliError::parse(arity_pos, "expected an arity after `_`"))?;
                    if arity != items.len() {
                        return Err(CliError::parse(
                            arity_pos,
                            format!("arity mismatch: `_{arity}` with {} arguments", items.len()),
                        ));
                    }
                    Ok(Expr::new(ExprKind::NBracket(items), pos))
                } else if items.len() == 2 {
                    let b = items.pop().unwrap();
                    let a = items.pop().unwrap();
                    Ok(Expr::new(ExprKind::Sym(Box::new(a), Box::new(b)), pos))
                } else {
                    Err(CliError::parse(
                        pos,
                        format!(
                            "`{{…}}` with {} arguments needs an arity suffix `_{}`",
                            items.len(),
                            items.len()
                        ),
                    ))
                }
            }
            other => Err(CliError::parse(pos, format!("expected an operand, found {other}"))),
        }
    }

    fn ident(&mut self, name: String, pos: usize) -> Result<Expr, CliError> {
        let unknown = || CliError::parse(pos, format!("unknown symbol `{name}`"));
        match classify(&name).ok_or_else(unknown)? {
            Ident::Variable => Ok(Expr::new(
                ExprKind::Variable(index_of(&name[1..]).ok_or_else(unknown)?),
                pos,
            )),
            Ident::Generator(p) => Ok(Expr::new(
                ExprKind::Generator(p, index_of(&name[1..]).ok_or_else(unknown)?),
                pos,
            )),
            Ident::Differential => {
                self.expect(Tok::LParen, "after `d`")?;
                let inner = self.sum()?;
                self.expect(Tok::RParen, "to close `d(`")?;
                Ok(Expr::new(ExprKind::Differential(Box::new(inner)), pos))
            }
            Ident::Injection(n) => {
                self.expect(Tok::LParen, &format!("after `{name}`"))?;
                let items = self.list(Tok::RParen, &format!("to close `{name}(`"))?;
                if items.len() != n {
                    return Err(CliError::parse(
                        pos,
                        format!("arity mismatch: `{name}` with {} arguments", items.len()),
                    ));
                }
                Ok(Expr::new(ExprKind::Injection(items), pos))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ident {
    Variable,
    Generator(char),
    Differential,
    Injection(usize),
}

fn index_of(digits: &str) -> Option<usize> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&k| k >= 1)
}

fn classify(name: &str) -> Option<Ident> {
    if name == "d" {
        return Some(Ident::Differential);
    }
    if let Some(rest) = name.strip_prefix("i_") {
        return index_of(rest).map(Ident::Injection);
    }
    let (head, rest) = name.split_at(1);
    index_of(rest)?;
    match head {
        "x" => Some(Ident::Variable),
        "d" => Some(Ident::Generator('d')),
        "e" => Some(Ident::Generator('e')),
        _ => None,
    }
}

/// Parses without resolving symbols against a pair.
pub fn parse_syntax(input: &str) -> Result<Expr, CliError> {
    let mut p = Parser {
        toks: lex(input)?,
        at: 0,
    };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(CliError::parse(p.pos(), format!("unexpected {}", p.peek())));
    }
    Ok(e)
}

/// Parses and checks every symbol against `pair`.
pub fn parse(input: &str, pair: &LieRinehartPair) -> Result<Expr, CliError> {
    let e = parse_syntax(input)?;
    for (sym, pos) in e.symbols() {
        match sym {
            Symbol::Variable(k) if k > pair.variable_count() => {
                return Err(CliError::parse(
                    pos,
                    format!(
                        "unknown symbol `x{k}`: the pair has {} variables",
                        pair.variable_count()
                    ),
                ));
            }
            Symbol::Generator(p, k) if p != pair.generator_prefix() || k > pair.dimension() => {
                return Err(CliError::parse(
                    pos,
                    format!(
                        "unknown symbol `{p}{k}`: the pair has generators {}1..{}{}",
                        pair.generator_prefix(),
                        pair.generator_prefix(),
                        pair.dimension()
                    ),
                ));
            }
            _ => {}
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(s: &str) -> ExprKind {
        parse_syntax(s).unwrap().kind
    }

    #[test]
    fn precedence() {
        let ExprKind::Add(a, b) = kind("d1^d2 + d3") else {
            panic!()
        };
        assert!(matches!(a.kind, ExprKind::Wedge(_, _)));
        assert!(matches!(b.kind, ExprKind::Generator('d', 3)));
        let ExprKind::Wedge(a, _) = kind("2*d1^d2") else {
            panic!()
        };
        assert!(matches!(a.kind, ExprKind::Mul(_, _)));
        let ExprKind::Mul(a, _) = kind("-x1*d1") else { panic!() };
        assert!(matches!(a.kind, ExprKind::Neg(_)));
        let ExprKind::Mul(a, _) = kind("x1^2*d1") else { panic!() };
        assert!(matches!(a.kind, ExprKind::Pow(_, 2)));
        assert!(matches!(kind("d1^2"), ExprKind::Wedge(_, _)));
        assert!(matches!(kind("(x1 + x2)^2"), ExprKind::Pow(_, 2)));
        assert!(matches!(kind("x1^1/2"), ExprKind::Wedge(_, _)));
    }

    #[test]
    fn brackets() {
        assert!(matches!(kind("[d1, x1^2]"), ExprKind::Antisym(_, _)));
        assert!(matches!(kind("{d1, x1}"), ExprKind::Sym(_, _)));
        let ExprKind::NBracket(xs) = kind("{d1, d2, x1*x2*d3}_3") else {
            panic!()
        };
        assert_eq!(xs.len(), 3);
        assert!(matches!(kind("d(e1^e2)"), ExprKind::Differential(_)));
        let ExprKind::Injection(xs) = kind("i_2(d1, d2)") else {
            panic!()
        };
        assert_eq!(xs.len(), 2);
    }

    fn error_at(s: &str) -> usize {
        match parse_syntax(s) {
            Err(CliError::Parse { pos, .. }) => pos,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(error_at("[d1 d2]"), 5);
        assert_eq!(error_at("{d1, d2}_3"), 10);
        assert_eq!(error_at("d1 + $"), 6);
        assert_eq!(error_at("y1"), 1);
        assert_eq!(error_at("i_3(d1, d2)"), 1);
        assert_eq!(error_at("{d1, d2, d3}"), 1);
        assert_eq!(error_at("d1 +"), 5);
        assert_eq!(error_at("d1)"), 3);
        assert_eq!(error_at("d0"), 1);
    }

    #[test]
    fn resolution() {
        let c2 = LieRinehartPair::cartan(2).unwrap();
        assert!(parse("x2*d2", &c2).is_ok());
        assert!(matches!(parse("d1 + x3", &c2), Err(CliError::Parse { pos: 6, .. })));
        assert!(matches!(parse("e1", &c2), Err(CliError::Parse { pos: 1, .. })));
        let sl2 = LieRinehartPair::sl2();
        assert!(parse("e1^e3", &sl2).is_ok());
        assert!(matches!(parse("x1*e1", &sl2), Err(CliError::Parse { pos: 1, .. })));
    }
}
