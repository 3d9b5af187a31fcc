//! Expression language: parsing text into elements of `U_h(sl_{n+1})^{⊗s}`.
//!
//! ```text
//! input   := tensor EOF
//! tensor  := sum ('(x)' sum)*
//! sum     := ['-'] term (('+' | '-') term)*
//! term    := power (('*' | '/') power)*
//! power   := atom ('^' exponent)?
//! atom    := number | 'q' | 'qb' | generator | '[' bracket ']' | prefactor | '(' tensor ')'
//! exponent:= int | '(' ['-'] int ['/' int] ')'
//! bracket := ['-'] int | H [('+' | '-') int]
//! prefactor := 'exp' '[' '(' 'h' '/' '4' ')' '*' '(' form ')' ']'
//! form    := ['-'] fterm (('+' | '-') fterm)*
//! fterm   := [coef '*'] hvar ('^' '2' | '*' hvar)?      hvar := H[i]['@' slot]
//! ```
//! Generators are `x, y, k, kb, H` at rank 1 and `x1, x1_3, y2, k1, kb2, H1` in general.
//! The three-character token `(x)` is always the tensor sign.

use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::pbw::{hbracket, Element, Interval, PbwError, Prefactor, Rules};
use crate::qcalc::qint;
use crate::scalars::{Exp, QScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at line {line}, column {col}: expected {expected}, found {found}")]
    Syntax { line: usize, col: usize, expected: String, found: String },
    #[error("index out of rank: {0}")]
    IndexOutOfRank(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] PbwError),
}

impl ExprError {
    pub fn is_no_rule(&self) -> bool {
        matches!(self, ExprError::Algebra(PbwError::NoApplicableRule(_)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    At,
    Tensor,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::LBrack => write!(f, "'['"),
            Tok::RBrack => write!(f, "']'"),
            Tok::At => write!(f, "'@'"),
            Tok::Tensor => write!(f, "'(x)'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut adv = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '(' if chars.get(i + 1) == Some(&'x') && chars.get(i + 2) == Some(&')') => {
                adv = 3;
                Some(Tok::Tensor)
            }
            '⊗' => Some(Tok::Tensor),
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '@' => Some(Tok::At),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                adv = j - i;
                let v = s.parse::<i64>().map_err(|_| ExprError::Syntax {
                    line: l0,
                    col: c0,
                    expected: "an integer that fits in 64 bits".into(),
                    found: format!("'{s}'"),
                })?;
                Some(Tok::Int(v))
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                adv = j - i;
                Some(Tok::Ident(chars[i..j].iter().collect()))
            }
            other => {
                return Err(ExprError::Syntax { line: l0, col: c0, expected: "a token".into(), found: format!("'{other}'") })
            }
        };
        if let Some(t) = tok {
            out.push(Spanned { tok: t, line: l0, col: c0 });
        }
        i += adv;
        col += adv;
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

/// Generator atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenAtom {
    X(Interval),
    Y(Interval),
    K(usize),
    Kb(usize),
    H(usize),
}

/// Abstract syntax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Scalar(QScalar),
    Gen(GenAtom),
    /// `[H_i + c]` (`Some(i)`) or the quantum integer `[c]`.
    Bracket(Option<usize>, i64),
    /// `(slot, index)` pairs with coefficient of `H_a H_b`.
    Prefactor(Vec<((usize, usize), (usize, usize), Exp)>),
    Pow(Box<Expr>, Exp),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Tensor(Vec<Expr>),
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    rank: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: &str) -> Result<T, ExprError> {
        let s = &self.toks[self.pos];
        Err(ExprError::Syntax { line: s.line, col: s.col, expected: expected.into(), found: s.tok.to_string() })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ExprError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(&t.to_string())
        }
    }

    fn int(&mut self) -> Result<i64, ExprError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => self.err("an integer"),
        }
    }

    fn tensor(&mut self) -> Result<Expr, ExprError> {
        let mut parts = vec![self.sum()?];
        while *self.peek() == Tok::Tensor {
            self.bump();
            parts.push(self.sum()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Tensor(parts) })
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut e = if *self.peek() == Tok::Minus {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    e = Expr::Add(Box::new(e), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    e = Expr::Sub(Box::new(e), Box::new(self.term()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.power()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    e = Expr::Mul(Box::new(e), Box::new(self.power()?));
                }
                Tok::Slash => {
                    self.bump();
                    e = Expr::Div(Box::new(e), Box::new(self.power()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<Exp, ExprError> {
        match self.peek() {
            Tok::Int(_) => Ok(Exp::from_integer(self.int()?)),
            Tok::LParen => {
                self.bump();
                let neg = if *self.peek() == Tok::Minus {
                    self.bump();
                    true
                } else {
                    false
                };
                let p = self.int()?;
                let d = if *self.peek() == Tok::Slash {
                    self.bump();
                    let d = self.int()?;
                    if d == 0 {
                        return self.err("a non-zero denominator");
                    }
                    d
                } else {
                    1
                };
                self.expect(Tok::RParen)?;
                let e = Exp::new(p, d);
                Ok(if neg { -e } else { e })
            }
            _ => self.err("an integer or a parenthesized rational exponent"),
        }
    }

    fn index_check(&self, name: &str, i: usize, j: usize) -> Result<(), ExprError> {
        if i == 0 || j < i || j > self.rank {
            return Err(ExprError::IndexOutOfRank(format!("{name} at rank {}", self.rank)));
        }
        Ok(())
    }

    /// Split `x1_3` into `("x", Some(1), Some(3))`.
    fn split_ident(s: &str) -> Option<(String, Option<usize>, Option<usize>)> {
        let letters: String = s.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
        let rest = &s[letters.len()..];
        if rest.is_empty() {
            return Some((letters, None, None));
        }
        let (a, b) = match rest.split_once('_') {
            Some((a, b)) => (a, Some(b)),
            None => (rest, None),
        };
        let i = a.parse::<usize>().ok()?;
        let j = match b {
            Some(b) => Some(b.parse::<usize>().ok()?),
            None => None,
        };
        Some((letters, Some(i), j))
    }

    fn single_index(&self, name: &str, i: Option<usize>, j: Option<usize>) -> Result<usize, ExprError> {
        if j.is_some() {
            return Err(ExprError::Invalid(format!("'{name}' takes a single index")));
        }
        let i = match i {
            Some(i) => i,
            None if self.rank == 1 => 1,
            None => return Err(ExprError::Invalid(format!("'{name}' needs an index at rank {}", self.rank))),
        };
        self.index_check(name, i, i)?;
        Ok(i)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::Scalar(QScalar::from_int(v)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.tensor()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::LBrack => {
                self.bump();
                let b = self.bracket()?;
                self.expect(Tok::RBrack)?;
                Ok(b)
            }
            Tok::Ident(s) => {
                if s == "exp" && *self.peek_at(1) == Tok::LBrack {
                    self.bump();
                    return self.prefactor();
                }
                let Some((name, i, j)) = Self::split_ident(&s) else {
                    return self.err("a generator name");
                };
                let gen = match name.as_str() {
                    "q" if i.is_none() => Expr::Scalar(QScalar::q()),
                    "qb" if i.is_none() => Expr::Scalar(QScalar::qbar()),
                    "x" | "y" => {
                        let (a, b) = match (i, j) {
                            (None, _) if self.rank == 1 => (1, 1),
                            (None, _) => {
                                return Err(ExprError::Invalid(format!("'{s}' needs an index at rank {}", self.rank)))
                            }
                            (Some(a), None) => (a, a),
                            (Some(a), Some(b)) => (a, b),
                        };
                        self.index_check(&s, a, b)?;
                        let iv = Interval(a, b);
                        Expr::Gen(if name == "x" { GenAtom::X(iv) } else { GenAtom::Y(iv) })
                    }
                    "k" => Expr::Gen(GenAtom::K(self.single_index(&s, i, j)?)),
                    "kb" => Expr::Gen(GenAtom::Kb(self.single_index(&s, i, j)?)),
                    "H" => Expr::Gen(GenAtom::H(self.single_index(&s, i, j)?)),
                    _ => return self.err("a scalar, generator, bracket or prefactor"),
                };
                self.bump();
                Ok(gen)
            }
            _ => self.err("a scalar, generator, bracket or prefactor"),
        }
    }

    fn bracket(&mut self) -> Result<Expr, ExprError> {
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Bracket(None, -self.int()?))
            }
            Tok::Int(_) => Ok(Expr::Bracket(None, self.int()?)),
            Tok::Ident(s) => {
                let Some((name, i, j)) = Self::split_ident(&s) else {
                    return self.err("'H' or an integer");
                };
                if name != "H" {
                    return self.err("'H' or an integer");
                }
                let i = self.single_index(&s, i, j)?;
                self.bump();
                let c = match self.peek() {
                    Tok::Plus => {
                        self.bump();
                        self.int()?
                    }
                    Tok::Minus => {
                        self.bump();
                        -self.int()?
                    }
                    _ => 0,
                };
                Ok(Expr::Bracket(Some(i), c))
            }
            _ => self.err("'H' or an integer"),
        }
    }

    fn prefactor(&mut self) -> Result<Expr, ExprError> {
        self.expect(Tok::LBrack)?;
        self.expect(Tok::LParen)?;
        match self.bump() {
            Tok::Ident(h) if h == "h" => {}
            _ => {
                self.pos -= 1;
                return self.err("'h'");
            }
        }
        self.expect(Tok::Slash)?;
        if self.int()? != 4 {
            self.pos -= 1;
            return self.err("'4'");
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::Star)?;
        self.expect(Tok::LParen)?;
        let mut entries = Vec::new();
        if *self.peek() == Tok::Int(0) && *self.peek_at(1) == Tok::RParen {
            self.bump();
        } else {
            let mut sign = Exp::one();
            if *self.peek() == Tok::Minus {
                self.bump();
                sign = -sign;
            }
            loop {
                entries.push(self.form_term(sign)?);
                match self.peek() {
                    Tok::Plus => sign = Exp::one(),
                    Tok::Minus => sign = -Exp::one(),
                    _ => break,
                }
                self.bump();
            }
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::RBrack)?;
        Ok(Expr::Prefactor(entries))
    }

    fn form_term(&mut self, sign: Exp) -> Result<((usize, usize), (usize, usize), Exp), ExprError> {
        let mut coef = Exp::one();
        match self.peek() {
            Tok::Int(_) => {
                coef = Exp::from_integer(self.int()?);
                self.expect(Tok::Star)?;
            }
            Tok::LParen => {
                self.bump();
                let neg = *self.peek() == Tok::Minus;
                if neg {
                    self.bump();
                }
                let p = self.int()?;
                self.expect(Tok::Slash)?;
                let d = self.int()?;
                if d == 0 {
                    return self.err("a non-zero denominator");
                }
                self.expect(Tok::RParen)?;
                self.expect(Tok::Star)?;
                coef = Exp::new(if neg { -p } else { p }, d);
            }
            _ => {}
        }
        let a = self.hvar()?;
        let b = match self.peek() {
            Tok::Caret => {
                self.bump();
                if self.int()? != 2 {
                    self.pos -= 1;
                    return self.err("'2'");
                }
                a
            }
            Tok::Star => {
                self.bump();
                self.hvar()?
            }
            _ => return self.err("'^2' or '*'"),
        };
        Ok((a, b, sign * coef))
    }

    fn hvar(&mut self) -> Result<(usize, usize), ExprError> {
        let s = match self.peek().clone() {
            Tok::Ident(s) => s,
            _ => return self.err("a Cartan generator"),
        };
        let Some((name, i, j)) = Self::split_ident(&s) else {
            return self.err("a Cartan generator");
        };
        if name != "H" {
            return self.err("a Cartan generator");
        }
        let i = self.single_index(&s, i, j)?;
        self.bump();
        let slot = if *self.peek() == Tok::At {
            self.bump();
            self.int()? as usize
        } else {
            0
        };
        Ok((slot, i - 1))
    }
}

/// Parse an expression for rank `rank`.
pub fn parse(src: &str, rank: usize) -> Result<Expr, ExprError> {
    if rank == 0 {
        return Err(ExprError::Invalid("rank must be at least 1".into()));
    }
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, rank };
    let e = p.tensor()?;
    if *p.peek() != Tok::Eof {
        return p.err("an operator or end of input");
    }
    Ok(e)
}

impl Expr {
    /// Number of tensor slots the expression lives in.
    pub fn slots(&self) -> usize {
        match self {
            Expr::Scalar(_) | Expr::Gen(_) | Expr::Bracket(..) => 1,
            Expr::Prefactor(v) => v.iter().map(|(a, b, _)| a.0.max(b.0) + 1).max().unwrap_or(1),
            Expr::Pow(b, _) | Expr::Neg(b) => b.slots(),
            Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Add(a, b) | Expr::Sub(a, b) => a.slots().max(b.slots()),
            Expr::Tensor(v) => v.iter().map(|e| e.slots()).sum(),
        }
    }
}

/// A one-term scalar element, read back as a scalar.
fn as_scalar(e: &Element) -> Option<QScalar> {
    if e.is_zero() {
        return Some(QScalar::zero());
    }
    if e.len() != 1 {
        return None;
    }
    let (t, c) = e.terms().next().unwrap();
    if t.pre.is_identity() && t.monos.iter().all(|m| m.is_one()) {
        Some(c.clone())
    } else {
        None
    }
}

/// Bring two operands to the same slot count by widening scalars.
fn align(a: Element, b: Element) -> Result<(Element, Element), ExprError> {
    if a.slots() == b.slots() {
        return Ok((a, b));
    }
    let widen = |s: &Element, slots: usize| as_scalar(s).map(|c| Element::scalar(c, s.rank(), slots));
    if let Some(w) = widen(&a, b.slots()) {
        return Ok((w, b));
    }
    if let Some(w) = widen(&b, a.slots()) {
        return Ok((a, w));
    }
    Err(ExprError::Invalid(format!("operands live in {} and {} tensor slots", a.slots(), b.slots())))
}

struct Ctx<'a> {
    rank: usize,
    rules: &'a Rules,
}

fn pow_with(base: &Element, n: u32, rules: &Rules) -> Result<Element, ExprError> {
    let mut acc = Element::one(base.rank(), base.slots());
    for _ in 0..n {
        acc = acc.mul_with(base, rules)?;
    }
    Ok(acc)
}

fn eval_inner(e: &Expr, cx: &Ctx, slots: usize) -> Result<Element, ExprError> {
    let rank = cx.rank;
    Ok(match e {
        Expr::Scalar(c) => Element::scalar(c.clone(), rank, 1),
        Expr::Gen(g) => match g {
            GenAtom::X(iv) => Element::x(rank, iv.0, iv.1)?,
            GenAtom::Y(iv) => Element::y(rank, iv.0, iv.1)?,
            GenAtom::K(i) => Element::k(rank, *i, Exp::one())?,
            GenAtom::Kb(i) => Element::k(rank, *i, -Exp::one())?,
            GenAtom::H(i) => Element::h(rank, *i)?,
        },
        Expr::Bracket(None, c) => Element::scalar(qint(*c), rank, 1),
        Expr::Bracket(Some(i), c) => hbracket(rank, *i, *c),
        Expr::Prefactor(entries) => {
            let mut p = Prefactor::identity(slots, rank);
            for ((sa, ia), (sb, ib), c) in entries {
                if *sa >= slots || *sb >= slots {
                    return Err(ExprError::Invalid(format!("slot marker beyond {slots} slots")));
                }
                p.add_coupling(sa * rank + ia, sb * rank + ib, *c);
            }
            Element::prefactor(rank, p)
        }
        Expr::Pow(b, x) => {
            match &**b {
                Expr::Gen(GenAtom::K(i)) => return Ok(Element::k(rank, *i, *x)?),
                Expr::Gen(GenAtom::Kb(i)) => return Ok(Element::k(rank, *i, -*x)?),
                _ => {}
            }
            let base = eval_inner(b, cx, slots)?;
            if let Some(c) = as_scalar(&base) {
                if c == QScalar::q() {
                    return Ok(Element::scalar(QScalar::q_pow(*x), rank, base.slots()));
                }
                if c == QScalar::qbar() {
                    return Ok(Element::scalar(QScalar::q_pow(-*x), rank, base.slots()));
                }
            }
            if !x.is_integer() {
                return Err(ExprError::Invalid("rational exponents apply to q, qb, k and kb only".into()));
            }
            let n = x.to_integer();
            if n >= 0 {
                pow_with(&base, n as u32, cx.rules)?
            } else {
                let c = as_scalar(&base).ok_or_else(|| ExprError::Invalid("negative power of a non-scalar".into()))?;
                let inv = c.inv().map_err(|e| ExprError::Invalid(e.to_string()))?;
                Element::scalar(inv.pow_u(n.unsigned_abs() as u32), rank, base.slots())
            }
        }
        Expr::Mul(a, b) => {
            let (x, y) = align(eval_inner(a, cx, slots)?, eval_inner(b, cx, slots)?)?;
            x.mul_with(&y, cx.rules)?
        }
        Expr::Div(a, b) => {
            let x = eval_inner(a, cx, slots)?;
            let y = eval_inner(b, cx, slots)?;
            let c = as_scalar(&y).ok_or_else(|| ExprError::Invalid("division by a non-scalar".into()))?;
            let inv = c.inv().map_err(|e| ExprError::Invalid(e.to_string()))?;
            x.scale(&inv)
        }
        Expr::Add(a, b) => {
            let (x, y) = align(eval_inner(a, cx, slots)?, eval_inner(b, cx, slots)?)?;
            x.add(&y)?
        }
        Expr::Sub(a, b) => {
            let (x, y) = align(eval_inner(a, cx, slots)?, eval_inner(b, cx, slots)?)?;
            x.sub(&y)?
        }
        Expr::Neg(a) => eval_inner(a, cx, slots)?.neg(),
        Expr::Tensor(parts) => {
            let mut acc: Option<Element> = None;
            for p in parts {
                let v = eval_inner(p, cx, p.slots())?;
                acc = Some(match acc {
                    None => v,
                    Some(a) => a.tensor(&v)?,
                });
            }
            acc.expect("a tensor has parts")
        }
    })
}

/// Evaluate (and thereby straighten) an expression in at least `min_slots` tensor slots.
pub fn evaluate_with(e: &Expr, rank: usize, min_slots: usize, rules: &Rules) -> Result<Element, ExprError> {
    let slots = e.slots().max(min_slots);
    let v = eval_inner(e, &Ctx { rank, rules }, slots)?;
    if v.slots() != slots {
        let (w, _) = align(v, Element::one(rank, slots))?;
        return Ok(w);
    }
    Ok(v)
}

/// Evaluate with the strict rule set.
pub fn evaluate(e: &Expr, rank: usize) -> Result<Element, ExprError> {
    evaluate_with(e, rank, 1, &Rules::default())
}

/// Parse and evaluate.
pub fn parse_element(src: &str, rank: usize) -> Result<Element, ExprError> {
    evaluate(&parse(src, rank)?, rank)
}

/// Parse and evaluate with explicit slot count and rules.
pub fn parse_element_with(src: &str, rank: usize, min_slots: usize, rules: &Rules) -> Result<Element, ExprError> {
    evaluate_with(&parse(src, rank)?, rank, min_slots, rules)
}

/// Canonical text of an expression: the rendering of its normal form.
pub fn canonical(src: &str, rank: usize) -> Result<String, ExprError> {
    Ok(parse_element(src, rank)?.to_string())
}

/// Expressions whose normal forms must survive render-then-parse.
pub const ROUND_TRIP_CORPUS: &[(&str, usize)] = &[
    ("x", 1),
    ("y", 1),
    ("k", 1),
    ("kb", 1),
    ("H", 1),
    ("x * y", 1),
    ("y * x", 1),
    ("x^3 * y^2", 1),
    ("x^2 * y^3 * x", 1),
    ("k * x * kb", 1),
    ("k^(1/2) * y", 1),
    ("H * x", 1),
    ("x * H", 1),
    ("[H + 2] * y", 1),
    ("[H - 1]", 1),
    ("[5]", 1),
    ("[-2] * x", 1),
    ("q^(1/3) * x - qb * y", 1),
    ("(q - qb) * x * y", 1),
    ("1/2 * x + 3/4 * q^2 * y", 1),
    ("x / (q - qb)", 1),
    ("x / [3]", 1),
    ("(x + y)^2", 1),
    ("(x * y - y * x) * x", 1),
    ("exp[(h/4)*(H^2)] * x", 1),
    ("x * exp[(h/4)*(-H^2)]", 1),
    ("x (x) y", 1),
    ("(x (x) 1) * (k (x) y)", 1),
    ("(k (x) x) * (y (x) kb)", 1),
    ("exp[(h/4)*(H@0*H@1)] * (x (x) y)", 1),
    ("(x (x) y) * exp[(h/4)*(H@0*H@1)]", 1),
    ("2 * (x (x) 1) + (1 (x) q * y)", 1),
    ("x (x) y (x) k", 1),
    ("x1 * x2", 2),
    ("x2 * x1", 2),
    ("x1_2 * x1", 2),
    ("x2 * x1_2", 2),
    ("y1 * y2 * y1", 2),
    ("x1 * y2", 2),
    ("x2 * y1 * k1", 2),
    ("x1_2 * y1", 2),
    ("x1 * y1_2", 2),
    ("k1 * x1_2 * kb2", 2),
    ("[H1 + 1] * [H2 - 1]", 2),
    ("H1 * H2 * x1", 2),
    ("exp[(h/4)*((2/3)*H1@0*H2@1 + (4/3)*H1@0*H1@1)] * (x1 (x) y2)", 2),
    ("x1 (x) x2 - x2 (x) x1", 2),
    ("q^(1/2) * x1 * x2 - q^(-1/2) * x2 * x1", 2),
    ("x3 * x1 * x2", 3),
    ("x2_3 * x1", 3),
    ("x3 * x1_2", 3),
    ("y1_3 * k2", 3),
    ("x1_3 * y2", 3),
    ("(x1 + x2 + x3)^2", 3),
    ("y2_4 * x4 * x1_3", 4),
    ("[3] * x1_4 - [2] * x2_3 * x1", 4),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::{straighten_word, Gen};

    #[test]
    fn parses_products() {
        let e = parse("x1 * y1^2", 1).unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(Expr::Gen(GenAtom::X(Interval(1, 1)))),
                Box::new(Expr::Pow(Box::new(Expr::Gen(GenAtom::Y(Interval(1, 1)))), Exp::from_integer(2)))
            )
        );
    }

    #[test]
    fn defining_combination() {
        let a = parse_element("q^(1/2) * x1 * x2 - q^(-1/2) * x2 * x1", 2).unwrap();
        assert_eq!(a, Element::x(2, 1, 2).unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("x3", 2), Err(ExprError::IndexOutOfRank(_))));
        match parse("x * * y", 1) {
            Err(ExprError::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("x y", 1), Err(ExprError::Syntax { .. })));
        assert!(parse_element("x1_2 * y1_2", 2).unwrap_err().is_no_rule());
        assert!(matches!(parse_element("x / y", 1), Err(ExprError::Invalid(_))));
    }

    #[test]
    fn straightens() {
        let xy = parse_element("x * y", 1).unwrap();
        assert_eq!(xy, straighten_word(&[(Gen::X(Interval(1, 1)), 1), (Gen::Y(Interval(1, 1)), 1)], 1).unwrap());
        assert_eq!(parse_element("x*y - y*x", 1).unwrap(), parse_element("[H]", 1).unwrap());
        assert_eq!(canonical("k * x", 1).unwrap(), "k*x");
        assert_eq!(canonical("x * k", 1).unwrap(), "q^(-1)*k*x");
        assert_eq!(canonical("x1 * x2", 2).unwrap(), "x1*x2");
        assert_eq!(canonical("[3]", 1).unwrap(), "(q^2 + 1 + q^(-2))");
    }

    #[test]
    fn prefactors_and_tensors() {
        let s = "exp[(h/4)*(H@0*H@1)]*(x (x) y)";
        assert_eq!(canonical(s, 1).unwrap(), s);
        let s2 = "exp[(h/4)*(-H^2)]*kb^2*y*x";
        assert_eq!(canonical(s2, 1).unwrap(), s2);
        let r = "exp[(h/4)*((2/3)*H1@0*H2@1 + (4/3)*H1@0*H1@1)]";
        assert!(parse_element(r, 2).is_ok());
        assert_eq!(parse_element("2 (x) x", 1).unwrap().slots(), 2);
    }

    #[test]
    fn round_trip() {
        assert!(ROUND_TRIP_CORPUS.len() >= 50);
        for (src, rank) in ROUND_TRIP_CORPUS {
            let e = parse_element(src, *rank).unwrap_or_else(|err| panic!("{src}: {err}"));
            let text = e.to_string();
            let back = parse_element_with(&text, *rank, e.slots(), &Rules::default())
                .unwrap_or_else(|err| panic!("{src} -> {text}: {err}"));
            assert_eq!(back, e, "{src} -> {text}");
        }
    }
}
