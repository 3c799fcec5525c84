//! Text expressions over a preset: parsing, canonical printing and elaboration to
//! normal-form elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' signedInt)?
//! atom   := ident | rational | 'q' | '(' expr ')'
//! ```
//!
//! A leading `-` on a term is accepted as a negation, and `x / y` reads as `x * y^-1`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::error::{Error, Result};
use crate::presets::{primed_in_d, AlgebraParams};
use crate::qfield::{qpow, QScalar};
use crate::rewrite::{Element, Presentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative rational literal.
    Num(BigRational),
    Q,
    Sym(String),
    /// Signed summands; `true` marks a subtracted term.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    fn is_atom(&self) -> bool {
        matches!(self, Expr::Num(r) if r.is_integer()) || matches!(self, Expr::Q | Expr::Sym(_))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => write!(f, "{r}"),
            Expr::Q => write!(f, "q"),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::Sum(terms) => {
                for (i, (neg, t)) in terms.iter().enumerate() {
                    match (i, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    if matches!(t, Expr::Sum(_)) {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
            Expr::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    if matches!(x, Expr::Sum(_) | Expr::Product(_)) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            Expr::Pow(base, k) => {
                if base.is_atom() {
                    write!(f, "{base}^{k}")
                } else {
                    write!(f, "({base})^{k}")
                }
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let neg = self.eat(b'-');
        terms.push((neg, self.term()?));
        loop {
            if self.eat(b'+') {
                terms.push((false, self.term()?));
            } else if self.eat(b'-') {
                terms.push((true, self.term()?));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 && !terms[0].0 { terms.pop().unwrap().1 } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut fs = vec![self.factor()?];
        loop {
            if self.eat(b'*') {
                fs.push(self.factor()?);
            } else if self.eat(b'/') {
                fs.push(Expr::Pow(Box::new(self.factor()?), -1));
            } else {
                break;
            }
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { Expr::Product(fs) })
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = if self.eat(b'-') {
                true
            } else {
                self.eat(b'+');
                false
            };
            let k: i64 = match i64::try_from(self.digits()?) {
                Ok(k) => k,
                Err(_) => return self.err("exponent out of range"),
            };
            return Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let slash_digit = self.peek() == Some(b'/') && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit);
                if slash_digit {
                    self.pos += 1;
                    let den = self.digits()?;
                    if den == BigInt::from(0) {
                        return self.err("zero denominator");
                    }
                    Ok(Expr::Num(BigRational::new(num, den)))
                } else {
                    Ok(Expr::Num(BigRational::from_integer(num)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(if s == "q" { Expr::Q } else { Expr::Sym(s.to_string()) })
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Names and macros an expression is elaborated against.
#[derive(Clone, Debug)]
pub struct Context<'a> {
    pub algebra: &'a Presentation,
    macros: HashMap<String, Element>,
}

impl<'a> Context<'a> {
    pub fn new(algebra: &'a Presentation) -> Self {
        Context { algebra, macros: HashMap::new() }
    }

    pub fn with_macro(mut self, name: &str, value: Element) -> Self {
        self.macros.insert(name.to_string(), value);
        self
    }

    /// Adds `phi1`, `phi2` for S, and additionally the primed generators for D_q.
    pub fn with_standard_macros(self, params: AlgebraParams) -> Result<Self> {
        let p = self.algebra;
        let names = &p.table().names;
        if ["Ep", "Fp", "bp", "cp"].iter().all(|g| names.iter().any(|n| n == g)) {
            let phi1 = p.commutator(&p.gen("Ep")?, &p.gen("cp")?);
            let phi2 = p.commutator(&p.gen("Fp")?, &p.gen("bp")?);
            return Ok(self.with_macro("phi1", phi1).with_macro("phi2", phi2));
        }
        if ["F", "c", "K", "a", "E", "b"].iter().all(|g| names.iter().any(|n| n == g)) && names.len() == 6 {
            let primed = primed_in_d(params, p)?;
            let mut ctx = self;
            for g in ["bp", "cp", "Ep", "Fp", "phi1", "phi2"] {
                ctx = ctx.with_macro(g, primed.get(g).expect("primed").clone());
            }
            return Ok(ctx);
        }
        Ok(self)
    }

    fn symbol(&self, s: &str) -> Result<Element> {
        if let Some(x) = self.macros.get(s) {
            return Ok(x.clone());
        }
        if let Ok(g) = self.algebra.gen_index(s) {
            return self.algebra.gen_pow(g, 1);
        }
        if let Some(stem) = s.strip_suffix('i') {
            if let Ok(g) = self.algebra.gen_index(stem) {
                return self.algebra.gen_pow(g, -1);
            }
        }
        Err(Error::UnknownGenerator(s.to_string()))
    }

    pub fn elaborate(&self, e: &Expr) -> Result<Element> {
        let p = self.algebra;
        match e {
            Expr::Num(r) => Ok(Element::scalar(QScalar::from_rational(r.clone()))),
            Expr::Q => Ok(Element::scalar(qpow(1))),
            Expr::Sym(s) => self.symbol(s),
            Expr::Sum(terms) => {
                let mut acc = Element::zero();
                for (neg, t) in terms {
                    let x = self.elaborate(t)?;
                    if *neg {
                        acc -= &x;
                    } else {
                        acc += &x;
                    }
                }
                Ok(acc)
            }
            Expr::Product(fs) => {
                let xs = fs.iter().map(|f| self.elaborate(f)).collect::<Result<Vec<_>>>()?;
                Ok(p.multiply_all(&xs))
            }
            Expr::Pow(base, k) => {
                if let (Expr::Sym(s), true) = (base.as_ref(), *k < 0) {
                    if !self.macros.contains_key(s) {
                        if let Ok(g) = p.gen_index(s) {
                            if !p.is_invertible(g) {
                                return Err(Error::NegativePowerOfNonInvertible(s.clone()));
                            }
                        }
                    }
                }
                let x = self.elaborate(base)?;
                if let Some(c) = x.as_scalar() {
                    return Ok(Element::scalar(c.pow(*k)?));
                }
                p.pow(&x, *k)
            }
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        self.elaborate(&parse(text)?)
    }
}

/// Seeded random expression over the given symbols, for round-trip testing.
pub fn random_expr<R: Rng>(rng: &mut R, symbols: &[&str], depth: u32) -> Expr {
    let leaf = |rng: &mut R| -> Expr {
        match rng.gen_range(0..5) {
            0 => Expr::Num(BigRational::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=3).into())),
            1 => Expr::Q,
            _ => Expr::Sym(symbols[rng.gen_range(0..symbols.len())].to_string()),
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..4) {
        0 => leaf(rng),
        1 => {
            let n = rng.gen_range(2..=3);
            Expr::Sum((0..n).map(|_| (rng.gen_bool(0.4), random_expr(rng, symbols, depth - 1))).collect())
        }
        2 => {
            let n = rng.gen_range(2..=3);
            Expr::Product((0..n).map(|_| random_expr(rng, symbols, depth - 1)).collect())
        }
        _ => Expr::Pow(Box::new(random_expr(rng, symbols, depth - 1)), rng.gen_range(-2..=3)),
    }
}

/// Canonical text of `x`; parses back to an equal element.
pub fn print_element(p: &Presentation, x: &Element) -> String {
    p.render(x)
}
