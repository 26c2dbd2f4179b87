//! Order arithmetic for group shapes such as `[2^14].Sym6` or `2^{1+8}.Sp6(2)`.
//!
//! Extensions `.`, direct products `x`/`*` and bracketed `[n]` all contribute the
//! product of orders; only orders are evaluated, never group structure.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::matrix::{int, Int};

/// `|Sym_k| = k!`.
pub fn sym_order(k: u64) -> Int {
    (1..=k).fold(Int::one(), |a, i| a * int(i as i64))
}

/// `|Sp_{2m}(q)| = q^{m^2} prod_{i=1}^{m} (q^{2i} - 1)`.
pub fn sp_order(two_m: u64, q: u64) -> Result<Int> {
    if two_m % 2 != 0 {
        return Err(Error::Parse(format!("Sp_{} needs even degree", two_m)));
    }
    let m = two_m / 2;
    let q = int(q as i64);
    let mut acc: Int = Pow::pow(&q, (m * m) as u32);
    for i in 1..=m {
        acc *= Pow::pow(&q, (2 * i) as u32) - Int::one();
    }
    Ok(acc)
}

/// `|GO^e_{2m}(q)| = 2 q^{m(m-1)} (q^m - e) prod_{i=1}^{m-1} (q^{2i} - 1)` for `e = +-1`.
pub fn go_order(sign: i64, two_m: u64, q: u64) -> Result<Int> {
    if two_m % 2 != 0 || two_m == 0 {
        return Err(Error::Parse(format!(
            "GO_{} needs positive even degree",
            two_m
        )));
    }
    let m = two_m / 2;
    let qi = int(q as i64);
    let mut acc: Int = int(2) * Pow::pow(&qi, (m * (m - 1)) as u32);
    acc *= Pow::pow(&qi, m as u32) - int(sign);
    for i in 1..m {
        acc *= Pow::pow(&qi, (2 * i) as u32) - Int::one();
    }
    Ok(acc)
}

/// `|Omega^e_{2m}(q)|`: index 2 in `GO` for even `q`, index 4 for odd `q`.
pub fn omega_order(sign: i64, two_m: u64, q: u64) -> Result<Int> {
    let go = go_order(sign, two_m, q)?;
    Ok(if q % 2 == 0 { go / int(2) } else { go / int(4) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Number(Int),
    Power(Box<Shape>, u32),
    Product(Vec<Shape>),
    Sym(u64),
    Alt(u64),
    Sp(u64, u64),
    Go(i64, u64, u64),
    Omega(i64, u64, u64),
}

impl Shape {
    pub fn order(&self) -> Result<Int> {
        Ok(match self {
            Shape::Number(n) => n.clone(),
            Shape::Power(b, e) => Pow::pow(&b.order()?, *e),
            Shape::Product(parts) => {
                let mut acc = Int::one();
                for p in parts {
                    acc *= p.order()?;
                }
                acc
            }
            Shape::Sym(k) => sym_order(*k),
            Shape::Alt(k) => sym_order(*k) / int(if *k >= 2 { 2 } else { 1 }),
            Shape::Sp(d, q) => sp_order(*d, *q)?,
            Shape::Go(e, d, q) => go_order(*e, *d, *q)?,
            Shape::Omega(e, d, q) => omega_order(*e, *d, *q)?,
        })
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{} at position {} in {:?}",
            what, self.pos, self.src
        ))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {:?}", c)))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| self.err("number too large"))
    }

    fn product(&mut self) -> Result<Shape> {
        let mut parts = vec![self.power()?];
        while matches!(self.peek(), Some('.' | '·' | '*' | '×' | 'x')) {
            self.pos += 1;
            parts.push(self.power()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one")
        } else {
            Shape::Product(parts)
        })
    }

    fn power(&mut self) -> Result<Shape> {
        let base = self.primary()?;
        if self.eat('^') {
            let e = self.exponent()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(Shape::Power(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u64> {
        if self.eat('{') {
            let mut total = self.number()?;
            while self.eat('+') {
                total += self.number()?;
            }
            self.expect('}')?;
            Ok(total)
        } else {
            self.number()
        }
    }

    fn subscript(&mut self) -> Result<u64> {
        self.eat('_');
        if self.eat('{') {
            let n = self.number()?;
            self.expect('}')?;
            Ok(n)
        } else {
            self.number()
        }
    }

    fn sign(&mut self) -> Result<i64> {
        let had_caret = self.eat('^');
        if self.eat('+') {
            Ok(1)
        } else if self.eat('-') {
            Ok(-1)
        } else if had_caret {
            Err(self.err("expected + or -"))
        } else {
            Err(self.err("orthogonal group needs a sign"))
        }
    }

    fn field(&mut self) -> Result<u64> {
        self.expect('(')?;
        let q = self.number()?;
        self.expect(')')?;
        Ok(q)
    }

    fn primary(&mut self) -> Result<Shape> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Shape::Number(int(self.number()? as i64))),
            Some('[') => {
                self.pos += 1;
                let inner = self.product()?;
                self.expect(']')?;
                Ok(inner)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.product()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphabetic()) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match name.as_str() {
                    "Sym" | "S" => Ok(Shape::Sym(self.subscript()?)),
                    "Alt" | "A" => Ok(Shape::Alt(self.subscript()?)),
                    "Sp" => {
                        let d = self.subscript()?;
                        Ok(Shape::Sp(d, self.field()?))
                    }
                    "GO" | "O" => {
                        let e = self.sign()?;
                        let d = self.subscript()?;
                        Ok(Shape::Go(e, d, self.field()?))
                    }
                    "Omega" | "Ω" => {
                        let e = self.sign()?;
                        let d = self.subscript()?;
                        Ok(Shape::Omega(e, d, self.field()?))
                    }
                    other => Err(self.err(&format!("unknown group name {:?}", other))),
                }
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

pub fn parse_shape(src: &str) -> Result<Shape> {
    let mut p = Parser::new(src);
    let s = p.product()?;
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(s)
}

/// Prime factorisation by trial division.
pub fn factorize(n: &Int) -> BTreeMap<Int, u32> {
    let mut out = BTreeMap::new();
    let mut m = n.clone();
    if m.is_zero() {
        return out;
    }
    if m < Int::zero() {
        m = -m;
    }
    let mut p = int(2);
    while &p * &p <= m {
        while (&m % &p).is_zero() {
            *out.entry(p.clone()).or_insert(0) += 1;
            m /= &p;
        }
        p += if p == int(2) { 1 } else { 2 };
    }
    if m > Int::one() {
        *out.entry(m).or_insert(0) += 1;
    }
    out
}

pub struct Factored<'a>(pub &'a BTreeMap<Int, u32>);

impl fmt::Display for Factored<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{}^{}", p, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub expr: String,
    pub claimed: String,
    pub value: Int,
    pub claimed_value: Int,
    pub value_factors: BTreeMap<Int, u32>,
    pub claimed_factors: BTreeMap<Int, u32>,
    pub equal: bool,
}

impl fmt::Display for ShapeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} ({}) vs claimed {} = {}: {}",
            self.expr,
            self.value,
            Factored(&self.value_factors),
            self.claimed,
            self.claimed_value,
            if self.equal { "equal" } else { "DIFFERENT" }
        )
    }
}

pub fn shape_order_check(expr: &str, claimed: &str) -> Result<ShapeReport> {
    let value = parse_shape(expr)?.order()?;
    let claimed_value = parse_shape(claimed)?.order()?;
    let value_factors = factorize(&value);
    let claimed_factors = factorize(&claimed_value);
    Ok(ShapeReport {
        expr: expr.to_string(),
        claimed: claimed.to_string(),
        equal: value_factors == claimed_factors,
        value,
        claimed_value,
        value_factors,
        claimed_factors,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerReport {
    pub centralizer: ShapeReport,
    pub quotient_order: Int,
    /// `|C| / |C / <g>|`.
    pub ratio: Int,
    pub sym6: Int,
}

impl CentralizerReport {
    pub fn consistent(&self) -> bool {
        self.centralizer.equal && self.ratio == int(2) && self.sym6 == int(720)
    }
}

/// The centralizer `[2^15].Sym6` of order `2^19.3^2.5` against its quotient `[2^14].Sym6`.
pub fn centralizer_order_check() -> Result<CentralizerReport> {
    let centralizer = shape_order_check("[2^15].Sym6", "2^19.3^2.5")?;
    let quotient_order = parse_shape("[2^14].Sym6")?.order()?;
    let (ratio, rem) = centralizer.value.div_rem(&quotient_order);
    if !rem.is_zero() {
        return Err(Error::Precondition(
            "quotient order does not divide the centralizer order".into(),
        ));
    }
    Ok(CentralizerReport {
        centralizer,
        quotient_order,
        ratio,
        sym6: sym_order(6),
    })
}
