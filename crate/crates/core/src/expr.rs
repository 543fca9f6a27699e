//! Vector-field expressions: parsing, printing and elaboration to series.
//!
//! Grammar (whitespace is insignificant, `^` binds tightest):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary | power)*        adjacency multiplies: 2x, (1-x)(1+x)
//! unary   := '-' unary | power
//! power   := atom ('^' nat)?
//! atom    := rational | 'i' | 'x' | '(' expr ')' | func '(' expr ')'
//! func    := 'exp' | 'sin' | 'cos'
//! rational:= digits ('/' digits)?                no spaces around '/'
//! ```
//!
//! Only linear arguments `a·x` are accepted by elaboration inside
//! `exp`/`sin`/`cos`; anything else is reported as unsupported.

use std::fmt;

use num_complex::Complex64;

use crate::coeff::{GaussianRational, Rational, Scalar};
use crate::error::{Error, Result};
use crate::hurwitz::{exp_series, HurwitzSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Sin,
    Cos,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldExpr {
    Const(GaussianRational),
    Var,
    Add(Box<FieldExpr>, Box<FieldExpr>),
    Sub(Box<FieldExpr>, Box<FieldExpr>),
    Mul(Box<FieldExpr>, Box<FieldExpr>),
    Pow(Box<FieldExpr>, u32),
    Neg(Box<FieldExpr>),
    Apply(Func, Box<FieldExpr>),
}

// Tree builders, named after the node they create.
#[allow(clippy::should_implement_trait)]
impl FieldExpr {
    pub fn constant(c: impl Into<GaussianRational>) -> Self {
        FieldExpr::Const(c.into())
    }

    pub fn add(a: FieldExpr, b: FieldExpr) -> Self {
        FieldExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: FieldExpr, b: FieldExpr) -> Self {
        FieldExpr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: FieldExpr, b: FieldExpr) -> Self {
        FieldExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn pow(a: FieldExpr, k: u32) -> Self {
        FieldExpr::Pow(Box::new(a), k)
    }

    pub fn neg(a: FieldExpr) -> Self {
        FieldExpr::Neg(Box::new(a))
    }

    pub fn apply(func: Func, arg: FieldExpr) -> Self {
        FieldExpr::Apply(func, Box::new(arg))
    }

    /// True when the imaginary unit appears anywhere.
    pub fn uses_imaginary(&self) -> bool {
        match self {
            FieldExpr::Const(c) => !c.is_real(),
            FieldExpr::Var => false,
            FieldExpr::Add(a, b) | FieldExpr::Sub(a, b) | FieldExpr::Mul(a, b) => {
                a.uses_imaginary() || b.uses_imaginary()
            }
            FieldExpr::Pow(a, _) | FieldExpr::Neg(a) | FieldExpr::Apply(_, a) => a.uses_imaginary(),
        }
    }

    /// Degree bound when the expression is a polynomial in `x`, `None` if
    /// it contains `exp`/`sin`/`cos`.
    pub fn polynomial_degree(&self) -> Option<usize> {
        match self {
            FieldExpr::Const(_) => Some(0),
            FieldExpr::Var => Some(1),
            FieldExpr::Add(a, b) | FieldExpr::Sub(a, b) => {
                Some(a.polynomial_degree()?.max(b.polynomial_degree()?))
            }
            FieldExpr::Mul(a, b) => Some(a.polynomial_degree()? + b.polynomial_degree()?),
            FieldExpr::Pow(a, k) => Some(a.polynomial_degree()? * *k as usize),
            FieldExpr::Neg(a) => a.polynomial_degree(),
            FieldExpr::Apply(..) => None,
        }
    }

    /// `Some(a)` when the expression is structurally `a·x`.
    pub fn linear_scale(&self) -> Option<GaussianRational> {
        let (c0, c1) = affine_parts(self)?;
        c0.is_zero().then_some(c1)
    }

    /// Exact value at `x0`; polynomial expressions only.
    pub fn eval_exact<C: Scalar>(&self, x0: &C) -> Result<C> {
        Ok(match self {
            FieldExpr::Const(c) => C::from_gaussian(c).ok_or(Error::DomainRequired)?,
            FieldExpr::Var => x0.clone(),
            FieldExpr::Add(a, b) => a.eval_exact(x0)?.add_ref(&b.eval_exact(x0)?),
            FieldExpr::Sub(a, b) => a.eval_exact(x0)?.sub_ref(&b.eval_exact(x0)?),
            FieldExpr::Mul(a, b) => a.eval_exact(x0)?.mul_ref(&b.eval_exact(x0)?),
            FieldExpr::Pow(a, k) => a.eval_exact(x0)?.pow(*k as usize),
            FieldExpr::Neg(a) => -a.eval_exact(x0)?,
            FieldExpr::Apply(func, _) => {
                return Err(Error::NotEvaluable(format!(
                    "{} has no exact value at a rational point",
                    func.name()
                )))
            }
        })
    }

    /// Pointwise value in doubles. Complex constants are rejected.
    pub fn eval_f64(&self, y: f64) -> Result<f64> {
        Ok(match self {
            FieldExpr::Const(c) => {
                if !c.is_real() {
                    return Err(Error::NotEvaluable(format!("complex constant {c}")));
                }
                c.re.to_f64()
            }
            FieldExpr::Var => y,
            FieldExpr::Add(a, b) => a.eval_f64(y)? + b.eval_f64(y)?,
            FieldExpr::Sub(a, b) => a.eval_f64(y)? - b.eval_f64(y)?,
            FieldExpr::Mul(a, b) => a.eval_f64(y)? * b.eval_f64(y)?,
            FieldExpr::Pow(a, k) => a.eval_f64(y)?.powi(*k as i32),
            FieldExpr::Neg(a) => -a.eval_f64(y)?,
            FieldExpr::Apply(func, arg) => {
                let v = arg.eval_f64(y)?;
                match func {
                    Func::Exp => v.exp(),
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                }
            }
        })
    }

    /// Pointwise value in complex doubles.
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64> {
        Ok(match self {
            FieldExpr::Const(c) => c.to_complex(),
            FieldExpr::Var => z,
            FieldExpr::Add(a, b) => a.eval_complex(z)? + b.eval_complex(z)?,
            FieldExpr::Sub(a, b) => a.eval_complex(z)? - b.eval_complex(z)?,
            FieldExpr::Mul(a, b) => a.eval_complex(z)? * b.eval_complex(z)?,
            FieldExpr::Pow(a, k) => a.eval_complex(z)?.powu(*k),
            FieldExpr::Neg(a) => -a.eval_complex(z)?,
            FieldExpr::Apply(func, arg) => {
                let v = arg.eval_complex(z)?;
                match func {
                    Func::Exp => v.exp(),
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                }
            }
        })
    }

    /// Hurwitz series of the field to x-order `order`.
    pub fn elaborate<C: Scalar>(&self, order: usize) -> Result<HurwitzSeries<C>> {
        Ok(match self {
            FieldExpr::Const(c) => {
                HurwitzSeries::constant(C::from_gaussian(c).ok_or(Error::DomainRequired)?, order)
            }
            FieldExpr::Var => HurwitzSeries::x(order),
            FieldExpr::Add(a, b) => &a.elaborate::<C>(order)? + &b.elaborate(order)?,
            FieldExpr::Sub(a, b) => &a.elaborate::<C>(order)? - &b.elaborate(order)?,
            FieldExpr::Mul(a, b) => &a.elaborate::<C>(order)? * &b.elaborate(order)?,
            FieldExpr::Pow(a, k) => a.elaborate::<C>(order)?.pow(*k as usize),
            FieldExpr::Neg(a) => -&a.elaborate::<C>(order)?,
            FieldExpr::Apply(func, arg) => {
                let scale = arg
                    .linear_scale()
                    .ok_or_else(|| Error::UnsupportedArgument(arg.to_string()))?;
                let scale = C::from_gaussian(&scale).ok_or(Error::DomainRequired)?;
                match func {
                    Func::Exp => exp_series(scale, order),
                    Func::Sin => trig_series(&scale, order, [0, 1, 0, -1]),
                    Func::Cos => trig_series(&scale, order, [1, 0, -1, 0]),
                }
            }
        })
    }
}

// sin(ax), cos(ax): aⁿ times the period-4 derivative pattern at 0.
fn trig_series<C: Scalar>(scale: &C, order: usize, pattern: [i64; 4]) -> HurwitzSeries<C> {
    let mut power = C::one();
    HurwitzSeries::from_fn(order, |n| {
        let c = power.mul_ref(&C::from_i64(pattern[n % 4]));
        power = power.mul_ref(scale);
        c
    })
}

// (c0, c1) with the expression equal to c0 + c1·x, when it is affine.
fn affine_parts(e: &FieldExpr) -> Option<(GaussianRational, GaussianRational)> {
    let zero = GaussianRational::zero;
    match e {
        FieldExpr::Const(c) => Some((c.clone(), zero())),
        FieldExpr::Var => Some((zero(), GaussianRational::one())),
        FieldExpr::Add(a, b) => {
            let (a0, a1) = affine_parts(a)?;
            let (b0, b1) = affine_parts(b)?;
            Some((a0 + b0, a1 + b1))
        }
        FieldExpr::Sub(a, b) => {
            let (a0, a1) = affine_parts(a)?;
            let (b0, b1) = affine_parts(b)?;
            Some((a0 - b0, a1 - b1))
        }
        FieldExpr::Neg(a) => {
            let (a0, a1) = affine_parts(a)?;
            Some((-a0, -a1))
        }
        FieldExpr::Mul(a, b) => {
            let (a0, a1) = affine_parts(a)?;
            let (b0, b1) = affine_parts(b)?;
            match (a1.is_zero(), b1.is_zero()) {
                (true, _) => Some((a0.mul_ref(&b0), a0.mul_ref(&b1))),
                (false, true) => Some((a0.mul_ref(&b0), a1.mul_ref(&b0))),
                (false, false) => None,
            }
        }
        FieldExpr::Pow(a, k) => {
            let (a0, a1) = affine_parts(a)?;
            match k {
                0 => Some((GaussianRational::one(), zero())),
                1 => Some((a0, a1)),
                _ if a1.is_zero() => Some((a0.pow(*k as usize), zero())),
                _ => None,
            }
        }
        FieldExpr::Apply(..) => None,
    }
}

// ---------------------------------------------------------------------------
// Printing

const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_UNARY: u8 = 3;
const PREC_POWER: u8 = 4;
const PREC_ATOM: u8 = 5;

fn precedence(e: &FieldExpr) -> u8 {
    match e {
        FieldExpr::Add(..) | FieldExpr::Sub(..) => PREC_SUM,
        FieldExpr::Mul(..) => PREC_PRODUCT,
        FieldExpr::Neg(_) => PREC_UNARY,
        FieldExpr::Pow(..) => PREC_POWER,
        FieldExpr::Const(c) if is_plain_literal(c) => PREC_ATOM,
        FieldExpr::Const(_) => PREC_SUM,
        FieldExpr::Var | FieldExpr::Apply(..) => PREC_ATOM,
    }
}

// Literals the lexer produces as a single token: nonnegative rationals and `i`.
fn is_plain_literal(c: &GaussianRational) -> bool {
    (c.is_real() && !c.re.is_negative()) || (c.re.is_zero() && c.im == Rational::one())
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &FieldExpr, min_prec: u8) -> fmt::Result {
    if precedence(e) < min_prec {
        write!(f, "(")?;
        write_expr(f, e)?;
        write!(f, ")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &FieldExpr) -> fmt::Result {
    match e {
        FieldExpr::Const(c) if is_plain_literal(c) => write!(f, "{c}"),
        FieldExpr::Const(c) => write_gaussian_expr(f, c),
        FieldExpr::Var => write!(f, "x"),
        FieldExpr::Add(a, b) => {
            write_at(f, a, PREC_SUM)?;
            write!(f, " + ")?;
            write_at(f, b, PREC_PRODUCT)
        }
        FieldExpr::Sub(a, b) => {
            write_at(f, a, PREC_SUM)?;
            write!(f, " - ")?;
            write_at(f, b, PREC_PRODUCT)
        }
        FieldExpr::Mul(a, b) => {
            write_at(f, a, PREC_PRODUCT)?;
            write!(f, "*")?;
            write_at(f, b, PREC_UNARY)
        }
        FieldExpr::Neg(a) => {
            write!(f, "-")?;
            write_at(f, a, PREC_UNARY)
        }
        FieldExpr::Pow(a, k) => {
            write_at(f, a, PREC_ATOM)?;
            write!(f, "^{k}")
        }
        FieldExpr::Apply(func, arg) => {
            write!(f, "{}(", func.name())?;
            write_expr(f, arg)?;
            write!(f, ")")
        }
    }
}

// A constant with no single-token spelling, written as an expression with
// the same value.
fn write_gaussian_expr(f: &mut fmt::Formatter<'_>, c: &GaussianRational) -> fmt::Result {
    let write_real = |f: &mut fmt::Formatter<'_>, r: &Rational| {
        if r.is_negative() {
            write!(f, "-{}", r.abs())
        } else {
            write!(f, "{r}")
        }
    };
    if c.is_real() {
        return write_real(f, &c.re);
    }
    if !c.re.is_zero() {
        write_real(f, &c.re)?;
        write!(f, " + ")?;
    }
    write_real(f, &c.im)?;
    write!(f, "*i")
}

impl fmt::Display for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

// ---------------------------------------------------------------------------
// Lexing and parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational, bool),
    X,
    I,
    Func(Func),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(q, _) => format!("number {q}"),
            Tok::X => "'x'".into(),
            Tok::I => "'i'".into(),
            Tok::Func(func) => format!("'{}'", func.name()),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self, Tok::Num(..) | Tok::X | Tok::I | Tok::Func(_) | Tok::LParen)
    }
}

const ATOM_START: &[&str] = &["number", "'x'", "'i'", "'('", "'exp'", "'sin'", "'cos'"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'x' => Some(Tok::X),
            b'i' => Some(Tok::I),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((start, tok));
            pos += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut integral = true;
            if pos + 1 < bytes.len() && bytes[pos] == b'/' && bytes[pos + 1].is_ascii_digit() {
                integral = false;
                pos += 1;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
            }
            let value: Rational = text[start..pos].parse().map_err(|_| Error::Parse {
                offset: start,
                expected: vec!["nonzero denominator".into()],
                found: format!("{:?}", &text[start..pos]),
            })?;
            out.push((start, Tok::Num(value, integral)));
            continue;
        }
        let func = [Func::Exp, Func::Sin, Func::Cos]
            .into_iter()
            .find(|func| text[start..].starts_with(func.name()));
        if let Some(func) = func {
            out.push((start, Tok::Func(func)));
            pos += 3;
            continue;
        }
        let found = text[start..].chars().next().unwrap_or('?');
        return Err(Error::Parse {
            offset: start,
            expected: ATOM_START
                .iter()
                .chain(&["'+'", "'-'", "'*'", "'^'", "')'"])
                .map(|s| s.to_string())
                .collect(),
            found: format!("{found:?}"),
        });
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].1.clone();
        if tok != Tok::End {
            self.pos += 1;
        }
        tok
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&[name])
        }
    }

    fn expr(&mut self) -> Result<FieldExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = FieldExpr::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = FieldExpr::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<FieldExpr> {
        let mut lhs = self.unary()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                lhs = FieldExpr::mul(lhs, self.unary()?);
            } else if self.peek().starts_atom() {
                lhs = FieldExpr::mul(lhs, self.power()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<FieldExpr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(FieldExpr::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<FieldExpr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Num(q, true) => {
                let k = u32::try_from(q.numer()).map_err(|_| Error::Parse {
                    offset: self.offset(),
                    expected: vec!["exponent below 2^32".into()],
                    found: format!("number {q}"),
                })?;
                self.bump();
                Ok(FieldExpr::pow(base, k))
            }
            _ => self.fail(&["natural exponent"]),
        }
    }

    fn atom(&mut self) -> Result<FieldExpr> {
        match self.peek().clone() {
            Tok::Num(q, _) => {
                self.bump();
                Ok(FieldExpr::constant(q))
            }
            Tok::X => {
                self.bump();
                Ok(FieldExpr::Var)
            }
            Tok::I => {
                self.bump();
                Ok(FieldExpr::Const(GaussianRational::i()))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Func(func) => {
                self.bump();
                self.expect(Tok::LParen, "'('")?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(FieldExpr::apply(func, arg))
            }
            _ => self.fail(&[ATOM_START, &["'-'"]].concat()),
        }
    }
}

/// Parses a field expression; errors carry a 0-based byte offset.
pub fn parse(text: &str) -> Result<FieldExpr> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = parser.expr()?;
    if *parser.peek() != Tok::End {
        return parser.fail(&["'+'", "'-'", "'*'", "end of input"]);
    }
    Ok(e)
}

impl std::str::FromStr for FieldExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn c(n: i64) -> FieldExpr {
        FieldExpr::constant(q(n))
    }

    fn x() -> FieldExpr {
        FieldExpr::Var
    }

    fn series(v: &[i64]) -> HurwitzSeries<Rational> {
        HurwitzSeries::new(v.iter().map(|&n| q(n)).collect()).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse("x^2 + 1").unwrap(),
            FieldExpr::add(FieldExpr::pow(x(), 2), c(1))
        );
        assert_eq!(
            parse("(1-x)*(x^2+1)").unwrap(),
            FieldExpr::mul(
                FieldExpr::sub(c(1), x()),
                FieldExpr::add(FieldExpr::pow(x(), 2), c(1))
            )
        );
        assert_eq!(
            parse("exp(x) + sin(x)").unwrap(),
            FieldExpr::add(
                FieldExpr::apply(Func::Exp, x()),
                FieldExpr::apply(Func::Sin, x())
            )
        );
    }

    #[test]
    fn adjacency_and_unary_minus() {
        assert_eq!(parse("2x").unwrap(), FieldExpr::mul(c(2), x()));
        assert_eq!(parse("(1-x)(1+x)").unwrap(), parse("(1-x)*(1+x)").unwrap());
        assert_eq!(parse("-x^2").unwrap(), FieldExpr::neg(FieldExpr::pow(x(), 2)));
        assert_eq!(parse("2-x").unwrap(), FieldExpr::sub(c(2), x()));
        assert_eq!(parse("x*-1").unwrap(), FieldExpr::mul(x(), FieldExpr::neg(c(1))));
        assert_eq!(parse("1/2 x").unwrap(), FieldExpr::mul(FieldExpr::constant(Rational::new(1, 2).unwrap()), x()));
        assert_eq!(
            parse("exp(ix)").unwrap(),
            FieldExpr::apply(Func::Exp, FieldExpr::mul(FieldExpr::Const(GaussianRational::i()), x()))
        );
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let cases = [("x +", 3), ("x ^ y", 4), ("(x", 2), ("x)", 1), ("2 / 3", 2), ("y", 0), ("exp x", 4), ("1/0", 0)];
        for (text, offset) in cases {
            match parse(text) {
                Err(Error::Parse { offset: got, expected, .. }) => {
                    assert_eq!(got, offset, "{text:?}");
                    assert!(!expected.is_empty());
                }
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn elaboration_examples() {
        assert_eq!(parse("x^2+1").unwrap().elaborate::<Rational>(4).unwrap(), series(&[1, 0, 2, 0, 0]));
        assert_eq!(parse("exp(2x)").unwrap().elaborate::<Rational>(4).unwrap(), series(&[1, 2, 4, 8, 16]));
        assert_eq!(parse("sin(x)").unwrap().elaborate::<Rational>(5).unwrap(), series(&[0, 1, 0, -1, 0, 1]));
        assert_eq!(parse("cos(2x)").unwrap().elaborate::<Rational>(4).unwrap(), series(&[1, 0, -4, 0, 16]));
        assert_eq!(parse("exp(3x - x)").unwrap().elaborate::<Rational>(2).unwrap(), series(&[1, 2, 4]));
    }

    #[test]
    fn elaboration_errors() {
        assert_eq!(parse("i x").unwrap().elaborate::<Rational>(3), Err(Error::DomainRequired));
        assert!(parse("i x").unwrap().elaborate::<GaussianRational>(3).is_ok());
        for text in ["exp(x^2)", "sin(1)", "exp(exp(x))", "cos(x + 1)"] {
            assert!(
                matches!(parse(text).unwrap().elaborate::<Rational>(3), Err(Error::UnsupportedArgument(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn sine_via_euler() {
        let direct = parse("sin(x)").unwrap().elaborate::<GaussianRational>(9).unwrap();
        let euler = parse("-1/2 i exp(i x) + 1/2 i exp(-i x)").unwrap().elaborate::<GaussianRational>(9).unwrap();
        assert_eq!(direct, euler);
    }

    #[test]
    fn printing_reparses() {
        for text in ["x^2 + 1", "(1-x)*(x^2+1)", "-(x+1)^3", "x - (1 - x)", "2*(3*x)", "-x*-x", "(-x)^2", "exp(-2x) - cos(1/3 x)", "i*x + 5/7", "x^0"] {
            let e = parse(text).unwrap();
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "{text} printed as {printed}");
        }
    }

    #[test]
    fn evaluation() {
        let e = parse("1 - x + x^2 - x^3").unwrap();
        assert_eq!(e.eval_exact(&q(2)).unwrap(), q(-5));
        assert_eq!(e.polynomial_degree(), Some(3));
        assert!((e.eval_f64(0.5).unwrap() - 0.625).abs() < 1e-15);
        let t = parse("exp(x) + sin(x)").unwrap();
        assert!(t.eval_exact(&q(0)).is_err());
        assert_eq!(t.polynomial_degree(), None);
        assert!((t.eval_f64(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(parse("i").unwrap().eval_f64(0.0).is_err());
    }
}
