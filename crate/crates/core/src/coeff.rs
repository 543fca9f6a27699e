//! Exact scalars for the coefficient rings: the rationals and the Gaussian
//! rationals, plus cached binomials and factorials.
//!
//! Both scalar types print in a compact textual form that is also their
//! parse format: `p/q` (or `p` when the denominator is one) for rationals,
//! and `p/q+r/s i` for Gaussian rationals, with a zero part omitted and a
//! unit imaginary coefficient written as a bare `i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order for which binomials and factorials are tabulated.
pub const TABLE_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Rational,
    Gaussian,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => f.write_str("rational"),
            Domain::Gaussian => f.write_str("gaussian"),
        }
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Domain::Rational),
            "gaussian" => Ok(Domain::Gaussian),
            other => Err(Error::Json(format!("unknown domain {other:?}"))),
        }
    }
}

/// Field operations shared by every coefficient ring used in the crate.
///
/// Implementors are exact, normalized, and compare structurally.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const DOMAIN: Domain;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn from_integer(n: BigInt) -> Self;
    fn from_rational(q: Rational) -> Self;
    /// `None` when the value does not live in this domain.
    fn from_gaussian(g: &GaussianRational) -> Option<Self>;
    fn to_gaussian(&self) -> GaussianRational;
    fn to_complex(&self) -> Complex64;
    fn parse_scalar(s: &str) -> Result<Self>;

    fn div_ref(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul_ref(&rhs.inv()?))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_integer(BigInt::from(n))
    }

    fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Rational

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_integer(s: &str, whole: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidScalar(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::InvalidScalar(whole.to_string()))
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            None => Ok(Rational::from_int(parse_integer(s, s)?)),
            Some((n, d)) => {
                if d.starts_with('-') {
                    return Err(Error::InvalidScalar(s.to_string()));
                }
                let num = parse_integer(n, s)?;
                let den = parse_integer(d, s)?;
                Rational::new(num, den)
            }
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Scalar for Rational {
    const DOMAIN: Domain = Domain::Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }
    fn from_integer(n: BigInt) -> Self {
        Rational::from_int(n)
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn from_gaussian(g: &GaussianRational) -> Option<Self> {
        g.im.is_zero().then(|| g.re.clone())
    }
    fn to_gaussian(&self) -> GaussianRational {
        GaussianRational::from(self.clone())
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }
    fn parse_scalar(s: &str) -> Result<Self> {
        s.parse()
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`
    pub fn norm(&self) -> Rational {
        self.re.mul_ref(&self.re) + self.im.mul_ref(&self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_abs = self.im.abs();
        let im_text = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{im_abs} i")
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) if self.im.is_negative() => write!(f, "-{im_text}"),
            (true, false) => write!(f, "{im_text}"),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{sign}{im_text}", self.re)
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Rational {
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidScalar(s.to_string());
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussianRational::from(s.parse::<Rational>()?));
        };
        // The imaginary part starts at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx)
            .last();
        let (re_text, im_text) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if re_text.is_empty() {
            Rational::zero()
        } else {
            re_text.parse::<Rational>().map_err(|_| bad())?
        };
        let (negative, magnitude) = match im_text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, im_text.strip_prefix('+').unwrap_or(im_text)),
        };
        let magnitude = if magnitude.is_empty() {
            Rational::one()
        } else {
            let digits = magnitude.strip_suffix(' ').ok_or_else(bad)?;
            if digits.starts_with(['+', '-']) {
                return Err(bad());
            }
            digits.parse::<Rational>().map_err(|_| bad())?
        };
        if (re_text.is_empty() && split.is_some()) || (split.is_none() && body.starts_with('+')) {
            return Err(bad());
        }
        let im = if negative { -magnitude } else { magnitude };
        Ok(GaussianRational::new(re, im))
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Scalar for GaussianRational {
    const DOMAIN: Domain = Domain::Gaussian;

    fn zero() -> Self {
        GaussianRational::from(Rational::zero())
    }
    fn one() -> Self {
        GaussianRational::from(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        GaussianRational::new(self.re.add_ref(&rhs.re), self.im.add_ref(&rhs.im))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        GaussianRational::new(self.re.sub_ref(&rhs.re), self.im.sub_ref(&rhs.im))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from(self.re.mul_ref(&rhs.re));
        }
        let re = self.re.mul_ref(&rhs.re) - self.im.mul_ref(&rhs.im);
        let im = self.re.mul_ref(&rhs.im) + self.im.mul_ref(&rhs.re);
        GaussianRational::new(re, im)
    }
    fn inv(&self) -> Result<Self> {
        let norm = self.norm();
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(GaussianRational::new(
            c.re.checked_div(&norm)?,
            c.im.checked_div(&norm)?,
        ))
    }
    fn from_integer(n: BigInt) -> Self {
        GaussianRational::from(Rational::from_int(n))
    }
    fn from_rational(q: Rational) -> Self {
        GaussianRational::from(q)
    }
    fn from_gaussian(g: &GaussianRational) -> Option<Self> {
        Some(g.clone())
    }
    fn to_gaussian(&self) -> GaussianRational {
        self.clone()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
    fn parse_scalar(s: &str) -> Result<Self> {
        s.parse()
    }
}

// ---------------------------------------------------------------------------
// Binomials and factorials

fn binomial_table() -> &'static Vec<Vec<BigInt>> {
    static TABLE: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(TABLE_LIMIT + 1);
        for n in 0..=TABLE_LIMIT {
            let mut row = vec![BigInt::one(); n + 1];
            for k in 1..n {
                row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
            }
            rows.push(row);
        }
        rows
    })
}

fn factorial_table() -> &'static Vec<BigInt> {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = vec![BigInt::one()];
        for n in 1..=TABLE_LIMIT {
            let next = &out[n - 1] * BigInt::from(n);
            out.push(next);
        }
        out
    })
}

/// Exact `C(n, k)`; rows up to [`TABLE_LIMIT`] come from a shared table.
pub fn binomial(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::OutOfRange(format!("binomial({n}, {k}) needs k <= n")));
    }
    if n <= TABLE_LIMIT {
        return Ok(binomial_table()[n][k].clone());
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    Ok(acc)
}

/// Table lookup for `n <= TABLE_LIMIT`, otherwise computed.
pub fn factorial(n: usize) -> BigInt {
    if n <= TABLE_LIMIT {
        return factorial_table()[n].clone();
    }
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Borrowing variant of [`binomial`] for hot loops; panics when out of the table.
pub(crate) fn binomial_ref(n: usize, k: usize) -> &'static BigInt {
    &binomial_table()[n][k]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn rational_examples() {
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
        assert_eq!(q("2/3") * q("3/2"), Rational::one());
        assert_eq!(q("1").checked_div(&q("0")), Err(Error::DivisionByZero));
        assert_eq!(Rational::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_is_canonical() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(Rational::new(0, 7).unwrap().to_string(), "0");
        assert_eq!(q("4/2").to_string(), "2");
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn rational_rejects_junk() {
        for s in ["", "/", "1/", "/2", "1/-2", "1.5", "--1", "1/2/3", "+1", " 1"] {
            assert!(s.parse::<Rational>().is_err(), "{s:?} should fail");
        }
    }

    #[test]
    fn gaussian_examples() {
        let i = GaussianRational::i();
        assert_eq!(i.clone() * i.clone(), GaussianRational::from(q("-1")));
        let two_i = g("2 i");
        assert_eq!(
            GaussianRational::one().div_ref(&two_i).unwrap(),
            g("-1/2 i")
        );
        assert_eq!(g("3/2+i").conj(), g("3/2-i"));
        assert_eq!(
            GaussianRational::one().div_ref(&GaussianRational::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn gaussian_printing() {
        let cases = [
            ("0", (q("0"), q("0"))),
            ("i", (q("0"), q("1"))),
            ("-i", (q("0"), q("-1"))),
            ("-1/2 i", (q("0"), q("-1/2"))),
            ("3/2+i", (q("3/2"), q("1"))),
            ("3/2-i", (q("3/2"), q("-1"))),
            ("-7+2/3 i", (q("-7"), q("2/3"))),
            ("5", (q("5"), q("0"))),
        ];
        for (text, (re, im)) in cases {
            let value = GaussianRational::new(re, im);
            assert_eq!(value.to_string(), text);
            assert_eq!(g(text), value, "parsing {text}");
        }
    }

    #[test]
    fn gaussian_rejects_junk() {
        for s in ["ii", "1+", "+i", "1+2i", "2/ i", "1+-2 i", "x"] {
            assert!(s.parse::<GaussianRational>().is_err(), "{s:?} should fail");
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), BigInt::from(6));
        assert_eq!(binomial(10, 5).unwrap(), BigInt::from(252));
        for n in 0..=64 {
            assert_eq!(binomial(n, 0).unwrap(), BigInt::one());
        }
        assert!(matches!(binomial(3, 4), Err(Error::OutOfRange(_))));
        assert_eq!(binomial(70, 3).unwrap(), BigInt::from(54740));
    }

    #[test]
    fn pascal_identity() {
        for n in 1..=64 {
            for k in 1..n {
                assert_eq!(
                    binomial(n, k).unwrap(),
                    binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(66), factorial(64) * BigInt::from(65 * 66));
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(q("2/3").pow(5), q("32/243"));
        assert_eq!(GaussianRational::i().pow(4), GaussianRational::one());
        assert_eq!(q("7").pow(0), Rational::one());
    }

    #[test]
    fn domain_round_trip() {
        assert_eq!("gaussian".parse::<Domain>().unwrap(), Domain::Gaussian);
        assert_eq!(Domain::Rational.to_string(), "rational");
        assert!("complex".parse::<Domain>().is_err());
    }
}
