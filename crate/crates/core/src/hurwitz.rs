//! Truncated Hurwitz series.
//!
//! A [`HurwitzSeries`] is the coefficient sequence `(a_0, …, a_N)` of the
//! exponential generating function `Σ aₙ xⁿ/n!`. The sequence view and the
//! series view are the same data: addition is componentwise, the product
//! is the binomial convolution, and the derivation `d/dx` is a left shift.
//!
//! Coefficients past index `N` are unknown, not zero. The checked
//! operations (`try_add`, `try_mul`, …) insist on equal orders; the
//! operator impls on references truncate to the smaller order so that the
//! result never claims more than both inputs determine.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{binomial_ref, factorial, Domain, Rational, Scalar, TABLE_LIMIT};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct HurwitzSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> HurwitzSeries<C> {
    /// Builds a series of order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::OutOfRange("a series needs at least one coefficient".into()));
        }
        if coeffs.len() > TABLE_LIMIT + 1 {
            return Err(Error::OutOfRange(format!(
                "order {} exceeds the maximum {TABLE_LIMIT}",
                coeffs.len() - 1
            )));
        }
        Ok(HurwitzSeries { coeffs })
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<C>) -> Self {
        debug_assert!(!coeffs.is_empty());
        HurwitzSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        HurwitzSeries::from_vec_unchecked((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| C::zero())
    }

    /// The unit `e = (1, 0, 0, …)` of the convolution product.
    pub fn unit(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The unit `(1, 1, 1, …)` of the Hadamard product, i.e. `e^x`.
    pub fn hadamard_unit(order: usize) -> Self {
        Self::from_fn(order, |_| C::one())
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut out = Self::zero(order);
        out.coeffs[0] = c;
        out
    }

    /// The indeterminate `x`, i.e. `(0, 1, 0, …)`.
    pub fn x(order: usize) -> Self {
        let mut out = Self::zero(order);
        if order >= 1 {
            out.coeffs[1] = C::one();
        }
        out
    }

    /// `c·xᵏ`; its only nonzero coefficient is `c·k!` at index `k`.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut out = Self::zero(order);
        if k <= order {
            out.coeffs[k] = c.mul_ref(&C::from_integer(factorial(k)));
        }
        out
    }

    /// Builds the series of an ordinary polynomial `Σ cₖ xᵏ`.
    pub fn from_polynomial(ordinary: &[C], order: usize) -> Self {
        Self::from_fn(order, |n| match ordinary.get(n) {
            Some(c) => c.mul_ref(&C::from_integer(factorial(n))),
            None => C::zero(),
        })
    }

    /// Ordinary power-series coefficients `aₙ/n!`.
    pub fn to_ordinary(&self) -> Vec<C> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| {
                let inv = Rational::new(1, factorial(n)).expect("n! is nonzero");
                a.mul_ref(&C::from_rational(inv))
            })
            .collect()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn domain(&self) -> Domain {
        C::DOMAIN
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&C> {
        self.coeffs.get(n)
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Keeps the first `order + 1` coefficients; never extends.
    pub fn truncated(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        HurwitzSeries::from_vec_unchecked(self.coeffs[..keep].to_vec())
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(self + rhs)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(self - rhs)
    }

    /// Hurwitz product: `cₙ = Σₖ C(n,k) aₖ bₙ₋ₖ`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(self * rhs)
    }

    /// Componentwise product.
    pub fn try_hadamard(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(self.hadamard(rhs))
    }

    /// Componentwise product, truncated to the smaller order.
    pub fn hadamard(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self::from_fn(order, |n| self.coeffs[n].mul_ref(&rhs.coeffs[n]))
    }

    /// Inverse for the Hurwitz product:
    /// `b₀ = a₀⁻¹`, `bₙ = −a₀⁻¹ Σ_{h=1..n} C(n,h) a_h b_{n−h}`.
    pub fn inv(&self) -> Result<Self> {
        let a0_inv = self.coeffs[0].inv().map_err(|_| Error::NotAUnit)?;
        let neg_inv = -a0_inv.clone();
        let mut out: Vec<C> = Vec::with_capacity(self.coeffs.len());
        out.push(a0_inv);
        for n in 1..=self.order() {
            let mut acc = C::zero();
            for h in 1..=n {
                if self.coeffs[h].is_zero() {
                    continue;
                }
                let term = self.coeffs[h].mul_ref(&out[n - h]);
                acc = acc.add_ref(&term.mul_ref(&C::from_integer(binomial_ref(n, h).clone())));
            }
            out.push(neg_inv.mul_ref(&acc));
        }
        Ok(HurwitzSeries::from_vec_unchecked(out))
    }

    /// The derivation: `(aₙ) ↦ (aₙ₊₁)`. The order drops by one.
    pub fn derive(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::OrderExhausted(
                "cannot differentiate a series of order 0".into(),
            ));
        }
        Ok(HurwitzSeries::from_vec_unchecked(self.coeffs[1..].to_vec()))
    }

    /// `δᵏ`, failing if fewer than `k + 1` coefficients are known.
    pub fn derive_n(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::OrderExhausted(format!(
                "δ^{k} of a series of order {}",
                self.order()
            )));
        }
        Ok(HurwitzSeries::from_vec_unchecked(self.coeffs[k..].to_vec()))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_fn(self.order(), |n| self.coeffs[n].mul_ref(c))
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&C::from_integer(n.clone()))
    }

    /// Hurwitz power by repeated squaring.
    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::unit(self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Floating-point value of the truncated series at `x0`, summed from
    /// the lowest degree up with tabulated `1/n!`.
    pub fn eval(&self, x0: Complex64) -> Complex64 {
        let inv_fact = inverse_factorials();
        let mut power = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for (n, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                sum += a.to_complex() * inv_fact[n] * power;
            }
            power *= x0;
        }
        sum
    }

    /// Exact value of the truncated series at a scalar point. Only
    /// meaningful as `f(x0)` when the series is a polynomial of degree
    /// at most the order.
    pub fn eval_exact(&self, x0: &C) -> C {
        self.to_ordinary()
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.mul_ref(x0).add_ref(c))
    }

    /// Re-expresses the coefficients in another domain, failing if any
    /// coefficient does not live there.
    pub fn convert<D: Scalar>(&self) -> Result<HurwitzSeries<D>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                D::from_gaussian(&c.to_gaussian()).ok_or(Error::DomainMismatch {
                    expected: D::DOMAIN,
                    found: C::DOMAIN,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HurwitzSeries::from_vec_unchecked(coeffs))
    }
}

fn inverse_factorials() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=TABLE_LIMIT)
            .map(|n| Rational::new(1, factorial(n)).expect("n! is nonzero").to_f64())
            .collect()
    })
}

impl<C: Scalar> Add for &HurwitzSeries<C> {
    type Output = HurwitzSeries<C>;
    fn add(self, rhs: Self) -> HurwitzSeries<C> {
        let order = self.order().min(rhs.order());
        HurwitzSeries::from_fn(order, |n| self.coeffs[n].add_ref(&rhs.coeffs[n]))
    }
}

impl<C: Scalar> Sub for &HurwitzSeries<C> {
    type Output = HurwitzSeries<C>;
    fn sub(self, rhs: Self) -> HurwitzSeries<C> {
        let order = self.order().min(rhs.order());
        HurwitzSeries::from_fn(order, |n| self.coeffs[n].sub_ref(&rhs.coeffs[n]))
    }
}

impl<C: Scalar> Mul for &HurwitzSeries<C> {
    type Output = HurwitzSeries<C>;
    fn mul(self, rhs: Self) -> HurwitzSeries<C> {
        let order = self.order().min(rhs.order());
        let mut out = vec![C::zero(); order + 1];
        for (k, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - k].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let n = k + j;
                let term = a.mul_ref(b).mul_ref(&C::from_integer(binomial_ref(n, k).clone()));
                out[n] = out[n].add_ref(&term);
            }
        }
        HurwitzSeries::from_vec_unchecked(out)
    }
}

impl<C: Scalar> Neg for &HurwitzSeries<C> {
    type Output = HurwitzSeries<C>;
    fn neg(self) -> HurwitzSeries<C> {
        HurwitzSeries::from_fn(self.order(), |n| -self.coeffs[n].clone())
    }
}

impl<C: Scalar> fmt::Debug for HurwitzSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<C: Scalar> fmt::Display for HurwitzSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The geometric sequence `exp(a) = (1, a, a², …)`, i.e. `e^{ax}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpSequence<C: Scalar> {
    base: C,
    realized: HurwitzSeries<C>,
}

impl<C: Scalar> ExpSequence<C> {
    pub fn new(base: C, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut power = C::one();
        for _ in 0..=order {
            coeffs.push(power.clone());
            power = power.mul_ref(&base);
        }
        ExpSequence {
            base,
            realized: HurwitzSeries::from_vec_unchecked(coeffs),
        }
    }

    pub fn base(&self) -> &C {
        &self.base
    }

    pub fn series(&self) -> &HurwitzSeries<C> {
        &self.realized
    }

    pub fn into_series(self) -> HurwitzSeries<C> {
        self.realized
    }
}

/// Shorthand for the realized series of `exp(a)`.
pub fn exp_series<C: Scalar>(base: C, order: usize) -> HurwitzSeries<C> {
    ExpSequence::new(base, order).into_series()
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
struct SeriesDoc {
    domain: Domain,
    #[serde(rename = "orderX")]
    order_x: usize,
    coeffs: Vec<String>,
}

impl<C: Scalar> Serialize for HurwitzSeries<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesDoc {
            domain: C::DOMAIN,
            order_x: self.order(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Scalar> Deserialize<'de> for HurwitzSeries<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = SeriesDoc::deserialize(deserializer)?;
        if doc.domain != C::DOMAIN {
            return Err(D::Error::custom(Error::DomainMismatch {
                expected: C::DOMAIN,
                found: doc.domain,
            }));
        }
        if doc.coeffs.len() != doc.order_x + 1 {
            return Err(D::Error::custom(format!(
                "orderX {} does not match {} coefficients",
                doc.order_x,
                doc.coeffs.len()
            )));
        }
        let coeffs = doc
            .coeffs
            .iter()
            .map(|s| C::parse_scalar(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        HurwitzSeries::new(coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GaussianRational;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn s(v: &[i64]) -> HurwitzSeries<Rational> {
        HurwitzSeries::new(v.iter().map(|&n| q(n)).collect()).unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(s(&[1, 1, 1]).try_add(&s(&[0, 0, 0])).unwrap(), s(&[1, 1, 1]));
        assert_eq!(s(&[1, 2, 4]).try_add(&s(&[1, -2, -4])).unwrap(), s(&[2, 0, 0]));
        let cosh2 = exp_series(q(1), 3).try_add(&exp_series(q(-1), 3)).unwrap();
        assert_eq!(cosh2, s(&[2, 0, 2, 0]));
        assert_eq!(
            s(&[1, 2]).try_add(&s(&[1, 2, 3])),
            Err(Error::OrderMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn product_examples() {
        assert_eq!(exp_series(q(1), 6).try_mul(&exp_series(q(1), 6)).unwrap(), exp_series(q(2), 6));
        let a = s(&[3, -1, 4, 1, -5]);
        assert_eq!(HurwitzSeries::unit(4).try_mul(&a).unwrap(), a);
        assert_eq!(s(&[0, 1, 0, 0]).try_mul(&s(&[0, 1, 0, 0])).unwrap(), s(&[0, 0, 2, 0]));
        assert!(s(&[1]).try_mul(&s(&[1, 0])).is_err());
    }

    #[test]
    fn hadamard_examples() {
        let a = s(&[3, -1, 4, 1]);
        assert_eq!(a.try_hadamard(&HurwitzSeries::hadamard_unit(3)).unwrap(), a);
        assert_eq!(
            exp_series(q(2), 5).try_hadamard(&exp_series(q(3), 5)).unwrap(),
            exp_series(q(6), 5)
        );
        assert_eq!(s(&[1, 2, 3]).try_hadamard(&s(&[0, 0, 0])).unwrap(), s(&[0, 0, 0]));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(exp_series(q(1), 7).inv().unwrap(), exp_series(q(-1), 7));
        assert_eq!(HurwitzSeries::<Rational>::unit(5).inv().unwrap(), HurwitzSeries::unit(5));
        assert_eq!(s(&[1, 1, 0, 0]).inv().unwrap(), s(&[1, -1, 2, -6]));
        assert_eq!(s(&[0, 1, 2]).inv(), Err(Error::NotAUnit));
        let a = s(&[2, 3, -1, 7, 0, 5]);
        assert_eq!(&a * &a.inv().unwrap(), HurwitzSeries::unit(5));
    }

    #[test]
    fn derivation_examples() {
        let a = q(3);
        let e = exp_series(a.clone(), 6);
        assert_eq!(e.derive().unwrap(), exp_series(a.clone(), 5).scale(&a));
        assert!(HurwitzSeries::constant(q(7), 4).derive().unwrap().is_zero());
        assert_eq!(s(&[0, 1, 0, -1, 0]).derive().unwrap(), s(&[1, 0, -1, 0]));
        assert!(matches!(s(&[5]).derive(), Err(Error::OrderExhausted(_))));
        assert_eq!(s(&[1, 2, 3]).derive_n(2).unwrap(), s(&[3]));
        assert!(s(&[1, 2, 3]).derive_n(3).is_err());
    }

    #[test]
    fn leibniz_rule() {
        let a = s(&[1, -2, 3, 0, 5, -1, 2]);
        let b = s(&[0, 4, -1, 2, 2, 3, -3]);
        let lhs = (&a * &b).derive().unwrap();
        let rhs = &(&a.derive().unwrap() * &b) + &(&a * &b.derive().unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.order(), 5);
    }

    #[test]
    fn evaluation() {
        let e = exp_series(q(1), 20);
        let v = e.eval(Complex64::new(1.0, 0.0));
        assert!((v.re - std::f64::consts::E).abs() < 1e-12);
        let sin = s(&[0, 1, 0, -1, 0, 1]);
        assert_eq!(sin.eval(Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
        let unit = HurwitzSeries::<Rational>::unit(9);
        assert_eq!(unit.eval(Complex64::new(123.0, 0.0)).re, 1.0);
    }

    #[test]
    fn exact_evaluation_of_polynomials() {
        // 1 + x² = (1, 0, 2, 0)
        let f = s(&[1, 0, 2, 0]);
        assert_eq!(f.eval_exact(&q(3)), q(10));
        assert_eq!(
            HurwitzSeries::from_polynomial(&[q(1), q(-1), q(1), q(-1)], 4).eval_exact(&q(1)),
            q(0)
        );
    }

    #[test]
    fn monomials_and_polynomials() {
        assert_eq!(HurwitzSeries::monomial(q(1), 3, 4), s(&[0, 0, 0, 6, 0]));
        let p = HurwitzSeries::from_polynomial(&[q(1), q(0), q(1)], 4);
        assert_eq!(p, s(&[1, 0, 2, 0, 0]));
        assert_eq!(p.to_ordinary(), vec![q(1), q(0), q(1), q(0), q(0)]);
    }

    #[test]
    fn truncating_operators() {
        let a = s(&[1, 2, 3, 4]);
        let b = s(&[1, 1]);
        assert_eq!((&a + &b).order(), 1);
        assert_eq!((&a * &b).order(), 1);
        assert_eq!(a.truncated(10), a);
        assert_eq!(a.truncated(1), s(&[1, 2]));
    }

    #[test]
    fn json_round_trip() {
        let a: HurwitzSeries<Rational> =
            HurwitzSeries::new(vec![q(1), Rational::new(-1, 3).unwrap(), q(0)]).unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"domain":"rational","orderX":2,"coeffs":["1","-1/3","0"]}"#);
        let back: HurwitzSeries<Rational> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<HurwitzSeries<GaussianRational>>(&text).is_err());
        let bad = r#"{"domain":"rational","orderX":3,"coeffs":["1"]}"#;
        assert!(serde_json::from_str::<HurwitzSeries<Rational>>(bad).is_err());
    }

    #[test]
    fn domain_conversion() {
        let g: HurwitzSeries<GaussianRational> = s(&[1, 2]).convert().unwrap();
        assert_eq!(g.domain(), Domain::Gaussian);
        let back: HurwitzSeries<Rational> = g.convert().unwrap();
        assert_eq!(back, s(&[1, 2]));
        let imag = HurwitzSeries::new(vec![GaussianRational::i()]).unwrap();
        assert!(imag.convert::<Rational>().is_err());
    }
}
