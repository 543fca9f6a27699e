//! The autonomous operator and the autonomous ring.
//!
//! For a vector field `f`, the autonomous polynomials are `A_0 = x`,
//! `A_1 = f`, `A_{n+1} = f·δ(A_n)`; they are the coefficients of `tⁿ/n!` in
//! the flow of `y' = f(y)`. Every `δ` costs one order in `x`, so `A_n` is
//! known through index `N − n + 1` when `f` has order `N`.
//!
//! The ring operations are pullbacks: `𝔄(f) ⊞ 𝔄(g) = 𝔄(f + g)` and
//! `𝔄(f) ⊙ 𝔄(g) = 𝔄(fg)`. The `H_n` recurrence for `⊞` is kept as a
//! verification path, see [`compute_hn`].

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bell::bell_y;
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::hurwitz::HurwitzSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutonomousSequence<C: Scalar> {
    field: HurwitzSeries<C>,
    terms: Vec<HurwitzSeries<C>>,
}

fn check_orders<C: Scalar>(f: &HurwitzSeries<C>, max_n: usize) -> Result<()> {
    if max_n == 0 {
        return Err(Error::OutOfRange("the t-order must be at least 1".into()));
    }
    if f.order() < max_n {
        return Err(Error::OrderExhausted(format!(
            "A_{max_n} needs a field of x-order at least {max_n}, got {}",
            f.order()
        )));
    }
    Ok(())
}

/// `𝔄(f)` through `A_M` by the recurrence `A_{n+1} = f·δ(A_n)`.
pub fn autonomous_seq<C: Scalar>(f: &HurwitzSeries<C>, max_n: usize) -> Result<AutonomousSequence<C>> {
    check_orders(f, max_n)?;
    let mut terms = Vec::with_capacity(max_n + 1);
    terms.push(HurwitzSeries::x(f.order()));
    terms.push(f.clone());
    for n in 1..max_n {
        let next = f * &terms[n].derive()?;
        terms.push(next);
    }
    Ok(AutonomousSequence {
        field: f.clone(),
        terms,
    })
}

/// `𝔄(f)` through `A_M` by Faà di Bruno:
/// `A_{n+1} = Y_n(A_1, …, A_n; δf, …, δⁿf)`.
pub fn autonomous_seq_bell<C: Scalar>(
    f: &HurwitzSeries<C>,
    max_n: usize,
) -> Result<AutonomousSequence<C>> {
    check_orders(f, max_n)?;
    let derivatives = (1..max_n)
        .map(|k| f.derive_n(k))
        .collect::<Result<Vec<_>>>()?;
    let mut terms = Vec::with_capacity(max_n + 1);
    terms.push(HurwitzSeries::x(f.order()));
    terms.push(f.clone());
    for n in 1..max_n {
        let next = bell_y(n, &terms[1..=n], &derivatives[..n])?;
        terms.push(next);
    }
    Ok(AutonomousSequence {
        field: f.clone(),
        terms,
    })
}

impl<C: Scalar> AutonomousSequence<C> {
    /// `0_𝔄 = 𝔄(0) = (x, 0, 0, …)`
    pub fn zero(order_x: usize, order_t: usize) -> Result<Self> {
        autonomous_seq(&HurwitzSeries::zero(order_x), order_t)
    }

    /// `1_𝔄 = 𝔄(1) = (x, 1, 0, …)`
    pub fn one(order_x: usize, order_t: usize) -> Result<Self> {
        autonomous_seq(&HurwitzSeries::unit(order_x), order_t)
    }

    pub fn field(&self) -> &HurwitzSeries<C> {
        &self.field
    }

    pub fn terms(&self) -> &[HurwitzSeries<C>] {
        &self.terms
    }

    pub fn term(&self, n: usize) -> Option<&HurwitzSeries<C>> {
        self.terms.get(n)
    }

    pub fn order_t(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn order_x(&self) -> usize {
        self.field.order()
    }

    /// `x`-order up to which `A_n` is known.
    pub fn honest_order(&self, n: usize) -> usize {
        self.terms[n].order()
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        if self.order_t() != rhs.order_t() {
            return Err(Error::OrderMismatch {
                left: self.order_t(),
                right: rhs.order_t(),
            });
        }
        if self.order_x() != rhs.order_x() {
            return Err(Error::OrderMismatch {
                left: self.order_x(),
                right: rhs.order_x(),
            });
        }
        Ok(())
    }

    /// `𝔄(f) ⊞ 𝔄(g) = 𝔄(f + g)`
    pub fn box_plus(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        autonomous_seq(&self.field.try_add(&rhs.field)?, self.order_t())
    }

    /// `𝔄(f) ⊙ 𝔄(g) = 𝔄(fg)`
    pub fn box_dot(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        autonomous_seq(&self.field.try_mul(&rhs.field)?, self.order_t())
    }

    /// The componentwise action `exp(a)·𝔄(f)`: term `n` is scaled by `aⁿ`,
    /// which is `𝔄(af)`.
    pub fn scalar_action(&self, a: &C) -> Self {
        let mut power = C::one();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (n, term) in self.terms.iter().enumerate() {
            if n == 0 {
                terms.push(term.clone());
            } else {
                power = power.mul_ref(a);
                terms.push(term.scale(&power));
            }
        }
        AutonomousSequence {
            field: self.field.scale(a),
            terms,
        }
    }

    /// Term-by-term equality over the coefficients both sides know.
    pub fn agrees_with(&self, rhs: &Self) -> bool {
        first_disagreement(&self.terms, &rhs.terms).is_none()
    }
}

/// First index `n` at which `lhs[n]` and `rhs[n]` differ on their common
/// known coefficients, or where one side is missing.
pub fn first_disagreement<C: Scalar>(
    lhs: &[HurwitzSeries<C>],
    rhs: &[HurwitzSeries<C>],
) -> Option<usize> {
    if lhs.len() != rhs.len() {
        return Some(lhs.len().min(rhs.len()));
    }
    lhs.iter().zip(rhs).position(|(a, b)| !series_agree(a, b))
}

/// Equality on the common prefix of two truncated series.
pub fn series_agree<C: Scalar>(a: &HurwitzSeries<C>, b: &HurwitzSeries<C>) -> bool {
    let order = a.order().min(b.order());
    a.coeffs()[..=order] == b.coeffs()[..=order]
}

/// `H_n(f, g) = A_n(f + g) − A_n(f) − A_n(g)`, produced by the recurrence
/// rather than by subtraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnWitness<C: Scalar> {
    pub n: usize,
    pub value: HurwitzSeries<C>,
}

/// `H_1 = 0`, `H_{n+1} = f·δA_n(g) + g·δA_n(f) + (f+g)·δH_n`, for `n = 1..=M`.
pub fn compute_hn<C: Scalar>(
    f: &HurwitzSeries<C>,
    g: &HurwitzSeries<C>,
    max_n: usize,
) -> Result<Vec<HnWitness<C>>> {
    if max_n < 2 {
        return Err(Error::OutOfRange("H_n needs M >= 2".into()));
    }
    let sum = f.try_add(g)?;
    let af = autonomous_seq(f, max_n)?;
    let ag = autonomous_seq(g, max_n)?;
    let mut out = Vec::with_capacity(max_n);
    let mut h = HurwitzSeries::zero(f.order());
    out.push(HnWitness { n: 1, value: h.clone() });
    for n in 1..max_n {
        let next = &(&(f * &ag.terms[n].derive()?) + &(g * &af.terms[n].derive()?))
            + &(&sum * &h.derive()?);
        h = next;
        out.push(HnWitness {
            n: n + 1,
            value: h.clone(),
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
#[serde(bound = "C: Scalar")]
struct SequenceDoc<C: Scalar> {
    field: HurwitzSeries<C>,
    #[serde(rename = "orderT")]
    order_t: usize,
    terms: Vec<HurwitzSeries<C>>,
}

impl<C: Scalar> Serialize for AutonomousSequence<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SequenceDoc {
            field: self.field.clone(),
            order_t: self.order_t(),
            terms: self.terms.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Scalar> Deserialize<'de> for AutonomousSequence<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = SequenceDoc::<C>::deserialize(deserializer)?;
        if doc.terms.len() != doc.order_t + 1 {
            return Err(D::Error::custom("orderT does not match the number of terms"));
        }
        Ok(AutonomousSequence {
            field: doc.field,
            terms: doc.terms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{factorial, GaussianRational, Rational};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn poly(ordinary: &[i64], order: usize) -> HurwitzSeries<Rational> {
        let c: Vec<_> = ordinary.iter().map(|&n| q(n)).collect();
        HurwitzSeries::from_polynomial(&c, order)
    }

    #[test]
    fn identity_field_is_fixed() {
        let a = autonomous_seq(&poly(&[0, 1], 10), 6).unwrap();
        for n in 0..=6 {
            assert!(series_agree(a.term(n).unwrap(), &poly(&[0, 1], 10)), "n = {n}");
        }
    }

    #[test]
    fn square_field_terms() {
        // A_n(x²) = n!·x^{n+1}
        let a = autonomous_seq(&poly(&[0, 0, 1], 16), 8).unwrap();
        for n in 1..=8 {
            let expected = HurwitzSeries::monomial(Rational::from_int(factorial(n)), n + 1, 16);
            assert!(series_agree(a.term(n).unwrap(), &expected), "n = {n}");
            assert_eq!(a.honest_order(n), 16 - n + 1);
        }
    }

    #[test]
    fn tangent_field_terms() {
        let a = autonomous_seq(&poly(&[1, 0, 1], 12), 4).unwrap();
        assert!(series_agree(a.term(2).unwrap(), &poly(&[0, 2, 0, 2], 12)));
        assert!(series_agree(a.term(3).unwrap(), &poly(&[2, 0, 8, 0, 6], 12)));
    }

    #[test]
    fn order_exhaustion() {
        assert!(matches!(
            autonomous_seq(&poly(&[1, 1], 3), 4),
            Err(Error::OrderExhausted(_))
        ));
        assert!(autonomous_seq(&poly(&[1, 1], 3), 0).is_err());
        assert!(autonomous_seq_bell(&poly(&[1, 1], 3), 4).is_err());
    }

    #[test]
    fn bell_path_matches_recurrence() {
        let f = poly(&[2, -1, 3, 0, -2], 16);
        let a = autonomous_seq(&f, 8).unwrap();
        let b = autonomous_seq_bell(&f, 8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ring_units() {
        let f = poly(&[1, 2, -1], 10);
        let af = autonomous_seq(&f, 5).unwrap();
        let zero = AutonomousSequence::zero(10, 5).unwrap();
        let one = AutonomousSequence::one(10, 5).unwrap();
        assert_eq!(af.box_plus(&zero).unwrap(), af);
        assert_eq!(one.box_dot(&af).unwrap(), af);
        assert!(one.term(1).unwrap() == &HurwitzSeries::unit(10));
        assert!(one.terms()[2..].iter().all(HurwitzSeries::is_zero));
        let inverse = af.scalar_action(&q(-1));
        assert_eq!(af.box_plus(&inverse).unwrap(), zero);
    }

    #[test]
    fn box_plus_second_term() {
        let f = poly(&[0, 1], 10);
        let g = poly(&[0, 0, 1], 10);
        let sum = autonomous_seq(&f, 4).unwrap().box_plus(&autonomous_seq(&g, 4).unwrap()).unwrap();
        // (x + x²)(1 + 2x) = x + 3x² + 2x³
        assert!(series_agree(sum.term(2).unwrap(), &poly(&[0, 1, 3, 2], 10)));
    }

    #[test]
    fn mismatched_operands() {
        let a = autonomous_seq(&poly(&[1], 8), 4).unwrap();
        let b = autonomous_seq(&poly(&[1], 8), 5).unwrap();
        let c = autonomous_seq(&poly(&[1], 9), 4).unwrap();
        assert!(matches!(a.box_plus(&b), Err(Error::OrderMismatch { .. })));
        assert!(matches!(a.box_dot(&c), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn hn_recurrence() {
        let f = poly(&[1, -2, 1], 12);
        let g = poly(&[0, 3, 0, 1], 12);
        let hs = compute_hn(&f, &g, 6).unwrap();
        assert!(hs[0].value.is_zero());
        // H_2 = f δg + g δf
        let h2 = &(&f * &g.derive().unwrap()) + &(&g * &f.derive().unwrap());
        assert!(series_agree(&hs[1].value, &h2));
        let af = autonomous_seq(&f, 6).unwrap();
        let ag = autonomous_seq(&g, 6).unwrap();
        let afg = af.box_plus(&ag).unwrap();
        for w in &hs {
            let rebuilt = &(af.term(w.n).unwrap() + ag.term(w.n).unwrap()) + &w.value;
            assert!(series_agree(afg.term(w.n).unwrap(), &rebuilt), "n = {}", w.n);
        }
        let zero = HurwitzSeries::zero(12);
        assert!(compute_hn(&f, &zero, 6).unwrap().iter().all(|w| w.value.is_zero()));
    }

    #[test]
    fn hn_for_equal_fields() {
        let f = poly(&[1, 1, 1], 12);
        let af = autonomous_seq(&f, 6).unwrap();
        for w in compute_hn(&f, &f, 6).unwrap() {
            let factor = q((1 << w.n) - 2);
            assert!(series_agree(&w.value, &af.term(w.n).unwrap().scale(&factor)));
        }
    }

    #[test]
    fn scalar_action_matches_recomputation() {
        let f = poly(&[1, -1, 2], 14);
        let af = autonomous_seq(&f, 6).unwrap();
        for a in [q(0), q(1), q(2), Rational::new(1, 3).unwrap()] {
            let direct = autonomous_seq(&f.scale(&a), 6).unwrap();
            assert_eq!(af.scalar_action(&a), direct, "a = {a}");
        }
        let zero = af.scalar_action(&q(0));
        assert!(zero.terms()[1..].iter().all(HurwitzSeries::is_zero));
    }

    #[test]
    fn gaussian_scalar_action() {
        let f: HurwitzSeries<GaussianRational> = poly(&[1, 1, 0, 1], 12).convert().unwrap();
        let i = GaussianRational::i();
        let af = autonomous_seq(&f, 6).unwrap();
        assert_eq!(af.scalar_action(&i), autonomous_seq(&f.scale(&i), 6).unwrap());
    }

    #[test]
    fn json_shape() {
        let a = autonomous_seq(&poly(&[1], 2), 1).unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert!(text.starts_with(r#"{"field":{"domain":"rational","orderX":2"#));
        assert!(text.contains(r#""orderT":1"#));
        let back: AutonomousSequence<Rational> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}
