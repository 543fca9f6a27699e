//! Flows of `y' = f(y)` as truncated bivariate series, and the closed-form
//! catalog.
//!
//! `Φ(t, x, f) = Σ A_n(f) tⁿ/n!` with `A_n` the autonomous polynomials, so a
//! [`FlowSeries`] is an [`AutonomousSequence`] read as a series in `t`
//! whose coefficients are series in `x`. The ring operations on flows are
//! the pullbacks `Φ(f) ⊞ Φ(g) = Φ(f + g)` and `Φ(f) ⊙ Φ(g) = Φ(fg)`.
//!
//! Substituting `Φ_s` for `x` uses the Taylor expansion about `x`:
//! `g(Φ_s) = Σ_k δᵏg · uᵏ/k!` with `u = Φ_s − x = Σ_{m≥1} A_m sᵐ/m!`, so the
//! coefficient of `sᵖ/p!` is `Σ_k δᵏg · B_{p,k}(A_1, A_2, …)`. Every product
//! truncates to the orders of its inputs, so nothing past the honestly
//! known coefficients is ever compared.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::autonomous::{autonomous_seq, series_agree, AutonomousSequence};
use crate::bell::partial_bell;
use crate::coeff::{Rational, Scalar};
use crate::error::{Error, Result};
use crate::expr::{FieldExpr, Func};
use crate::hurwitz::HurwitzSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSeries<C: Scalar> {
    source: AutonomousSequence<C>,
}

/// `Φ(t, x, f)` through `tᴹ`.
pub fn flow_series<C: Scalar>(f: &HurwitzSeries<C>, max_n: usize) -> Result<FlowSeries<C>> {
    Ok(FlowSeries {
        source: autonomous_seq(f, max_n)?,
    })
}

impl<C: Scalar> FlowSeries<C> {
    pub fn from_sequence(source: AutonomousSequence<C>) -> Self {
        FlowSeries { source }
    }

    pub fn source(&self) -> &AutonomousSequence<C> {
        &self.source
    }

    pub fn field(&self) -> &HurwitzSeries<C> {
        self.source.field()
    }

    /// Coefficient of `tⁿ/n!` is `tcoeffs()[n]`; `tcoeffs()[0] = x`.
    pub fn tcoeffs(&self) -> &[HurwitzSeries<C>] {
        self.source.terms()
    }

    pub fn order_t(&self) -> usize {
        self.source.order_t()
    }

    pub fn order_x(&self) -> usize {
        self.source.order_x()
    }

    /// `Φ(at, x, f) = Φ(t, x, af)`: term `n` scaled by `aⁿ`.
    pub fn time_scale(&self, a: &C) -> Self {
        FlowSeries {
            source: self.source.scalar_action(a),
        }
    }

    /// Flow of `f + g`.
    pub fn boxplus(&self, rhs: &Self) -> Result<Self> {
        Ok(FlowSeries {
            source: self.source.box_plus(&rhs.source)?,
        })
    }

    /// Flow of `f·g`.
    pub fn boxdot(&self, rhs: &Self) -> Result<Self> {
        Ok(FlowSeries {
            source: self.source.box_dot(&rhs.source)?,
        })
    }

    /// Truncated sum `Σ A_n(x0) t0ⁿ/n!` in complex doubles.
    pub fn eval(&self, t0: Complex64, x0: Complex64) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        let mut weight = Complex64::new(1.0, 0.0);
        for (n, term) in self.tcoeffs().iter().enumerate() {
            if n > 0 {
                weight = weight * t0 / n as f64;
            }
            total += term.eval(x0) * weight;
        }
        total
    }

    /// Real part of [`FlowSeries::eval`] at real arguments.
    pub fn eval_real(&self, t0: f64, x0: f64) -> f64 {
        self.eval(Complex64::new(t0, 0.0), Complex64::new(x0, 0.0)).re
    }

    /// The orbit series `ε_{x0}Φ`: each `A_n` evaluated at `x0`, treating
    /// the known coefficients as a polynomial.
    pub fn orbit(&self, x0: &C) -> Vec<C> {
        self.tcoeffs().iter().map(|a| a.eval_exact(x0)).collect()
    }
}

/// `Φ(f) ⊞ Φ(g)`
pub fn flow_boxplus<C: Scalar>(lhs: &FlowSeries<C>, rhs: &FlowSeries<C>) -> Result<FlowSeries<C>> {
    lhs.boxplus(rhs)
}

/// `Φ(f) ⊙ Φ(g)`
pub fn flow_boxdot<C: Scalar>(lhs: &FlowSeries<C>, rhs: &FlowSeries<C>) -> Result<FlowSeries<C>> {
    lhs.boxdot(rhs)
}

// ---------------------------------------------------------------------------
// Bivariate checks

/// Where an identity check first failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckFailure {
    /// Coefficient of `sᵖtᑫ/(p!q!)`.
    Coefficient { p: usize, q: usize },
    /// `f·δA_n ≠ A_{n+1}`.
    Lift { n: usize },
    /// Coefficient of `tⁿ/n!` in `δ_tΦ` differs from `f(Φ)`.
    Composition { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    /// Number of series comparisons made.
    pub compared: usize,
    pub first_failure: Option<CheckFailure>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `g(Φ_s)` as a series in `s` through `s^max_s`, from the flow
/// coefficients `a = (x, A_1, A_2, …)`.
pub fn compose_with_flow<C: Scalar>(
    g: &HurwitzSeries<C>,
    a: &[HurwitzSeries<C>],
    max_s: usize,
) -> Result<Vec<HurwitzSeries<C>>> {
    if a.len() <= max_s {
        return Err(Error::OrderExhausted(format!(
            "composition through s^{max_s} needs {} flow terms, got {}",
            max_s + 1,
            a.len()
        )));
    }
    if g.order() < max_s {
        return Err(Error::OrderExhausted(format!(
            "composition through s^{max_s} differentiates {max_s} times a series of order {}",
            g.order()
        )));
    }
    let mut out = Vec::with_capacity(max_s + 1);
    out.push(g.clone());
    let mut derivatives = Vec::with_capacity(max_s);
    let mut d = g.clone();
    for _ in 0..max_s {
        d = d.derive()?;
        derivatives.push(d.clone());
    }
    for p in 1..=max_s {
        let mut acc: Option<HurwitzSeries<C>> = None;
        for k in 1..=p {
            let bell = partial_bell(p, k, &a[1..=p - k + 1])?;
            let term = &derivatives[k - 1] * &bell;
            acc = Some(match acc {
                None => term,
                Some(sum) => &sum + &term,
            });
        }
        out.push(acc.expect("p >= 1"));
    }
    Ok(out)
}

// Coefficient (p, q) of Φ_t ∘ Φ_s against coefficient p + q of `rhs`.
fn compare_bivariate<C: Scalar>(
    inner: &FlowSeries<C>,
    rhs: &[HurwitzSeries<C>],
) -> Result<CheckOutcome> {
    let m = inner.order_t();
    let a = inner.tcoeffs();
    let mut compared = 0;
    for q in 0..=m {
        let lhs = compose_with_flow(&a[q], a, m - q)?;
        for (p, coeff) in lhs.iter().enumerate() {
            compared += 1;
            if !series_agree(coeff, &rhs[p + q]) {
                return Ok(CheckOutcome {
                    compared,
                    first_failure: Some(CheckFailure::Coefficient { p, q }),
                });
            }
        }
    }
    Ok(CheckOutcome {
        compared,
        first_failure: None,
    })
}

fn require_double_order<C: Scalar>(f: &HurwitzSeries<C>, max_n: usize) -> Result<()> {
    if f.order() < 2 * max_n {
        return Err(Error::OrderExhausted(format!(
            "bivariate checks through order {max_n} need a field of x-order at least {}, got {}",
            2 * max_n,
            f.order()
        )));
    }
    Ok(())
}

/// `Φ(t, Φ(s, x)) = Φ(s + t, x)` on every coefficient `sᵖtᑫ` with `p + q ≤ M`.
pub fn semigroup_check<C: Scalar>(f: &HurwitzSeries<C>, max_n: usize) -> Result<CheckOutcome> {
    require_double_order(f, max_n)?;
    let flow = flow_series(f, max_n)?;
    compare_bivariate(&flow, flow.tcoeffs())
}

/// `f·δ_xΦ = δ_tΦ = f(Φ)` through `tᴹ⁻¹`.
pub fn derivation_identity_check<C: Scalar>(
    f: &HurwitzSeries<C>,
    max_n: usize,
) -> Result<CheckOutcome> {
    if f.order() < max_n + 1 {
        return Err(Error::OrderExhausted(format!(
            "the derivation check through order {max_n} needs a field of x-order at least {}, got {}",
            max_n + 1,
            f.order()
        )));
    }
    let flow = flow_series(f, max_n)?;
    let a = flow.tcoeffs();
    let mut compared = 0;
    for n in 0..max_n {
        compared += 1;
        if !series_agree(&(f * &a[n].derive()?), &a[n + 1]) {
            return Ok(CheckOutcome {
                compared,
                first_failure: Some(CheckFailure::Lift { n }),
            });
        }
    }
    let composed = compose_with_flow(f, a, max_n - 1)?;
    for (n, coeff) in composed.iter().enumerate() {
        compared += 1;
        if !series_agree(coeff, &a[n + 1]) {
            return Ok(CheckOutcome {
                compared,
                first_failure: Some(CheckFailure::Composition { n }),
            });
        }
    }
    Ok(CheckOutcome {
        compared,
        first_failure: None,
    })
}

/// `Φ_t(x, f+g) ∘ Φ_s(x, f+g) = Φ_{t+s}(x, f) ⊞ Φ_{t+s}(x, g)`, with the
/// left side built from the flow of `f + g` and the right side from
/// [`flow_boxplus`].
pub fn sum_flow_composition_check<C: Scalar>(
    f: &HurwitzSeries<C>,
    g: &HurwitzSeries<C>,
    max_n: usize,
) -> Result<CheckOutcome> {
    require_double_order(f, max_n)?;
    let direct = flow_series(&f.try_add(g)?, max_n)?;
    let combined = flow_boxplus(&flow_series(f, max_n)?, &flow_series(g, max_n)?)?;
    compare_bivariate(&direct, combined.tcoeffs())
}

// ---------------------------------------------------------------------------
// Decomposition

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecomposeMode {
    Sum,
    Product,
}

impl std::str::FromStr for DecomposeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sum" => Ok(DecomposeMode::Sum),
            "product" => Ok(DecomposeMode::Product),
            _ => Err(Error::OutOfRange(format!("unknown mode {s:?}, expected sum or product"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition<C: Scalar> {
    pub combined: FlowSeries<C>,
    pub components: Vec<FlowSeries<C>>,
    /// `combined` equals the flow of the folded field, coefficient for coefficient.
    pub exact: bool,
}

/// Flows of each part and their `⊞`/`⊙` fold.
pub fn decompose_flow<C: Scalar>(
    parts: &[HurwitzSeries<C>],
    mode: DecomposeMode,
    max_n: usize,
) -> Result<Decomposition<C>> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::OutOfRange("decomposition needs at least one part".into()))?;
    let components = parts
        .iter()
        .map(|p| flow_series(p, max_n))
        .collect::<Result<Vec<_>>>()?;
    let mut combined = components[0].clone();
    let mut field = first.clone();
    for (part, flow) in rest.iter().zip(&components[1..]) {
        match mode {
            DecomposeMode::Sum => {
                combined = combined.boxplus(flow)?;
                field = field.try_add(part)?;
            }
            DecomposeMode::Product => {
                combined = combined.boxdot(flow)?;
                field = field.try_mul(part)?;
            }
        }
    }
    let exact = flow_series(&field, max_n)? == combined;
    Ok(Decomposition {
        combined,
        components,
        exact,
    })
}

// ---------------------------------------------------------------------------
// Equilibria

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PointClass {
    Equilibrium,
    Regular,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoint<C> {
    pub basepoint: C,
    pub classification: PointClass,
    /// Decided by a floating-point zero test rather than exactly.
    pub numeric: bool,
}

/// Zero tolerance for fields that are not polynomials.
pub const EQUILIBRIUM_TOLERANCE: f64 = 1e-12;

/// Exact classification, reading the known coefficients of `f` as a polynomial.
pub fn classify_point<C: Scalar>(f: &HurwitzSeries<C>, x0: &C) -> OrbitPoint<C> {
    let classification = if f.eval_exact(x0).is_zero() {
        PointClass::Equilibrium
    } else {
        PointClass::Regular
    };
    OrbitPoint {
        basepoint: x0.clone(),
        classification,
        numeric: false,
    }
}

/// Exact for polynomial expressions, numeric within
/// [`EQUILIBRIUM_TOLERANCE`] otherwise.
pub fn classify_field<C: Scalar>(f: &FieldExpr, x0: &C) -> Result<OrbitPoint<C>> {
    if f.polynomial_degree().is_some() {
        let value = f.eval_exact(x0)?;
        let classification = if value.is_zero() {
            PointClass::Equilibrium
        } else {
            PointClass::Regular
        };
        return Ok(OrbitPoint {
            basepoint: x0.clone(),
            classification,
            numeric: false,
        });
    }
    let value = f.eval_complex(x0.to_complex())?;
    let classification = if value.norm() <= EQUILIBRIUM_TOLERANCE {
        PointClass::Equilibrium
    } else {
        PointClass::Regular
    };
    Ok(OrbitPoint {
        basepoint: x0.clone(),
        classification,
        numeric: true,
    })
}

// ---------------------------------------------------------------------------
// Closed forms

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClosedFormKind {
    /// `f = a`, `Φ = x + at`
    Affine,
    /// `f = a(x − c)`, `Φ = (x − c)e^{at} + c`; `c` defaults to 0.
    Exponential,
    /// `f = axᵏ`, `Φ = x / (1 − a(k−1)xᵏ⁻¹t)^{1/(k−1)}`
    Power,
    /// `f = e^{ax}`, `Φ = x + (1/a)·ln(1/(1 − ate^{ax}))`
    Expfield,
    /// `f = x² − bx + c` with `d = (4c − b²)/4 > 0`,
    /// `Φ = √d(z + √d·T)/(√d − z·T) + b/2`, `z = x − b/2`, `T = tan(√d·t)`
    IrreducibleQuadratic,
}

impl fmt::Display for ClosedFormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ClosedFormKind::Affine => "AFFINE",
            ClosedFormKind::Exponential => "EXPONENTIAL",
            ClosedFormKind::Power => "POWER",
            ClosedFormKind::Expfield => "EXPFIELD",
            ClosedFormKind::IrreducibleQuadratic => "IRREDUCIBLE_QUADRATIC",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormFlow {
    kind: ClosedFormKind,
    params: Vec<Rational>,
}

impl ClosedFormFlow {
    pub fn new(kind: ClosedFormKind, params: Vec<Rational>) -> Result<Self> {
        let arity_ok = match kind {
            ClosedFormKind::Affine | ClosedFormKind::Expfield => params.len() == 1,
            ClosedFormKind::Exponential => matches!(params.len(), 1 | 2),
            ClosedFormKind::Power | ClosedFormKind::IrreducibleQuadratic => params.len() == 2,
        };
        if !arity_ok {
            return Err(Error::OutOfRange(format!("{kind} does not take {} parameters", params.len())));
        }
        match kind {
            ClosedFormKind::Power => {
                let k = &params[1];
                let k_int = if k.denom() == &BigInt::from(1) {
                    u32::try_from(k.numer()).ok()
                } else {
                    None
                };
                if !k_int.is_some_and(|k| (2..=64).contains(&k)) {
                    return Err(Error::OutOfRange(format!("POWER needs an integer 2 <= k <= 64, got {k}")));
                }
            }
            ClosedFormKind::Expfield if params[0].is_zero() => {
                return Err(Error::OutOfRange("EXPFIELD needs a != 0".into()));
            }
            ClosedFormKind::IrreducibleQuadratic => {
                let (b, c) = (&params[0], &params[1]);
                let disc = Rational::from(4).mul_ref(c).sub_ref(&b.mul_ref(b));
                if disc.is_negative() || disc.is_zero() {
                    return Err(Error::OutOfRange(format!(
                        "IRREDUCIBLE_QUADRATIC needs 4c - b^2 > 0, got {disc}"
                    )));
                }
            }
            _ => {}
        }
        Ok(ClosedFormFlow { kind, params })
    }

    pub fn affine(a: Rational) -> Self {
        ClosedFormFlow::new(ClosedFormKind::Affine, vec![a]).expect("valid arity")
    }

    pub fn exponential(a: Rational, c: Rational) -> Self {
        ClosedFormFlow::new(ClosedFormKind::Exponential, vec![a, c]).expect("valid arity")
    }

    pub fn power(a: Rational, k: u32) -> Result<Self> {
        ClosedFormFlow::new(ClosedFormKind::Power, vec![a, Rational::from(i64::from(k))])
    }

    pub fn expfield(a: Rational) -> Result<Self> {
        ClosedFormFlow::new(ClosedFormKind::Expfield, vec![a])
    }

    pub fn irreducible_quadratic(b: Rational, c: Rational) -> Result<Self> {
        ClosedFormFlow::new(ClosedFormKind::IrreducibleQuadratic, vec![b, c])
    }

    pub fn kind(&self) -> ClosedFormKind {
        self.kind
    }

    pub fn params(&self) -> &[Rational] {
        &self.params
    }

    fn param(&self, idx: usize) -> f64 {
        self.params.get(idx).map_or(0.0, Rational::to_f64)
    }

    fn power_k(&self) -> u32 {
        u32::try_from(self.params[1].numer()).expect("validated in new")
    }

    /// The vector field this flow solves.
    pub fn field_expr(&self) -> FieldExpr {
        let p = |idx: usize| FieldExpr::constant(self.params[idx].clone());
        match self.kind {
            ClosedFormKind::Affine => p(0),
            ClosedFormKind::Exponential => match self.params.get(1) {
                Some(c) if !c.is_zero() => {
                    FieldExpr::mul(p(0), FieldExpr::sub(FieldExpr::Var, p(1)))
                }
                _ => FieldExpr::mul(p(0), FieldExpr::Var),
            },
            ClosedFormKind::Power => {
                FieldExpr::mul(p(0), FieldExpr::pow(FieldExpr::Var, self.power_k()))
            }
            ClosedFormKind::Expfield => FieldExpr::apply(Func::Exp, FieldExpr::mul(p(0), FieldExpr::Var)),
            ClosedFormKind::IrreducibleQuadratic => FieldExpr::add(
                FieldExpr::sub(FieldExpr::pow(FieldExpr::Var, 2), FieldExpr::mul(p(0), FieldExpr::Var)),
                p(1),
            ),
        }
    }

    /// Hurwitz series of [`ClosedFormFlow::field_expr`].
    pub fn field_series<C: Scalar>(&self, order: usize) -> HurwitzSeries<C> {
        self.field_expr()
            .elaborate(order)
            .expect("catalog fields are real with linear exponents")
    }

    /// `Φ(t0, x0)` in doubles.
    pub fn eval(&self, t0: f64, x0: f64) -> Result<f64> {
        match self.kind {
            ClosedFormKind::Affine => Ok(x0 + self.param(0) * t0),
            ClosedFormKind::Exponential => {
                let (a, c) = (self.param(0), self.param(1));
                Ok((x0 - c) * (a * t0).exp() + c)
            }
            ClosedFormKind::Power => {
                let a = self.param(0);
                let k = f64::from(self.power_k());
                let radicand = 1.0 - a * (k - 1.0) * x0.powf(k - 1.0) * t0;
                if radicand.is_nan() || radicand <= 0.0 {
                    return Err(Error::ClosedFormDomain(format!(
                        "1 - a(k-1)x^(k-1)t = {radicand} is not positive"
                    )));
                }
                Ok(x0 / radicand.powf(1.0 / (k - 1.0)))
            }
            ClosedFormKind::Expfield => {
                let a = self.param(0);
                let inner = 1.0 - a * t0 * (a * x0).exp();
                if inner.is_nan() || inner <= 0.0 {
                    return Err(Error::ClosedFormDomain(format!(
                        "1 - a t e^(a x) = {inner} is not positive"
                    )));
                }
                Ok(x0 + (1.0 / inner).ln() / a)
            }
            ClosedFormKind::IrreducibleQuadratic => {
                let (b, c) = (self.param(0), self.param(1));
                let root_d = ((4.0 * c - b * b) / 4.0).sqrt();
                let angle = root_d * t0;
                if angle.is_nan() || angle.abs() >= FRAC_PI_2 {
                    return Err(Error::ClosedFormDomain(format!(
                        "|sqrt(d) t| = {} is not below pi/2",
                        angle.abs()
                    )));
                }
                let z0 = x0 - b / 2.0;
                let tan = angle.tan();
                let den = root_d - z0 * tan;
                if den.is_nan() || den <= 0.0 {
                    return Err(Error::ClosedFormDomain(format!(
                        "sqrt(d) - (x - b/2) tan(sqrt(d) t) = {den} is not positive"
                    )));
                }
                Ok(root_d * (z0 + root_d * tan) / den + b / 2.0)
            }
        }
    }

    /// Catalog entry for `f`, if it is one of: a constant, `a(x − c)`,
    /// `axᵏ`, `x² − bx + c` with `4c > b²`, or `exp(ax)`.
    pub fn recognize(f: &FieldExpr) -> Option<Self> {
        if f.uses_imaginary() {
            return None;
        }
        if let FieldExpr::Apply(Func::Exp, arg) = f {
            let a = arg.linear_scale()?;
            return ClosedFormFlow::expfield(a.re).ok();
        }
        let bound = f.polynomial_degree()?;
        let series: HurwitzSeries<Rational> = f.elaborate(bound.max(1)).ok()?;
        let mut coeffs = series.to_ordinary();
        while coeffs.len() > 1 && coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        let degree = coeffs.len() - 1;
        match degree {
            0 => Some(ClosedFormFlow::affine(coeffs[0].clone())),
            1 => {
                let (c0, c1) = (&coeffs[0], &coeffs[1]);
                let c = (-c0.clone()).checked_div(c1).ok()?;
                Some(ClosedFormFlow::exponential(c1.clone(), c))
            }
            _ if coeffs[..degree].iter().all(Scalar::is_zero) => {
                ClosedFormFlow::power(coeffs[degree].clone(), degree as u32).ok()
            }
            2 if coeffs[2] == Rational::one() => {
                ClosedFormFlow::irreducible_quadratic(-coeffs[1].clone(), coeffs[0].clone()).ok()
            }
            _ => None,
        }
    }
}

/// `Φ(t0, x0)` of a catalog flow.
pub fn closed_form_eval(flow: &ClosedFormFlow, t0: f64, x0: f64) -> Result<f64> {
    flow.eval(t0, x0)
}

#[derive(Serialize, Deserialize)]
struct ClosedFormDoc {
    kind: ClosedFormKind,
    params: Vec<String>,
}

impl Serialize for ClosedFormFlow {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ClosedFormDoc {
            kind: self.kind,
            params: self.params.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ClosedFormFlow {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = ClosedFormDoc::deserialize(deserializer)?;
        let params = doc
            .params
            .iter()
            .map(|s| s.parse::<Rational>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        ClosedFormFlow::new(doc.kind, params).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
#[serde(bound = "C: Scalar")]
struct FlowDoc<C: Scalar> {
    field: HurwitzSeries<C>,
    #[serde(rename = "orderT")]
    order_t: usize,
    tcoeffs: Vec<HurwitzSeries<C>>,
}

impl<C: Scalar> Serialize for FlowSeries<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FlowDoc {
            field: self.field().clone(),
            order_t: self.order_t(),
            tcoeffs: self.tcoeffs().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Scalar> Deserialize<'de> for FlowSeries<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = FlowDoc::<C>::deserialize(deserializer)?;
        if doc.tcoeffs.len() != doc.order_t + 1 {
            return Err(D::Error::custom("orderT does not match the number of tcoeffs"));
        }
        let flow = flow_series(&doc.field, doc.order_t).map_err(D::Error::custom)?;
        if flow.tcoeffs() != doc.tcoeffs.as_slice() {
            return Err(D::Error::custom("tcoeffs are not the flow of the field"));
        }
        Ok(flow)
    }
}
