//! Numeric ground truth: classical RK4 for `y' = f(y)` and a central
//! finite-difference check of `δ_tΦ = f(Φ)`.
//!
//! The integrator evaluates the expression tree pointwise in doubles and
//! never touches series arithmetic.

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::expr::FieldExpr;
use crate::flow::{ClosedFormFlow, FlowSeries};

pub const MIN_STEPS: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct NumericTrajectory {
    pub ts: Vec<f64>,
    pub ys: Vec<f64>,
    pub h: f64,
}

impl NumericTrajectory {
    /// `y(t1)`
    pub fn final_value(&self) -> f64 {
        *self.ys.last().expect("a trajectory has at least one point")
    }
}

fn finite(value: f64, t: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NumericBlowup { t })
    }
}

/// Integrates `y' = f(y)`, `y(0) = x0` over `[0, t1]` in `steps` equal steps.
pub fn rk4_solve(f: &FieldExpr, x0: f64, t1: f64, steps: usize) -> Result<NumericTrajectory> {
    if steps < MIN_STEPS {
        return Err(Error::OutOfRange(format!("RK4 needs at least {MIN_STEPS} steps, got {steps}")));
    }
    let h = t1 / steps as f64;
    let mut ts = Vec::with_capacity(steps + 1);
    let mut ys = Vec::with_capacity(steps + 1);
    let mut y = finite(x0, 0.0)?;
    ts.push(0.0);
    ys.push(y);
    for step in 0..steps {
        let t = step as f64 * h;
        let k1 = finite(f.eval_f64(y)?, t)?;
        let k2 = finite(f.eval_f64(finite(y + 0.5 * h * k1, t)?)?, t)?;
        let k3 = finite(f.eval_f64(finite(y + 0.5 * h * k2, t)?)?, t)?;
        let k4 = finite(f.eval_f64(finite(y + h * k3, t)?)?, t)?;
        let t_next = (step + 1) as f64 * h;
        y = finite(y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), t_next)?;
        ts.push(t_next);
        ys.push(y);
    }
    Ok(NumericTrajectory { ts, ys, h })
}

/// Anything that yields `Φ(t, x)` as a double.
pub trait FlowValue {
    fn flow_value(&self, t: f64, x: f64) -> Result<f64>;
}

impl FlowValue for ClosedFormFlow {
    fn flow_value(&self, t: f64, x: f64) -> Result<f64> {
        self.eval(t, x)
    }
}

impl<C: Scalar> FlowValue for FlowSeries<C> {
    fn flow_value(&self, t: f64, x: f64) -> Result<f64> {
        Ok(self.eval_real(t, x))
    }
}

/// `|(Φ(t0+h) − Φ(t0−h))/(2h) − f(Φ(t0))|` at basepoint `x0`.
pub fn fd_flow_derivative_check(
    flow: &impl FlowValue,
    f: &FieldExpr,
    t0: f64,
    x0: f64,
    h: f64,
) -> Result<f64> {
    if !(1e-6..=1e-3).contains(&h) {
        return Err(Error::OutOfRange(format!("finite-difference step {h} outside [1e-6, 1e-3]")));
    }
    let forward = flow.flow_value(t0 + h, x0)?;
    let backward = flow.flow_value(t0 - h, x0)?;
    let centre = flow.flow_value(t0, x0)?;
    Ok(((forward - backward) / (2.0 * h) - f.eval_f64(centre)?).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rational;
    use crate::expr::parse;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn exponential_growth() {
        let traj = rk4_solve(&parse("x").unwrap(), 1.0, 0.5, 256).unwrap();
        assert!((traj.final_value() - 0.5f64.exp()).abs() < 1e-9);
        assert_eq!(traj.ts.len(), 257);
        assert!((traj.h - 0.5 / 256.0).abs() < 1e-18);
    }

    #[test]
    fn constant_field_is_exact() {
        let traj = rk4_solve(&parse("1").unwrap(), 0.3, 0.7, 16).unwrap();
        assert!((traj.final_value() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn square_field() {
        let traj = rk4_solve(&parse("x^2").unwrap(), 0.1, 0.5, 512).unwrap();
        assert!((traj.final_value() - 0.1 / 0.95).abs() < 1e-10);
    }

    #[test]
    fn blowup_and_bad_arguments() {
        assert!(matches!(
            rk4_solve(&parse("x^2").unwrap(), 1.0, 5.0, 64),
            Err(Error::NumericBlowup { .. })
        ));
        assert!(rk4_solve(&parse("x").unwrap(), 1.0, 0.5, 15).is_err());
        assert!(rk4_solve(&parse("i x").unwrap(), 1.0, 0.5, 32).is_err());
    }

    #[test]
    fn fourth_order_convergence() {
        let f = parse("x").unwrap();
        let err = |steps| (rk4_solve(&f, 1.0, 0.5, steps).unwrap().final_value() - 0.5f64.exp()).abs();
        let ratio = err(16) / err(32);
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn finite_differences() {
        let exp_flow = ClosedFormFlow::exponential(q(1), q(0));
        let r = fd_flow_derivative_check(&exp_flow, &parse("x").unwrap(), 0.3, 0.7, 1e-4).unwrap();
        assert!(r < 1e-8, "{r}");
        let shift = ClosedFormFlow::affine(q(1));
        let r = fd_flow_derivative_check(&shift, &parse("1").unwrap(), 0.3, 0.7, 1e-4).unwrap();
        assert!(r < 1e-10, "{r}");
        let tan = ClosedFormFlow::irreducible_quadratic(q(0), q(1)).unwrap();
        let r = fd_flow_derivative_check(&tan, &parse("1 + x^2").unwrap(), 0.2, 0.1, 1e-4).unwrap();
        assert!(r < 1e-7, "{r}");
        assert!(fd_flow_derivative_check(&tan, &parse("1 + x^2").unwrap(), 0.2, 0.1, 1e-2).is_err());
        assert!(matches!(
            fd_flow_derivative_check(&tan, &parse("1 + x^2").unwrap(), 1.6, 0.0, 1e-4),
            Err(Error::ClosedFormDomain(_))
        ));
    }
}
