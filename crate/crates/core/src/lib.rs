//! Exact Hurwitz series and formal flows of one-dimensional autonomous fields.
//!
//! ```
//! use flowring::coeff::Rational;
//! use flowring::expr::parse;
//! use flowring::flow::{flow_series, ClosedFormFlow};
//!
//! let field = parse("1 + x^2")?;
//! let flow = flow_series(&field.elaborate::<Rational>(20)?, 12)?;
//! let exact = ClosedFormFlow::recognize(&field).unwrap().eval(0.3, 0.0)?;
//! assert!((flow.eval_real(0.3, 0.0) - exact).abs() < 1e-6);
//! # Ok::<(), flowring::error::Error>(())
//! ```

pub mod autonomous;
pub mod bell;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod expr;
pub mod flow;
pub mod hurwitz;
pub mod oracle;
pub mod verify;
