//! Seeded invariant suite behind `flowring verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autonomous::{autonomous_seq, autonomous_seq_bell, compute_hn};
use crate::coeff::{GaussianRational, Rational, Scalar};
use crate::error::Result;
use crate::expr::parse;
use crate::flow::{
    decompose_flow, derivation_identity_check, flow_series, semigroup_check,
    sum_flow_composition_check, ClosedFormFlow, DecomposeMode,
};
use crate::hurwitz::{exp_series, HurwitzSeries};
use crate::oracle::rk4_solve;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRow {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.random_range(-9i64..=9), rng.random_range(1i64..=5)).expect("nonzero denominator")
}

fn random_series(rng: &mut ChaCha8Rng, order: usize) -> HurwitzSeries<Rational> {
    HurwitzSeries::from_fn(order, |_| random_rational(rng))
}

fn random_polynomial(rng: &mut ChaCha8Rng, degree: usize, order: usize) -> HurwitzSeries<Rational> {
    let ordinary: Vec<Rational> = (0..=degree).map(|_| random_rational(rng)).collect();
    HurwitzSeries::from_polynomial(&ordinary, order)
}

fn row(name: &'static str, passed: bool, detail: impl Into<String>) -> CheckRow {
    CheckRow {
        name,
        passed,
        detail: detail.into(),
    }
}

fn ring_axioms(rng: &mut ChaCha8Rng) -> CheckRow {
    let n = 16;
    for trial in 0..40 {
        let (a, b, c) = (random_series(rng, n), random_series(rng, n), random_series(rng, n));
        let ok = &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &b == &b * &a
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a * &HurwitzSeries::unit(n) == a;
        if !ok {
            return row("hurwitz ring axioms", false, format!("trial {trial}"));
        }
        if !a.coeffs()[0].is_zero() && &a * &a.inv().expect("unit") != HurwitzSeries::unit(n) {
            return row("hurwitz ring axioms", false, format!("inverse, trial {trial}"));
        }
    }
    row("hurwitz ring axioms", true, "40 triples, N=16")
}

fn exp_ring(rng: &mut ChaCha8Rng) -> CheckRow {
    let n = 16;
    for trial in 0..20 {
        let (a, b) = (random_rational(rng), random_rational(rng));
        let (ea, eb) = (exp_series(a.clone(), n), exp_series(b.clone(), n));
        if &ea * &eb != exp_series(a.add_ref(&b), n) || ea.hadamard(&eb) != exp_series(a.mul_ref(&b), n) {
            return row("exp ring", false, format!("trial {trial}"));
        }
    }
    row("exp ring", true, "20 pairs, N=16")
}

fn bell_path(rng: &mut ChaCha8Rng) -> Result<CheckRow> {
    for trial in 0..10 {
        let f = random_polynomial(rng, 4, 10);
        if autonomous_seq(&f, 6)? != autonomous_seq_bell(&f, 6)? {
            return Ok(row("bell path = recurrence", false, format!("trial {trial}")));
        }
    }
    Ok(row("bell path = recurrence", true, "10 fields, deg <= 4, M=6"))
}

fn hn_identity(rng: &mut ChaCha8Rng) -> Result<CheckRow> {
    for trial in 0..10 {
        let f = random_polynomial(rng, 3, 12);
        let g = random_polynomial(rng, 3, 12);
        let (af, ag, asum) = (autonomous_seq(&f, 6)?, autonomous_seq(&g, 6)?, autonomous_seq(&(&f + &g), 6)?);
        for w in compute_hn(&f, &g, 6)? {
            let n = w.n;
            if asum.terms()[n] != &(&af.terms()[n] + &ag.terms()[n]) + &w.value {
                return Ok(row("A_n(f+g) = A_n(f) + A_n(g) + H_n", false, format!("trial {trial}, n={n}")));
            }
        }
    }
    Ok(row("A_n(f+g) = A_n(f) + A_n(g) + H_n", true, "10 pairs, n <= 6"))
}

fn scalar_action(rng: &mut ChaCha8Rng) -> Result<CheckRow> {
    let name = "scalar action A_n(af) = a^n A_n(f)";
    let f = random_polynomial(rng, 3, 10);
    let seq = autonomous_seq(&f, 8)?;
    for a in [Rational::from(-1), Rational::from(2), Rational::new(1, 3)?] {
        if seq.scalar_action(&a) != autonomous_seq(&f.scale(&a), 8)? {
            return Ok(row(name, false, format!("a = {a}")));
        }
    }
    let fg: HurwitzSeries<GaussianRational> = f.convert()?;
    let i = GaussianRational::i();
    if autonomous_seq(&fg, 8)?.scalar_action(&i) != autonomous_seq(&fg.scale(&i), 8)? {
        return Ok(row(name, false, "a = i"));
    }
    Ok(row(name, true, "a in {-1, 2, 1/3, i}, n <= 8"))
}

fn flow_laws(rng: &mut ChaCha8Rng) -> Result<CheckRow> {
    let name = "semigroup, derivation, time scaling";
    for trial in 0..5 {
        let f = random_polynomial(rng, 3, 16);
        let semigroup = semigroup_check(&f, 5)?;
        let derivation = derivation_identity_check(&f, 8)?;
        let a = random_rational(rng);
        let scaled = flow_series(&f, 8)?.time_scale(&a) == flow_series(&f.scale(&a), 8)?;
        let g = random_polynomial(rng, 2, 16);
        let composition = sum_flow_composition_check(&f, &g, 4)?;
        if !(semigroup.passed() && derivation.passed() && scaled && composition.passed()) {
            return Ok(row(name, false, format!("trial {trial}")));
        }
    }
    Ok(row(name, true, "5 fields, deg <= 3, N=16"))
}

fn closed_forms() -> Result<CheckRow> {
    let name = "series vs closed forms";
    let catalog = [
        (ClosedFormFlow::affine(Rational::new(3, 2)?), 1e-9),
        (ClosedFormFlow::exponential(Rational::from(-1), Rational::from(1)), 1e-9),
        (ClosedFormFlow::power(Rational::from(1), 2)?, 1e-9),
        (ClosedFormFlow::expfield(Rational::from(1))?, 1e-7),
        (ClosedFormFlow::irreducible_quadratic(Rational::from(0), Rational::from(1))?, 1e-7),
    ];
    let mut worst = 0f64;
    for (cf, tol) in &catalog {
        let flow = flow_series(&cf.field_series::<Rational>(64), 20)?;
        for x0 in [-0.2, 0.0, 0.2] {
            for t0 in [-0.3, 0.1, 0.3] {
                let exact = cf.eval(t0, x0)?;
                let delta = (flow.eval_real(t0, x0) - exact).abs();
                let rel = if exact == 0.0 { delta } else { delta / exact.abs() };
                worst = worst.max(rel / tol);
                if rel > *tol {
                    return Ok(row(name, false, format!("{} at t={t0}, x={x0}: rel {rel:e}", cf.kind())));
                }
            }
        }
    }
    Ok(row(name, true, format!("5 kinds, 3x3 grid, worst error {worst:.2e} of tolerance")))
}

fn worked_examples() -> Result<CheckRow> {
    let name = "worked examples";
    let n = 16;
    let parts: Vec<HurwitzSeries<GaussianRational>> = ["exp(x)", "-1/2 i exp(i x)", "1/2 i exp(-i x)"]
        .iter()
        .map(|t| parse(t)?.elaborate(n))
        .collect::<Result<_>>()?;
    let direct: HurwitzSeries<Rational> = parse("exp(x) + sin(x)")?.elaborate(n)?;
    let sum = decompose_flow(&parts, DecomposeMode::Sum, 8)?;
    if sum.combined != flow_series(&direct.convert()?, 8)? {
        return Ok(row(name, false, "exp(x) + sin(x)"));
    }
    let quartic: Vec<HurwitzSeries<Rational>> = ["1", "-x", "x^2", "-x^3"]
        .iter()
        .map(|t| parse(t)?.elaborate(n))
        .collect::<Result<_>>()?;
    let factors: Vec<HurwitzSeries<Rational>> = ["1 - x", "x^2 + 1"]
        .iter()
        .map(|t| parse(t)?.elaborate(n))
        .collect::<Result<_>>()?;
    let by_sum = decompose_flow(&quartic, DecomposeMode::Sum, 8)?;
    let by_product = decompose_flow(&factors, DecomposeMode::Product, 8)?;
    if !(by_sum.exact && by_product.exact && by_sum.combined == by_product.combined) {
        return Ok(row(name, false, "1 - x + x^2 - x^3"));
    }
    Ok(row(name, true, "exp(x)+sin(x) over Q(i); 1-x+x^2-x^3 by sum and product"))
}

fn rk4_agreement() -> Result<CheckRow> {
    let name = "series vs RK4";
    let f = parse("1 - x + x^2 - x^3")?;
    let flow = flow_series(&f.elaborate::<Rational>(64)?, 20)?;
    let numeric = rk4_solve(&f, 0.1, 0.25, 1024)?.final_value();
    let delta = (flow.eval_real(0.25, 0.1) - numeric).abs();
    Ok(row(name, delta < 1e-8, format!("|delta| = {delta:.2e} at x0=0.1, t=0.25")))
}

fn rk4_order() -> Result<CheckRow> {
    let f = parse("x")?;
    let err = |steps| -> Result<f64> { Ok((rk4_solve(&f, 1.0, 0.5, steps)?.final_value() - 0.5f64.exp()).abs()) };
    let ratio = err(16)? / err(32)?;
    Ok(row("RK4 convergence order", (12.0..=20.0).contains(&ratio), format!("ratio {ratio:.2}")))
}

fn parser_round_trip(rng: &mut ChaCha8Rng) -> CheckRow {
    const ATOMS: [&str; 6] = ["x", "1", "2/3", "exp(2x)", "sin(x)", "cos(-x)"];
    for trial in 0..50 {
        let mut text = ATOMS[rng.random_range(0..ATOMS.len())].to_string();
        for _ in 0..rng.random_range(1..4) {
            let atom = ATOMS[rng.random_range(0..ATOMS.len())];
            text = match rng.random_range(0..4) {
                0 => format!("{text} + {atom}"),
                1 => format!("({text}) - {atom}"),
                2 => format!("({text})*{atom}"),
                _ => format!("-({text})^2"),
            };
        }
        let parsed = match parse(&text) {
            Ok(e) => e,
            Err(_) => return row("parser round trip", false, format!("{text:?} did not parse")),
        };
        if parse(&parsed.to_string()).ok() != Some(parsed.clone()) {
            return row("parser round trip", false, format!("trial {trial}: {text:?}"));
        }
    }
    row("parser round trip", true, "50 random expressions")
}

/// Runs every check; the same seed always gives the same rows.
pub fn run_suite(seed: u64) -> Vec<CheckRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fallible = |name: &'static str, r: Result<CheckRow>| {
        r.unwrap_or_else(|e| row(name, false, format!("error: {e}")))
    };
    vec![
        ring_axioms(&mut rng),
        exp_ring(&mut rng),
        fallible("bell path = recurrence", bell_path(&mut rng)),
        fallible("A_n(f+g) = A_n(f) + A_n(g) + H_n", hn_identity(&mut rng)),
        fallible("scalar action A_n(af) = a^n A_n(f)", scalar_action(&mut rng)),
        fallible("semigroup, derivation, time scaling", flow_laws(&mut rng)),
        fallible("series vs closed forms", closed_forms()),
        fallible("worked examples", worked_examples()),
        fallible("series vs RK4", rk4_agreement()),
        fallible("RK4 convergence order", rk4_order()),
        parser_round_trip(&mut rng),
    ]
}
