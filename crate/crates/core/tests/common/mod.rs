//! Test-side oracles over plain `BigRational` polynomials, independent of
//! the Hurwitz machinery in the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use flowring::coeff::Rational;
use flowring::hurwitz::HurwitzSeries;

/// Ordinary coefficients `c_0 + c_1 x + …`.
pub type Poly = Vec<BigRational>;

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn fact(n: usize) -> BigRational {
    (1..=n).fold(big(1), |acc, k| acc * big(k as i64))
}

pub fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(big(0));
    }
    p
}

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(Zero::zero) + b.get(i).cloned().unwrap_or_else(Zero::zero))
        .collect())
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![big(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn poly_scale(a: &Poly, c: &BigRational) -> Poly {
    trim(a.iter().map(|x| x * c).collect())
}

pub fn poly_deriv(a: &Poly) -> Poly {
    if a.len() <= 1 {
        return vec![big(0)];
    }
    trim(a.iter().enumerate().skip(1).map(|(i, x)| x * big(i as i64)).collect())
}

/// `A_0 = x`, `A_{n+1} = f·A_n'` on ordinary polynomials.
pub fn autonomous_oracle(f: &Poly, max_n: usize) -> Vec<Poly> {
    let mut out = vec![vec![big(0), big(1)]];
    for n in 0..max_n {
        let next = poly_mul(f, &poly_deriv(&out[n]));
        out.push(next);
    }
    out
}

/// EGF coefficients `c_n·n!` as a library series of the given order.
pub fn to_series(p: &Poly, order: usize) -> HurwitzSeries<Rational> {
    HurwitzSeries::from_fn(order, |n| {
        Rational::from(p.get(n).cloned().unwrap_or_else(Zero::zero) * fact(n))
    })
}

/// Whether the known coefficients of `s` are those of the polynomial `p`.
pub fn series_matches_poly(s: &HurwitzSeries<Rational>, p: &Poly) -> bool {
    s.coeffs().iter().enumerate().all(|(n, c)| {
        let want = p.get(n).cloned().unwrap_or_else(Zero::zero) * fact(n);
        c.as_big() == &want
    })
}

pub fn random_big(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.random_range(-9i64..=9)), BigInt::from(rng.random_range(1i64..=5)))
}

pub fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> Poly {
    let degree = rng.random_range(0..=max_degree);
    trim((0..=degree).map(|_| random_big(rng)).collect())
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from(random_big(rng))
}

pub fn random_series(rng: &mut ChaCha8Rng, order: usize) -> HurwitzSeries<Rational> {
    HurwitzSeries::from_fn(order, |_| random_rational(rng))
}

/// Bivariate polynomial in `(s, x)`: `b[i]` is the `x`-polynomial at `sⁱ`.
pub type Bi = Vec<Poly>;

pub fn bi_mul(a: &Bi, b: &Bi, max_s: usize) -> Bi {
    let mut out = vec![vec![big(0)]; max_s + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= max_s {
                out[i + j] = poly_add(&out[i + j], &poly_mul(x, y));
            }
        }
    }
    out
}

/// `p(inner)` by Horner's rule, truncated at `s^max_s`.
pub fn bi_compose(p: &Poly, inner: &Bi, max_s: usize) -> Bi {
    let mut acc: Bi = vec![vec![big(0)]; max_s + 1];
    for c in p.iter().rev() {
        acc = bi_mul(&acc, inner, max_s);
        acc[0] = poly_add(&acc[0], &vec![c.clone()]);
    }
    acc
}

/// `Φ_s = Σ A_m sᵐ/m!` with ordinary coefficients in `s`.
pub fn flow_in_s(a: &[Poly], max_s: usize) -> Bi {
    (0..=max_s).map(|m| poly_scale(&a[m], &(big(1) / fact(m)))).collect()
}

pub fn is_one(x: &BigRational) -> bool {
    x.is_one()
}
