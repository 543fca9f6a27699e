//! Integer partitions and Bell polynomials over any commutative ring.
//!
//! `B_{n,k}(b) = Σ n!/(j₁!⋯jₙ!) Π (b_m/m!)^{j_m}` over the partitions of
//! `n` with `k` parts, and `Y_n(b; a) = Σ_k B_{n,k}(b) a_k`. The
//! combinatorial weight is always an integer, so the ring only needs
//! addition, multiplication and integer scaling.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff::{factorial, Scalar, TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::hurwitz::HurwitzSeries;

/// Minimal ring interface needed to evaluate Bell polynomials.
pub trait BellRing: Clone {
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn scale_int(&self, k: &BigInt) -> Self;
}

impl<C: Scalar> BellRing for C {
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add_ref(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul_ref(rhs)
    }
    fn scale_int(&self, k: &BigInt) -> Self {
        self.mul_ref(&C::from_integer(k.clone()))
    }
}

/// Series arithmetic here truncates to the smaller order.
impl<C: Scalar> BellRing for HurwitzSeries<C> {
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale_int(&self, k: &BigInt) -> Self {
        HurwitzSeries::scale_int(self, k)
    }
}

/// A partition of `n` given by its multiplicities: `j[h-1]` parts of size `h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionMultiplicity {
    n: usize,
    j: Vec<usize>,
}

impl PartitionMultiplicity {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `(j₁, …, jₙ)`
    pub fn multiplicities(&self) -> &[usize] {
        &self.j
    }

    /// Number of parts `j₁ + ⋯ + jₙ`.
    pub fn len(&self) -> usize {
        self.j.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `n! / Π (j_m! (m!)^{j_m})`, the number of set partitions of this block type.
    pub fn weight(&self) -> BigInt {
        let mut den = BigInt::from(1);
        for (idx, &jm) in self.j.iter().enumerate() {
            if jm == 0 {
                continue;
            }
            den *= factorial(jm) * num_traits::pow(factorial(idx + 1), jm);
        }
        factorial(self.n) / den
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > TABLE_LIMIT {
        return Err(Error::OutOfRange(format!("partition size {n} outside 1..={TABLE_LIMIT}")));
    }
    Ok(())
}

fn partition_counts() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut p = vec![BigInt::zero(); TABLE_LIMIT + 1];
        p[0] = BigInt::from(1);
        for part in 1..=TABLE_LIMIT {
            for total in part..=TABLE_LIMIT {
                let prev = p[total - part].clone();
                p[total] += prev;
            }
        }
        p
    })
}

/// `p(n)`, tabulated for `n <= 64`.
pub fn partition_count(n: usize) -> Result<BigInt> {
    if n > TABLE_LIMIT {
        return Err(Error::OutOfRange(format!("p({n}) is not tabulated")));
    }
    Ok(partition_counts()[n].clone())
}

/// Every partition of `n` exactly once, in decreasing lexicographic order
/// of `(j₁, …, jₙ)`; so `(n, 0, …)` comes first and `(0, …, 0, 1)` last.
pub fn partitions(n: usize) -> Result<Vec<PartitionMultiplicity>> {
    check_n(n)?;
    let capacity = usize::try_from(partition_counts()[n].clone()).unwrap_or(0);
    let mut out = Vec::with_capacity(capacity);
    let mut j = vec![0usize; n];
    fill_from_largest(n, n, &mut j, &mut out);
    out.sort_by(|a, b| b.j.cmp(&a.j));
    Ok(out)
}

// Chooses the multiplicity of part size `largest`, then recurses on smaller sizes.
fn fill_from_largest(
    remaining: usize,
    largest: usize,
    j: &mut Vec<usize>,
    out: &mut Vec<PartitionMultiplicity>,
) {
    if remaining == 0 {
        out.push(PartitionMultiplicity { n: j.len(), j: j.clone() });
        return;
    }
    if largest == 1 {
        j[0] = remaining;
        out.push(PartitionMultiplicity { n: j.len(), j: j.clone() });
        j[0] = 0;
        return;
    }
    for count in 0..=remaining / largest {
        j[largest - 1] = count;
        fill_from_largest(remaining - count * largest, largest - 1, j, out);
    }
    j[largest - 1] = 0;
}

fn product_of_powers<R: BellRing>(p: &PartitionMultiplicity, b: &[R]) -> Option<R> {
    let mut acc: Option<R> = None;
    for (idx, &jm) in p.j.iter().enumerate() {
        for _ in 0..jm {
            acc = Some(match acc {
                None => b[idx].clone(),
                Some(v) => v.ring_mul(&b[idx]),
            });
        }
    }
    acc
}

fn check_bell_args(n: usize, k: usize, len: usize) -> Result<()> {
    check_n(n)?;
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!("B_{{{n},{k}}} needs 1 <= k <= n")));
    }
    if len < n - k + 1 {
        return Err(Error::OutOfRange(format!(
            "B_{{{n},{k}}} needs {} arguments, got {len}",
            n - k + 1
        )));
    }
    Ok(())
}

fn partial_bell_over<R: BellRing>(parts: &[PartitionMultiplicity], k: usize, b: &[R]) -> R {
    parts
        .iter()
        .filter(|p| p.len() == k)
        .map(|p| {
            product_of_powers(p, b)
                .expect("a partition with k >= 1 parts has a factor")
                .scale_int(&p.weight())
        })
        .reduce(|acc, term| acc.ring_add(&term))
        .expect("every n >= k >= 1 has a partition into k parts")
}

/// The partial Bell polynomial `B_{n,k}(b₁, …, b_{n−k+1})`; `b[m-1]` holds `b_m`.
pub fn partial_bell<R: BellRing>(n: usize, k: usize, b: &[R]) -> Result<R> {
    check_bell_args(n, k, b.len())?;
    let parts = partitions(n)?;
    Ok(partial_bell_over(&parts, k, b))
}

/// The complete Bell polynomial `Y_n(b; a) = Σ_{k=1..n} B_{n,k}(b) a_k`.
pub fn bell_y<R: BellRing>(n: usize, b: &[R], a: &[R]) -> Result<R> {
    check_bell_args(n, 1, b.len())?;
    if a.len() < n {
        return Err(Error::OutOfRange(format!("Y_{n} needs {n} a-arguments, got {}", a.len())));
    }
    let parts = partitions(n)?;
    let total = (1..=n)
        .map(|k| partial_bell_over(&parts, k, b).ring_mul(&a[k - 1]))
        .reduce(|acc, term| acc.ring_add(&term))
        .expect("n >= 1");
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rational;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn mults(n: usize) -> Vec<Vec<usize>> {
        partitions(n).unwrap().into_iter().map(|p| p.j).collect()
    }

    #[test]
    fn small_partitions() {
        assert_eq!(mults(1), vec![vec![1]]);
        assert_eq!(mults(3), vec![vec![3, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(partitions(4).unwrap().len(), 5);
        assert!(partitions(0).is_err());
        assert!(partitions(65).is_err());
    }

    // Brute force: all compositions of n, sorted and deduplicated.
    fn brute_force(n: usize) -> Vec<Vec<usize>> {
        let mut found = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << (n - 1)) {
            let mut parts = Vec::new();
            let mut run = 1;
            for bit in 0..n - 1 {
                if mask & (1 << bit) != 0 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            let mut j = vec![0; n];
            for p in parts {
                j[p - 1] += 1;
            }
            found.insert(j);
        }
        let mut v: Vec<_> = found.into_iter().collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=14 {
            let got = mults(n);
            assert_eq!(got, brute_force(n), "n = {n}");
            assert_eq!(BigInt::from(got.len()), partition_count(n).unwrap());
            for j in got {
                assert_eq!(j.iter().enumerate().map(|(i, c)| (i + 1) * c).sum::<usize>(), n);
            }
        }
        assert_eq!(partition_count(64).unwrap(), BigInt::from(1_741_630u64));
    }

    #[test]
    fn partial_bell_examples() {
        let b = [q(2), q(3), q(5), q(7)];
        // B_{3,2} = 3 b1 b2
        assert_eq!(partial_bell(3, 2, &b).unwrap(), q(3 * 2 * 3));
        // B_{n,n} = b1^n
        assert_eq!(partial_bell(4, 4, &b).unwrap(), q(16));
        // B_{4,2} = 4 b1 b3 + 3 b2²
        assert_eq!(partial_bell(4, 2, &b).unwrap(), q(4 * 2 * 5 + 3 * 9));
        assert!(partial_bell(3, 0, &b).is_err());
        assert!(partial_bell(3, 4, &b).is_err());
        assert!(partial_bell(5, 1, &b).is_err());
        assert_eq!(partial_bell(5, 2, &b).unwrap(), q(5 * 2 * 7 + 10 * 3 * 5));
    }

    #[test]
    fn complete_bell_examples() {
        let b = [q(2), q(3), q(5)];
        let a = [q(7), q(11), q(13)];
        assert_eq!(bell_y(1, &b, &a).unwrap(), q(7 * 2));
        assert_eq!(bell_y(2, &b, &a).unwrap(), q(7 * 3 + 11 * 4));
        assert_eq!(bell_y(3, &b, &a).unwrap(), q(7 * 5 + 11 * 3 * 2 * 3 + 13 * 8));
        assert!(bell_y(3, &b, &a[..2]).is_err());
    }

    #[test]
    fn bell_numbers() {
        let ones = vec![q(1); 8];
        let expected = [1, 2, 5, 15, 52, 203];
        for (n, &bell) in (1..=6).zip(expected.iter()) {
            assert_eq!(bell_y(n, &ones, &ones).unwrap(), q(bell));
        }
    }

    #[test]
    fn weights_count_set_partitions() {
        // Σ weights over partitions of n with k parts is the Stirling number S(n,k).
        let parts = partitions(6).unwrap();
        let s62: BigInt = parts.iter().filter(|p| p.len() == 2).map(|p| p.weight()).sum();
        assert_eq!(s62, BigInt::from(31));
    }
}
