//! `HH_*(k[x]/xⁿ, A^σ)` from the 2-periodic resolution, with `x` in degree 0
//! and weight 1 and `σ(x) = c·x`.
//!
//! The resolution `A^e ←u− A^e ←v− A^e ←u− ⋯` has `u = x⊗1 − 1⊗x` and
//! `v = Σ_j x^j ⊗ x^{n−1−j}`. On `A^σ` these become multiplication by
//! `(1 − c)·x` and by `(Σ_j c^j)·x^{n−1}`. Both are monomial, so homology is
//! read off basis vector by basis vector.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::homalg::field::Scalar;
use crate::homalg::Coefficients;

fn vanishes(x: &Scalar, coeffs: Coefficients) -> Result<bool> {
    match coeffs {
        Coefficients::Rational => Ok(x.is_zero()),
        Coefficients::PrimeField { .. } => Ok(coeffs.reduce(x)? == 0),
    }
}

/// `(coefficient, power shift)` of `d_i : P_i → P_{i−1}`.
fn map(i: usize, n: usize, c: &Scalar) -> (Scalar, usize) {
    if i % 2 == 1 {
        (Scalar::one() - c, 1)
    } else {
        let mut s = Scalar::zero();
        let mut p = Scalar::one();
        for _ in 0..n {
            s += &p;
            p *= c;
        }
        (s, n - 1)
    }
}

/// Weight of the generator of `P_i`.
fn generator_weight(i: usize, n: usize) -> i64 {
    ((i / 2) * n + i % 2) as i64
}

/// Nonzero dimensions by `(degree, weight)` for degrees `lo ≤ k ≤ 0`.
pub fn periodic_hochschild(
    n: usize,
    twist: &Scalar,
    lo: i64,
    coeffs: Coefficients,
) -> Result<BTreeMap<(i64, i64), usize>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("k[x]/x^{n} needs n ≥ 2")));
    }
    let mut out = BTreeMap::new();
    for i in 0..=(-lo).max(0) as usize {
        let out_map = if i == 0 { None } else { Some(map(i, n, twist)) };
        let in_map = map(i + 1, n, twist);
        for p in 0..n {
            let cycle = match &out_map {
                None => true,
                Some((a, s)) => p + s >= n || vanishes(a, coeffs)?,
            };
            let boundary = p >= in_map.1 && !vanishes(&in_map.0, coeffs)?;
            if cycle && !boundary {
                *out.entry((-(i as i64), p as i64 + generator_weight(i, n))).or_insert(0) += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::field::int;

    fn totals(t: &BTreeMap<(i64, i64), usize>, lo: i64) -> Vec<usize> {
        (lo..=0).rev().map(|k| t.iter().filter(|((d, _), _)| *d == k).map(|(_, v)| v).sum()).collect()
    }

    #[test]
    fn dual_numbers() {
        let t = periodic_hochschild(2, &int(1), -4, Coefficients::Rational).unwrap();
        assert_eq!(totals(&t, -4), vec![2, 1, 1, 1, 1]);
        let t = periodic_hochschild(2, &int(-1), -4, Coefficients::Rational).unwrap();
        assert_eq!(totals(&t, -4), vec![1, 1, 1, 1, 1]);
        // 2 vanishes in characteristic 2, where the twist is trivial
        let f2 = Coefficients::prime_field(2).unwrap();
        let t = periodic_hochschild(2, &int(-1), -4, f2).unwrap();
        assert_eq!(totals(&t, -4), vec![2, 2, 2, 2, 2]);
    }
}
