//! Counting formulas for irreducible and square-free polynomials.
//!
//! Counts follow the convention that all `q - 1` unit multiples of a monic
//! polynomial are counted; divide by `q - 1` (or use the `monic` variants)
//! for monic-only counts. Everything is exact big-integer arithmetic.

use super::PolyError;
use crate::arith;
use crate::exact::QPowSum;
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

/// Number of monic irreducible polynomials of degree exactly `k` over `F_q`:
/// `(1/k) * sum_{d|k} mu(d) q^(k/d)`.
pub fn count_monic_irreducible(q: u64, k: u64) -> BigUint {
    assert!(k >= 1, "degree must be at least 1");
    let mut sum = BigInt::zero();
    for d in arith::divisors(k) {
        let term = BigInt::from(arith::big_pow(q, k / d));
        match arith::mobius_int(d) {
            1 => sum += term,
            -1 => sum -= term,
            _ => {}
        }
    }
    let (quot, rem) = num_integer::Integer::div_rem(&sum, &BigInt::from(k));
    debug_assert!(rem.is_zero(), "necklace count is always divisible by k");
    quot.to_biguint().expect("count is nonnegative")
}

/// Number of irreducible polynomials of degree exactly `k` over `F_q`,
/// counting all unit multiples: `pi_q(k) = (q-1)/k * sum_{d|k} mu(d) q^(k/d)`.
pub fn count_irreducible(q: u64, k: u64) -> BigUint {
    count_monic_irreducible(q, k) * BigUint::from(q - 1)
}

/// Number of square-free polynomials of degree exactly `m >= 2` (all leading
/// coefficients): `(q-1)(q^m - q^(m-1))`.
pub fn count_squarefree_exact(q: u64, m: u64) -> Result<BigUint, PolyError> {
    if m < 2 {
        return Err(PolyError::OutOfRange(
            "the exact-degree square-free formula needs m >= 2",
        ));
    }
    Ok(BigUint::from(q - 1) * (arith::big_pow(q, m) - arith::big_pow(q, m - 1)))
}

/// Number of square-free polynomials with `1 <= deg f < m`, `m >= 2`:
/// `(q-1) q^(m-1)`.
pub fn count_squarefree_below(q: u64, m: u64) -> Result<BigUint, PolyError> {
    if m < 2 {
        return Err(PolyError::OutOfRange(
            "the below-degree square-free formula needs m >= 2",
        ));
    }
    Ok(BigUint::from(q - 1) * arith::big_pow(q, m - 1))
}

/// Exact check of the sandwich
/// `(q^k - 2q^(k/2)) / k <= pi_q(k)/(q-1) <= q^k / k`,
/// decided without floating point (the half-power term is compared through
/// the exact power-sum machinery).
pub fn irreducible_count_sandwich_holds(q: u64, k: u64) -> bool {
    let monic = BigInt::from(count_monic_irreducible(q, k));
    // Upper bound: k * monic <= q^k.
    let k_monic = &monic * BigInt::from(k);
    let upper = QPowSum::from_bigint(q, BigInt::from(arith::big_pow(q, k)) - &k_monic);
    // Lower bound: q^k - 2q^(k/2) <= k * monic.
    let mut lower = QPowSum::from_bigint(q, k_monic - BigInt::from(arith::big_pow(q, k)));
    lower.add_term(BigInt::from(2), 10 * k); // exponents are in twentieths
    upper.sign() != std::cmp::Ordering::Less && lower.sign() != std::cmp::Ordering::Less
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_counts() {
        // (1/3)(8 - 2) = 2 monic cubics over F_2
        assert_eq!(count_irreducible(2, 3), BigUint::from(2u32));
        // (2/2)(9 - 3) = 6 over F_3: 3 monic times 2 units
        assert_eq!(count_irreducible(3, 2), BigUint::from(6u32));
        // all degree-1 polynomials are irreducible
        for q in [2u64, 3, 4, 5, 7, 9] {
            assert_eq!(count_irreducible(q, 1), BigUint::from(q * (q - 1)));
        }
    }

    #[test]
    fn squarefree_counts() {
        assert_eq!(count_squarefree_exact(2, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(count_squarefree_exact(3, 2).unwrap(), BigUint::from(12u32));
        assert_eq!(count_squarefree_below(2, 3).unwrap(), BigUint::from(4u32));
        assert_eq!(count_squarefree_below(3, 2).unwrap(), BigUint::from(6u32));
        assert!(count_squarefree_exact(3, 1).is_err());
        assert!(count_squarefree_below(3, 1).is_err());
        // unit-scaling classes: always divisible by q - 1
        for q in [2u64, 3, 4, 5] {
            for m in 2..=6 {
                let c = count_squarefree_exact(q, m).unwrap();
                assert!((c % BigUint::from(q - 1)).is_zero());
            }
        }
    }

    #[test]
    fn sandwich_small_grid() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 64] {
            for k in 1..=12 {
                assert!(irreducible_count_sandwich_holds(q, k), "q={q} k={k}");
            }
        }
    }
}
