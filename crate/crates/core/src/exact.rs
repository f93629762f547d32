//! Exact sign determination for sums of terms `c * q^(e/20)`.
//!
//! The inequalities this crate checks mix integer terms with `q^(1/2)` and
//! `q^(11/20)` powers, and some of them are decided by margins far below
//! floating-point resolution. A [`QPowSum`] keeps such an expression in
//! symbolic form and decides its sign exactly:
//!
//! 1. Rewrite every term over the base prime, `q^(e/20) = p^(ne/20)`, and
//!    group by the exponent residue mod 20. This expresses the value in the
//!    basis `p^(j/20)`, `0 <= j < 20`, with big-integer coordinates.
//! 2. `x^20 - p` is irreducible over the rationals (Eisenstein at `p`), so
//!    the basis is linearly independent: the value is zero exactly when all
//!    coordinates are zero.
//! 3. Otherwise, bracket `p^(1/20)` between consecutive integers at `B`
//!    fractional bits via an integer 20th root and evaluate the sum in
//!    interval arithmetic, doubling `B` until the interval excludes zero.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A formal sum of terms `c * q^(e/20)` with integer `c` and `e >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPowSum {
    q: u64,
    p: u64,
    n: u32,
    /// exponent numerator (in twentieths) -> coefficient
    terms: BTreeMap<u64, BigInt>,
}

impl QPowSum {
    /// Empty sum over prime power `q`.
    pub fn new(q: u64) -> QPowSum {
        let (p, n) = crate::arith::prime_power(q).expect("q must be a prime power");
        QPowSum { q, p, n, terms: BTreeMap::new() }
    }

    pub fn from_bigint(q: u64, c: BigInt) -> QPowSum {
        let mut s = QPowSum::new(q);
        s.add_term(c, 0);
        s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Adds `c * q^(e_twentieths / 20)`.
    pub fn add_term(&mut self, c: BigInt, e_twentieths: u64) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e_twentieths).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e_twentieths);
        }
    }

    pub fn add_assign(&mut self, other: &QPowSum) {
        assert_eq!(self.q, other.q, "sums must share the base");
        for (&e, c) in &other.terms {
            self.add_term(c.clone(), e);
        }
    }

    pub fn sub_assign(&mut self, other: &QPowSum) {
        assert_eq!(self.q, other.q, "sums must share the base");
        for (&e, c) in &other.terms {
            self.add_term(-c.clone(), e);
        }
    }

    /// A copy with every coefficient multiplied by `c`.
    pub fn scaled(&self, c: &BigInt) -> QPowSum {
        let mut out = QPowSum::new(self.q);
        for (&e, coeff) in &self.terms {
            out.add_term(coeff * c, e);
        }
        out
    }

    pub fn is_zero_sum(&self) -> bool {
        self.base_p_coordinates().iter().all(BigInt::is_zero)
    }

    /// Coordinates of the value in the basis `p^(j/20)`, `0 <= j < 20`.
    fn base_p_coordinates(&self) -> Vec<BigInt> {
        let mut coords = vec![BigInt::zero(); 20];
        for (&e, c) in &self.terms {
            let pe = self.n as u64 * e;
            let j = (pe % 20) as usize;
            let k = pe / 20;
            coords[j] += c * BigInt::from(crate::arith::big_pow(self.p, k));
        }
        coords
    }

    /// Exact sign of the value.
    pub fn sign(&self) -> Ordering {
        let coords = self.base_p_coordinates();
        if coords.iter().all(BigInt::is_zero) {
            return Ordering::Equal;
        }
        let mut bits = 64u32;
        loop {
            let (lo, hi) = interval_eval(self.p, &coords, bits);
            if lo.sign() == Sign::Plus {
                return Ordering::Greater;
            }
            if hi.sign() == Sign::Minus {
                return Ordering::Less;
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "interval refinement failed to converge");
        }
    }

    /// Floating-point approximation; a sanity oracle only, never the decider.
    pub fn approx(&self) -> f64 {
        let qf = self.q as f64;
        self.terms
            .iter()
            .map(|(&e, c)| c.to_f64().unwrap_or(f64::NAN) * qf.powf(e as f64 / 20.0))
            .sum()
    }

    /// High-precision interval `[lo, hi]` for the value scaled by `2^bits`.
    /// Used by tests to cross-check `sign` against a wide-precision estimate.
    pub fn scaled_interval(&self, bits: u32) -> (BigInt, BigInt) {
        interval_eval(self.p, &self.base_p_coordinates(), bits)
    }
}

/// Evaluates `sum_j coords[j] * p^(j/20)` scaled by `2^bits`, returning exact
/// lower and upper big-integer bounds.
fn interval_eval(p: u64, coords: &[BigInt], bits: u32) -> (BigInt, BigInt) {
    // root_lo <= 2^bits * p^(1/20) < root_lo + 1
    let scaled: BigUint = BigUint::from(p) << (20 * bits as usize);
    let root_lo = BigInt::from(scaled.nth_root(20));
    let root_hi: BigInt = &root_lo + 1;
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for (j, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // p^(j/20) * 2^(j*bits) lies in [root_lo^j, root_hi^j]
        let pow_lo = root_lo.pow(j as u32);
        let pow_hi = root_hi.pow(j as u32);
        let shift = ((19 - j) as u32 * bits) as usize;
        let (term_lo, term_hi) = if c.is_negative() {
            (c * &pow_hi, c * &pow_lo)
        } else {
            (c * &pow_lo, c * &pow_hi)
        };
        lo += term_lo << shift;
        hi += term_hi << shift;
    }
    (lo, hi)
}

impl fmt::Display for QPowSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&e, c)| {
                if e == 0 {
                    format!("{c}")
                } else if e % 20 == 0 {
                    format!("{c}*{}^{}", self.q, e / 20)
                } else {
                    format!("{c}*{}^({e}/20)", self.q)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An inequality `lhs > rhs` between two power sums, decided exactly.
#[derive(Clone, Debug)]
pub struct ExactComparison {
    pub lhs: QPowSum,
    pub rhs: QPowSum,
    pub holds: bool,
}

impl ExactComparison {
    pub fn strictly_greater(lhs: QPowSum, rhs: QPowSum) -> ExactComparison {
        let mut diff = lhs.clone();
        diff.sub_assign(&rhs);
        let holds = diff.sign() == Ordering::Greater;
        ExactComparison { lhs, rhs, holds }
    }

    /// Floating-point rendering of both sides, for report output.
    pub fn approx_sides(&self) -> (f64, f64) {
        (self.lhs.approx(), self.rhs.approx())
    }
}
