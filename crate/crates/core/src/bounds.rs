//! Classification of `(q, r)` pairs and exact evaluation of the governing
//! inequalities.
//!
//! The pairs with `q >= 7`, `r >= 2` split into a family handled analytically
//! (`Omega0`, with two distinguished subfamilies: the induction base cases
//! and the range where the sharp character-sum bound is needed) and a finite
//! remainder (`Omega1`, 36 pairs) that is checked by brute force in `verify`.
//!
//! Every inequality is decided through [`QPowSum`], never floating point;
//! boundary rows flip on margins far below double precision.

use crate::arith;
use crate::exact::{ExactComparison, QPowSum};
use crate::polyring::count_irreducible;
use num_bigint::BigInt;
use serde::Serialize;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("degree must be at least 2")]
    DegreeTooSmall,
}

/// Membership of a `(q, r)` pair in the case partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OmegaClass {
    /// Analytically handled. `base_case` marks the induction base family;
    /// `sharp_range` marks the finite window where the refined coset
    /// inequality is required. The two may overlap.
    Omega0 { base_case: bool, sharp_range: bool },
    /// One of the 36 machine-verified pairs.
    Omega1,
    /// `q < 7` or `r < 2`: outside the theorem's domain.
    OutOfDomain,
}

impl OmegaClass {
    pub fn in_omega0(self) -> bool {
        matches!(self, OmegaClass::Omega0 { .. })
    }

    pub fn in_omega0_prime(self) -> bool {
        matches!(self, OmegaClass::Omega0 { base_case: true, .. })
    }

    pub fn in_omega0_double_prime(self) -> bool {
        matches!(self, OmegaClass::Omega0 { sharp_range: true, .. })
    }
}

fn in_omega0(q: u64, r: u32) -> bool {
    match q {
        7 | 8 => r >= 6,
        9 | 11 => r >= 5,
        13..=22 => r >= 4,
        23..=63 => r >= 3,
        64.. => r >= 2,
        _ => false,
    }
}

fn in_omega0_prime(q: u64, r: u32) -> bool {
    match q {
        7 | 8 => r == 6,
        9 | 11 => r == 5,
        13..=22 => r == 4,
        23..=63 => r == 3,
        64.. => r == 2,
        _ => false,
    }
}

fn in_omega0_double_prime(q: u64, r: u32) -> bool {
    match q {
        7 => (6..=19).contains(&r),
        8 => (6..=14).contains(&r),
        9 => (5..=10).contains(&r),
        11 => (5..=6).contains(&r),
        _ => false,
    }
}

/// Classifies a pair; `q` must be a prime power.
pub fn omega_classify(q: u64, r: u32) -> Result<OmegaClass, BoundsError> {
    if arith::prime_power(q).is_none() {
        return Err(BoundsError::NotPrimePower(q));
    }
    if q < 7 || r < 2 {
        return Ok(OmegaClass::OutOfDomain);
    }
    if in_omega0(q, r) {
        Ok(OmegaClass::Omega0 {
            base_case: in_omega0_prime(q, r),
            sharp_range: in_omega0_double_prime(q, r),
        })
    } else {
        Ok(OmegaClass::Omega1)
    }
}

/// Prime powers in `[2, limit]`, ascending.
pub fn prime_powers_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&q| arith::prime_power(q).is_some()).collect()
}

/// The 36 machine-checked pairs, derived from the classification.
pub fn omega1_roster() -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for q in prime_powers_up_to(63) {
        if q < 7 {
            continue;
        }
        for r in 2..=6 {
            if matches!(omega_classify(q, r), Ok(OmegaClass::Omega1)) {
                out.push((q, r));
            }
        }
    }
    out
}

/// The induction base cases with `q < 64`, plus `(64, 2)` as the smallest
/// member of the unbounded family.
pub fn omega0_prime_roster_small() -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for q in prime_powers_up_to(64) {
        for r in 2..=6 {
            if in_omega0_prime(q, r) && arith::prime_power(q).is_some() {
                out.push((q, r));
            }
        }
    }
    out
}

/// All 31 pairs of the sharp-bound window.
pub fn omega0_double_prime_roster() -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for q in [7u64, 8, 9, 11] {
        for r in 2..=19 {
            if in_omega0_double_prime(q, r) {
                out.push((q, r));
            }
        }
    }
    out
}

// ---- The inequalities ----

/// `sum_{k=0}^{floor((m-2)/2)} q^k sum_{t=1}^{m-2k-1} q^(t/2) min(q^(t/2), binom(r-1, t))`
/// as an exact power sum. The `min` is decided by comparing `q^t` with the
/// squared binomial.
pub fn min_power_double_sum(q: u64, r: u64, m: u64) -> QPowSum {
    use num_bigint::BigUint;
    use num_traits::{One, Zero};
    let mut acc = QPowSum::new(q);
    if m < 2 {
        return acc;
    }
    let tmax = (m - 1) as usize;
    // C(r-1, t) and its square, incrementally; zero past t = r-1.
    let mut binom_sq: Vec<BigUint> = Vec::with_capacity(tmax + 1);
    let mut binoms: Vec<BigUint> = Vec::with_capacity(tmax + 1);
    let mut q_pows: Vec<BigUint> = Vec::with_capacity(tmax + 1);
    binoms.push(BigUint::one());
    q_pows.push(BigUint::one());
    for t in 1..=tmax as u64 {
        let next = if t > r - 1 {
            BigUint::zero()
        } else {
            &binoms[(t - 1) as usize] * (r - t) / t
        };
        binoms.push(next);
        q_pows.push(&q_pows[(t - 1) as usize] * q);
    }
    for b in &binoms {
        binom_sq.push(b * b);
    }
    for k in 0..=(m - 2) / 2 {
        for t in 1..=(m - 2 * k - 1) as usize {
            if q_pows[t] <= binom_sq[t] {
                // q^k * q^(t/2) * q^(t/2) = q^(k+t)
                acc.add_term(BigInt::from(1), 20 * (k + t as u64));
            } else if !binoms[t].is_zero() {
                // binom * q^k * q^(t/2)
                acc.add_term(BigInt::from(binoms[t].clone()), 20 * k + 10 * t as u64);
            }
        }
    }
    acc
}

/// Irreducible-count inequality, scaled by `r` to clear the `q^r / r` term:
/// `r * sum_{k<r} pi_q(k)  >  q^r + 2r q^((10r+11)/20) + r((q-1)r^3 + 3)`.
pub fn ineq_irred_count(q: u64, r: u32) -> ExactComparison {
    let r64 = r as u64;
    let mut total = BigInt::from(0);
    for k in 1..r64 {
        total += BigInt::from(count_irreducible(q, k));
    }
    let lhs = QPowSum::from_bigint(q, total * BigInt::from(r64));
    let mut rhs = QPowSum::new(q);
    rhs.add_term(BigInt::from(1), 20 * r64);
    rhs.add_term(BigInt::from(2 * r64), 10 * r64 + 11);
    rhs.add_term(
        BigInt::from(r64) * (BigInt::from(q - 1) * BigInt::from(r64).pow(3) + 3),
        0,
    );
    ExactComparison::strictly_greater(lhs, rhs)
}

/// Coset inequality with the refined character-sum bound:
/// `q^(r-1)  >  (r-1) * min_power_double_sum(q, r, r)`.
pub fn ineq_coset(q: u64, r: u32) -> ExactComparison {
    let r64 = r as u64;
    let lhs = QPowSum::from_bigint(q, BigInt::from(arith::big_pow(q, r64 - 1)));
    let rhs = min_power_double_sum(q, r64, r64).scaled(&BigInt::from(r64 - 1));
    ExactComparison::strictly_greater(lhs, rhs)
}

/// Coset inequality with the simple character-sum bound, doubled to clear
/// the `r/2` factor: `2 q^(r-1)  >  r(r-1)(2^(r-1) - 1) q^((r-1)/2)`.
pub fn ineq_simple_coset(q: u64, r: u32) -> ExactComparison {
    let r64 = r as u64;
    let mut lhs = QPowSum::new(q);
    lhs.add_term(BigInt::from(2), 20 * (r64 - 1));
    let mut rhs = QPowSum::new(q);
    rhs.add_term(
        BigInt::from(r64) * BigInt::from(r64 - 1)
            * (BigInt::from(arith::big_pow(2, r64 - 1)) - 1),
        10 * (r64 - 1),
    );
    ExactComparison::strictly_greater(lhs, rhs)
}

/// Pair-representation inequality, multiplied through by `r q^(r/2 - 11/20)`
/// (positive) so every exponent is a nonnegative twentieth:
/// `q^r + 2r q^((10r+11)/20) + 3r  >  r(4r(q-1) + 1) q^((10r-11)/20)`.
pub fn ineq_enough_reps(q: u64, r: u32) -> ExactComparison {
    let r64 = r as u64;
    let mut lhs = QPowSum::new(q);
    lhs.add_term(BigInt::from(1), 20 * r64);
    lhs.add_term(BigInt::from(2 * r64), 10 * r64 + 11);
    lhs.add_term(BigInt::from(3 * r64), 0);
    let mut rhs = QPowSum::new(q);
    rhs.add_term(
        BigInt::from(r64) * (BigInt::from(4 * r64) * BigInt::from(q - 1) + 1),
        10 * r64 - 11,
    );
    ExactComparison::strictly_greater(lhs, rhs)
}

// ---- Threshold scans ----

pub const INEQUALITY_IDS: [&str; 4] = ["irred_count", "coset", "simple_coset", "enough_reps"];

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdRow {
    pub r: u32,
    pub irred_count: bool,
    pub coset: bool,
    pub simple_coset: bool,
    pub enough_reps: bool,
    /// `irred_count && enough_reps && (coset || simple_coset)`: the combined
    /// criterion under which the main conclusion follows for `(q, r)`.
    pub combined: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdScan {
    pub q: u64,
    pub r_max: u32,
    pub rows: Vec<ThresholdRow>,
    pub first_irred_count: Option<u32>,
    pub first_coset: Option<u32>,
    pub first_simple_coset: Option<u32>,
    pub first_enough_reps: Option<u32>,
    pub first_combined: Option<u32>,
    /// Smallest `r` from which each inequality holds all the way to `r_max`.
    /// Degenerate small-`r` rows can be true before an inequality settles, so
    /// this is the statistic matching "holds for r >= ..." claims.
    pub stable_irred_count: Option<u32>,
    pub stable_coset: Option<u32>,
    pub stable_simple_coset: Option<u32>,
    pub stable_enough_reps: Option<u32>,
    pub stable_combined: Option<u32>,
}

impl ThresholdScan {
    pub fn row(&self, r: u32) -> Option<&ThresholdRow> {
        self.rows.iter().find(|row| row.r == r)
    }
}

/// Evaluates all four inequalities for `r = 2..=r_max`, recording both the
/// first `r` where each holds and the stable threshold from which it keeps
/// holding through `r_max`.
pub fn scan_thresholds(q: u64, r_max: u32) -> ThresholdScan {
    use rayon::prelude::*;
    let rows: Vec<ThresholdRow> = (2..=r_max)
        .into_par_iter()
        .map(|r| {
            let irred_count = ineq_irred_count(q, r).holds;
            let coset = ineq_coset(q, r).holds;
            let simple_coset = ineq_simple_coset(q, r).holds;
            let enough_reps = ineq_enough_reps(q, r).holds;
            ThresholdRow {
                r,
                irred_count,
                coset,
                simple_coset,
                enough_reps,
                combined: irred_count && enough_reps && (coset || simple_coset),
            }
        })
        .collect();
    let first = |sel: fn(&ThresholdRow) -> bool| rows.iter().find(|row| sel(row)).map(|row| row.r);
    let stable = |sel: fn(&ThresholdRow) -> bool| {
        rows.iter()
            .rev()
            .take_while(|row| sel(row))
            .last()
            .map(|row| row.r)
    };
    ThresholdScan {
        q,
        r_max,
        first_irred_count: first(|row| row.irred_count),
        first_coset: first(|row| row.coset),
        first_simple_coset: first(|row| row.simple_coset),
        first_enough_reps: first(|row| row.enough_reps),
        first_combined: first(|row| row.combined),
        stable_irred_count: stable(|row| row.irred_count),
        stable_coset: stable(|row| row.coset),
        stable_simple_coset: stable(|row| row.simple_coset),
        stable_enough_reps: stable(|row| row.enough_reps),
        stable_combined: stable(|row| row.combined),
        rows,
    }
}
