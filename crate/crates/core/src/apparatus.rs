//! The subgroup/coset machinery behind the analytic argument, made concrete
//! at small scale: coset representatives for every admissible subgroup
//! index, the excluded-irreducible set `S_F`, the pair statistics `w(s)`,
//! the dense-product set built from them, and its multiplicative closure.
//!
//! Counting convention: "irreducibles" always include all `q - 1` unit
//! multiples of each monic irreducible. Every count here breaks by a factor
//! of `q - 1` if that convention slips, so it is enforced in one place
//! (`member_enumeration`) and asserted against the closed-form counts.

use crate::arith;
use crate::bitring::CyclicBitSet;
use crate::polyring::{self, Poly};
use crate::residue::{CosetRep, ResidueRing, RingError};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Pair statistics are quadratic in the member count; this caps the work.
pub const PAIR_GUARD: u64 = 100_000;
/// Closure sets live in dlog space of size `q^r - 1`.
pub const CLOSURE_GUARD: u64 = 1 << 14;

#[derive(Debug, thiserror::Error)]
pub enum ApparatusError {
    #[error("no square-free coset representative for divisor {d}, coset {coset}")]
    MissingRepresentative { d: u64, coset: u64 },
    #[error("member count {0} exceeds the pair-statistics guard")]
    PairGuardExceeded(u64),
    #[error("ring size {0} exceeds the closure guard 2^14")]
    ClosureGuardExceeded(u64),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Divisors `d | q^r - 1` with `d < r`: the subgroup indices the argument
/// needs representatives for.
pub fn required_divisors(ring: &ResidueRing) -> Vec<u64> {
    arith::divisors(ring.group_order())
        .into_iter()
        .filter(|&d| d < ring.degree() as u64)
        .collect()
}

/// Representatives, the excluded set, and the remaining irreducibles.
pub struct ApparatusState {
    /// `d -> [rep per coset]`, square-free of degree in `[1, r)`.
    pub coset_reps: BTreeMap<u64, Vec<Poly>>,
    /// Polynomial indices of every irreducible (all unit multiples) of
    /// degree `< r` dividing some representative.
    pub excluded: BTreeSet<u64>,
    /// K: irreducibles of degree `< r` (unit multiples included) that are
    /// not excluded.
    pub remaining_count: u64,
    /// Discrete logs of the remaining irreducibles.
    pub member_dlogs: Vec<u64>,
}

/// Builds the full state. A missing coset representative is a reported
/// error, never an assumption.
pub fn build_apparatus(ring: &ResidueRing) -> Result<ApparatusState, ApparatusError> {
    let field = ring.field();
    let r = ring.degree();
    let q = ring.q();
    let mut coset_reps = BTreeMap::new();
    let mut excluded: BTreeSet<u64> = BTreeSet::new();
    for d in required_divisors(ring) {
        let reps = crate::residue::find_coset_reps(ring, d, r)?;
        let mut found = Vec::with_capacity(d as usize);
        for (coset, rep) in reps.into_iter().enumerate() {
            match rep {
                CosetRep::Found(f) => found.push(f),
                CosetRep::NotFound => {
                    return Err(ApparatusError::MissingRepresentative { d, coset: coset as u64 })
                }
            }
        }
        for rep in &found {
            let fac = polyring::factor(field, rep).expect("nonzero representative");
            for (irr, _) in &fac.factors {
                for c in field.elements().skip(1) {
                    let unit_multiple = polyring::scale(field, irr, c);
                    excluded.insert(
                        polyring::poly_index_u64(field, &unit_multiple).expect("degree < r"),
                    );
                }
            }
        }
        coset_reps.insert(d, found);
    }
    // the paper-side cap on the excluded set
    assert!(
        (excluded.len() as u64) < (q - 1) * (r as u64).pow(3),
        "excluded-set bound violated"
    );
    let table = ring.dlog_table();
    let mut member_dlogs = Vec::new();
    for k in 1..r {
        for m in polyring::enumerate_irreducible_monic(field, k) {
            for c in field.elements().skip(1) {
                let u = polyring::scale(field, &m, c);
                let idx = polyring::poly_index_u64(field, &u).expect("degree < r");
                if !excluded.contains(&idx) {
                    member_dlogs.push(table.log(idx));
                }
            }
        }
    }
    let total: u64 = (1..r as u64)
        .map(|k| polyring::count_irreducible(q, k).to_u64().expect("desk scale"))
        .sum();
    let remaining_count = total - excluded.len() as u64;
    assert_eq!(member_dlogs.len() as u64, remaining_count, "member enumeration disagrees with counts");
    Ok(ApparatusState {
        coset_reps,
        excluded,
        remaining_count,
        member_dlogs,
    })
}

/// `w(s)` for every nonzero residue `s`, indexed by discrete log: the number
/// of unordered pairs of distinct remaining irreducibles `{u, v}` with
/// `uv = s (mod F)`.
pub struct PairStats {
    pub w_by_dlog: Vec<u32>,
    pub total_pairs: u64,
    pub max_w: u32,
}

pub fn w_statistics(ring: &ResidueRing, state: &ApparatusState) -> Result<PairStats, ApparatusError> {
    w_statistics_with(ring, &state.member_dlogs)
}

/// Pair statistics over an explicit member list (also used for the
/// convention-sensitivity comparison).
pub fn w_statistics_with(ring: &ResidueRing, members: &[u64]) -> Result<PairStats, ApparatusError> {
    let k = members.len() as u64;
    if k > PAIR_GUARD {
        return Err(ApparatusError::PairGuardExceeded(k));
    }
    let m = ring.group_order();
    let shards: Vec<Vec<u32>> = (0..members.len())
        .into_par_iter()
        .fold(
            || vec![0u32; m as usize],
            |mut hist, i| {
                let di = members[i];
                for &dj in &members[i + 1..] {
                    let s = di + dj;
                    let s = if s >= m { s - m } else { s };
                    hist[s as usize] += 1;
                }
                hist
            },
        )
        .collect::<Vec<_>>();
    let mut w = vec![0u32; m as usize];
    for shard in shards {
        for (acc, v) in w.iter_mut().zip(shard) {
            *acc += v;
        }
    }
    let total_pairs: u64 = w.iter().map(|&v| v as u64).sum();
    debug_assert_eq!(total_pairs, k * k.saturating_sub(1) / 2);
    let max_w = w.iter().copied().max().unwrap_or(0);
    Ok(PairStats { w_by_dlog: w, total_pairs, max_w })
}

/// The dense-product set: residues whose pair count clears the threshold
/// `K * q^(-r/2 + 11/20)`, membership decided exactly in integers by
/// comparing `w^20 q^(10 r)` with `K^20 q^11`.
pub struct DenseSet {
    pub members: CyclicBitSet,
    pub size: u64,
    /// Smallest integer `w` that clears the threshold.
    pub min_clearing_w: u64,
}

pub fn build_dense_set(ring: &ResidueRing, stats: &PairStats, remaining_count: u64) -> DenseSet {
    let q = ring.q();
    let r = ring.degree() as u64;
    let rhs = BigUint::from(remaining_count).pow(20) * arith::big_pow(q, 11);
    let q_pow = arith::big_pow(q, 10 * r);
    let clears = |w: u64| BigUint::from(w).pow(20) * &q_pow > rhs;
    // binary search the integer threshold once, then test by comparison
    let mut lo = 0u64; // never clears (w = 0)
    let mut hi = remaining_count.max(1); // w <= K/2 < K always; K clears unless K = 0
    if !clears(hi) {
        hi = u64::MAX; // degenerate tiny rings; keep the invariant clears(hi)
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if clears(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let min_clearing_w = hi;
    let m = ring.group_order();
    let mut members = CyclicBitSet::new(m);
    let mut size = 0u64;
    for (s, &w) in stats.w_by_dlog.iter().enumerate() {
        if w as u64 >= min_clearing_w {
            members.set(s as u64);
            size += 1;
        }
    }
    DenseSet { members, size, min_clearing_w }
}

/// Exact check of the density claim `A > (q^r - 1)/r + 2`, in integers:
/// `A r > q^r - 1 + 2 r`.
pub fn dense_set_bound_holds(ring: &ResidueRing, dense: &DenseSet) -> bool {
    let r = ring.degree() as u64;
    dense.size * r > ring.group_order() + 2 * r
}

/// `k`-fold product sets of the dense set, in dlog space: `S_{k+1} =
/// union over a in A of rot(S_k, dlog a)`.
pub fn kfold_closure(
    ring: &ResidueRing,
    dense: &DenseSet,
    k: u32,
) -> Result<CyclicBitSet, ApparatusError> {
    if ring.size() > CLOSURE_GUARD {
        return Err(ApparatusError::ClosureGuardExceeded(ring.size()));
    }
    let mut cur = dense.members.clone();
    let shifts: Vec<u64> = dense.members.iter_ones().collect();
    for _ in 1..k {
        let prev = cur.clone();
        let mut next = CyclicBitSet::new(ring.group_order());
        for &a in &shifts {
            next.or_rotated(prev.words(), a);
        }
        cur = next;
    }
    Ok(cur)
}

/// The subgroup of index `d` as a dlog bitset (multiples of `d`).
pub fn subgroup_bits(ring: &ResidueRing, d: u64) -> CyclicBitSet {
    let m = ring.group_order();
    let mut bits = CyclicBitSet::new(m);
    let mut k = 0u64;
    while k < m {
        bits.set(k);
        k += d;
    }
    bits
}

/// For each required divisor, the smallest `k <= k_max` with `H_d` contained
/// in the `k`-fold product set (`None` if none).
pub fn closure_coverage(
    ring: &ResidueRing,
    dense: &DenseSet,
    k_max: u32,
) -> Result<Vec<(u64, Option<u32>)>, ApparatusError> {
    if ring.size() > CLOSURE_GUARD {
        return Err(ApparatusError::ClosureGuardExceeded(ring.size()));
    }
    let divisors = required_divisors(ring);
    let mut remaining: BTreeMap<u64, CyclicBitSet> =
        divisors.iter().map(|&d| (d, subgroup_bits(ring, d))).collect();
    let mut out: BTreeMap<u64, Option<u32>> = divisors.iter().map(|&d| (d, None)).collect();
    let shifts: Vec<u64> = dense.members.iter_ones().collect();
    let mut cur = dense.members.clone();
    for k in 1..=k_max {
        if k > 1 {
            let prev = cur.clone();
            let mut next = CyclicBitSet::new(ring.group_order());
            for &a in &shifts {
                next.or_rotated(prev.words(), a);
            }
            cur = next;
        }
        for (&d, sub) in &remaining {
            if out[&d].is_none() && sub.is_subset_of(&cur) {
                out.insert(d, Some(k));
            }
        }
        if out.values().all(Option::is_some) {
            break;
        }
    }
    Ok(divisors.into_iter().map(|d| (d, out[&d])).collect())
}

// ---- End-to-end report ----

#[derive(Clone, Debug, Serialize)]
pub struct PerDivisorReport {
    pub d: u64,
    pub coset_reps_found: u64,
    pub closure_k: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ApparatusReport {
    pub q: u64,
    pub r: u32,
    #[serde(rename = "F")]
    pub modulus: String,
    #[serde(rename = "S_F_size")]
    pub excluded_size: u64,
    #[serde(rename = "K")]
    pub remaining_count: u64,
    #[serde(rename = "A")]
    pub dense_size: u64,
    #[serde(rename = "A_bound_ok")]
    pub dense_bound_ok: bool,
    pub sum_w: u64,
    pub max_w: u32,
    pub per_d: Vec<PerDivisorReport>,
}

/// Runs the whole pipeline for one ring; closure coverage is searched up to
/// `k <= 2r + 1`.
pub fn apparatus_report(ring: &ResidueRing) -> Result<ApparatusReport, ApparatusError> {
    let state = build_apparatus(ring)?;
    let stats = w_statistics(ring, &state)?;
    let dense = build_dense_set(ring, &stats, state.remaining_count);
    let k_max = 2 * ring.degree() as u32 + 1;
    let coverage = if ring.size() <= CLOSURE_GUARD {
        closure_coverage(ring, &dense, k_max)?
    } else {
        required_divisors(ring).into_iter().map(|d| (d, None)).collect()
    };
    let per_d = coverage
        .into_iter()
        .map(|(d, closure_k)| PerDivisorReport {
            d,
            coset_reps_found: state.coset_reps[&d].len() as u64,
            closure_k,
        })
        .collect();
    Ok(ApparatusReport {
        q: ring.q(),
        r: ring.degree() as u32,
        modulus: polyring::to_text(ring.field(), ring.modulus()),
        excluded_size: state.excluded.len() as u64,
        remaining_count: state.remaining_count,
        dense_size: dense.size,
        dense_bound_ok: dense_set_bound_holds(ring, &dense),
        sum_w: stats.total_pairs,
        max_w: stats.max_w,
        per_d,
    })
}

/// Pair statistics under the two pair conventions on one ring: distinct
/// polynomials (the adopted reading) versus pairs that additionally exclude
/// unit multiples of one another.
#[derive(Clone, Debug, Serialize)]
pub struct ConventionSensitivity {
    pub distinct_polynomials_pairs: u64,
    pub distinct_polynomials_max_w: u32,
    pub non_associate_pairs: u64,
    pub non_associate_max_w: u32,
}

pub fn convention_sensitivity(
    ring: &ResidueRing,
    state: &ApparatusState,
) -> Result<ConventionSensitivity, ApparatusError> {
    let adopted = w_statistics(ring, state)?;
    // Exclude associate pairs: u and c*u multiply to c*u^2, still counted by
    // the adopted convention. Recompute by brute force over pairs.
    let k = state.member_dlogs.len() as u64;
    if k > 4000 {
        return Err(ApparatusError::PairGuardExceeded(k));
    }
    let m = ring.group_order();
    let units = ring.q() - 1;
    let stride = m / units;
    let mut w = vec![0u32; m as usize];
    for (i, &di) in state.member_dlogs.iter().enumerate() {
        for &dj in &state.member_dlogs[i + 1..] {
            // associates iff the dlogs differ by a unit dlog (multiple of stride)
            if (di + m - dj) % m % stride == 0 {
                continue;
            }
            let s = (di + dj) % m;
            w[s as usize] += 1;
        }
    }
    Ok(ConventionSensitivity {
        distinct_polynomials_pairs: adopted.total_pairs,
        distinct_polynomials_max_w: adopted.max_w,
        non_associate_pairs: w.iter().map(|&v| v as u64).sum(),
        non_associate_max_w: w.iter().copied().max().unwrap_or(0),
    })
}
