//! The residue-class verifier: does every nonzero class modulo an
//! irreducible `F` of degree `r` have a non-constant, square-free,
//! `(r-1)`-smooth representative?
//!
//! Two independent algorithms answer the question and cross-check each other:
//!
//! - **Scan** walks the candidates `f`, `c f`, then `f + gF` in strictly
//!   increasing degree until one passes the three predicates, so the first
//!   hit has minimal degree. Candidates are capped at the degree of the
//!   product of all monic irreducibles of degree `< r`: any suitable
//!   representative is an associate of a divisor of that product, so running
//!   past the cap proves nonexistence.
//! - **Reachability** works in the multiplicative group: a class succeeds
//!   iff some unit multiple of it is a nonempty product of distinct monic
//!   irreducibles of degree `< r`. In discrete-log coordinates multiplying
//!   the reachable set by a fixed irreducible is a cyclic rotation of a
//!   bitset, so one pass over the irreducibles closes the set.
//!
//! Suitability is equivalent to dividing the product of all monic
//! irreducibles of degree `< r` (square-free and `(r-1)`-smooth means
//! distinct irreducible factors, all of degree `< r`), which is the form the
//! brute-force sweeps use.

use crate::bitring::CyclicBitSet;
use crate::gf::FieldSpec;
use crate::polyring::{self, Poly};
use crate::residue::{Residue, ResidueRing, RingError};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

/// Reachability needs the full dlog table; this bounds `q^r`.
pub const REACHABILITY_GUARD: u64 = 1 << 24;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("class representative must be monic, nonzero, of degree < r")]
    BadClass,
    #[error("the verifier needs modulus degree r >= 2")]
    DegreeTooSmall,
    #[error("ring size {0} exceeds the reachability guard 2^24")]
    GuardExceeded(u64),
    #[error("scan and reachability disagree on class {0}")]
    AlgorithmMismatch(String),
    #[error("independent re-validation rejected representative {rep} for class {class}")]
    CheckerRejected { class: String, rep: String },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Scan,
    #[serde(rename = "reach")]
    Reachability,
    Both,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::Scan => write!(f, "scan"),
            Algorithm::Reachability => write!(f, "reach"),
            Algorithm::Both => write!(f, "both"),
        }
    }
}

// ---- Candidate scan ----

/// Result of scanning one residue class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanOutcome {
    /// Minimal-degree suitable representative.
    Found { representative: Poly, degree: usize },
    /// No representative exists: the cap argument makes this a proof.
    NotFound,
    /// A user-supplied ceiling below the cap was exhausted first.
    GuardExceeded { ceiling: u64 },
}

/// Degree of the product of all monic irreducibles of degree `< r`; a
/// suitable representative divides that product (up to units), so no
/// candidate beyond this degree needs checking.
pub fn scan_cap(ring: &ResidueRing) -> u64 {
    let q = ring.q();
    (1..ring.degree() as u64)
        .map(|k| {
            k * polyring::count_monic_irreducible(q, k)
                .to_u64()
                .unwrap_or(u64::MAX / 64)
        })
        .sum()
}

fn is_suitable(field: &FieldSpec, cand: &Poly, smooth_bound: usize) -> bool {
    !cand.is_constant()
        && polyring::is_squarefree(field, cand).unwrap_or(false)
        && polyring::is_smooth(field, cand, smooth_bound).unwrap_or(false)
}

/// All polynomials of exact degree `d` in index order (every leading
/// coefficient), via a digit odometer so huge degrees cannot overflow.
fn polys_of_degree(field: &FieldSpec, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.q() as u32;
    let mut digits = vec![0u32; d + 1];
    digits[d] = 1;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = Poly::from_indices(&digits);
        // increment, least significant digit first
        for (i, digit) in digits.iter_mut().enumerate() {
            *digit += 1;
            let limit = q;
            if *digit < limit {
                break;
            }
            if i == d {
                done = true;
                break;
            }
            *digit = 0;
        }
        Some(out)
    })
}

/// Scans candidates for the class of monic `f` (degree `< r`) in strictly
/// increasing degree: `f` and its unit multiples first, then `f + gF` with
/// `deg g = D - r` for each degree `D >= r`, `g` in index order. The first
/// hit is a minimal-degree suitable representative.
pub fn suitable_rep_scan(
    ring: &ResidueRing,
    class: &Poly,
    ceiling: Option<u64>,
) -> Result<ScanOutcome, VerifyError> {
    let r = ring.degree();
    if r < 2 {
        return Err(VerifyError::DegreeTooSmall);
    }
    if class.is_zero() || !class.is_monic() || class.degree().unwrap() >= r {
        return Err(VerifyError::BadClass);
    }
    let field = ring.field();
    let smooth_bound = r - 1;
    // degree < r: only unit multiples of the class itself
    for c in field.elements().skip(1) {
        let cand = polyring::scale(field, class, c);
        if is_suitable(field, &cand, smooth_bound) {
            let degree = cand.degree().unwrap();
            return Ok(ScanOutcome::Found { representative: cand, degree });
        }
    }
    let cap = scan_cap(ring);
    let limit = ceiling.unwrap_or(cap).min(cap);
    let mut degree = r as u64;
    while degree <= limit {
        for g in polys_of_degree(field, (degree - r as u64) as usize) {
            let cand = polyring::add(field, class, &polyring::mul(field, &g, ring.modulus()));
            debug_assert_eq!(cand.degree().unwrap() as u64, degree);
            if is_suitable(field, &cand, smooth_bound) {
                return Ok(ScanOutcome::Found {
                    representative: cand,
                    degree: degree as usize,
                });
            }
        }
        degree += 1;
    }
    if limit == cap {
        Ok(ScanOutcome::NotFound)
    } else {
        Ok(ScanOutcome::GuardExceeded { ceiling: limit })
    }
}

// ---- Reachability ----

/// Cyclic bitset over `[0, q^r - 1)` in discrete-log coordinates: bit `k`
/// marks `g^k` as a nonempty product of distinct processed irreducibles.
pub struct ReachabilitySet {
    bits: CyclicBitSet,
}

impl ReachabilitySet {
    #[inline]
    pub fn contains_dlog(&self, k: u64) -> bool {
        self.bits.contains(k)
    }

    pub fn count(&self) -> u64 {
        self.bits.count()
    }
}

/// All monic irreducibles of degree `< r`, in index order. Sweeps compute
/// this once per `(q, r)` pair and share it across moduli.
pub fn irreducibles_below(field: &FieldSpec, r: usize) -> Vec<Poly> {
    (1..r)
        .flat_map(|k| polyring::enumerate_irreducible_monic(field, k))
        .collect()
}

/// Closes the set of residues expressible as nonempty products of distinct
/// monic irreducibles of degree `< r`. Each irreducible is folded in against
/// a frozen snapshot (`R | rot(R, dlog u) | {dlog u}`), so it is used at
/// most once per product.
pub fn reachability_set(ring: &ResidueRing) -> Result<ReachabilitySet, VerifyError> {
    reachability_set_with(ring, &irreducibles_below(ring.field(), ring.degree()))
}

/// [`reachability_set`] with a precomputed irreducibles list.
pub fn reachability_set_with(
    ring: &ResidueRing,
    irreducibles: &[Poly],
) -> Result<ReachabilitySet, VerifyError> {
    if ring.size() > REACHABILITY_GUARD {
        return Err(VerifyError::GuardExceeded(ring.size()));
    }
    let table = ring.dlog_table();
    let m = ring.group_order();
    let mut bits = CyclicBitSet::new(m);
    let mut snapshot = vec![0u64; bits.words().len()];
    for u in irreducibles {
        debug_assert!(u.degree().unwrap() < ring.degree());
        let delta = table.log(ring.reduce(u).0);
        snapshot.copy_from_slice(bits.words());
        bits.or_rotated(&snapshot, delta);
        bits.set(delta);
    }
    Ok(ReachabilitySet { bits })
}

/// Monic class representatives (as residue indices) in index order: all
/// monic polynomials of degree `0 <= t < r`.
pub fn monic_class_indices(ring: &ResidueRing) -> Vec<u64> {
    let q = ring.q();
    let mut out = Vec::new();
    for t in 0..ring.degree() as u32 {
        let base = q.pow(t);
        out.extend(base..2 * base);
    }
    out
}

/// Whether some unit multiple of the class lies in the reachable set.
pub fn class_reachable(ring: &ResidueRing, set: &ReachabilitySet, class_idx: u64) -> bool {
    let table = ring.dlog_table();
    let m = ring.group_order();
    let units = ring.q() - 1;
    let stride = m / units;
    let base = table.log(class_idx);
    (0..units).any(|j| set.contains_dlog((base + j * stride) % m))
}

/// Reachability with witness recovery for small rings: per reached residue,
/// remembers one `(irreducible, previous)` step so an explicit product can
/// be reconstructed.
pub fn reachability_witness(ring: &ResidueRing, class_idx: u64) -> Option<Poly> {
    assert!(ring.size() <= 1 << 16, "witness recovery is for small rings");
    let field = ring.field();
    let irreds: Vec<Poly> = (1..ring.degree())
        .flat_map(|k| polyring::enumerate_irreducible_monic(field, k))
        .collect();
    let size = ring.size() as usize;
    let mut prev: Vec<Option<(u32, u64)>> = vec![None; size];
    let mut reached: Vec<u64> = Vec::new();
    for (ui, u) in irreds.iter().enumerate() {
        let u_res = ring.reduce(u);
        let frozen = reached.len();
        for i in 0..frozen {
            let s = reached[i];
            let t = ring.mul(u_res, Residue(s)).0;
            if prev[t as usize].is_none() {
                prev[t as usize] = Some((ui as u32, s));
                reached.push(t);
            }
        }
        if prev[u_res.0 as usize].is_none() {
            prev[u_res.0 as usize] = Some((ui as u32, 0));
            reached.push(u_res.0);
        }
    }
    // some unit multiple of the class must be reached
    for c in field.elements().skip(1) {
        let target = ring.mul(Residue(class_idx), ring.embed(c)).0;
        if prev[target as usize].is_none() {
            continue;
        }
        let mut product = Poly::one();
        let mut cur = target;
        while cur != 0 {
            let (ui, before) = prev[cur as usize].expect("chain is well-founded");
            product = polyring::mul(field, &product, &irreds[ui as usize]);
            cur = before;
        }
        let c_inv = field.inv(c).expect("unit");
        return Some(polyring::scale(field, &product, c_inv));
    }
    None
}

// ---- Whole-ring verification ----

/// Per-class outcome; representatives are populated by the scan (or witness
/// recovery) and re-validated independently before reporting.
#[derive(Clone, Debug)]
pub struct ClassOutcome {
    pub class_index: u64,
    pub exists: bool,
    pub representative: Option<Poly>,
    pub min_degree: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub field: String,
    pub q: u64,
    pub r: u32,
    #[serde(rename = "F")]
    pub modulus: String,
    pub algo: Algorithm,
    pub classes_checked: u64,
    pub failures: Vec<String>,
    /// Max over classes of the minimal representative degree; present only
    /// when the scan ran and every class succeeded.
    #[serde(rename = "M")]
    pub max_min_rep_degree: Option<u64>,
    pub elapsed_ms: u128,
    #[serde(skip)]
    pub per_class: Vec<ClassOutcome>,
}

/// Independent re-validation of a reported representative: factorization
/// route (not the scan's gcd/peeling predicates) plus the congruence check.
pub fn check_representative(
    ring: &ResidueRing,
    class: &Poly,
    rep: &Poly,
) -> Result<(), VerifyError> {
    let field = ring.field();
    let reject = || VerifyError::CheckerRejected {
        class: polyring::to_text(field, class),
        rep: polyring::to_text(field, rep),
    };
    if rep.is_constant() {
        return Err(reject());
    }
    let fac = polyring::factor(field, rep).map_err(|_| reject())?;
    if !fac.is_squarefree() || fac.max_factor_degree() > ring.degree() - 1 {
        return Err(reject());
    }
    let diff = polyring::sub(field, rep, class);
    let rem = polyring::rem(field, &diff, ring.modulus()).expect("nonzero modulus");
    if !rem.is_zero() {
        return Err(reject());
    }
    Ok(())
}

/// Verifies every monic nonzero class of the ring.
///
/// With [`Algorithm::Both`], the scan and reachability existence verdicts
/// must agree class by class; a mismatch is an error, not a report entry.
pub fn verify_theorem(
    ring: &ResidueRing,
    algorithm: Algorithm,
) -> Result<VerificationReport, VerifyError> {
    let irreducibles = match algorithm {
        Algorithm::Scan => Vec::new(),
        _ => irreducibles_below(ring.field(), ring.degree()),
    };
    verify_theorem_with(ring, algorithm, &irreducibles)
}

/// [`verify_theorem`] with a precomputed irreducibles list (ignored by the
/// pure scan algorithm).
pub fn verify_theorem_with(
    ring: &ResidueRing,
    algorithm: Algorithm,
    irreducibles: &[Poly],
) -> Result<VerificationReport, VerifyError> {
    let start = std::time::Instant::now();
    if ring.degree() < 2 {
        return Err(VerifyError::DegreeTooSmall);
    }
    let field = ring.field();
    let classes = monic_class_indices(ring);
    let reach = match algorithm {
        Algorithm::Scan => None,
        Algorithm::Reachability | Algorithm::Both => {
            Some(reachability_set_with(ring, irreducibles)?)
        }
    };
    let mut per_class = Vec::with_capacity(classes.len());
    for &idx in &classes {
        let class_poly = ring.to_poly(Residue(idx));
        let outcome = match algorithm {
            Algorithm::Reachability => {
                let exists = class_reachable(ring, reach.as_ref().unwrap(), idx);
                ClassOutcome { class_index: idx, exists, representative: None, min_degree: None }
            }
            Algorithm::Scan | Algorithm::Both => {
                let scan = suitable_rep_scan(ring, &class_poly, None)?;
                let (exists, representative, min_degree) = match scan {
                    ScanOutcome::Found { representative, degree } => {
                        check_representative(ring, &class_poly, &representative)?;
                        (true, Some(representative), Some(degree as u64))
                    }
                    ScanOutcome::NotFound => (false, None, None),
                    ScanOutcome::GuardExceeded { .. } => {
                        unreachable!("no ceiling was supplied")
                    }
                };
                if algorithm == Algorithm::Both {
                    let reach_exists = class_reachable(ring, reach.as_ref().unwrap(), idx);
                    if reach_exists != exists {
                        return Err(VerifyError::AlgorithmMismatch(polyring::to_text(
                            field,
                            &class_poly,
                        )));
                    }
                }
                ClassOutcome { class_index: idx, exists, representative, min_degree }
            }
        };
        per_class.push(outcome);
    }
    let failures: Vec<String> = per_class
        .iter()
        .filter(|c| !c.exists)
        .map(|c| polyring::to_text(field, &ring.to_poly(Residue(c.class_index))))
        .collect();
    let max_min_rep_degree = if failures.is_empty() && algorithm != Algorithm::Reachability {
        per_class.iter().map(|c| c.min_degree).max().flatten()
    } else {
        None
    };
    Ok(VerificationReport {
        field: field.describe(),
        q: ring.q(),
        r: ring.degree() as u32,
        modulus: polyring::to_text(field, ring.modulus()),
        algo: algorithm,
        classes_checked: classes.len() as u64,
        failures,
        max_min_rep_degree,
        elapsed_ms: start.elapsed().as_millis(),
        per_class,
    })
}

// ---- Sweeps ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepPreset {
    Omega1,
    Q5R5,
}

/// The `(q, r)` pairs of a preset sweep.
pub fn preset_pairs(preset: SweepPreset) -> Vec<(u64, u32)> {
    match preset {
        SweepPreset::Omega1 => crate::bounds::omega1_roster(),
        SweepPreset::Q5R5 => {
            let mut out = Vec::new();
            for q in [2u64, 3, 4, 5] {
                for r in 2..=5 {
                    out.push((q, r));
                }
            }
            out
        }
    }
}

/// Per-ring sweep record; deliberately timing-free so resumed sweeps
/// reproduce byte-identical payloads.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RingOutcome {
    pub q: u64,
    pub r: u32,
    #[serde(rename = "F")]
    pub modulus: String,
    pub classes_checked: u64,
    pub failures: Vec<String>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none", default)]
    pub max_min_rep_degree: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SweepFailure {
    pub q: u64,
    pub r: u32,
    #[serde(rename = "F")]
    pub modulus: String,
    pub class: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub algo: Algorithm,
    pub pairs: Vec<(u64, u32)>,
    pub rings_checked: u64,
    pub classes_checked: u64,
    /// Every `(modulus, class)` with no suitable representative.
    pub failures: Vec<SweepFailure>,
    /// Max over rings of the per-ring minimal-degree maximum, per pair
    /// (scan algorithms only).
    pub max_m_per_pair: Vec<((u64, u32), Option<u64>)>,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

pub struct SweepOptions {
    pub algorithm: Algorithm,
    pub cache_dir: Option<PathBuf>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { algorithm: Algorithm::Reachability, cache_dir: None }
    }
}

fn cache_path(dir: &Path, q: u64, r: u32, algo: Algorithm) -> PathBuf {
    dir.join(format!("verify-q{q}-r{r}-{algo}.jsonl"))
}

/// Loads cached ring outcomes, tolerating a torn trailing line.
fn load_cache(path: &Path, warnings: &mut Vec<String>) -> Vec<RingOutcome> {
    let file = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(_) => return Vec::new(),
    };
    let mut out = Vec::new();
    for line in std::io::BufReader::new(file).lines() {
        let Ok(line) = line else { break };
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<RingOutcome>(&line) {
            Ok(rec) => out.push(rec),
            Err(_) => {
                warnings.push(format!("ignored corrupt cache line in {}", path.display()));
            }
        }
    }
    out
}

/// Runs the verifier over every monic irreducible modulus for each pair,
/// in parallel within a pair, resuming from the cache when one is given.
/// Cache I/O failures degrade to warnings; the mathematics always completes.
pub fn sweep(pairs: &[(u64, u32)], options: &SweepOptions) -> Result<SweepReport, VerifyError> {
    let mut rings: Vec<RingOutcome> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();
    for &(q, r) in pairs {
        let field = Arc::new(FieldSpec::new_prime_power(q).expect("preset pairs are prime powers"));
        let moduli = polyring::enumerate_irreducible_monic(&field, r as usize);
        let irreducibles = match options.algorithm {
            Algorithm::Scan => Vec::new(),
            _ => irreducibles_below(&field, r as usize),
        };
        let mut cached: std::collections::HashMap<String, RingOutcome> = Default::default();
        let cache_file = options.cache_dir.as_ref().map(|d| cache_path(d, q, r, options.algorithm));
        if let Some(path) = &cache_file {
            for rec in load_cache(path, &mut warnings) {
                cached.insert(rec.modulus.clone(), rec);
            }
        }
        let writer = cache_file.as_ref().and_then(|path| {
            if let Some(dir) = path.parent() {
                let _ = std::fs::create_dir_all(dir);
            }
            match std::fs::OpenOptions::new().create(true).append(true).open(path) {
                Ok(f) => Some(Mutex::new(f)),
                Err(e) => {
                    warnings.push(format!("cache disabled for ({q},{r}): {e}"));
                    None
                }
            }
        });
        let results: Vec<RingOutcome> = moduli
            .par_iter()
            .map(|modulus| {
                let text = polyring::to_text(&field, modulus);
                if let Some(hit) = cached.get(&text) {
                    return Ok(hit.clone());
                }
                let ring = ResidueRing::new(Arc::clone(&field), modulus)?;
                let report = verify_theorem_with(&ring, options.algorithm, &irreducibles)?;
                let outcome = RingOutcome {
                    q,
                    r,
                    modulus: text,
                    classes_checked: report.classes_checked,
                    failures: report.failures,
                    max_min_rep_degree: report.max_min_rep_degree,
                };
                if let Some(w) = &writer {
                    if let Ok(mut f) = w.lock() {
                        let line = serde_json::to_string(&outcome).expect("serializable");
                        let _ = writeln!(f, "{line}");
                        let _ = f.flush();
                    }
                }
                Ok(outcome)
            })
            .collect::<Result<_, VerifyError>>()?;
        rings.extend(results);
    }
    let failures: Vec<SweepFailure> = rings
        .iter()
        .flat_map(|ring| {
            ring.failures.iter().map(|class| SweepFailure {
                q: ring.q,
                r: ring.r,
                modulus: ring.modulus.clone(),
                class: class.clone(),
            })
        })
        .collect();
    let max_m_per_pair: Vec<((u64, u32), Option<u64>)> = pairs
        .iter()
        .map(|&(q, r)| {
            let m = rings
                .iter()
                .filter(|ring| ring.q == q && ring.r == r)
                .map(|ring| ring.max_min_rep_degree)
                .max()
                .flatten();
            ((q, r), m)
        })
        .collect();
    Ok(SweepReport {
        algo: options.algorithm,
        pairs: pairs.to_vec(),
        rings_checked: rings.len() as u64,
        classes_checked: rings.iter().map(|r| r.classes_checked).sum(),
        failures,
        max_m_per_pair,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u64, modulus: &str) -> ResidueRing {
        let field = Arc::new(FieldSpec::new_prime_power(q).unwrap());
        let m = polyring::parse(&field, modulus).unwrap();
        ResidueRing::new(field, &m).unwrap()
    }

    #[test]
    fn failing_classes_of_the_two_cubics() {
        // Over F_2, class 1 has no suitable representative modulo either
        // irreducible cubic; every other class succeeds.
        for modulus in ["X^3+X+1", "X^3+X^2+1"] {
            let ring = ring(2, modulus);
            let report = verify_theorem(&ring, Algorithm::Both).unwrap();
            assert_eq!(report.failures, vec!["1".to_string()]);
            assert_eq!(report.classes_checked, 7);
            assert_eq!(report.max_min_rep_degree, None);
            let one = Poly::one();
            assert_eq!(suitable_rep_scan(&ring, &one, None).unwrap(), ScanOutcome::NotFound);
        }
    }

    #[test]
    fn degree_two_ring_over_f2_all_pass() {
        let ring = ring(2, "X^2+X+1");
        let report = verify_theorem(&ring, Algorithm::Both).unwrap();
        assert!(report.failures.is_empty());
        assert_eq!(report.classes_checked, 3);
        // X is its own representative
        let scan = suitable_rep_scan(&ring, &Poly::x(), None).unwrap();
        assert_eq!(
            scan,
            ScanOutcome::Found { representative: Poly::x(), degree: 1 }
        );
    }

    #[test]
    fn omega1_spot_check_passes() {
        // (7, 2) was machine-verified to have no failures.
        let field = Arc::new(FieldSpec::new_prime_power(7).unwrap());
        for modulus in polyring::enumerate_irreducible_monic(&field, 2).iter().take(3) {
            let ring = ResidueRing::new(Arc::clone(&field), modulus).unwrap();
            let report = verify_theorem(&ring, Algorithm::Both).unwrap();
            assert!(report.failures.is_empty(), "mod {}", report.modulus);
            assert!(report.max_min_rep_degree.is_some());
        }
    }

    #[test]
    fn scan_guard_is_distinguished_from_notfound() {
        let ring = ring(2, "X^3+X+1");
        // ceiling below the cap (4): the scan cannot conclude nonexistence
        let out = suitable_rep_scan(&ring, &Poly::one(), Some(3)).unwrap();
        assert_eq!(out, ScanOutcome::GuardExceeded { ceiling: 3 });
    }

    #[test]
    fn reachability_set_never_contains_zero_products() {
        // R is built from units only; every member is a nonzero residue, and
        // class 0 is never enumerated.
        let ring = ring(3, "X^2+1");
        let set = reachability_set(&ring).unwrap();
        assert!(set.count() > 0);
        assert!(set.count() <= ring.group_order());
    }

    #[test]
    fn witnesses_validate() {
        let ring = ring(5, "X^2+2");
        assert!(polyring::is_irreducible(ring.field(), ring.modulus()).unwrap());
        for &idx in &monic_class_indices(&ring) {
            let class = ring.to_poly(Residue(idx));
            if let Some(w) = reachability_witness(&ring, idx) {
                check_representative(&ring, &class, &w).unwrap();
            }
        }
    }

    #[test]
    fn scan_matches_reachability_small_rings() {
        for (q, modulus) in [
            (2u64, "X^4+X+1"),
            (3, "X^3+2*X+1"),
            (4, "X^2+X+[0,1]"),
            (5, "X^2+2"),
            (7, "X^2+1"),
        ] {
            let ring = ring(q, modulus);
            verify_theorem(&ring, Algorithm::Both).unwrap();
        }
    }

    #[test]
    fn unit_invariance_of_existence() {
        // Existence is constant on unit orbits: check directly on the
        // reachability set for a small ring.
        let ring = ring(3, "X^2+1");
        let set = reachability_set(&ring).unwrap();
        for idx in 1..ring.size() {
            let here = class_reachable(&ring, &set, idx);
            for c in ring.field().elements().skip(1) {
                let scaled = ring.mul(Residue(idx), ring.embed(c)).0;
                assert_eq!(here, class_reachable(&ring, &set, scaled));
            }
        }
    }

    #[test]
    fn scan_minimality_against_exhaustive_enumeration() {
        // Enumerate all polynomials in index order up to the found degree;
        // the first suitable member of the class must match the scan's
        // reported minimal degree.
        for (q, modulus) in [(2u64, "X^3+X+1"), (3, "X^2+1"), (2, "X^4+X+1"), (5, "X^2+2")] {
            let ring = ring(q, modulus);
            let field = ring.field();
            let report = verify_theorem(&ring, Algorithm::Scan).unwrap();
            let mut best: std::collections::HashMap<u64, u64> = Default::default();
            let max_deg = report.per_class.iter().filter_map(|c| c.min_degree).max().unwrap();
            let mut budget = 1u64;
            for _ in 0..=max_deg {
                budget = budget.saturating_mul(q);
            }
            for idx in 1..budget {
                let f = polyring::index_to_poly_u64(field, idx);
                if !is_suitable(field, &f, ring.degree() - 1) {
                    continue;
                }
                // normalize the orbit to its monic member: scale the residue
                // by the inverse of its own leading coefficient
                let res = ring.reduce(&f);
                let lead = ring.to_poly(res).leading_coeff();
                let inv = field.inv(lead).unwrap();
                let monic_class = ring.mul(res, ring.embed(inv)).0;
                best.entry(monic_class).or_insert(f.degree().unwrap() as u64);
            }
            for c in &report.per_class {
                // the monic class of residue idx: idx itself is monic
                assert_eq!(
                    best.get(&c.class_index).copied(),
                    c.min_degree,
                    "q={q} F={modulus} class={}",
                    c.class_index
                );
            }
        }
    }

    #[test]
    fn q5r5_preset_failure_set() {
        let report = sweep(&preset_pairs(SweepPreset::Q5R5), &SweepOptions::default()).unwrap();
        assert_eq!(report.failures.len(), 2);
        let mut got: Vec<(u64, String, String)> = report
            .failures
            .iter()
            .map(|f| (f.q, f.modulus.clone(), f.class.clone()))
            .collect();
        got.sort();
        assert_eq!(
            got,
            vec![
                (2, "X^3+X+1".to_string(), "1".to_string()),
                (2, "X^3+X^2+1".to_string(), "1".to_string()),
            ]
        );
    }

    #[test]
    fn sweep_cache_resume_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let opts = |cache: Option<PathBuf>| SweepOptions {
            algorithm: Algorithm::Reachability,
            cache_dir: cache,
        };
        let pairs = [(3u64, 2u32), (3, 3)];
        let full = sweep(&pairs, &opts(None)).unwrap();
        // run only the first pair with the cache, then the full set resuming
        sweep(&pairs[..1], &opts(Some(dir.path().to_path_buf()))).unwrap();
        let resumed = sweep(&pairs, &opts(Some(dir.path().to_path_buf()))).unwrap();
        assert_eq!(
            serde_json::to_string(&full.failures).unwrap(),
            serde_json::to_string(&resumed.failures).unwrap()
        );
        assert_eq!(full.rings_checked, resumed.rings_checked);
        let a = serde_json::to_value(&full).unwrap();
        let b = serde_json::to_value(&resumed).unwrap();
        assert_eq!(a, b);
    }
}
