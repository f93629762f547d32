//! The quotient field `F_q[X]/F` for irreducible `F` of degree `r`.
//!
//! Residues are the canonical representatives of degree `< r`, identified by
//! their polynomial index in `[0, q^r)`; index arithmetic keeps the hot loops
//! (discrete-log tables, character sweeps, reachability) allocation-free.
//! The multiplicative group is cyclic of order `q^r - 1`; a dlog table over a
//! certified generator backs characters, subgroup membership, and coset
//! searches. Character values are tracked as exponents modulo the character
//! order and only materialized as complex numbers when sums are reported.

use crate::arith;
use crate::exact::QPowSum;
use crate::gf::{FFElement, FieldSpec};
use crate::polyring::{self, Poly};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

/// Residue rings keep full dlog tables up to this group size.
const DLOG_TABLE_LIMIT: u64 = 1 << 24;
/// Degrees are capped so coefficient buffers can live on the stack.
const MAX_DEGREE: usize = 31;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RingError {
    #[error("modulus must be non-constant")]
    ConstantModulus,
    #[error("modulus is reducible; the quotient is not a field")]
    ReducibleModulus,
    #[error("ring size q^r exceeds the supported range")]
    TooLarge,
    #[error("cannot invert a multiple of the modulus")]
    ZeroInverse,
    #[error("{0} does not divide the group order")]
    NotADivisor(u64),
    #[error("the quadratic character needs odd q")]
    EvenCharacteristic,
    #[error("operation undefined for the zero residue")]
    ZeroResidue,
}

/// A residue, identified by the index of its canonical degree-`< r`
/// representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue(pub u64);

impl Residue {
    pub const ZERO: Residue = Residue(0);
    pub const ONE: Residue = Residue(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// `F_q[X]/F` with `F` monic irreducible of degree `r`.
pub struct ResidueRing {
    field: Arc<FieldSpec>,
    modulus: Poly,
    modulus_coeffs: Vec<u32>,
    r: usize,
    size: u64,
    group_order: u64,
    group_order_factors: Vec<(u64, u32)>,
    /// True when a non-monic modulus was normalized at construction.
    normalized: bool,
    dlog: OnceLock<DlogTable>,
}

impl std::fmt::Debug for ResidueRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ResidueRing({}; F={})",
            self.field.describe(),
            polyring::to_text(&self.field, &self.modulus)
        )
    }
}

pub struct DlogTable {
    generator: Residue,
    /// log[residue index] = discrete log; zero maps to `u32::MAX`.
    log: Vec<u32>,
}

impl ResidueRing {
    pub fn new(field: Arc<FieldSpec>, modulus: &Poly) -> Result<ResidueRing, RingError> {
        if modulus.is_constant() {
            return Err(RingError::ConstantModulus);
        }
        let normalized = !modulus.is_monic();
        let modulus = polyring::make_monic(&field, modulus);
        if !polyring::is_irreducible(&field, &modulus).expect("non-constant modulus") {
            return Err(RingError::ReducibleModulus);
        }
        let r = modulus.degree().unwrap();
        if r > MAX_DEGREE {
            return Err(RingError::TooLarge);
        }
        let size = field
            .q()
            .checked_pow(r as u32)
            .filter(|&s| s <= (1u64 << 62))
            .ok_or(RingError::TooLarge)?;
        let mut modulus_coeffs = modulus.coeff_indices().to_vec();
        modulus_coeffs.resize(r + 1, 0);
        Ok(ResidueRing {
            group_order: size - 1,
            group_order_factors: arith::factorize(size - 1),
            field,
            modulus,
            modulus_coeffs,
            r,
            size,
            normalized,
            dlog: OnceLock::new(),
        })
    }

    /// Ring over the canonically-first monic irreducible of degree `r`.
    pub fn with_default_modulus(field: Arc<FieldSpec>, r: usize) -> Result<ResidueRing, RingError> {
        let modulus = polyring::enumerate_monic(&field, r)
            .find(|f| polyring::is_irreducible(&field, f).unwrap())
            .expect("irreducibles of every degree exist");
        ResidueRing::new(field, &modulus)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldSpec> {
        Arc::clone(&self.field)
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    /// `q^r`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// `q^r - 1`.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn group_order_factors(&self) -> &[(u64, u32)] {
        &self.group_order_factors
    }

    pub fn was_normalized(&self) -> bool {
        self.normalized
    }

    // ---- Conversions ----

    /// Canonical residue of an arbitrary polynomial.
    pub fn reduce(&self, f: &Poly) -> Residue {
        if f.degree().map_or(true, |d| d < self.r) {
            return Residue(polyring::poly_index_u64(&self.field, f).expect("fits by size guard"));
        }
        let rem = polyring::rem(&self.field, f, &self.modulus).expect("nonzero modulus");
        Residue(polyring::poly_index_u64(&self.field, &rem).expect("fits by size guard"))
    }

    pub fn to_poly(&self, a: Residue) -> Poly {
        debug_assert!(a.0 < self.size);
        polyring::index_to_poly_u64(&self.field, a.0)
    }

    #[inline]
    fn decode(&self, mut idx: u64, out: &mut [u32]) {
        let q = self.field.q();
        for slot in out.iter_mut().take(self.r) {
            *slot = (idx % q) as u32;
            idx /= q;
        }
    }

    #[inline]
    fn encode(&self, coeffs: &[u32]) -> u64 {
        let q = self.field.q();
        let mut acc = 0u64;
        for &c in coeffs[..self.r].iter().rev() {
            acc = acc * q + c as u64;
        }
        acc
    }

    // ---- Field arithmetic ----

    pub fn mul(&self, a: Residue, b: Residue) -> Residue {
        debug_assert!(a.0 < self.size && b.0 < self.size);
        if a.0 == 0 || b.0 == 0 {
            return Residue::ZERO;
        }
        if a.0 == 1 {
            return b;
        }
        if b.0 == 1 {
            return a;
        }
        let f = &*self.field;
        let r = self.r;
        let mut av = [0u32; MAX_DEGREE + 1];
        let mut bv = [0u32; MAX_DEGREE + 1];
        self.decode(a.0, &mut av);
        self.decode(b.0, &mut bv);
        let mut prod = [0u32; 2 * MAX_DEGREE + 1];
        for i in 0..r {
            let ac = av[i];
            if ac == 0 {
                continue;
            }
            for j in 0..r {
                let bc = bv[j];
                if bc != 0 {
                    prod[i + j] = f.addi(prod[i + j], f.muli(ac, bc));
                }
            }
        }
        // reduce by the monic modulus
        for i in (r..2 * r - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (k, &mc) in self.modulus_coeffs[..r].iter().enumerate() {
                if mc != 0 {
                    let t = f.muli(c, mc);
                    prod[i - r + k] = f.subi(prod[i - r + k], t);
                }
            }
        }
        Residue(self.encode(&prod))
    }

    pub fn pow(&self, a: Residue, mut e: u64) -> Residue {
        let mut base = a;
        let mut acc = Residue::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Residue) -> Result<Residue, RingError> {
        if a.is_zero() {
            return Err(RingError::ZeroInverse);
        }
        Ok(self.pow(a, self.group_order - 1))
    }

    /// Adds two residues (index arithmetic on coefficient digits).
    pub fn add(&self, a: Residue, b: Residue) -> Residue {
        let f = &*self.field;
        let mut av = [0u32; MAX_DEGREE + 1];
        let mut bv = [0u32; MAX_DEGREE + 1];
        self.decode(a.0, &mut av);
        self.decode(b.0, &mut bv);
        for i in 0..self.r {
            av[i] = f.addi(av[i], bv[i]);
        }
        Residue(self.encode(&av))
    }

    /// The embedded constant `c` (a field element) as a residue.
    pub fn embed(&self, c: FFElement) -> Residue {
        Residue(c.index())
    }

    /// Multiplicative order of a nonzero residue.
    pub fn order(&self, a: Residue) -> u64 {
        assert!(!a.is_zero(), "zero has no order");
        let mut order = self.group_order;
        for &(l, _) in &self.group_order_factors {
            while order % l == 0 && self.pow(a, order / l) == Residue::ONE {
                order /= l;
            }
        }
        order
    }

    /// Canonically-first residue of full multiplicative order, certified
    /// against the factorization of `q^r - 1`.
    pub fn find_generator(&self) -> Residue {
        if self.group_order == 1 {
            return Residue::ONE;
        }
        for idx in 2..self.size {
            let a = Residue(idx);
            if self
                .group_order_factors
                .iter()
                .all(|&(l, _)| self.pow(a, self.group_order / l) != Residue::ONE)
            {
                return a;
            }
        }
        unreachable!("cyclic group has a generator")
    }

    // ---- Discrete logarithms ----

    /// The full dlog table (built once; guarded by `DLOG_TABLE_LIMIT`).
    ///
    /// The build loop works on coefficient digit vectors: encoding digits to
    /// an index is multiply-add, so the `q^r` steps avoid per-step division.
    pub fn dlog_table(&self) -> &DlogTable {
        assert!(
            self.size <= DLOG_TABLE_LIMIT,
            "ring too large for a full dlog table; use dlog() which falls back to BSGS"
        );
        self.dlog.get_or_init(|| {
            let generator = self.find_generator();
            let f = &*self.field;
            let r = self.r;
            let mut gv = [0u32; MAX_DEGREE + 1];
            self.decode(generator.0, &mut gv);
            let mut log = vec![u32::MAX; self.size as usize];
            let mut acc = [0u32; MAX_DEGREE + 1];
            acc[0] = 1;
            let mut prod = [0u32; 2 * MAX_DEGREE + 1];
            for k in 0..self.group_order {
                let idx = self.encode(&acc);
                debug_assert_eq!(log[idx as usize], u32::MAX, "generator order too small");
                log[idx as usize] = k as u32;
                // acc *= g, reduced by the monic modulus
                prod.fill(0);
                for i in 0..r {
                    let ac = acc[i];
                    if ac == 0 {
                        continue;
                    }
                    for j in 0..r {
                        let gc = gv[j];
                        if gc != 0 {
                            prod[i + j] = f.addi(prod[i + j], f.muli(ac, gc));
                        }
                    }
                }
                for i in (r..2 * r - 1).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    prod[i] = 0;
                    for (kk, &mc) in self.modulus_coeffs[..r].iter().enumerate() {
                        if mc != 0 {
                            prod[i - r + kk] = f.subi(prod[i - r + kk], f.muli(c, mc));
                        }
                    }
                }
                acc[..r].copy_from_slice(&prod[..r]);
            }
            debug_assert_eq!(self.encode(&acc), 1, "generator orbit must close at 1");
            DlogTable { generator, log }
        })
    }

    /// Discrete log of a nonzero residue to the certified generator: table
    /// lookup at desk scale, baby-step giant-step beyond.
    pub fn dlog(&self, a: Residue) -> Result<u64, RingError> {
        if a.is_zero() {
            return Err(RingError::ZeroResidue);
        }
        if self.size <= DLOG_TABLE_LIMIT {
            return Ok(self.dlog_table().log[a.0 as usize] as u64);
        }
        Ok(self.dlog_bsgs(a))
    }

    fn dlog_bsgs(&self, a: Residue) -> u64 {
        let g = self.find_generator();
        let m = (self.group_order as f64).sqrt().ceil() as u64;
        let mut baby: HashMap<u64, u64> = HashMap::with_capacity(m as usize);
        let mut cur = Residue::ONE;
        for j in 0..m {
            baby.entry(cur.0).or_insert(j);
            cur = self.mul(cur, g);
        }
        let giant = self.inv(self.pow(g, m)).expect("generator is a unit");
        let mut y = a;
        for i in 0..=m {
            if let Some(&j) = baby.get(&y.0) {
                return (i * m + j) % self.group_order;
            }
            y = self.mul(y, giant);
        }
        unreachable!("BSGS covers the whole group")
    }

    /// True iff `h` lies in `H_d`, the unique index-`d` subgroup:
    /// `h^((q^r-1)/d) = 1`.
    pub fn subgroup_contains(&self, d: u64, h: Residue) -> Result<bool, RingError> {
        if d == 0 || self.group_order % d != 0 {
            return Err(RingError::NotADivisor(d));
        }
        if h.is_zero() {
            return Err(RingError::ZeroResidue);
        }
        Ok(self.pow(h, self.group_order / d) == Residue::ONE)
    }
}

impl DlogTable {
    pub fn generator(&self) -> Residue {
        self.generator
    }

    /// Dlog of a nonzero residue index.
    #[inline]
    pub fn log(&self, idx: u64) -> u64 {
        let v = self.log[idx as usize];
        debug_assert_ne!(v, u32::MAX, "dlog of zero");
        v as u64
    }
}

// ---- Characters ----

/// A multiplicative character of order `d | q^r - 1`, evaluated through the
/// ring's dlog table: `chi(g^k) = zeta_d^k`, `chi(0) = 0`.
pub struct Character<'a> {
    ring: &'a ResidueRing,
    d: u64,
}

/// A character value: zero or the root of unity `zeta_d^num`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharValue {
    Zero,
    Root { num: u64, den: u64 },
}

impl CharValue {
    pub fn to_complex(self) -> (f64, f64) {
        match self {
            CharValue::Zero => (0.0, 0.0),
            CharValue::Root { num, den } => {
                let theta = 2.0 * std::f64::consts::PI * num as f64 / den as f64;
                (theta.cos(), theta.sin())
            }
        }
    }
}

impl<'a> Character<'a> {
    pub fn new(ring: &'a ResidueRing, d: u64) -> Result<Character<'a>, RingError> {
        if d == 0 || ring.group_order % d != 0 {
            return Err(RingError::NotADivisor(d));
        }
        Ok(Character { ring, d })
    }

    pub fn order(&self) -> u64 {
        self.d
    }

    pub fn is_principal(&self) -> bool {
        self.d == 1
    }

    /// Exponent of the character value: `chi(f) = zeta_d^(dlog(f) mod d)`,
    /// `None` when `F | f`.
    pub fn exponent(&self, f: &Poly) -> Option<u64> {
        let res = self.ring.reduce(f);
        self.exponent_res(res)
    }

    pub fn exponent_res(&self, res: Residue) -> Option<u64> {
        if res.is_zero() {
            return None;
        }
        Some(self.ring.dlog(res).expect("nonzero residue") % self.d)
    }

    pub fn eval(&self, f: &Poly) -> CharValue {
        match self.exponent(f) {
            None => CharValue::Zero,
            Some(k) => CharValue::Root { num: k, den: self.d },
        }
    }
}

/// An exact character sum: `counts[j]` terms evaluated to `zeta_d^j`.
/// The complex value is materialized only on demand.
#[derive(Clone, Debug, Serialize)]
pub struct CharSum {
    pub d: u64,
    pub counts: Vec<u64>,
}

impl CharSum {
    fn new(d: u64) -> CharSum {
        CharSum { d, counts: vec![0; d as usize] }
    }

    fn add_exponent(&mut self, k: u64) {
        self.counts[k as usize] += 1;
    }

    pub fn total_terms(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, &c) in self.counts.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / self.d as f64;
            re += c as f64 * theta.cos();
            im += c as f64 * theta.sin();
        }
        (re, im)
    }

    pub fn abs(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }

    /// For `d <= 2` the sum is the exact integer `counts[0] - counts[1]`.
    pub fn exact_int(&self) -> Option<i64> {
        match self.d {
            1 => Some(self.counts[0] as i64),
            2 => Some(self.counts[0] as i64 - self.counts[1] as i64),
            _ => None,
        }
    }

    /// True when every exponent class is hit equally often, which forces the
    /// complex sum to vanish exactly (for non-principal characters).
    pub fn is_balanced(&self) -> bool {
        self.d > 1 && self.counts.iter().all(|&c| c == self.counts[0])
    }
}

/// Numerical slack allowed when comparing sums of unit vectors to bounds.
pub const MAGNITUDE_SLACK: f64 = 1e-9;

/// Result of a monic character-sum experiment at degree `t`.
#[derive(Clone, Debug, Serialize)]
pub struct MonicSumResult {
    pub t: u64,
    pub d: u64,
    pub sum: CharSum,
    pub abs: f64,
    /// `q^(t/2) * binom(r-1, t)`
    pub bound: f64,
    pub within_bound: bool,
    /// Exactly zero by the uniform-cover argument (`t >= r`).
    pub exact_zero: bool,
    pub principal: bool,
}

/// `sum_{f in A_t} chi(f)` evaluated exactly.
///
/// For `t < r` every monic degree-`t` polynomial is its own residue and the
/// sum is accumulated by enumeration. For `t >= r` each residue class is hit
/// exactly `q^(t-r)` times (write `f = gF + c` with `g` monic of degree
/// `t - r` and `c` arbitrary of degree `< r`), so the sum over a non-principal
/// character vanishes identically; enumeration is used as a cross-check while
/// `q^t` stays small.
pub fn char_sum_monic(ring: &ResidueRing, d: u64, t: u64) -> Result<MonicSumResult, RingError> {
    let chi = Character::new(ring, d)?;
    let q = ring.q();
    let r = ring.degree() as u64;
    let mut sum = CharSum::new(d);
    let enumerable = q.checked_pow(t as u32).map_or(false, |n| n <= 1 << 16);
    if t < r || enumerable {
        let table = ring.dlog_table();
        if t < r {
            // monic degree-t residues occupy the index range [q^t, 2 q^t)
            let base = q.pow(t as u32);
            for idx in base..2 * base {
                sum.add_exponent(table.log(idx) % d);
            }
        } else {
            let field = ring.field();
            for f in polyring::enumerate_monic(field, t as usize) {
                if let Some(k) = chi.exponent_res(ring.reduce(&f)) {
                    sum.add_exponent(k);
                }
            }
        }
    } else {
        // t >= r and too large to enumerate: counts are exactly uniform.
        let per_class = q.pow((t - r) as u32);
        let classes_per_exponent = ring.group_order / d;
        for c in sum.counts.iter_mut() {
            *c = per_class * classes_per_exponent;
        }
    }
    let exact_zero = t >= r && (d > 1 && sum.is_balanced());
    let bound = {
        let b = arith::binomial(r - 1, t);
        (q as f64).powf(t as f64 / 2.0) * b.to_f64().unwrap_or(f64::INFINITY)
    };
    let abs = if exact_zero { 0.0 } else { sum.abs() };
    Ok(MonicSumResult {
        t,
        d,
        abs,
        bound,
        within_bound: d == 1 || abs <= bound + MAGNITUDE_SLACK,
        exact_zero,
        principal: d == 1,
        sum,
    })
}

/// Result of a square-free character-sum experiment below degree `m`.
#[derive(Clone, Debug, Serialize)]
pub struct SquarefreeSumResult {
    pub m: u64,
    pub d: u64,
    pub sum: CharSum,
    pub abs: f64,
    /// `q^((m-1)/2) (q-1) (2^(r-1)-1) m/2`
    pub bound_simple: f64,
    /// `(q-1) sum_k q^k sum_t q^(t/2) min(q^(t/2), binom(r-1,t))`
    pub bound_refined: f64,
    pub within_simple: bool,
    pub within_refined: bool,
    pub principal: bool,
}

/// `sum_{1 <= deg f < m} mu_q^2(f) chi(f)` over all leading coefficients,
/// evaluated exactly by enumeration.
pub fn char_sum_squarefree(
    ring: &ResidueRing,
    d: u64,
    m: u64,
) -> Result<SquarefreeSumResult, RingError> {
    assert!(m >= 2, "the square-free sum needs m >= 2");
    let chi = Character::new(ring, d)?;
    let field = ring.field();
    let q = ring.q();
    let r = ring.degree() as u64;
    let mut sum = CharSum::new(d);
    let top = q.checked_pow(m as u32).expect("enumeration range fits u64");
    for idx in q..top {
        let f = polyring::index_to_poly_u64(field, idx);
        if !polyring::is_squarefree(field, &f).expect("nonzero by index range") {
            continue;
        }
        if let Some(k) = chi.exponent(&f) {
            sum.add_exponent(k);
        }
    }
    let abs = sum.abs();
    let bound_simple = (q as f64).powf((m - 1) as f64 / 2.0)
        * (q - 1) as f64
        * (2.0f64.powi(r as i32 - 1) - 1.0)
        * m as f64
        / 2.0;
    let bound_refined = refined_squarefree_bound(q, r, m).approx();
    Ok(SquarefreeSumResult {
        m,
        d,
        abs,
        bound_simple,
        bound_refined,
        within_simple: d == 1 || abs <= bound_simple + MAGNITUDE_SLACK,
        within_refined: d == 1 || abs <= bound_refined + MAGNITUDE_SLACK,
        principal: d == 1,
        sum,
    })
}

/// The refined square-free sum bound as an exact power sum:
/// `(q-1) sum_{k=0}^{floor((m-2)/2)} q^k sum_{t=1}^{m-2k-1} q^(t/2) min(q^(t/2), binom(r-1,t))`.
pub fn refined_squarefree_bound(q: u64, r: u64, m: u64) -> QPowSum {
    crate::bounds::min_power_double_sum(q, r, m).scaled(&BigInt::from(q - 1))
}

/// The simple square-free sum bound, doubled to clear the `m/2` fraction:
/// `q^((m-1)/2) (q-1) (2^(r-1)-1) m`.
pub fn simple_squarefree_bound_doubled(q: u64, r: u64, m: u64) -> QPowSum {
    let mut acc = QPowSum::new(q);
    let coeff = BigInt::from(q - 1) * (BigInt::from(arith::big_pow(2, r - 1)) - 1) * BigInt::from(m);
    acc.add_term(coeff, 10 * (m - 1));
    acc
}

// ---- Coset representatives ----

/// Outcome of the square-free coset-representative search for one coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetRep {
    Found(Poly),
    NotFound,
}

impl CosetRep {
    pub fn found(&self) -> Option<&Poly> {
        match self {
            CosetRep::Found(f) => Some(f),
            CosetRep::NotFound => None,
        }
    }
}

/// For each coset of `H_d` (indexed by dlog residue mod `d`), the
/// index-order-first square-free polynomial `f` with `1 <= deg f <
/// degree_bound` lying in that coset. A missing representative is reported
/// as [`CosetRep::NotFound`], not an error: the claim that all cosets are
/// covered is checked, never assumed.
pub fn find_coset_reps(
    ring: &ResidueRing,
    d: u64,
    degree_bound: usize,
) -> Result<Vec<CosetRep>, RingError> {
    if d == 0 || ring.group_order() % d != 0 {
        return Err(RingError::NotADivisor(d));
    }
    let table = ring.dlog_table();
    let field = ring.field();
    let q = ring.q();
    let mut reps: Vec<CosetRep> = vec![CosetRep::NotFound; d as usize];
    let mut remaining = d;
    let top = q.checked_pow(degree_bound as u32).expect("degree bound at desk scale");
    for idx in q..top {
        let f = polyring::index_to_poly_u64(field, idx);
        if !polyring::is_squarefree(field, &f).expect("nonzero by index range") {
            continue;
        }
        let res = if f.degree().unwrap() < ring.degree() {
            Residue(idx)
        } else {
            ring.reduce(&f)
        };
        let class = (table.log(res.0) % d) as usize;
        if matches!(reps[class], CosetRep::NotFound) {
            reps[class] = CosetRep::Found(f);
            remaining -= 1;
            if remaining == 0 {
                break;
            }
        }
    }
    Ok(reps)
}

// ---- Quadratic twist sums ----

/// Exact value of `sum_{y in (F_q[X]/F)^*} chi(y (y^2 + N))` for the
/// quadratic character, with the exact squared comparison against `2 q^(r/2)`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistSum {
    pub sum: i64,
    /// `sum^2 <= 4 q^r`, compared in integers.
    pub within_bound: bool,
}

pub fn twist_sum(ring: &ResidueRing, n: Residue) -> Result<TwistSum, RingError> {
    if ring.q() % 2 == 0 {
        return Err(RingError::EvenCharacteristic);
    }
    if n.is_zero() {
        return Err(RingError::ZeroResidue);
    }
    let table = ring.dlog_table();
    let mut sum: i64 = 0;
    for idx in 1..ring.size() {
        let y = Residue(idx);
        let arg = ring.mul(y, ring.add(ring.mul(y, y), n));
        if arg.is_zero() {
            continue;
        }
        sum += if table.log(arg.0) % 2 == 0 { 1 } else { -1 };
    }
    let within = (sum as i128) * (sum as i128) <= 4 * ring.size() as i128;
    Ok(TwistSum { sum, within_bound: within })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, n: u32, modulus: &str) -> ResidueRing {
        let field = Arc::new(FieldSpec::new(p, n, None).unwrap());
        let m = polyring::parse(&field, modulus).unwrap();
        ResidueRing::new(field, &m).unwrap()
    }

    #[test]
    fn ring_construction() {
        let r = ring(2, 1, "X^3+X+1");
        assert_eq!(r.group_order(), 7);
        let r = ring(7, 1, "X^2+1");
        assert_eq!(r.group_order(), 48);
        assert_eq!(r.group_order_factors(), &[(2, 4), (3, 1)]);
        let field = Arc::new(FieldSpec::new(2, 1, None).unwrap());
        let reducible = polyring::parse(&field, "X^2+X").unwrap();
        assert_eq!(
            ResidueRing::new(field, &reducible).unwrap_err(),
            RingError::ReducibleModulus
        );
    }

    #[test]
    fn non_monic_modulus_normalized() {
        let field = Arc::new(FieldSpec::new(3, 1, None).unwrap());
        let m = polyring::parse(&field, "2*X^2+2").unwrap(); // 2(X^2+1)
        let r = ResidueRing::new(field, &m).unwrap();
        assert!(r.was_normalized());
        assert!(r.modulus().is_monic());
    }

    #[test]
    fn reduce_and_arithmetic() {
        let r = ring(2, 1, "X^3+X+1");
        let field = r.field_arc();
        // X^3 = X + 1
        let x3 = polyring::parse(&field, "X^3").unwrap();
        assert_eq!(r.to_poly(r.reduce(&x3)), polyring::parse(&field, "X+1").unwrap());
        for idx in 1..r.size() {
            let a = Residue(idx);
            assert_eq!(r.mul(a, r.inv(a).unwrap()), Residue::ONE);
            assert_eq!(r.pow(a, r.group_order()), Residue::ONE);
        }
    }

    #[test]
    fn generator_and_dlog() {
        let r = ring(2, 1, "X^3+X+1");
        // X (index 2) has order 7
        assert_eq!(r.find_generator(), Residue(2));
        assert_eq!(r.dlog(Residue(2)).unwrap(), 1);
        assert_eq!(r.dlog(Residue::ONE).unwrap(), 0);
        // X^3 = X+1 (index 3): dlog 3
        assert_eq!(r.dlog(Residue(3)).unwrap(), 3);
    }

    #[test]
    fn generator_trivial_group() {
        // q^r = 2: mod X over F_2 has group order 1
        let r = ring(2, 1, "X");
        assert_eq!(r.find_generator(), Residue::ONE);
    }

    #[test]
    fn bsgs_matches_table() {
        let r = ring(5, 1, "X^3+X+1");
        assert!(polyring::is_irreducible(r.field(), r.modulus()).unwrap());
        for idx in 1..r.size() {
            assert_eq!(r.dlog(Residue(idx)).unwrap(), r.dlog_bsgs(Residue(idx)));
        }
    }

    #[test]
    fn subgroup_membership() {
        let r = ring(7, 1, "X^2+1");
        let m = r.group_order(); // 48
        for d in arith::divisors(m) {
            let mut count = 0u64;
            for idx in 1..r.size() {
                if r.subgroup_contains(d, Residue(idx)).unwrap() {
                    count += 1;
                }
            }
            assert_eq!(count, m / d, "subgroup H_{d} has order (q^r-1)/d");
            assert!(r.subgroup_contains(d, Residue::ONE).unwrap());
        }
        assert!(r.subgroup_contains(5, Residue::ONE).is_err());
    }

    #[test]
    fn character_multiplicativity_and_kernel() {
        let r = ring(2, 1, "X^3+X+1");
        let chi = Character::new(&r, 7).unwrap();
        let field = r.field_arc();
        assert_eq!(chi.eval(r.modulus()), CharValue::Zero);
        assert_eq!(
            chi.eval(&polyring::parse(&field, "1").unwrap()),
            CharValue::Root { num: 0, den: 7 }
        );
        for a in 1..r.size() {
            for b in 1..r.size() {
                let fa = r.to_poly(Residue(a));
                let fb = r.to_poly(Residue(b));
                let prod = polyring::mul(&field, &fa, &fb);
                let ea = chi.exponent(&fa).unwrap();
                let eb = chi.exponent(&fb).unwrap();
                let ep = chi.exponent(&prod).unwrap();
                assert_eq!((ea + eb) % 7, ep);
            }
        }
    }

    #[test]
    fn quadratic_character_via_dlog_parity() {
        // chi(3) for the order-2 character mod X^2+1 over F_7: 3 is a square
        // in F_49 iff its dlog is even.
        let r = ring(7, 1, "X^2+1");
        let chi = Character::new(&r, 2).unwrap();
        let squares: std::collections::HashSet<u64> =
            (1..r.size()).map(|i| r.mul(Residue(i), Residue(i)).0).collect();
        for idx in 1..r.size() {
            let is_square = squares.contains(&idx);
            let f = r.to_poly(Residue(idx));
            let expect = if is_square { 0 } else { 1 };
            assert_eq!(chi.exponent(&f).unwrap(), expect);
        }
    }

    #[test]
    fn orthogonality_exhaustive() {
        // sum over nonzero residues of chi(h) = 0 for non-principal chi,
        // exact at the exponent level: every class is hit equally often.
        for (p, n, m) in [(2u64, 1u32, "X^3+X+1"), (3, 1, "X^2+1"), (2, 2, "X^2+X+[0,1]")] {
            let r = ring(p, n, m);
            for d in arith::divisors(r.group_order()) {
                if d == 1 {
                    continue;
                }
                let mut sum = CharSum::new(d);
                let table = r.dlog_table();
                for idx in 1..r.size() {
                    sum.add_exponent(table.log(idx) % d);
                }
                assert!(sum.is_balanced(), "d={d} over {r:?}");
            }
        }
    }

    #[test]
    fn monic_sums_respect_bound_small() {
        let r = ring(2, 1, "X^3+X+1");
        for d in [7u64] {
            for t in 1..=6 {
                let res = char_sum_monic(&r, d, t).unwrap();
                assert!(res.within_bound, "d={d} t={t}: {res:?}");
                if t >= 3 {
                    assert!(res.exact_zero);
                    assert_eq!(res.abs, 0.0);
                }
            }
        }
        // t = r-1 bound is q^((r-1)/2) with binomial 1
        let res = char_sum_monic(&r, 7, 2).unwrap();
        assert!(res.abs <= 2.0f64.powf(1.0) + MAGNITUDE_SLACK);
    }

    #[test]
    fn monic_sum_uniform_shortcut_matches_enumeration() {
        // For t >= r both routes (enumeration vs uniform counts) must agree.
        let r = ring(3, 1, "X^2+1");
        for d in [2u64, 4, 8] {
            for t in 2..=4 {
                let res = char_sum_monic(&r, d, t).unwrap();
                let mut manual = CharSum::new(d);
                let chi = Character::new(&r, d).unwrap();
                for f in polyring::enumerate_monic(r.field(), t as usize) {
                    if let Some(k) = chi.exponent(&f) {
                        manual.add_exponent(k);
                    }
                }
                assert_eq!(res.sum.counts, manual.counts, "d={d} t={t}");
            }
        }
    }

    #[test]
    fn squarefree_sum_principal_matches_count() {
        // With the principal character and m = r, the sum counts square-free
        // polynomials of degree in [1, r): (q-1) q^(r-1).
        let r = ring(3, 1, "X^2+1");
        let res = char_sum_squarefree(&r, 1, 2).unwrap();
        assert_eq!(
            res.sum.counts[0],
            polyring::count_squarefree_below(3, 2)
                .unwrap()
                .to_u64_digits()
                .first()
                .copied()
                .unwrap_or(0)
        );
    }

    #[test]
    fn coset_reps_d1_is_x() {
        let r = ring(7, 1, "X^2+1");
        let reps = find_coset_reps(&r, 1, 2).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].found().unwrap(), &Poly::x());
    }

    #[test]
    fn coset_reps_cover_small_ring() {
        let r = ring(7, 1, "X^2+1");
        for d in [2u64, 3, 4, 6] {
            let reps = find_coset_reps(&r, d, 2).unwrap();
            let table = r.dlog_table();
            for (class, rep) in reps.iter().enumerate() {
                let f = rep.found().expect("small-field cosets are covered");
                assert!(polyring::is_squarefree(r.field(), f).unwrap());
                assert!(f.degree().unwrap() >= 1 && f.degree().unwrap() < 2);
                let res = r.reduce(f);
                assert_eq!(table.log(res.0) % d, class as u64);
            }
        }
    }

    #[test]
    fn twist_sum_exhaustive_f7() {
        let field = Arc::new(FieldSpec::new(7, 1, None).unwrap());
        for m in polyring::enumerate_irreducible_monic(&field, 2) {
            let r = ResidueRing::new(Arc::clone(&field), &m).unwrap();
            for n_idx in 1..r.size() {
                let res = twist_sum(&r, Residue(n_idx)).unwrap();
                assert!(res.within_bound, "N={n_idx} mod {m:?}: sum={}", res.sum);
            }
        }
    }

    #[test]
    fn twist_sum_rejects_even_q() {
        let r = ring(2, 1, "X^3+X+1");
        assert_eq!(twist_sum(&r, Residue(2)).unwrap_err(), RingError::EvenCharacteristic);
    }
}
