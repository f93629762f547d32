//! Construction of and arithmetic in `F_p` and `F_{p^n}`.
//!
//! Elements are handles: an [`FFElement`] is the canonical index of a field
//! element, i.e. its coefficient vector over `F_p` read as a base-`p` integer.
//! Index 0 is zero and index 1 is one, so enumeration order is fixed once and
//! for all. All arithmetic goes through the owning [`FieldSpec`]; an element
//! is only meaningful relative to the field that produced it.
//!
//! Extension fields store a monic irreducible modulus over `F_p`. When none
//! is supplied the canonically-first irreducible (smallest index) is chosen,
//! so every run of every tool sees the same field.

use crate::arith;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Element tables are precomputed for fields up to this cardinality.
const TABLE_LIMIT: u64 = 512;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("p^n overflows the supported element range")]
    Overflow,
    #[error("modulus must be monic of degree n with coefficients below p")]
    BadModulus,
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("modulus given for a prime field")]
    ModulusForPrimeField,
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("index {0} is not an element of this field")]
    NotAnElement(u64),
    #[error("cannot parse field description: {0}")]
    Parse(String),
}

/// A field element, identified by its canonical index in `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FFElement(pub u32);

impl FFElement {
    pub const ZERO: FFElement = FFElement(0);
    pub const ONE: FFElement = FFElement(1);

    pub fn index(self) -> u64 {
        self.0 as u64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldTables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>, // inv[0] unused
}

/// The coefficient field `F_q`, `q = p^n`.
pub struct FieldSpec {
    p: u64,
    n: u32,
    q: u64,
    /// Monic irreducible of degree `n` over `F_p`, ascending coefficients;
    /// `None` exactly when `n == 1`.
    modulus: Option<Vec<u64>>,
    q1_factors: Vec<(u64, u32)>,
    tables: Option<FieldTables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self.describe())
    }
}

impl FieldSpec {
    /// Builds `F_{p^n}`. A modulus may be supplied for `n > 1`; otherwise the
    /// canonically-first monic irreducible of degree `n` is selected.
    pub fn new(p: u64, n: u32, modulus: Option<&[u64]>) -> Result<FieldSpec, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= (1u64 << 62))
            .ok_or(FieldError::Overflow)?;
        let modulus = if n == 1 {
            if modulus.is_some() {
                return Err(FieldError::ModulusForPrimeField);
            }
            None
        } else {
            let m = match modulus {
                Some(m) => {
                    if m.len() != n as usize + 1
                        || m[n as usize] != 1
                        || m.iter().any(|&c| c >= p)
                    {
                        return Err(FieldError::BadModulus);
                    }
                    if !prime_poly_irreducible(p, m) {
                        return Err(FieldError::ReducibleModulus);
                    }
                    m.to_vec()
                }
                None => first_irreducible(p, n),
            };
            Some(m)
        };
        let mut field = FieldSpec {
            p,
            n,
            q,
            modulus,
            q1_factors: arith::factorize(q - 1),
            tables: None,
        };
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    /// `F_q` for a prime power `q`, with the canonical modulus when `q` is
    /// not prime.
    pub fn new_prime_power(q: u64) -> Result<FieldSpec, FieldError> {
        let (p, n) = arith::prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        FieldSpec::new(p, n, None)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Prime factorization of the multiplicative group order `q - 1`.
    pub fn unit_group_factors(&self) -> &[(u64, u32)] {
        &self.q1_factors
    }

    pub fn modulus_coeffs(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    /// Textual form `q=p^n` or `q=p^n;modulus=c0,c1,...,cn` used in reports.
    pub fn describe(&self) -> String {
        match &self.modulus {
            None => format!("q={}^{}", self.p, self.n),
            Some(m) => format!(
                "q={}^{};modulus={}",
                self.p,
                self.n,
                m.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            ),
        }
    }

    /// Parses the `describe` format back into a field.
    pub fn from_description(s: &str) -> Result<FieldSpec, FieldError> {
        let err = || FieldError::Parse(s.to_string());
        let (head, tail) = match s.split_once(';') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let pn = head.strip_prefix("q=").ok_or_else(err)?;
        let (p, n) = pn.split_once('^').ok_or_else(err)?;
        let p: u64 = p.parse().map_err(|_| err())?;
        let n: u32 = n.parse().map_err(|_| err())?;
        let modulus: Option<Vec<u64>> = match tail {
            None => None,
            Some(t) => {
                let list = t.strip_prefix("modulus=").ok_or_else(err)?;
                Some(
                    list.split(',')
                        .map(|c| c.trim().parse().map_err(|_| err()))
                        .collect::<Result<_, _>>()?,
                )
            }
        };
        FieldSpec::new(p, n, modulus.as_deref())
    }

    // ---- Element encoding ----

    /// Coefficient vector of length `n` over `F_p`, ascending.
    pub fn coeffs(&self, a: FFElement) -> Vec<u64> {
        let mut idx = a.index();
        let mut out = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            out.push(idx % self.p);
            idx /= self.p;
        }
        out
    }

    /// Element from a coefficient vector (length at most `n`, entries `< p`).
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Result<FFElement, FieldError> {
        if coeffs.len() > self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::NotAnElement(
                coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c),
            ));
        }
        let idx = coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + c);
        Ok(FFElement(idx as u32))
    }

    /// Element with canonical index `idx`.
    pub fn element(&self, idx: u64) -> FFElement {
        assert!(idx < self.q, "index {idx} out of range for {self:?}");
        FFElement(idx as u32)
    }

    /// The embedded copy of the integer `c` (i.e. `c mod p` as a constant).
    pub fn constant(&self, c: u64) -> FFElement {
        FFElement((c % self.p) as u32)
    }

    /// All `q` elements in canonical order; zero first, one second.
    pub fn elements(&self) -> impl Iterator<Item = FFElement> + '_ {
        (0..self.q).map(|i| FFElement(i as u32))
    }

    fn check(&self, a: FFElement) {
        assert!(
            a.index() < self.q,
            "element index {} does not belong to {:?}",
            a.index(),
            self
        );
    }

    // Unchecked index arithmetic for inner loops (residue rings, tables).

    #[inline]
    pub(crate) fn addi(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.add[a as usize * self.q as usize + b as usize],
            None => self.add_raw(FFElement(a), FFElement(b)).0,
        }
    }

    #[inline]
    pub(crate) fn muli(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.mul[a as usize * self.q as usize + b as usize],
            None => self.mul_raw(FFElement(a), FFElement(b)).0,
        }
    }

    #[inline]
    pub(crate) fn negi(&self, a: u32) -> u32 {
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None => self.neg_raw(FFElement(a)).0,
        }
    }

    #[inline]
    pub(crate) fn subi(&self, a: u32, b: u32) -> u32 {
        self.addi(a, self.negi(b))
    }

    // ---- Arithmetic ----

    pub fn add(&self, a: FFElement, b: FFElement) -> FFElement {
        self.check(a);
        self.check(b);
        if let Some(t) = &self.tables {
            return FFElement(t.add[(a.index() * self.q + b.index()) as usize]);
        }
        self.add_raw(a, b)
    }

    pub fn neg(&self, a: FFElement) -> FFElement {
        self.check(a);
        if let Some(t) = &self.tables {
            return FFElement(t.neg[a.index() as usize]);
        }
        self.neg_raw(a)
    }

    pub fn sub(&self, a: FFElement, b: FFElement) -> FFElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FFElement, b: FFElement) -> FFElement {
        self.check(a);
        self.check(b);
        if let Some(t) = &self.tables {
            return FFElement(t.mul[(a.index() * self.q + b.index()) as usize]);
        }
        self.mul_raw(a, b)
    }

    pub fn inv(&self, a: FFElement) -> Result<FFElement, FieldError> {
        self.check(a);
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        if let Some(t) = &self.tables {
            return Ok(FFElement(t.inv[a.index() as usize]));
        }
        // a^(q-2) is the inverse of nonzero a.
        Ok(self.pow(a, self.q - 2))
    }

    /// Square-and-multiply; exponents are plain integers since group orders
    /// stay within 64 bits.
    pub fn pow(&self, a: FFElement, mut e: u64) -> FFElement {
        self.check(a);
        let mut base = a;
        let mut acc = FFElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FFElement) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let mut order = self.q - 1;
        for &(l, _) in &self.q1_factors {
            while order % l == 0 && self.pow(a, order / l) == FFElement::ONE {
                order /= l;
            }
        }
        order
    }

    /// Canonically-first generator of the multiplicative group, certified
    /// against the factorization of `q - 1`. For `F_2` the trivial group is
    /// generated by 1 by convention.
    pub fn find_generator(&self) -> FFElement {
        if self.q == 2 {
            return FFElement::ONE;
        }
        for idx in 2..self.q {
            let a = FFElement(idx as u32);
            if self
                .q1_factors
                .iter()
                .all(|&(l, _)| self.pow(a, (self.q - 1) / l) != FFElement::ONE)
            {
                return a;
            }
        }
        unreachable!("every finite field has a generator");
    }

    // ---- Raw (table-free) arithmetic on coefficient vectors ----

    fn add_raw(&self, a: FFElement, b: FFElement) -> FFElement {
        let (mut ai, mut bi) = (a.index(), b.index());
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.n {
            let s = (ai % self.p + bi % self.p) % self.p;
            out += s * place;
            place *= self.p;
            ai /= self.p;
            bi /= self.p;
        }
        FFElement(out as u32)
    }

    fn neg_raw(&self, a: FFElement) -> FFElement {
        let mut ai = a.index();
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.n {
            let c = ai % self.p;
            out += if c == 0 { 0 } else { self.p - c } * place;
            place *= self.p;
            ai /= self.p;
        }
        FFElement(out as u32)
    }

    fn mul_raw(&self, a: FFElement, b: FFElement) -> FFElement {
        if self.n == 1 {
            return FFElement(arith::mul_mod(a.index(), b.index(), self.p) as u32);
        }
        let m = self.modulus.as_ref().expect("extension field has modulus");
        let av = self.coeffs(a);
        let bv = self.coeffs(b);
        let n = self.n as usize;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &ac) in av.iter().enumerate() {
            if ac == 0 {
                continue;
            }
            for (j, &bc) in bv.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ac * bc) % self.p;
            }
        }
        // Reduce by the monic modulus.
        for i in (n..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (k, &mc) in m.iter().enumerate().take(n) {
                let idx = i - n + k;
                prod[idx] = (prod[idx] + c * (self.p - mc) % self.p) % self.p;
            }
        }
        let idx = prod[..n].iter().rev().fold(0u64, |acc, &c| acc * self.p + c);
        FFElement(idx as u32)
    }

    fn build_tables(&self) -> FieldTables {
        let q = self.q as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        let mut neg = vec![0u32; q];
        let mut inv = vec![0u32; q];
        for a in 0..q {
            let ea = FFElement(a as u32);
            neg[a] = self.neg_raw(ea).0;
            for b in a..q {
                let s = self.add_raw(ea, FFElement(b as u32)).0;
                let p = self.mul_raw(ea, FFElement(b as u32)).0;
                add[a * q + b] = s;
                add[b * q + a] = s;
                mul[a * q + b] = p;
                mul[b * q + a] = p;
            }
        }
        for a in 1..q {
            if inv[a] != 0 {
                continue;
            }
            let b = (1..q).find(|&b| mul[a * q + b] == 1).expect("unit has inverse");
            inv[a] = b as u32;
            inv[b] = a as u32;
        }
        FieldTables { add, mul, neg, inv }
    }
}

// ---- Irreducibility over F_p for modulus selection ----
//
// Self-contained check on u64 coefficient vectors so that field construction
// does not depend on the general polynomial ring (which itself needs fields).

fn prime_poly_rem(p: u64, f: &[u64], g: &[u64]) -> Vec<u64> {
    let mut r: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    let lead_inv = arith::pow_mod(g[dg], p - 2, p);
    while r.len() > dg {
        let c = *r.last().unwrap();
        if c != 0 {
            let factor = arith::mul_mod(c, lead_inv, p);
            let shift = r.len() - 1 - dg;
            for (k, &gc) in g.iter().enumerate() {
                let idx = shift + k;
                r[idx] = (r[idx] + arith::mul_mod(factor, p - gc % p, p)) % p;
            }
        }
        r.pop();
        while r.len() > dg && *r.last().unwrap() == 0 {
            r.pop();
        }
    }
    while let Some(0) = r.last() {
        r.pop();
    }
    r
}

fn prime_poly_irreducible(p: u64, f: &[u64]) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=n/2.
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut i = idx;
            for _ in 0..d {
                g.push(i % p);
                i /= p;
            }
            g.push(1);
            if prime_poly_rem(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

fn first_irreducible(p: u64, n: u32) -> Vec<u64> {
    let count = p.pow(n);
    for idx in 0..count {
        let mut f = Vec::with_capacity(n as usize + 1);
        let mut i = idx;
        for _ in 0..n {
            f.push(i % p);
            i /= p;
        }
        f.push(1);
        if prime_poly_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducibles of every degree exist over F_p");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f7() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        assert_eq!(f7.q(), 7);
        // 3 * 5 = 15 = 1 mod 7
        assert_eq!(f7.inv(f7.element(3)).unwrap(), f7.element(5));
        assert_eq!(f7.describe(), "q=7^1");
    }

    #[test]
    fn four_is_not_prime() {
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), FieldError::NonPrime(4));
    }

    #[test]
    fn f8_with_explicit_modulus() {
        // Y^3 + Y + 1 over F_2; oracle: no roots and no quadratic factors.
        let f8 = FieldSpec::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        assert_eq!(f8.q(), 8);
        // Y * Y^2 = Y^3 = Y + 1
        let y = f8.element(2);
        let y2 = f8.element(4);
        assert_eq!(f8.mul(y, y2), f8.element(3));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // Y^2 + 1 = (Y+1)^2 over F_2
        assert_eq!(
            FieldSpec::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            FieldError::ReducibleModulus
        );
        // wrong degree
        assert_eq!(
            FieldSpec::new(2, 3, Some(&[1, 1, 1])).unwrap_err(),
            FieldError::BadModulus
        );
    }

    #[test]
    fn default_moduli_are_canonical() {
        // First irreducible quadratic over F_2 is Y^2 + Y + 1.
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f4.modulus_coeffs(), Some(&[1u64, 1, 1][..]));
        // First irreducible cubic over F_2 is Y^3 + Y + 1.
        let f8 = FieldSpec::new(2, 3, None).unwrap();
        assert_eq!(f8.modulus_coeffs(), Some(&[1u64, 1, 0, 1][..]));
        // F_9: Y^2 + 1 is irreducible over F_3 (no square root of -1).
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus_coeffs(), Some(&[1u64, 0, 1][..]));
    }

    #[test]
    fn enumeration_starts_zero_one() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3)] {
            let f = FieldSpec::new(p, n, None).unwrap();
            let first: Vec<u64> = f.elements().take(2).map(|e| e.index()).collect();
            assert_eq!(first, vec![0, 1]);
            assert_eq!(f.elements().count() as u64, f.q());
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, n) in [(2u64, 1u32), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)] {
            let f = FieldSpec::new(p, n, None).unwrap();
            let els: Vec<FFElement> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, FFElement::ZERO), a);
                assert_eq!(f.mul(a, FFElement::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FFElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FFElement::ONE);
                    assert_eq!(f.pow(a, f.q() - 1), FFElement::ONE);
                }
                for &b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for &c in &els {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn generator_f7_is_three() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        assert_eq!(f7.find_generator(), f7.element(3));
        assert_eq!(f7.element_order(f7.element(3)), 6);
    }

    #[test]
    fn generator_covers_units() {
        for (p, n) in [(2u64, 1u32), (3, 1), (7, 1), (2, 2), (3, 2), (2, 3), (2, 6), (5, 2)] {
            let f = FieldSpec::new(p, n, None).unwrap();
            let g = f.find_generator();
            let mut seen = vec![false; f.q() as usize];
            let mut x = FFElement::ONE;
            for _ in 0..f.q() - 1 {
                assert!(!seen[x.index() as usize], "generator orbit repeated early");
                seen[x.index() as usize] = true;
                x = f.mul(x, g);
            }
            assert_eq!(x, FFElement::ONE);
            assert!(seen[1..].iter().all(|&s| s));
        }
    }

    #[test]
    fn generator_f9_has_order_eight() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let g = f9.find_generator();
        assert_eq!(f9.element_order(g), 8);
        assert_eq!(f9.pow(g, 8), FFElement::ONE);
        assert_ne!(f9.pow(g, 4), FFElement::ONE);
    }

    #[test]
    fn generator_f2_convention() {
        let f2 = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f2.find_generator(), FFElement::ONE);
    }

    #[test]
    fn description_round_trip() {
        for desc in ["q=7^1", "q=2^3;modulus=1,1,0,1", "q=3^2;modulus=1,0,1"] {
            let f = FieldSpec::from_description(desc).unwrap();
            assert_eq!(f.describe(), desc);
        }
        assert!(FieldSpec::from_description("q=6^1").is_err());
    }

    #[test]
    fn raw_matches_tables() {
        // Same field with and without tables must agree; force the raw path
        // by exceeding TABLE_LIMIT via a large prime field.
        let big = FieldSpec::new(1009, 1, None).unwrap();
        assert!(big.tables.is_none());
        let a = big.element(123);
        let b = big.element(991);
        assert_eq!(big.mul(a, b).index(), 123 * 991 % 1009);
        assert_eq!(big.mul(a, big.inv(a).unwrap()), FFElement::ONE);
    }
}
