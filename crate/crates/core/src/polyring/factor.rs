//! Complete factorization over `F_q`.
//!
//! Pipeline: square-free decomposition (handling vanishing derivatives via
//! p-th roots), distinct-degree splitting, then equal-degree splitting. The
//! random choices in equal-degree splitting are drawn from a generator seeded
//! by the input polynomial, and the output is sorted in index order, so the
//! result is a pure function of the input.
//!
//! [`factor_trial_division`] is an independent oracle that never touches the
//! splitting machinery; the two must agree everywhere.

use super::{
    add, div_exact, divmod, enumerate_monic, gcd, make_monic, mul, pow_mod_big, rem, sub, Poly,
    PolyError,
};
use crate::gf::{FFElement, FieldSpec};
use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `unit * prod(factor^multiplicity)` with monic irreducible factors, sorted
/// in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FFElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn product(&self, field: &FieldSpec) -> Poly {
        let mut acc = Poly::constant(self.unit);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = mul(field, &acc, f);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }

    /// Largest irreducible factor degree (0 for units).
    pub fn max_factor_degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, _)| f.degree().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }
}

/// `f^(1/p)` for an `f` with vanishing derivative (all exponents divisible
/// by `p`, coefficients mapped through the inverse Frobenius `c -> c^(q/p)`).
fn pth_root(field: &FieldSpec, f: &Poly) -> Poly {
    let p = field.p() as usize;
    let root_exp = field.q() / field.p(); // c^(q/p) is the p-th root of c
    let coeffs = f.coeff_indices();
    let mut out = Vec::with_capacity(coeffs.len() / p + 1);
    for (i, &c) in coeffs.iter().enumerate() {
        if i % p == 0 {
            out.push(field.pow(FFElement(c), root_exp).0);
        } else {
            debug_assert_eq!(c, 0, "derivative did not vanish");
        }
    }
    Poly::from_indices(&out)
}

/// Square-free decomposition of a nonzero polynomial: pairwise-coprime monic
/// square-free `bases` with multiplicities such that the monic part of `f`
/// is `prod(base^mult)`. Constants decompose to an empty list.
pub fn squarefree_decomposition(field: &FieldSpec, f: &Poly) -> Vec<(Poly, u32)> {
    assert!(!f.is_zero(), "zero polynomial has no decomposition");
    let mut out = Vec::new();
    decompose_into(field, &make_monic(field, f), 1, &mut out);
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn decompose_into(field: &FieldSpec, f: &Poly, multiplier: u32, out: &mut Vec<(Poly, u32)>) {
    if f.is_constant() {
        return;
    }
    let fp = super::derivative(field, f);
    if fp.is_zero() {
        // f = g^p
        decompose_into(field, &pth_root(field, f), multiplier * field.p() as u32, out);
        return;
    }
    let mut c = gcd(field, f, &fp);
    let mut w = div_exact(field, f, &c);
    let mut i = 1u32;
    while !w.is_constant() {
        let y = gcd(field, &w, &c);
        let z = div_exact(field, &w, &y);
        if !z.is_constant() {
            out.push((z, i * multiplier));
        }
        w = y;
        c = div_exact(field, &c, &w);
        i += 1;
    }
    if !c.is_constant() {
        // remaining factors all have multiplicity divisible by p
        decompose_into(field, &pth_root(field, &c), multiplier * field.p() as u32, out);
    }
}

/// Distinct-degree splitting of a monic square-free `f`: returns pairs
/// `(product of the irreducible factors of degree d, d)` in ascending `d`.
fn distinct_degree_split(field: &FieldSpec, f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut g = f.clone();
    let x = Poly::x();
    let mut h = rem(field, &x, &g).expect("nonzero modulus");
    let mut d = 0usize;
    while !g.is_constant() {
        d += 1;
        if let Some(dg) = g.degree() {
            if dg < 2 * d {
                // leftover is a single irreducible of degree dg
                out.push((g.clone(), dg));
                break;
            }
        }
        h = super::pow_mod(field, &h, field.q(), &g);
        let e = gcd(field, &sub(field, &h, &x), &g);
        if !e.is_constant() {
            out.push((e.clone(), d));
            g = div_exact(field, &g, &e);
            h = rem(field, &h, &g).expect("nonzero modulus");
        }
    }
    out
}

/// Equal-degree splitting of a monic square-free product of irreducibles all
/// of degree `d` (Cantor-Zassenhaus; trace splitting in characteristic 2).
fn equal_degree_split(
    field: &FieldSpec,
    f: &Poly,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Poly>,
) {
    let deg = f.degree().unwrap();
    if deg == d {
        out.push(f.clone());
        return;
    }
    let split = loop {
        let r = random_poly(field, deg, rng);
        if r.is_constant() {
            continue;
        }
        let shared = gcd(field, &r, f);
        if !shared.is_constant() && shared.degree() != f.degree() {
            break shared;
        }
        let s = if field.p() == 2 {
            // absolute trace of r into F_2
            let steps = field.extension_degree() as usize * d;
            let mut acc = rem(field, &r, f).expect("nonzero modulus");
            let mut pow = acc.clone();
            for _ in 1..steps {
                pow = super::pow_mod(field, &mul(field, &pow, &pow), 1, f);
                acc = add(field, &acc, &pow);
            }
            acc
        } else {
            let e = (BigUint::from(field.q()).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let s = pow_mod_big(field, &r, &e, f);
            sub(field, &s, &Poly::one())
        };
        let g = gcd(field, &s, f);
        if !g.is_constant() && g.degree() != f.degree() {
            break g;
        }
    };
    let co = div_exact(field, f, &split);
    equal_degree_split(field, &split, d, rng, out);
    equal_degree_split(field, &co, d, rng, out);
}

fn random_poly(field: &FieldSpec, max_deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = field.q();
    let coeffs: Vec<u32> = (0..max_deg).map(|_| rng.random_range(0..q) as u32).collect();
    Poly::from_indices(&coeffs)
}

fn seed_from(f: &Poly) -> u64 {
    // FNV-1a over the coefficient indices; only reproducibility matters here.
    let mut h: u64 = 0xcbf29ce484222325;
    for &c in f.coeff_indices() {
        h ^= c as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Complete factorization into `unit * prod(monic irreducible^mult)`.
pub fn factor(field: &FieldSpec, f: &Poly) -> Result<Factorization, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let unit = f.leading_coeff();
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from(f));
    for (base, mult) in squarefree_decomposition(field, f) {
        for (block, d) in distinct_degree_split(field, &base) {
            let mut irreducibles = Vec::new();
            equal_degree_split(field, &block, d, &mut rng, &mut irreducibles);
            for irr in irreducibles {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { unit, factors })
}

/// Trial-division factorization: scans monic polynomials in ascending
/// (degree, index) order and divides out maximally. Ascending order means
/// every successful divisor is irreducible.
pub fn factor_trial_division(field: &FieldSpec, f: &Poly) -> Result<Factorization, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let unit = f.leading_coeff();
    let mut g = make_monic(field, f);
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    let mut d = 1usize;
    while !g.is_constant() {
        let dg = g.degree().unwrap();
        if dg < 2 * d {
            factors.push((g.clone(), 1));
            break;
        }
        for cand in enumerate_monic(field, d) {
            let mut mult = 0u32;
            loop {
                let (q, r) = divmod(field, &g, &cand).expect("nonzero divisor");
                if !r.is_zero() {
                    break;
                }
                g = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((cand, mult));
                if g.is_constant() {
                    break;
                }
            }
        }
        d += 1;
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { unit, factors })
}
