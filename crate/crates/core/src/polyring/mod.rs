//! The ring `F_q[X]`: dense univariate polynomials over a finite field.
//!
//! `Poly` stores element indices in ascending degree order; the vector is
//! empty for the zero polynomial and otherwise ends in a nonzero coefficient.
//! The canonical total order ("index order") reads the coefficient vector as
//! a base-`q` integer, which extends the prime-field convention to every `q`
//! and refines ordering by degree.

mod counts;
mod factor;

pub use counts::{
    count_irreducible, count_monic_irreducible, count_squarefree_below, count_squarefree_exact,
    irreducible_count_sandwich_holds,
};
pub use factor::{factor, factor_trial_division, squarefree_decomposition, Factorization};

use crate::gf::{FFElement, FieldSpec};
use num_bigint::BigUint;
use num_traits::Zero;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("argument out of range: {0}")]
    OutOfRange(&'static str),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Dense polynomial; `coeffs[i]` is the element index of the `X^i` coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    /// Index order: by degree, then coefficient vectors compared from the
    /// leading coefficient down.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    pub fn x() -> Poly {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn constant(c: FFElement) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c.0] }
        }
    }

    /// Builds a polynomial from element indices, stripping trailing zeros.
    pub fn from_indices(coeffs: &[u32]) -> Poly {
        let mut coeffs = coeffs.to_vec();
        while let Some(0) = coeffs.last() {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> FFElement {
        FFElement(*self.coeffs.get(i).unwrap_or(&0))
    }

    pub fn coeff_indices(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> FFElement {
        FFElement(*self.coeffs.last().unwrap_or(&0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }
}

// ---- Index order ----

/// Canonical index of `f`: its coefficient vector read as a base-`q` integer.
pub fn poly_index(field: &FieldSpec, f: &Poly) -> BigUint {
    let q = BigUint::from(field.q());
    let mut acc = BigUint::zero();
    for &c in f.coeffs.iter().rev() {
        acc = acc * &q + BigUint::from(c);
    }
    acc
}

/// `poly_index` when it fits in a `u64`.
pub fn poly_index_u64(field: &FieldSpec, f: &Poly) -> Option<u64> {
    let q = field.q();
    let mut acc: u64 = 0;
    for &c in f.coeffs.iter().rev() {
        acc = acc.checked_mul(q)?.checked_add(c as u64)?;
    }
    Some(acc)
}

/// Inverse of [`poly_index`].
pub fn index_to_poly(field: &FieldSpec, index: &BigUint) -> Poly {
    let q = BigUint::from(field.q());
    let mut idx = index.clone();
    let mut coeffs = Vec::new();
    while !idx.is_zero() {
        let digit = (&idx % &q).to_u64_digits();
        coeffs.push(*digit.first().unwrap_or(&0) as u32);
        idx /= &q;
    }
    Poly { coeffs }
}

/// Inverse of [`poly_index_u64`].
pub fn index_to_poly_u64(field: &FieldSpec, mut index: u64) -> Poly {
    let q = field.q();
    let mut coeffs = Vec::new();
    while index > 0 {
        coeffs.push((index % q) as u32);
        index /= q;
    }
    Poly { coeffs }
}

// ---- Arithmetic ----

pub fn add(field: &FieldSpec, f: &Poly, g: &Poly) -> Poly {
    let (long, short) = if f.coeffs.len() >= g.coeffs.len() { (f, g) } else { (g, f) };
    let mut out = long.coeffs.clone();
    for (i, &c) in short.coeffs.iter().enumerate() {
        out[i] = field.add(FFElement(out[i]), FFElement(c)).0;
    }
    Poly::from_indices(&out)
}

pub fn neg(field: &FieldSpec, f: &Poly) -> Poly {
    Poly {
        coeffs: f.coeffs.iter().map(|&c| field.neg(FFElement(c)).0).collect(),
    }
}

pub fn sub(field: &FieldSpec, f: &Poly, g: &Poly) -> Poly {
    add(field, f, &neg(field, g))
}

pub fn mul(field: &FieldSpec, f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() || g.is_zero() {
        return Poly::zero();
    }
    let mut out = vec![FFElement::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
    for (i, &fc) in f.coeffs.iter().enumerate() {
        if fc == 0 {
            continue;
        }
        let fc = FFElement(fc);
        for (j, &gc) in g.coeffs.iter().enumerate() {
            if gc == 0 {
                continue;
            }
            out[i + j] = field.add(out[i + j], field.mul(fc, FFElement(gc)));
        }
    }
    Poly::from_indices(&out.iter().map(|e| e.0).collect::<Vec<_>>())
}

/// Multiplies by a scalar.
pub fn scale(field: &FieldSpec, f: &Poly, c: FFElement) -> Poly {
    if c.is_zero() {
        return Poly::zero();
    }
    Poly {
        coeffs: f.coeffs.iter().map(|&x| field.mul(FFElement(x), c).0).collect(),
    }
}

/// Euclidean division: `f = q*g + r` with `deg r < deg g`.
pub fn divmod(field: &FieldSpec, f: &Poly, g: &Poly) -> Result<(Poly, Poly), PolyError> {
    if g.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let dg = g.coeffs.len() - 1;
    if f.coeffs.len() <= dg {
        return Ok((Poly::zero(), f.clone()));
    }
    let lead_inv = field.inv(g.leading_coeff()).expect("nonzero leading coefficient");
    let mut rem = f.coeffs.clone();
    let mut quot = vec![0u32; f.coeffs.len() - dg];
    for i in (dg..rem.len()).rev() {
        let c = FFElement(rem[i]);
        if c.is_zero() {
            continue;
        }
        let qc = field.mul(c, lead_inv);
        quot[i - dg] = qc.0;
        for (k, &gc) in g.coeffs.iter().enumerate() {
            let t = field.sub(FFElement(rem[i - dg + k]), field.mul(qc, FFElement(gc)));
            rem[i - dg + k] = t.0;
        }
    }
    rem.truncate(dg);
    Ok((Poly::from_indices(&quot), Poly::from_indices(&rem)))
}

pub fn rem(field: &FieldSpec, f: &Poly, g: &Poly) -> Result<Poly, PolyError> {
    Ok(divmod(field, f, g)?.1)
}

/// Exact division; panics if `g` does not divide `f`.
pub fn div_exact(field: &FieldSpec, f: &Poly, g: &Poly) -> Poly {
    let (q, r) = divmod(field, f, g).expect("nonzero divisor");
    assert!(r.is_zero(), "division was not exact");
    q
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(field: &FieldSpec, f: &Poly, g: &Poly) -> Poly {
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let r = rem(field, &a, &b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    make_monic(field, &a)
}

/// Scales a nonzero polynomial to leading coefficient 1 (zero stays zero).
pub fn make_monic(field: &FieldSpec, f: &Poly) -> Poly {
    if f.is_zero() || f.is_monic() {
        return f.clone();
    }
    let inv = field.inv(f.leading_coeff()).expect("nonzero leading coefficient");
    scale(field, f, inv)
}

/// Formal derivative; in characteristic `p` the derivative of `X^p` is zero.
pub fn derivative(field: &FieldSpec, f: &Poly) -> Poly {
    if f.coeffs.len() <= 1 {
        return Poly::zero();
    }
    let out: Vec<u32> = f
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| {
            let k = field.constant(i as u64);
            field.mul(k, FFElement(c)).0
        })
        .collect();
    Poly::from_indices(&out)
}

pub fn eval(field: &FieldSpec, f: &Poly, x: FFElement) -> FFElement {
    let mut acc = FFElement::ZERO;
    for &c in f.coeffs.iter().rev() {
        acc = field.add(field.mul(acc, x), FFElement(c));
    }
    acc
}

/// `base^exp mod m` with a `u64` exponent.
pub fn pow_mod(field: &FieldSpec, base: &Poly, mut exp: u64, m: &Poly) -> Poly {
    let mut base = rem(field, base, m).expect("nonzero modulus");
    let mut acc = rem(field, &Poly::one(), m).expect("nonzero modulus");
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(field, &mul(field, &acc, &base), m).expect("nonzero modulus");
        }
        base = rem(field, &mul(field, &base, &base), m).expect("nonzero modulus");
        exp >>= 1;
    }
    acc
}

/// `base^exp mod m` with a big exponent (used by equal-degree splitting).
pub fn pow_mod_big(field: &FieldSpec, base: &Poly, exp: &BigUint, m: &Poly) -> Poly {
    let mut base = rem(field, base, m).expect("nonzero modulus");
    let mut acc = rem(field, &Poly::one(), m).expect("nonzero modulus");
    for i in 0..exp.bits() {
        if exp.bit(i) {
            acc = rem(field, &mul(field, &acc, &base), m).expect("nonzero modulus");
        }
        base = rem(field, &mul(field, &base, &base), m).expect("nonzero modulus");
    }
    acc
}

/// `X^(q^j) mod m`, by iterated Frobenius powering.
pub fn frobenius_power(field: &FieldSpec, j: u32, m: &Poly) -> Poly {
    let mut h = rem(field, &Poly::x(), m).expect("nonzero modulus");
    for _ in 0..j {
        h = pow_mod(field, &h, field.q(), m);
    }
    h
}

// ---- Predicates ----

/// Irreducibility over `F_q` via the distinct-degree criterion:
/// `f` of degree `n` is irreducible iff `X^(q^n) = X (mod f)` and
/// `gcd(X^(q^(n/l)) - X, f) = 1` for every prime `l | n`.
pub fn is_irreducible(field: &FieldSpec, f: &Poly) -> Result<bool, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Ok(false); // units
    }
    let f = make_monic(field, f);
    if n == 1 {
        return Ok(true);
    }
    let x = Poly::x();
    for (l, _) in crate::arith::factorize(n as u64) {
        let h = frobenius_power(field, (n as u64 / l) as u32, &f);
        let g = gcd(field, &sub(field, &h, &x), &f);
        if !g.is_constant() {
            return Ok(false);
        }
    }
    let h = frobenius_power(field, n as u32, &f);
    Ok(sub(field, &h, &x).is_zero())
}

/// Trial-division irreducibility oracle: divides by every monic polynomial
/// of degree up to `deg f / 2`. Independent of the distinct-degree route.
pub fn is_irreducible_trial(field: &FieldSpec, f: &Poly) -> Result<bool, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Ok(false);
    }
    for d in 1..=n / 2 {
        for g in enumerate_monic(field, d) {
            if rem(field, f, &g).expect("nonzero divisor").is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff no irreducible square divides `f`. If the derivative vanishes on
/// a non-constant `f`, then `f` is a `p`-th power and not square-free.
pub fn is_squarefree(field: &FieldSpec, f: &Poly) -> Result<bool, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(true);
    }
    let d = derivative(field, f);
    if d.is_zero() {
        return Ok(false);
    }
    Ok(gcd(field, f, &d).is_constant())
}

/// Product of the distinct monic irreducible factors of `f` (monic radical).
pub fn squarefree_part(field: &FieldSpec, f: &Poly) -> Poly {
    let decomp = squarefree_decomposition(field, f);
    let mut acc = Poly::one();
    for (base, _) in decomp {
        acc = mul(field, &acc, &base);
    }
    acc
}

/// True iff every irreducible factor of `f` has degree at most `k`.
/// Constants are smooth for every `k`.
pub fn is_smooth(field: &FieldSpec, f: &Poly, k: usize) -> Result<bool, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if k == 0 {
        return Err(PolyError::OutOfRange("smoothness bound must be at least 1"));
    }
    if f.is_constant() {
        return Ok(true);
    }
    // Work on the radical, peeling off factors degree by degree with
    // gcd(X^(q^d) - X, g); once deg g < 2(d+1) the leftover is irreducible.
    let mut g = if is_squarefree(field, f)? {
        make_monic(field, f)
    } else {
        squarefree_part(field, f)
    };
    let x = Poly::x();
    let mut h = rem(field, &x, &g).expect("nonzero modulus");
    let mut d = 0usize;
    while !g.is_constant() {
        d += 1;
        if d > k {
            return Ok(false);
        }
        h = pow_mod(field, &h, field.q(), &g);
        let e = gcd(field, &sub(field, &h, &x), &g);
        if !e.is_constant() {
            g = div_exact(field, &g, &e);
            h = rem(field, &h, &g).expect("nonzero modulus");
        }
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < 2 * (d + 1) {
                // remaining factor is irreducible of degree dg
                return Ok(dg <= k);
            }
        }
    }
    Ok(true)
}

/// Polynomial Möbius function: `(-1)^k` on square-free products of `k`
/// distinct irreducibles (so 1 on units), 0 otherwise. Unit-invariant.
pub fn mobius(field: &FieldSpec, f: &Poly) -> Result<i32, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(1);
    }
    if !is_squarefree(field, f)? {
        return Ok(0);
    }
    // Count distinct irreducible factors by distinct-degree splitting; for a
    // square-free f, the degree-d part contributes deg/d factors.
    let mut g = make_monic(field, f);
    let x = Poly::x();
    let mut h = rem(field, &x, &g).expect("nonzero modulus");
    let mut k = 0usize;
    let mut d = 0usize;
    while !g.is_constant() {
        d += 1;
        h = pow_mod(field, &h, field.q(), &g);
        let e = gcd(field, &sub(field, &h, &x), &g);
        if !e.is_constant() {
            k += e.degree().unwrap() / d;
            g = div_exact(field, &g, &e);
            h = rem(field, &h, &g).expect("nonzero modulus");
        }
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < 2 * (d + 1) {
                k += 1;
                break;
            }
        }
    }
    Ok(if k % 2 == 0 { 1 } else { -1 })
}

// ---- Enumeration ----

/// The `index`-th monic polynomial of degree `t` (index order).
pub fn monic_by_index(field: &FieldSpec, t: usize, index: u64) -> Poly {
    let q = field.q();
    let mut coeffs = Vec::with_capacity(t + 1);
    let mut i = index;
    for _ in 0..t {
        coeffs.push((i % q) as u32);
        i /= q;
    }
    debug_assert_eq!(i, 0, "index out of range for degree-{t} enumeration");
    coeffs.push(1);
    Poly { coeffs }
}

/// All `q^t` monic polynomials of degree exactly `t`, in index order.
pub fn enumerate_monic<'a>(
    field: &'a FieldSpec,
    t: usize,
) -> impl Iterator<Item = Poly> + 'a {
    let count = field.q().checked_pow(t as u32).expect("enumeration range fits u64");
    (0..count).map(move |i| monic_by_index(field, t, i))
}

/// All monic irreducibles of degree exactly `k`, in index order.
pub fn enumerate_irreducible_monic(field: &FieldSpec, k: usize) -> Vec<Poly> {
    assert!(k >= 1, "irreducibles have degree at least 1");
    enumerate_monic(field, k)
        .filter(|f| is_irreducible(field, f).expect("nonzero candidate"))
        .collect()
}

// ---- Text format ----

/// Renders `f` as `c_d*X^d + ... + c_0`. Prime-field coefficients print as
/// integers, extension-field ones as `[c0,c1,...]` lists; unit coefficients
/// on non-constant terms are omitted. The zero polynomial prints as `0`.
pub fn to_text(field: &FieldSpec, f: &Poly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let coeff_text = |c: FFElement| -> String {
        if field.extension_degree() == 1 {
            format!("{}", c.index())
        } else {
            let v = field.coeffs(c);
            format!("[{}]", v.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
        }
    };
    let mut terms = Vec::new();
    for (i, &c) in f.coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let c = FFElement(c);
        let var = match i {
            0 => String::new(),
            1 => "X".to_string(),
            _ => format!("X^{i}"),
        };
        let term = if i == 0 {
            coeff_text(c)
        } else if c == FFElement::ONE {
            var
        } else {
            format!("{}*{}", coeff_text(c), var)
        };
        terms.push(term);
    }
    terms.join("+")
}

/// Parses the [`to_text`] format (also accepting lowercase `x` and spaces).
pub fn parse(field: &FieldSpec, s: &str) -> Result<Poly, PolyError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(PolyError::Parse("empty input".to_string()));
    }
    if compact == "0" {
        return Ok(Poly::zero());
    }
    let err = |m: &str| PolyError::Parse(format!("{m}: {s}"));
    let parse_coeff = |t: &str| -> Result<FFElement, PolyError> {
        if let Some(list) = t.strip_prefix('[') {
            let list = list.strip_suffix(']').ok_or_else(|| err("unclosed bracket"))?;
            let v: Vec<u64> = list
                .split(',')
                .map(|c| c.parse().map_err(|_| err("bad coefficient")))
                .collect::<Result<_, _>>()?;
            field.element_from_coeffs(&v).map_err(|_| err("coefficient out of range"))
        } else {
            // Bare integers denote prime-subfield constants.
            let v: u64 = t.parse().map_err(|_| err("bad coefficient"))?;
            if v >= field.p() {
                return Err(err("coefficient out of range"));
            }
            Ok(FFElement(v as u32))
        }
    };
    let mut acc = Poly::zero();
    for term in compact.split('+') {
        let term = term.replace('x', "X");
        let (coeff, power) = if let Some((c, v)) = term.split_once("*X") {
            let p = match v.strip_prefix('^') {
                Some(e) => e.parse().map_err(|_| err("bad exponent"))?,
                None if v.is_empty() => 1usize,
                None => return Err(err("malformed term")),
            };
            (parse_coeff(c)?, p)
        } else if let Some(v) = term.strip_prefix('X') {
            let p = match v.strip_prefix('^') {
                Some(e) => e.parse().map_err(|_| err("bad exponent"))?,
                None if v.is_empty() => 1usize,
                None => return Err(err("malformed term")),
            };
            (FFElement::ONE, p)
        } else {
            (parse_coeff(&term)?, 0usize)
        };
        if power > 4096 {
            return Err(err("exponent too large"));
        }
        let mut mono = vec![0u32; power + 1];
        mono[power] = coeff.0;
        acc = add(field, &acc, &Poly::from_indices(&mono));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> FieldSpec {
        FieldSpec::new(2, 1, None).unwrap()
    }

    fn p(field: &FieldSpec, s: &str) -> Poly {
        parse(field, s).unwrap()
    }

    #[test]
    fn gcd_over_f2() {
        let f = f2();
        // X^2 + X = X(X+1)
        assert_eq!(gcd(&f, &p(&f, "X^2+X"), &p(&f, "X+1")), p(&f, "X+1"));
        assert_eq!(gcd(&f, &Poly::zero(), &Poly::zero()), Poly::zero());
    }

    #[test]
    fn derivative_of_xp_vanishes() {
        for prime in [2u64, 3, 5, 7] {
            let f = FieldSpec::new(prime, 1, None).unwrap();
            let mut coeffs = vec![0u32; prime as usize + 1];
            coeffs[prime as usize] = 1;
            assert!(derivative(&f, &Poly::from_indices(&coeffs)).is_zero());
        }
    }

    #[test]
    fn divmod_contract() {
        let f = f2();
        let (q, r) = divmod(&f, &p(&f, "X^3+1"), &p(&f, "X+1")).unwrap();
        assert_eq!(q, p(&f, "X^2+X+1"));
        assert!(r.is_zero());
        assert_eq!(
            divmod(&f, &Poly::one(), &Poly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn irreducibility_cubics_over_f2() {
        let f = f2();
        assert!(is_irreducible(&f, &p(&f, "X^3+X+1")).unwrap());
        assert!(!is_irreducible(&f, &p(&f, "X^2+1")).unwrap()); // (X+1)^2
        assert!(!is_irreducible(&f, &Poly::one()).unwrap()); // unit
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        assert!(is_irreducible(&f7, &p(&f7, "X^2+1")).unwrap()); // -1 non-residue mod 7
    }

    #[test]
    fn irreducible_routes_agree() {
        for (pr, n) in [(2u64, 1u32), (3, 1), (5, 1), (2, 2), (3, 2)] {
            let f = FieldSpec::new(pr, n, None).unwrap();
            for deg in 1..=4usize {
                for cand in enumerate_monic(&f, deg) {
                    assert_eq!(
                        is_irreducible(&f, &cand).unwrap(),
                        is_irreducible_trial(&f, &cand).unwrap(),
                        "{} over {:?}",
                        to_text(&f, &cand),
                        f
                    );
                }
            }
        }
    }

    #[test]
    fn squarefree_cases() {
        let f = f2();
        assert!(is_squarefree(&f, &p(&f, "X^2+X")).unwrap());
        assert!(!is_squarefree(&f, &p(&f, "X^2")).unwrap());
        assert!(is_squarefree(&f, &Poly::one()).unwrap());
        // X^p + c has zero derivative: a p-th power
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        assert!(!is_squarefree(&f3, &p(&f3, "X^3+1")).unwrap());
    }

    #[test]
    fn mobius_values() {
        let f = f2();
        assert_eq!(mobius(&f, &Poly::x()).unwrap(), -1);
        assert_eq!(mobius(&f, &p(&f, "X^2")).unwrap(), 0);
        assert_eq!(mobius(&f, &p(&f, "X^2+X")).unwrap(), 1);
        assert_eq!(mobius(&f, &Poly::one()).unwrap(), 1);
    }

    #[test]
    fn mobius_matches_factorization_exhaustively() {
        for (pr, n) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let f = FieldSpec::new(pr, n, None).unwrap();
            for deg in 1..=4usize {
                for cand in enumerate_monic(&f, deg) {
                    let fac = factor(&f, &cand).unwrap();
                    let expect = if fac.factors.iter().any(|&(_, m)| m > 1) {
                        0
                    } else if fac.factors.len() % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    assert_eq!(mobius(&f, &cand).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn smoothness_cases() {
        let f = f2();
        assert!(is_smooth(&f, &p(&f, "X^2+X"), 1).unwrap());
        assert!(!is_smooth(&f, &p(&f, "X^2+X+1"), 1).unwrap());
        assert!(is_smooth(&f, &p(&f, "X+1"), 1).unwrap());
        assert!(is_smooth(&f, &p(&f, "X^2+X+1"), 2).unwrap());
        // multiplicities do not affect smoothness
        assert!(is_smooth(&f, &p(&f, "X^4+X^2"), 1).unwrap()); // X^2 (X+1)^2
    }

    #[test]
    fn smoothness_matches_factor_exhaustively() {
        for (pr, n) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let f = FieldSpec::new(pr, n, None).unwrap();
            for deg in 1..=5usize {
                for cand in enumerate_monic(&f, deg) {
                    let fac = factor(&f, &cand).unwrap();
                    let maxdeg = fac
                        .factors
                        .iter()
                        .map(|(g, _)| g.degree().unwrap())
                        .max()
                        .unwrap_or(0);
                    for k in 1..=5usize {
                        assert_eq!(
                            is_smooth(&f, &cand, k).unwrap(),
                            maxdeg <= k,
                            "{} k={k}",
                            to_text(&f, &cand)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_monic_order_and_count() {
        let f = f2();
        let m1: Vec<String> = enumerate_monic(&f, 1).map(|g| to_text(&f, &g)).collect();
        assert_eq!(m1, vec!["X", "X+1"]);
        assert_eq!(enumerate_monic(&f, 2).count(), 4);
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        let m0: Vec<String> = enumerate_monic(&f3, 0).map(|g| to_text(&f3, &g)).collect();
        assert_eq!(m0, vec!["1"]);
    }

    #[test]
    fn irreducible_enumeration_examples() {
        let f = f2();
        let cubics: Vec<String> = enumerate_irreducible_monic(&f, 3)
            .iter()
            .map(|g| to_text(&f, g))
            .collect();
        assert_eq!(cubics, vec!["X^3+X+1", "X^3+X^2+1"]);
        let quads: Vec<String> = enumerate_irreducible_monic(&f, 2)
            .iter()
            .map(|g| to_text(&f, g))
            .collect();
        assert_eq!(quads, vec!["X^2+X+1"]);
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        let lins: Vec<String> = enumerate_irreducible_monic(&f3, 1)
            .iter()
            .map(|g| to_text(&f3, g))
            .collect();
        assert_eq!(lins, vec!["X", "X+1", "X+2"]);
    }

    #[test]
    fn index_order_examples() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        // I(3X + 2) = 2 + 3*7 = 23
        assert_eq!(poly_index(&f7, &p(&f7, "3*X+2")), BigUint::from(23u32));
        let f = f2();
        assert_eq!(poly_index(&f, &p(&f, "X^2+X+1")), BigUint::from(7u32));
    }

    #[test]
    fn text_round_trip_extension_field() {
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        let g = Poly::from_indices(&[2, 0, 3, 1]);
        let s = to_text(&f4, &g);
        assert_eq!(parse(&f4, &s).unwrap(), g);
    }

    proptest! {
        #[test]
        fn text_round_trip_random(qsel in 0usize..4, coeffs in proptest::collection::vec(0u32..7, 0..8)) {
            let specs = [(2u64, 1u32), (3, 1), (7, 1), (2, 2)];
            let (pr, n) = specs[qsel];
            let field = FieldSpec::new(pr, n, None).unwrap();
            let capped: Vec<u32> = coeffs.iter().map(|&c| c % field.q() as u32).collect();
            let f = Poly::from_indices(&capped);
            let text = to_text(&field, &f);
            prop_assert_eq!(parse(&field, &text).unwrap(), f);
        }

        #[test]
        fn index_round_trip_random(qsel in 0usize..4, idx in 0u64..100_000) {
            let specs = [(2u64, 1u32), (3, 1), (7, 1), (3, 2)];
            let (pr, n) = specs[qsel];
            let field = FieldSpec::new(pr, n, None).unwrap();
            let f = index_to_poly_u64(&field, idx);
            prop_assert_eq!(poly_index_u64(&field, &f), Some(idx));
            let big = index_to_poly(&field, &BigUint::from(idx));
            prop_assert_eq!(big, f);
        }

        #[test]
        fn divmod_reconstructs(fa in proptest::collection::vec(0u32..5, 0..10),
                               fb in proptest::collection::vec(0u32..5, 1..6)) {
            let field = FieldSpec::new(5, 1, None).unwrap();
            let f = Poly::from_indices(&fa);
            let g = Poly::from_indices(&fb);
            prop_assume!(!g.is_zero());
            let (q, r) = divmod(&field, &f, &g).unwrap();
            let back = add(&field, &mul(&field, &q, &g), &r);
            prop_assert_eq!(back, f);
            if let (Some(dr), Some(dg)) = (r.degree(), g.degree()) {
                prop_assert!(dr < dg);
            }
        }
    }
}
