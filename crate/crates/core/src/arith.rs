//! Integer helpers: primality, factorization of group orders, binomials.
//!
//! Group orders reach `q^r - 1` with `q^r` up to the 64-bit range, so the
//! factorizer combines trial division with Brent's cycle-finding variant of
//! Pollard rho. Everything here is deterministic.

use num_bigint::BigUint;
use num_traits::One;

/// Deterministic Miller-Rabin for `u64`.
///
/// The base set `{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}` is known to be
/// exact for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One Brent-rho round; returns a non-trivial factor of composite odd `n`.
fn brent_rho(n: u64, seed: u64) -> u64 {
    let c = 1 + seed % (n - 1);
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut x = seed % n;
    let mut y = x;
    let mut d = 1u64;
    let mut saved = x;
    let mut power = 1u64;
    let mut lam = 1u64;
    // Brent's improvement: batch gcd every 128 steps.
    while d == 1 {
        if power == lam {
            saved = x;
            power *= 2;
            lam = 0;
        }
        let mut q = 1u64;
        let batch = 128.min(power - lam);
        for _ in 0..batch {
            x = f(x);
            let diff = x.abs_diff(saved);
            if diff == 0 {
                return 0; // cycle without factor; caller reseeds
            }
            q = mul_mod(q, diff, n);
        }
        lam += batch;
        y = x;
        d = gcd(q, n);
    }
    if d != n {
        return d;
    }
    // Batch overshot; replay one step at a time.
    let mut x = saved;
    loop {
        x = f(x);
        let d = gcd(x.abs_diff(y), n);
        if d > 1 {
            return if d == n { 0 } else { d };
        }
    }
}

/// Prime factorization of `n` as sorted `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n < 2 {
        return out;
    }
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => out.push((p, 1)),
    };
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            push(m, &mut out);
            continue;
        }
        let mut seed = 2u64;
        let d = loop {
            let d = brent_rho(m, seed);
            if d != 0 && d != m {
                break d;
            }
            seed += 1;
        };
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = ds.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            ds.extend(prev.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Writes `n = p^k` with `p` prime, or `None` if `n` is not a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n);
    match f.as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Classical Möbius function on `u64` (used by the irreducible-count formula).
pub fn mobius_int(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `base^exp` as a big integer.
pub fn big_pow(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(exp.try_into().expect("exponent fits u32"))
}
