use ffsmooth_core::polyring::{self, Poly};
use ffsmooth_core::FieldSpec;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Instant;

type Key = Vec<(u64, u32)>;

fn key(field: &FieldSpec, f: &BTreeMap<Poly, u32>) -> Key {
    f.iter().map(|(p, &m)| (polyring::poly_index_u64(field, p).unwrap(), m)).collect()
}

// candidate variants:
//   0: all monic divisors (baseline)
//   1: exclude h in {1, N}
//   2: exclude constant h only (keep h = N)
fn candidates(field: &FieldSpec, factors: &BTreeMap<Poly, u32>, variant: u8) -> Vec<Poly> {
    let facs: Vec<(&Poly, u32)> = factors.iter().map(|(f, &m)| (f, m)).collect();
    let mut exps = vec![0u32; facs.len()];
    let mut out = std::collections::BTreeSet::new();
    loop {
        let mut m = Poly::one();
        let mut nm = Poly::one();
        for (i, &(f, mult)) in facs.iter().enumerate() {
            for _ in 0..exps[i] { m = polyring::mul(field, &m, f); }
            for _ in exps[i]..mult { nm = polyring::mul(field, &nm, f); }
        }
        let trivial_pair = m.is_constant() || nm.is_constant(); // h = 1 or h = N
        let skip = match variant {
            1 => trivial_pair,
            2 => m.is_constant(),
            _ => false,
        };
        if !skip {
            let s = polyring::add(field, &m, &nm);
            if !s.is_constant() {
                for (irr, _) in polyring::factor(field, &s).unwrap().factors {
                    out.insert(irr);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == exps.len() {
                return out.into_iter().collect();
            }
            exps[i] += 1;
            if exps[i] <= facs[i].1 { break; }
            exps[i] = 0;
            i += 1;
        }
    }
}

fn count(field: &FieldSpec, factors: &BTreeMap<Poly, u32>, rem: u32, variant: u8,
         cmemo: &mut HashMap<Key, Vec<Poly>>, memo: &mut HashMap<(Key, u32), u64>) -> u64 {
    if rem == 0 { return 1; }
    let k = (key(field, factors), rem);
    if let Some(&hit) = memo.get(&k) { return hit; }
    let ck = key(field, factors);
    let cands = cmemo.entry(ck).or_insert_with(|| candidates(field, factors, variant)).clone();
    let mut total = 0;
    for g in cands {
        let mut next = factors.clone();
        *next.entry(g).or_insert(0) += 1;
        total += count(field, &next, rem - 1, variant, cmemo, memo);
    }
    memo.insert(k, total);
    total
}

fn main() {
    let f3 = Arc::new(FieldSpec::new_prime_power(3).unwrap());
    let mut seed = BTreeMap::new();
    seed.insert(Poly::x(), 1u32);
    for variant in [1u8, 2] {
        for appended in [6u32, 7] {
            let t = Instant::now();
            let mut cmemo = HashMap::new();
            let mut memo = HashMap::new();
            let n = count(&f3, &seed, appended, variant, &mut cmemo, &mut memo);
            println!("variant={variant} appended={appended}: sequences={n} ({:?})", t.elapsed());
        }
    }
}
