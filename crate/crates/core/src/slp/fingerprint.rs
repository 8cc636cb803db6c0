//! Randomized modular fingerprints for equality of long generated words.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Slp, Sym};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityOptions {
    /// Words up to this length are compared symbol by symbol.
    pub exact_threshold: u64,
    /// Number of independent primes.
    pub primes: usize,
    pub seed: u64,
}

impl Default for EqualityOptions {
    fn default() -> Self {
        EqualityOptions {
            exact_threshold: 4096,
            primes: 3,
            seed: 0x5eed_cafe,
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(super) fn draw_primes(seed: u64, k: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let x = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(x) {
            out.push(x);
        }
    }
    out
}

// (value mod p, base^len mod p) of the axiom's word.
fn fingerprint(p: &Slp, base: u64, prime: u64) -> (u64, u64) {
    let mut val = vec![0u64; p.num_rules()];
    let mut pw = vec![1u64; p.num_rules()];
    for i in 0..p.num_rules() {
        let (mut v, mut w) = (0u64, 1u64 % prime);
        for s in p.rule(i) {
            let (sv, sw) = match *s {
                Sym::T(c) => (
                    p.alphabet().index_of(c).unwrap() as u64 % prime,
                    base % prime,
                ),
                Sym::N(j) => (val[j], pw[j]),
            };
            v = (mul_mod(v, sw, prime) + sv) % prime;
            w = mul_mod(w, sw, prime);
        }
        val[i] = v;
        pw[i] = w;
    }
    (val[p.axiom()], pw[p.axiom()])
}

pub(super) fn fingerprints_agree(a: &Slp, b: &Slp, opts: &EqualityOptions) -> bool {
    let base = a.alphabet().len().max(2) as u64;
    draw_primes(opts.seed, opts.primes)
        .into_iter()
        .all(|prime| fingerprint(a, base, prime) == fingerprint(b, base, prime))
}
