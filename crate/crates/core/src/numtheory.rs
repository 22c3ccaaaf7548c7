//! Primality, prime powers, and the classification of consecutive prime
//! powers into Mersenne, Fermat, and the single `8, 9` exception.

use serde::Serialize;

use crate::error::Error;

/// Witnesses that make Miller-Rabin deterministic on all 64-bit inputs.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
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

/// `floor(n^(1/k))` by integer binary search.
pub fn integer_root(n: u64, k: u32) -> u64 {
    assert!(k >= 1);
    if k == 1 || n < 2 {
        return n;
    }
    let (mut lo, mut hi) = (1u64, 1u64 << (64 / k + 1).min(63));
    // invariant: lo^k <= n < hi^k
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match checked_pow(mid, k) {
            Some(v) if v <= n => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}

fn checked_pow(b: u64, k: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(b)?;
    }
    Some(acc)
}

/// `n = p^k` with `p` prime, if such a decomposition exists.
pub fn prime_power_decompose(n: u64) -> Result<Option<(u64, u32)>, Error> {
    if !(2..1 << 63).contains(&n) {
        return Err(Error::Precondition(format!(
            "prime_power_decompose needs 2 <= n < 2^63, got {n}"
        )));
    }
    for k in 1..64u32 {
        let r = integer_root(n, k);
        if r < 2 {
            break;
        }
        if checked_pow(r, k) == Some(n) && is_prime(r) {
            return Ok(Some((r, k)));
        }
    }
    Ok(None)
}

/// Distinct prime factors in increasing order (trial division; `n >= 1`).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime factorization with multiplicities.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some(k)` when `n = 2^k`.
pub fn log2_exact(n: u64) -> Option<u32> {
    (n != 0 && n.is_power_of_two()).then(|| n.trailing_zeros())
}

/// `p = 2^(2^m) + 1` and prime. Within 64 bits: 3, 5, 17, 257, 65537.
pub fn is_fermat_prime(p: u64) -> bool {
    match log2_exact(p.wrapping_sub(1)) {
        Some(k) if k >= 1 && k.is_power_of_two() => is_prime(p),
        _ => false,
    }
}

/// The `m` with `p = 2^(2^m) + 1`, for a Fermat prime `p`.
pub fn fermat_index(p: u64) -> Option<u32> {
    if !is_fermat_prime(p) {
        return None;
    }
    log2_exact(p - 1).map(|k| k.trailing_zeros())
}

pub fn is_mersenne_prime(p: u64) -> bool {
    is_prime(p) && log2_exact(p + 1).is_some()
}

/// Membership in `{2, 7, 13} ∪ {Fermat primes}`. Exact for 64-bit inputs
/// only: whether further Fermat primes exist is open.
pub fn in_pi0(p: u64) -> Result<bool, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p as u128));
    }
    Ok(matches!(p, 2 | 7 | 13) || is_fermat_prime(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    /// `q` prime and `q + 1 = 2^k`.
    MersennePair,
    /// `q = 8`, `q + 1 = 9`.
    EightNine,
    /// `q = 2^(2^m)` and `q + 1` prime.
    FermatPair { m: u32 },
    /// `q` or `q + 1` is not a prime power.
    NotApplicable,
    /// Both are prime powers yet no case applies; never observed.
    Unexplained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Trichotomy {
    pub q: u64,
    pub outcome: Outcome,
    /// Prime-power decompositions of `q` and `q + 1`, when both exist.
    pub lower: Option<(u64, u32)>,
    pub upper: Option<(u64, u32)>,
}

/// All cases whose defining condition holds for the pair `(q, q + 1)`.
pub fn matching_cases(lower: (u64, u32), upper: (u64, u32)) -> Vec<Outcome> {
    let mut out = Vec::new();
    if lower.1 == 1 && upper.0 == 2 {
        out.push(Outcome::MersennePair);
    }
    if lower == (2, 3) && upper == (3, 2) {
        out.push(Outcome::EightNine);
    }
    if lower.0 == 2 && lower.1.is_power_of_two() && upper.1 == 1 {
        out.push(Outcome::FermatPair {
            m: lower.1.trailing_zeros(),
        });
    }
    out
}

pub fn classify_consecutive(q: u64) -> Result<Trichotomy, Error> {
    if q < 2 {
        return Err(Error::Precondition(format!("classify_consecutive needs q >= 2, got {q}")));
    }
    let lower = prime_power_decompose(q)?;
    let upper = prime_power_decompose(q + 1)?;
    let outcome = match (lower, upper) {
        (Some(l), Some(u)) => {
            let cases = matching_cases(l, u);
            match cases.as_slice() {
                [one] => *one,
                _ => Outcome::Unexplained,
            }
        }
        _ => Outcome::NotApplicable,
    };
    let both = lower.is_some() && upper.is_some();
    Ok(Trichotomy {
        q,
        outcome,
        lower: if both { lower } else { None },
        upper: if both { upper } else { None },
    })
}
