//! Finite fields `GF(p^k)` with table-driven arithmetic.
//!
//! Elements are encoded as integers `0..q`: the coefficient vector
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` maps to `sum c_i p^i`. The modulus is
//! a fixed Conway polynomial where one is embedded, so every field (and every
//! group built from it) is bit-reproducible.

use crate::error::Error;
use crate::numtheory::{prime_factors, prime_power_decompose};

/// Largest field order with tables.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Conway polynomials, coefficients from `x^0` up to the leading `1`.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

/// An element of some [`Field`], as its integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub u32);

#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: FieldElem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Field {
    /// `GF(q)` for a prime power `q <= MAX_FIELD_ORDER`.
    pub fn new(q: u64) -> Result<Field, Error> {
        if q > MAX_FIELD_ORDER {
            return Err(Error::CapExceeded {
                what: "field order",
                limit: MAX_FIELD_ORDER as u128,
                actual: q as u128,
            });
        }
        let (p, k) = match q {
            0 | 1 => None,
            _ => prime_power_decompose(q)?,
        }
        .ok_or(Error::NotPrimePower(q as u128))?;
        let (p, k) = (p as u32, k);
        let modulus = conway_polynomial(p, k).unwrap_or_else(|| first_irreducible(p, k));
        Ok(Field::with_modulus(p, k, modulus))
    }

    fn with_modulus(p: u32, k: u32, modulus: Vec<u32>) -> Field {
        let q = p.pow(k);
        let mut field = Field {
            p,
            k,
            q,
            modulus,
            generator: FieldElem(0),
            exp: Vec::new(),
            log: Vec::new(),
        };
        let g = (1..q)
            .map(FieldElem)
            .find(|&g| field.slow_order(g) == (q - 1) as u64)
            .expect("multiplicative group of a field is cyclic");
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = FieldElem(1);
        for i in 0..q - 1 {
            exp.push(x.0);
            log[x.0 as usize] = i;
            x = field.slow_mul(x, g);
        }
        field.generator = g;
        field.exp = exp;
        field.log = log;
        field
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element used for the log tables; `x` itself for Conway moduli.
    pub fn primitive_element(&self) -> FieldElem {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    fn digits(&self, a: FieldElem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.k)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u32]) -> FieldElem {
        FieldElem(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.k == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let d: Vec<u32> = self
            .digits(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.encode(&d)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        let n = self.q - 1;
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        FieldElem(self.exp[e as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.0 == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(FieldElem(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if a.0 == 0 {
            return if e == 0 { FieldElem(1) } else { FieldElem(0) };
        }
        let n = (self.q - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        FieldElem(self.exp[l as usize])
    }

    /// Discrete logarithm to the base [`Field::primitive_element`].
    pub fn log(&self, a: FieldElem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    fn slow_mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let prod = poly_mul(&self.digits(a), &self.digits(b), self.p);
        let r = poly_rem(&prod, &self.modulus, self.p);
        let mut d = r;
        d.resize(self.k as usize, 0);
        self.encode(&d)
    }

    fn slow_order(&self, a: FieldElem) -> u64 {
        let n = (self.q - 1) as u64;
        let mut order = n;
        for r in prime_factors(n) {
            while order.is_multiple_of(r) && self.slow_pow(a, order / r) == FieldElem(1) {
                order /= r;
            }
        }
        order
    }

    fn slow_pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let (mut acc, mut b) = (FieldElem(1), a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        acc
    }
}

fn conway_polynomial(p: u32, k: u32) -> Option<Vec<u32>> {
    if k == 1 {
        return Some(vec![0, 1]);
    }
    CONWAY
        .iter()
        .find(|&&(cp, ck, _)| cp == p && ck == k)
        .map(|&(_, _, c)| c.to_vec())
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - (lead * c) % p) % p;
        }
        a = trim(a);
    }
    a
}

/// `true` if the monic polynomial `f` of degree `k` has no factor of degree
/// `1..=k/2`, by trial division over all monic candidates.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() as u32 - 1;
    for d in 1..=k / 2 {
        for tail in 0..p.pow(d) {
            let mut g: Vec<u32> = (0..d).map(|i| tail / p.pow(i) % p).collect();
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically first monic irreducible polynomial of degree `k`.
fn first_irreducible(p: u32, k: u32) -> Vec<u32> {
    (0..p.pow(k))
        .map(|tail| {
            let mut f: Vec<u32> = (0..k).map(|i| tail / p.pow(i) % p).collect();
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Field sizes `p^k` (k >= 1, `p` prime) in `2..=cap`, ascending.
pub fn prime_powers_up_to(cap: u64) -> Vec<u64> {
    (2..=cap)
        .filter(|&n| matches!(prime_power_decompose(n), Ok(Some(_))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields_have_expected_shape() {
        let f = Field::new(8).unwrap();
        assert_eq!((f.characteristic(), f.degree(), f.order()), (2, 3, 8));
        let f = Field::new(13).unwrap();
        assert_eq!(f.mul(FieldElem(5), FieldElem(8)), FieldElem(1));
        assert!(Field::new(6).is_err());
        assert!(Field::new(1).is_err());
    }

    #[test]
    fn conway_polynomials_are_primitive() {
        for &(p, k, c) in CONWAY {
            assert!(is_irreducible(c, p), "GF({p}^{k}) modulus reducible");
            let f = Field::new(p.pow(k) as u64).unwrap();
            // x is encoded as p
            assert_eq!(f.primitive_element(), FieldElem(p), "GF({p}^{k})");
        }
    }

    #[test]
    fn fallback_polynomial_is_irreducible() {
        let f = first_irreducible(2, 9);
        assert_eq!(f.len(), 10);
        assert!(is_irreducible(&f, 2));
        let field = Field::new(512).unwrap();
        assert_eq!(field.modulus(), &f[..]);
    }

    #[test]
    fn multiplication_matches_polynomial_arithmetic() {
        for q in [4u64, 9, 16, 25, 27, 49, 64] {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                }
            }
        }
    }

    #[test]
    fn prime_powers_listing() {
        assert_eq!(prime_powers_up_to(10), vec![2, 3, 4, 5, 7, 8, 9]);
    }
}
