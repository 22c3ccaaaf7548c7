//! Permutations of `{0, .., n-1}` stored as full image arrays.
//!
//! Composition follows the right-action convention used throughout group
//! theory: `a * b` applies `a` first, then `b`, so `x^(ab) = (x^a)^b`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;

use crate::error::Error;

/// A permutation of a fixed finite point set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Hash for Perm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Perm, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotBijective);
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Perm, Error> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let xu = x as usize;
                if xu >= degree {
                    return Err(Error::PointOutOfRange { point: xu, degree });
                }
                if touched[xu] {
                    return Err(Error::MalformedCycle(format!(
                        "point {x} appears more than once"
                    )));
                }
                touched[xu] = true;
                images[xu] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        // x^(g^-1 s g): send x^g to (x^s)^g
        let mut out = vec![0u32; self.images.len()];
        for (x, &sx) in self.images.iter().enumerate() {
            out[g.images[x] as usize] = g.images[sx as usize];
        }
        Perm { images: out }
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().then(&b.inverse()).then(a).then(b)
    }

    pub fn pow(&self, mut e: u128) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> u128 {
        self.cycles()
            .iter()
            .fold(1u128, |acc, c| lcm(acc, c.len() as u128))
    }

    /// Smallest point moved, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Places `self` on the points `offset..offset+degree` of a larger set.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Perm { images }
    }

    /// Restriction to the first `n` points, which must form an invariant set.
    pub fn restricted(&self, n: usize) -> Result<Perm, Error> {
        let images = self.images[..n].to_vec();
        if images.iter().any(|&x| x as usize >= n) {
            return Err(Error::NotInvariant);
        }
        Ok(Perm { images })
    }

    /// Restriction to the points `range`, which must form an invariant set.
    pub fn restricted_to(&self, start: usize, len: usize) -> Result<Perm, Error> {
        let mut images = Vec::with_capacity(len);
        for x in start..start + len {
            let y = self.images[x] as usize;
            if y < start || y >= start + len {
                return Err(Error::NotInvariant);
            }
            images.push((y - start) as u32);
        }
        Ok(Perm { images })
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

/// Parses cycle notation such as `(0 1 2)(3 4)` or `()`.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm, Error> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner_start = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::MalformedCycle(format!("expected '(' at {rest:?}")))?;
        let close = inner_start
            .find(')')
            .ok_or_else(|| Error::MalformedCycle("unterminated cycle".into()))?;
        let body = &inner_start[..close];
        if body.contains('(') {
            return Err(Error::MalformedCycle("nested '('".into()));
        }
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let x: u32 = tok
                .parse()
                .map_err(|_| Error::MalformedCycle(format!("bad point {tok:?}")))?;
            cycle.push(x);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = inner_start[close + 1..].trim_start();
    }
    Perm::from_cycles(degree, &cycles)
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}
