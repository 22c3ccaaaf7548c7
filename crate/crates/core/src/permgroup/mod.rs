//! Permutation-group engine.
//!
//! A [`PermGroup`] is a generating set plus a lazily built stabilizer chain.
//! Once the chain exists the group is immutable and can be shared freely.

mod blocks;
mod chain;
mod conjugacy;
mod coset;
pub(crate) mod normal;
pub(crate) mod random;

use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::Error;
use crate::perm::Perm;

pub use blocks::{is_primitive, minimal_block};
pub use chain::StabChain;
pub use conjugacy::are_conjugate_subgroups;
pub use coset::{coset_action, core, CosetAction, CosetTable, Homomorphism};
pub use normal::{
    conjugacy_class_reps, derived_series, derived_subgroup, is_solvable, minimal_normal_subgroups,
    normal_closure, socle,
};
pub use random::{seeded_rng, SeededRng};

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceLock<Arc<StabChain>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("gens", &self.gens)
            .finish()
    }
}

impl PermGroup {
    /// Group generated by `gens`, all of degree `degree`.
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<PermGroup, Error> {
        if degree == 0 {
            return Err(Error::Precondition("degree must be positive".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            gens,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            gens: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    pub(crate) fn from_chain(chain: StabChain) -> PermGroup {
        let g = PermGroup {
            degree: chain.degree(),
            gens: chain.strong_generators(),
            chain: OnceLock::new(),
        };
        let _ = g.chain.set(Arc::new(chain));
        g
    }

    pub(crate) fn with_gens_unchecked(degree: usize, gens: Vec<Perm>) -> PermGroup {
        PermGroup {
            degree,
            gens,
            chain: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Stable digest of the generating set, used to seed randomized steps.
    pub fn digest(&self) -> u64 {
        random::digest_perms(self.degree, &self.gens)
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            Arc::new(StabChain::build(self.degree, &self.gens, &[], self.digest()))
        })
    }

    /// A fresh chain whose base begins with `prefix`. Not cached.
    pub fn chain_with_base(&self, prefix: &[u32]) -> StabChain {
        StabChain::build(self.degree, &self.gens, prefix, self.digest())
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn checked_order(&self) -> Result<u128, Error> {
        self.chain().checked_order().ok_or(Error::OrderOverflow)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(Perm::is_identity)
    }

    pub fn contains(&self, x: &Perm) -> Result<bool, Error> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: x.degree(),
            });
        }
        Ok(self.has(x))
    }

    #[inline]
    pub(crate) fn has(&self, x: &Perm) -> bool {
        self.chain().contains(x)
    }

    /// `true` if every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.has(g))
    }

    /// Equality as subgroups of the same symmetric group.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// `true` if `self` is normalized by every generator of `ambient`.
    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        ambient
            .gens
            .iter()
            .all(|t| self.gens.iter().all(|n| self.has(&n.conjugate_by(t))))
    }

    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        PermGroup::with_gens_unchecked(
            self.degree,
            self.gens.iter().map(|x| x.conjugate_by(g)).collect(),
        )
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| {
            self.gens[i + 1..]
                .iter()
                .all(|b| a.then(b) == b.then(a))
        })
    }

    pub fn orbit(&self, pt: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![pt];
        seen[pt as usize] = true;
        let mut queue = VecDeque::from([pt]);
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = g.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for pt in 0..self.degree as u32 {
            if !seen[pt as usize] {
                let o = self.orbit(pt);
                for &x in &o {
                    seen[x as usize] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Stabilizer of `pt`; orbit-stabilizer gives `|G| = |G_pt| * |pt^G|`.
    pub fn point_stabilizer(&self, pt: u32) -> Result<PermGroup, Error> {
        if pt as usize >= self.degree {
            return Err(Error::PointOutOfRange {
                point: pt as usize,
                degree: self.degree,
            });
        }
        let chain = self.chain_with_base(&[pt]);
        Ok(PermGroup::from_chain(chain.tail(1)))
    }

    /// Pointwise stabilizer of `pts`.
    pub fn pointwise_stabilizer(&self, pts: &[u32]) -> Result<PermGroup, Error> {
        if let Some(&p) = pts.iter().find(|&&p| p as usize >= self.degree) {
            return Err(Error::PointOutOfRange {
                point: p as usize,
                degree: self.degree,
            });
        }
        let chain = self.chain_with_base(pts);
        Ok(PermGroup::from_chain(chain.tail(pts.len())))
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        self.chain().random_element(rng)
    }

    /// Random element of prime order (a suitable power of a random element),
    /// or `None` if the sampled element was the identity.
    pub fn random_prime_order_element<R: Rng>(&self, rng: &mut R) -> Option<Perm> {
        let x = self.random_element(rng);
        let n = x.order();
        if n == 1 {
            return None;
        }
        let primes = crate::numtheory::prime_factors(n as u64);
        let r = primes[rng.gen_range(0..primes.len())] as u128;
        Some(x.pow(n / r))
    }

    /// Restriction of every generator to the invariant block `start..start+len`.
    pub fn restricted_to(&self, start: usize, len: usize) -> Result<PermGroup, Error> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.restricted_to(start, len))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::from_generators(len, gens)
    }

    /// All elements, in chain order. Intended for small groups.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = Vec::new();
        self.chain().for_each_element(|g| out.push(g.clone()));
        out
    }
}

/// Join of several subgroups of the same degree.
pub fn join(degree: usize, groups: &[&PermGroup]) -> PermGroup {
    let gens = groups
        .iter()
        .flat_map(|g| g.generators().iter().cloned())
        .collect();
    PermGroup::with_gens_unchecked(degree, gens)
}
