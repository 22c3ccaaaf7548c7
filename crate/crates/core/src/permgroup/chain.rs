//! Base and strong generating set with explicit transversals.
//!
//! Construction runs a randomized sifting phase first and then a
//! deterministic Schreier-generator pass over every level, so a finished
//! chain is always a certified BSGS.

use rand::Rng;

use crate::perm::Perm;

use super::random::ProductReplacement;

const ABSENT: u32 = u32::MAX;

/// Consecutive trivial sifts that end the randomized phase.
const RANDOM_QUIET_ROUNDS: usize = 24;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base: u32,
    pub(crate) gens: Vec<Perm>,
    pub(crate) orbit: Vec<u32>,
    position: Vec<u32>,
    transversal: Vec<Perm>,
    inverse: Vec<Perm>,
    // Schreier generators for orbit[..checked_points] x gens[..checked_gens]
    // are known to sift through the deeper levels.
    checked_points: usize,
    checked_gens: usize,
}

impl Level {
    fn new(base: u32, degree: usize) -> Level {
        let mut position = vec![ABSENT; degree];
        position[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            position,
            transversal: vec![Perm::identity(degree)],
            inverse: vec![Perm::identity(degree)],
            checked_points: 0,
            checked_gens: 0,
        }
    }

    fn add_gen(&mut self, g: Perm) {
        self.gens.push(g);
        // Existing transversal elements stay fixed so earlier Schreier checks remain valid.
        let mut i = 0;
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            for s in 0..self.gens.len() {
                let gamma = self.gens[s].image(beta);
                if self.position[gamma as usize] == ABSENT {
                    let u = self.transversal[i].then(&self.gens[s]);
                    self.position[gamma as usize] = self.orbit.len() as u32;
                    self.orbit.push(gamma);
                    self.inverse.push(u.inverse());
                    self.transversal.push(u);
                }
            }
            i += 1;
        }
    }

    #[inline]
    pub(crate) fn position(&self, point: u32) -> Option<usize> {
        match self.position[point as usize] {
            ABSENT => None,
            p => Some(p as usize),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// An empty chain (trivial group) with the given base prefix.
    pub(crate) fn empty(degree: usize, base_prefix: &[u32]) -> StabChain {
        StabChain {
            degree,
            levels: base_prefix
                .iter()
                .map(|&b| Level::new(b, degree))
                .collect(),
        }
    }

    /// Builds a certified chain for `<gens>` whose base starts with `base_prefix`.
    pub(crate) fn build(degree: usize, gens: &[Perm], base_prefix: &[u32], seed: u64) -> StabChain {
        let mut chain = StabChain::empty(degree, base_prefix);
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return chain;
        }
        for g in &gens {
            chain.add_strong(g.clone(), 0);
        }
        let mut pr = ProductReplacement::new(&gens, seed);
        let mut quiet = 0;
        let mut rounds = 0;
        while quiet < RANDOM_QUIET_ROUNDS && rounds < 4096 {
            rounds += 1;
            let r = pr.next_element();
            let (h, _) = chain.sift(&r, 0);
            if h.is_identity() {
                quiet += 1;
            } else {
                quiet = 0;
                chain.add_strong(h, 1);
            }
        }
        chain.verify_from(chain.levels.len().saturating_sub(1));
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the fundamental orbit lengths; `None` on 128-bit overflow.
    pub fn checked_order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    pub fn order(&self) -> u128 {
        self.checked_order().expect("group order overflows 128 bits")
    }

    /// Strong generators of the whole group.
    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Divides `g` by transversal elements starting at level `from`.
    /// Returns the residue and the level at which sifting stopped.
    pub(crate) fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut g = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.image(level.base);
            if beta == level.base {
                continue;
            }
            match level.position(beta) {
                None => return (g, i),
                Some(p) => g = g.then(&level.inverse[p]),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Adds `h`, which fixes the base points of all levels below `from`, to
    /// every level from `from` up to the first level whose base it moves.
    fn add_strong(&mut self, h: Perm, from: usize) -> usize {
        let mut j = from;
        while j < self.levels.len() && h.image(self.levels[j].base) == self.levels[j].base {
            j += 1;
        }
        if j == self.levels.len() {
            let b = h.first_moved().expect("identity passed to add_strong");
            self.levels.push(Level::new(b, self.degree));
        }
        for l in from..=j {
            self.levels[l].add_gen(h.clone());
        }
        j
    }

    fn unchecked_schreier_residue(&self, lvl: usize) -> Option<Perm> {
        let level = &self.levels[lvl];
        if level.orbit.len() == 1 {
            // Every generator fixes the base and already lies on the next level.
            return None;
        }
        for (pi, &beta) in level.orbit.iter().enumerate() {
            let gens_from = if pi < level.checked_points {
                level.checked_gens
            } else {
                0
            };
            for s in &level.gens[gens_from..] {
                let gamma = s.image(beta);
                let gi = level.position(gamma).expect("orbit closed under generators");
                let ub_s = level.transversal[pi].then(s);
                if ub_s == level.transversal[gi] {
                    continue;
                }
                let schreier = ub_s.then(&level.inverse[gi]);
                let (h, _) = self.sift(&schreier, lvl + 1);
                if !h.is_identity() {
                    return Some(h);
                }
            }
        }
        None
    }

    /// Deterministic Schreier-Sims pass from level `start` down to level 0.
    fn verify_from(&mut self, start: usize) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = start as isize;
        while i >= 0 {
            let lvl = i as usize;
            match self.unchecked_schreier_residue(lvl) {
                None => {
                    let level = &mut self.levels[lvl];
                    level.checked_points = level.orbit.len();
                    level.checked_gens = level.gens.len();
                    i -= 1;
                }
                Some(h) => {
                    let j = self.add_strong(h, lvl + 1);
                    i = j as isize;
                }
            }
        }
    }

    /// Extends the group by `g`. Returns `true` if the group grew.
    pub(crate) fn add_generator(&mut self, g: &Perm) -> bool {
        let (h, _) = self.sift(g, 0);
        if h.is_identity() {
            return false;
        }
        let j = self.add_strong(h, 0);
        self.verify_from(j);
        true
    }

    /// Chain for the stabilizer of the first `depth` base points.
    pub(crate) fn tail(&self, depth: usize) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels[depth.min(self.levels.len())..].to_vec(),
        }
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for level in self.levels.iter().rev() {
            let k = rng.gen_range(0..level.orbit.len());
            g = g.then(&level.transversal[k]);
        }
        g
    }

    /// Element with mixed-radix index `idx` (`0 <= idx < order`).
    pub fn element_at(&self, mut idx: u128) -> Perm {
        let mut positions = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let n = level.orbit.len() as u128;
            positions.push((idx % n) as usize);
            idx /= n;
        }
        let mut g = Perm::identity(self.degree);
        for (level, &p) in self.levels.iter().zip(&positions).rev() {
            if p != 0 {
                g = g.then(&level.transversal[p]);
            }
        }
        g
    }

    /// Inverse of [`StabChain::element_at`]; `None` for non-members.
    pub fn index_of(&self, g: &Perm) -> Option<u128> {
        let mut g = g.clone();
        let mut idx = 0u128;
        let mut stride = 1u128;
        for level in &self.levels {
            let beta = g.image(level.base);
            let p = level.position(beta)?;
            if p != 0 {
                g = g.then(&level.inverse[p]);
            }
            idx += p as u128 * stride;
            stride *= level.orbit.len() as u128;
        }
        g.is_identity().then_some(idx)
    }

    /// Calls `f` on every group element.
    pub fn for_each_element<F: FnMut(&Perm)>(&self, mut f: F) {
        fn walk<F: FnMut(&Perm)>(levels: &[Level], partial: &Perm, f: &mut F) {
            match levels.split_last() {
                None => f(partial),
                Some((last, rest)) => {
                    for t in &last.transversal {
                        walk(rest, &partial.then(t), f);
                    }
                }
            }
        }
        walk(&self.levels, &Perm::identity(self.degree), &mut f);
    }
}
