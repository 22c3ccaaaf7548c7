//! Right coset enumeration, coset actions, and homomorphism kernels.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::error::Error;
use crate::limits::Limits;
use crate::perm::Perm;

use super::chain::StabChain;
use super::PermGroup;

/// A group homomorphism given by generator images.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: PermGroup,
    image: PermGroup,
    generator_images: Vec<Perm>,
}

impl Homomorphism {
    pub fn new(source: PermGroup, image_degree: usize, generator_images: Vec<Perm>) -> Result<Homomorphism, Error> {
        if generator_images.len() != source.generators().len() {
            return Err(Error::Precondition(format!(
                "{} generator images for {} generators",
                generator_images.len(),
                source.generators().len()
            )));
        }
        let image = PermGroup::from_generators(image_degree, generator_images.clone())?;
        Ok(Homomorphism {
            source,
            image,
            generator_images,
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.generator_images
    }

    /// Image of the word `w` in the source generators; `(i, true)` is an inverse letter.
    pub fn map_word(&self, w: &[(usize, bool)]) -> Perm {
        w.iter().fold(Perm::identity(self.image.degree()), |acc, &(i, inv)| {
            let x = &self.generator_images[i];
            if inv {
                acc.then(&x.inverse())
            } else {
                acc.then(x)
            }
        })
    }

    /// Kernel, computed in the graph subgroup `{(g, g^phi)}`: the pointwise
    /// stabilizer of a base of the image is exactly `ker × 1`.
    pub fn kernel(&self) -> PermGroup {
        let ds = self.source.degree();
        let di = self.image.degree();
        let total = ds + di;
        let diag: Vec<Perm> = self
            .source
            .generators()
            .iter()
            .zip(&self.generator_images)
            .map(|(g, h)| {
                let mut images: Vec<u32> = g.images().to_vec();
                images.extend(h.images().iter().map(|&x| x + ds as u32));
                Perm::from_images_unchecked(images)
            })
            .collect();
        let prefix: Vec<u32> = self
            .image
            .chain()
            .base()
            .into_iter()
            .map(|b| b + ds as u32)
            .collect();
        let seed = self.source.digest() ^ self.image.digest();
        let chain = StabChain::build(total, &diag, &prefix, seed);
        let gens: Vec<Perm> = chain
            .tail(prefix.len())
            .strong_generators()
            .iter()
            .map(|g| g.restricted(ds).expect("source points are invariant"))
            .collect();
        PermGroup::with_gens_unchecked(ds, gens)
    }
}

/// Right cosets `H x` of a subgroup, with a lookup from elements to cosets.
#[derive(Clone, Debug)]
pub struct CosetTable {
    sub: PermGroup,
    reps: Vec<Perm>,
    rep_inverses: Vec<Perm>,
    orbit_id: Vec<u32>,
    buckets: HashMap<u64, Vec<u32>>,
}

impl CosetTable {
    /// Enumerates `H \ G` by orbit expansion from the trivial coset.
    pub fn new(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<CosetTable, Error> {
        if h.degree() != g.degree() || !h.is_subgroup_of(g) {
            return Err(Error::NotSubgroup);
        }
        let index = g.order() / h.order();
        if index > limits.coset_cap {
            return Err(Error::CapExceeded {
                what: "coset",
                limit: limits.coset_cap,
                actual: index,
            });
        }
        let mut orbit_id = vec![0u32; g.degree()];
        for (i, orbit) in h.orbits().iter().enumerate() {
            for &x in orbit {
                orbit_id[x as usize] = i as u32;
            }
        }
        let mut table = CosetTable {
            sub: h.clone(),
            reps: Vec::new(),
            rep_inverses: Vec::new(),
            orbit_id,
            buckets: HashMap::new(),
        };
        table.push(Perm::identity(g.degree()));
        let mut i = 0;
        while i < table.reps.len() {
            for s in g.generators() {
                let y = table.reps[i].then(s);
                if table.coset_of(&y).is_none() {
                    table.push(y);
                }
            }
            i += 1;
        }
        debug_assert_eq!(table.reps.len() as u128, index);
        Ok(table)
    }

    // Invariant of the coset H x: the H-orbit of every point's preimage under x.
    fn key(&self, x_inv: &Perm) -> u64 {
        let mut hasher = DefaultHasher::new();
        for &y in x_inv.images() {
            self.orbit_id[y as usize].hash(&mut hasher);
        }
        hasher.finish()
    }

    fn push(&mut self, x: Perm) {
        let inv = x.inverse();
        let key = self.key(&inv);
        self.buckets
            .entry(key)
            .or_default()
            .push(self.reps.len() as u32);
        self.reps.push(x);
        self.rep_inverses.push(inv);
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[Perm] {
        &self.reps
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.sub
    }

    /// Index of the coset containing `x`, if it has been enumerated.
    pub fn coset_of(&self, x: &Perm) -> Option<usize> {
        let key = self.key(&x.inverse());
        let bucket = self.buckets.get(&key)?;
        bucket
            .iter()
            .map(|&i| i as usize)
            .find(|&i| self.sub.has(&x.then(&self.rep_inverses[i])))
    }

    /// Permutation of the cosets induced by right multiplication with `x`.
    pub fn act(&self, x: &Perm) -> Perm {
        let images = self
            .reps
            .iter()
            .map(|r| {
                self.coset_of(&r.then(x))
                    .expect("right multiplication permutes the cosets") as u32
            })
            .collect();
        Perm::from_images_unchecked(images)
    }
}

/// The action of `G` on the right cosets of `H`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub table: CosetTable,
    pub hom: Homomorphism,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.table.len()
    }

    pub fn image(&self) -> &PermGroup {
        self.hom.image()
    }

    /// Image of an arbitrary element of the source group.
    pub fn map(&self, x: &Perm) -> Perm {
        self.table.act(x)
    }

    pub fn kernel(&self) -> PermGroup {
        self.hom.kernel()
    }

    pub fn homomorphism(&self) -> &Homomorphism {
        &self.hom
    }
}

pub fn coset_action(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<CosetAction, Error> {
    let table = CosetTable::new(g, h, limits)?;
    let images: Vec<Perm> = g.generators().iter().map(|s| table.act(s)).collect();
    let hom = Homomorphism::new(g.clone(), table.len(), images)?;
    Ok(CosetAction { table, hom })
}

/// `Core_G(H)`: kernel of the action on the cosets of `H`.
pub fn core(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<PermGroup, Error> {
    Ok(coset_action(g, h, limits)?.kernel())
}
