use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::perm::Perm;

/// Seeded generator used for every randomized step.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// FNV-1a over the generator images; stable across runs and platforms.
pub fn digest_perms(degree: usize, gens: &[Perm]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    eat(degree as u64);
    for g in gens {
        eat(u64::MAX);
        for &x in g.images() {
            eat(x as u64);
        }
    }
    h
}

pub fn mix(a: u64, b: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = a ^ b.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Product replacement random element generator.
pub struct ProductReplacement {
    slots: Vec<Perm>,
    acc: Perm,
    rng: SeededRng,
}

impl ProductReplacement {
    pub fn new(gens: &[Perm], seed: u64) -> ProductReplacement {
        assert!(!gens.is_empty());
        let mut slots: Vec<Perm> = gens.to_vec();
        while slots.len() < 10 {
            let k = slots.len() % gens.len();
            slots.push(gens[k].clone());
        }
        let acc = Perm::identity(gens[0].degree());
        let mut pr = ProductReplacement {
            slots,
            acc,
            rng: seeded_rng(seed),
        };
        for _ in 0..50 {
            pr.next_element();
        }
        pr
    }

    pub fn next_element(&mut self) -> Perm {
        let n = self.slots.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let rhs = if self.rng.gen_bool(0.5) {
            self.slots[j].clone()
        } else {
            self.slots[j].inverse()
        };
        self.slots[i] = self.slots[i].then(&rhs);
        self.acc = self.acc.then(&self.slots[i]);
        self.acc.clone()
    }
}
