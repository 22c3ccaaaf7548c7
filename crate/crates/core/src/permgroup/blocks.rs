use crate::error::Error;

use super::PermGroup;

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        true
    }
}

/// Finest block system in which `a` and `b` share a block (Atkinson).
/// Returns the block label of every point.
pub fn minimal_block(g: &PermGroup, a: u32, b: u32) -> Vec<u32> {
    let mut uf = UnionFind::new(g.degree());
    let mut queue = Vec::new();
    if uf.union(a, b) {
        queue.push((a, b));
    }
    while let Some((x, y)) = queue.pop() {
        for s in g.generators() {
            let (sx, sy) = (s.image(x), s.image(y));
            if uf.union(sx, sy) {
                queue.push((sx, sy));
            }
        }
    }
    (0..g.degree() as u32).map(|x| uf.find(x)).collect()
}

/// `true` iff the transitive group `g` preserves no nontrivial block system.
pub fn is_primitive(g: &PermGroup) -> Result<bool, Error> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = g.degree();
    if n <= 2 {
        return Ok(true);
    }
    // The minimal blocks for {0, b} and {0, b^h} with h fixing 0 are
    // h-images of each other: one b per suborbit of the stabilizer suffices.
    let stab = g.point_stabilizer(0)?;
    for orbit in stab.orbits() {
        let b = orbit[0];
        if b == 0 {
            continue;
        }
        let labels = minimal_block(g, 0, b);
        let root = labels[0];
        let block_size = labels.iter().filter(|&&l| l == root).count();
        if block_size < n {
            return Ok(false);
        }
    }
    Ok(true)
}
