//! Brute-force oracles on small groups, shared with the acceptance suite.
//! Every group is enumerated as a set of image arrays and all answers are
//! computed by closure over that set.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use hallrad::catalog::{alternating, build_psl2, build_psl3, cyclic, dihedral, klein_four, symmetric};
use hallrad::constructions::direct_product;
use hallrad::permgroup::{core, normal_closure};
use hallrad::series::{composition_factors, solvable_radical};
use hallrad::{Limits, Perm, PermGroup};

type P = Vec<u32>;
type Set = BTreeSet<P>;

fn then(a: &P, b: &P) -> P {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn inv(a: &P) -> P {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x as usize] = i as u32;
    }
    r
}

fn conj(x: &P, g: &P) -> P {
    then(&then(&inv(g), x), g)
}

fn identity(n: usize) -> P {
    (0..n as u32).collect()
}

/// Subgroup generated by `gens`, by breadth-first closure.
fn closure(n: usize, gens: &[P]) -> Set {
    let mut seen: Set = [identity(n)].into_iter().collect();
    let mut frontier = vec![identity(n)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = then(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// A generating set of the subgroup `s`, chosen greedily.
fn gens_of(n: usize, s: &Set) -> Vec<P> {
    let mut gens = Vec::new();
    let mut current: Set = [identity(n)].into_iter().collect();
    for x in s {
        if !current.contains(x) {
            gens.push(x.clone());
            current = closure(n, &gens);
        }
    }
    gens
}

/// Normal closure of `xs` in `g`.
fn ncl(n: usize, g_gens: &[P], xs: &[P]) -> Set {
    let mut gens: Vec<P> = xs.to_vec();
    loop {
        let s = closure(n, &gens);
        let extra: Vec<P> = gens
            .iter()
            .flat_map(|x| g_gens.iter().map(move |g| conj(x, g)))
            .filter(|y| !s.contains(y))
            .collect();
        if extra.is_empty() {
            return s;
        }
        gens.extend(extra);
    }
}

fn derived(n: usize, s: &Set) -> Set {
    let gens = gens_of(n, s);
    let comms: Vec<P> = gens
        .iter()
        .flat_map(|a| gens.iter().map(move |b| then(&then(&inv(a), &inv(b)), &then(a, b))))
        .collect();
    ncl(n, &gens, &comms)
}

fn solvable(n: usize, s: &Set) -> bool {
    let mut cur = s.clone();
    loop {
        if cur.len() == 1 {
            return true;
        }
        let d = derived(n, &cur);
        if d.len() == cur.len() {
            return false;
        }
        cur = d;
    }
}

/// All normal subgroups of `s`: joins of normal closures of single elements.
fn normal_subgroups(n: usize, s: &Set) -> Vec<Set> {
    let gens = gens_of(n, s);
    let mut done: HashSet<P> = HashSet::new();
    let mut lattice: Vec<Set> = Vec::new();
    for x in s {
        if done.contains(x) {
            continue;
        }
        for g in s {
            done.insert(conj(x, g));
        }
        let c = ncl(n, &gens, std::slice::from_ref(x));
        if !lattice.contains(&c) {
            lattice.push(c);
        }
    }
    let mut i = 0;
    while i < lattice.len() {
        for j in 0..i {
            let mut both = gens_of(n, &lattice[i]);
            both.extend(gens_of(n, &lattice[j]));
            let join = closure(n, &both);
            if !lattice.contains(&join) {
                lattice.push(join);
            }
        }
        i += 1;
    }
    lattice
}

pub fn radical(n: usize, s: &Set) -> Set {
    normal_subgroups(n, s)
        .into_iter()
        .filter(|m| solvable(n, m))
        .max_by_key(|m| m.len())
        .expect("the trivial subgroup is normal")
}

/// Orders of composition factors, by descending through maximal normal
/// subgroups.
pub fn composition_orders(n: usize, s: &Set) -> Vec<u128> {
    let mut out = Vec::new();
    let mut cur = s.clone();
    while cur.len() > 1 {
        let m = normal_subgroups(n, &cur)
            .into_iter()
            .filter(|m| m.len() < cur.len())
            .max_by_key(|m| m.len())
            .unwrap();
        out.push((cur.len() / m.len()) as u128);
        cur = m;
    }
    out.sort();
    out
}

fn core_oracle(g: &Set, h: &Set) -> Set {
    h.iter()
        .filter(|x| g.iter().all(|t| h.contains(&conj(x, t))))
        .cloned()
        .collect()
}

fn as_p(x: &Perm) -> P {
    x.images().to_vec()
}

fn elements(g: &PermGroup) -> Set {
    let gens: Vec<P> = g.generators().iter().map(as_p).collect();
    closure(g.degree(), &gens)
}

fn perm(x: &P) -> Perm {
    Perm::from_images(x.clone()).unwrap()
}

pub fn fixtures() -> Vec<(String, PermGroup)> {
    let mut out: Vec<(String, PermGroup)> = Vec::new();
    for n in 1..=5 {
        out.push((format!("Sym({n})"), symmetric(n)));
        out.push((format!("Alt({n})"), alternating(n)));
    }
    for n in [1, 2, 3, 4, 5, 6, 7, 8, 10, 12] {
        out.push((format!("C{n}"), cyclic(n)));
    }
    for n in 3..=10 {
        out.push((format!("D{n}"), dihedral(n)));
    }
    out.push(("V4".into(), klein_four()));
    let s4 = symmetric(4);
    let a4 = alternating(4);
    let a5 = alternating(5);
    let s3 = symmetric(3);
    let c2 = cyclic(2);
    let prod = |parts: &[&PermGroup]| {
        let pairs: Vec<(PermGroup, PermGroup)> = parts.iter().map(|g| ((*g).clone(), (*g).clone())).collect();
        direct_product(&pairs).unwrap().0
    };
    // extensions of V4
    out.push(("V4 x C2".into(), prod(&[&klein_four(), &c2])));
    out.push(("V4 x C3".into(), prod(&[&klein_four(), &cyclic(3)])));
    out.push(("Alt4 x C2".into(), prod(&[&a4, &c2])));
    out.push(("Sym4 x C2".into(), prod(&[&s4, &c2])));
    out.push(("Sym3 x Sym3".into(), prod(&[&s3, &s3])));
    out.push(("Alt5 x C2".into(), prod(&[&a5, &c2])));
    out.push(("Alt5 x Sym3".into(), prod(&[&a5, &s3])));
    out.push(("Sym5 x C3".into(), prod(&[&symmetric(5), &cyclic(3)])));
    out.push(("PSL(3,2)".into(), build_psl3(2).unwrap().points));
    out.push(("PSL(2,8)".into(), build_psl2(8, 8).unwrap()));
    out.push(("PSL(2,11)".into(), build_psl2(11, 11).unwrap()));
    out
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Every `len / k`-th item, at most `k` of them.
fn spread<T: Clone>(items: &[T], k: usize) -> Vec<T> {
    let step = (items.len() / k).max(1);
    items.iter().step_by(step).take(k).cloned().collect()
}

pub fn check_fixture(name: &str, g: &PermGroup, limits: &Limits) -> Result<(), String> {
    let n = g.degree();
    let elems = elements(g);
    ensure!(g.order() == elems.len() as u128, "{name}: order");

    let sym: Vec<P> = elements(&symmetric(n.min(6)))
        .into_iter()
        .map(|mut x| {
            x.extend(x.len() as u32..n as u32);
            x
        })
        .collect();
    for x in spread(&sym, 200) {
        let ours = g.contains(&perm(&x)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(ours == elems.contains(&x), "{name}: membership");
    }
    for x in elems.iter().take(50) {
        let ours = g.contains(&perm(x)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(ours, "{name}: own element");
    }

    let listed: Vec<P> = elems.iter().cloned().collect();
    let sample: Vec<P> = spread(&listed, 4);
    let g_gens: Vec<P> = g.generators().iter().map(as_p).collect();
    for x in &sample {
        let ours = normal_closure(g, &[perm(x)]).map_err(|e| format!("{name}: {e}"))?;
        ensure!(elements(&ours) == ncl(n, &g_gens, std::slice::from_ref(x)), "{name}: normal closure");
    }

    for pt in [0u32, (n - 1) as u32] {
        let h = g.point_stabilizer(pt).map_err(|e| format!("{name}: {e}"))?;
        let ours = core(g, &h, limits).map_err(|e| format!("{name}: {e}"))?;
        ensure!(elements(&ours) == core_oracle(&elems, &elements(&h)), "{name}: core");
    }
    for x in sample.iter().take(2) {
        let h = PermGroup::from_generators(n, vec![perm(x)]).map_err(|e| format!("{name}: {e}"))?;
        let ours = core(g, &h, limits).map_err(|e| format!("{name}: {e}"))?;
        ensure!(elements(&ours) == core_oracle(&elems, &elements(&h)), "{name}: core of cyclic");
    }

    let rad = radical(n, &elems);
    let ours = solvable_radical(g, limits);
    if ours.probabilistic {
        ensure!(elements(&ours.group).is_subset(&rad), "{name}: sampled radical");
    } else {
        ensure!(elements(&ours.group) == rad, "{name}: radical");
    }

    let factors = composition_factors(g, limits).map_err(|e| format!("{name}: {e}"))?;
    let mut orders: Vec<u128> = factors.factors.iter().map(|f| f.order).collect();
    orders.sort();
    ensure!(orders == composition_orders(n, &elems), "{name}: composition factors {orders:?}");
    Ok(())
}
