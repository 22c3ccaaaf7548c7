use crate::error::Error;
use crate::limits::Limits;
use crate::numtheory::prime_factors;
use crate::perm::Perm;

use super::chain::StabChain;
use super::coset::CosetTable;
use super::PermGroup;

/// Smallest normal subgroup of `g` containing `s`.
pub fn normal_closure(g: &PermGroup, s: &[Perm]) -> Result<PermGroup, Error> {
    for x in s {
        if !g.contains(x)? {
            return Err(Error::NotAnElement);
        }
    }
    Ok(normal_closure_over(g, &PermGroup::trivial(g.degree()), s))
}

/// Normal closure of `base ∪ s` in `g`, where `base` is already normal in `g`.
pub(crate) fn normal_closure_over(g: &PermGroup, base: &PermGroup, s: &[Perm]) -> PermGroup {
    let mut chain: StabChain = base.chain().clone();
    let mut queue: Vec<Perm> = s.to_vec();
    while let Some(x) = queue.pop() {
        if chain.add_generator(&x) {
            for t in g.generators() {
                queue.push(x.conjugate_by(t));
            }
        }
    }
    PermGroup::from_chain(chain)
}

pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = Perm::commutator(a, b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure_over(g, &PermGroup::trivial(g.degree()), &comms)
}

/// `G = D0 > D1 > ...`, strictly decreasing, ending at the perfect residual.
pub fn derived_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        if last.order() == 1 {
            break;
        }
        let next = derived_subgroup(last);
        if next.order() == last.order() {
            break;
        }
        series.push(next);
    }
    series
}

pub fn is_solvable(g: &PermGroup) -> bool {
    derived_series(g).last().unwrap().order() == 1
}

/// `true` if `g / n` is solvable, for `n` normal in `g`.
pub(crate) fn is_solvable_modulo(g: &PermGroup, n: &PermGroup) -> bool {
    let residual = derived_series(g).pop().unwrap();
    residual.is_subgroup_of(n)
}

/// One representative per conjugacy class, found by an exhaustive sweep.
pub fn conjugacy_class_reps(g: &PermGroup, limits: &Limits) -> Result<Vec<Perm>, Error> {
    let n = g.order();
    if n > limits.element_cap {
        return Err(Error::CapExceeded {
            what: "element",
            limit: limits.element_cap,
            actual: n,
        });
    }
    let chain = g.chain();
    let gens: Vec<&Perm> = g.generators().iter().filter(|x| !x.is_identity()).collect();
    let mut visited = vec![false; n as usize];
    let mut reps = Vec::new();
    let mut stack = Vec::new();
    for idx in 0..n as usize {
        if visited[idx] {
            continue;
        }
        visited[idx] = true;
        let rep = chain.element_at(idx as u128);
        stack.push(rep.clone());
        while let Some(x) = stack.pop() {
            for t in &gens {
                let y = x.conjugate_by(t);
                let j = chain.index_of(&y).expect("conjugate stays in the group") as usize;
                if !visited[j] {
                    visited[j] = true;
                    stack.push(y);
                }
            }
        }
        reps.push(rep);
    }
    Ok(reps)
}

/// Representatives in `g` of the conjugacy classes of `g / r`, for `r`
/// normal in `g`; `None` when `|g : r|` exceeds the element cap. The first
/// representative always lies in `r`.
pub(crate) fn class_reps_modulo(g: &PermGroup, r: &PermGroup, limits: &Limits) -> Option<Vec<Perm>> {
    if r.is_trivial() {
        return conjugacy_class_reps(g, limits).ok();
    }
    let index = g.order() / r.order();
    if index > limits.element_cap {
        return None;
    }
    let table = CosetTable::new(g, r, limits).ok()?;
    let gens: Vec<&Perm> = g.generators().iter().filter(|x| !x.is_identity()).collect();
    let mut visited = vec![false; table.len()];
    let mut reps = Vec::new();
    let mut stack = Vec::new();
    for i in 0..table.len() {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let rep = table.representatives()[i].clone();
        stack.push(rep.clone());
        while let Some(x) = stack.pop() {
            for t in &gens {
                let y = x.conjugate_by(t);
                let j = table.coset_of(&y).expect("conjugation permutes the cosets of a normal subgroup");
                if !visited[j] {
                    visited[j] = true;
                    stack.push(y);
                }
            }
        }
        reps.push(rep);
    }
    Some(reps)
}

/// Smallest `m >= 1` with `x^m` in `r`.
pub(crate) fn order_modulo(x: &Perm, r: &PermGroup) -> u128 {
    let mut m = x.order();
    for p in prime_factors(m as u64) {
        let p = p as u128;
        while m.is_multiple_of(p) && r.has(&x.pow(m / p)) {
            m /= p;
        }
    }
    m
}

/// A power of `x` whose image in `G/r` has prime order.
pub(crate) fn prime_order_power_modulo(x: &Perm, r: &PermGroup) -> Option<Perm> {
    let m = order_modulo(x, r);
    if m == 1 {
        return None;
    }
    let p = prime_factors(m as u64)[0] as u128;
    Some(x.pow(m / p))
}

/// Inclusion-minimal normal closures `<<r, x>>` over the candidates `x`
/// that lie outside `r`. With one candidate per conjugacy class of `g` these
/// are exactly the preimages of the minimal normal subgroups of `g / r`.
pub(crate) fn minimal_normal_over(
    g: &PermGroup,
    r: &PermGroup,
    candidates: &[Perm],
) -> Vec<PermGroup> {
    let mut found: Vec<PermGroup> = Vec::new();
    for x in candidates {
        let Some(y) = prime_order_power_modulo(x, r) else {
            continue;
        };
        let n = normal_closure_over(g, r, &[y]);
        if !found.iter().any(|f| f.same_group(&n)) {
            found.push(n);
        }
    }
    let mut minimal: Vec<PermGroup> = found
        .iter()
        .filter(|n| {
            !found
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect();
    minimal.sort_by_key(|n| n.order());
    minimal
}

/// All minimal normal subgroups, by exhaustive class sweep.
pub fn minimal_normal_subgroups(g: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>, Error> {
    let reps = conjugacy_class_reps(g, limits)?;
    Ok(minimal_normal_over(g, &PermGroup::trivial(g.degree()), &reps))
}

/// Product of all minimal normal subgroups.
pub fn socle(g: &PermGroup, limits: &Limits) -> Result<PermGroup, Error> {
    let mins = minimal_normal_subgroups(g, limits)?;
    let refs: Vec<&PermGroup> = mins.iter().collect();
    Ok(super::join(g.degree(), &refs))
}
