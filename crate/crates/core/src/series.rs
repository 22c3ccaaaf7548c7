//! Solvable radical, the radical series `rad(G) <= A <= B <= G`, and
//! composition factors.
//!
//! Quotients are never formed abstractly: a subgroup `N >= R` stands for
//! `N / R`, and `G / B` is the image of the conjugation action on the simple
//! factors of `A / rad(G)`.

use std::fmt;

use serde::Serialize;

use crate::catalog::psl2_field_of_order;
use crate::error::Error;
use crate::limits::Limits;
use crate::numtheory::{factorize, is_prime};
use crate::perm::Perm;
use crate::permgroup::normal::{
    class_reps_modulo, is_solvable_modulo, minimal_normal_over, normal_closure_over,
};
use crate::permgroup::random::mix;
use crate::permgroup::{derived_series, is_solvable, join, seeded_rng, Homomorphism, PermGroup};

/// Random candidates drawn when an exhaustive sweep is over the cap.
const SAMPLES: usize = 160;
/// Consecutive useless samples that end the radical's sampling phase.
const QUIET_SAMPLES: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FactorTag {
    Cyclic(u64),
    Alt5,
    #[serde(rename = "PSL2")]
    Psl2(u64),
    #[serde(rename = "PSL3(2)")]
    Psl3Two,
    #[serde(rename = "PSL3(3)")]
    Psl3Three,
    UnknownSimple,
}

/// A composition factor, identified by its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SimpleFactorId {
    pub tag: FactorTag,
    pub order: u128,
}

impl SimpleFactorId {
    /// Names a simple group of order `order`. `PSL(2,4)` and `PSL(2,5)` are
    /// reported as `Alt5`, `PSL(2,7)` as `PSL3(2)`; `PSL(2,9)` is `Alt(6)`.
    pub fn identify(order: u128) -> SimpleFactorId {
        let tag = match order {
            n if n <= u64::MAX as u128 && is_prime(n as u64) => FactorTag::Cyclic(n as u64),
            60 => FactorTag::Alt5,
            168 => FactorTag::Psl3Two,
            5616 => FactorTag::Psl3Three,
            n => psl2_field_of_order(n).map_or(FactorTag::UnknownSimple, FactorTag::Psl2),
        };
        SimpleFactorId { tag, order }
    }

    pub fn cyclic(p: u64) -> SimpleFactorId {
        SimpleFactorId {
            tag: FactorTag::Cyclic(p),
            order: p as u128,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self.tag, FactorTag::Cyclic(_))
    }

    /// `Alt(n)` for some `n >= 6`, as far as the order lookup can tell.
    pub fn may_be_large_alternating(&self) -> bool {
        matches!(self.tag, FactorTag::Psl2(9) | FactorTag::UnknownSimple)
    }
}

impl fmt::Display for SimpleFactorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            FactorTag::Cyclic(p) => write!(f, "C{p}"),
            FactorTag::Alt5 => write!(f, "Alt(5)"),
            FactorTag::Psl2(q) => write!(f, "PSL(2,{q})"),
            FactorTag::Psl3Two => write!(f, "PSL(3,2)"),
            FactorTag::Psl3Three => write!(f, "PSL(3,3)"),
            FactorTag::UnknownSimple => write!(f, "UnknownSimple({})", self.order),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Radical {
    pub group: PermGroup,
    /// Set when the radical was assembled from random samples only; it is
    /// then a solvable normal subgroup that may be smaller than `rad(G)`.
    pub probabilistic: bool,
}

fn seed_for(g: &PermGroup, limits: &Limits, tag: u64) -> u64 {
    mix(mix(g.digest(), limits.salt), tag)
}

/// Largest solvable normal subgroup. `x` lies in `rad(G)` iff its normal
/// closure is solvable; testing one element per class of `G / R`, with `R`
/// growing, therefore finds all of it.
pub fn solvable_radical(g: &PermGroup, limits: &Limits) -> Radical {
    let mut r = PermGroup::trivial(g.degree());
    if g.order() > limits.element_cap {
        let mut rng = seeded_rng(seed_for(g, limits, 1));
        let mut quiet = 0;
        let mut drawn = 0;
        while quiet < QUIET_SAMPLES && drawn < 8 * SAMPLES {
            drawn += 1;
            quiet += 1;
            let Some(x) = g.random_prime_order_element(&mut rng) else {
                continue;
            };
            if r.has(&x) {
                continue;
            }
            let n = normal_closure_over(g, &r, &[x]);
            if is_solvable(&n) {
                r = n;
                quiet = 0;
            }
        }
    }
    match class_reps_modulo(g, &r, limits) {
        Some(reps) => {
            for x in reps {
                if r.has(&x) {
                    continue;
                }
                let n = normal_closure_over(g, &r, &[x]);
                if is_solvable(&n) {
                    r = n;
                }
            }
            Radical {
                group: r,
                probabilistic: false,
            }
        }
        None => Radical {
            group: r,
            probabilistic: true,
        },
    }
}

/// The radical series with the groups themselves.
#[derive(Debug, Clone)]
pub struct RadicalSeries {
    pub radical: PermGroup,
    pub a: PermGroup,
    pub b: PermGroup,
    pub g: PermGroup,
    /// `T_i R` for each simple factor `T_i` of `A / R`.
    pub factor_groups: Vec<PermGroup>,
    pub delta: Vec<SimpleFactorId>,
    /// `X = G / B`, acting on the factors.
    pub top: PermGroup,
    pub b_over_a_solvable: bool,
    pub probabilistic: bool,
}

/// Serializable summary of a [`RadicalSeries`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalSeriesRecord {
    pub rad_order: u128,
    #[serde(rename = "A_order")]
    pub a_order: u128,
    #[serde(rename = "B_order")]
    pub b_order: u128,
    #[serde(rename = "G_order")]
    pub g_order: u128,
    pub k: usize,
    pub delta: Vec<SimpleFactorId>,
    #[serde(rename = "X_order")]
    pub x_order: u128,
    pub probabilistic: bool,
}

impl RadicalSeries {
    pub fn record(&self) -> RadicalSeriesRecord {
        RadicalSeriesRecord {
            rad_order: self.radical.order(),
            a_order: self.a.order(),
            b_order: self.b.order(),
            g_order: self.g.order(),
            k: self.delta.len(),
            delta: self.delta.clone(),
            x_order: self.top.order(),
            probabilistic: self.probabilistic,
        }
    }

    pub fn k(&self) -> usize {
        self.delta.len()
    }
}

/// Candidates for minimal normal subgroups over `r`: one element per class
/// of `g / r`, or random elements when that is over the cap.
fn candidates_over(g: &PermGroup, r: &PermGroup, limits: &Limits, tag: u64) -> (Vec<Perm>, bool) {
    if let Some(reps) = class_reps_modulo(g, r, limits) {
        return (reps, false);
    }
    let mut rng = seeded_rng(seed_for(g, limits, tag));
    let sample = (0..SAMPLES).map(|_| g.random_element(&mut rng)).collect();
    (sample, true)
}

/// A simple factor `T R` of the minimal normal subgroup `n` over `r`, as the
/// smallest normal closure in `n` of a candidate. Elements are replaced by
/// powers of prime order modulo `r`, which tend to live in few factors.
fn simple_factor(n: &PermGroup, r: &PermGroup, candidates: &[Perm], limits: &Limits) -> PermGroup {
    let mut best: Option<PermGroup> = None;
    let consider = |x: &Perm, best: &mut Option<PermGroup>| {
        if !n.has(x) || r.has(x) {
            return;
        }
        let order = x.order();
        for (p, _) in factorize(order) {
            let y = x.pow(order / p);
            if r.has(&y) {
                continue;
            }
            let closure = normal_closure_over(n, r, &[y]);
            if best.as_ref().is_none_or(|b| closure.order() < b.order()) {
                *best = Some(closure);
            }
        }
    };
    for x in candidates {
        consider(x, &mut best);
    }
    if best.as_ref().is_none_or(|b| b.order() == n.order()) {
        let mut rng = seeded_rng(seed_for(n, limits, 7));
        for _ in 0..SAMPLES {
            let x = n.random_element(&mut rng);
            consider(&x, &mut best);
        }
    }
    best.unwrap_or_else(|| n.clone())
}

/// Index of the subgroup equal to `h` in `list`.
fn position_of(list: &[PermGroup], h: &PermGroup) -> Option<usize> {
    list.iter()
        .position(|x| x.order() == h.order() && x.same_group(h))
}

pub fn radical_series(g: &PermGroup, limits: &Limits) -> Result<RadicalSeries, Error> {
    let radical = solvable_radical(g, limits);
    let mut probabilistic = radical.probabilistic;
    let mut r = radical.group;
    if r.order() == g.order() {
        return Ok(RadicalSeries {
            radical: r,
            a: g.clone(),
            b: g.clone(),
            g: g.clone(),
            factor_groups: Vec::new(),
            delta: Vec::new(),
            top: PermGroup::trivial(1),
            b_over_a_solvable: true,
            probabilistic,
        });
    }
    // A sampled radical can be too small; abelian minimal normal subgroups
    // over it are absorbed until none remain.
    let (mins, candidates) = loop {
        let (candidates, sampled) = candidates_over(g, &r, limits, 2);
        probabilistic |= sampled;
        let mins = minimal_normal_over(g, &r, &candidates);
        match mins.iter().find(|n| is_solvable(n)) {
            Some(n) => r = n.clone(),
            None => break (mins, candidates),
        }
    };
    let a = join(g.degree(), &mins.iter().collect::<Vec<_>>());
    let mut factor_groups: Vec<PermGroup> = Vec::new();
    let mut delta = Vec::new();
    for n in &mins {
        let m = simple_factor(n, &r, &candidates, limits);
        let mut orbit = vec![m];
        let mut i = 0;
        while i < orbit.len() {
            for t in g.generators() {
                let c = orbit[i].conjugate(t);
                if position_of(&orbit, &c).is_none() {
                    orbit.push(c);
                }
            }
            i += 1;
        }
        let t_order = orbit[0].order() / r.order();
        let expected = t_order.checked_pow(orbit.len() as u32);
        if expected != Some(n.order() / r.order()) {
            probabilistic = true;
        }
        delta.extend(std::iter::repeat_n(SimpleFactorId::identify(t_order), orbit.len()));
        factor_groups.extend(orbit);
    }
    let k = factor_groups.len();
    let images = g
        .generators()
        .iter()
        .map(|t| {
            let images: Vec<u32> = factor_groups
                .iter()
                .map(|f| {
                    position_of(&factor_groups, &f.conjugate(t))
                        .expect("conjugation permutes the simple factors") as u32
                })
                .collect();
            Perm::from_images(images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let action = Homomorphism::new(g.clone(), k, images)?;
    let b = action.kernel();
    let b_over_a_solvable = is_solvable_modulo(&b, &a);
    Ok(RadicalSeries {
        radical: r,
        a,
        b,
        g: g.clone(),
        factor_groups,
        delta,
        top: action.image().clone(),
        b_over_a_solvable,
        probabilistic,
    })
}

fn push_cyclic_factors(out: &mut Vec<SimpleFactorId>, order: u128) {
    for (p, e) in factorize(order) {
        for _ in 0..e {
            out.push(SimpleFactorId::cyclic(p as u64));
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionFactors {
    /// Sorted multiset.
    pub factors: Vec<SimpleFactorId>,
    pub probabilistic: bool,
}

impl CompositionFactors {
    pub fn non_cyclic(&self) -> impl Iterator<Item = &SimpleFactorId> {
        self.factors.iter().filter(|f| !f.is_cyclic())
    }
}

/// Jordan-Hölder factors, read off the radical series: the derived series of
/// `rad(G)`, the simple factors of `A / rad(G)`, the solvable `B / A`, and
/// recursively `G / B`.
pub fn composition_factors(g: &PermGroup, limits: &Limits) -> Result<CompositionFactors, Error> {
    let series = radical_series(g, limits)?;
    composition_factors_of_series(&series, limits)
}

pub fn composition_factors_of_series(
    series: &RadicalSeries,
    limits: &Limits,
) -> Result<CompositionFactors, Error> {
    let mut factors = Vec::new();
    let mut probabilistic = series.probabilistic;
    let derived = derived_series(&series.radical);
    for pair in derived.windows(2) {
        push_cyclic_factors(&mut factors, pair[0].order() / pair[1].order());
    }
    if let Some(last) = derived.last() {
        push_cyclic_factors(&mut factors, last.order());
    }
    factors.extend(series.delta.iter().copied());
    let b_over_a = series.b.order() / series.a.order();
    if series.b_over_a_solvable {
        push_cyclic_factors(&mut factors, b_over_a);
    } else if b_over_a > 1 {
        probabilistic = true;
        factors.push(SimpleFactorId {
            tag: FactorTag::UnknownSimple,
            order: b_over_a,
        });
    }
    if series.top.order() > 1 {
        let top = composition_factors(&series.top, limits)?;
        probabilistic |= top.probabilistic;
        factors.extend(top.factors);
    }
    factors.sort();
    Ok(CompositionFactors {
        factors,
        probabilistic,
    })
}
