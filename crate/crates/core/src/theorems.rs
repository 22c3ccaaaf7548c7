//! Checks of the structural claims for a pair `(G, H)` with `H` solvable of
//! prime-power index. Violations are collected as [`Finding`]s.

use serde::Serialize;

use crate::constructions::prime_power_index;
use crate::error::Error;
use crate::limits::Limits;
use crate::numtheory::{factorize, fermat_index, in_pi0, is_mersenne_prime};
use crate::perm::gcd;
use crate::permgroup::random::mix;
use crate::permgroup::{
    are_conjugate_subgroups, coset_action, core, is_solvable, seeded_rng, PermGroup,
};
use crate::series::{
    composition_factors, composition_factors_of_series, radical_series, FactorTag,
    RadicalSeriesRecord, SimpleFactorId,
};

/// Random draws per Hall subgroup search.
const HALL_DRAWS: usize = 600;
/// Fresh starts within one search.
const HALL_RESTARTS: usize = 4;

/// An observed violation of a claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub claim: String,
    pub detail: String,
}

impl Finding {
    fn new(claim: &str, detail: String) -> Finding {
        Finding {
            claim: claim.to_string(),
            detail,
        }
    }
}

/// Whether a non-abelian simple group may occur as a composition factor
/// when a solvable subgroup has index a power of `p`.
pub fn factor_allowed(p: u64, factor: &SimpleFactorId) -> bool {
    match factor.tag {
        FactorTag::Cyclic(_) => true,
        FactorTag::Alt5 => p == 5,
        // PSL(3,2) is also PSL(2,7), the smallest case at p = 2
        FactorTag::Psl3Two => p == 2 || p == 7,
        FactorTag::Psl3Three => p == 13,
        FactorTag::Psl2(q) => {
            (p == 2 && q >= 5 && is_mersenne_prime(q))
                || (p == 3 && q == 8)
                || fermat_index(p).is_some_and(|m| m >= 2 && q == p - 1)
        }
        FactorTag::UnknownSimple => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorCheck {
    pub passed: bool,
    pub p: u64,
    pub factors: Vec<SimpleFactorId>,
    pub offending: Vec<SimpleFactorId>,
    pub probabilistic: bool,
}

/// Filters a factor multiset through the allowed list for `p`.
pub fn check_factors_for_prime(p: u64, factors: &[SimpleFactorId], probabilistic: bool) -> FactorCheck {
    let offending: Vec<SimpleFactorId> = factors
        .iter()
        .filter(|f| !factor_allowed(p, f))
        .copied()
        .collect();
    FactorCheck {
        passed: offending.is_empty(),
        p,
        factors: factors.to_vec(),
        offending,
        probabilistic,
    }
}

/// Composition factors of `G / Core_G(H)`, realized as the action on the
/// cosets of `H`, checked against the allowed list for the prime of the index.
pub fn check_factor_filter(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<FactorCheck, Error> {
    let (p, _) = prime_power_index(g, h)?;
    if !is_solvable(h) {
        return Err(Error::Precondition("H is not solvable".into()));
    }
    check_factor_filter_for_prime(g, h, p, limits)
}

/// As [`check_factor_filter`] with the prime supplied by the caller, which lets a
/// deliberately wrong claim be exercised.
pub fn check_factor_filter_for_prime(
    g: &PermGroup,
    h: &PermGroup,
    p: u64,
    limits: &Limits,
) -> Result<FactorCheck, Error> {
    let action = coset_action(g, h, limits)?;
    let factors = composition_factors(action.image(), limits)?;
    Ok(check_factors_for_prime(p, &factors.factors, factors.probabilistic))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RadBound {
    /// `|G / rad(G)|`.
    pub quotient: u128,
    pub exp5: bool,
    /// `None` when `p = 13`, where only the fifth power is claimed.
    pub exp4: Option<bool>,
}

pub fn check_rad_bound(record: &RadicalSeriesRecord, p: u64, m: u128) -> RadBound {
    let quotient = record.g_order / record.rad_order;
    let le = |e: u32| m.checked_pow(e).is_none_or(|bound| quotient <= bound);
    RadBound {
        quotient,
        exp5: le(5),
        exp4: (p != 13).then(|| le(4)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarotiCheck {
    /// `None` when the check was skipped.
    pub ok: Option<bool>,
    pub x_order: u128,
    pub bound: Option<u128>,
    pub note: Option<String>,
}

/// `|X| <= 4^(k-1)`, when no factor can be `Alt(n)` with `n >= 6`.
pub fn check_maroti(record: &RadicalSeriesRecord, factors: &[SimpleFactorId]) -> MarotiCheck {
    let skip = |note: String| MarotiCheck {
        ok: None,
        x_order: record.x_order,
        bound: None,
        note: Some(note),
    };
    if record.k == 0 {
        return skip("k = 0: no non-abelian socle factors".into());
    }
    if let Some(f) = factors.iter().find(|f| f.may_be_large_alternating()) {
        return skip(format!("factor {f} may be Alt(n) with n >= 6"));
    }
    let bound = 4u128.checked_pow(record.k as u32 - 1);
    MarotiCheck {
        ok: Some(bound.is_none_or(|b| record.x_order <= b)),
        x_order: record.x_order,
        bound,
        note: None,
    }
}

fn p_free_part(n: u128, p: u64) -> u128 {
    let mut n = n;
    while n.is_multiple_of(p as u128) {
        n /= p as u128;
    }
    n
}

/// A Hall `p'`-subgroup of the solvable group `h`, by greedy closure of
/// random `p'`-elements with restarts. `None` if the draw budget runs out.
pub fn find_hall_subgroup(h: &PermGroup, p: u64, seed: u64) -> Option<PermGroup> {
    let target = p_free_part(h.order(), p);
    if target == h.order() {
        return Some(h.clone());
    }
    let mut rng = seeded_rng(seed);
    let per_restart = HALL_DRAWS / HALL_RESTARTS;
    for _ in 0..HALL_RESTARTS {
        let mut current = PermGroup::trivial(h.degree());
        for _ in 0..per_restart {
            if current.order() == target {
                return Some(current);
            }
            let x = h.random_element(&mut rng);
            let mut e = x.order();
            let mut pp = 1u128;
            while e.is_multiple_of(p as u128) {
                e /= p as u128;
                pp *= p as u128;
            }
            let y = x.pow(pp);
            if y.is_identity() || current.has(&y) {
                continue;
            }
            let mut gens = current.generators().to_vec();
            gens.push(y);
            let candidate = PermGroup::from_generators(h.degree(), gens).ok()?;
            if candidate.order() % p as u128 != 0 {
                current = candidate;
            }
        }
        if current.order() == target {
            return Some(current);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HallStatus {
    /// `gcd(|H|, p) = 1`, so `H` itself is a Hall `p'`-subgroup.
    WholeSubgroup,
    Found,
    /// The random search ran out of draws; existence is not in doubt.
    Inconclusive,
}

/// Full verdict for a pair `(G, H)`.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub p: u64,
    pub alpha: u32,
    pub m: u128,
    pub g_order: u128,
    pub h_order: u128,
    pub core_order: u128,
    #[serde(rename = "G_is_solvable")]
    pub g_is_solvable: bool,
    pub hall_found: bool,
    pub hall_status: HallStatus,
    pub hall_order: Option<u128>,
    pub factor_check: FactorCheck,
    pub series: RadicalSeriesRecord,
    pub rad_quotient: u128,
    pub rad_bound_exponent_5: bool,
    pub rad_bound_exponent_4: Option<bool>,
    pub maroti: MarotiCheck,
    pub b_over_a_solvable: bool,
    pub conjugacy_checked: Option<bool>,
    pub probabilistic: bool,
    pub notes: Vec<String>,
    pub findings: Vec<Finding>,
}

impl AnalysisReport {
    pub fn maroti_ok(&self) -> Option<bool> {
        self.maroti.ok
    }

    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }
}

pub fn analyze_pair(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<AnalysisReport, Error> {
    if h.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: h.degree(),
        });
    }
    let (p, alpha) = prime_power_index(g, h)?;
    if !is_solvable(h) {
        return Err(Error::Precondition("H is not solvable".into()));
    }
    let m = (p as u128).pow(alpha);
    let mut findings = Vec::new();
    let mut notes = Vec::new();

    let core_order = core(g, h, limits)?.order();
    let g_is_solvable = is_solvable(g);
    if !g_is_solvable && !in_pi0(p)? {
        findings.push(Finding::new(
            "solvable subgroup of p-power index with p outside pi0 forces solvability",
            format!("G of order {} is not solvable, p = {p}", g.order()),
        ));
    }

    let seed = mix(mix(g.digest(), h.digest()), limits.salt);
    let hall = find_hall_subgroup(h, p, seed);
    let hall_status = match &hall {
        Some(x) if x.order() == h.order() => HallStatus::WholeSubgroup,
        Some(_) => HallStatus::Found,
        None => {
            notes.push(format!(
                "Hall {p}'-subgroup search in H exhausted {HALL_DRAWS} draws"
            ));
            HallStatus::Inconclusive
        }
    };
    if let Some(x) = &hall {
        let index = g.order() / x.order();
        let p_index = factorize(index).iter().all(|&(q, _)| q == p as u128);
        if gcd(x.order(), p as u128) != 1 || !p_index {
            findings.push(Finding::new(
                "a Hall p'-subgroup of H is one of G",
                format!("witness of order {} has index {index}", x.order()),
            ));
        }
    }

    let conjugacy_checked = match (&hall, p) {
        (_, 7 | 13) => None,
        (None, _) => None,
        (Some(first), _) => {
            let mut rng = seeded_rng(mix(seed, 0x68616c6c));
            let t = g.random_element(&mut rng);
            let second = find_hall_subgroup(&h.conjugate(&t), p, mix(seed, 2));
            match second {
                Some(second) => match are_conjugate_subgroups(g, first, &second, limits) {
                    Ok(found) => Some(found.is_some()),
                    Err(Error::CapExceeded { .. }) => {
                        notes.push("Hall conjugacy search over the cap".into());
                        None
                    }
                    Err(e) => return Err(e),
                },
                None => None,
            }
        }
    };
    if conjugacy_checked == Some(false) {
        findings.push(Finding::new(
            "Hall p'-subgroups are conjugate for p outside {7, 13}",
            "two Hall witnesses are not conjugate".into(),
        ));
    }

    let series = radical_series(g, limits)?;
    let record = series.record();
    let factors = composition_factors_of_series(&series, limits)?;
    let factor_check = if g_is_solvable {
        check_factors_for_prime(p, &[], false)
    } else {
        check_factor_filter(g, h, limits)?
    };
    if !factor_check.passed {
        let names: Vec<String> = factor_check.offending.iter().map(|f| f.to_string()).collect();
        findings.push(Finding::new(
            "non-cyclic composition factors are in the list for p",
            format!("p = {p}: {}", names.join(", ")),
        ));
    }
    if g_is_solvable && record.k != 0 {
        findings.push(Finding::new("solvable G has k = 0", format!("k = {}", record.k)));
    }

    let bound = check_rad_bound(&record, p, m);
    let probabilistic = series.probabilistic || factors.probabilistic || factor_check.probabilistic;
    let bound_failures = [
        (!bound.exp5, "|G/rad(G)| <= m^5"),
        (bound.exp4 == Some(false), "|G/rad(G)| <= m^4 for p != 13"),
    ];
    for (failed, claim) in bound_failures {
        if failed {
            let detail = format!("|G/rad(G)| = {} with m = {m}", bound.quotient);
            if series.probabilistic {
                // a sampled radical may be too small, so the quotient too large
                notes.push(format!("{claim} not confirmed: {detail} (sampled radical)"));
            } else {
                findings.push(Finding::new(claim, detail));
            }
        }
    }

    let maroti = check_maroti(&record, &factors.factors);
    if maroti.ok == Some(false) {
        findings.push(Finding::new(
            "|X| <= 4^(k-1)",
            format!("|X| = {} with k = {}", record.x_order, record.k),
        ));
    }
    if !series.b_over_a_solvable {
        findings.push(Finding::new("B/A is solvable", format!("|B/A| = {}", record.b_order / record.a_order)));
    }

    Ok(AnalysisReport {
        p,
        alpha,
        m,
        g_order: g.order(),
        h_order: h.order(),
        core_order,
        g_is_solvable,
        hall_found: hall.is_some(),
        hall_status,
        hall_order: hall.as_ref().map(|x| x.order()),
        factor_check,
        rad_quotient: bound.quotient,
        rad_bound_exponent_5: bound.exp5,
        rad_bound_exponent_4: bound.exp4,
        maroti,
        b_over_a_solvable: series.b_over_a_solvable,
        series: record,
        conjugacy_checked,
        probabilistic,
        notes,
        findings,
    })
}

/// Inputs for the solvability criteria built from Hall subgroups.
#[derive(Debug, Clone)]
pub enum Criterion {
    /// Solvable Hall `p'`- and `q'`-subgroups, `{p, q} != {2, 7}`.
    TwoHall {
        p: u64,
        q: u64,
        hall_p: PermGroup,
        hall_q: PermGroup,
    },
    /// A solvable Hall `p'`-subgroup, `p != 3`, and a Hall `3'`-subgroup.
    WithThree {
        p: u64,
        hall_p: PermGroup,
        hall_3: PermGroup,
    },
    /// A normal Hall `p'`-subgroup (if one is supplied), `q` outside pi0,
    /// and a solvable Hall `{p, q}'`-subgroup.
    PNilpotent {
        p: u64,
        q: u64,
        complement: Option<PermGroup>,
        hall_pq: PermGroup,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Hypotheses hold and `G` is solvable, as claimed.
    Holds,
    NotApplicable(String),
    Finding(Finding),
}

/// Checks that `w` is a Hall `π'`-subgroup of `g` for the primes `excluded`.
fn validate_hall(g: &PermGroup, w: &PermGroup, excluded: &[u64]) -> Result<(), Error> {
    if !w.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let order = w.order();
    let index = g.order() / order;
    let coprime = excluded.iter().all(|&p| !order.is_multiple_of(p as u128));
    let index_ok = factorize(index)
        .iter()
        .all(|&(r, _)| excluded.contains(&(r as u64)));
    if coprime && index_ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "subgroup of order {order} is not a Hall subgroup for the primes {excluded:?}"
        )))
    }
}

pub fn check_criteria(g: &PermGroup, criterion: &Criterion) -> Result<Verdict, Error> {
    let conclude = |claim: &str| {
        if is_solvable(g) {
            Verdict::Holds
        } else {
            Verdict::Finding(Finding::new(claim, format!("G of order {} is not solvable", g.order())))
        }
    };
    match criterion {
        Criterion::TwoHall { p, q, hall_p, hall_q } => {
            validate_hall(g, hall_p, &[*p])?;
            validate_hall(g, hall_q, &[*q])?;
            if p == q {
                return Err(Error::Precondition("p and q must differ".into()));
            }
            if (*p, *q) == (2, 7) || (*p, *q) == (7, 2) {
                return Ok(Verdict::NotApplicable("{p, q} = {2, 7}".into()));
            }
            if !is_solvable(hall_p) || !is_solvable(hall_q) {
                return Ok(Verdict::NotApplicable("a Hall witness is not solvable".into()));
            }
            Ok(conclude("solvable Hall p'- and q'-subgroups force solvability"))
        }
        Criterion::WithThree { p, hall_p, hall_3 } => {
            if *p == 3 {
                return Err(Error::Precondition("p must differ from 3".into()));
            }
            validate_hall(g, hall_p, &[*p])?;
            validate_hall(g, hall_3, &[3])?;
            if !is_solvable(hall_p) {
                return Ok(Verdict::NotApplicable("the Hall p'-witness is not solvable".into()));
            }
            Ok(conclude("a solvable Hall p'-subgroup and a Hall 3'-subgroup force solvability"))
        }
        Criterion::PNilpotent { p, q, complement, hall_pq } => {
            validate_hall(g, hall_pq, &[*p, *q])?;
            let Some(complement) = complement else {
                return Ok(Verdict::NotApplicable("no normal p-complement supplied".into()));
            };
            validate_hall(g, complement, &[*p])?;
            if !complement.is_normal_in(g) {
                return Ok(Verdict::NotApplicable("the p-complement is not normal".into()));
            }
            if in_pi0(*q)? {
                return Ok(Verdict::NotApplicable(format!("q = {q} lies in pi0")));
            }
            if !is_solvable(hall_pq) {
                return Ok(Verdict::NotApplicable("the Hall {p,q}'-witness is not solvable".into()));
            }
            Ok(conclude("p-nilpotent with a solvable Hall {p,q}'-subgroup, q outside pi0, is solvable"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alternating, build_psl2, symmetric};

    #[test]
    fn allowed_list() {
        let f = SimpleFactorId::identify;
        assert!(factor_allowed(5, &f(60)));
        assert!(!factor_allowed(2, &f(60)));
        assert!(factor_allowed(3, &f(504)));
        assert!(factor_allowed(2, &f(168)));
        assert!(factor_allowed(7, &f(168)));
        assert!(factor_allowed(17, &f(4080)));
        assert!(factor_allowed(2, &f(31 * (31 * 31 - 1) / 2)));
        assert!(!factor_allowed(2, &f(360)));
        assert!(!factor_allowed(13, &f(20160)));
        assert!(factor_allowed(11, &f(11)));
    }

    #[test]
    fn alt5_pair() {
        let g = alternating(5);
        let h = g.point_stabilizer(4).unwrap();
        let r = analyze_pair(&g, &h, &Limits::default()).unwrap();
        assert_eq!((r.p, r.alpha, r.m), (5, 1, 5));
        assert_eq!(r.hall_status, HallStatus::WholeSubgroup);
        assert!(!r.g_is_solvable);
        assert!(r.factor_check.passed);
        assert_eq!(r.rad_quotient, 60);
        assert_eq!(r.rad_bound_exponent_4, Some(true));
        assert!(r.findings.is_empty(), "{:?}", r.findings);
    }

    #[test]
    fn solvable_pair_with_p_part() {
        let g = symmetric(4);
        let h = g.point_stabilizer(3).unwrap();
        let r = analyze_pair(&g, &h, &Limits::default()).unwrap();
        assert_eq!((r.p, r.alpha), (2, 2));
        assert_eq!(r.hall_status, HallStatus::Found);
        assert_eq!(r.hall_order, Some(3));
        assert_eq!(r.conjugacy_checked, Some(true));
        assert_eq!(r.series.k, 0);
        assert!(r.findings.is_empty());
    }

    #[test]
    fn rad_bound_guard_at_13() {
        let rec = RadicalSeriesRecord {
            rad_order: 1,
            a_order: 5616,
            b_order: 5616,
            g_order: 5616,
            k: 1,
            delta: vec![SimpleFactorId::identify(5616)],
            x_order: 1,
            probabilistic: false,
        };
        let b = check_rad_bound(&rec, 13, 13);
        assert_eq!((b.quotient, b.exp5, b.exp4), (5616, true, None));
    }

    #[test]
    fn criteria_examples() {
        let psl = build_psl2(11, 11).unwrap();
        let borel = psl.point_stabilizer(11).unwrap();
        // the Borel subgroup has order 55, not a {5,11}'-group
        assert!(check_criteria(
            &psl,
            &Criterion::PNilpotent { p: 5, q: 11, complement: None, hall_pq: borel }
        )
        .is_err());
    }
}
