//! Direct products and the two wreath-product families of groups with a
//! solvable subgroup of prime-power index.
//!
//! Block `i` of a product occupies the points `i*d .. (i+1)*d`; top-group
//! generators move whole blocks without reordering their points.

use serde::Serialize;

use crate::error::Error;
use crate::limits::Limits;
use crate::numtheory::prime_power_decompose;
use crate::perm::Perm;
use crate::permgroup::{coset_action, is_solvable, PermGroup};

fn check_degree(degree: usize, limits: &Limits) -> Result<(), Error> {
    if degree > limits.degree_cap {
        return Err(Error::CapExceeded {
            what: "construction degree",
            limit: limits.degree_cap as u128,
            actual: degree as u128,
        });
    }
    Ok(())
}

/// `(p, alpha)` with `|g : h| = p^alpha`, `alpha >= 1`.
pub fn prime_power_index(g: &PermGroup, h: &PermGroup) -> Result<(u64, u32), Error> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let index = g.order() / h.order();
    if !(2..1 << 63).contains(&index) {
        return Err(Error::NotPrimePower(index));
    }
    prime_power_decompose(index as u64)?.ok_or(Error::NotPrimePower(index))
}

/// `T_1 × ... × T_k` on the disjoint union of the point sets, with
/// `H_1 × ... × H_k` inside it.
pub fn direct_product(parts: &[(PermGroup, PermGroup)]) -> Result<(PermGroup, PermGroup), Error> {
    direct_product_with(parts, &Limits::default())
}

pub fn direct_product_with(
    parts: &[(PermGroup, PermGroup)],
    limits: &Limits,
) -> Result<(PermGroup, PermGroup), Error> {
    if parts.is_empty() {
        return Err(Error::Precondition("direct product of no factors".into()));
    }
    let degree: usize = parts.iter().map(|(t, _)| t.degree()).sum();
    check_degree(degree, limits)?;
    let mut m_gens = Vec::new();
    let mut k_gens = Vec::new();
    let mut offset = 0;
    for (t, h) in parts {
        if h.degree() != t.degree() || !h.is_subgroup_of(t) {
            return Err(Error::NotSubgroup);
        }
        m_gens.extend(t.generators().iter().map(|x| x.shifted(offset, degree)));
        k_gens.extend(h.generators().iter().map(|x| x.shifted(offset, degree)));
        offset += t.degree();
    }
    Ok((
        PermGroup::from_generators(degree, m_gens)?,
        PermGroup::from_generators(degree, k_gens)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WreathMode {
    /// `G ≀ K` with `K` permuting `ℓ` copies of `G`'s points.
    TopOverBlocks,
    /// `K ≀ G` with `G` permuting copies of `K`'s points along its action
    /// on the cosets of `H`.
    BaseOverCosets,
}

/// A wreath product `W` with its solvable subgroup `S` of index `p^e`.
#[derive(Debug, Clone)]
pub struct WreathSpec {
    pub mode: WreathMode,
    pub w: PermGroup,
    pub s: PermGroup,
    pub p: u64,
    pub expected_index_exponent: u32,
}

impl WreathSpec {
    /// `|W : S| = p^e` exactly.
    pub fn index_ok(&self) -> bool {
        let index = self.w.order() / self.s.order();
        index * self.s.order() == self.w.order()
            && (self.p as u128).checked_pow(self.expected_index_exponent) == Some(index)
    }
}

/// Moves block `i` to block `top(i)` rigidly.
fn block_permutation(top: &Perm, d: usize, degree: usize) -> Perm {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for i in 0..top.degree() {
        let j = top.image(i as u32) as usize;
        for x in 0..d {
            images[i * d + x] = (j * d + x) as u32;
        }
    }
    Perm::from_images(images).expect("block permutation is a bijection")
}

/// `W = G ≀ K` on `deg(G) * ℓ` points, `ℓ = deg(K)`, with `S = H ≀ K`.
pub fn wreath_top(g: &PermGroup, h: &PermGroup, k: &PermGroup, limits: &Limits) -> Result<WreathSpec, Error> {
    let (p, alpha) = prime_power_index(g, h)?;
    if !is_solvable(h) {
        return Err(Error::Precondition("H is not solvable".into()));
    }
    if !is_solvable(k) {
        return Err(Error::Precondition("K is not solvable".into()));
    }
    let d = g.degree();
    let l = k.degree();
    let degree = d * l;
    check_degree(degree, limits)?;
    let top: Vec<Perm> = k
        .generators()
        .iter()
        .map(|t| block_permutation(t, d, degree))
        .collect();
    let mut w_gens = Vec::new();
    let mut s_gens = Vec::new();
    for i in 0..l {
        w_gens.extend(g.generators().iter().map(|x| x.shifted(i * d, degree)));
        s_gens.extend(h.generators().iter().map(|x| x.shifted(i * d, degree)));
    }
    w_gens.extend(top.iter().cloned());
    s_gens.extend(top);
    let spec = WreathSpec {
        mode: WreathMode::TopOverBlocks,
        w: PermGroup::from_generators(degree, w_gens)?,
        s: PermGroup::from_generators(degree, s_gens)?,
        p,
        expected_index_exponent: alpha * l as u32,
    };
    debug_assert!(spec.index_ok());
    Ok(spec)
}

/// `W = K^m ⋊ G` with `G` acting on the `m = |G : H|` cosets of `H`, and
/// `S = (L × K^(m-1)) ⋊ H`. When that action is not faithful a copy of `G`'s
/// own points is appended, so `W` contains `G` itself.
pub fn wreath_base(
    k: &PermGroup,
    l: &PermGroup,
    g: &PermGroup,
    h: &PermGroup,
    limits: &Limits,
) -> Result<WreathSpec, Error> {
    let (p, alpha) = prime_power_index(g, h)?;
    let (p_k, beta) = prime_power_index(k, l)?;
    if p != p_k {
        return Err(Error::Precondition(format!(
            "|G:H| is a power of {p} but |K:L| is a power of {p_k}"
        )));
    }
    if !is_solvable(h) || !is_solvable(k) {
        return Err(Error::Precondition("H and K must be solvable".into()));
    }
    let action = coset_action(g, h, limits)?;
    let m = action.degree();
    let d = k.degree();
    let faithful = action.image().order() == g.order();
    let extra = if faithful { 0 } else { g.degree() };
    let base_degree = d * m;
    let degree = base_degree + extra;
    check_degree(degree, limits)?;
    let top = |x: &Perm| -> Perm {
        let blocks = block_permutation(&action.map(x), d, degree);
        if faithful {
            blocks
        } else {
            blocks.then(&x.shifted(base_degree, degree))
        }
    };
    let mut w_gens: Vec<Perm> = (0..m)
        .flat_map(|i| k.generators().iter().map(move |x| x.shifted(i * d, degree)))
        .collect();
    w_gens.extend(g.generators().iter().map(top));
    // coset 0 is H itself, so H fixes block 0 and normalizes L there
    let mut s_gens: Vec<Perm> = l.generators().iter().map(|x| x.shifted(0, degree)).collect();
    for i in 1..m {
        s_gens.extend(k.generators().iter().map(|x| x.shifted(i * d, degree)));
    }
    s_gens.extend(h.generators().iter().map(top));
    let spec = WreathSpec {
        mode: WreathMode::BaseOverCosets,
        w: PermGroup::from_generators(degree, w_gens)?,
        s: PermGroup::from_generators(degree, s_gens)?,
        p,
        expected_index_exponent: alpha + beta,
    };
    debug_assert!(spec.index_ok());
    Ok(spec)
}

/// A generated pair `(W, S)` with `|W : S| = p^e`.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub w: PermGroup,
    pub s: PermGroup,
    pub p: u64,
    pub expected_index_exponent: u32,
}

impl Fixture {
    fn from_spec(name: &str, spec: WreathSpec) -> Fixture {
        Fixture {
            name: name.to_string(),
            w: spec.w,
            s: spec.s,
            p: spec.p,
            expected_index_exponent: spec.expected_index_exponent,
        }
    }

    fn from_product(name: &str, parts: &[(PermGroup, PermGroup)], limits: &Limits) -> Result<Fixture, Error> {
        let (w, s) = direct_product_with(parts, limits)?;
        let (p, e) = prime_power_index(&w, &s)?;
        Ok(Fixture {
            name: name.to_string(),
            w,
            s,
            p,
            expected_index_exponent: e,
        })
    }

    pub fn index_ok(&self) -> bool {
        let index = self.w.order() / self.s.order();
        (self.p as u128).checked_pow(self.expected_index_exponent) == Some(index)
    }
}

/// The standard family of wreath and direct-product fixtures over the
/// catalog seeds, in a fixed order.
pub fn generated_fixtures(limits: &Limits) -> Result<Vec<Fixture>, Error> {
    use crate::catalog::{alternating, build_psl2, build_psl3, cyclic, klein_four, symmetric};

    let a5 = alternating(5);
    let a4 = a5.point_stabilizer(4)?;
    let psl32 = build_psl3(2)?;
    let line2 = psl32.line_stabilizer(0)?;
    let plane2 = psl32.plane_stabilizer(0)?;
    let psl33 = build_psl3(3)?;
    let line3 = psl33.line_stabilizer(0)?;
    let l28 = build_psl2(8, 8)?;
    let borel8 = l28.point_stabilizer(8)?;
    let l27 = build_psl2(7, 7)?;
    let borel7 = l27.point_stabilizer(7)?;
    let l216 = build_psl2(16, 16)?;
    let borel16 = l216.point_stabilizer(16)?;
    let s4 = symmetric(4);
    let s3 = s4.point_stabilizer(3)?;
    let trivial = |n| PermGroup::trivial(n);
    let d8 = PermGroup::from_generators(
        4,
        vec![
            Perm::from_cycles(4, &[vec![0, 1, 2, 3]])?,
            Perm::from_cycles(4, &[vec![0, 2]])?,
        ],
    )?;

    let top = |name: &str, g: &PermGroup, h: &PermGroup, k: &PermGroup| -> Result<Fixture, Error> {
        Ok(Fixture::from_spec(name, wreath_top(g, h, k, limits)?))
    };
    let base = |name: &str, k: &PermGroup, l: &PermGroup, g: &PermGroup, h: &PermGroup| -> Result<Fixture, Error> {
        Ok(Fixture::from_spec(name, wreath_base(k, l, g, h, limits)?))
    };
    Ok(vec![
        top("Alt5 wr C1", &a5, &a4, &cyclic(1))?,
        top("Alt5 wr C2", &a5, &a4, &cyclic(2))?,
        top("Alt5 wr C3", &a5, &a4, &cyclic(3))?,
        top("Alt5 wr C4", &a5, &a4, &cyclic(4))?,
        top("Alt5 wr S3", &a5, &a4, &symmetric(3))?,
        top("Alt5 wr V4", &a5, &a4, &klein_four())?,
        top("PSL(3,2) line wr C2", &psl32.points, &line2, &cyclic(2))?,
        top("PSL(3,2) line wr C3", &psl32.points, &line2, &cyclic(3))?,
        top("PSL(3,2) plane wr C2", &psl32.points, &plane2, &cyclic(2))?,
        top("PSL(2,8) wr C2", &l28, &borel8, &cyclic(2))?,
        top("PSL(2,7) wr C2", &l27, &borel7, &cyclic(2))?,
        top("PSL(2,16) wr C2", &l216, &borel16, &cyclic(2))?,
        top("PSL(3,3) line wr C2", &psl33.points, &line3, &cyclic(2))?,
        top("Sym4 wr C2", &s4, &s3, &cyclic(2))?,
        base("C5 wr Alt5", &cyclic(5), &trivial(5), &a5, &a4)?,
        base("C2 wr PSL(2,7)", &cyclic(2), &trivial(2), &l27, &borel7)?,
        base("Sym4 wr PSL(2,7)", &s4, &alternating(4), &l27, &borel7)?,
        base("C3 wr PSL(2,8)", &cyclic(3), &trivial(3), &l28, &borel8)?,
        base("C7 wr PSL(3,2)", &cyclic(7), &trivial(7), &psl32.points, &line2)?,
        base("C3 wr Sym4", &cyclic(3), &trivial(3), &s4, &d8)?,
        Fixture::from_product("Alt5 x Alt5", &[(a5.clone(), a4.clone()), (a5.clone(), a4.clone())], limits)?,
        Fixture::from_product(
            "PSL(3,2) line x plane",
            &[(psl32.points.clone(), line2.clone()), (psl32.points.clone(), plane2.clone())],
            limits,
        )?,
        Fixture::from_product("PSL(3,2) x Sym3", &[(psl32.points.clone(), line2.clone()), (s3.clone(), s3.clone())], limits)?,
        Fixture::from_product("PSL(2,8) x Sym4", &[(l28.clone(), borel8.clone()), (s4.clone(), d8.clone())], limits)?,
        Fixture::from_product("Alt5 x C5", &[(a5.clone(), a4.clone()), (cyclic(5), trivial(5))], limits)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alternating, build_psl2, build_psl3, cyclic, symmetric};

    #[test]
    fn products_of_two_alt5() {
        let a5 = alternating(5);
        let a4 = a5.point_stabilizer(4).unwrap();
        let (m, k) = direct_product(&[(a5.clone(), a4.clone()), (a5.clone(), a4.clone())]).unwrap();
        assert_eq!((m.order(), m.order() / k.order()), (3600, 25));
        let (m1, k1) = direct_product(&[(a5.clone(), a4.clone())]).unwrap();
        assert!(m1.same_group(&a5) && k1.same_group(&a4));
        assert!(direct_product(&[(a4, a5)]).is_err());
    }

    #[test]
    fn wreath_top_examples() {
        let limits = Limits::default();
        let a5 = alternating(5);
        let a4 = a5.point_stabilizer(4).unwrap();
        let w = wreath_top(&a5, &a4, &cyclic(2), &limits).unwrap();
        assert_eq!((w.w.order(), w.w.order() / w.s.order()), (7200, 25));
        assert!(w.index_ok());
        let w1 = wreath_top(&a5, &a4, &cyclic(1), &limits).unwrap();
        assert_eq!(w1.w.order() / w1.s.order(), 5);
        let psl = build_psl3(2).unwrap();
        let line = psl.line_stabilizer(0).unwrap();
        let w3 = wreath_top(&psl.points, &line, &cyclic(3), &limits).unwrap();
        assert_eq!(w3.w.order() / w3.s.order(), 343);
        assert!(wreath_top(&a5, &a4, &alternating(5), &limits).is_err());
    }

    #[test]
    fn wreath_base_examples() {
        let limits = Limits::default();
        let a5 = alternating(5);
        let a4 = a5.point_stabilizer(4).unwrap();
        let c5 = cyclic(5);
        let w = wreath_base(&c5, &PermGroup::trivial(5), &a5, &a4, &limits).unwrap();
        assert_eq!(w.w.order(), 187_500);
        assert_eq!(w.w.order() / w.s.order(), 25);
        assert!(wreath_base(&c5, &c5, &a5, &a4, &limits).is_err());

        let l2 = build_psl2(7, 7).unwrap();
        let borel = l2.point_stabilizer(7).unwrap();
        let s4 = symmetric(4);
        let a4 = alternating(4);
        let w = wreath_base(&s4, &a4, &l2, &borel, &limits).unwrap();
        assert_eq!(w.w.order() / w.s.order(), 16);
        assert_eq!(w.w.order(), 24u128.pow(8) * 168);
    }

    #[test]
    fn unfaithful_coset_action_keeps_the_group() {
        let limits = Limits::default();
        let s4 = symmetric(4);
        // D8 has index 3 and contains the normal V4
        let d8 = PermGroup::from_generators(
            4,
            vec![
                crate::perm::parse_cycles(4, "(0 1 2 3)").unwrap(),
                crate::perm::parse_cycles(4, "(0 2)").unwrap(),
            ],
        )
        .unwrap();
        let w = wreath_base(&cyclic(3), &PermGroup::trivial(3), &s4, &d8, &limits).unwrap();
        assert_eq!(w.w.degree(), 3 * 3 + 4);
        assert_eq!(w.w.order(), 27 * 24);
        assert_eq!(w.w.order() / w.s.order(), 9);
        // V4 has index 6 in S4
        let v4 = crate::catalog::klein_four();
        assert!(wreath_base(&cyclic(2), &PermGroup::trivial(2), &s4, &v4, &limits).is_err());
    }

    #[test]
    fn fixture_family_indices() {
        let fixtures = generated_fixtures(&Limits::default()).unwrap();
        assert!(fixtures.len() >= 20);
        for f in &fixtures {
            assert!(f.index_ok(), "{}", f.name);
            assert!(is_solvable(&f.s), "{}", f.name);
        }
        let pl = fixtures.iter().find(|f| f.name == "PSL(3,2) line x plane").unwrap();
        assert_eq!(pl.w.order() / pl.s.order(), 49);
    }
}
