//! Named fixture groups, projective linear groups, and the six families of
//! simple groups with a solvable subgroup of prime-power index.

use serde::Serialize;

use crate::error::Error;
use crate::field::{Field, FieldElem};
use crate::limits::Limits;
use crate::numtheory::{
    fermat_index, is_mersenne_prime, is_prime, prime_power_decompose,
};
use crate::perm::{gcd, Perm};
use crate::permgroup::{are_conjugate_subgroups, coset_action, is_primitive, is_solvable, PermGroup};

/// Default bound on the field size of the projective lines in the catalog.
pub const DEFAULT_Q_CAP: u64 = 257;

/// Largest degree accepted for `A<n>` and `S<n>`.
pub const MAX_NAMED_DEGREE: usize = 12;

/// Largest degree accepted for `C<n>` and `D<n>`.
pub const MAX_CYCLIC_DEGREE: usize = 10_000;

fn named_group(degree: usize, gens: Vec<Perm>) -> PermGroup {
    PermGroup::from_generators(degree, gens).expect("generators have the stated degree")
}

fn cycle(degree: usize, pts: impl IntoIterator<Item = u32>) -> Perm {
    Perm::from_cycles(degree, &[pts.into_iter().collect()]).expect("valid cycle")
}

pub fn alternating(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle(n, [0, 1, 2]));
    }
    if n >= 4 {
        if n % 2 == 1 {
            gens.push(cycle(n, 0..n as u32));
        } else {
            gens.push(cycle(n, 1..n as u32));
        }
    }
    named_group(n, gens)
}

pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, [0, 1]));
    }
    if n >= 3 {
        gens.push(cycle(n, 0..n as u32));
    }
    named_group(n, gens)
}

pub fn cyclic(n: usize) -> PermGroup {
    let gens = if n >= 2 { vec![cycle(n, 0..n as u32)] } else { Vec::new() };
    named_group(n, gens)
}

/// Symmetries of the regular `n`-gon, of order `2n`. `D1` is `C2` and `D2`
/// is the Klein four-group on 4 points.
pub fn dihedral(n: usize) -> PermGroup {
    match n {
        1 => cyclic(2),
        2 => klein_four(),
        _ => {
            let reflection: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
            let gens = vec![
                cycle(n, 0..n as u32),
                Perm::from_images(reflection).expect("reflection is a bijection"),
            ];
            named_group(n, gens)
        }
    }
}

pub fn klein_four() -> PermGroup {
    let a = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
    let b = Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
    named_group(4, vec![a, b])
}

/// `A<n>`, `S<n>`, `C<n>`, `D<n>` (dihedral of order `2n`), or `V4`.
pub fn build_named(name: &str) -> Result<PermGroup, Error> {
    let name = name.trim();
    if name == "V4" {
        return Ok(klein_four());
    }
    let unknown = || Error::UnknownName(name.to_string());
    let mut chars = name.chars();
    let family = chars.next().ok_or_else(unknown)?;
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    if n == 0 {
        return Err(unknown());
    }
    let cap = match family {
        'A' | 'S' => MAX_NAMED_DEGREE,
        'C' | 'D' => MAX_CYCLIC_DEGREE,
        _ => return Err(unknown()),
    };
    if n > cap {
        return Err(Error::CapExceeded {
            what: "named group degree",
            limit: cap as u128,
            actual: n as u128,
        });
    }
    Ok(match family {
        'A' => alternating(n),
        'S' => symmetric(n),
        'C' => cyclic(n),
        _ => dihedral(n),
    })
}

/// `|PSL(2, q)| = q (q^2 - 1) / gcd(2, q - 1)`.
pub fn psl2_order(q: u128) -> u128 {
    q * (q * q - 1) / gcd(2, q - 1)
}

/// `|PSL(3, q)| = q^3 (q^3 - 1)(q^2 - 1) / gcd(3, q - 1)`.
pub fn psl3_order(q: u128) -> u128 {
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1) / gcd(3, q - 1)
}

/// `PSL(2, q)` on the `q + 1` points of the projective line; point `q` is
/// the point at infinity and `x < q` is the field element encoded as `x`.
pub fn build_psl2(q: u64, q_cap: u64) -> Result<PermGroup, Error> {
    if q > q_cap {
        return Err(Error::CapExceeded {
            what: "PSL(2,q) field size",
            limit: q_cap as u128,
            actual: q as u128,
        });
    }
    let field = Field::new(q)?;
    let qi = q as u32;
    let inf = qi;
    let one = field.one();
    let lambda = field.primitive_element();
    // squares only: x -> lambda x has determinant lambda, outside PSL for odd q
    let lambda2 = field.mul(lambda, lambda);
    let translate: Vec<u32> = (0..qi)
        .map(|x| field.add(FieldElem(x), one).0)
        .chain([inf])
        .collect();
    let scale: Vec<u32> = (0..qi)
        .map(|x| field.mul(FieldElem(x), lambda2).0)
        .chain([inf])
        .collect();
    let invert: Vec<u32> = (0..qi)
        .map(|x| match field.inv(FieldElem(x)) {
            Some(y) => field.neg(y).0,
            None => inf,
        })
        .chain([0])
        .collect();
    let gens = [translate, scale, invert]
        .into_iter()
        .map(Perm::from_images)
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::from_generators(q as usize + 1, gens)
}

/// `PSL(3, q)` for `q` in {2, 3}, on projective points and on points ∪ lines.
#[derive(Debug, Clone)]
pub struct Psl3 {
    pub q: u64,
    /// Number of projective points (and of projective lines).
    pub n: usize,
    /// Action on the `n` points.
    pub points: PermGroup,
    /// Action on points `0..n` and lines `n..2n`.
    pub combined: PermGroup,
}

impl Psl3 {
    /// Stabilizer of a 1-dimensional subspace (a projective point).
    pub fn line_stabilizer(&self, point: u32) -> Result<PermGroup, Error> {
        self.points.point_stabilizer(point)
    }

    /// Stabilizer of a 2-dimensional subspace (a projective line), as a
    /// subgroup of the point action.
    pub fn plane_stabilizer(&self, line: u32) -> Result<PermGroup, Error> {
        if line as usize >= self.n {
            return Err(Error::PointOutOfRange {
                point: line as usize,
                degree: self.n,
            });
        }
        self.combined
            .point_stabilizer(self.n as u32 + line)?
            .restricted_to(0, self.n)
    }
}

fn normalize(v: [u32; 3], q: u32) -> [u32; 3] {
    let lead = *v.iter().find(|&&c| c != 0).expect("nonzero vector");
    let inv = (1..q).find(|&c| c * lead % q == 1).expect("q prime");
    v.map(|c| c * inv % q)
}

pub fn build_psl3(q: u64) -> Result<Psl3, Error> {
    if q != 2 && q != 3 {
        return Err(Error::Unsupported(format!("PSL(3,{q}): only q = 2, 3")));
    }
    let qq = q as u32;
    let mut vectors: Vec<[u32; 3]> = Vec::new();
    for a in 0..qq {
        for b in 0..qq {
            for c in 0..qq {
                let v = [a, b, c];
                if v != [0, 0, 0] && normalize(v, qq) == v {
                    vectors.push(v);
                }
            }
        }
    }
    let n = vectors.len();
    let index = |v: [u32; 3]| -> u32 {
        vectors
            .iter()
            .position(|&w| w == normalize(v, qq))
            .expect("normalized vectors are listed") as u32
    };
    let mut point_gens = Vec::new();
    let mut combined_gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            // row vectors: x -> x (1 + E_ij) adds x_i to coordinate j
            let on_points: Vec<u32> = vectors
                .iter()
                .map(|&x| {
                    let mut y = x;
                    y[j] = (y[j] + x[i]) % qq;
                    index(y)
                })
                .collect();
            // columns transform by the inverse: l -> (1 - E_ij) l subtracts l_j from l_i
            let on_lines: Vec<u32> = vectors
                .iter()
                .map(|&l| {
                    let mut m = l;
                    m[i] = (m[i] + qq - l[j]) % qq;
                    index(m) + n as u32
                })
                .collect();
            let mut both = on_points.clone();
            both.extend(on_lines);
            point_gens.push(Perm::from_images(on_points)?);
            combined_gens.push(Perm::from_images(both)?);
        }
    }
    Ok(Psl3 {
        q,
        n,
        points: PermGroup::from_generators(n, point_gens)?,
        combined: PermGroup::from_generators(2 * n, combined_gens)?,
    })
}

/// One instantiated row of the classification: `T` simple, `H` solvable of
/// index `p^alpha`.
#[derive(Debug, Clone)]
pub struct GuralnickCase {
    pub case_id: u8,
    pub t_name: String,
    /// Field size, where the case has one.
    pub q: Option<u64>,
    /// The `m` with `q = 2^(2^m)` in the Fermat case.
    pub m_param: Option<u32>,
    pub p: u64,
    pub alpha: u32,
    pub t: PermGroup,
    pub h: PermGroup,
    /// Number of conjugacy classes of Hall `p'`-subgroups claimed for `T`.
    pub expected_class_count: usize,
    /// `|Out(T)|`, a catalog constant.
    pub out_order: u128,
    /// Stabilizers used for the class count, `h` first.
    pub candidates: Vec<PermGroup>,
}

fn psl2_case(case_id: u8, q: u64, p: u64, alpha: u32, out_order: u128, m: Option<u32>) -> Result<GuralnickCase, Error> {
    let t = build_psl2(q, q)?;
    let h = t.point_stabilizer(q as u32)?;
    let other = t.point_stabilizer(0)?;
    Ok(GuralnickCase {
        case_id,
        t_name: format!("PSL(2,{q})"),
        q: Some(q),
        m_param: m,
        p,
        alpha,
        t,
        h: h.clone(),
        expected_class_count: 1,
        out_order,
        candidates: vec![h, other],
    })
}

fn psl3_case(case_id: u8, q: u64, p: u64) -> Result<GuralnickCase, Error> {
    let psl = build_psl3(q)?;
    let h = psl.line_stabilizer(0)?;
    let candidates = vec![
        h.clone(),
        psl.line_stabilizer(1)?,
        psl.plane_stabilizer(0)?,
        psl.plane_stabilizer(1)?,
    ];
    Ok(GuralnickCase {
        case_id,
        t_name: format!("PSL(3,{q})"),
        q: Some(q),
        m_param: None,
        p,
        alpha: 1,
        t: psl.points,
        h,
        expected_class_count: 2,
        out_order: 2,
        candidates,
    })
}

fn alt5_case() -> GuralnickCase {
    let t = alternating(5);
    let h = t.point_stabilizer(4).expect("point in range");
    let other = t.point_stabilizer(0).expect("point in range");
    GuralnickCase {
        case_id: 1,
        t_name: "Alt(5)".into(),
        q: None,
        m_param: None,
        p: 5,
        alpha: 1,
        t,
        h: h.clone(),
        expected_class_count: 1,
        out_order: 2,
        candidates: vec![h, other],
    }
}

/// Every case for the prime `p` whose field size is at most `q_cap`.
/// Empty when `p` is not prime or lies outside `{2, 7, 13} ∪ Fermat`.
pub fn guralnick_cases(p: u64, q_cap: u64) -> Result<Vec<GuralnickCase>, Error> {
    let mut cases = Vec::new();
    if !is_prime(p) {
        return Ok(cases);
    }
    match p {
        2 => {
            for q in 7..=q_cap {
                if is_mersenne_prime(q) {
                    let alpha = (q + 1).trailing_zeros();
                    cases.push(psl2_case(3, q, 2, alpha, 2, None)?);
                }
            }
        }
        3 if q_cap >= 8 => cases.push(psl2_case(2, 8, 3, 2, 3, None)?),
        5 => cases.push(alt5_case()),
        7 if q_cap >= 2 => cases.push(psl3_case(5, 2, 7)?),
        13 if q_cap >= 3 => cases.push(psl3_case(6, 3, 13)?),
        _ => {
            if let Some(m) = fermat_index(p).filter(|&m| m >= 2) {
                let q = p - 1;
                if q <= q_cap {
                    cases.push(psl2_case(4, q, p, 1, 1 << m, Some(m))?);
                }
            }
        }
    }
    Ok(cases)
}

/// Primes that can carry a case with field size at most `q_cap`.
pub fn catalog_primes() -> Vec<u64> {
    vec![2, 3, 5, 7, 13, 17, 257, 65537]
}

/// The verification suite: all cases with field size at most `q_cap`,
/// leaving out the Fermat cases with `m >= 3` unless `large_fermat` is set.
pub fn suite(q_cap: u64, large_fermat: bool) -> Result<Vec<GuralnickCase>, Error> {
    let mut out = Vec::new();
    for p in catalog_primes() {
        for case in guralnick_cases(p, q_cap)? {
            if case.m_param.is_none_or(|m| m < 3 || large_fermat) {
                out.push(case);
            }
        }
    }
    out.sort_by_key(|c| (c.case_id, c.q));
    Ok(out)
}

/// The outcome of checking one case against its four claims.
#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub case_id: u8,
    pub t_name: String,
    pub q: Option<u64>,
    pub p: u64,
    pub alpha: u32,
    pub t_order: u128,
    pub h_order: u128,
    pub index: u128,
    pub index_ok: bool,
    pub h_solvable: bool,
    pub t_solvable: bool,
    pub maximal: bool,
    pub hall: bool,
    pub aut_bound_ok: bool,
    pub class_count: usize,
    pub class_count_ok: bool,
    pub four_aut_t: u128,
    pub bound_rhs: u128,
    /// `p^(4 alpha)`, the bound that holds outside the `p = 13` case.
    pub m4: u128,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.index_ok
            && self.h_solvable
            && !self.t_solvable
            && self.maximal
            && self.hall
            && self.aut_bound_ok
            && self.class_count_ok
    }
}

/// Number of conjugacy classes met by `candidates`.
pub fn count_classes(t: &PermGroup, candidates: &[PermGroup], limits: &Limits) -> Result<usize, Error> {
    let mut reps: Vec<&PermGroup> = Vec::new();
    for c in candidates {
        let mut fresh = true;
        for r in &reps {
            if are_conjugate_subgroups(t, r, c, limits)?.is_some() {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(c);
        }
    }
    Ok(reps.len())
}

pub fn verify_case(case: &GuralnickCase, limits: &Limits) -> Result<CaseReport, Error> {
    let t_order = case.t.order();
    let h_order = case.h.order();
    let index = t_order / h_order;
    let m = (case.p as u128).pow(case.alpha);
    let action = coset_action(&case.t, &case.h, limits)?;
    let maximal = is_primitive(action.image())?;
    let four_aut_t = 4 * t_order * case.out_order;
    let m4 = m.pow(4);
    let bound_rhs = if case.case_id == 6 { m.pow(5) } else { m4 };
    let class_count = count_classes(&case.t, &case.candidates, limits)?;
    Ok(CaseReport {
        case_id: case.case_id,
        t_name: case.t_name.clone(),
        q: case.q,
        p: case.p,
        alpha: case.alpha,
        t_order,
        h_order,
        index,
        index_ok: index * h_order == t_order && index == m,
        h_solvable: is_solvable(&case.h),
        t_solvable: is_solvable(&case.t),
        maximal,
        hall: gcd(h_order, index) == 1,
        aut_bound_ok: four_aut_t <= bound_rhs,
        class_count,
        class_count_ok: class_count == case.expected_class_count,
        four_aut_t,
        bound_rhs,
        m4,
    })
}

/// `q` such that `n = |PSL(2, q)|` for a prime power `q >= 4`.
pub fn psl2_field_of_order(n: u128) -> Option<u64> {
    // |PSL(2,q)| >= q (q^2 - 1) / 2, which is increasing in q
    let mut q: u64 = 4;
    while (q as u128) * ((q as u128).pow(2) - 1) / 2 <= n {
        if psl2_order(q as u128) == n && matches!(prime_power_decompose(q), Ok(Some(_))) {
            return Some(q);
        }
        q += 1;
    }
    None
}
