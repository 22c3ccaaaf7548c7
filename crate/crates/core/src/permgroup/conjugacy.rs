use crate::error::Error;
use crate::limits::Limits;
use crate::perm::Perm;

use super::coset::CosetTable;
use super::PermGroup;

/// Searches for `g` with `h1^g = h2`.
///
/// Since `h1^(h g) = h1^g` for `h` in `h1`, one representative per right
/// coset of `h1` covers every candidate, so the sweep is exhaustive.
pub fn are_conjugate_subgroups(
    g: &PermGroup,
    h1: &PermGroup,
    h2: &PermGroup,
    limits: &Limits,
) -> Result<Option<Perm>, Error> {
    if !h1.is_subgroup_of(g) || !h2.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if h1.order() != h2.order() {
        return Ok(None);
    }
    if h1.same_group(h2) {
        return Ok(Some(Perm::identity(g.degree())));
    }
    let index = g.order() / h1.order();
    if index > limits.element_cap {
        return Err(Error::CapExceeded {
            what: "conjugacy search",
            limit: limits.element_cap,
            actual: index,
        });
    }
    let cosets = CosetTable::new(g, h1, limits)?;
    Ok(cosets
        .representatives()
        .iter()
        .find(|r| h1.generators().iter().all(|x| h2.has(&x.conjugate_by(r))))
        .cloned())
}
