//! Quotient genera.
//!
//! Two independent routes are implemented:
//!
//! * [`rh_genus`]: Riemann–Hurwitz in group form,
//!   `2g - 2 = |K| (2g_K - 2) + Σ_{k ≠ 1} |Fix(k)|`, driven by a [`FixTable`];
//! * [`coset_genus`]: the orbifold covering `F_p/K → F_p/G` read off from the
//!   cycle structure of a `(2, 3, 2p)` generating triple on `G/K`.
//!
//! Fixed-point counts outside `H = <a1, a2>` come from the same triple
//! ([`full_fix_count`]), so the dual-oracle checks compare two different
//! uses of it against the counts stated for `H` and for `<T, R>`.

mod triple;

use crate::error::{Error, Result};
use crate::groups::{FermatAut, FermatGroup, FiniteGroup, GroupTag, PGonalGroup, Subgroup};

pub use triple::{coset_genus, find_generating_triple, full_fix_count, GeneratingTriple};

/// Number of fixed points of each non-identity element, indexed like the
/// group's enumeration. `None` marks elements with no recorded count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixTable {
    tag: GroupTag,
    counts: Vec<Option<u64>>,
}

impl FixTable {
    /// Counts on `H` for the Fermat curve: `a_i^k` fixes `p` points, every
    /// other non-identity translation acts freely. Elements outside `H` are
    /// left undefined.
    pub fn fermat_on_h(group: &FermatGroup) -> Self {
        let p = group.context().p();
        let counts = group
            .elements()
            .into_iter()
            .map(|g| {
                if !g.is_translation() || (g.m == 0 && g.n == 0) {
                    None
                } else if g.m == 0 || g.n == 0 || g.m == g.n {
                    Some(p)
                } else {
                    Some(0)
                }
            })
            .collect();
        Self {
            tag: group.tag(),
            counts,
        }
    }

    /// Counts on `C_gamma`: `T^k` fixes the three points over `0, 1, oo`;
    /// every element of order 3 fixes two points.
    pub fn pgonal(group: &PGonalGroup) -> Self {
        let counts = group
            .elements()
            .into_iter()
            .map(|g| match (g.k, g.e) {
                (0, 0) => None,
                (_, 0) => Some(3),
                _ => Some(2),
            })
            .collect();
        Self {
            tag: group.tag(),
            counts,
        }
    }

    pub fn from_counts(tag: GroupTag, counts: Vec<Option<u64>>) -> Self {
        Self { tag, counts }
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn get<G: FiniteGroup>(&self, group: &G, g: G::Elem) -> Option<u64> {
        self.counts[group.index_of(g)]
    }

    pub fn counts(&self) -> &[Option<u64>] {
        &self.counts
    }
}

/// Genus of `S/K` from `2g - 2 = |K| (2g_K - 2) + Σ_{k ≠ 1} fix(k)`.
///
/// A non-integral or negative result is an error, never rounded.
pub fn rh_genus<G: FiniteGroup>(
    group: &G,
    g_top: u64,
    k: &Subgroup<G::Elem>,
    fix: &FixTable,
) -> Result<u64> {
    if fix.tag() != group.tag() {
        return Err(Error::FlavorMismatch(format!(
            "fix table for {:?} used with {:?}",
            fix.tag(),
            group.tag()
        )));
    }
    let e = group.identity();
    let mut total: u64 = 0;
    for &x in k.elements() {
        if x == e {
            continue;
        }
        let c = fix
            .get(group, x)
            .ok_or_else(|| Error::FixUndefined(format!("{x:?}")))?;
        total += c;
    }
    genus_from_fix_sum(g_top, k.order() as u64, total)
}

/// Solves `2g - 2 = |K| (2g_K - 2) + fix_sum` for `g_K`.
pub fn genus_from_fix_sum(g_top: u64, order: u64, fix_sum: u64) -> Result<u64> {
    let order = order as i128;
    let numerator = 2 * g_top as i128 - 2 - fix_sum as i128;
    if numerator % order != 0 {
        return Err(Error::InconsistentRh(format!(
            "2g-2-Σfix = {numerator} is not divisible by |K| = {order}"
        )));
    }
    let two_g_minus_two = numerator / order;
    if two_g_minus_two % 2 != 0 || two_g_minus_two < -2 {
        return Err(Error::InconsistentRh(format!(
            "2g_K - 2 = {two_g_minus_two} is not an even integer >= -2"
        )));
    }
    Ok((two_g_minus_two / 2 + 1) as u64)
}

/// Genus of `F_p/K` for `K ≤ H`, using only the counts on `H`.
pub fn fermat_quotient_genus(group: &FermatGroup, k: &Subgroup<FermatAut>) -> Result<u64> {
    if !k.elements().iter().all(FermatAut::is_translation) {
        return Err(Error::NotSubgroupOfH);
    }
    rh_genus(
        group,
        group.context().fermat_genus(),
        k,
        &FixTable::fermat_on_h(group),
    )
}
