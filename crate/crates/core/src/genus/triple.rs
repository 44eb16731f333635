use serde::{Deserialize, Serialize};

use super::FixTable;
use crate::error::{Error, Result};
use crate::groups::{
    coset_cycle_lengths, left_cosets, subgroup_closure, FermatAut, FermatGroup, FiniteGroup,
    Subgroup,
};

/// Elements `(c2, c3, c2p)` of orders `(2, 3, 2p)` with `c2 c3 c2p = 1`
/// generating `G`. They describe `F_p → F_p/G` as an orbifold with three cone
/// points; the fiber over cone point `i` is the `G`-set `G/<c_i>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingTriple {
    pub c2: FermatAut,
    pub c3: FermatAut,
    pub c2p: FermatAut,
}

impl GeneratingTriple {
    pub fn elements(&self) -> [FermatAut; 3] {
        [self.c2, self.c3, self.c2p]
    }

    pub fn periods(&self, p: u64) -> [u64; 3] {
        [2, 3, 2 * p]
    }

    /// Checks orders, the product relation and generation.
    pub fn validate(&self, group: &FermatGroup) -> Result<()> {
        let p = group.context().p();
        for (c, m) in self.elements().into_iter().zip(self.periods(p)) {
            if group.element_order(c) as u64 != m {
                return Err(Error::InconsistentOrbifold(format!(
                    "{c} does not have order {m}"
                )));
            }
        }
        let prod = group.multiply(group.multiply(self.c2, self.c3), self.c2p);
        if prod != group.identity() {
            return Err(Error::InconsistentOrbifold("c2 c3 c2p != 1".into()));
        }
        if subgroup_closure(group, &[self.c2, self.c3]).order() != group.order() {
            return Err(Error::InconsistentOrbifold(
                "triple does not generate G".into(),
            ));
        }
        Ok(())
    }

    fn cyclic_subgroups(&self, group: &FermatGroup) -> [Subgroup<FermatAut>; 3] {
        self.elements().map(|c| subgroup_closure(group, &[c]))
    }
}

/// First valid triple in the group's canonical element order.
pub fn find_generating_triple(group: &FermatGroup) -> Result<GeneratingTriple> {
    let p = group.context().p() as usize;
    let elems = group.elements();
    let of_order = |n: usize| -> Vec<FermatAut> {
        elems
            .iter()
            .copied()
            .filter(|&g| group.element_order(g) == n)
            .collect()
    };
    let involutions = of_order(2);
    let order_three = of_order(3);
    for &c2 in &involutions {
        for &c3 in &order_three {
            let c2p = group.inverse(group.multiply(c2, c3));
            if group.element_order(c2p) != 2 * p {
                continue;
            }
            let t = GeneratingTriple { c2, c3, c2p };
            if t.validate(group).is_ok() {
                return Ok(t);
            }
        }
    }
    Err(Error::SearchExhausted(p as u64))
}

/// Genus of `F_p/K` from the orbifold covering `F_p/K → F_p/G`.
///
/// Each cycle of length `l` of `c_i` on `G/K` is a cone point of order
/// `m_i/l`, and `χ(F_p/K) = [G:K] χ(F_p/G)` for orbifold Euler
/// characteristics. Everything is scaled by `N = lcm(2, 3, 2p) = 6p`.
pub fn coset_genus(
    group: &FermatGroup,
    k: &Subgroup<FermatAut>,
    triple: &GeneratingTriple,
) -> Result<u64> {
    let p = group.context().p() as i128;
    let big_n = 6 * p;
    let periods = [2i128, 3, 2 * p];
    let index = (group.order() / k.order()) as i128;

    // N χ(F_p/G) = N (2 - Σ (1 - 1/m_i))
    let chi_base: i128 = 2 * big_n - periods.iter().map(|m| big_n - big_n / m).sum::<i128>();

    let (labels, reps) = left_cosets(group, k);
    let mut cone_defect: i128 = 0;
    for (c, m) in triple.elements().into_iter().zip(periods) {
        for len in coset_cycle_lengths(group, &labels, &reps, c) {
            let len = len as i128;
            if m % len != 0 {
                return Err(Error::InconsistentOrbifold(format!(
                    "cycle of length {len} for an element of order {m}"
                )));
            }
            cone_defect += big_n - len * big_n / m;
        }
    }
    // N(2 - 2g) = [G:K] N χ_base + Σ N(1 - l/m)
    let rhs = index * chi_base + cone_defect;
    if rhs % big_n != 0 {
        return Err(Error::InconsistentOrbifold(format!(
            "Euler characteristic {rhs}/{big_n} is not an integer"
        )));
    }
    let two_minus_two_g = rhs / big_n;
    if two_minus_two_g % 2 != 0 || two_minus_two_g > 2 {
        return Err(Error::InconsistentOrbifold(format!(
            "2 - 2g = {two_minus_two_g} is not an even integer <= 2"
        )));
    }
    Ok(((2 - two_minus_two_g) / 2) as u64)
}

/// `|Fix(g)|`, counted as the cosets `h<c_i>` fixed by left multiplication,
/// summed over the three cone points.
pub fn full_fix_count(group: &FermatGroup, g: FermatAut, triple: &GeneratingTriple) -> Result<u64> {
    if g == group.identity() {
        return Err(Error::IdentityInput);
    }
    let mut total = 0u64;
    for c in triple.cyclic_subgroups(group) {
        let (labels, reps) = left_cosets(group, &c);
        total += reps
            .iter()
            .enumerate()
            .filter(|&(id, &h)| labels[group.index_of(group.multiply(g, h))] == id)
            .count() as u64;
    }
    Ok(total)
}

impl FixTable {
    /// Fixed-point counts on all of `G`, evaluated once per conjugacy class:
    /// `#{cosets h<c> fixed by g} = |cl(g) ∩ <c>| · |G| / (|cl(g)| · |<c>|)`.
    pub fn from_triple(group: &FermatGroup, triple: &GeneratingTriple) -> Self {
        let cyclic = triple.cyclic_subgroups(group);
        let order = group.order() as u64;
        let mut counts = vec![None; group.order()];
        for class in group.conjugacy_classes() {
            if class[0] == group.identity() {
                continue;
            }
            let size = class.len() as u64;
            let fix: u64 = cyclic
                .iter()
                .map(|c| {
                    let meet = class.iter().filter(|&&x| c.contains(x)).count() as u64;
                    meet * order / (size * c.order() as u64)
                })
                .sum();
            for &x in &class {
                counts[group.index_of(x)] = Some(fix);
            }
        }
        FixTable::from_counts(group.tag(), counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeContext;
    use crate::genus::{fermat_quotient_genus, rh_genus};

    fn setup(p: u64) -> (FermatGroup, GeneratingTriple) {
        let g = FermatGroup::new(&PrimeContext::new(p).unwrap());
        let t = find_generating_triple(&g).unwrap();
        (g, t)
    }

    #[test]
    fn triple_shape() {
        for p in [5, 7, 11, 13] {
            let (g, t) = setup(p);
            t.validate(&g).unwrap();
            let orders: Vec<_> = t.elements().iter().map(|&c| g.element_order(c)).collect();
            assert_eq!(orders, vec![2, 3, 2 * p as usize]);
            let trivial = subgroup_closure(&g, &[]);
            assert_eq!(
                coset_genus(&g, &trivial, &t).unwrap(),
                g.context().fermat_genus()
            );
            assert_eq!(full_fix_count(&g, g.a1(), &t).unwrap(), p);
        }
    }

    #[test]
    fn deterministic_search() {
        let (g, t) = setup(7);
        assert_eq!(find_generating_triple(&g).unwrap(), t);
    }

    #[test]
    fn coset_genus_examples() {
        for p in [5, 7, 13] {
            let (g, t) = setup(p);
            let whole = subgroup_closure(&g, &g.generators());
            assert_eq!(coset_genus(&g, &whole, &t).unwrap(), 0);
            assert_eq!(coset_genus(&g, &g.h(), &t).unwrap(), 0);
            assert_eq!(
                coset_genus(&g, &g.h(), &t).unwrap(),
                fermat_quotient_genus(&g, &g.h()).unwrap()
            );
            for j in 1..=p - 2 {
                let hj = g.h_j(j);
                assert_eq!(coset_genus(&g, &hj, &t).unwrap(), (p - 1) / 2);
            }
        }
    }

    #[test]
    fn fix_counts_agree_and_respect_bounds() {
        let (g, t) = setup(5);
        let table = FixTable::from_triple(&g, &t);
        let on_h = FixTable::fermat_on_h(&g);
        let bound = 2 + 2 * g.context().fermat_genus();
        for x in g.elements() {
            if x == g.identity() {
                assert_eq!(full_fix_count(&g, x, &t), Err(Error::IdentityInput));
                continue;
            }
            let direct = full_fix_count(&g, x, &t).unwrap();
            assert_eq!(table.get(&g, x), Some(direct));
            assert!(direct <= bound);
            if let Some(expected) = on_h.get(&g, x) {
                assert_eq!(direct, expected, "{x}");
            }
            for h in g.elements() {
                assert_eq!(table.get(&g, g.conjugate(h, x)), Some(direct));
            }
        }
    }

    #[test]
    fn riemann_hurwitz_for_the_full_group() {
        for p in [5, 7, 13] {
            let (g, t) = setup(p);
            let table = FixTable::from_triple(&g, &t);
            let whole = subgroup_closure(&g, &g.generators());
            assert_eq!(
                rh_genus(&g, g.context().fermat_genus(), &whole, &table).unwrap(),
                0
            );
            // 2g - 2 = |G| (-2 + Σ (1 - 1/m_i)), scaled by 6p
            let order = g.order() as i128;
            let p = p as i128;
            let lhs = 6 * p * (2 * g.context().fermat_genus() as i128 - 2);
            let rhs = order * (-12 * p + (6 * p - 3 * p) + (6 * p - 2 * p) + (6 * p - 3));
            assert_eq!(lhs, rhs);
        }
    }
}
