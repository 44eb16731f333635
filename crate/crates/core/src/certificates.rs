//! Integer class functions, permutation characters and exact pairings.
//!
//! The rational representation on `H_1` is only ever seen through its
//! character, obtained from fixed-point counts by Lefschetz:
//! `tr(g | H_1) = 2 - |Fix(g)|` for `g ≠ 1` and `2g` at the identity.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::audit::AuditLine;
use crate::error::{Error, Result};
use crate::genus::{fermat_quotient_genus, rh_genus, FixTable, GeneratingTriple};
use crate::groups::{
    left_cosets, pgonal_k, FermatGroup, FiniteGroup, GroupTag, PGonalGroup, Subgroup,
};

/// Integer-valued function on a group, stored per element in the group's
/// canonical enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    tag: GroupTag,
    values: Vec<i64>,
}

impl ClassFunction {
    pub fn from_values(tag: GroupTag, values: Vec<i64>) -> Self {
        Self { tag, values }
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value<G: FiniteGroup>(&self, group: &G, g: G::Elem) -> i64 {
        self.values[group.index_of(g)]
    }

    pub fn degree<G: FiniteGroup>(&self, group: &G) -> i64 {
        self.value(group, group.identity())
    }

    /// Constant on every conjugacy class.
    pub fn is_class_function<G: FiniteGroup>(&self, group: &G) -> bool {
        group.conjugacy_classes().iter().all(|class| {
            let v = self.value(group, class[0]);
            class.iter().all(|&x| self.value(group, x) == v)
        })
    }

    /// `(representative, class size, value)` per conjugacy class.
    pub fn class_values<G: FiniteGroup>(&self, group: &G) -> Vec<(G::Elem, usize, i64)> {
        group
            .conjugacy_classes()
            .into_iter()
            .map(|c| (c[0], c.len(), self.value(group, c[0])))
            .collect()
    }
}

pub fn trivial_character<G: FiniteGroup>(group: &G) -> ClassFunction {
    ClassFunction::from_values(group.tag(), vec![1; group.order()])
}

/// Lefschetz character: `2 g_top` at the identity and `2 - fix(g)` elsewhere.
pub fn lefschetz_character<G: FiniteGroup>(
    group: &G,
    g_top: u64,
    fix: &FixTable,
) -> Result<ClassFunction> {
    if fix.tag() != group.tag() {
        return Err(Error::FlavorMismatch(format!(
            "fix table for {:?} used with {:?}",
            fix.tag(),
            group.tag()
        )));
    }
    let e = group.identity();
    let values = group
        .elements()
        .into_iter()
        .map(|g| {
            if g == e {
                Ok(2 * g_top as i64)
            } else {
                let c = fix
                    .get(group, g)
                    .ok_or_else(|| Error::FixUndefined(format!("{g:?}")))?;
                Ok(2 - c as i64)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction::from_values(group.tag(), values))
}

/// Character of `G` on `H_1(F_p)`, with fixed points from the triple.
pub fn chi_rat(group: &FermatGroup, triple: &GeneratingTriple) -> Result<ClassFunction> {
    triple.validate(group)?;
    lefschetz_character(
        group,
        group.context().fermat_genus(),
        &FixTable::from_triple(group, triple),
    )
}

/// Character of `<T, R>` on `H_1(C_gamma)`.
pub fn chi_rat_pgonal(group: &PGonalGroup) -> Result<ClassFunction> {
    lefschetz_character(
        group,
        group.context().pgonal_genus(),
        &FixTable::pgonal(group),
    )
}

/// Permutation character of `G` on `G/K`: fixed cosets, counted once per
/// conjugacy class.
pub fn induced_perm_character<G: FiniteGroup>(group: &G, k: &Subgroup<G::Elem>) -> ClassFunction {
    let (labels, reps) = left_cosets(group, k);
    let mut values = vec![0i64; group.order()];
    for class in group.conjugacy_classes() {
        let g = class[0];
        let fixed = reps
            .iter()
            .enumerate()
            .filter(|&(id, &h)| labels[group.index_of(group.multiply(g, h))] == id)
            .count() as i64;
        for &x in &class {
            values[group.index_of(x)] = fixed;
        }
    }
    ClassFunction::from_values(group.tag(), values)
}

fn check_tags(a: &ClassFunction, b: &ClassFunction) -> Result<()> {
    if a.tag != b.tag || a.values.len() != b.values.len() {
        return Err(Error::FlavorMismatch(format!(
            "class functions on {:?} and {:?}",
            a.tag, b.tag
        )));
    }
    Ok(())
}

/// `(1/|G|) Σ_g a(g) b(g)`. Both functions are integer valued, hence real,
/// so no conjugation is needed.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Ratio<i64>> {
    check_tags(a, b)?;
    let sum: i64 = a.values.iter().zip(&b.values).map(|(x, y)| x * y).sum();
    Ok(Ratio::new(sum, a.values.len() as i64))
}

/// Same pairing, weighted by class sizes.
pub fn inner_product_by_classes<G: FiniteGroup>(
    group: &G,
    a: &ClassFunction,
    b: &ClassFunction,
) -> Result<Ratio<i64>> {
    check_tags(a, b)?;
    if a.tag != group.tag() {
        return Err(Error::FlavorMismatch(format!(
            "class function on {:?} evaluated on {:?}",
            a.tag,
            group.tag()
        )));
    }
    let sum: i64 = group
        .conjugacy_classes()
        .iter()
        .map(|c| c.len() as i64 * a.value(group, c[0]) * b.value(group, c[0]))
        .sum();
    Ok(Ratio::new(sum, group.order() as i64))
}

fn render(r: Ratio<i64>) -> String {
    r.to_string()
}

/// Pairings of `chi_rat` on `G` against the trivial character and the
/// permutation characters of the `H_j`.
pub fn fermat_certificate(
    group: &FermatGroup,
    triple: &GeneratingTriple,
) -> Result<Vec<AuditLine>> {
    let ctx = group.context();
    let p = ctx.p() as i64;
    let chi = chi_rat(group, triple)?;
    let triv = trivial_character(group);
    let mut lines = Vec::new();
    let mut pairings = Vec::new();

    lines.push(AuditLine::compare(
        "chi_rat(1)",
        chi.degree(group),
        (p - 1) * (p - 2),
    ));
    lines.push(AuditLine::compare(
        "chi_rat(a1)",
        chi.value(group, group.a1()),
        2 - p,
    ));
    let free = group.translation(1, 2);
    lines.push(AuditLine::compare(
        "chi_rat(a1 a2^2)",
        chi.value(group, free),
        2,
    ));

    let t = inner_product(&triv, &chi)?;
    pairings.push(t);
    lines.push(AuditLine::compare("<chi_triv, chi_rat>", render(t), 0));
    let tt = inner_product(&triv, &triv)?;
    pairings.push(tt);
    lines.push(AuditLine::compare("<chi_triv, chi_triv>", render(tt), 1));
    let cc = inner_product(&chi, &chi)?;
    pairings.push(cc);
    lines.push(AuditLine::predicate(
        "<chi_rat, chi_rat>",
        render(cc),
        "positive integer",
        cc.is_integer() && cc > Ratio::from_integer(0),
    ));

    for j in 1..=ctx.p() - 2 {
        let hj = group.h_j(j);
        let ind = induced_perm_character(group, &hj);
        lines.push(AuditLine::compare(
            format!("chi_(G/H_{j})(1)"),
            ind.degree(group),
            6 * p,
        ));
        let pair = inner_product(&ind, &chi)?;
        pairings.push(pair);
        lines.push(AuditLine::compare(
            format!("<chi_(G/H_{j}), chi_rat>"),
            render(pair),
            p - 1,
        ));
        let g = fermat_quotient_genus(group, &hj)?;
        lines.push(AuditLine::compare(
            format!("<chi_(G/H_{j}), chi_rat> = 2 g(F_p/H_{j})"),
            render(pair),
            2 * g,
        ));
    }

    let integral = pairings.iter().all(Ratio::is_integer);
    lines.push(AuditLine::predicate(
        "all pairings integral",
        integral,
        "true",
        integral,
    ));
    Ok(lines)
}

/// Character data showing that `H_1(C_gamma)` is a single rational isotypic
/// component of `A = <T, R>` whose irreducibles have a one-dimensional
/// `K_i`-fixed part.
///
/// The irreducibles of `A` are the three characters pulled back from `A/<T>`
/// and `(p-1)/3` induced ones of degree 3, all Galois conjugate. With
/// `<1, chi> = <Ind 1_<T>, chi> = 0`, every constituent has degree 3, and
/// `<chi, chi> = #classes - 3` forces each to occur exactly once. Then
/// `<Ind 1_{K_i}, chi> = (p-1)/3` gives `dim W^{K_i} = 1` for each of them,
/// which yields `J(C_gamma/K_i)^3 ∼ JC_gamma`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotypicCertificate {
    pub p: u64,
    pub gamma: u64,
    pub lines: Vec<AuditLine>,
}

impl IsotypicCertificate {
    pub fn holds(&self) -> bool {
        self.lines.iter().all(AuditLine::passed)
    }
}

pub fn pgonal_isotypic_certificate(group: &PGonalGroup) -> Result<IsotypicCertificate> {
    let ctx = group.context();
    let p = ctx.p() as i64;
    let chi = chi_rat_pgonal(group)?;
    let mut lines = Vec::new();

    lines.push(AuditLine::compare("chi_rat(1)", chi.degree(group), p - 1));
    lines.push(AuditLine::compare(
        "chi_rat(T)",
        chi.value(group, group.t()),
        -1,
    ));
    lines.push(AuditLine::compare(
        "chi_rat(R)",
        chi.value(group, group.r()),
        0,
    ));

    let classes = group.conjugacy_classes().len() as i64;
    lines.push(AuditLine::compare(
        "class count of A",
        classes,
        3 + (p - 1) / 3,
    ));

    let triv = inner_product(&trivial_character(group), &chi)?;
    lines.push(AuditLine::compare("<chi_triv, chi_rat>", render(triv), 0));
    let rot = inner_product(&induced_perm_character(group, &group.rotations()), &chi)?;
    lines.push(AuditLine::compare("<chi_(A/<T>), chi_rat>", render(rot), 0));
    let norm = inner_product(&chi, &chi)?;
    lines.push(AuditLine::compare(
        "<chi_rat, chi_rat>",
        render(norm),
        classes - 3,
    ));

    let fix = FixTable::pgonal(group);
    for i in 1..=3u8 {
        let k = pgonal_k(i, group)?;
        let pair = inner_product(&induced_perm_character(group, &k), &chi)?;
        lines.push(AuditLine::compare(
            format!("<chi_(A/K_{i}), chi_rat>"),
            render(pair),
            (p - 1) / 3,
        ));
        let g = rh_genus(group, ctx.pgonal_genus(), &k, &fix)?;
        lines.push(AuditLine::compare(
            format!("<chi_(A/K_{i}), chi_rat> = 2 g(C/K_{i})"),
            render(pair),
            2 * g,
        ));
    }
    Ok(IsotypicCertificate {
        p: ctx.p(),
        gamma: group.gamma(),
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeContext;
    use crate::genus::{coset_genus, find_generating_triple};
    use crate::groups::{cyclic_subgroups, subgroup_closure};

    fn setup(p: u64) -> (FermatGroup, GeneratingTriple) {
        let g = FermatGroup::new(&PrimeContext::new(p).unwrap());
        let t = find_generating_triple(&g).unwrap();
        (g, t)
    }

    #[test]
    fn chi_rat_values() {
        for p in [5, 7] {
            let (g, t) = setup(p);
            let chi = chi_rat(&g, &t).unwrap();
            assert_eq!(chi.degree(&g), ((p - 1) * (p - 2)) as i64);
            assert_eq!(chi.value(&g, g.a1()), 2 - p as i64);
            assert_eq!(chi.value(&g, g.translation(1, 3)), 2);
            assert!(chi.is_class_function(&g));
        }
        let (g, t) = setup(7);
        assert_eq!(chi_rat(&g, &t).unwrap().degree(&g), 30);
    }

    #[test]
    fn permutation_characters() {
        let (g, _) = setup(5);
        let whole = subgroup_closure(&g, &g.generators());
        assert_eq!(induced_perm_character(&g, &whole), trivial_character(&g));
        let reg = induced_perm_character(&g, &subgroup_closure(&g, &[]));
        assert_eq!(reg.degree(&g), 150);
        assert_eq!(reg.values().iter().filter(|&&v| v != 0).count(), 1);
        assert_eq!(induced_perm_character(&g, &g.h_j(1)).degree(&g), 30);
    }

    #[test]
    fn pairings_and_mismatch() {
        let (g, t) = setup(5);
        let chi = chi_rat(&g, &t).unwrap();
        let triv = trivial_character(&g);
        assert_eq!(inner_product(&triv, &chi).unwrap(), Ratio::from_integer(0));
        assert_eq!(inner_product(&triv, &triv).unwrap(), Ratio::from_integer(1));
        assert_eq!(
            inner_product(&chi, &chi).unwrap(),
            inner_product_by_classes(&g, &chi, &chi).unwrap()
        );
        let (g7, _) = setup(7);
        assert!(matches!(
            inner_product(&triv, &trivial_character(&g7)),
            Err(Error::FlavorMismatch(_))
        ));
        let a = PGonalGroup::new(&PrimeContext::new(7).unwrap()).unwrap();
        assert!(matches!(
            inner_product(&trivial_character(&a), &trivial_character(&g7)),
            Err(Error::FlavorMismatch(_))
        ));
    }

    /// Frobenius reciprocity: the `K`-invariant part of `H_1` has dimension
    /// `2 g(F_p/K)`.
    #[test]
    fn pairing_equals_twice_coset_genus() {
        for p in [5, 7] {
            let (g, t) = setup(p);
            let chi = chi_rat(&g, &t).unwrap();
            for k in cyclic_subgroups(&g) {
                let pair = inner_product(&induced_perm_character(&g, &k), &chi).unwrap();
                let genus = coset_genus(&g, &k, &t).unwrap();
                assert_eq!(pair, Ratio::from_integer(2 * genus as i64), "p={p}");
                let by_class =
                    inner_product_by_classes(&g, &induced_perm_character(&g, &k), &chi).unwrap();
                assert_eq!(pair, by_class);
            }
        }
    }

    #[test]
    fn fermat_certificate_passes() {
        for p in [5, 7, 13] {
            let (g, t) = setup(p);
            let lines = fermat_certificate(&g, &t).unwrap();
            assert!(lines.iter().all(AuditLine::passed), "{lines:#?}");
        }
    }

    #[test]
    fn isotypic_certificate_passes() {
        for p in [7, 13, 19, 31, 37] {
            let ctx = PrimeContext::new(p).unwrap();
            let (a, b) = ctx.gamma_pair().unwrap();
            for gamma in [a, b] {
                let group = PGonalGroup::with_gamma(&ctx, gamma).unwrap();
                let cert = pgonal_isotypic_certificate(&group).unwrap();
                assert!(cert.holds(), "{cert:#?}");
            }
        }
    }
}
