//! Self-verification suites: each returns named [`AuditLine`]s so that the
//! CLI and the acceptance tests report the same checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::PrimeContext;
use crate::audit::AuditLine;
use crate::certificates::fermat_certificate;
use crate::decompose::{
    decompose_coarse, decompose_fine, dimension_audit, fermat_kani_rosen_enumerated,
    fermat_kani_rosen_subspace, match_group_algebra_shape, refinement_audit,
};
use crate::error::{Error, Result};
use crate::genus::{
    coset_genus, fermat_quotient_genus, find_generating_triple, full_fix_count, rh_genus, FixTable,
};
use crate::groups::{cyclic_subgroups, subgroup_closure, FermatGroup, FiniteGroup};
use crate::monomial::{build_j, epsilon_report, RelationChecker, Word};
use crate::orbits::{orbit_partition, OrbitKind};

/// Largest prime verified at [`Depth::Full`] unless explicitly overridden.
pub const FULL_DEPTH_MAX_P: u64 = 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Depth {
    /// Checks that never enumerate `Aut(F_p)`.
    Basic,
    /// Adds the enumerated Kani–Rosen path, the genus dual oracle and the
    /// character certificates.
    Full,
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Depth::Basic => "basic",
            Depth::Full => "full",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckGroup {
    pub name: String,
    pub lines: Vec<AuditLine>,
}

impl CheckGroup {
    fn new(name: &str, lines: Vec<AuditLine>) -> Self {
        Self {
            name: name.into(),
            lines,
        }
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(AuditLine::passed)
    }
}

/// One orbit of size 3, one of size 2 iff `p = 1 (mod 3)`, the rest of size 6.
pub fn orbit_suite(ctx: &PrimeContext) -> CheckGroup {
    let part = orbit_partition(ctx);
    let has_gamma = usize::from(ctx.residue_mod_3() == 1);
    let sizes_ok = part.orbits.iter().all(|o| matches!(o.size(), 2 | 3 | 6));
    CheckGroup::new(
        "orbits",
        vec![
            AuditLine::compare("size-3 orbits", part.count(OrbitKind::SpecialOne), 1),
            AuditLine::compare("size-2 orbits", part.count(OrbitKind::Gamma), has_gamma),
            AuditLine::compare(
                "size-6 orbits",
                part.count(OrbitKind::Generic),
                ctx.generic_orbit_count(),
            ),
            AuditLine::predicate("orbit sizes in {2, 3, 6}", sizes_ok, "true", sizes_ok),
            AuditLine::compare("sum of orbit sizes", part.total_size(), ctx.p() - 2),
        ],
    )
}

/// Dimension count and group-algebra shape of both decompositions.
pub fn dimension_suite(ctx: &PrimeContext) -> Result<CheckGroup> {
    let coarse = decompose_coarse(ctx)?;
    let fine = decompose_fine(ctx)?;
    let mut lines = Vec::new();
    for d in [&coarse, &fine] {
        for mut l in dimension_audit(d)? {
            l.subject = format!("{}: {}", d.level, l.subject);
            lines.push(l);
        }
    }
    let shape = match_group_algebra_shape(&fine)?;
    for s in &shape {
        lines.push(AuditLine::noted(
            format!("{}^{} (dim {})", s.component, s.exponent, s.dimension),
            s.factor.jacobian_symbol(),
        ));
    }
    Ok(CheckGroup::new("dimension", lines))
}

/// The Kani–Rosen conditions for the `H_j` and the p-gonal refinement data.
pub fn kani_rosen_suite(ctx: &PrimeContext, depth: Depth) -> Result<CheckGroup> {
    let audit = fermat_kani_rosen_subspace(ctx)?;
    let n_pairs = audit.commuting_checks.len();
    let count = |it: &mut dyn Iterator<Item = &AuditLine>| it.filter(|l| l.passed()).count();
    let mut lines = vec![
        AuditLine::compare(
            "H_iH_j = H_jH_i for all i < j",
            count(&mut audit.commuting_checks.iter()),
            n_pairs,
        ),
        AuditLine::compare(
            "g(F_p/H_iH_j) = 0 for all i < j",
            count(&mut audit.genus_zero_checks.iter()),
            n_pairs,
        ),
    ];
    lines.push(audit.genus_sum_check.last().cloned().expect("sum line"));
    if depth == Depth::Full {
        let enumerated = fermat_kani_rosen_enumerated(&FermatGroup::new(ctx))?;
        lines.push(AuditLine::predicate(
            "enumerated audit equals subspace audit",
            enumerated == audit,
            "true",
            enumerated == audit,
        ));
    }
    if ctx.gamma_pair().is_some() {
        let r = refinement_audit(ctx)?;
        lines.extend(r.quotient_genera);
        lines.extend(r.kani_rosen.lines().cloned());
        lines.extend(r.certificate.lines);
    }
    Ok(CheckGroup::new("kani_rosen", lines))
}

/// `rh_genus` against `coset_genus` for every cyclic subgroup of `G` and for
/// `H`, the `H_j` and the `H_iH_j`.
pub fn dual_oracle_suite(ctx: &PrimeContext) -> Result<CheckGroup> {
    let group = FermatGroup::new(ctx);
    let triple = find_generating_triple(&group)?;
    let fix = FixTable::from_triple(&group, &triple);
    let on_h = FixTable::fermat_on_h(&group);
    let g_top = ctx.fermat_genus();
    let mut lines = Vec::new();

    let trivial = subgroup_closure(&group, &[]);
    lines.push(AuditLine::compare(
        "coset_genus(trivial)",
        coset_genus(&group, &trivial, &triple)?,
        g_top,
    ));

    let fix_agree = group
        .elements()
        .into_iter()
        .all(|x| match on_h.get(&group, x) {
            Some(c) => fix.get(&group, x) == Some(c),
            None => true,
        });
    lines.push(AuditLine::predicate(
        "fixed points from the triple agree on H",
        fix_agree,
        "true",
        fix_agree,
    ));
    let sample = [group.a1(), group.u(), group.v(), triple.c2p];
    let direct_agree = sample
        .iter()
        .map(|&x| Ok(full_fix_count(&group, x, &triple)? == fix.get(&group, x).unwrap_or(0)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    lines.push(AuditLine::predicate(
        "coset and class fixed-point counts agree",
        direct_agree,
        "true",
        direct_agree,
    ));

    let mut named = vec![("H".to_string(), group.h())];
    for j in 1..=ctx.p() - 2 {
        named.push((format!("H_{j}"), group.h_j(j)));
    }
    for i in 1..=ctx.p() - 2 {
        for j in i + 1..=ctx.p() - 2 {
            let gens = [
                group.translation(1, 1 + i as i64),
                group.translation(1, 1 + j as i64),
            ];
            named.push((format!("H_{i}H_{j}"), subgroup_closure(&group, &gens)));
        }
    }
    let mut agree = 0;
    for (name, k) in &named {
        let rh = fermat_quotient_genus(&group, k)?;
        let cg = coset_genus(&group, k, &triple)?;
        if rh == cg {
            agree += 1;
        } else {
            lines.push(AuditLine::compare(format!("g(F_p/{name})"), rh, cg));
        }
    }
    lines.push(AuditLine::compare(
        "rh = coset genus on H, H_j, H_iH_j",
        agree,
        named.len(),
    ));

    let cyclic = cyclic_subgroups(&group);
    let mut agree = 0;
    for k in &cyclic {
        let rh = rh_genus(&group, g_top, k, &fix)?;
        let cg = coset_genus(&group, k, &triple)?;
        if rh == cg {
            agree += 1;
        } else {
            lines.push(AuditLine::compare(
                format!("g(F_p/<{}>)", k.generators()[0]),
                rh,
                cg,
            ));
        }
    }
    lines.push(AuditLine::compare(
        "rh = coset genus on all cyclic subgroups",
        agree,
        cyclic.len(),
    ));
    Ok(CheckGroup::new("dual_oracle", lines))
}

/// Relations among `T`, `R` and `J` in exact monomial normal form.
pub fn monomial_suite(ctx: &PrimeContext) -> Result<CheckGroup> {
    let p = ctx.p();
    let mut lines = Vec::new();

    let (c1, j) = build_j(ctx)?;
    lines.push(AuditLine::predicate(
        "J preserves C_1",
        c1.render_map(&j),
        "automorphism",
        c1.verify_curve_automorphism(&j),
    ));
    lines.push(AuditLine::compare(
        "J^2 = id",
        c1.render_map(&c1.compose(&j, &j)?),
        c1.render_map(&c1.identity()),
    ));

    if let Some((g0, g1)) = ctx.gamma_pair() {
        let rc = RelationChecker::new(ctx, g0)?;
        let calc = rc.calculus();
        let show = |w: &Word| rc.evaluate(w).map(|m| calc.render_map(&m));
        let id = calc.render_map(&calc.identity());
        let g = g0 as i64;

        lines.push(AuditLine::compare(
            "T^p = id",
            show(&Word::t(p as i64))?,
            &id,
        ));
        lines.push(AuditLine::compare(
            "R^3 = id",
            calc.render_map(&rc.r_power(3)?),
            &id,
        ));
        let rt = Word::parse("R T")?;
        let twisted = Word::t(g * g).then(Word::parse("R")?);
        lines.push(AuditLine::compare(
            format!("R T = T^{} R", g * g),
            show(&rt)?,
            show(&twisted)?,
        ));
        let mut hold = 0;
        for l in 0..p as i64 {
            let lhs = Word::t(-l).then(Word::parse("R")?).then(Word::t(l));
            let rhs = Word::t(l * (g * g - 1)).then(Word::parse("R")?);
            if rc.verify_relation(&lhs, &rhs)? {
                hold += 1;
            }
        }
        lines.push(AuditLine::compare(
            "T^-l R T^l = T^(l(g^2-1)) R for l in 0..p",
            hold,
            p,
        ));
        lines.push(AuditLine::predicate(
            "R preserves C_gamma",
            calc.render_map(rc.r()),
            "automorphism",
            calc.verify_curve_automorphism(rc.r()),
        ));
        for gamma in [g0, g1] {
            let rep = epsilon_report(ctx, gamma)?;
            lines.push(AuditLine::compare(
                format!("sign exponents preserving C_{gamma}"),
                format!("{:?}", rep.passing),
                format!("[{}]", rep.rule),
            ));
        }
        let generated = calc.generated_set(&[calc.t_power(1), *rc.r()])?;
        lines.push(AuditLine::compare("|<T, R>|", generated.len(), 3 * p));
    } else {
        let (c, t) = crate::monomial::build_t(ctx, 1)?;
        lines.push(AuditLine::compare(
            "T^p = id",
            c.render_map(&c.map_pow(&t, p)?),
            c.render_map(&c.identity()),
        ));
    }
    Ok(CheckGroup::new("monomial", lines))
}

/// Character pairings against `chi_rat`.
pub fn certificate_suite(ctx: &PrimeContext) -> Result<CheckGroup> {
    let group = FermatGroup::new(ctx);
    let triple = find_generating_triple(&group)?;
    Ok(CheckGroup::new(
        "certificates",
        fermat_certificate(&group, &triple)?,
    ))
}

/// Runs every suite allowed at `depth`.
pub fn verify(ctx: &PrimeContext, depth: Depth) -> Result<Vec<CheckGroup>> {
    let mut groups = vec![
        orbit_suite(ctx),
        dimension_suite(ctx)?,
        kani_rosen_suite(ctx, depth)?,
        monomial_suite(ctx)?,
    ];
    if depth == Depth::Full {
        groups.push(dual_oracle_suite(ctx)?);
        groups.push(certificate_suite(ctx)?);
    }
    Ok(groups)
}

/// Rejects full-depth runs above [`FULL_DEPTH_MAX_P`] unless overridden.
pub fn check_depth(ctx: &PrimeContext, depth: Depth, allow_large: bool) -> Result<()> {
    if depth == Depth::Full && !allow_large && ctx.p() > FULL_DEPTH_MAX_P {
        return Err(Error::TooLarge {
            p: ctx.p(),
            max: FULL_DEPTH_MAX_P,
        });
    }
    Ok(())
}
