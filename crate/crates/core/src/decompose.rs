//! Isogeny decompositions of `JF_p` and the audits they are emitted with.
//!
//! The coarse decomposition comes from Kani–Rosen applied to the free
//! subgroups `H_1, ..., H_{p-2}` of `H`, with `F_p/H_j ≅ C_{p-1-j}` grouped
//! by isomorphism class. The fine one splits `JC_gamma` further into three
//! copies of `JE_gamma`, certified on `A = <T, R>` by the quotient genera of
//! the `K_i` and an isotypic character computation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::PrimeContext;
use crate::audit::{first_failure, AuditLine, Verdict};
use crate::certificates::{pgonal_isotypic_certificate, IsotypicCertificate};
use crate::curves::{genus_of, quotient_to_curve, CurveFamily, CurveSpec};
use crate::error::{Error, Result};
use crate::genus::{genus_from_fix_sum, rh_genus, FixTable};
use crate::groups::{
    pgonal_k, product_set, subgroup_closure, FermatGroup, FiniteGroup, PGonalGroup, Subgroup,
};
use crate::orbits::{orbit_partition, OrbitKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Coarse,
    Fine,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Coarse => "coarse",
            Level::Fine => "fine",
        })
    }
}

/// How the Kani–Rosen conditions for the `H_j` are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KaniRosenPath {
    /// Subgroups of `H ≅ F_p^2` are subspaces; the fixed-point sum over a
    /// subspace is `p(p-1)` per special line it contains.
    Subspace,
    /// Explicit product sets and fixed-point sums in the enumerated group.
    Enumerated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsogenyFactor {
    pub curve: CurveSpec,
    pub multiplicity: u64,
    pub dimension: u64,
    /// The orbit the factor was built from.
    pub orbit: OrbitKind,
}

impl IsogenyFactor {
    fn new(curve: CurveSpec, multiplicity: u64, orbit: OrbitKind) -> Self {
        Self {
            curve,
            multiplicity,
            dimension: genus_of(&curve),
            orbit,
        }
    }
}

impl fmt::Display for IsogenyFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.curve.jacobian_symbol(), self.multiplicity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KaniRosenAudit {
    pub family: String,
    pub commuting_checks: Vec<AuditLine>,
    pub genus_zero_checks: Vec<AuditLine>,
    pub genus_sum_check: Vec<AuditLine>,
    /// `(name, g(S/K))` for each member of the family.
    pub quotient_genera: Vec<(String, u64)>,
}

impl KaniRosenAudit {
    pub fn lines(&self) -> impl Iterator<Item = &AuditLine> {
        self.commuting_checks
            .iter()
            .chain(&self.genus_zero_checks)
            .chain(&self.genus_sum_check)
    }

    pub fn passed(&self) -> bool {
        self.lines().all(AuditLine::passed)
    }
}

fn commuting_line(a: &str, b: &str, commutes: bool, product_size: usize) -> AuditLine {
    let observed = if commutes {
        "true".to_string()
    } else {
        format!("false (|{a}{b}| = {product_size})")
    };
    AuditLine::compare(format!("{a}{b} = {b}{a}"), observed, true)
}

fn sum_line(names: &[String], genera: &[u64], g_top: u64, quotient: &str) -> AuditLine {
    AuditLine::compare(
        format!("sum of g({quotient}/{})", names.join(", ")),
        genera.iter().sum::<u64>(),
        g_top,
    )
}

/// Evaluates the three Kani–Rosen conditions for `family` on a surface of
/// genus `g_top`:
///
/// 1. `K_i K_j = K_j K_i`,
/// 2. `g(S/K_i K_j) = 0`,
/// 3. `g_top = Σ g(S/K_i)`.
///
/// When a pair does not permute, condition 2 is evaluated on the generated
/// subgroup `<K_i, K_j>` and condition 1 is reported as failed.
pub fn kani_rosen_check<G: FiniteGroup>(
    group: &G,
    g_top: u64,
    family: &[(String, Subgroup<G::Elem>)],
    fix: &FixTable,
    quotient: &str,
) -> Result<KaniRosenAudit> {
    let mut commuting_checks = Vec::new();
    let mut genus_zero_checks = Vec::new();
    for (i, (ni, ki)) in family.iter().enumerate() {
        for (nj, kj) in &family[i + 1..] {
            let ps = product_set(group, ki, kj);
            commuting_checks.push(commuting_line(ni, nj, ps.commutes, ps.size()));
            let gens: Vec<_> = ki
                .generators()
                .iter()
                .chain(kj.generators())
                .copied()
                .collect();
            let joined = subgroup_closure(group, &gens);
            let label = if ps.commutes {
                format!("g({quotient}/{ni}{nj})")
            } else {
                format!("g({quotient}/<{ni}, {nj}>)")
            };
            genus_zero_checks.push(AuditLine::compare(
                label,
                rh_genus(group, g_top, &joined, fix)?,
                0,
            ));
        }
    }
    let names: Vec<String> = family.iter().map(|(n, _)| n.clone()).collect();
    let genera = family
        .iter()
        .map(|(_, k)| rh_genus(group, g_top, k, fix))
        .collect::<Result<Vec<_>>>()?;
    Ok(KaniRosenAudit {
        family: names.join(", "),
        commuting_checks,
        genus_zero_checks,
        genus_sum_check: vec![sum_line(&names, &genera, g_top, quotient)],
        quotient_genera: names.iter().cloned().zip(genera).collect(),
    })
}

fn h_family_names(p: u64) -> Vec<String> {
    (1..=p - 2).map(|j| format!("H_{j}")).collect()
}

/// Kani–Rosen for `{H_1, ..., H_{p-2}}` in the enumerated group.
pub fn fermat_kani_rosen_enumerated(group: &FermatGroup) -> Result<KaniRosenAudit> {
    let p = group.context().p();
    let family: Vec<_> = h_family_names(p)
        .into_iter()
        .zip((1..=p - 2).map(|j| group.h_j(j)))
        .collect();
    kani_rosen_check(
        group,
        group.context().fermat_genus(),
        &family,
        &FixTable::fermat_on_h(group),
        "F_p",
    )
}

/// Rank of the span of `vectors` in `F_p^2` and the number of special
/// lines `<(1,0)>`, `<(0,1)>`, `<(1,1)>` (spanned by the `a_i`) inside it.
fn span_data(vectors: &[(u64, u64)], ctx: &PrimeContext) -> (u32, u64) {
    let det =
        |(m0, n0): (u64, u64), (m, n): (u64, u64)| ctx.add(ctx.mul(m0, n), ctx.neg(ctx.mul(n0, m)));
    let Some(&v0) = vectors.iter().find(|&&v| v != (0, 0)) else {
        return (0, 0);
    };
    if vectors.iter().any(|&v| det(v0, v) != 0) {
        return (2, 3);
    }
    let special = [(1, 0), (0, 1), (1, 1)]
        .into_iter()
        .filter(|&s| det(v0, s) == 0)
        .count() as u64;
    (1, special)
}

/// Kani–Rosen for `{H_1, ..., H_{p-2}}` by linear algebra in `F_p^2`.
///
/// `H` is abelian, so every pair permutes. `H_j` is the line through
/// `(1, 1+j)`; the span of a set of lines has `p^rank` elements, and each
/// special line in it contributes `p - 1` elements with `p` fixed points.
pub fn fermat_kani_rosen_subspace(ctx: &PrimeContext) -> Result<KaniRosenAudit> {
    let p = ctx.p();
    let g_top = ctx.fermat_genus();
    let line = |j: u64| (1u64, ctx.reduce(1 + j as i64));
    let genus_of_span = |vs: &[(u64, u64)]| -> Result<u64> {
        let (rank, special) = span_data(vs, ctx);
        genus_from_fix_sum(g_top, p.pow(rank), special * p * (p - 1))
    };
    let names = h_family_names(p);
    let mut commuting_checks = Vec::new();
    let mut genus_zero_checks = Vec::new();
    for i in 1..=p - 2 {
        for j in i + 1..=p - 2 {
            let (ni, nj) = (&names[i as usize - 1], &names[j as usize - 1]);
            commuting_checks.push(commuting_line(ni, nj, true, (p * p) as usize));
            genus_zero_checks.push(AuditLine::compare(
                format!("g(F_p/{ni}{nj})"),
                genus_of_span(&[line(i), line(j)])?,
                0,
            ));
        }
    }
    let genera = (1..=p - 2)
        .map(|j| genus_of_span(&[line(j)]))
        .collect::<Result<Vec<_>>>()?;
    Ok(KaniRosenAudit {
        family: names.join(", "),
        commuting_checks,
        genus_zero_checks,
        genus_sum_check: vec![sum_line(&names, &genera, g_top, "F_p")],
        quotient_genera: names.iter().cloned().zip(genera).collect(),
    })
}

/// Audit of `JC_gamma ∼ JE_gamma^3` on `A = <T, R>`.
///
/// The `K_i` have the right quotient genera and their pairwise joins give
/// genus zero, but `K_i K_j` is never a subgroup (two order-3 subgroups of a
/// group of order `3p` cannot permute), so the commuting condition is kept
/// as a noted observation and the splitting is certified by
/// [`IsotypicCertificate`] instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementAudit {
    pub gamma: u64,
    pub quotient_genera: Vec<AuditLine>,
    pub kani_rosen: KaniRosenAudit,
    pub certificate: IsotypicCertificate,
}

impl RefinementAudit {
    pub fn lines(&self) -> impl Iterator<Item = &AuditLine> {
        self.quotient_genera
            .iter()
            .chain(self.kani_rosen.lines())
            .chain(&self.certificate.lines)
    }

    pub fn passed(&self) -> bool {
        self.lines().all(AuditLine::passed)
    }
}

pub fn refinement_audit(ctx: &PrimeContext) -> Result<RefinementAudit> {
    let group = PGonalGroup::new(ctx)?;
    let g_top = ctx.pgonal_genus();
    let fix = FixTable::pgonal(&group);
    let family = (1..=3u8)
        .map(|i| Ok((format!("K_{i}"), pgonal_k(i, &group)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut kani_rosen = kani_rosen_check(&group, g_top, &family, &fix, "C")?;
    for line in &mut kani_rosen.commuting_checks {
        if line.verdict == Verdict::Fail {
            *line = AuditLine::noted(
                line.subject.replace(" = ", " vs "),
                format!(
                    "{}; not a subgroup, splitting certified by characters",
                    line.observed
                ),
            );
        }
    }
    let quotient_genera = family
        .iter()
        .map(|(n, k)| {
            Ok(AuditLine::compare(
                format!("g(C/{n})"),
                rh_genus(&group, g_top, k, &fix)?,
                (ctx.p() - 1) / 6,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RefinementAudit {
        gamma: group.gamma(),
        quotient_genera,
        kani_rosen,
        certificate: pgonal_isotypic_certificate(&group)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionAudit {
    pub kani_rosen: KaniRosenAudit,
    pub orbit_grouping: Vec<AuditLine>,
    pub refinement: Option<RefinementAudit>,
}

impl DecompositionAudit {
    pub fn lines(&self) -> Box<dyn Iterator<Item = &AuditLine> + '_> {
        let base = self.kani_rosen.lines().chain(&self.orbit_grouping);
        match &self.refinement {
            Some(r) => Box::new(base.chain(r.lines())),
            None => Box::new(base),
        }
    }

    pub fn passed(&self) -> bool {
        self.lines().all(AuditLine::passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyDecomposition {
    pub p: u64,
    pub level: Level,
    pub factors: Vec<IsogenyFactor>,
    pub audit: DecompositionAudit,
}

impl IsogenyDecomposition {
    /// Product notation: `JF(7) ~ JC(1)^3 x JE(2)^6`.
    pub fn render(&self) -> String {
        let factors: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        format!("JF({}) ~ {}", self.p, factors.join(" x "))
    }

    pub fn total_dimension(&self) -> u64 {
        self.factors
            .iter()
            .map(|f| f.multiplicity * f.dimension)
            .sum()
    }
}

impl fmt::Display for IsogenyDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// One factor per orbit; the multiplicity counts the `j` with
/// `F_p/H_j` in that isomorphism class.
fn coarse_factors(ctx: &PrimeContext) -> Result<(Vec<IsogenyFactor>, Vec<AuditLine>)> {
    let partition = orbit_partition(ctx);
    let mut orbits = partition.orbits.clone();
    orbits.sort_by_key(|o| (o.kind, o.representative));

    let mut counts = vec![0u64; orbits.len()];
    for j in 1..=ctx.p() - 2 {
        let curve = quotient_to_curve(j, ctx)?;
        let CurveFamily::PGonal { alpha } = curve.family else {
            return Err(Error::AuditFail(format!(
                "F_p/H_{j} is not a p-gonal curve"
            )));
        };
        let pos = orbits
            .iter()
            .position(|o| o.contains(alpha))
            .ok_or_else(|| Error::AuditFail(format!("C_{alpha} lies in no orbit")))?;
        counts[pos] += 1;
    }

    let mut lines = Vec::new();
    let mut factors = Vec::new();
    for (o, &count) in orbits.iter().zip(&counts) {
        lines.push(AuditLine::compare(
            format!("#{{j : F_p/H_j ≅ C_{}}}", o.representative),
            count,
            o.size(),
        ));
        factors.push(IsogenyFactor::new(
            CurveSpec::pgonal(o.representative, ctx)?,
            count,
            o.kind,
        ));
    }
    let reps: Vec<u64> = orbits.iter().map(|o| o.representative).collect();
    let distinct = orbits.iter().enumerate().all(|(i, o)| {
        reps.iter()
            .enumerate()
            .all(|(k, &r)| k == i || !o.contains(r))
    });
    lines.push(AuditLine::predicate(
        "factor curves pairwise non-isomorphic",
        distinct,
        "true",
        distinct,
    ));
    Ok((factors, lines))
}

fn require(audit: &DecompositionAudit) -> Result<()> {
    match first_failure(audit.lines()) {
        Some(line) => Err(Error::AuditFail(line.to_string())),
        None => Ok(()),
    }
}

pub fn decompose(
    ctx: &PrimeContext,
    level: Level,
    path: KaniRosenPath,
) -> Result<IsogenyDecomposition> {
    let kani_rosen = match path {
        KaniRosenPath::Subspace => fermat_kani_rosen_subspace(ctx)?,
        KaniRosenPath::Enumerated => fermat_kani_rosen_enumerated(&FermatGroup::new(ctx))?,
    };
    let (mut factors, orbit_grouping) = coarse_factors(ctx)?;
    let refinement = match (level, ctx.gamma_pair()) {
        (Level::Fine, Some((gamma, _))) => {
            for f in factors.iter_mut().filter(|f| f.orbit == OrbitKind::Gamma) {
                *f = IsogenyFactor::new(
                    CurveSpec::e_quotient(gamma, ctx)?,
                    3 * f.multiplicity,
                    f.orbit,
                );
            }
            Some(refinement_audit(ctx)?)
        }
        _ => None,
    };
    let d = IsogenyDecomposition {
        p: ctx.p(),
        level,
        factors,
        audit: DecompositionAudit {
            kani_rosen,
            orbit_grouping,
            refinement,
        },
    };
    require(&d.audit)?;
    Ok(d)
}

pub fn decompose_coarse(ctx: &PrimeContext) -> Result<IsogenyDecomposition> {
    decompose(ctx, Level::Coarse, KaniRosenPath::Subspace)
}

pub fn decompose_fine(ctx: &PrimeContext) -> Result<IsogenyDecomposition> {
    decompose(ctx, Level::Fine, KaniRosenPath::Subspace)
}

/// Dimension count and exponent shape of the factors.
pub fn dimension_audit(d: &IsogenyDecomposition) -> Result<Vec<AuditLine>> {
    let ctx = PrimeContext::new(d.p)?;
    let p = d.p;
    let shape = |mult: u64, dim: u64| {
        d.factors
            .iter()
            .filter(|f| f.multiplicity == mult && f.dimension == dim)
            .count() as u64
    };
    let has_gamma = u64::from(ctx.gamma_pair().is_some());
    let mut lines = vec![
        AuditLine::compare("sum of mult * dim", d.total_dimension(), ctx.fermat_genus()),
        AuditLine::compare(
            format!("factors ^3 of dim {}", (p - 1) / 2),
            shape(3, (p - 1) / 2),
            1,
        ),
    ];
    match d.level {
        Level::Fine => lines.push(AuditLine::compare(
            format!("factors ^6 of dim {}", (p - 1) / 6),
            shape(6, (p - 1) / 6),
            has_gamma,
        )),
        Level::Coarse => lines.push(AuditLine::compare(
            format!("factors ^2 of dim {}", (p - 1) / 2),
            shape(2, (p - 1) / 2),
            has_gamma,
        )),
    }
    lines.push(AuditLine::compare(
        format!("factors ^6 of dim {}", (p - 1) / 2),
        shape(6, (p - 1) / 2),
        ctx.generic_orbit_count(),
    ));
    lines.push(AuditLine::compare("factor count", d.factors.len(), {
        2 + ctx.generic_orbit_count() as usize - (1 - has_gamma as usize)
    }));
    match first_failure(&lines) {
        Some(l) => Err(Error::AuditFail(l.to_string())),
        None => Ok(lines),
    }
}

/// One component of the group-algebra decomposition and the factor it is
/// matched with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeMatch {
    pub component: String,
    pub exponent: u64,
    pub dimension: u64,
    pub factor: CurveSpec,
}

/// Matches `B_0 ↦ C_1`, `B ↦ E_gamma` and `B_j ↦` generic factors by
/// exponent and dimension.
pub fn match_group_algebra_shape(d: &IsogenyDecomposition) -> Result<Vec<ShapeMatch>> {
    if d.level != Level::Fine {
        return Err(Error::ShapeMismatch("needs the fine decomposition".into()));
    }
    let big = (d.p - 1) / 2;
    let small = (d.p - 1) / 6;
    let mut out = Vec::new();
    let mut generic = 0;
    for f in &d.factors {
        let (component, exponent, dimension) = match f.orbit {
            OrbitKind::SpecialOne => ("B_0".to_string(), 3, big),
            OrbitKind::Gamma => ("B".to_string(), 6, small),
            OrbitKind::Generic => {
                generic += 1;
                (format!("B_{generic}"), 6, big)
            }
        };
        if (f.multiplicity, f.dimension) != (exponent, dimension) {
            return Err(Error::ShapeMismatch(format!(
                "{component} has exponent {exponent} and dimension {dimension}, but {f} has dimension {}",
                f.dimension
            )));
        }
        out.push(ShapeMatch {
            component,
            exponent,
            dimension,
            factor: f.curve,
        });
    }
    Ok(out)
}
