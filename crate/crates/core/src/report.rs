//! The serializable report emitted by the command-line tool.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::PrimeContext;
use crate::audit::{AuditLine, Verdict};
use crate::decompose::{decompose_coarse, decompose_fine, IsogenyDecomposition, Level};
use crate::error::Result;
use crate::genus::GeneratingTriple;
use crate::monomial::{build_r, epsilon_rule};
use crate::orbits::{orbit_partition, OrbitClass, OrbitKind};
use crate::verify::CheckGroup;

pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub orbits: Vec<OrbitClass>,
    pub special_one: usize,
    pub gamma: usize,
    pub generic: usize,
}

impl OrbitSummary {
    pub fn new(ctx: &PrimeContext) -> Self {
        let part = orbit_partition(ctx);
        Self {
            special_one: part.count(OrbitKind::SpecialOne),
            gamma: part.count(OrbitKind::Gamma),
            generic: part.count(OrbitKind::Generic),
            orbits: part.orbits,
        }
    }

    /// `{1,3,5}, {2,4}`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.orbits.iter().map(ToString::to_string).collect();
        parts.join(", ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaData {
    pub roots: (u64, u64),
    pub gamma: u64,
    pub epsilon: u8,
    /// `R` on `C_gamma` in monomial form.
    pub r: String,
}

impl GammaData {
    pub fn new(ctx: &PrimeContext) -> Result<Option<Self>> {
        let Some(roots) = ctx.gamma_pair() else {
            return Ok(None);
        };
        let (calc, r) = build_r(ctx, roots.0)?;
        Ok(Some(Self {
            roots,
            gamma: roots.0,
            epsilon: epsilon_rule(roots.0),
            r: calc.render_map(&r),
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub text: String,
    pub decomposition: IsogenyDecomposition,
}

impl DecompositionReport {
    pub fn new(decomposition: IsogenyDecomposition) -> Self {
        Self {
            text: decomposition.render(),
            decomposition,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub kani_rosen_path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<GeneratingTriple>,
    /// Wall-clock microseconds per stage, only when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_us: Option<BTreeMap<String, u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub p: u64,
    pub residue_mod_3: u8,
    pub genus: u64,
    pub orbits: OrbitSummary,
    pub gamma: Option<GammaData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coarse: Option<DecompositionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fine: Option<DecompositionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<CheckGroup>>,
    pub provenance: Provenance,
}

impl Report {
    /// Orbit census and gamma data only.
    pub fn orbits(ctx: &PrimeContext) -> Result<Self> {
        Ok(Self {
            schema_version: SCHEMA_VERSION.into(),
            p: ctx.p(),
            residue_mod_3: ctx.residue_mod_3(),
            genus: ctx.fermat_genus(),
            orbits: OrbitSummary::new(ctx),
            gamma: GammaData::new(ctx)?,
            coarse: None,
            fine: None,
            verification: None,
            provenance: Provenance {
                kani_rosen_path: "subspace".into(),
                ..Provenance::default()
            },
        })
    }

    pub fn decomposition(ctx: &PrimeContext, levels: &[Level]) -> Result<Self> {
        let mut report = Self::orbits(ctx)?;
        for level in levels {
            match level {
                Level::Coarse => {
                    report.coarse = Some(DecompositionReport::new(decompose_coarse(ctx)?));
                }
                Level::Fine => report.fine = Some(DecompositionReport::new(decompose_fine(ctx)?)),
            }
        }
        Ok(report)
    }

    pub fn decompositions(&self) -> impl Iterator<Item = &DecompositionReport> {
        self.coarse.iter().chain(self.fine.iter())
    }

    /// True unless some audit or verification line failed.
    pub fn passed(&self) -> bool {
        self.decompositions()
            .all(|d| d.decomposition.audit.passed())
            && self.verification.iter().flatten().all(CheckGroup::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Human-readable rendering. Decompositions use product notation; audit
    /// lines are summarized unless they failed or are noted.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "p = {} (p mod 3 = {}), g(F_{}) = {}",
            self.p, self.residue_mod_3, self.p, self.genus
        );
        let _ = writeln!(
            out,
            "orbits: {} ({} special, {} gamma, {} generic)",
            self.orbits.render(),
            self.orbits.special_one,
            self.orbits.gamma,
            self.orbits.generic
        );
        if let Some(g) = &self.gamma {
            let _ = writeln!(
                out,
                "gamma: {} (roots {}, {}), R = {}",
                g.gamma, g.roots.0, g.roots.1, g.r
            );
        }
        for d in self.decompositions() {
            let _ = writeln!(out, "{}: {}", d.decomposition.level, d.text);
            let lines: Vec<&AuditLine> = d.decomposition.audit.lines().collect();
            summarize(&mut out, "  audit", &lines);
        }
        for g in self.verification.iter().flatten() {
            let lines: Vec<&AuditLine> = g.lines.iter().collect();
            summarize(&mut out, &format!("verify {}", g.name), &lines);
        }
        if let Some(t) = &self.provenance.timings_us {
            for (stage, us) in t {
                let _ = writeln!(out, "time {stage}: {us} us");
            }
        }
        out
    }
}

fn summarize(out: &mut String, heading: &str, lines: &[&AuditLine]) {
    let count = |v: Verdict| lines.iter().filter(|l| l.verdict == v).count();
    let verdict = if count(Verdict::Fail) == 0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let _ = writeln!(
        out,
        "{heading}: {verdict} ({} passed, {} failed, {} noted)",
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Noted)
    );
    for l in lines.iter().filter(|l| l.verdict != Verdict::Pass) {
        let _ = writeln!(out, "    {l}");
    }
}
