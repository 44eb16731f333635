//! The action of `S3 = <U, V>` on `X_p = {1, ..., p-2}` by
//! `U(a) = -(1+a)^-1`, `V(a) = a^-1`, and the resulting orbit partition.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::PrimeContext;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum S3Generator {
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    /// `{1, p-2, (p-1)/2}`.
    SpecialOne,
    /// `{g, g^-1}` with `g^2 + g + 1 = 0`.
    Gamma,
    /// Any orbit of size six.
    Generic,
}

impl OrbitKind {
    pub fn from_size(size: usize) -> Option<Self> {
        match size {
            3 => Some(Self::SpecialOne),
            2 => Some(Self::Gamma),
            6 => Some(Self::Generic),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::SpecialOne => "special_one",
            Self::Gamma => "gamma",
            Self::Generic => "generic",
        }
    }
}

impl fmt::Display for OrbitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitClass {
    pub representative: u64,
    pub elements: Vec<u64>,
    pub kind: OrbitKind,
}

impl OrbitClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.elements.binary_search(&a).is_ok()
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub context: PrimeContext,
    /// Sorted by representative.
    pub orbits: Vec<OrbitClass>,
}

impl OrbitPartition {
    pub fn count(&self, kind: OrbitKind) -> usize {
        self.orbits.iter().filter(|o| o.kind == kind).count()
    }

    pub fn of_kind(&self, kind: OrbitKind) -> impl Iterator<Item = &OrbitClass> {
        self.orbits.iter().filter(move |o| o.kind == kind)
    }

    pub fn orbit_of(&self, a: u64) -> Option<&OrbitClass> {
        self.orbits.iter().find(|o| o.contains(a))
    }

    pub fn total_size(&self) -> usize {
        self.orbits.iter().map(OrbitClass::size).sum()
    }
}

/// Applies `U` or `V`; the result stays in `X_p`.
pub fn s3_apply(gen: S3Generator, alpha: u64, ctx: &PrimeContext) -> Result<u64> {
    ctx.check_xp(alpha)?;
    Ok(apply_unchecked(gen, alpha, ctx))
}

fn apply_unchecked(gen: S3Generator, alpha: u64, ctx: &PrimeContext) -> u64 {
    match gen {
        S3Generator::U => ctx.neg(ctx.inv(alpha + 1)),
        S3Generator::V => ctx.inv(alpha),
    }
}

/// Closure of `{alpha}` under `U` and `V`.
pub fn orbit(alpha: u64, ctx: &PrimeContext) -> Result<OrbitClass> {
    ctx.check_xp(alpha)?;
    Ok(orbit_unchecked(alpha, ctx))
}

fn orbit_unchecked(alpha: u64, ctx: &PrimeContext) -> OrbitClass {
    let mut seen = BTreeSet::from([alpha]);
    let mut stack = vec![alpha];
    while let Some(a) = stack.pop() {
        for gen in [S3Generator::U, S3Generator::V] {
            let b = apply_unchecked(gen, a, ctx);
            if seen.insert(b) {
                stack.push(b);
            }
        }
    }
    let elements: Vec<u64> = seen.into_iter().collect();
    let kind = OrbitKind::from_size(elements.len())
        .unwrap_or_else(|| panic!("orbit of size {} at p = {}", elements.len(), ctx.p()));
    OrbitClass {
        representative: elements[0],
        elements,
        kind,
    }
}

pub fn orbit_partition(ctx: &PrimeContext) -> OrbitPartition {
    let p = ctx.p();
    let mut assigned = vec![false; p as usize];
    let mut orbits = Vec::new();
    for a in 1..=p - 2 {
        if assigned[a as usize] {
            continue;
        }
        let o = orbit_unchecked(a, ctx);
        for &b in &o.elements {
            assigned[b as usize] = true;
        }
        orbits.push(o);
    }
    OrbitPartition {
        context: *ctx,
        orbits,
    }
}
