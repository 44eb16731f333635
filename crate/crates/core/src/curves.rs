//! The cyclic p-gonal family `C_{a,b}: y^p = x^a (x-1)^b`, its canonical
//! form `C_a = C_{a,1}`, genus formulas and the isomorphism classification
//! through the six Möbius maps permuting `{0, 1, oo}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::PrimeContext;
use crate::error::{Error, Result};
use crate::orbits::orbit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CurveFamily {
    /// `x^p + y^p + z^p = 0`.
    Fermat,
    /// `y^p = x^alpha (x-1)` with `alpha` in `X_p`.
    PGonal { alpha: u64 },
    /// `C_gamma / <R>`.
    EQuotient { gamma: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveSpec {
    pub p: u64,
    #[serde(flatten)]
    pub family: CurveFamily,
}

impl CurveSpec {
    pub fn fermat(ctx: &PrimeContext) -> Self {
        Self {
            p: ctx.p(),
            family: CurveFamily::Fermat,
        }
    }

    pub fn pgonal(alpha: u64, ctx: &PrimeContext) -> Result<Self> {
        ctx.check_xp(alpha)?;
        Ok(Self {
            p: ctx.p(),
            family: CurveFamily::PGonal { alpha },
        })
    }

    /// Requires `gamma` to be one of the two cube roots of unity.
    pub fn e_quotient(gamma: u64, ctx: &PrimeContext) -> Result<Self> {
        let (a, b) = ctx.gamma_pair().ok_or(Error::NoGamma(ctx.p()))?;
        if gamma != a && gamma != b {
            return Err(Error::OutOfRange {
                value: gamma as i64,
                max: ctx.p() - 2,
            });
        }
        Ok(Self {
            p: ctx.p(),
            family: CurveFamily::EQuotient { gamma },
        })
    }

    /// Jacobian symbol used in product formulas: `JC(2)`, `JE(3)`, `JF(7)`.
    pub fn jacobian_symbol(&self) -> String {
        match self.family {
            CurveFamily::Fermat => format!("JF({})", self.p),
            CurveFamily::PGonal { alpha } => format!("JC({alpha})"),
            CurveFamily::EQuotient { gamma } => format!("JE({gamma})"),
        }
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            CurveFamily::Fermat => write!(f, "F({})", self.p),
            CurveFamily::PGonal { alpha } => write!(f, "C_alpha(p={}, alpha={alpha})", self.p),
            CurveFamily::EQuotient { gamma } => write!(f, "E_gamma(p={}, gamma={gamma})", self.p),
        }
    }
}

/// The six Möbius transformations preserving `{0, 1, oo}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoebiusLabel {
    /// `x`
    Id,
    /// `1/x`
    Inv,
    /// `1 - x`
    OneMinus,
    /// `x/(x-1)`
    Over,
    /// `1/(1-x)`
    Cyc,
    /// `(x-1)/x`
    Cyc2,
}

impl MoebiusLabel {
    pub const ALL: [MoebiusLabel; 6] = [
        Self::Id,
        Self::Inv,
        Self::OneMinus,
        Self::Over,
        Self::Cyc,
        Self::Cyc2,
    ];

    /// Images of `(0, 1, oo)`, with points indexed `0, 1, 2`.
    pub fn point_images(self) -> [usize; 3] {
        match self {
            Self::Id => [0, 1, 2],
            Self::Inv => [2, 1, 0],
            Self::OneMinus => [1, 0, 2],
            Self::Over => [0, 2, 1],
            Self::Cyc => [1, 2, 0],
            Self::Cyc2 => [2, 0, 1],
        }
    }

    fn from_point_images(images: [usize; 3]) -> Self {
        Self::ALL
            .into_iter()
            .find(|l| l.point_images() == images)
            .expect("every permutation of three points is a label")
    }

    /// Function composition `self ∘ inner`.
    pub fn compose(self, inner: Self) -> Self {
        let a = self.point_images();
        let b = inner.point_images();
        Self::from_point_images([a[b[0]], a[b[1]], a[b[2]]])
    }

    pub fn inverse(self) -> Self {
        let a = self.point_images();
        let mut inv = [0; 3];
        for (i, &j) in a.iter().enumerate() {
            inv[j] = i;
        }
        Self::from_point_images(inv)
    }

    pub fn formula(self) -> &'static str {
        match self {
            Self::Id => "x",
            Self::Inv => "1/x",
            Self::OneMinus => "1-x",
            Self::Over => "x/(x-1)",
            Self::Cyc => "1/(1-x)",
            Self::Cyc2 => "(x-1)/x",
        }
    }
}

/// Canonical form of `C_{alpha,beta}`: exponent `alpha * beta^-1`.
pub fn normalize(alpha: u64, beta: u64, ctx: &PrimeContext) -> Result<CurveSpec> {
    let p = ctx.p();
    for v in [alpha, beta] {
        if v == 0 || v >= p {
            return Err(Error::OutOfRange {
                value: v as i64,
                max: p - 1,
            });
        }
    }
    if (alpha + beta).is_multiple_of(p) {
        return Err(Error::Degenerate { alpha, beta, p });
    }
    CurveSpec::pgonal(ctx.mul(alpha, ctx.inv(beta)), ctx)
}

/// Exponent of the curve obtained from `C_alpha` by the substitution
/// `x = phi(X)`.
///
/// Transport is a right action: `transport(a, f∘g) = transport(transport(a, f), g)`.
pub fn moebius_transport(alpha: u64, phi: MoebiusLabel, ctx: &PrimeContext) -> Result<u64> {
    ctx.check_xp(alpha)?;
    let c = ctx;
    let one_plus = alpha + 1;
    Ok(match phi {
        MoebiusLabel::Id => alpha,
        MoebiusLabel::Inv => c.neg(one_plus),
        MoebiusLabel::OneMinus => c.inv(alpha),
        MoebiusLabel::Over => c.mul(c.neg(alpha), c.inv(one_plus)),
        MoebiusLabel::Cyc => c.neg(c.inv(one_plus)),
        MoebiusLabel::Cyc2 => c.mul(c.neg(c.inv(alpha)), one_plus),
    })
}

/// `C_a1 ≅ C_a2` exactly when the exponents share an S3-orbit.
pub fn are_isomorphic(alpha1: u64, alpha2: u64, ctx: &PrimeContext) -> Result<bool> {
    let o = orbit(alpha1, ctx)?;
    ctx.check_xp(alpha2)?;
    Ok(o.contains(alpha2))
}

pub fn genus_of(spec: &CurveSpec) -> u64 {
    let p = spec.p;
    match spec.family {
        CurveFamily::Fermat => (p - 1) * (p - 2) / 2,
        CurveFamily::PGonal { .. } => (p - 1) / 2,
        CurveFamily::EQuotient { .. } => (p - 1) / 6,
    }
}

/// The quotient `F_p / H_j` is `y^p = x^{-(1+j)} (x-1)`, i.e. `C_{p-1-j}`.
pub fn quotient_to_curve(j: u64, ctx: &PrimeContext) -> Result<CurveSpec> {
    ctx.check_xp(j)?;
    let exponent = ctx.neg(j + 1);
    normalize(exponent, 1, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_between;
    use MoebiusLabel::*;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    /// Branch-exponent oracle: `C_a` has local exponents `(a, 1, -(a+1))` at
    /// `(0, 1, oo)`; pulling back by `phi` reads them at `phi(q)`.
    fn transport_by_exponents(alpha: u64, phi: MoebiusLabel, c: &PrimeContext) -> u64 {
        let e = [alpha, 1, c.neg(alpha + 1)];
        let img = phi.point_images();
        let e0 = e[img[0]];
        let e1 = e[img[1]];
        c.mul(e0, c.inv(e1))
    }

    #[test]
    fn normalize_examples() {
        let c = ctx(7);
        assert_eq!(
            normalize(3, 1, &c).unwrap().family,
            CurveFamily::PGonal { alpha: 3 }
        );
        for a in 1..=5 {
            let inv = (1..7).find(|b| a * b % 7 == 1).unwrap();
            assert_eq!(
                normalize(1, a, &c).unwrap().family,
                CurveFamily::PGonal { alpha: inv }
            );
        }
        assert_eq!(
            normalize(2, 3, &c).unwrap().family,
            CurveFamily::PGonal { alpha: 3 }
        );
        assert_eq!(
            normalize(2, 5, &c),
            Err(Error::Degenerate {
                alpha: 2,
                beta: 5,
                p: 7
            })
        );
        assert!(normalize(0, 1, &c).is_err());
        assert!(normalize(1, 7, &c).is_err());
    }

    #[test]
    fn normalize_is_invariant_under_units() {
        for p in [5, 7, 11, 13] {
            let c = ctx(p);
            for a in 1..p {
                for b in 1..p {
                    if (a + b) % p == 0 {
                        continue;
                    }
                    let base = normalize(a, b, &c).unwrap();
                    for d in 1..p {
                        assert_eq!(normalize(c.mul(d, a), c.mul(d, b), &c).unwrap(), base);
                    }
                }
            }
        }
    }

    #[test]
    fn transport_examples() {
        assert_eq!(moebius_transport(4, Id, &ctx(11)).unwrap(), 4);
        assert_eq!(moebius_transport(2, Inv, &ctx(7)).unwrap(), 4);
        assert_eq!(moebius_transport(2, Cyc2, &ctx(11)).unwrap(), 4);
        assert!(moebius_transport(0, Id, &ctx(7)).is_err());
    }

    #[test]
    fn labels_form_s3() {
        for a in MoebiusLabel::ALL {
            assert_eq!(Id.compose(a), a);
            assert_eq!(a.compose(Id), a);
            assert_eq!(a.compose(a.inverse()), Id);
            for b in MoebiusLabel::ALL {
                for c in MoebiusLabel::ALL {
                    assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
                }
            }
        }
        assert_eq!(Cyc.compose(Cyc), Cyc2);
        assert_eq!(Cyc.compose(Cyc).compose(Cyc), Id);
        // 1 - 1/x = (x-1)/x and 1/(1-x)
        assert_eq!(OneMinus.compose(Inv), Cyc2);
        assert_eq!(Inv.compose(OneMinus), Cyc);
    }

    #[test]
    fn transport_matches_exponent_oracle_and_orbit() {
        for p in primes_between(5, 60) {
            let c = ctx(p);
            for a in 1..=p - 2 {
                let o = orbit(a, &c).unwrap();
                let mut hits = std::collections::BTreeMap::new();
                for phi in MoebiusLabel::ALL {
                    let t = moebius_transport(a, phi, &c).unwrap();
                    assert_eq!(t, transport_by_exponents(a, phi, &c));
                    assert!(o.contains(t));
                    *hits.entry(t).or_insert(0) += 1;
                }
                assert_eq!(hits.keys().copied().collect::<Vec<_>>(), o.elements);
                assert!(hits.values().all(|&n| n * o.size() == 6));
            }
        }
    }

    #[test]
    fn transport_is_a_right_action() {
        for p in [5, 7, 11, 13] {
            let c = ctx(p);
            for a in 1..=p - 2 {
                for f in MoebiusLabel::ALL {
                    for g in MoebiusLabel::ALL {
                        let composite = moebius_transport(a, f.compose(g), &c).unwrap();
                        let stepwise =
                            moebius_transport(moebius_transport(a, f, &c).unwrap(), g, &c).unwrap();
                        assert_eq!(composite, stepwise, "p={p} a={a} f={f:?} g={g:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        assert!(are_isomorphic(4, 4, &ctx(11)).unwrap());
        assert!(are_isomorphic(1, 5, &ctx(7)).unwrap());
        assert!(!are_isomorphic(2, 3, &ctx(13)).unwrap());
    }

    #[test]
    fn isomorphism_agrees_with_transport() {
        for p in [7, 11, 13, 19] {
            let c = ctx(p);
            for a in 1..=p - 2 {
                for b in 1..=p - 2 {
                    let by_transport = MoebiusLabel::ALL
                        .iter()
                        .any(|&phi| moebius_transport(a, phi, &c).unwrap() == b);
                    assert_eq!(are_isomorphic(a, b, &c).unwrap(), by_transport);
                }
            }
        }
    }

    #[test]
    fn genera() {
        assert_eq!(genus_of(&CurveSpec::fermat(&ctx(7))), 15);
        assert_eq!(genus_of(&CurveSpec::pgonal(2, &ctx(11)).unwrap()), 5);
        assert_eq!(genus_of(&CurveSpec::e_quotient(2, &ctx(7)).unwrap()), 1);
        assert!(CurveSpec::e_quotient(3, &ctx(7)).is_err());
        assert!(CurveSpec::e_quotient(2, &ctx(11)).is_err());
        for p in primes_between(5, 500) {
            assert_eq!((p - 1) % 2, 0);
            if p % 3 == 1 {
                assert_eq!((p - 1) % 6, 0);
            }
        }
    }

    #[test]
    fn quotients() {
        for p in [5, 7, 11, 13] {
            let c = ctx(p);
            assert_eq!(
                quotient_to_curve(p - 2, &c).unwrap().family,
                CurveFamily::PGonal { alpha: 1 }
            );
            for j in 1..=p - 2 {
                assert_eq!(
                    quotient_to_curve(j, &c).unwrap().family,
                    CurveFamily::PGonal { alpha: p - 1 - j }
                );
            }
        }
        let c = ctx(7);
        assert_eq!(
            quotient_to_curve(4, &c).unwrap(),
            normalize(2, 1, &c).unwrap()
        );
        let c = ctx(13);
        let (g, g_inv) = c.gamma_pair().unwrap();
        assert_eq!(
            quotient_to_curve(g_inv, &c).unwrap().family,
            CurveFamily::PGonal { alpha: g }
        );
    }

    #[test]
    fn descriptors() {
        let c = ctx(13);
        assert_eq!(
            CurveSpec::pgonal(2, &c).unwrap().to_string(),
            "C_alpha(p=13, alpha=2)"
        );
        assert_eq!(
            CurveSpec::e_quotient(3, &c).unwrap().to_string(),
            "E_gamma(p=13, gamma=3)"
        );
        assert_eq!(CurveSpec::fermat(&c).to_string(), "F(13)");
    }
}
