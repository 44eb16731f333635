use std::fmt;

use serde::{Deserialize, Serialize};

use super::{subgroup_closure, FiniteGroup, Flavor, GroupTag, Subgroup};
use crate::arith::PrimeContext;
use crate::error::{Error, Result};

/// `T^k ∘ R^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PGonalAut {
    pub e: u8,
    pub k: u32,
}

impl fmt::Display for PGonalAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T^{}R^{}", self.k, self.e)
    }
}

/// `<T, R> = Z_p ⋊ Z_3` with `R T R^-1 = T^{g^2}`, so
/// `(k1, e1)(k2, e2) = (k1 + g^{2 e1} k2, e1 + e2)`.
#[derive(Debug, Clone)]
pub struct PGonalGroup {
    ctx: PrimeContext,
    gamma: u64,
    p: u32,
    /// `g^{2e}` for `e = 0, 1, 2`.
    twist: [u64; 3],
}

impl PGonalGroup {
    /// Uses the smaller root.
    pub fn new(ctx: &PrimeContext) -> Result<Self> {
        Self::with_gamma(ctx, ctx.gamma()?)
    }

    pub fn with_gamma(ctx: &PrimeContext, gamma: u64) -> Result<Self> {
        let (a, b) = ctx.gamma_pair().ok_or(Error::NoGamma(ctx.p()))?;
        if gamma != a && gamma != b {
            return Err(Error::OutOfRange {
                value: gamma as i64,
                max: ctx.p() - 2,
            });
        }
        let g2 = ctx.mul(gamma, gamma);
        Ok(Self {
            ctx: *ctx,
            gamma,
            p: ctx.p() as u32,
            twist: [1, g2, ctx.mul(g2, g2)],
        })
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    pub fn context(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn element(&self, k: i64, e: i64) -> PGonalAut {
        PGonalAut {
            k: self.ctx.reduce(k) as u32,
            e: e.rem_euclid(3) as u8,
        }
    }

    pub fn t(&self) -> PGonalAut {
        self.element(1, 0)
    }

    pub fn r(&self) -> PGonalAut {
        self.element(0, 1)
    }

    /// `<T>`.
    pub fn rotations(&self) -> Subgroup<PGonalAut> {
        subgroup_closure(self, &[self.t()])
    }

    /// The whole group as a subgroup.
    pub fn whole(&self) -> Subgroup<PGonalAut> {
        subgroup_closure(self, &[self.t(), self.r()])
    }
}

impl FiniteGroup for PGonalGroup {
    type Elem = PGonalAut;

    fn tag(&self) -> GroupTag {
        GroupTag {
            flavor: Flavor::PGonal,
            p: self.ctx.p(),
            gamma: Some(self.gamma),
        }
    }

    fn order(&self) -> usize {
        3 * self.p as usize
    }

    fn identity(&self) -> PGonalAut {
        PGonalAut { k: 0, e: 0 }
    }

    fn multiply(&self, a: PGonalAut, b: PGonalAut) -> PGonalAut {
        let p = self.p as u64;
        let k = (a.k as u64 + self.twist[a.e as usize] * b.k as u64) % p;
        PGonalAut {
            k: k as u32,
            e: (a.e + b.e) % 3,
        }
    }

    fn inverse(&self, a: PGonalAut) -> PGonalAut {
        // (k, e)^-1 = (-g^{-2e} k, -e) and g^{-2e} = g^{2(3-e)}
        let e = (3 - a.e) % 3;
        let p = self.p as u64;
        let k = (p - self.twist[e as usize] * a.k as u64 % p) % p;
        PGonalAut { k: k as u32, e }
    }

    fn generators(&self) -> Vec<PGonalAut> {
        vec![self.t(), self.r()]
    }

    fn index_of(&self, a: PGonalAut) -> usize {
        a.e as usize * self.p as usize + a.k as usize
    }

    fn element_at(&self, index: usize) -> PGonalAut {
        let p = self.p as usize;
        PGonalAut {
            e: (index / p) as u8,
            k: (index % p) as u32,
        }
    }

    fn contains(&self, a: PGonalAut) -> bool {
        a.k < self.p && a.e < 3
    }
}

/// `K_1 = <R>`, `K_2 = <T^{g^2-1} R>`, `K_3 = <T^{2(g^2-1)} R>`.
pub fn pgonal_k(i: u8, group: &PGonalGroup) -> Result<Subgroup<PGonalAut>> {
    if !(1..=3).contains(&i) {
        return Err(Error::OutOfRange {
            value: i as i64,
            max: 3,
        });
    }
    let g2 = group.twist[1] as i64;
    let shift = (i as i64 - 1) * (g2 - 1);
    Ok(subgroup_closure(group, &[group.element(shift, 1)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::product_set;

    fn group(p: u64) -> PGonalGroup {
        PGonalGroup::new(&PrimeContext::new(p).unwrap()).unwrap()
    }

    #[test]
    fn needs_gamma() {
        let ctx = PrimeContext::new(11).unwrap();
        assert_eq!(PGonalGroup::new(&ctx).unwrap_err(), Error::NoGamma(11));
        let ctx = PrimeContext::new(7).unwrap();
        assert!(PGonalGroup::with_gamma(&ctx, 3).is_err());
        assert!(PGonalGroup::with_gamma(&ctx, 4).is_ok());
    }

    #[test]
    fn element_orders() {
        for p in [7, 13, 19, 31] {
            let g = group(p);
            for x in g.elements() {
                let expect = match (x.k, x.e) {
                    (0, 0) => 1,
                    (_, 0) => p as usize,
                    _ => 3,
                };
                assert_eq!(g.element_order(x), expect, "{x} at p = {p}");
            }
        }
    }

    #[test]
    fn relation_r_t() {
        for p in [7, 13, 19] {
            let g = group(p);
            let gamma = g.gamma() as i64;
            let lhs = g.multiply(g.r(), g.t());
            let rhs = g.multiply(g.pow(g.t(), gamma * gamma), g.r());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn k_subgroups() {
        let g = group(7);
        let k2 = pgonal_k(2, &g).unwrap();
        assert_eq!(k2.generators(), &[g.element(3, 1)]);
        for p in [7, 13, 19, 31] {
            let g = group(p);
            let k1 = pgonal_k(1, &g).unwrap();
            for i in 1..=3u8 {
                let ki = pgonal_k(i, &g).unwrap();
                assert_eq!(ki.order(), 3);
                // K_{i+1} = T^-i K_1 T^i
                let shift = (i - 1) as i64;
                let mut conj: Vec<_> = k1
                    .elements()
                    .iter()
                    .map(|&x| g.conjugate(g.pow(g.t(), -shift), x))
                    .collect();
                conj.sort();
                assert_eq!(ki.elements(), conj.as_slice());
            }
        }
        assert!(pgonal_k(0, &g).is_err());
        assert!(pgonal_k(4, &g).is_err());
    }

    /// Two distinct subgroups of order 3 in a group of order 3p give a product
    /// set of 9 elements, which cannot be a subgroup when p > 3.
    #[test]
    fn k_subgroups_do_not_permute() {
        for p in [7, 13, 19, 31] {
            let g = group(p);
            let ks: Vec<_> = (1..=3).map(|i| pgonal_k(i, &g).unwrap()).collect();
            for i in 0..3 {
                for j in 0..3 {
                    let ps = product_set(&g, &ks[i], &ks[j]);
                    if i == j {
                        assert!(ps.commutes);
                    } else {
                        assert!(!ps.commutes);
                        assert_eq!(ps.size(), 9);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugacy_classes_of_a() {
        for p in [7, 13, 19] {
            let g = group(p);
            let classes = g.conjugacy_classes();
            assert_eq!(classes.len(), 3 + (p as usize - 1) / 3);
            let order3: Vec<_> = classes.iter().filter(|c| c[0].e != 0).collect();
            assert_eq!(order3.len(), 2);
            assert!(order3.iter().all(|c| c.len() == p as usize));
            // every order-3 element is conjugate to R or R^2
            for c in &order3 {
                assert!(c.contains(&g.r()) || c.contains(&g.pow(g.r(), 2)));
            }
            // the T^-l R T^l sweep covers the class of R
            let gamma = g.gamma() as i64;
            let class_r = classes.iter().find(|c| c.contains(&g.r())).unwrap();
            for l in 0..p as i64 {
                let conj = g.conjugate(g.pow(g.t(), -l), g.r());
                assert_eq!(conj, g.element(l * (gamma * gamma - 1), 1));
                assert!(class_r.contains(&conj));
            }
        }
    }

    #[test]
    fn both_roots_give_isomorphic_groups() {
        let ctx = PrimeContext::new(13).unwrap();
        let (a, b) = ctx.gamma_pair().unwrap();
        let ga = PGonalGroup::with_gamma(&ctx, a).unwrap();
        let gb = PGonalGroup::with_gamma(&ctx, b).unwrap();
        // R ↦ R^2 swaps the twists g^2 and g^4 = (g^-1)^2
        let phi = |x: PGonalAut| gb.element(x.k as i64, 2 * x.e as i64);
        for x in ga.elements() {
            for y in ga.elements() {
                assert_eq!(phi(ga.multiply(x, y)), gb.multiply(phi(x), phi(y)));
            }
        }
    }
}
