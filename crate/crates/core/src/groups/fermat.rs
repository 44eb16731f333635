use std::fmt;

use serde::{Deserialize, Serialize};

use super::{subgroup_closure, FiniteGroup, Flavor, GroupTag, Subgroup};
use crate::arith::PrimeContext;

/// A permutation of `{0, 1, 2}`, the indices of `(a1, a2, a3)`, stored as
/// its image list. Conjugation by the automorphism sends `a_i` to `a_{σ(i)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm3([u8; 3]);

/// Lexicographic order of image lists; position is the permutation index.
const PERMS: [[u8; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Matrix of `σ` acting on exponent pairs `(m, n)` of `a1^m a2^n`, with
/// `a3 = a1^-1 a2^-1`. Row-major: `(m, n) ↦ (r0·(m,n), r1·(m,n))`.
/// Derived from the coordinate maps; `tests::action_matrices_rederived`
/// recomputes them.
const ACTION: [[[i64; 2]; 2]; 6] = [
    [[1, 0], [0, 1]],
    [[1, -1], [0, -1]],
    [[0, 1], [1, 0]],
    [[0, -1], [1, -1]],
    [[-1, 1], [-1, 0]],
    [[-1, 0], [-1, 1]],
];

impl Perm3 {
    pub const IDENTITY: Perm3 = Perm3([0, 1, 2]);
    /// `u[x:y:z] = [z:x:y]` cycles `a1 → a2 → a3 → a1`.
    pub const U: Perm3 = Perm3([1, 2, 0]);
    /// `v[x:y:z] = [y:x:z]` swaps `a1` and `a2`.
    pub const V: Perm3 = Perm3([1, 0, 2]);

    pub fn all() -> impl Iterator<Item = Perm3> {
        PERMS.iter().map(|&p| Perm3(p))
    }

    pub fn from_index(i: usize) -> Perm3 {
        Perm3(PERMS[i])
    }

    pub fn index(self) -> usize {
        PERMS
            .iter()
            .position(|&p| p == self.0)
            .expect("valid permutation")
    }

    pub fn images(self) -> [u8; 3] {
        self.0
    }

    /// `self ∘ other`.
    pub fn compose(self, other: Perm3) -> Perm3 {
        let a = self.0;
        let b = other.0;
        Perm3([a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]])
    }

    pub fn inverse(self) -> Perm3 {
        let mut out = [0u8; 3];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Perm3(out)
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    pub fn matrix(self) -> [[i64; 2]; 2] {
        ACTION[self.index()]
    }
}

/// `a1^m a2^n · σ`, the translation part first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FermatAut {
    pub sigma: Perm3,
    pub m: u32,
    pub n: u32,
}

impl FermatAut {
    pub fn is_translation(&self) -> bool {
        self.sigma.is_identity()
    }
}

impl fmt::Display for FermatAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.sigma.images();
        write!(
            f,
            "a1^{}a2^{}[{}{}{}]",
            self.m,
            self.n,
            s[0] + 1,
            s[1] + 1,
            s[2] + 1
        )
    }
}

/// `Aut(F_p) = Z_p^2 ⋊ S3` with
/// `(t1, σ1)(t2, σ2) = (t1 + σ1·t2, σ1σ2)`.
#[derive(Debug, Clone)]
pub struct FermatGroup {
    ctx: PrimeContext,
    p: u32,
}

impl FermatGroup {
    pub fn new(ctx: &PrimeContext) -> Self {
        let p = u32::try_from(ctx.p()).expect("prime bounded by u32");
        Self { ctx: *ctx, p }
    }

    pub fn context(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn element(&self, m: i64, n: i64, sigma: Perm3) -> FermatAut {
        FermatAut {
            sigma,
            m: self.ctx.reduce(m) as u32,
            n: self.ctx.reduce(n) as u32,
        }
    }

    pub fn translation(&self, m: i64, n: i64) -> FermatAut {
        self.element(m, n, Perm3::IDENTITY)
    }

    pub fn a1(&self) -> FermatAut {
        self.translation(1, 0)
    }

    pub fn a2(&self) -> FermatAut {
        self.translation(0, 1)
    }

    /// `a3 = (a1 a2)^-1`.
    pub fn a3(&self) -> FermatAut {
        self.translation(-1, -1)
    }

    pub fn u(&self) -> FermatAut {
        self.element(0, 0, Perm3::U)
    }

    pub fn v(&self) -> FermatAut {
        self.element(0, 0, Perm3::V)
    }

    /// `H = <a1, a2>`.
    pub fn h(&self) -> Subgroup<FermatAut> {
        subgroup_closure(self, &[self.a1(), self.a2()])
    }

    /// `H_j = <a1 a2^{1+j}>`, the free cyclic subgroups for `j in 1..=p-2`.
    pub fn h_j(&self, j: u64) -> Subgroup<FermatAut> {
        subgroup_closure(self, &[self.translation(1, 1 + j as i64)])
    }

    fn act(&self, sigma: Perm3, m: u32, n: u32) -> (u32, u32) {
        let a = sigma.matrix();
        let (m, n) = (m as i64, n as i64);
        (
            self.ctx.reduce(a[0][0] * m + a[0][1] * n) as u32,
            self.ctx.reduce(a[1][0] * m + a[1][1] * n) as u32,
        )
    }
}

impl FiniteGroup for FermatGroup {
    type Elem = FermatAut;

    fn tag(&self) -> GroupTag {
        GroupTag {
            flavor: Flavor::Fermat,
            p: self.ctx.p(),
            gamma: None,
        }
    }

    fn order(&self) -> usize {
        6 * (self.p as usize) * (self.p as usize)
    }

    fn identity(&self) -> FermatAut {
        FermatAut {
            sigma: Perm3::IDENTITY,
            m: 0,
            n: 0,
        }
    }

    fn multiply(&self, a: FermatAut, b: FermatAut) -> FermatAut {
        let (bm, bn) = self.act(a.sigma, b.m, b.n);
        FermatAut {
            sigma: a.sigma.compose(b.sigma),
            m: (a.m + bm) % self.p,
            n: (a.n + bn) % self.p,
        }
    }

    fn inverse(&self, a: FermatAut) -> FermatAut {
        // (t, σ)^-1 = (-σ^-1 t, σ^-1)
        let s = a.sigma.inverse();
        let (m, n) = self.act(s, a.m, a.n);
        FermatAut {
            sigma: s,
            m: (self.p - m) % self.p,
            n: (self.p - n) % self.p,
        }
    }

    fn generators(&self) -> Vec<FermatAut> {
        vec![self.a1(), self.a2(), self.u(), self.v()]
    }

    fn index_of(&self, a: FermatAut) -> usize {
        let p = self.p as usize;
        (a.sigma.index() * p + a.m as usize) * p + a.n as usize
    }

    fn element_at(&self, index: usize) -> FermatAut {
        let p = self.p as usize;
        FermatAut {
            sigma: Perm3::from_index(index / (p * p)),
            m: ((index / p) % p) as u32,
            n: (index % p) as u32,
        }
    }

    fn contains(&self, a: FermatAut) -> bool {
        a.m < self.p && a.n < self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A monomial projective map `[x0:x1:x2] ↦ [ω^e0 x_π0 : ω^e1 x_π1 : ω^e2 x_π2]`,
    /// exponents mod p and defined up to a common scalar.
    #[derive(Debug, Clone, Copy)]
    struct ProjMap {
        perm: [usize; 3],
        exps: [i64; 3],
    }

    impl ProjMap {
        fn then_after(self, inner: ProjMap) -> ProjMap {
            // (self ∘ inner)_i = ω^{e_i + inner.e_{π(i)}} x_{inner.π(π(i))}
            let mut perm = [0; 3];
            let mut exps = [0; 3];
            for i in 0..3 {
                let j = self.perm[i];
                perm[i] = inner.perm[j];
                exps[i] = self.exps[i] + inner.exps[j];
            }
            ProjMap { perm, exps }
        }

        fn inverse(self) -> ProjMap {
            let mut perm = [0; 3];
            let mut exps = [0; 3];
            for i in 0..3 {
                perm[self.perm[i]] = i;
                exps[self.perm[i]] = -self.exps[i];
            }
            ProjMap { perm, exps }
        }

        fn same_as(&self, other: &ProjMap, p: i64) -> bool {
            let shift = self.exps[0] - other.exps[0];
            self.perm == other.perm
                && (0..3).all(|i| (self.exps[i] - other.exps[i] - shift).rem_euclid(p) == 0)
        }
    }

    const ID: ProjMap = ProjMap {
        perm: [0, 1, 2],
        exps: [0, 0, 0],
    };
    // u[x:y:z] = [z:x:y]
    const U_MAP: ProjMap = ProjMap {
        perm: [2, 0, 1],
        exps: [0, 0, 0],
    };
    // v[x:y:z] = [y:x:z]
    const V_MAP: ProjMap = ProjMap {
        perm: [1, 0, 2],
        exps: [0, 0, 0],
    };

    fn a_map(i: usize, k: i64) -> ProjMap {
        let mut exps = [0; 3];
        exps[i] = k;
        ProjMap {
            perm: [0, 1, 2],
            exps,
        }
    }

    fn translation_map(m: i64, n: i64) -> ProjMap {
        a_map(0, m).then_after(a_map(1, n))
    }

    /// The coordinate permutation realizing each label, found by conjugating
    /// `a1, a2, a3` through words in `u, v`.
    fn perm_maps(p: i64) -> Vec<(Perm3, ProjMap)> {
        let mut found: Vec<(Perm3, ProjMap)> = Vec::new();
        let mut frontier = vec![ID];
        while let Some(w) = frontier.pop() {
            let mut images = [0u8; 3];
            for (i, img) in images.iter_mut().enumerate() {
                let conj = w.then_after(a_map(i, 1)).then_after(w.inverse());
                *img = (0..3)
                    .find(|&j| conj.same_as(&a_map(j, 1), p))
                    .expect("conjugate of a_i is some a_j") as u8;
            }
            let label = Perm3(images);
            if found.iter().all(|(l, _)| *l != label) {
                found.push((label, w));
                frontier.push(U_MAP.then_after(w));
                frontier.push(V_MAP.then_after(w));
            }
        }
        found
    }

    #[test]
    fn action_matrices_rederived() {
        let p = 5;
        let maps = perm_maps(p);
        assert_eq!(maps.len(), 6);
        let lookup = |l: Perm3| maps.iter().find(|(x, _)| *x == l).unwrap().1;
        assert!(lookup(Perm3::U).same_as(&U_MAP, p));
        assert!(lookup(Perm3::V).same_as(&V_MAP, p));
        for (label, w) in &maps {
            for (m, n) in [(1, 0), (0, 1)] {
                let conj = w.then_after(translation_map(m, n)).then_after(w.inverse());
                let a = label.matrix();
                let expect = translation_map(a[0][0] * m + a[0][1] * n, a[1][0] * m + a[1][1] * n);
                assert!(conj.same_as(&expect, p), "{label:?} on ({m},{n})");
            }
        }
    }

    #[test]
    fn multiplication_is_composition_of_maps() {
        let p = 5;
        let g = FermatGroup::new(&PrimeContext::new(p as u64).unwrap());
        let maps = perm_maps(p);
        let realize = |x: FermatAut| {
            let w = maps.iter().find(|(l, _)| *l == x.sigma).unwrap().1;
            translation_map(x.m as i64, x.n as i64).then_after(w)
        };
        for x in g.elements() {
            for y in g.elements() {
                let lhs = realize(g.multiply(x, y));
                let rhs = realize(x).then_after(realize(y));
                assert!(lhs.same_as(&rhs, p), "{x} * {y}");
            }
        }
        // faithful: distinct elements give distinct maps
        let all: Vec<_> = g.elements().into_iter().map(realize).collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert!(!all[i].same_as(&all[j], p));
            }
        }
    }

    #[test]
    fn conjugation_identities() {
        let g = FermatGroup::new(&PrimeContext::new(5).unwrap());
        assert_eq!(g.conjugate(g.u(), g.a1()), g.a2());
        assert_eq!(g.conjugate(g.u(), g.a2()), g.a3());
        assert_eq!(g.conjugate(g.u(), g.a3()), g.a1());
        assert_eq!(g.conjugate(g.v(), g.a1()), g.a2());
        assert_eq!(g.conjugate(g.v(), g.a2()), g.a1());
        assert_eq!(g.conjugate(g.v(), g.a3()), g.a3());
        assert_eq!(g.multiply(g.multiply(g.a1(), g.a2()), g.a3()), g.identity());
        assert_eq!(g.multiply(g.a1(), g.identity()), g.a1());
        assert_eq!(g.element_order(g.v()), 2);
        assert_eq!(g.element_order(g.u()), 3);
        assert_eq!(g.element_order(g.a1()), 5);
    }

    #[test]
    fn perm_composition_matches_matrices() {
        for a in Perm3::all() {
            for b in Perm3::all() {
                let ab = a.compose(b).matrix();
                let (ma, mb) = (a.matrix(), b.matrix());
                for i in 0..2 {
                    for j in 0..2 {
                        let prod = ma[i][0] * mb[0][j] + ma[i][1] * mb[1][j];
                        assert_eq!(prod, ab[i][j]);
                    }
                }
            }
        }
    }
}
