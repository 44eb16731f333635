//! Concrete finite groups: `G = Z_p^2 ⋊ S3 = Aut(F_p)` and
//! `A = Z_p ⋊ Z_3 = <T, R>` acting on `C_gamma`.
//!
//! Groups are small enough (at most a few thousand elements in the sweeps
//! that enumerate them) that every subgroup is kept as an explicit sorted
//! element list. Each group fixes a bijection between its elements and
//! `0..order`, which the coset and class-function code uses for dense tables.

mod fermat;
mod pgonal;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

pub use fermat::{FermatAut, FermatGroup, Perm3};
pub use pgonal::{pgonal_k, PGonalAut, PGonalGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// `Z_p^2 ⋊ S3` acting on the Fermat curve.
    Fermat,
    /// `Z_p ⋊ Z_3` acting on `C_gamma`.
    PGonal,
}

/// Identifies one concrete group instance; class functions built on
/// different instances cannot be paired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupTag {
    pub flavor: Flavor,
    pub p: u64,
    /// The root used for the p-gonal multiplication law.
    pub gamma: Option<u64>,
}

pub trait FiniteGroup: Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync;

    fn tag(&self) -> GroupTag;
    fn order(&self) -> usize;
    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inverse(&self, a: Self::Elem) -> Self::Elem;
    /// A generating set, used for orbit computations under conjugation.
    fn generators(&self) -> Vec<Self::Elem>;
    /// Position of `a` in the canonical enumeration.
    fn index_of(&self, a: Self::Elem) -> usize;
    fn element_at(&self, index: usize) -> Self::Elem;
    /// True if `a` is a well-formed element of this group.
    fn contains(&self, a: Self::Elem) -> bool;

    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    fn pow(&self, a: Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.inverse(a) } else { a };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.multiply(acc, base);
        }
        acc
    }

    fn element_order(&self, a: Self::Elem) -> usize {
        let e = self.identity();
        let mut x = a;
        let mut n = 1;
        while x != e {
            x = self.multiply(x, a);
            n += 1;
        }
        n
    }

    /// `h g h^-1`.
    fn conjugate(&self, h: Self::Elem, g: Self::Elem) -> Self::Elem {
        self.multiply(self.multiply(h, g), self.inverse(h))
    }

    fn commutes(&self, a: Self::Elem, b: Self::Elem) -> bool {
        self.multiply(a, b) == self.multiply(b, a)
    }

    /// Conjugacy classes, each sorted, ordered by their smallest element.
    fn conjugacy_classes(&self) -> Vec<Vec<Self::Elem>> {
        let gens = self.generators();
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for i in 0..self.order() {
            if seen[i] {
                continue;
            }
            let start = self.element_at(i);
            seen[i] = true;
            let mut class = vec![start];
            let mut cursor = 0;
            while cursor < class.len() {
                let g = class[cursor];
                cursor += 1;
                for &h in &gens {
                    let c = self.conjugate(h, g);
                    let idx = self.index_of(c);
                    if !seen[idx] {
                        seen[idx] = true;
                        class.push(c);
                    }
                }
            }
            class.sort();
            classes.push(class);
        }
        classes
    }

    /// For each element index, the index of its conjugacy class.
    fn class_index(&self, classes: &[Vec<Self::Elem>]) -> Vec<usize> {
        let mut map = vec![usize::MAX; self.order()];
        for (ci, class) in classes.iter().enumerate() {
            for &g in class {
                map[self.index_of(g)] = ci;
            }
        }
        map
    }
}

/// A subgroup stored as its sorted element list plus the generators it was
/// built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup<E> {
    generators: Vec<E>,
    elements: Vec<E>,
}

impl<E: Copy + Ord> Subgroup<E> {
    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: E) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup<E>) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }
}

/// Smallest subgroup containing `gens`. An empty list gives the trivial group.
pub fn subgroup_closure<G: FiniteGroup>(group: &G, gens: &[G::Elem]) -> Subgroup<G::Elem> {
    let e = group.identity();
    let mut seen: HashSet<G::Elem> = HashSet::from([e]);
    let mut queue = vec![e];
    let mut cursor = 0;
    while cursor < queue.len() {
        let x = queue[cursor];
        cursor += 1;
        for &g in gens {
            let y = group.multiply(x, g);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    let mut elements = queue;
    elements.sort();
    Subgroup {
        generators: gens.to_vec(),
        elements,
    }
}

/// Element-wise product set `K1 K2` and whether it equals `K2 K1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSet<E> {
    pub elements: Vec<E>,
    pub commutes: bool,
}

impl<E> ProductSet<E> {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

pub fn product_set<G: FiniteGroup>(
    group: &G,
    k1: &Subgroup<G::Elem>,
    k2: &Subgroup<G::Elem>,
) -> ProductSet<G::Elem> {
    let collect = |a: &Subgroup<G::Elem>, b: &Subgroup<G::Elem>| {
        let mut out = BTreeSet::new();
        for &x in a.elements() {
            for &y in b.elements() {
                out.insert(group.multiply(x, y));
            }
        }
        out
    };
    let forward = collect(k1, k2);
    let backward = collect(k2, k1);
    ProductSet {
        commutes: forward == backward,
        elements: forward.into_iter().collect(),
    }
}

/// Labels every element by its left coset `gK`; returns the label table
/// (indexed by element index) and one representative per coset.
pub fn left_cosets<G: FiniteGroup>(group: &G, k: &Subgroup<G::Elem>) -> (Vec<usize>, Vec<G::Elem>) {
    let mut label = vec![usize::MAX; group.order()];
    let mut reps = Vec::with_capacity(group.order() / k.order());
    for i in 0..group.order() {
        if label[i] != usize::MAX {
            continue;
        }
        let g = group.element_at(i);
        let id = reps.len();
        reps.push(g);
        for &x in k.elements() {
            label[group.index_of(group.multiply(g, x))] = id;
        }
    }
    (label, reps)
}

/// Lengths of the cycles of left multiplication by `x` on `G/K`.
pub fn coset_cycle_lengths<G: FiniteGroup>(
    group: &G,
    labels: &[usize],
    reps: &[G::Elem],
    x: G::Elem,
) -> Vec<usize> {
    let mut visited = vec![false; reps.len()];
    let mut lengths = Vec::new();
    for start in 0..reps.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut c = start;
        while !visited[c] {
            visited[c] = true;
            len += 1;
            c = labels[group.index_of(group.multiply(x, reps[c]))];
        }
        lengths.push(len);
    }
    lengths
}

/// All cyclic subgroups, deduplicated, in order of first generator.
pub fn cyclic_subgroups<G: FiniteGroup>(group: &G) -> Vec<Subgroup<G::Elem>> {
    let mut seen: HashMap<Vec<G::Elem>, ()> = HashMap::new();
    let mut out = Vec::new();
    for g in group.elements() {
        let s = subgroup_closure(group, &[g]);
        if seen.insert(s.elements.clone(), ()).is_none() {
            out.push(s);
        }
    }
    out
}
