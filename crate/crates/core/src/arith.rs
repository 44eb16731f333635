//! Residue arithmetic modulo a prime and the validated [`PrimeContext`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted prime. Residues are kept below `2^32` so that every
/// product of two residues fits in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// A prime `p >= 5` together with its residue class mod 3 and, when
/// `p = 1 (mod 3)`, the two roots of `g^2 + g + 1 = 0` in `X_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeContext {
    p: u64,
    residue_mod_3: u8,
    gamma_pair: Option<(u64, u64)>,
}

impl PrimeContext {
    /// Validates `p` and finds the cube roots of unity by scanning `X_p`.
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 {
            return Err(Error::TooSmall(p));
        }
        if p > MAX_PRIME {
            return Err(Error::TooLarge { p, max: MAX_PRIME });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let residue_mod_3 = (p % 3) as u8;
        let gamma_pair = if residue_mod_3 == 1 {
            let mut roots = (1..=p - 2).filter(|&g| (g * g + g + 1) % p == 0);
            let first = roots.next();
            let second = roots.next();
            match (first, second) {
                (Some(a), Some(b)) => Some((a, b)),
                // p = 1 (mod 3) always has both roots in X_p
                _ => unreachable!("missing cube roots of unity mod {p}"),
            }
        } else {
            None
        };
        Ok(Self {
            p,
            residue_mod_3,
            gamma_pair,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residue_mod_3(&self) -> u8 {
        self.residue_mod_3
    }

    /// `(g, g^-1)` with the smaller root first.
    pub fn gamma_pair(&self) -> Option<(u64, u64)> {
        self.gamma_pair
    }

    /// The conventional root: the smaller of the pair.
    pub fn gamma(&self) -> Result<u64> {
        self.gamma_pair
            .map(|(g, _)| g)
            .ok_or(Error::NoGamma(self.p))
    }

    /// Genus of the Fermat curve `x^p + y^p + z^p = 0`.
    pub fn fermat_genus(&self) -> u64 {
        (self.p - 1) * (self.p - 2) / 2
    }

    /// Genus `(p-1)/2` shared by every curve `y^p = x^a (x-1)`.
    pub fn pgonal_genus(&self) -> u64 {
        (self.p - 1) / 2
    }

    /// Expected number of size-6 orbits on `X_p`.
    pub fn generic_orbit_count(&self) -> u64 {
        if self.residue_mod_3 == 1 {
            (self.p - 7) / 6
        } else {
            (self.p - 5) / 6
        }
    }

    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a % self.p) * (b % self.p) % self.p
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        let mut b = base % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue, via Fermat's little theorem.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    /// True when `a` lies in `X_p = {1, ..., p-2}`.
    pub fn in_xp(&self, a: u64) -> bool {
        (1..=self.p - 2).contains(&a)
    }

    pub fn check_xp(&self, a: u64) -> Result<u64> {
        if self.in_xp(a) {
            Ok(a)
        } else {
            Err(Error::OutOfRange {
                value: a as i64,
                max: self.p - 2,
            })
        }
    }
}

/// Trial division; adequate for moduli below `2^32`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in `[from, to]`, ascending.
pub fn primes_between(from: u64, to: u64) -> Vec<u64> {
    (from..=to).filter(|&n| is_prime(n)).collect()
}
