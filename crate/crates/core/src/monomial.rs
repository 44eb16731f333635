//! Exact calculus on function-field elements of `C_alpha: y^p = x^alpha (x-1)`
//! of the shape `±ω^k x^a (x-1)^b y^d`, and on self-maps whose coordinates
//! are such monomials.
//!
//! Constants stay in the finite group `{±ω^k}`, and for each of the six
//! Möbius maps `f` permuting `{0, 1, oo}` both `f` and `f - 1` are monomials
//! in `x` and `x - 1`. Substitution therefore never leaves the monomial set
//! and every identity reduces to integer exponent bookkeeping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::PrimeContext;
use crate::curves::MoebiusLabel;
use crate::error::{Error, Result};

/// `(-1)^negative · ω^omega · x^x_exp · (x-1)^xm1_exp · y^y_exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialFunction {
    pub negative: bool,
    pub omega: i64,
    pub x_exp: i64,
    pub xm1_exp: i64,
    pub y_exp: i64,
}

impl MonomialFunction {
    pub const ONE: MonomialFunction = MonomialFunction::new(false, 0, 0, 0, 0);

    pub const fn new(negative: bool, omega: i64, x_exp: i64, xm1_exp: i64, y_exp: i64) -> Self {
        Self {
            negative,
            omega,
            x_exp,
            xm1_exp,
            y_exp,
        }
    }

    pub const fn x() -> Self {
        Self::new(false, 0, 1, 0, 0)
    }

    pub const fn y() -> Self {
        Self::new(false, 0, 0, 0, 1)
    }
}

/// `(f, f - 1)` for each Möbius label, as monomials in `x` and `x - 1`.
fn moebius_monomials(label: MoebiusLabel) -> (MonomialFunction, MonomialFunction) {
    let m = |neg, a, b| MonomialFunction::new(neg, 0, a, b, 0);
    match label {
        // x, x - 1
        MoebiusLabel::Id => (m(false, 1, 0), m(false, 0, 1)),
        // 1/x, -(x-1)/x
        MoebiusLabel::Inv => (m(false, -1, 0), m(true, -1, 1)),
        // -(x-1), -x
        MoebiusLabel::OneMinus => (m(true, 0, 1), m(true, 1, 0)),
        // x/(x-1), 1/(x-1)
        MoebiusLabel::Over => (m(false, 1, -1), m(false, 0, -1)),
        // -1/(x-1), -x/(x-1)
        MoebiusLabel::Cyc => (m(true, 0, -1), m(true, 1, -1)),
        // (x-1)/x, -1/x
        MoebiusLabel::Cyc2 => (m(false, -1, 1), m(true, -1, 0)),
    }
}

/// A self-map `(x, y) ↦ (f(x), y_image)` with `f` one of the six Möbius maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialMap {
    pub x_map: MoebiusLabel,
    pub y_image: MonomialFunction,
}

impl MonomialMap {
    pub fn x_image(&self) -> MonomialFunction {
        moebius_monomials(self.x_map).0
    }

    pub fn x_minus_one_image(&self) -> MonomialFunction {
        moebius_monomials(self.x_map).1
    }
}

/// Arithmetic modulo the relation `y^p = x^alpha (x-1)` of one curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialCalculus {
    pub p: u64,
    pub alpha: u64,
}

impl MonomialCalculus {
    pub fn new(ctx: &PrimeContext, alpha: u64) -> Result<Self> {
        ctx.check_xp(alpha)?;
        Ok(Self { p: ctx.p(), alpha })
    }

    fn p_i(&self) -> i64 {
        self.p as i64
    }

    /// Normal form: `0 <= d < p`, `0 <= k < p`; each `y^p` is traded for
    /// `x^alpha (x-1)`.
    pub fn reduce(&self, f: MonomialFunction) -> MonomialFunction {
        let p = self.p_i();
        let q = f.y_exp.div_euclid(p);
        MonomialFunction {
            negative: f.negative,
            omega: f.omega.rem_euclid(p),
            x_exp: f.x_exp + q * self.alpha as i64,
            xm1_exp: f.xm1_exp + q,
            y_exp: f.y_exp.rem_euclid(p),
        }
    }

    pub fn is_normal(&self, f: &MonomialFunction) -> bool {
        (0..self.p_i()).contains(&f.y_exp) && (0..self.p_i()).contains(&f.omega)
    }

    pub fn mul(&self, f: MonomialFunction, g: MonomialFunction) -> MonomialFunction {
        self.reduce(MonomialFunction {
            negative: f.negative ^ g.negative,
            omega: f.omega + g.omega,
            x_exp: f.x_exp + g.x_exp,
            xm1_exp: f.xm1_exp + g.xm1_exp,
            y_exp: f.y_exp + g.y_exp,
        })
    }

    pub fn pow(&self, f: MonomialFunction, n: i64) -> MonomialFunction {
        self.reduce(MonomialFunction {
            negative: f.negative && n.rem_euclid(2) == 1,
            omega: f.omega * n,
            x_exp: f.x_exp * n,
            xm1_exp: f.xm1_exp * n,
            y_exp: f.y_exp * n,
        })
    }

    /// `f(x_image, y_image)`, with `x - 1` replaced by the image of `x - 1`.
    pub fn substitute(&self, f: MonomialFunction, map: &MonomialMap) -> MonomialFunction {
        let constant = MonomialFunction::new(f.negative, f.omega, 0, 0, 0);
        let parts = [
            self.pow(map.x_image(), f.x_exp),
            self.pow(map.x_minus_one_image(), f.xm1_exp),
            self.pow(map.y_image, f.y_exp),
        ];
        parts
            .into_iter()
            .fold(self.reduce(constant), |acc, g| self.mul(acc, g))
    }

    pub fn make_map(&self, x_map: MoebiusLabel, y_image: MonomialFunction) -> MonomialMap {
        MonomialMap {
            x_map,
            y_image: self.reduce(y_image),
        }
    }

    pub fn identity(&self) -> MonomialMap {
        self.make_map(MoebiusLabel::Id, MonomialFunction::y())
    }

    /// `outer ∘ inner`: substitute the images of `inner` into those of `outer`.
    pub fn compose(&self, outer: &MonomialMap, inner: &MonomialMap) -> Result<MonomialMap> {
        let x_new = self.substitute(outer.x_image(), inner);
        let x_map = MoebiusLabel::ALL
            .into_iter()
            .find(|&l| self.reduce(moebius_monomials(l).0) == x_new)
            .ok_or_else(|| Error::NonMonomial(format!("x-image {}", self.render(&x_new))))?;
        debug_assert_eq!(x_map, outer.x_map.compose(inner.x_map));
        Ok(MonomialMap {
            x_map,
            y_image: self.substitute(outer.y_image, inner),
        })
    }

    /// `map^n` for `n >= 0`.
    pub fn map_pow(&self, map: &MonomialMap, n: u64) -> Result<MonomialMap> {
        let mut acc = self.identity();
        for _ in 0..n {
            acc = self.compose(map, &acc)?;
        }
        Ok(acc)
    }

    /// True iff `y_image^p` and `x_image^alpha (x_image - 1)` agree.
    pub fn verify_curve_automorphism(&self, map: &MonomialMap) -> bool {
        let lhs = self.pow(map.y_image, self.p_i());
        let rhs = self.mul(
            self.pow(map.x_image(), self.alpha as i64),
            map.x_minus_one_image(),
        );
        lhs == rhs
    }

    /// `T^k = (x, ω^k y)`.
    pub fn t_power(&self, k: i64) -> MonomialMap {
        self.make_map(MoebiusLabel::Id, MonomialFunction::new(false, k, 0, 0, 1))
    }

    /// Balanced representative `-p/2 < d <= p/2` of the `y` exponent, used
    /// only for display.
    fn balanced(&self, f: &MonomialFunction) -> MonomialFunction {
        let f = self.reduce(*f);
        if 2 * f.y_exp > self.p_i() {
            MonomialFunction {
                x_exp: f.x_exp + self.alpha as i64,
                xm1_exp: f.xm1_exp + 1,
                y_exp: f.y_exp - self.p_i(),
                ..f
            }
        } else {
            f
        }
    }

    /// Renders like `-x^1*y^-3` or `w^1*y`; the bare coordinate `x` renders
    /// as `x`.
    pub fn render(&self, f: &MonomialFunction) -> String {
        let f = self.balanced(f);
        if f == MonomialFunction::x() {
            return "x".into();
        }
        let mut factors = Vec::new();
        if f.omega != 0 {
            factors.push(format!("w^{}", f.omega));
        }
        if f.x_exp != 0 {
            factors.push(format!("x^{}", f.x_exp));
        }
        if f.xm1_exp != 0 {
            factors.push(format!("(x-1)^{}", f.xm1_exp));
        }
        match f.y_exp {
            0 => {}
            1 => factors.push("y".into()),
            d => factors.push(format!("y^{d}")),
        }
        let body = if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        };
        if f.negative {
            format!("-{body}")
        } else {
            body
        }
    }

    pub fn render_map(&self, map: &MonomialMap) -> String {
        format!(
            "({}, {})",
            self.render(&map.x_image()),
            self.render(&map.y_image)
        )
    }

    /// Closure of `gens` under composition.
    pub fn generated_set(&self, gens: &[MonomialMap]) -> Result<Vec<MonomialMap>> {
        let mut seen = std::collections::BTreeSet::from([self.identity()]);
        let mut queue = vec![self.identity()];
        let mut cursor = 0;
        while cursor < queue.len() {
            let m = queue[cursor];
            cursor += 1;
            for g in gens {
                let next = self.compose(g, &m)?;
                if seen.insert(next) {
                    queue.push(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

/// Sign exponent prescribed for `R`: `1` if `gamma` is even, `2` otherwise.
pub fn epsilon_rule(gamma: u64) -> u8 {
    if gamma.is_multiple_of(2) {
        1
    } else {
        2
    }
}

fn check_gamma(ctx: &PrimeContext, gamma: u64) -> Result<()> {
    let (a, b) = ctx.gamma_pair().ok_or(Error::NoGamma(ctx.p()))?;
    if gamma == a || gamma == b {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            value: gamma as i64,
            max: ctx.p() - 2,
        })
    }
}

/// `T` on `C_alpha`.
pub fn build_t(ctx: &PrimeContext, alpha: u64) -> Result<(MonomialCalculus, MonomialMap)> {
    let calc = MonomialCalculus::new(ctx, alpha)?;
    Ok((calc, calc.t_power(1)))
}

/// `R(x, y) = (1/(1-x), (-1)^eps x^{(g^2+g+1)/p} / y^{g+1})` on `C_gamma`
/// with an explicit sign exponent.
pub fn build_r_with_epsilon(
    ctx: &PrimeContext,
    gamma: u64,
    epsilon: u8,
) -> Result<(MonomialCalculus, MonomialMap)> {
    check_gamma(ctx, gamma)?;
    let calc = MonomialCalculus::new(ctx, gamma)?;
    let x_power = (gamma * gamma + gamma + 1) / ctx.p();
    let y_image =
        MonomialFunction::new(epsilon % 2 == 1, 0, x_power as i64, 0, -(gamma as i64 + 1));
    Ok((calc, calc.make_map(MoebiusLabel::Cyc, y_image)))
}

/// `R` with the sign exponent given by [`epsilon_rule`].
pub fn build_r(ctx: &PrimeContext, gamma: u64) -> Result<(MonomialCalculus, MonomialMap)> {
    build_r_with_epsilon(ctx, gamma, epsilon_rule(gamma))
}

/// The hyperelliptic involution `J(x, y) = (1 - x, y)` of `C_1`.
pub fn build_j(ctx: &PrimeContext) -> Result<(MonomialCalculus, MonomialMap)> {
    let calc = MonomialCalculus::new(ctx, 1)?;
    Ok((
        calc,
        calc.make_map(MoebiusLabel::OneMinus, MonomialFunction::y()),
    ))
}

/// Which sign exponents make `R` preserve `C_gamma`, next to the rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonReport {
    pub gamma: u64,
    pub passing: Vec<u8>,
    pub rule: u8,
}

impl EpsilonReport {
    /// Exactly one parity passes and it is the one the rule names.
    pub fn rule_confirmed(&self) -> bool {
        self.passing == [self.rule]
    }
}

pub fn epsilon_report(ctx: &PrimeContext, gamma: u64) -> Result<EpsilonReport> {
    let mut passing = Vec::new();
    for eps in [1u8, 2] {
        let (calc, r) = build_r_with_epsilon(ctx, gamma, eps)?;
        if calc.verify_curve_automorphism(&r) {
            passing.push(eps);
        }
    }
    Ok(EpsilonReport {
        gamma,
        passing,
        rule: epsilon_rule(gamma),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    T,
    R,
}

/// A word like `T^-1 R T^1`, read as a composition of maps: the rightmost
/// letter acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<(Letter, i64)>);

impl Word {
    pub fn parse(s: &str) -> Result<Word> {
        let bad = || Error::BadWord(s.to_string());
        let mut letters = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*' || c == '∘') {
            if tok.is_empty() {
                continue;
            }
            let (head, exp) = match tok.split_once('^') {
                Some((h, e)) => (h, e.parse::<i64>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let letter = match head {
                "T" => Letter::T,
                "R" => Letter::R,
                "I" | "id" => continue,
                _ => return Err(bad()),
            };
            letters.push((letter, exp));
        }
        Ok(Word(letters))
    }

    pub fn t(k: i64) -> Word {
        Word(vec![(Letter::T, k)])
    }

    pub fn then(mut self, other: Word) -> Word {
        self.0.extend(other.0);
        self
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for (i, (l, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = match l {
                Letter::T => "T",
                Letter::R => "R",
            };
            write!(f, "{name}^{e}")?;
        }
        Ok(())
    }
}

/// Evaluates words in `T` and `R` on `C_gamma`.
#[derive(Debug, Clone)]
pub struct RelationChecker {
    calc: MonomialCalculus,
    r: MonomialMap,
    r_powers: [MonomialMap; 3],
}

impl RelationChecker {
    pub fn new(ctx: &PrimeContext, gamma: u64) -> Result<Self> {
        let (calc, r) = build_r(ctx, gamma)?;
        let r2 = calc.compose(&r, &r)?;
        Ok(Self {
            calc,
            r,
            r_powers: [calc.identity(), r, r2],
        })
    }

    pub fn calculus(&self) -> &MonomialCalculus {
        &self.calc
    }

    pub fn r(&self) -> &MonomialMap {
        &self.r
    }

    pub fn evaluate(&self, word: &Word) -> Result<MonomialMap> {
        let mut acc = self.calc.identity();
        for &(letter, e) in word.0.iter().rev() {
            let m = match letter {
                Letter::T => self.calc.t_power(e),
                Letter::R => self.r_powers[e.rem_euclid(3) as usize],
            };
            acc = self.calc.compose(&m, &acc)?;
        }
        Ok(acc)
    }

    /// Unreduced powers of `R`: composes `R` with itself `n` times.
    pub fn r_power(&self, n: u64) -> Result<MonomialMap> {
        self.calc.map_pow(&self.r, n)
    }

    pub fn verify_relation(&self, lhs: &Word, rhs: &Word) -> Result<bool> {
        Ok(self.evaluate(lhs)? == self.evaluate(rhs)?)
    }
}

/// Compares two words on `C_gamma` for the conventional root.
pub fn verify_relation(lhs: &Word, rhs: &Word, ctx: &PrimeContext) -> Result<bool> {
    RelationChecker::new(ctx, ctx.gamma()?)?.verify_relation(lhs, rhs)
}
