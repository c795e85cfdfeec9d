//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are derivative symbols `x_b^(j)` packed into a single id, so the
//! same kernel serves the plain polynomial ring (order 0 everywhere), truncated
//! differential rings, and rings extended by hyperplane-coefficient blocks.
//! Coefficients are `BigRational`: reduced, positive denominator, never rounded.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational coefficient.
pub type Rat = BigRational;

const ORDER_BITS: u32 = 8;
const ORDER_MASK: u32 = (1 << ORDER_BITS) - 1;

/// Maximum derivative order a symbol can carry.
pub const MAX_ORDER: u32 = ORDER_MASK;

/// First base index reserved for auxiliary (non-differential) variables
/// introduced internally: homogenization, saturation inverses, intersection tags.
pub const AUX_BASE: u32 = 0x00FF_0000;

/// A derivative symbol `x_b^(j)`: base indeterminate `b`, derivative order `j`.
///
/// The formal derivation acts by `(b, j) -> (b, j + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn new(base: u32, order: u32) -> Var {
        assert!(order <= MAX_ORDER, "derivative order {order} out of range");
        Var(base << ORDER_BITS | order)
    }

    /// Auxiliary variable `k`, outside every differential universe.
    pub fn aux(k: u32) -> Var {
        Var::new(AUX_BASE + k, 0)
    }

    pub fn base(self) -> u32 {
        self.0 >> ORDER_BITS
    }

    pub fn order(self) -> u32 {
        self.0 & ORDER_MASK
    }

    pub fn is_aux(self) -> bool {
        self.base() >= AUX_BASE
    }

    /// The symbol `delta^k` of this one.
    pub fn derived(self, k: u32) -> Var {
        Var::new(self.base(), self.order() + k)
    }
}

/// A power product of variables; no zero exponents are stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    /// Build from (variable, exponent) pairs; zero exponents dropped, repeats merged.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            let mut rem = e;
            if j < other.0.len() && other.0[j].0 == v {
                if other.0[j].1 > e {
                    return None;
                }
                rem = e - other.0[j].1;
                j += 1;
            }
            if rem > 0 {
                out.push((v, rem));
            }
        }
        if j == other.0.len() {
            Some(Monomial(out))
        } else {
            None
        }
    }

    /// Replace each variable through `f`, merging collisions.
    pub fn map_vars(&self, f: &impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

/// Sparse polynomial; canonical storage keyed by the structural monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn from_int(n: i64) -> Poly {
        Poly::constant(Rat::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(Rat::one(), Monomial::var(v))
    }

    pub fn term(c: Rat, m: Monomial) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(&m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Constant term.
    pub fn constant_part(&self) -> Rat {
        self.coefficient(&Monomial::one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Degree in the single variable `v`.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        let mut seen = std::collections::BTreeSet::new();
        self.terms
            .keys()
            .flat_map(|m| m.vars())
            .filter(move |v| seen.insert(*v))
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Maximum derivative order among the symbols present; `None` for constants.
    pub fn max_order(&self) -> Option<u32> {
        self.vars().map(Var::order).max()
    }

    fn add_term(&mut self, m: &Monomial, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m, c);
        }
    }

    pub fn sub_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m, &-c.clone());
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(&m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Formal derivation: Leibniz rule with `delta x_b^(j) = x_b^(j+1)`,
    /// zero on constants and on auxiliary variables.
    pub fn derivative(&self) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (idx, &(v, e)) in m.exponents().iter().enumerate() {
                if v.is_aux() {
                    continue;
                }
                let mut pairs: Vec<(Var, u32)> = m.exponents().to_vec();
                pairs[idx].1 -= 1;
                pairs.push((v.derived(1), 1));
                let dm = Monomial::from_pairs(pairs);
                out.add_term(&dm, &(c * Rat::from_integer(BigInt::from(e))));
            }
        }
        out
    }

    pub fn derivative_n(&self, k: u32) -> Poly {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.derivative();
        }
        out
    }

    /// Partial derivative with respect to a single variable.
    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut pairs: Vec<(Var, u32)> = m.exponents().to_vec();
            for p in pairs.iter_mut() {
                if p.0 == v {
                    p.1 -= 1;
                }
            }
            let dm = Monomial::from_pairs(pairs);
            out.add_term(&dm, &(c * Rat::from_integer(BigInt::from(e))));
        }
        out
    }

    /// Coefficient of `v^e`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, e: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) != e {
                continue;
            }
            let reduced = Monomial::from_pairs(
                m.exponents().iter().copied().filter(|&(w, _)| w != v),
            );
            out.add_term(&reduced, c);
        }
        out
    }

    pub fn map_vars(&self, f: &impl Fn(Var) -> Var) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(f), c.clone())))
    }

    /// Substitute `v -> p` everywhere.
    pub fn substitute(&self, v: Var, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let rest = Monomial::from_pairs(
                m.exponents().iter().copied().filter(|&(w, _)| w != v),
            );
            let mut piece = p.pow(e).mul_monomial(&rest);
            piece = piece.scale(c);
            out.add_assign(&piece);
        }
        out
    }

    /// Evaluate at a rational point (all variables must be assigned).
    pub fn evaluate(&self, point: &BTreeMap<Var, Rat>) -> Rat {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for &(v, e) in m.exponents() {
                let x = point
                    .get(&v)
                    .unwrap_or_else(|| panic!("evaluate: unassigned variable {v:?}"));
                for _ in 0..e {
                    val *= x;
                }
            }
            total += val;
        }
        total
    }

    /// Rational scalar `c > 0` such that `c * self` has coprime integer
    /// coefficients. Sign is left untouched.
    fn content_scale(&self) -> Rat {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rat::one();
        }
        Rat::new(den_lcm, num_gcd)
    }

    /// Canonical scaling: coprime integer coefficients and a positive
    /// coefficient on the monomial singled out by `leading`.
    pub fn normalized_by<F>(&self, leading: F) -> Poly
    where
        F: Fn(&Poly) -> Option<Monomial>,
    {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut scale = self.content_scale();
        if let Some(lm) = leading(self) {
            if (self.coefficient(&lm) * &scale).is_negative() {
                scale = -scale;
            }
        }
        self.scale(&scale)
    }

    /// Canonical scaling using the structurally greatest monomial as leader.
    /// Order-dependent callers should prefer `normalized_by`.
    pub fn normalized(&self) -> Poly {
        self.normalized_by(|p| p.terms.keys().next_back().cloned())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

/// Convenience for integer rationals in tests and builders.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}
