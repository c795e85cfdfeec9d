//! Differential polynomials: rankings, leaders, initials, separants, the
//! formal derivation, and Ritt reduction with multiplier certificates.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Poly, Var};

/// A ranking: a total order on derivative symbols compatible with the
/// derivation (`delta t > t`, and `t1 > t2` implies `delta t1 > delta t2`).
#[derive(Debug, Clone)]
pub struct Ranking {
    kind: RankingKind,
    /// Positional priority of base indeterminates; later entries rank higher
    /// when derivative orders tie (orderly) or always (elimination).
    priority: Arc<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankingKind {
    /// Compare derivative order first, then base priority.
    Orderly,
    /// Compare base priority first, then derivative order: every derivative of
    /// a later-listed indeterminate ranks above all derivatives of earlier ones.
    Elimination,
}

impl Ranking {
    /// The fixed default: `x_i^(j) < x_k^(l)` iff `j < l`, or `j = l` and `i < k`.
    pub fn orderly(n: usize) -> Ranking {
        Ranking::orderly_with_priority((0..n as u32).collect())
    }

    /// Orderly ranking with an explicit base order (`priority[last]` highest).
    pub fn orderly_with_priority(priority: Vec<u32>) -> Ranking {
        Ranking {
            kind: RankingKind::Orderly,
            priority: Arc::new(priority),
        }
    }

    /// Elimination ranking by a variable list, later entries higher.
    pub fn elimination(priority: Vec<u32>) -> Ranking {
        Ranking {
            kind: RankingKind::Elimination,
            priority: Arc::new(priority),
        }
    }

    pub fn kind(&self) -> RankingKind {
        self.kind
    }

    fn base_rank(&self, base: u32) -> u32 {
        self.priority
            .iter()
            .position(|&b| b == base)
            .map(|p| p as u32)
            .unwrap_or(base)
    }

    pub fn cmp_vars(&self, a: Var, b: Var) -> Ordering {
        let key = |v: Var| match self.kind {
            RankingKind::Orderly => (v.order(), self.base_rank(v.base())),
            RankingKind::Elimination => (self.base_rank(v.base()), v.order()),
        };
        key(a).cmp(&key(b))
    }

    /// All of `vars`, sorted by descending rank.
    pub fn sort_descending(&self, mut vars: Vec<Var>) -> Vec<Var> {
        vars.sort_by(|&a, &b| self.cmp_vars(b, a));
        vars
    }
}

/// A polynomial in derivative symbols together with the ranking that gives it
/// a leader, initial, and separant.
#[derive(Debug, Clone)]
pub struct DiffPoly {
    poly: Poly,
    ranking: Ranking,
}

impl PartialEq for DiffPoly {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}
impl Eq for DiffPoly {}

impl DiffPoly {
    pub fn new(poly: Poly, ranking: Ranking) -> DiffPoly {
        DiffPoly { poly, ranking }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.poly.is_constant()
    }

    /// Order: the maximum derivative order among the symbols present.
    pub fn order(&self) -> Option<u32> {
        self.poly.max_order()
    }

    /// The formal derivative `delta^k f`.
    pub fn derive(&self, k: u32) -> DiffPoly {
        DiffPoly {
            poly: self.poly.derivative_n(k),
            ranking: self.ranking.clone(),
        }
    }

    /// The ranking-greatest symbol effectively present.
    pub fn leader(&self) -> Result<Var> {
        self.poly
            .vars()
            .max_by(|&a, &b| self.ranking.cmp_vars(a, b))
            .ok_or(Error::ConstantPolynomial)
    }

    /// Leading coefficient of `self` regarded as univariate in its leader.
    pub fn initial(&self) -> Result<Poly> {
        let ld = self.leader()?;
        let d = self.poly.degree_in(ld);
        Ok(self.poly.coefficient_of(ld, d))
    }

    /// Partial derivative with respect to the leader.
    pub fn separant(&self) -> Result<Poly> {
        let ld = self.leader()?;
        Ok(self.poly.partial(ld))
    }

    /// (leader, initial, separant) in one call.
    pub fn leader_initial_separant(&self) -> Result<(Var, Poly, Poly)> {
        let ld = self.leader()?;
        let d = self.poly.degree_in(ld);
        Ok((ld, self.poly.coefficient_of(ld, d), self.poly.partial(ld)))
    }

    pub fn degree_in_leader(&self) -> Result<u32> {
        Ok(self.poly.degree_in(self.leader()?))
    }

    /// Rank comparison: leader first, then degree in the leader.
    pub fn rank_compare(&self, other: &DiffPoly) -> Result<Ordering> {
        let (la, lb) = (self.leader()?, other.leader()?);
        Ok(match self.ranking.cmp_vars(la, lb) {
            Ordering::Equal => self.poly.degree_in(la).cmp(&other.poly.degree_in(la)),
            ord => ord,
        })
    }

    /// Reduced with respect to `other`: no proper derivative of `ld(other)`
    /// appears, and the degree in `ld(other)` is below `other`'s.
    pub fn is_reduced_wrt(&self, other: &DiffPoly) -> Result<bool> {
        let ld = other.leader()?;
        let deg = other.poly.degree_in(ld);
        if self.poly.degree_in(ld) >= deg {
            return Ok(false);
        }
        Ok(!self
            .poly
            .vars()
            .any(|v| v.base() == ld.base() && v.order() > ld.order()))
    }

    /// Reduced in the algebraic sense: only the degree condition.
    pub fn is_algebraically_reduced_wrt(&self, other: &DiffPoly) -> Result<bool> {
        let ld = other.leader()?;
        Ok(self.poly.degree_in(ld) < other.poly.degree_in(ld))
    }
}

/// One pseudo-division step of a Ritt reduction, for the certificate
/// `multiplier * g = sum quotient_s * delta^(derive_order_s) chain_s + remainder`.
#[derive(Debug, Clone)]
pub struct ReductionStep {
    /// Index into the chain used for this step.
    pub element: usize,
    /// How many times that element was derived before dividing.
    pub derive_order: u32,
    /// The quotient multiplying the derived element.
    pub quotient: Poly,
}

/// Certificate accompanying every Ritt reduction.
#[derive(Debug, Clone)]
pub struct ReductionCertificate {
    /// Product of the separants and initials used, as a single polynomial.
    pub multiplier: Poly,
    pub steps: Vec<ReductionStep>,
}

impl ReductionCertificate {
    /// Check the defining identity exactly:
    /// `multiplier * g - sum q_s * delta^(k_s) A_s == remainder`.
    pub fn verifies(&self, g: &Poly, chain: &[DiffPoly], remainder: &Poly) -> bool {
        let mut acc = self.multiplier.mul(g);
        for step in &self.steps {
            let derived = chain[step.element].poly().derivative_n(step.derive_order);
            acc.sub_assign(&step.quotient.mul(&derived));
        }
        acc.sub_assign(remainder);
        acc.is_zero()
    }

    /// The largest derivative order taken of any chain element.
    pub fn max_derive_order(&self) -> u32 {
        self.steps.iter().map(|s| s.derive_order).max().unwrap_or(0)
    }
}

pub struct Reduction {
    pub remainder: DiffPoly,
    pub certificate: ReductionCertificate,
}

/// Pseudo-divide `r` by `b` in the variable `v` until `deg_v(r) < deg_v(b)`.
/// Returns the accumulated initial power used. Quotients are pushed into `steps`.
fn pseudo_divide(
    r: &mut Poly,
    b: &Poly,
    v: Var,
    element: usize,
    derive_order: u32,
    steps: &mut Vec<ReductionStep>,
    multiplier: &mut Poly,
) {
    let db = b.degree_in(v);
    let init = b.coefficient_of(v, db);
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lead = r.coefficient_of(v, dr);
        // r <- init * r - lead * v^(dr-db) * b
        let shift = Poly::var(v).pow(dr - db);
        let quotient = lead.mul(&shift);
        *r = &init.mul(r) - &quotient.mul(b);
        // fold the step into earlier quotients: multiplying the whole identity
        // by init keeps it exact if previous quotients are scaled too
        for s in steps.iter_mut() {
            s.quotient = s.quotient.mul(&init);
        }
        *multiplier = multiplier.mul(&init);
        steps.push(ReductionStep {
            element,
            derive_order,
            quotient,
        });
        debug_assert!(r.degree_in(v) < dr);
    }
}

/// Ritt reduction of `g` with respect to an auto-reduced chain, differential
/// mode: first eliminate proper derivatives of chain leaders via separants,
/// then cut leader degrees via initials, working from the highest rank down.
pub fn ritt_reduce(g: &DiffPoly, chain: &[DiffPoly]) -> Result<Reduction> {
    ritt_reduce_inner(g, chain, true)
}

/// Algebraic mode: symbols are plain variables, only degree reduction applies.
pub fn ritt_reduce_algebraic(g: &DiffPoly, chain: &[DiffPoly]) -> Result<Reduction> {
    ritt_reduce_inner(g, chain, false)
}

fn ritt_reduce_inner(g: &DiffPoly, chain: &[DiffPoly], differential: bool) -> Result<Reduction> {
    let ranking = g.ranking().clone();
    let mut r = g.poly().clone();
    let mut multiplier = Poly::one();
    let mut steps: Vec<ReductionStep> = Vec::new();

    let leaders: Vec<(usize, Var, u32)> = chain
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let ld = a.leader()?;
            Ok((i, ld, a.poly().degree_in(ld)))
        })
        .collect::<Result<_>>()?;

    if differential {
        // Repeatedly clear the highest proper derivative of any chain leader.
        loop {
            let mut target: Option<(Var, usize, u32)> = None;
            for v in r.vars() {
                for &(i, ld, _) in &leaders {
                    if v.base() == ld.base() && v.order() > ld.order() {
                        let better = match target {
                            None => true,
                            Some((tv, _, _)) => ranking.cmp_vars(v, tv) == Ordering::Greater,
                        };
                        if better {
                            target = Some((v, i, v.order() - ld.order()));
                        }
                    }
                }
            }
            let Some((theta, i, k)) = target else { break };
            // delta^k A_i is linear in theta with coefficient the separant.
            let derived = chain[i].poly().derivative_n(k);
            debug_assert_eq!(derived.degree_in(theta), 1);
            pseudo_divide(&mut r, &derived, theta, i, k, &mut steps, &mut multiplier);
        }
    }

    // Algebraic phase, highest rank first.
    let mut by_rank: Vec<&(usize, Var, u32)> = leaders.iter().collect();
    by_rank.sort_by(|a, b| ranking.cmp_vars(b.1, a.1));
    for &&(i, ld, deg) in &by_rank {
        if !r.is_zero() && r.degree_in(ld) >= deg {
            pseudo_divide(
                &mut r,
                chain[i].poly(),
                ld,
                i,
                0,
                &mut steps,
                &mut multiplier,
            );
        }
    }

    let certificate = ReductionCertificate { multiplier, steps };
    debug_assert!(certificate.verifies(g.poly(), chain, &r));
    Ok(Reduction {
        remainder: DiffPoly::new(r, ranking),
        certificate,
    })
}
