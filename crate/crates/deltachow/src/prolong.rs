//! Prolongation (jet) machinery: the truncated ideals `I(B_h(W))` of a
//! differential variety, prolongation admissibility, prolongation sequences,
//! dominant components, and Kolchin polynomials.

use std::collections::BTreeSet;
use std::fmt;

use crate::chain::{asat_at_order, chain_ring, prolonged_generators, AscendingChain, ChainMode};
use crate::diff::DiffPoly;
use crate::error::{Error, Result};
use crate::groebner::Caps;
use crate::ideal::TruncatedIdeal;
use crate::poly::{Poly, Var};

/// Ambient jet data: `n` differential indeterminates truncated at order `h`;
/// the ambient ring is `K{x}_{<=h}` with `n(h+1)` symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JetContext {
    pub n: usize,
    pub h: u32,
}

impl JetContext {
    pub fn new(n: usize, h: u32) -> JetContext {
        JetContext { n, h }
    }
}

/// Differential dimension and order, with the Kolchin polynomial
/// `omega(t) = d (t + 1) + h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KolchinData {
    pub d: usize,
    pub h: u64,
}

impl KolchinData {
    pub fn evaluate(&self, t: i64) -> i64 {
        self.d as i64 * (t + 1) + self.h as i64
    }
}

impl fmt::Display for KolchinData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let constant = self.d as u64 + self.h;
        if self.d == 0 {
            write!(f, "{}", self.h)
        } else if self.d == 1 {
            write!(f, "t + {constant}")
        } else {
            write!(f, "{}*t + {constant}", self.d)
        }
    }
}

/// The unique dominant component of the differential variety attached to the
/// prolongation sequence generated by an irreducible admissible variety.
#[derive(Debug, Clone)]
pub struct DominantComponent {
    pub diff_chain: AscendingChain,
    pub kolchin: KolchinData,
}

/// Kolchin data of the irreducible differential variety `sat(chain)`:
/// `d = n - card(chain)`, `h = sum of element orders` (orderly ranking).
pub fn kolchin(chain: &AscendingChain) -> Result<KolchinData> {
    if chain.mode() != ChainMode::Differential {
        return Err(Error::InvalidChain(
            "Kolchin data needs a differential-mode chain".into(),
        ));
    }
    let d = chain.n() - chain.len();
    let h = chain
        .elements()
        .iter()
        .map(|e| e.order().unwrap_or(0) as u64)
        .sum();
    Ok(KolchinData { d, h })
}

/// `I(B_h(W))` for `W = sat(chain)`: the ideal of the prolonged generators
/// `{delta^k f : ord(f) + k <= h}`, saturated by the product of the chain's
/// initials and separants (the initials of the prolonged set).
pub fn b_h(chain: &AscendingChain, h: u32, caps: Caps) -> Result<TruncatedIdeal> {
    let needed = chain.max_order();
    if h < needed {
        return Err(Error::OrderTooSmall { needed, got: h });
    }
    if chain.mode() != ChainMode::Differential {
        return Err(Error::InvalidChain(
            "B_h needs a differential-mode chain".into(),
        ));
    }
    let ring = chain_ring(chain.n(), h);
    let gens: Vec<Poly> = prolonged_generators(chain, h)
        .into_iter()
        .map(DiffPoly::into_poly)
        .collect();
    let ideal = TruncatedIdeal::with_degrevlex(ring, gens, caps)?;
    let mut multiplier = Poly::one();
    for f in chain.elements() {
        multiplier = multiplier.mul(&f.initial()?);
        if f.order().unwrap_or(0) < h {
            multiplier = multiplier.mul(&f.separant()?);
        }
    }
    ideal.saturate(&multiplier)
}

/// Prolongation admissibility of the variety of `ideal` inside its jet ring:
/// every generator `g` of the contraction to order `h-1` must satisfy
/// `delta g` in the ideal. Exact for irreducible varieties.
pub fn is_admissible(ideal: &TruncatedIdeal) -> Result<bool> {
    if ideal.is_unit()? {
        return Err(Error::ImproperIdeal);
    }
    let h = ideal.ring().order_bound();
    if h == 0 {
        // tau_0 is the identity functor; every subvariety qualifies
        return Ok(true);
    }
    let drop: BTreeSet<Var> = ideal
        .ring()
        .vars()
        .into_iter()
        .filter(|v| v.order() == h)
        .collect();
    let projected = ideal.eliminate(&drop)?;
    for g in projected.generators() {
        if !ideal.member(&g.derivative())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Recover the dominant component from an algebraic characteristic set of an
/// irreducible prolongation-admissible variety in `ctx`.
///
/// The chain must have, per variable class, leaders of consecutive orders
/// running up to `ctx.h`, with every element above the first linear in its
/// leader; the lowest-order elements form the differential characteristic set.
pub fn dominant_component(
    chain: &AscendingChain,
    ctx: JetContext,
    caps: Caps,
) -> Result<DominantComponent> {
    if chain.mode() != ChainMode::Algebraic {
        return Err(Error::InvalidChain(
            "dominant component needs an algebraic-mode chain".into(),
        ));
    }
    if chain.max_order() > ctx.h {
        return Err(Error::OrderTooSmall {
            needed: chain.max_order(),
            got: ctx.h,
        });
    }

    // Group by leader base and check the admissible shape.
    let mut classes: std::collections::BTreeMap<u32, Vec<&DiffPoly>> =
        std::collections::BTreeMap::new();
    for e in chain.elements() {
        classes.entry(e.leader()?.base()).or_default().push(e);
    }
    let mut lowest: Vec<DiffPoly> = Vec::new();
    for (base, elems) in &classes {
        let var_label = || format!("x{}", base + 1);
        let mut orders: Vec<u32> = Vec::new();
        for e in elems {
            orders.push(e.leader()?.order());
        }
        orders.sort_unstable();
        let lo = orders[0];
        let expected: Vec<u32> = (lo..=ctx.h).collect();
        if orders != expected {
            return Err(Error::NotAdmissibleShape {
                variable: var_label(),
            });
        }
        for e in elems {
            let ld = e.leader()?;
            if ld.order() > lo && e.poly().degree_in(ld) != 1 {
                return Err(Error::NotAdmissibleShape {
                    variable: var_label(),
                });
            }
            if ld.order() == lo {
                lowest.push((*e).clone());
            }
        }
    }

    let diff_chain = AscendingChain::differential(chain.n(), lowest, chain.ranking().clone())?;

    // Dimension route: d = dim V - dim of the closure of the projection,
    // order = dim V - d (h + 1).
    let ideal = asat_at_order(chain, ctx.h, caps)?;
    let (dim_v, _) = ideal.dim_and_degree()?;
    let dim_proj = if ctx.h == 0 {
        0
    } else {
        ideal.project_to_order(ctx.h - 1)?.dim_and_degree()?.0
    };
    if dim_proj > dim_v {
        return Err(Error::NotAdmissibleShape {
            variable: "projection dimension exceeds the variety's".into(),
        });
    }
    let d = dim_v - dim_proj;
    let spent = d * (ctx.h as usize + 1);
    if spent > dim_v {
        return Err(Error::NotAdmissibleShape {
            variable: "order would be negative".into(),
        });
    }
    let kolchin = KolchinData {
        d,
        h: (dim_v - spent) as u64,
    };
    Ok(DominantComponent {
        diff_chain,
        kolchin,
    })
}

/// The level-`l` member of the prolongation sequence of the union of the
/// given irreducible components: the intersection of their `B_l` ideals.
pub fn prolongation_sequence(
    components: &[AscendingChain],
    level: u32,
    caps: Caps,
) -> Result<TruncatedIdeal> {
    prolongation_sequence_jobs(components, level, caps, 1)
}

/// As `prolongation_sequence`, computing per-component ideals on `jobs` threads.
pub fn prolongation_sequence_jobs(
    components: &[AscendingChain],
    level: u32,
    caps: Caps,
    jobs: usize,
) -> Result<TruncatedIdeal> {
    if components.is_empty() {
        return Err(Error::InvalidInput(
            "prolongation sequence needs at least one component".into(),
        ));
    }
    let n = components[0].n();
    if components.iter().any(|c| c.n() != n) {
        return Err(Error::InvalidInput(
            "components live in different ambient spaces".into(),
        ));
    }
    let ideals = crate::util::par_map(components, jobs, |c| b_h(c, level, caps))?;
    let mut iter = ideals.into_iter();
    let mut acc = iter.next().expect("nonempty components");
    for next in iter {
        acc = acc.intersect(&next)?;
    }
    Ok(acc)
}

/// Upper approximation from raw generators: the ideal of `{delta^j f}` with
/// `ord(f) + j <= level`. May strictly contain the exact sequence ideal when
/// the generators' variety has lower-dimensional components.
pub fn prolongation_ideal_naive(
    generators: &[DiffPoly],
    n: usize,
    level: u32,
    caps: Caps,
) -> Result<TruncatedIdeal> {
    let ring = crate::chain::chain_ring(n, level);
    let mut gens = Vec::new();
    for f in generators {
        let ord = f.order().unwrap_or(0);
        if ord > level {
            return Err(Error::OrderTooSmall {
                needed: ord,
                got: level,
            });
        }
        for k in 0..=(level - ord) {
            gens.push(f.poly().derivative_n(k));
        }
    }
    TruncatedIdeal::with_degrevlex(ring, gens, caps)
}
