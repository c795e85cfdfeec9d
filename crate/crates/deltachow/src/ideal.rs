//! Truncated polynomial rings `K{x}_{<=h}` and ideals in them, with the
//! commutative-algebra operations everything else is built from: reduced
//! Gröbner bases, elimination, saturation, membership, radical membership,
//! ideal intersection, and dimension/degree via Hilbert series.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use crate::diff::Ranking;
use crate::error::{Error, Result};
use crate::groebner::{self, Caps};
use crate::hilbert;
use crate::order::{MonomialOrder, OrderKind};
use crate::poly::{Poly, Var};

const AUX_SATURATE: u32 = 0;
const AUX_RADICAL: u32 = 1;
const AUX_INTERSECT: u32 = 2;

/// The ring `K[x_b^(j) : b < n, j <= order_bound]` for named base
/// indeterminates; order bound 0 gives a plain polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetRing {
    base_names: Vec<String>,
    order_bound: u32,
}

impl JetRing {
    pub fn new(base_names: Vec<String>, order_bound: u32) -> Arc<JetRing> {
        Arc::new(JetRing {
            base_names,
            order_bound,
        })
    }

    /// Plain affine ring in the given variables.
    pub fn affine(base_names: Vec<String>) -> Arc<JetRing> {
        JetRing::new(base_names, 0)
    }

    pub fn n(&self) -> usize {
        self.base_names.len()
    }

    pub fn order_bound(&self) -> u32 {
        self.order_bound
    }

    pub fn base_names(&self) -> &[String] {
        &self.base_names
    }

    pub fn num_vars(&self) -> usize {
        self.n() * (self.order_bound as usize + 1)
    }

    /// All ring variables (unsorted enumeration by base, then order).
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::with_capacity(self.num_vars());
        for b in 0..self.n() as u32 {
            for j in 0..=self.order_bound {
                out.push(Var::new(b, j));
            }
        }
        out
    }

    pub fn contains(&self, v: Var) -> bool {
        (v.base() as usize) < self.n() && v.order() <= self.order_bound
    }

    /// Same bases, truncated at a lower order.
    pub fn truncated(&self, order_bound: u32) -> Arc<JetRing> {
        JetRing::new(self.base_names.clone(), order_bound)
    }

    /// Display name: base name with one apostrophe per derivative order.
    pub fn var_name(&self, v: Var) -> String {
        let base = self
            .base_names
            .get(v.base() as usize)
            .cloned()
            .unwrap_or_else(|| format!("#{}", v.base()));
        let mut name = base;
        for _ in 0..v.order() {
            name.push('\'');
        }
        name
    }

    /// Ring variables sorted by descending default orderly rank.
    pub fn vars_descending(&self) -> Vec<Var> {
        Ranking::orderly(self.n()).sort_descending(self.vars())
    }

    pub fn degrevlex(&self) -> MonomialOrder {
        MonomialOrder::degrevlex(self.vars_descending())
    }

    pub fn lex(&self) -> MonomialOrder {
        MonomialOrder::lex(self.vars_descending())
    }
}

type GbCache = OnceLock<Result<Arc<Vec<Poly>>>>;

/// An ideal in a truncated ring, with cached reduced Gröbner basis and
/// Hilbert data. Immutable after construction; cheap to clone and share.
#[derive(Debug, Clone)]
pub struct TruncatedIdeal {
    ring: Arc<JetRing>,
    generators: Vec<Poly>,
    order: MonomialOrder,
    caps: Caps,
    gb: GbCache,
    dimdeg: OnceLock<Result<(usize, u64)>>,
}

impl TruncatedIdeal {
    pub fn new(
        ring: Arc<JetRing>,
        generators: Vec<Poly>,
        order: MonomialOrder,
        caps: Caps,
    ) -> Result<TruncatedIdeal> {
        for g in &generators {
            for v in g.vars() {
                if !ring.contains(v) {
                    return Err(Error::InvalidInput(format!(
                        "generator uses {} which is outside the ring",
                        ring.var_name(v)
                    )));
                }
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(TruncatedIdeal {
            ring,
            generators,
            order,
            caps,
            gb: OnceLock::new(),
            dimdeg: OnceLock::new(),
        })
    }

    /// Construct with the ring's default degrevlex order.
    pub fn with_degrevlex(
        ring: Arc<JetRing>,
        generators: Vec<Poly>,
        caps: Caps,
    ) -> Result<TruncatedIdeal> {
        let order = ring.degrevlex();
        TruncatedIdeal::new(ring, generators, order, caps)
    }

    pub fn ring(&self) -> &Arc<JetRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// The reduced Gröbner basis under this ideal's order (cached).
    pub fn groebner_basis(&self) -> Result<Arc<Vec<Poly>>> {
        self.gb
            .get_or_init(|| {
                groebner::reduced_groebner(&self.generators, &self.order, self.caps).map(Arc::new)
            })
            .clone()
    }

    /// Reduced Gröbner basis under an arbitrary order (not cached).
    pub fn groebner_basis_with(&self, order: &MonomialOrder) -> Result<Vec<Poly>> {
        groebner::reduced_groebner(&self.generators, order, self.caps)
    }

    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.groebner_basis()?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    pub fn is_zero_ideal(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.is_empty())
    }

    /// Normal form modulo the reduced basis: zero iff `f` is a member.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        let gb = self.groebner_basis()?;
        groebner::normal_form(f, &gb, &self.order, self.caps)
    }

    pub fn member(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &TruncatedIdeal) -> Result<bool> {
        for g in &other.generators {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals_ideal(&self, other: &TruncatedIdeal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    fn rebuild(&self, generators: Vec<Poly>) -> TruncatedIdeal {
        TruncatedIdeal {
            ring: self.ring.clone(),
            generators,
            order: self.order.clone(),
            caps: self.caps,
            gb: OnceLock::new(),
            dimdeg: OnceLock::new(),
        }
    }

    /// Generators of `self` intersected with the subring omitting `drop`,
    /// via a block-elimination basis. The result lives in the same ring.
    pub fn eliminate(&self, drop: &BTreeSet<Var>) -> Result<TruncatedIdeal> {
        for &v in drop {
            if !self.ring.contains(v) {
                return Err(Error::InvalidInput(format!(
                    "cannot eliminate {}: not a ring variable",
                    self.ring.var_name(v)
                )));
            }
        }
        let all = self.ring.vars_descending();
        let front: Vec<Var> = all.iter().copied().filter(|v| drop.contains(v)).collect();
        let back: Vec<Var> = all.iter().copied().filter(|v| !drop.contains(v)).collect();
        let order = MonomialOrder::elimination(front, back);
        let gb = self.groebner_basis_with(&order)?;
        let kept = gb
            .into_iter()
            .filter(|g| !g.vars().any(|v| drop.contains(&v)))
            .collect();
        Ok(self.rebuild(kept))
    }

    /// Contract to the order-`<= h` subring, reinterpreting the result there.
    pub fn project_to_order(&self, h: u32) -> Result<TruncatedIdeal> {
        let drop: BTreeSet<Var> = self
            .ring
            .vars()
            .into_iter()
            .filter(|v| v.order() > h)
            .collect();
        let contracted = self.eliminate(&drop)?;
        let ring = self.ring.truncated(h);
        TruncatedIdeal::with_degrevlex(ring, contracted.generators, self.caps)
    }

    /// `self : f^infinity` by adjoining a fresh inverse variable for `f`
    /// and eliminating it.
    pub fn saturate(&self, f: &Poly) -> Result<TruncatedIdeal> {
        if f.is_zero() {
            return Err(Error::InvalidInput("cannot saturate by zero".into()));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let w = Var::aux(AUX_SATURATE);
        // 1 - w*f
        let witness = &Poly::one() - &Poly::var(w).mul(f);
        let mut gens = self.generators.clone();
        gens.push(witness);
        let order = MonomialOrder::elimination(vec![w], self.ring.vars_descending());
        let gb = groebner::reduced_groebner(&gens, &order, self.caps)?;
        let kept = gb
            .into_iter()
            .filter(|g| !g.contains_var(w))
            .collect();
        Ok(self.rebuild(kept))
    }

    /// Radical membership: `f` vanishes on the variety of `self`.
    pub fn radical_contains(&self, f: &Poly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let w = Var::aux(AUX_RADICAL);
        let witness = &Poly::one() - &Poly::var(w).mul(f);
        let mut gens = self.generators.clone();
        gens.push(witness);
        let order = MonomialOrder::elimination(vec![w], self.ring.vars_descending());
        let gb = groebner::reduced_groebner(&gens, &order, self.caps)?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    /// Two-way radical membership of generators: the varieties agree.
    pub fn same_radical(&self, other: &TruncatedIdeal) -> Result<bool> {
        for g in &other.generators {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !other.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal intersection via the tag-variable trick:
    /// `I ∩ J = (t·I + (1-t)·J) ∩ K[x]`.
    pub fn intersect(&self, other: &TruncatedIdeal) -> Result<TruncatedIdeal> {
        if self.ring != other.ring {
            return Err(Error::InvalidInput(
                "ideal intersection requires a common ring".into(),
            ));
        }
        if self.generators.is_empty() {
            return Ok(other.clone());
        }
        if other.generators.is_empty() {
            return Ok(self.clone());
        }
        let t = Var::aux(AUX_INTERSECT);
        let tp = Poly::var(t);
        let one_minus_t = &Poly::one() - &tp;
        let mut gens: Vec<Poly> = self.generators.iter().map(|g| tp.mul(g)).collect();
        gens.extend(other.generators.iter().map(|g| one_minus_t.mul(g)));
        let order = MonomialOrder::elimination(vec![t], self.ring.vars_descending());
        let gb = groebner::reduced_groebner(&gens, &order, self.caps)?;
        let kept = gb
            .into_iter()
            .filter(|g| !g.contains_var(t))
            .collect();
        Ok(self.rebuild(kept))
    }

    /// Krull dimension of the quotient and degree of the projective closure,
    /// read off the Hilbert series of the homogenized ideal (cached).
    pub fn dim_and_degree(&self) -> Result<(usize, u64)> {
        self.dimdeg
            .get_or_init(|| {
                // The Hilbert shortcut needs a degree-compatible order.
                let (gb, order): (Vec<Poly>, MonomialOrder) =
                    if self.order.kind() == OrderKind::DegRevLex {
                        (self.groebner_basis()?.as_ref().clone(), self.order.clone())
                    } else {
                        let order = self.ring.degrevlex();
                        (self.groebner_basis_with(&order)?, order)
                    };
                if gb.len() == 1 && gb[0].is_constant() {
                    return Err(Error::EmptyVariety);
                }
                let leading: Vec<Vec<u32>> = gb
                    .iter()
                    .map(|g| {
                        let lm = order.leading_monomial(g).expect("nonzero basis element");
                        order.dense(&lm)
                    })
                    .collect();
                Ok(hilbert::dimension_and_degree(&leading, self.ring.num_vars()))
            })
            .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Poly};

    fn ring1() -> Arc<JetRing> {
        JetRing::new(vec!["x".into()], 2)
    }

    fn x() -> Var {
        Var::new(0, 0)
    }
    fn xp() -> Var {
        Var::new(0, 1)
    }
    fn xpp() -> Var {
        Var::new(0, 2)
    }

    fn parabola() -> Poly {
        &Poly::var(xp()).pow(2) - &Poly::var(x()).scale(&rat(4))
    }

    #[test]
    fn saturation_splits_off_singular_branch() {
        // (x'^2 - 4x, 2x'(x'' - 2)) : x'^inf = (x'^2 - 4x, x'' - 2)
        let g2 = Poly::var(xp())
            .scale(&rat(2))
            .mul(&(&Poly::var(xpp()) - &Poly::from_int(2)));
        let ideal = TruncatedIdeal::with_degrevlex(
            ring1(),
            vec![parabola(), g2.clone()],
            Caps::default(),
        )
        .unwrap();
        let sat = ideal.saturate(&Poly::var(xp())).unwrap();
        let expected = TruncatedIdeal::with_degrevlex(
            ring1(),
            vec![parabola(), &Poly::var(xpp()) - &Poly::from_int(2)],
            Caps::default(),
        )
        .unwrap();
        assert!(sat.equals_ideal(&expected).unwrap());
        // consistency: the dropped generator is a multiple of the saturation
        assert!(sat.member(&g2).unwrap());
    }

    #[test]
    fn saturate_nilpotent_gives_unit() {
        let ring = JetRing::new(vec!["x".into()], 0);
        let ideal =
            TruncatedIdeal::with_degrevlex(ring, vec![Poly::var(x()).pow(2)], Caps::default())
                .unwrap();
        let sat = ideal.saturate(&Poly::var(x())).unwrap();
        assert!(sat.is_unit().unwrap());
    }

    #[test]
    fn saturate_by_constant_is_identity() {
        let ideal =
            TruncatedIdeal::with_degrevlex(ring1(), vec![parabola()], Caps::default()).unwrap();
        let sat = ideal.saturate(&Poly::from_int(7)).unwrap();
        assert!(sat.equals_ideal(&ideal).unwrap());
    }

    #[test]
    fn membership_examples() {
        let g2 = Poly::var(xp())
            .scale(&rat(2))
            .mul(&(&Poly::var(xpp()) - &Poly::from_int(2)));
        let ideal =
            TruncatedIdeal::with_degrevlex(ring1(), vec![parabola(), g2], Caps::default()).unwrap();
        assert!(ideal.member(&Poly::zero()).unwrap());
        // x'' - 2 only enters after saturation by x'
        let f = &Poly::var(xpp()) - &Poly::from_int(2);
        assert!(!ideal.member(&f).unwrap());
        // oracle: (x, x', x'') = (0, 0, 5) kills both generators but not f
        use std::collections::BTreeMap;
        let mut pt = BTreeMap::new();
        pt.insert(x(), rat(0));
        pt.insert(xp(), rat(0));
        pt.insert(xpp(), rat(5));
        for g in ideal.generators() {
            assert_eq!(g.evaluate(&pt), rat(0));
        }
        assert_ne!(f.evaluate(&pt), rat(0));
    }

    #[test]
    fn eliminate_linear_substitution() {
        // (y, u00 + u01*y) with y eliminated leaves (u00)
        let ring = JetRing::affine(vec!["y".into(), "u00".into(), "u01".into()]);
        let y = Var::new(0, 0);
        let u00 = Var::new(1, 0);
        let u01 = Var::new(2, 0);
        let ideal = TruncatedIdeal::with_degrevlex(
            ring,
            vec![
                Poly::var(y),
                &Poly::var(u00) + &Poly::var(u01).mul(&Poly::var(y)),
            ],
            Caps::default(),
        )
        .unwrap();
        let drop: BTreeSet<Var> = [y].into();
        let eliminated = ideal.eliminate(&drop).unwrap();
        assert_eq!(eliminated.generators(), &[Poly::var(u00)]);
        // every survivor is a member of the original ideal
        for g in eliminated.generators() {
            assert!(ideal.member(g).unwrap());
        }
    }

    #[test]
    fn eliminate_differential_hyperplane_sections() {
        // (y^2 y' + 1, u00 + u01 y, u00' + u01' y + u01 y') with y, y' dropped
        // leaves the principal ideal of u00^2 u01 u00' - u00^3 u01' - u01^4
        let ring = JetRing::new(vec!["y".into(), "u00".into(), "u01".into()], 1);
        let y = Var::new(0, 0);
        let yp = Var::new(0, 1);
        let u00 = Var::new(1, 0);
        let u01 = Var::new(2, 0);
        let line = &Poly::var(u00) + &Poly::var(u01).mul(&Poly::var(y));
        let cubic_gens = vec![
            &Poly::var(y).pow(2).mul(&Poly::var(yp)) + &Poly::one(),
            line.clone(),
            line.derivative(),
        ];
        let ideal =
            TruncatedIdeal::with_degrevlex(ring.clone(), cubic_gens, Caps::default()).unwrap();
        let drop: BTreeSet<Var> = [y, yp].into();
        let eliminated = ideal.eliminate(&drop).unwrap();
        let expected = &(&Poly::var(u00)
            .pow(2)
            .mul(&Poly::var(u01))
            .mul(&Poly::var(u00.derived(1)))
            - &Poly::var(u00).pow(3).mul(&Poly::var(u01.derived(1))))
            - &Poly::var(u01).pow(4);
        assert_eq!(eliminated.generators().len(), 1);
        assert!(eliminated.equals_ideal(
            &TruncatedIdeal::with_degrevlex(ring.clone(), vec![expected], Caps::default())
                .unwrap()
        )
        .unwrap());

        // hand-substitution oracle for the constant locus: y = -u00/u01, y' = 0
        let wronskian_gens = vec![Poly::var(yp), line.clone(), line.derivative()];
        let ideal =
            TruncatedIdeal::with_degrevlex(ring.clone(), wronskian_gens, Caps::default()).unwrap();
        let eliminated = ideal.eliminate(&drop).unwrap();
        let oracle = &Poly::var(u01).mul(&Poly::var(u00.derived(1)))
            - &Poly::var(u00).mul(&Poly::var(u01.derived(1)));
        assert_eq!(eliminated.generators().len(), 1);
        assert!(eliminated
            .equals_ideal(
                &TruncatedIdeal::with_degrevlex(ring, vec![oracle], Caps::default()).unwrap()
            )
            .unwrap());
    }

    #[test]
    fn twisted_cubic_dimension_and_degree() {
        // (y2 - y1^2, y3 - y1^3): affine curve whose projective closure has degree 3
        let ring = JetRing::affine(vec!["y1".into(), "y2".into(), "y3".into()]);
        let y1 = Var::new(0, 0);
        let y2 = Var::new(1, 0);
        let y3 = Var::new(2, 0);
        let gens = vec![
            &Poly::var(y2) - &Poly::var(y1).pow(2),
            &Poly::var(y3) - &Poly::var(y1).pow(3),
        ];
        let ideal = TruncatedIdeal::with_degrevlex(ring, gens, Caps::default()).unwrap();
        assert_eq!(ideal.dim_and_degree().unwrap(), (1, 3));
    }

    #[test]
    fn dim_and_degree_of_hypersurface() {
        // y^2 y' + 1 in K[y, y']: dimension 1, degree 3
        let ring = JetRing::new(vec!["y".into()], 1);
        let f = &Poly::var(Var::new(0, 0))
            .pow(2)
            .mul(&Poly::var(Var::new(0, 1)))
            + &Poly::one();
        let ideal = TruncatedIdeal::with_degrevlex(ring, vec![f], Caps::default()).unwrap();
        assert_eq!(ideal.dim_and_degree().unwrap(), (1, 3));
    }

    #[test]
    fn dim_and_degree_of_linear_jet_ideal() {
        // (x1', x1'', x2'') in the order-<=2 ring over two bases: (3, 1)
        let ring = JetRing::new(vec!["x1".into(), "x2".into()], 2);
        let gens = vec![
            Poly::var(Var::new(0, 1)),
            Poly::var(Var::new(0, 2)),
            Poly::var(Var::new(1, 2)),
        ];
        let ideal = TruncatedIdeal::with_degrevlex(ring, gens, Caps::default()).unwrap();
        assert_eq!(ideal.dim_and_degree().unwrap(), (3, 1));
    }

    #[test]
    fn unit_ideal_signals_empty_variety() {
        let ring = JetRing::new(vec!["x".into()], 0);
        let ideal =
            TruncatedIdeal::with_degrevlex(ring, vec![Poly::one()], Caps::default()).unwrap();
        assert_eq!(ideal.dim_and_degree(), Err(Error::EmptyVariety));
    }

    #[test]
    fn intersection_via_tag_variable() {
        // (x) ∩ (x - 1) = (x^2 - x) in K[x]
        let ring = JetRing::new(vec!["x".into()], 0);
        let a = TruncatedIdeal::with_degrevlex(ring.clone(), vec![Poly::var(x())], Caps::default())
            .unwrap();
        let b = TruncatedIdeal::with_degrevlex(
            ring,
            vec![&Poly::var(x()) - &Poly::one()],
            Caps::default(),
        )
        .unwrap();
        let both = a.intersect(&b).unwrap();
        let expected = &Poly::var(x()).pow(2) - &Poly::var(x());
        assert_eq!(both.generators(), &[expected]);
    }

    #[test]
    fn radical_membership() {
        let ring = JetRing::new(vec!["x".into()], 0);
        let ideal =
            TruncatedIdeal::with_degrevlex(ring, vec![Poly::var(x()).pow(3)], Caps::default())
                .unwrap();
        assert!(ideal.radical_contains(&Poly::var(x())).unwrap());
        assert!(!ideal.radical_contains(&(&Poly::var(x()) - &Poly::one())).unwrap());
        assert!(!ideal.member(&Poly::var(x())).unwrap());
    }

    #[test]
    fn project_to_lower_order() {
        // (x'^2 - 4x, x'' - 2) contracted to order <= 1 is (x'^2 - 4x)
        let ideal = TruncatedIdeal::with_degrevlex(
            ring1(),
            vec![parabola(), &Poly::var(xpp()) - &Poly::from_int(2)],
            Caps::default(),
        )
        .unwrap();
        let proj = ideal.project_to_order(1).unwrap();
        assert_eq!(proj.ring().order_bound(), 1);
        assert_eq!(proj.generators(), &[parabola()]);
        assert_eq!(proj.dim_and_degree().unwrap(), (1, 2));
    }
}
