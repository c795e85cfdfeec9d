//! Algebraic and differential Chow forms, the index invariants (d, h, g, m),
//! Chow coordinates, degree bounds, and the per-cycle map from differential
//! cycles to algebraic cycles of their prolongation images.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::chain::{asat, AscendingChain};
use crate::error::{Error, Result};
use crate::groebner::Caps;
use crate::ideal::{JetRing, TruncatedIdeal};
use crate::order::MonomialOrder;
use crate::poly::{Monomial, Poly, Rat, Var};
use crate::prolong::{b_h, kolchin};

/// The quadruple (d, h, g, m): differential dimension, order, leading
/// differential degree, differential degree. Not every index is realizable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Index {
    pub d: usize,
    pub h: u32,
    pub g: u32,
    pub m: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChowKind {
    Algebraic,
    Differential { h: u32 },
}

/// A Chow form: a polynomial in d+1 blocks of hyperplane-coefficient
/// variables, homogeneous of one common degree in each block. Block `i`,
/// coordinate `k` is the base variable `i*(n+1)+k`; the differential kind
/// carries derivatives of those up to order `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChowForm {
    poly: Poly,
    /// Number of ambient affine coordinates (block size minus one).
    n: usize,
    /// Cycle dimension: number of blocks minus one.
    d: usize,
    kind: ChowKind,
}

impl ChowForm {
    fn new(poly: Poly, n: usize, d: usize, kind: ChowKind) -> ChowForm {
        let mut form = ChowForm { poly, n, d, kind };
        form.poly = form.canonical_order().normalize(&form.poly);
        form
    }

    /// Wrap an externally supplied polynomial as a Chow form with the given
    /// block layout (d+1 blocks of n+1 coordinates, base id `i*(n+1)+k`),
    /// normalizing it canonically.
    pub fn from_parts(poly: Poly, n: usize, d: usize, kind: ChowKind) -> ChowForm {
        ChowForm::new(poly, n, d, kind)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn kind(&self) -> ChowKind {
        self.kind
    }

    pub fn order_bound(&self) -> u32 {
        match self.kind {
            ChowKind::Algebraic => 0,
            ChowKind::Differential { h } => h,
        }
    }

    /// The coefficient ring, with block-coordinate names (`v` algebraic,
    /// `u` differential).
    pub fn ring(&self) -> Arc<JetRing> {
        let letter = match self.kind {
            ChowKind::Algebraic => 'v',
            ChowKind::Differential { .. } => 'u',
        };
        let sep = if self.d + 1 > 10 { "_" } else { "" };
        let mut names = Vec::new();
        for i in 0..=self.d {
            for k in 0..=self.n {
                names.push(format!("{letter}{i}{sep}{k}"));
            }
        }
        JetRing::new(names, self.order_bound())
    }

    /// Base variable id of block-`i` coordinate `k`.
    pub fn block_var(&self, i: usize, k: usize) -> Var {
        Var::new((i * (self.n + 1) + k) as u32, 0)
    }

    fn block_of(&self, v: Var) -> usize {
        v.base() as usize / (self.n + 1)
    }

    /// Canonical order: graded-lex with higher derivative order first, then
    /// block and coordinate ascending.
    pub fn canonical_order(&self) -> MonomialOrder {
        let mut vars = self.ring().vars();
        vars.sort_by_key(|v| (std::cmp::Reverse(v.order()), v.base()));
        MonomialOrder::deglex(vars)
    }

    /// Total degree of a monomial inside block `i`.
    fn block_degree(&self, m: &Monomial, i: usize) -> u32 {
        m.exponents()
            .iter()
            .filter(|&&(v, _)| self.block_of(v) == i)
            .map(|&(_, e)| e)
            .sum()
    }

    /// The common per-block degree `m`; errors if any block or monomial breaks
    /// the equi-degree invariant.
    pub fn per_block_degree(&self) -> Result<u32> {
        let mut common: Option<u32> = None;
        for (mono, _) in self.poly.terms() {
            for i in 0..=self.d {
                let deg = self.block_degree(mono, i);
                match common {
                    None => common = Some(deg),
                    Some(c) if c != deg => {
                        return Err(Error::BlocksNotEquiDegree(format!(
                            "block {i} has a monomial of degree {deg}, expected {c}"
                        )))
                    }
                    _ => {}
                }
            }
        }
        common.ok_or_else(|| Error::InvalidInput("zero Chow form".into()))
    }

    /// Order of the form in the block-`i` constant coordinate `u_{i0}`.
    pub fn order_in_block(&self, i: usize) -> u32 {
        let base = self.block_var(i, 0).base();
        self.poly
            .vars()
            .filter(|v| v.base() == base)
            .map(Var::order)
            .max()
            .unwrap_or(0)
    }

    /// Index (d, h, g, m) of a differential Chow form: h from the derivatives
    /// of u00 present, g its degree in `u00^(h)`, m the per-block degree.
    pub fn index(&self) -> Result<Index> {
        let ChowKind::Differential { .. } = self.kind else {
            return Err(Error::InvalidInput(
                "index is defined for differential Chow forms".into(),
            ));
        };
        let m = self.per_block_degree()?;
        let h = self.order_in_block(0);
        let g = self.poly.degree_in(Var::new(0, h));
        Ok(Index {
            d: self.d,
            h,
            g,
            m,
        })
    }

    /// Per-block degree of an algebraic form (the cycle degree).
    pub fn degree(&self) -> Result<u32> {
        self.per_block_degree()
    }

    /// Sparse Chow coordinates: (monomial, coefficient) pairs listed against
    /// the canonical enumeration (descending canonical order), scaled so the
    /// first entry is 1.
    pub fn coordinates(&self) -> Vec<(Monomial, Rat)> {
        let order = self.canonical_order();
        let mut entries: Vec<(Monomial, Rat)> = self
            .poly
            .terms()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        entries.sort_by(|a, b| order.cmp(&b.0, &a.0));
        if let Some(first) = entries.first().map(|(_, c)| c.clone()) {
            for (_, c) in entries.iter_mut() {
                *c = &*c / &first;
            }
        }
        entries
    }

    /// Product of Chow forms (for cycles): multiplies the polynomials and
    /// renormalizes; block layouts must agree.
    fn product(forms: &[(u32, ChowForm)]) -> Result<ChowForm> {
        let (_, first) = &forms[0];
        let mut poly = Poly::one();
        for (mult, f) in forms {
            if f.n != first.n || f.d != first.d || f.kind != first.kind {
                return Err(Error::NotOrderUnmixed(
                    "component Chow forms have different block layouts".into(),
                ));
            }
            poly = poly.mul(&f.poly.pow(*mult));
        }
        Ok(ChowForm::new(poly, first.n, first.d, first.kind))
    }
}

/// Algebraic Chow form of the irreducible affine variety of `ideal`
/// (dimension `d`): adjoin d+1 generic affine forms `L_i = v_i0 + sum v_ik y_k`
/// and eliminate the point coordinates. The ideal must be in a plain affine
/// ring (order bound 0); jet ideals are flattened by the caller.
pub fn chow_form_algebraic(ideal: &TruncatedIdeal, d: usize, caps: Caps) -> Result<ChowForm> {
    if ideal.ring().order_bound() != 0 {
        return Err(Error::InvalidInput(
            "algebraic Chow forms need an affine ring; flatten the jet ideal first".into(),
        ));
    }
    let (dim, _) = ideal.dim_and_degree()?;
    if dim != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: dim,
        });
    }
    let n = ideal.ring().n();
    let mut names = ideal.ring().base_names().to_vec();
    let sep = if d + 1 > 10 { "_" } else { "" };
    for i in 0..=d {
        for k in 0..=n {
            names.push(format!("v{i}{sep}{k}"));
        }
    }
    let ring = JetRing::affine(names);
    let v = |i: usize, k: usize| Var::new((n + i * (n + 1) + k) as u32, 0);

    let mut gens = ideal.generators().to_vec();
    for i in 0..=d {
        let mut form = Poly::var(v(i, 0));
        for k in 1..=n {
            form.add_assign(&Poly::var(v(i, k)).mul(&Poly::var(Var::new(k as u32 - 1, 0))));
        }
        gens.push(form);
    }

    let extended = TruncatedIdeal::with_degrevlex(ring, gens, caps)?;
    let drop: BTreeSet<Var> = (0..n as u32).map(|b| Var::new(b, 0)).collect();
    let eliminated = extended.eliminate(&drop)?;
    let gens = eliminated.generators();
    if gens.len() != 1 {
        return Err(Error::NotPrincipal {
            generators: gens.len(),
        });
    }
    // shift the v-blocks down to a standalone coefficient universe
    let shifted = gens[0].map_vars(&|var| Var::new(var.base() - n as u32, 0));
    Ok(ChowForm::new(shifted, n, d, ChowKind::Algebraic))
}

/// Differential Chow form of the irreducible differential variety
/// `sat(chain)` with Kolchin data (d, h): eliminate the point symbols from
/// `(I(B_h), L_0^[h], ..., L_d^[h])` where `L_i^(j)` is the j-th Leibniz
/// derivative of `u_i0 + sum u_ik x_k`.
pub fn chow_form_differential(
    chain: &AscendingChain,
    d: usize,
    h: u32,
    caps: Caps,
) -> Result<ChowForm> {
    let data = kolchin(chain)?;
    if data.d != d || data.h != h as u64 {
        return Err(Error::DimensionMismatch {
            expected: d * 1000 + h as usize,
            found: data.d * 1000 + data.h as usize,
        });
    }
    let n = chain.n();
    let base = b_h(chain, h, caps)?;

    let mut names = base.ring().base_names().to_vec();
    let sep = if d + 1 > 10 { "_" } else { "" };
    for i in 0..=d {
        for k in 0..=n {
            names.push(format!("u{i}{sep}{k}"));
        }
    }
    let ring = JetRing::new(names, h);
    let u = |i: usize, k: usize| Var::new((n + i * (n + 1) + k) as u32, 0);

    let mut gens = base.generators().to_vec();
    for i in 0..=d {
        let mut form = Poly::var(u(i, 0));
        for k in 1..=n {
            form.add_assign(&Poly::var(u(i, k)).mul(&Poly::var(Var::new(k as u32 - 1, 0))));
        }
        for j in 0..=h {
            gens.push(form.derivative_n(j));
        }
    }

    let extended = TruncatedIdeal::with_degrevlex(ring, gens, caps)?;
    let drop: BTreeSet<Var> = (0..n as u32)
        .flat_map(|b| (0..=h).map(move |j| Var::new(b, j)))
        .collect();
    let eliminated = extended.eliminate(&drop)?;
    let gens = eliminated.generators();
    if gens.len() != 1 {
        return Err(Error::NotPrincipal {
            generators: gens.len(),
        });
    }
    let shifted = gens[0].map_vars(&|var| Var::new(var.base() - n as u32, var.order()));
    Ok(ChowForm::new(shifted, n, d, ChowKind::Differential { h }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleKind {
    Algebraic,
    Differential,
}

/// An effective cycle: irreducible components with positive multiplicities.
#[derive(Debug, Clone)]
pub struct Cycle {
    pub components: Vec<(u32, AscendingChain)>,
    pub kind: CycleKind,
}

impl Cycle {
    pub fn new(components: Vec<(u32, AscendingChain)>, kind: CycleKind) -> Result<Cycle> {
        if components.is_empty() {
            return Err(Error::InvalidInput("cycle needs at least one component".into()));
        }
        if components.iter().any(|&(s, _)| s == 0) {
            return Err(Error::InvalidInput("multiplicities must be positive".into()));
        }
        let n = components[0].1.n();
        if components.iter().any(|(_, c)| c.n() != n) {
            return Err(Error::NotOrderUnmixed(
                "components live in different ambient spaces".into(),
            ));
        }
        Ok(Cycle { components, kind })
    }

    pub fn n(&self) -> usize {
        self.components[0].1.n()
    }

    /// Common Kolchin data of a differential cycle; errors when mixed.
    pub fn unmixed_data(&self) -> Result<(usize, u32)> {
        let mut common: Option<(usize, u64)> = None;
        for (_, chain) in &self.components {
            let k = kolchin(chain)?;
            match common {
                None => common = Some((k.d, k.h)),
                Some((d, h)) if d != k.d || h != k.h => {
                    return Err(Error::NotOrderUnmixed(format!(
                        "component of dimension {} and order {} mixed with ({d}, {h})",
                        k.d, k.h
                    )))
                }
                _ => {}
            }
        }
        let (d, h) = common.expect("nonempty cycle");
        Ok((d, h as u32))
    }
}

/// Chow form of a cycle: the product of component forms raised to their
/// multiplicities. Differential cycles must be order-unmixed; algebraic
/// components must share one dimension.
pub fn cycle_chow_form(cycle: &Cycle, caps: Caps) -> Result<ChowForm> {
    cycle_chow_form_jobs(cycle, caps, 1)
}

pub fn cycle_chow_form_jobs(cycle: &Cycle, caps: Caps, jobs: usize) -> Result<ChowForm> {
    let forms: Vec<(u32, ChowForm)> = match cycle.kind {
        CycleKind::Differential => {
            let (d, h) = cycle.unmixed_data()?;
            crate::util::par_map(&cycle.components, jobs, |(mult, chain)| {
                Ok((*mult, chow_form_differential(chain, d, h, caps)?))
            })?
        }
        CycleKind::Algebraic => {
            let ideals: Vec<(u32, TruncatedIdeal)> = cycle
                .components
                .iter()
                .map(|(mult, chain)| Ok((*mult, asat(chain, caps)?)))
                .collect::<Result<_>>()?;
            let mut dim_common: Option<usize> = None;
            for (_, ideal) in &ideals {
                let (dim, _) = ideal.dim_and_degree()?;
                match dim_common {
                    None => dim_common = Some(dim),
                    Some(d0) if d0 != dim => {
                        return Err(Error::NotOrderUnmixed(format!(
                            "algebraic components of dimensions {d0} and {dim}"
                        )))
                    }
                    _ => {}
                }
            }
            let d = dim_common.expect("nonempty cycle");
            crate::util::par_map(&ideals, jobs, |(mult, ideal)| {
                let flat = flatten_to_affine(ideal)?;
                Ok((*mult, chow_form_algebraic(&flat, d, caps)?))
            })?
        }
    };
    ChowForm::product(&forms)
}

/// Reindex a jet-ring ideal as an ideal of the plain affine space
/// `A^(n(h+1))`, coordinates listed level by level (all bases at order 0,
/// then order 1, ...), matching the jet-point convention.
pub fn flatten_to_affine(ideal: &TruncatedIdeal) -> Result<TruncatedIdeal> {
    let ring = ideal.ring();
    let n = ring.n() as u32;
    let h = ring.order_bound();
    if h == 0 {
        return Ok(ideal.clone());
    }
    let names: Vec<String> = (0..=h)
        .flat_map(|j| (0..n).map(move |b| ring.var_name(Var::new(b, j))))
        .collect();
    let flat_ring = JetRing::affine(names);
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.map_vars(&|v| Var::new(v.order() * n + v.base(), 0)))
        .collect();
    TruncatedIdeal::with_degrevlex(flat_ring, gens, ideal.caps())
}

/// Degree bound data for `B_h(V)` given ambient `n` and index entries:
/// `m/(h+1) <= deg(B_h(V)) <= ((d+1) m)^(n h + n + 1)`.
pub fn degree_bound(n: usize, d: usize, h: u32, m: u32) -> (BigRational, BigInt) {
    let lower = BigRational::new(BigInt::from(m), BigInt::from(h + 1));
    let base = BigInt::from((d as u64 + 1) * m as u64);
    let exponent = n as u32 * h + n as u32 + 1;
    (lower, base.pow(exponent))
}

/// The map behind the cycle correspondence: a differential cycle of index
/// (d, h, *, *) goes to the algebraic cycle `sum s_i B_h(V_i)` in the
/// flattened jet space, of cycle dimension `d(h+1) + h`.
pub fn cycle_to_algebraic_chow(cycle: &Cycle, h: u32, caps: Caps) -> Result<ChowForm> {
    cycle_to_algebraic_chow_jobs(cycle, h, caps, 1)
}

pub fn cycle_to_algebraic_chow_jobs(
    cycle: &Cycle,
    h: u32,
    caps: Caps,
    jobs: usize,
) -> Result<ChowForm> {
    if cycle.kind != CycleKind::Differential {
        return Err(Error::InvalidInput(
            "the correspondence map takes a differential cycle".into(),
        ));
    }
    let (d, order) = cycle.unmixed_data()?;
    if order != h {
        return Err(Error::NotOrderUnmixed(format!(
            "cycle has order {order}, expected {h}"
        )));
    }
    let n = cycle.n();
    let jet_dim = d * (h as usize + 1) + h as usize;

    let forms = crate::util::par_map(&cycle.components, jobs, |(mult, chain)| {
        let image = b_h(chain, h, caps)?;
        let (dim, deg) = image.dim_and_degree()?;
        if dim != jet_dim {
            return Err(Error::DimensionMismatch {
                expected: jet_dim,
                found: dim,
            });
        }
        // internal consistency alarm against the effective bound
        let index = chow_form_differential(chain, d, h, caps)?.index()?;
        let (_, upper) = degree_bound(n, d, h, index.m);
        if BigInt::from(deg) > upper {
            return Err(Error::DegreeBoundExceeded {
                degree: deg,
                bound: upper.to_string(),
            });
        }
        let flat = flatten_to_affine(&image)?;
        Ok((*mult, chow_form_algebraic(&flat, jet_dim, caps)?))
    })?;
    ChowForm::product(&forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::{DiffPoly, Ranking};
    use crate::poly::rat;
    use num_traits::{One, Zero};

    fn affine_point_ideal(coords: &[(i64, i64)]) -> TruncatedIdeal {
        // ideal of a rational point given by (numerator, denominator) pairs
        let n = coords.len();
        let names = (1..=n).map(|i| format!("y{i}")).collect();
        let ring = JetRing::affine(names);
        let gens = coords
            .iter()
            .enumerate()
            .map(|(i, &(num, den))| {
                &Poly::var(Var::new(i as u32, 0)).scale(&rat(den)) - &Poly::constant(rat(num))
            })
            .collect();
        TruncatedIdeal::with_degrevlex(ring, gens, Caps::default()).unwrap()
    }

    #[test]
    fn chow_form_of_a_point() {
        // point (1,2) in A^2: v00 + v01 + 2 v02
        let form = chow_form_algebraic(&affine_point_ideal(&[(1, 1), (2, 1)]), 0, Caps::default())
            .unwrap();
        let v = |k: usize| form.block_var(0, k);
        let expected = &(&Poly::var(v(0)) + &Poly::var(v(1))) + &Poly::var(v(2)).scale(&rat(2));
        assert_eq!(form.poly(), &expected);
        assert_eq!(form.degree().unwrap(), 1);
        // coordinates (1, 1, 2) against (v00, v01, v02)
        let coords = form.coordinates();
        assert_eq!(
            coords,
            vec![
                (Monomial::var(v(0)), rat(1)),
                (Monomial::var(v(1)), rat(1)),
                (Monomial::var(v(2)), rat(2)),
            ]
        );
    }

    #[test]
    fn chow_form_of_the_origin() {
        let form = chow_form_algebraic(&affine_point_ideal(&[(0, 1), (0, 1)]), 0, Caps::default())
            .unwrap();
        assert_eq!(form.poly(), &Poly::var(form.block_var(0, 0)));
    }

    #[test]
    fn chow_form_of_a_line() {
        // line y1 - y2 = 0 in A^2 (d = 1): v00 v11 + v00 v12 - v01 v10 - v02 v10
        let ring = JetRing::affine(vec!["y1".into(), "y2".into()]);
        let f = &Poly::var(Var::new(0, 0)) - &Poly::var(Var::new(1, 0));
        let ideal = TruncatedIdeal::with_degrevlex(ring, vec![f], Caps::default()).unwrap();
        let form = chow_form_algebraic(&ideal, 1, Caps::default()).unwrap();
        let v = |i: usize, k: usize| Poly::var(form.block_var(i, k));
        let expected = &(&v(0, 0).mul(&v(1, 1)) + &v(0, 0).mul(&v(1, 2)))
            - &(&v(0, 1).mul(&v(1, 0)) + &v(0, 2).mul(&v(1, 0)));
        assert_eq!(form.poly(), &form.canonical_order().normalize(&expected));
        assert_eq!(form.degree().unwrap(), 1);
    }

    #[test]
    fn chow_form_of_a_conic() {
        // the circle y1^2 + y2^2 = 1: Chow form is the homogenized equation
        // evaluated at the meet v0 x v1 of the two generic lines
        let ring = JetRing::affine(vec!["y1".into(), "y2".into()]);
        let f = &(&Poly::var(Var::new(0, 0)).pow(2) + &Poly::var(Var::new(1, 0)).pow(2))
            - &Poly::one();
        let ideal = TruncatedIdeal::with_degrevlex(ring, vec![f], Caps::default()).unwrap();
        let form = chow_form_algebraic(&ideal, 1, Caps::default()).unwrap();
        let v = |i: usize, k: usize| Poly::var(form.block_var(i, k));
        let cross = |a: usize, b: usize| &v(0, a).mul(&v(1, b)) - &v(0, b).mul(&v(1, a));
        let (p0, p1, p2) = (cross(1, 2), cross(2, 0), cross(0, 1));
        let oracle = &(&p1.pow(2) + &p2.pow(2)) - &p0.pow(2);
        assert_eq!(form.poly(), &form.canonical_order().normalize(&oracle));
        assert_eq!(form.degree().unwrap(), 2);
    }

    #[test]
    fn chow_form_dimension_mismatch() {
        let err = chow_form_algebraic(&affine_point_ideal(&[(1, 1), (2, 1)]), 1, Caps::default())
            .unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 1,
                found: 0
            }
        );
    }

    fn single_chain(n: usize, f: Poly) -> AscendingChain {
        AscendingChain::differential(
            n,
            vec![DiffPoly::new(f, Ranking::orderly(n))],
            Ranking::orderly(n),
        )
        .unwrap()
    }

    #[test]
    fn differential_chow_form_of_cubic() {
        // <y^2 y' + 1>: F = u00^2 u01 u00' - u00^3 u01' - u01^4, index (0,1,1,4)
        let f = &Poly::var(Var::new(0, 0)).pow(2).mul(&Poly::var(Var::new(0, 1))) + &Poly::one();
        let form = chow_form_differential(&single_chain(1, f), 0, 1, Caps::default()).unwrap();
        let u00 = form.block_var(0, 0);
        let u01 = form.block_var(0, 1);
        let expected = &(&Poly::var(u00)
            .pow(2)
            .mul(&Poly::var(u01))
            .mul(&Poly::var(u00.derived(1)))
            - &Poly::var(u00).pow(3).mul(&Poly::var(u01.derived(1))))
            - &Poly::var(u01).pow(4);
        assert_eq!(form.poly(), &expected);
        assert_eq!(
            form.index().unwrap(),
            Index {
                d: 0,
                h: 1,
                g: 1,
                m: 4
            }
        );
        // coordinates: (1, -1, -1) at the three canonical monomials
        let coords = form.coordinates();
        assert_eq!(coords.len(), 3);
        assert_eq!(coords[0].1, rat(1));
        assert_eq!(coords[1].1, rat(-1));
        assert_eq!(coords[2].1, rat(-1));
    }

    #[test]
    fn differential_chow_form_of_constant_locus() {
        // <y'>: the Wronskian u01 u00' - u00 u01', index (0,1,1,2)
        let form = chow_form_differential(
            &single_chain(1, Poly::var(Var::new(0, 1))),
            0,
            1,
            Caps::default(),
        )
        .unwrap();
        let u00 = form.block_var(0, 0);
        let u01 = form.block_var(0, 1);
        let expected = &Poly::var(u01).mul(&Poly::var(u00.derived(1)))
            - &Poly::var(u00).mul(&Poly::var(u01.derived(1)));
        assert_eq!(form.poly(), &expected);
        assert_eq!(
            form.index().unwrap(),
            Index {
                d: 0,
                h: 1,
                g: 1,
                m: 2
            }
        );
    }

    #[test]
    fn differential_chow_form_of_zero_point() {
        // <y> at (d, h) = (0, 0): F = u00, index (0, 0, 1, 1)
        let form = chow_form_differential(
            &single_chain(1, Poly::var(Var::new(0, 0))),
            0,
            0,
            Caps::default(),
        )
        .unwrap();
        assert_eq!(form.poly(), &Poly::var(form.block_var(0, 0)));
        assert_eq!(
            form.index().unwrap(),
            Index {
                d: 0,
                h: 0,
                g: 1,
                m: 1
            }
        );
    }

    #[test]
    fn order_matches_in_every_block() {
        // d = 1 in A^2: <x1'> has Kolchin data (1, 1); every block sees order 1
        let form = chow_form_differential(
            &single_chain(2, Poly::var(Var::new(0, 1))),
            1,
            1,
            Caps::default(),
        )
        .unwrap();
        let index = form.index().unwrap();
        assert_eq!(index.h, 1);
        for i in 0..=form.d() {
            assert_eq!(form.order_in_block(i), index.h);
        }
        // 4x4 determinant oracle: rows L_0, L_0', L_1, L_1' in (1, x1, x2, x2')
        let u = |i: usize, k: usize, j: u32| Poly::var(form.block_var(i, k).derived(j));
        let row = |i: usize| {
            [
                [u(i, 0, 0), u(i, 1, 0), u(i, 2, 0), Poly::zero()],
                [u(i, 0, 1), u(i, 1, 1), u(i, 2, 1), u(i, 2, 0)],
            ]
        };
        let m: Vec<[Poly; 4]> = row(0).into_iter().chain(row(1)).collect();
        let det = det4(&m);
        assert_eq!(form.poly(), &form.canonical_order().normalize(&det));
        assert_eq!(index.m, 2);
        assert_eq!(index.g, 1);
    }

    #[test]
    fn parabola_chow_form_has_leading_degree_two() {
        // <x'^2 - 4x>: substituting x = -u00/u01 and x' from the derived line
        // into x'^2 = 4x and clearing denominators gives
        // (u00 u01' - u00' u01)^2 + 4 u00 u01^3, with g = 2
        let f = &Poly::var(Var::new(0, 1)).pow(2) - &Poly::var(Var::new(0, 0)).scale(&rat(4));
        let form = chow_form_differential(&single_chain(1, f), 0, 1, Caps::default()).unwrap();
        let u00 = Poly::var(form.block_var(0, 0));
        let u01 = Poly::var(form.block_var(0, 1));
        let u00p = Poly::var(form.block_var(0, 0).derived(1));
        let u01p = Poly::var(form.block_var(0, 1).derived(1));
        let wronskian = &u00.mul(&u01p) - &u00p.mul(&u01);
        let oracle = &wronskian.mul(&wronskian) + &u00.mul(&u01.pow(3)).scale(&rat(4));
        assert_eq!(form.poly(), &form.canonical_order().normalize(&oracle));
        let index = form.index().unwrap();
        assert_eq!((index.d, index.h, index.g, index.m), (0, 1, 2, 4));
    }

    #[test]
    fn differential_chow_form_rejects_wrong_kolchin_data() {
        let err = chow_form_differential(
            &single_chain(1, Poly::var(Var::new(0, 1))),
            0,
            0,
            Caps::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn coupled_system_matches_determinant_oracle() {
        // <x1' - x2> in A^2 (d = 1, h = 1): substituting x1' = x2 makes
        // L_0, L_0', L_1, L_1' linear in (1, x1, x2, x2'), so F is the 4x4
        // coefficient determinant
        let f = &Poly::var(Var::new(0, 1)) - &Poly::var(Var::new(1, 0));
        let form = chow_form_differential(&single_chain(2, f), 1, 1, Caps::default()).unwrap();
        let u = |i: usize, k: usize, j: u32| Poly::var(form.block_var(i, k).derived(j));
        let row = |i: usize| {
            [
                [u(i, 0, 0), u(i, 1, 0), u(i, 2, 0), Poly::zero()],
                [
                    u(i, 0, 1),
                    u(i, 1, 1),
                    &u(i, 2, 1) + &u(i, 1, 0),
                    u(i, 2, 0),
                ],
            ]
        };
        let m: Vec<[Poly; 4]> = row(0).into_iter().chain(row(1)).collect();
        let det = det4(&m);
        assert_eq!(form.poly(), &form.canonical_order().normalize(&det));
        let index = form.index().unwrap();
        assert_eq!((index.d, index.h, index.g, index.m), (1, 1, 1, 2));
    }

    #[test]
    fn second_order_chow_form_matches_determinant_oracle() {
        // <y''> (d = 0, h = 2): with y'' = 0 the three derivatives of L_0 are
        // linear in (1, y, y'), so F is a 3x3 determinant; first order-2 case
        let form = chow_form_differential(
            &single_chain(1, Poly::var(Var::new(0, 2))),
            0,
            2,
            Caps::default(),
        )
        .unwrap();
        let u = |k: usize, j: u32| Poly::var(form.block_var(0, k).derived(j));
        let m = [
            [u(0, 0), u(1, 0), Poly::zero()],
            [u(0, 1), u(1, 1), u(1, 0)],
            [u(0, 2), u(1, 2), u(1, 1).scale(&rat(2))],
        ];
        let det = det3(&m);
        assert_eq!(form.poly(), &form.canonical_order().normalize(&det));
        let index = form.index().unwrap();
        assert_eq!((index.d, index.h, index.g, index.m), (0, 2, 1, 3));
    }

    fn det4(m: &[[Poly; 4]]) -> Poly {
        let mut acc = Poly::zero();
        for (col, sign) in [(0, 1), (1, -1), (2, 1), (3, -1)] {
            let minor: Vec<[Poly; 3]> = m[1..]
                .iter()
                .map(|r| {
                    let mut it = r
                        .iter()
                        .enumerate()
                        .filter(|&(c, _)| c != col)
                        .map(|(_, p)| p.clone());
                    [
                        it.next().unwrap(),
                        it.next().unwrap(),
                        it.next().unwrap(),
                    ]
                })
                .collect();
            acc.add_assign(&m[0][col].mul(&det3(&minor)).scale(&rat(sign)));
        }
        acc
    }

    fn det3(m: &[[Poly; 3]]) -> Poly {
        let term = |a: &Poly, b: &Poly, c: &Poly| a.mul(b).mul(c);
        let mut acc = term(&m[0][0], &m[1][1], &m[2][2]);
        acc.add_assign(&term(&m[0][1], &m[1][2], &m[2][0]));
        acc.add_assign(&term(&m[0][2], &m[1][0], &m[2][1]));
        acc.sub_assign(&term(&m[0][2], &m[1][1], &m[2][0]));
        acc.sub_assign(&term(&m[0][0], &m[1][2], &m[2][1]));
        acc.sub_assign(&term(&m[0][1], &m[1][0], &m[2][2]));
        acc
    }

    #[test]
    fn degree_bound_values() {
        let (lower, upper) = degree_bound(1, 0, 1, 4);
        assert_eq!(lower, BigRational::new(BigInt::from(4), BigInt::from(2)));
        assert_eq!(upper, BigInt::from(64));
        let (lower, upper) = degree_bound(1, 0, 0, 1);
        assert_eq!(lower, BigRational::one());
        assert_eq!(upper, BigInt::from(1));
        let (lower, upper) = degree_bound(2, 0, 1, 2);
        assert_eq!(lower, BigRational::one());
        assert_eq!(upper, BigInt::from(32));
        assert!(!lower.is_zero());
    }

    fn point_chain(a: i64, b: i64) -> AscendingChain {
        // the point (a, b) in A^2 as an order-0 differential variety
        AscendingChain::differential(
            2,
            vec![
                DiffPoly::new(
                    &Poly::var(Var::new(0, 0)) - &Poly::constant(rat(a)),
                    Ranking::orderly(2),
                ),
                DiffPoly::new(
                    &Poly::var(Var::new(1, 0)) - &Poly::constant(rat(b)),
                    Ranking::orderly(2),
                ),
            ],
            Ranking::orderly(2),
        )
        .unwrap()
    }

    #[test]
    fn doubled_point_cycle() {
        // 2 * (point (1,2)): the squared form, with doubled index entries
        let single = Cycle::new(vec![(1, point_chain(1, 2))], CycleKind::Algebraic).unwrap();
        let doubled = Cycle::new(vec![(2, point_chain(1, 2))], CycleKind::Algebraic).unwrap();
        let f1 = cycle_chow_form(&single, Caps::default()).unwrap();
        let f2 = cycle_chow_form(&doubled, Caps::default()).unwrap();
        assert_eq!(f2.poly(), &f1.poly().mul(f1.poly()));
        assert_eq!(f2.degree().unwrap(), 2 * f1.degree().unwrap());
    }

    #[test]
    fn mixed_order_cycle_rejected() {
        // 1*<y'> + 1*<y> has orders 1 and 0
        let a = single_chain(1, Poly::var(Var::new(0, 1)));
        let b = single_chain(1, Poly::var(Var::new(0, 0)));
        let cycle = Cycle::new(vec![(1, a), (1, b)], CycleKind::Differential).unwrap();
        assert!(matches!(
            cycle_chow_form(&cycle, Caps::default()),
            Err(Error::NotOrderUnmixed(_))
        ));
    }

    #[test]
    fn single_component_cycle_is_identity() {
        let single = Cycle::new(vec![(1, point_chain(1, 2))], CycleKind::Algebraic).unwrap();
        let cycle_form = cycle_chow_form(&single, Caps::default()).unwrap();
        let ideal = asat(&single.components[0].1, Caps::default()).unwrap();
        let direct = chow_form_algebraic(&ideal, 0, Caps::default()).unwrap();
        assert_eq!(cycle_form, direct);
    }

    #[test]
    fn differential_cycle_index_is_multiplicity_weighted() {
        // 2 * V(y^2 y' + 1): g and m double
        let f = &Poly::var(Var::new(0, 0)).pow(2).mul(&Poly::var(Var::new(0, 1))) + &Poly::one();
        let cycle =
            Cycle::new(vec![(2, single_chain(1, f))], CycleKind::Differential).unwrap();
        let form = cycle_chow_form(&cycle, Caps::default()).unwrap();
        let index = form.index().unwrap();
        assert_eq!((index.d, index.h, index.g, index.m), (0, 1, 2, 8));
    }

    #[test]
    fn corpus_coordinates_are_distinct() {
        // distinct cycles yield distinct normalized coordinate vectors
        let forms = [
            chow_form_differential(&single_chain(1, Poly::var(Var::new(0, 1))), 0, 1, Caps::default())
                .unwrap(),
            chow_form_differential(
                &single_chain(
                    1,
                    &Poly::var(Var::new(0, 0)).pow(2).mul(&Poly::var(Var::new(0, 1))) + &Poly::one(),
                ),
                0,
                1,
                Caps::default(),
            )
            .unwrap(),
        ];
        assert_ne!(forms[0].coordinates(), forms[1].coordinates());
        // the trivial point form has the one-entry coordinate vector (1)
        let point = chow_form_differential(
            &single_chain(1, Poly::var(Var::new(0, 0))),
            0,
            0,
            Caps::default(),
        )
        .unwrap();
        assert_eq!(point.coordinates(), vec![(Monomial::var(point.block_var(0, 0)), rat(1))]);
    }

    #[test]
    fn correspondence_on_cubic_matches_cross_product_oracle() {
        // B_1(V(y^2 y' + 1)) is the plane cubic y1^2 y2 + y0^3 = 0; its Chow
        // form is the curve equation evaluated at the intersection point
        // v0 x v1 of the two generic lines
        let f = &Poly::var(Var::new(0, 0)).pow(2).mul(&Poly::var(Var::new(0, 1))) + &Poly::one();
        let cycle = Cycle::new(vec![(1, single_chain(1, f))], CycleKind::Differential).unwrap();
        let form = cycle_to_algebraic_chow(&cycle, 1, Caps::default()).unwrap();
        let v = |i: usize, k: usize| Poly::var(form.block_var(i, k));
        let cross = |a: usize, b: usize| &v(0, a).mul(&v(1, b)) - &v(0, b).mul(&v(1, a));
        let p0 = cross(1, 2);
        let p1 = cross(2, 0);
        let p2 = cross(0, 1);
        let oracle = &p1.pow(2).mul(&p2) + &p0.pow(3);
        assert_eq!(form.poly(), &form.canonical_order().normalize(&oracle));
        // bound sanity: 2 <= 3 <= 64
        assert_eq!(form.degree().unwrap(), 3);
    }

    #[test]
    fn correspondence_on_zero_point() {
        // 1*<y> (d=0, h=0, n=1) -> algebraic Chow form of the origin: v00
        let cycle = Cycle::new(
            vec![(1, single_chain(1, Poly::var(Var::new(0, 0))))],
            CycleKind::Differential,
        )
        .unwrap();
        let form = cycle_to_algebraic_chow(&cycle, 0, Caps::default()).unwrap();
        assert_eq!(form.kind(), ChowKind::Algebraic);
        assert_eq!(form.poly(), &Poly::var(form.block_var(0, 0)));
    }

    #[test]
    fn correspondence_on_constant_locus() {
        // 1*<y'> (d=0, h=1): the line {y' = 0} in the order-1 jet plane,
        // Chow form v00 v11 - v01 v10 by the parametrization oracle
        let cycle = Cycle::new(
            vec![(1, single_chain(1, Poly::var(Var::new(0, 1))))],
            CycleKind::Differential,
        )
        .unwrap();
        let form = cycle_to_algebraic_chow(&cycle, 1, Caps::default()).unwrap();
        let v = |i: usize, k: usize| Poly::var(form.block_var(i, k));
        let expected = &v(0, 0).mul(&v(1, 1)) - &v(0, 1).mul(&v(1, 0));
        assert_eq!(form.poly(), &form.canonical_order().normalize(&expected));
        assert_eq!(form.degree().unwrap(), 1);
    }
}
