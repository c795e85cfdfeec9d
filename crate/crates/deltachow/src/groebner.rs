//! Buchberger's algorithm with the normal selection strategy and both
//! classical criteria, plus full normal forms. All arithmetic is exact.
//!
//! Degree and term-count caps are enforced throughout; exceeding one aborts
//! with a resource error that reports the configured cap.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, LimitKind, Result};
use crate::order::MonomialOrder;
use crate::poly::{Poly, Rat};

/// Resource caps for the polynomial kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum total degree any intermediate term may reach.
    pub degree: u32,
    /// Maximum number of terms any intermediate polynomial may hold.
    pub terms: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            degree: 96,
            terms: 500_000,
        }
    }
}

type DMono = Vec<u32>;

#[derive(Debug, Clone)]
struct DPoly {
    /// Terms sorted descending under the active order.
    terms: Vec<(DMono, Rat)>,
}

impl DPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lt(&self) -> &(DMono, Rat) {
        &self.terms[0]
    }
}

fn deg(m: &[u32]) -> u64 {
    m.iter().map(|&e| e as u64).sum()
}

fn mono_mul(a: &[u32], b: &[u32]) -> DMono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mono_div(a: &[u32], b: &[u32]) -> Option<DMono> {
    let mut out = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return None;
        }
        out.push(x - y);
    }
    Some(out)
}

fn mono_lcm(a: &[u32], b: &[u32]) -> DMono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn mono_coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

struct Kernel<'a> {
    order: &'a MonomialOrder,
    caps: Caps,
}

impl<'a> Kernel<'a> {
    fn to_dense(&self, p: &Poly) -> DPoly {
        let mut terms: Vec<(DMono, Rat)> = p
            .terms()
            .map(|(m, c)| (self.order.dense(m), c.clone()))
            .collect();
        terms.sort_by(|a, b| self.order.cmp_dense(&b.0, &a.0));
        DPoly { terms }
    }

    fn to_poly(&self, p: &DPoly) -> Poly {
        Poly::from_terms(
            p.terms
                .iter()
                .map(|(m, c)| (self.order.sparse(m), c.clone())),
        )
    }

    fn check_caps(&self, p: &DPoly) -> Result<()> {
        if p.terms.len() > self.caps.terms {
            return Err(Error::ResourceLimit {
                kind: LimitKind::Terms,
                cap: self.caps.terms as u64,
                reached: p.terms.len() as u64,
            });
        }
        // Terms are degree-sorted under degrevlex but not under lex or block
        // orders, so take the max.
        if let Some(d) = p.terms.iter().map(|(m, _)| deg(m)).max() {
            if d > self.caps.degree as u64 {
                return Err(Error::ResourceLimit {
                    kind: LimitKind::Degree,
                    cap: self.caps.degree as u64,
                    reached: d,
                });
            }
        }
        Ok(())
    }

    /// `p - c * x^m * q`, keeping the descending term sort.
    fn sub_mul(&self, p: &DPoly, c: &Rat, m: &[u32], q: &DPoly) -> DPoly {
        let scaled: Vec<(DMono, Rat)> = q
            .terms
            .iter()
            .map(|(qm, qc)| (mono_mul(qm, m), -(qc * c)))
            .collect();
        let mut out = Vec::with_capacity(p.terms.len() + scaled.len());
        let (mut i, mut j) = (0, 0);
        while i < p.terms.len() && j < scaled.len() {
            match self.order.cmp_dense(&p.terms[i].0, &scaled[j].0) {
                Ordering::Greater => {
                    out.push(p.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(scaled[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &p.terms[i].1 + &scaled[j].1;
                    if !c.is_zero() {
                        out.push((p.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&p.terms[i..]);
        out.extend_from_slice(&scaled[j..]);
        DPoly { terms: out }
    }

    /// Full normal form of `f` modulo `basis`: no term of the result is
    /// divisible by any basis leading monomial.
    fn normal_form(&self, f: DPoly, basis: &[DPoly]) -> Result<DPoly> {
        let mut rest = f;
        let mut done: Vec<(DMono, Rat)> = Vec::new();
        'outer: while !rest.is_zero() {
            self.check_caps(&rest)?;
            let (m, c) = rest.lt().clone();
            for g in basis {
                if g.is_zero() {
                    continue;
                }
                let (gm, gc) = g.lt();
                if let Some(q) = mono_div(&m, gm) {
                    let factor = &c / gc;
                    rest = self.sub_mul(&rest, &factor, &q, g);
                    continue 'outer;
                }
            }
            done.push((m, c));
            rest.terms.remove(0);
        }
        let out = DPoly { terms: done };
        self.check_caps(&out)?;
        Ok(out)
    }

    fn spoly(&self, f: &DPoly, g: &DPoly) -> DPoly {
        let (fm, fc) = f.lt();
        let (gm, gc) = g.lt();
        let l = mono_lcm(fm, gm);
        let uf = mono_div(&l, fm).unwrap();
        let ug = mono_div(&l, gm).unwrap();
        let left = DPoly {
            terms: f
                .terms
                .iter()
                .map(|(m, c)| (mono_mul(m, &uf), c / fc))
                .collect(),
        };
        self.sub_mul(&left, &(Rat::one() / gc), &ug, g)
    }

    fn buchberger(&self, gens: &[Poly]) -> Result<Vec<DPoly>> {
        let mut basis: Vec<DPoly> = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let d = self.to_dense(g);
            self.check_caps(&d)?;
            basis.push(d);
        }

        let mut pairs: Vec<(usize, usize, DMono)> = Vec::new();
        for i in 0..basis.len() {
            for j in 0..i {
                pairs.push((j, i, mono_lcm(&basis[j].lt().0, &basis[i].lt().0)));
            }
        }

        while !pairs.is_empty() {
            // Normal selection: the pair with the smallest lcm.
            let mut best = 0;
            for k in 1..pairs.len() {
                if self.order.cmp_dense(&pairs[k].2, &pairs[best].2) == Ordering::Less {
                    best = k;
                }
            }
            let (i, j, l) = pairs.swap_remove(best);

            // Product criterion.
            if mono_coprime(&basis[i].lt().0, &basis[j].lt().0) {
                continue;
            }
            // Chain criterion: some k with lt(k) | lcm(i,j) whose pairs with i
            // and j were both handled already.
            let pending = |a: usize, b: usize| {
                pairs
                    .iter()
                    .any(|&(x, y, _)| (x, y) == (a.min(b), a.max(b)))
            };
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && mono_div(&l, &basis[k].lt().0).is_some()
                    && !pending(i, k)
                    && !pending(j, k)
            });
            if chain {
                continue;
            }

            let s = self.spoly(&basis[i], &basis[j]);
            let r = self.normal_form(s, &basis)?;
            if r.is_zero() {
                continue;
            }
            let new_idx = basis.len();
            for k in 0..new_idx {
                pairs.push((k, new_idx, mono_lcm(&basis[k].lt().0, &r.lt().0)));
            }
            basis.push(r);
        }
        Ok(basis)
    }

    /// Minimalize and tail-reduce into the unique reduced basis.
    fn reduce_basis(&self, mut basis: Vec<DPoly>) -> Result<Vec<DPoly>> {
        basis.retain(|g| !g.is_zero());
        let mut keep: Vec<bool> = vec![true; basis.len()];
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i != j
                    && keep[j]
                    && keep[i]
                    && mono_div(&basis[i].lt().0, &basis[j].lt().0).is_some()
                    && (i > j || basis[i].lt().0 != basis[j].lt().0)
                {
                    keep[i] = false;
                    break;
                }
            }
        }
        let minimal: Vec<DPoly> = basis
            .into_iter()
            .zip(keep)
            .filter_map(|(g, k)| k.then_some(g))
            .collect();

        let mut reduced = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<DPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = self.normal_form(minimal[i].clone(), &others)?;
            if !r.is_zero() {
                reduced.push(r);
            }
        }
        reduced.sort_by(|a, b| self.order.cmp_dense(&a.lt().0, &b.lt().0));
        Ok(reduced)
    }
}

/// The unique reduced Gröbner basis of `(gens)` under `order`, each element
/// content-free with positive leading coefficient, sorted by ascending
/// leading monomial.
pub fn reduced_groebner(gens: &[Poly], order: &MonomialOrder, caps: Caps) -> Result<Vec<Poly>> {
    let kernel = Kernel { order, caps };
    let basis = kernel.buchberger(gens)?;
    let reduced = kernel.reduce_basis(basis)?;
    Ok(reduced
        .iter()
        .map(|g| order.normalize(&kernel.to_poly(g)))
        .collect())
}

/// Full normal form of `f` modulo `basis` (assumed a Gröbner basis for
/// membership decisions, but any set gives a valid remainder).
pub fn normal_form(f: &Poly, basis: &[Poly], order: &MonomialOrder, caps: Caps) -> Result<Poly> {
    let kernel = Kernel { order, caps };
    let dense_basis: Vec<DPoly> = basis.iter().map(|g| kernel.to_dense(g)).collect();
    let r = kernel.normal_form(kernel.to_dense(f), &dense_basis)?;
    Ok(kernel.to_poly(&r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Monomial, Var};

    fn v(i: u32) -> Var {
        Var::new(i, 0)
    }

    #[test]
    fn linear_substitution_basis() {
        // (y, u00 + u01*y) under lex y > u00 > u01 reduces to {u00, y}
        let y = v(0);
        let u00 = v(1);
        let u01 = v(2);
        let order = MonomialOrder::lex(vec![y, u00, u01]);
        let f = Poly::var(y);
        let g = &Poly::var(u00) + &Poly::var(u01).mul(&Poly::var(y));
        let gb = reduced_groebner(&[f, g], &order, Caps::default()).unwrap();
        assert_eq!(gb, vec![Poly::var(u00), Poly::var(y)]);
    }

    #[test]
    fn already_interreduced_input() {
        // x'^2 - 4x and 2x'(x'' - 2): degrevlex basis keeps both (normalized)
        let x = Var::new(0, 0);
        let xp = Var::new(0, 1);
        let xpp = Var::new(0, 2);
        let order = MonomialOrder::degrevlex(vec![xpp, xp, x]);
        let f = &Poly::var(xp).pow(2) - &Poly::var(x).scale(&rat(4));
        let g = Poly::var(xp)
            .scale(&rat(2))
            .mul(&(&Poly::var(xpp) - &Poly::from_int(2)));
        let gb = reduced_groebner(&[f.clone(), g], &order, Caps::default()).unwrap();
        assert!(gb.contains(&f));
        // second generator appears content-free: x' x'' - 2 x'
        let g_normal = &Poly::var(xp).mul(&Poly::var(xpp)) - &Poly::var(xp).scale(&rat(2));
        assert!(gb.contains(&g_normal));
        // one honest S-polynomial survives: x x'' - 2x = (x' g - (x''-2) f) / 4
        let extra = &Poly::var(x).mul(&Poly::var(xpp)) - &Poly::var(x).scale(&rat(2));
        assert_eq!(gb.len(), 3);
        assert!(gb.contains(&extra));
    }

    #[test]
    fn circle_hyperbola_lex() {
        // x^2 + y^2 - 1, xy - 1 under lex x > y: triangular basis
        let x = v(0);
        let y = v(1);
        let order = MonomialOrder::lex(vec![x, y]);
        let f = &(&Poly::var(x).pow(2) + &Poly::var(y).pow(2)) - &Poly::one();
        let g = &Poly::var(x).mul(&Poly::var(y)) - &Poly::one();
        let gb = reduced_groebner(&[f.clone(), g.clone()], &order, Caps::default()).unwrap();
        // y^4 - y^2 + 1 is the eliminant
        let elim = &(&Poly::var(y).pow(4) - &Poly::var(y).pow(2)) + &Poly::one();
        assert!(gb.contains(&elim), "basis was {gb:?}");
        // membership: both generators reduce to zero
        for p in [f, g] {
            let nf = normal_form(&p, &gb, &order, Caps::default()).unwrap();
            assert!(nf.is_zero());
        }
    }

    #[test]
    fn unit_ideal_detected() {
        let x = v(0);
        let order = MonomialOrder::degrevlex(vec![x]);
        let gb = reduced_groebner(
            &[Poly::var(x), &Poly::var(x) - &Poly::one()],
            &order,
            Caps::default(),
        )
        .unwrap();
        assert_eq!(gb, vec![Poly::one()]);
    }

    #[test]
    fn degree_cap_reported() {
        let x = v(0);
        let y = v(1);
        let order = MonomialOrder::degrevlex(vec![x, y]);
        let caps = Caps {
            degree: 3,
            terms: 1000,
        };
        let f = &Poly::var(x).pow(2) - &Poly::var(y).pow(3).mul(&Poly::var(x)).pow(2);
        let err = reduced_groebner(&[f], &order, caps).unwrap_err();
        match err {
            Error::ResourceLimit {
                kind: LimitKind::Degree,
                cap: 3,
                ..
            } => {}
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn zero_generators_give_zero_ideal() {
        let order = MonomialOrder::degrevlex(vec![v(0)]);
        let gb = reduced_groebner(&[Poly::zero()], &order, Caps::default()).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn normal_form_is_canonical() {
        // NF(x^2) mod {x - y} under lex x > y is y^2
        let x = v(0);
        let y = v(1);
        let order = MonomialOrder::lex(vec![x, y]);
        let gb = reduced_groebner(
            &[&Poly::var(x) - &Poly::var(y)],
            &order,
            Caps::default(),
        )
        .unwrap();
        let nf = normal_form(&Poly::var(x).pow(2), &gb, &order, Caps::default()).unwrap();
        assert_eq!(nf, Poly::var(y).pow(2));
        let _ = Monomial::one();
    }
}
