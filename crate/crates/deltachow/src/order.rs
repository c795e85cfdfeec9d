//! Monomial orders: degrevlex, lex, and block-elimination.
//!
//! An order owns the list of ring variables sorted by descending significance;
//! the kernel works with dense exponent vectors indexed by that list.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use crate::poly::{Monomial, Poly, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    DegRevLex,
    Lex,
    /// Total degree first, then lex.
    DegLex,
    /// Compare the first `front_len` variables (by degrevlex) before the rest;
    /// realizes elimination of the front block.
    Block { front_len: usize },
}

#[derive(Debug, Clone)]
pub struct MonomialOrder {
    kind: OrderKind,
    vars: Arc<Vec<Var>>,
    index: Arc<HashMap<Var, usize>>,
}

impl MonomialOrder {
    fn build(kind: OrderKind, vars: Vec<Var>) -> MonomialOrder {
        let index = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        MonomialOrder {
            kind,
            vars: Arc::new(vars),
            index: Arc::new(index),
        }
    }

    /// `vars` in descending significance.
    pub fn degrevlex(vars: Vec<Var>) -> MonomialOrder {
        MonomialOrder::build(OrderKind::DegRevLex, vars)
    }

    pub fn lex(vars: Vec<Var>) -> MonomialOrder {
        MonomialOrder::build(OrderKind::Lex, vars)
    }

    pub fn deglex(vars: Vec<Var>) -> MonomialOrder {
        MonomialOrder::build(OrderKind::DegLex, vars)
    }

    /// Elimination order: any monomial involving a `front` variable is greater
    /// than any monomial free of them.
    pub fn elimination(front: Vec<Var>, back: Vec<Var>) -> MonomialOrder {
        let front_len = front.len();
        let mut vars = front;
        vars.extend(back);
        MonomialOrder::build(OrderKind::Block { front_len }, vars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn front_len(&self) -> usize {
        match self.kind {
            OrderKind::Block { front_len } => front_len,
            _ => 0,
        }
    }

    /// Dense exponent vector indexed by significance position.
    pub(crate) fn dense(&self, m: &Monomial) -> Vec<u32> {
        let mut out = vec![0u32; self.vars.len()];
        for &(v, e) in m.exponents() {
            let i = *self
                .index
                .get(&v)
                .unwrap_or_else(|| panic!("variable {v:?} not in the order's ring"));
            out[i] = e;
        }
        out
    }

    pub(crate) fn sparse(&self, dense: &[u32]) -> Monomial {
        Monomial::from_pairs(
            dense
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(i, &e)| (self.vars[i], e)),
        )
    }

    pub(crate) fn cmp_dense(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::DegRevLex => cmp_degrevlex(a, b),
            OrderKind::Lex => cmp_lex(a, b),
            OrderKind::DegLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| cmp_lex(a, b))
            }
            OrderKind::Block { front_len } => cmp_degrevlex(&a[..front_len], &b[..front_len])
                .then_with(|| cmp_degrevlex(&a[front_len..], &b[front_len..])),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_dense(&self.dense(a), &self.dense(b))
    }

    pub fn leading_monomial(&self, p: &Poly) -> Option<Monomial> {
        p.terms().map(|(m, _)| m).max_by(|a, b| self.cmp(a, b)).cloned()
    }

    /// Canonical scaling of `p` with positive leading coefficient under `self`.
    pub fn normalize(&self, p: &Poly) -> Poly {
        p.normalized_by(|q| self.leading_monomial(q))
    }
}

fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn cmp_degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // Tie: scan from the least significant variable; the monomial with the
    // smaller exponent at the first difference is greater.
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn vars3() -> Vec<Var> {
        vec![Var::new(2, 0), Var::new(1, 0), Var::new(0, 0)]
    }

    #[test]
    fn lex_vs_degrevlex() {
        let [z, y, x] = [Var::new(2, 0), Var::new(1, 0), Var::new(0, 0)];
        let lex = MonomialOrder::lex(vars3());
        let drl = MonomialOrder::degrevlex(vars3());
        let m_z = Monomial::var(z);
        let m_xy2 = Monomial::from_pairs([(x, 1), (y, 2)]);
        // lex: z beats anything without z; degrevlex: degree wins first
        assert_eq!(lex.cmp(&m_z, &m_xy2), Ordering::Greater);
        assert_eq!(drl.cmp(&m_z, &m_xy2), Ordering::Less);

        // degrevlex classic: x z vs y^2 (deg 2 each): last difference at x
        let m_xz = Monomial::from_pairs([(x, 1), (z, 1)]);
        let m_y2 = Monomial::from_pairs([(y, 2)]);
        assert_eq!(drl.cmp(&m_xz, &m_y2), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates_front() {
        let [z, y, x] = [Var::new(2, 0), Var::new(1, 0), Var::new(0, 0)];
        let ord = MonomialOrder::elimination(vec![z], vec![y, x]);
        // any power of z dominates any z-free monomial
        let m_z = Monomial::var(z);
        let m_back = Monomial::from_pairs([(x, 5), (y, 5)]);
        assert_eq!(ord.cmp(&m_z, &m_back), Ordering::Greater);
        assert_eq!(ord.front_len(), 1);
    }

    #[test]
    fn leading_and_normalize() {
        let [_, y, x] = [Var::new(2, 0), Var::new(1, 0), Var::new(0, 0)];
        let ord = MonomialOrder::degrevlex(vars3());
        // -2 y^2 + 4 x: leading y^2, normalized to y^2 - 2x
        let p = &Poly::var(y).pow(2).scale(&rat(-2)) + &Poly::var(x).scale(&rat(4));
        assert_eq!(ord.leading_monomial(&p), Some(Monomial::from_pairs([(y, 2)])));
        let q = ord.normalize(&p);
        assert_eq!(q.coefficient(&Monomial::from_pairs([(y, 2)])), rat(1));
        assert_eq!(q.coefficient(&Monomial::var(x)), rat(-2));
    }
}
