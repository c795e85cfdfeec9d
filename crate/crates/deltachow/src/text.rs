//! Canonical text form of polynomials: terms in descending order under a
//! monomial order, factors inside a monomial by ascending derivative order
//! and base index, apostrophes for derivatives.

use num_traits::{One, Signed};

use crate::ideal::JetRing;
use crate::order::MonomialOrder;
use crate::poly::{Monomial, Poly, Rat};

fn coeff_text(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn monomial_text(m: &Monomial, ring: &JetRing) -> String {
    let mut factors: Vec<_> = m.exponents().to_vec();
    factors.sort_by_key(|&(v, _)| (v.order(), v.base()));
    factors
        .iter()
        .map(|&(v, e)| {
            let name = ring.var_name(v);
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Render `p` with terms sorted descending under `order`.
pub fn poly_text(p: &Poly, ring: &JetRing, order: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(Monomial, Rat)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));

    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        if m.is_one() {
            out.push_str(&coeff_text(&abs));
        } else if abs.is_one() {
            out.push_str(&monomial_text(m, ring));
        } else {
            out.push_str(&coeff_text(&abs));
            out.push('*');
            out.push_str(&monomial_text(m, ring));
        }
    }
    out
}

/// Render with the ring's default graded-lex order (ranking-descending vars).
pub fn poly_text_default(p: &Poly, ring: &JetRing) -> String {
    let order = MonomialOrder::deglex(ring.vars_descending());
    poly_text(p, ring, &order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Var};

    #[test]
    fn renders_parabola_and_derivative() {
        let ring = JetRing::new(vec!["x".into()], 2);
        let f = &Poly::var(Var::new(0, 1)).pow(2) - &Poly::var(Var::new(0, 0)).scale(&rat(4));
        assert_eq!(poly_text_default(&f, &ring), "x'^2 - 4*x");
        assert_eq!(poly_text_default(&f.derivative(), &ring), "2*x'*x'' - 4*x'");
        assert_eq!(poly_text_default(&Poly::zero(), &ring), "0");
        assert_eq!(poly_text_default(&Poly::from_int(-3), &ring), "-3");
    }

    #[test]
    fn renders_rational_coefficients() {
        let ring = JetRing::new(vec!["y".into()], 0);
        let f = &Poly::var(Var::new(0, 0)).scale(&Rat::new(3.into(), 4.into())) - &Poly::one();
        assert_eq!(poly_text_default(&f, &ring), "3/4*y - 1");
    }
}
