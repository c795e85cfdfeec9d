//! Differential Chow forms, the index (d, h, g, m), degree bounds, and the
//! cycle map into algebraic Chow forms of prolongation images.
//!
//! The star witness: V(y^2 y' + 1), whose Chow form is
//! u00^2 u01 u00' - u00^3 u01' - u01^4 with index (0, 1, 1, 4).

use deltachow::chain::AscendingChain;
use deltachow::chow::{
    chow_form_differential, cycle_to_algebraic_chow, degree_bound, ChowForm, Cycle, CycleKind,
};
use deltachow::diff::{DiffPoly, Ranking};
use deltachow::groebner::Caps;
use deltachow::prolong::b_h;
use deltachow::script::parse_poly;
use deltachow::text::poly_text;

fn show(form: &ChowForm) -> String {
    poly_text(form.poly(), &form.ring(), &form.canonical_order())
}

fn chain_of(src: &str) -> AscendingChain {
    AscendingChain::differential(
        1,
        vec![DiffPoly::new(
            parse_poly(src, &["y"]).expect("parses"),
            Ranking::orderly(1),
        )],
        Ranking::orderly(1),
    )
    .expect("valid chain")
}

fn main() {
    println!("=== differential Chow form of V(y^2 y' + 1) ===\n");
    let cubic = chain_of("y^2*y' + 1");
    let form = chow_form_differential(&cubic, 0, 1, Caps::default()).expect("Chow form");
    println!("F = {}", show(&form));
    let index = form.index().expect("well-formed");
    println!(
        "index (d, h, g, m) = ({}, {}, {}, {})",
        index.d, index.h, index.g, index.m
    );

    println!("\ndegree bounds against deg B_h(V):");
    let image = b_h(&cubic, 1, Caps::default()).expect("B_1");
    let (_, deg) = image.dim_and_degree().expect("proper");
    let (lower, upper) = degree_bound(1, index.d, index.h, index.m);
    println!("  max(g, m/(h+1)) = max({}, {lower})", index.g);
    println!("  {lower} <= deg B_1(V) = {deg} <= {upper}");

    println!("\n=== the Wronskian of constants: V(y') ===\n");
    let constants = chain_of("y'");
    let form = chow_form_differential(&constants, 0, 1, Caps::default()).expect("Chow form");
    println!("F = {}", show(&form));
    let index = form.index().expect("well-formed");
    println!(
        "index (d, h, g, m) = ({}, {}, {}, {})",
        index.d, index.h, index.g, index.m
    );

    println!("\n=== cycle map: 1 * V(y^2 y' + 1) -> algebraic Chow form of B_1 ===\n");
    let cycle = Cycle::new(vec![(1, chain_of("y^2*y' + 1"))], CycleKind::Differential)
        .expect("cycle");
    let algebraic = cycle_to_algebraic_chow(&cycle, 1, Caps::default()).expect("correspondence");
    println!(
        "cycle dimension {} in the jet plane, per-block degree {}",
        algebraic.d(),
        algebraic.degree().expect("equi-degree")
    );
    println!("F_alg = {}", show(&algebraic));
}
