//! Dominant components and Kolchin polynomials: recover a differential
//! characteristic set from the algebraic characteristic set of its B_h image.

use deltachow::chain::{charset_of, chain_ring, AscendingChain};
use deltachow::diff::{DiffPoly, Ranking};
use deltachow::groebner::Caps;
use deltachow::prolong::{b_h, dominant_component, kolchin, JetContext};
use deltachow::script::parse_poly;
use deltachow::text::poly_text_default;

fn main() {
    let vars = ["x1", "x2"];
    let ranking = Ranking::orderly(2);
    let show = |p: &deltachow::poly::Poly| poly_text_default(p, &chain_ring(2, 3));

    println!("=== round trip: chain -> B_3 -> charset -> dominant component ===\n");
    let chain = AscendingChain::differential(
        2,
        vec![
            DiffPoly::new(parse_poly("x1'", &vars).unwrap(), ranking.clone()),
            DiffPoly::new(parse_poly("x2''", &vars).unwrap(), ranking.clone()),
        ],
        ranking.clone(),
    )
    .expect("valid chain");

    let data = kolchin(&chain).expect("Kolchin data");
    println!(
        "input <x1', x2''>: d = {}, order = {}, omega(t) = {}",
        data.d, data.h, data
    );

    let image = b_h(&chain, 3, Caps::default()).expect("B_3");
    println!("\nB_3 generators:");
    for g in image.generators() {
        println!("  {}", show(g));
    }

    let algebraic = charset_of(&image, &ranking).expect("characteristic set");
    println!("\nalgebraic characteristic set of B_3:");
    for e in algebraic.elements() {
        println!("  {}", show(e.poly()));
    }

    let dom = dominant_component(&algebraic, JetContext::new(2, 3), Caps::default())
        .expect("dominant component");
    println!("\ndominant component:");
    for e in dom.diff_chain.elements() {
        println!("  {}", show(e.poly()));
    }
    println!(
        "d = {}, order = {}, omega(t) = {}",
        dom.kolchin.d, dom.kolchin.h, dom.kolchin
    );

    // the two routes to the Kolchin data agree
    let via_chain = kolchin(&dom.diff_chain).expect("Kolchin data");
    assert_eq!(via_chain, dom.kolchin);
    println!("\ndimension-theoretic and chain-counting routes agree.");

    println!("\n=== the parabola: B_1(W) determines W ===\n");
    let vars1 = ["x"];
    let ranking1 = Ranking::orderly(1);
    let show1 = |p: &deltachow::poly::Poly| poly_text_default(p, &chain_ring(1, 1));
    let parabola = AscendingChain::differential(
        1,
        vec![DiffPoly::new(
            parse_poly("x'^2 - 4*x", &vars1).unwrap(),
            ranking1.clone(),
        )],
        ranking1.clone(),
    )
    .expect("valid chain");
    let image = b_h(&parabola, 1, Caps::default()).expect("B_1");
    let algebraic = charset_of(&image, &ranking1).expect("characteristic set");
    let dom = dominant_component(&algebraic, JetContext::new(1, 1), Caps::default())
        .expect("dominant component");
    for e in dom.diff_chain.elements() {
        println!("  recovered {}", show1(e.poly()));
    }
    println!(
        "  d = {}, order = {}, omega(t) = {}",
        dom.kolchin.d, dom.kolchin.h, dom.kolchin
    );
}
