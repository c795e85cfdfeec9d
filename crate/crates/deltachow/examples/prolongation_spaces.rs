//! Prolongation spaces: B_h images of differential varieties, the
//! admissibility test, and exact vs naive prolongation sequences.

use deltachow::chain::{chain_ring, AscendingChain};
use deltachow::diff::{DiffPoly, Ranking};
use deltachow::groebner::Caps;
use deltachow::ideal::TruncatedIdeal;
use deltachow::prolong::{b_h, is_admissible, prolongation_ideal_naive, prolongation_sequence};
use deltachow::script::parse_poly;
use deltachow::text::poly_text_default;

fn main() {
    let vars2 = ["x1", "x2"];
    let ranking2 = Ranking::orderly(2);
    let ring2 = chain_ring(2, 2);
    let show2 = |p: &deltachow::poly::Poly| poly_text_default(p, &chain_ring(2, 4));

    println!("=== admissibility in the order-2 jet space of A^2 ===\n");
    let build = |srcs: &[&str]| {
        TruncatedIdeal::with_degrevlex(
            ring2.clone(),
            srcs.iter()
                .map(|s| parse_poly(s, &vars2).expect("parses"))
                .collect(),
            Caps::default(),
        )
        .expect("ideal")
    };
    let v = build(&["x1'", "x2''"]);
    let u = build(&["x1'", "x1''", "x2''"]);
    println!(
        "V(x1', x2'')        admissible? {}",
        is_admissible(&v).expect("test")
    );
    println!(
        "V(x1', x1'', x2'')  admissible? {}",
        is_admissible(&u).expect("test")
    );

    println!("\n=== B_h of <x1', x2''> at h = 3 ===\n");
    let chain = AscendingChain::differential(
        2,
        vec![
            DiffPoly::new(parse_poly("x1'", &vars2).unwrap(), ranking2.clone()),
            DiffPoly::new(parse_poly("x2''", &vars2).unwrap(), ranking2.clone()),
        ],
        ranking2.clone(),
    )
    .expect("valid chain");
    let image = b_h(&chain, 3, Caps::default()).expect("B_h");
    for g in image.generators() {
        println!("  {}", show2(g));
    }
    let (dim, deg) = image.dim_and_degree().expect("proper");
    println!("dimension {dim}, degree {deg}");

    println!("\n=== prolongation sequence of V(x'^2 - 4x), level 2 ===\n");
    let vars1 = ["x"];
    let ranking1 = Ranking::orderly(1);
    let show1 = |p: &deltachow::poly::Poly| poly_text_default(p, &chain_ring(1, 2));
    let general = AscendingChain::differential(
        1,
        vec![DiffPoly::new(
            parse_poly("x'^2 - 4*x", &vars1).unwrap(),
            ranking1.clone(),
        )],
        ranking1.clone(),
    )
    .expect("valid chain");
    let singular = AscendingChain::differential(
        1,
        vec![DiffPoly::new(parse_poly("x", &vars1).unwrap(), ranking1.clone())],
        ranking1.clone(),
    )
    .expect("valid chain");

    let exact = prolongation_sequence(&[general.clone(), singular], 2, Caps::default())
        .expect("sequence");
    println!("exact (component intersection):");
    for g in exact.generators() {
        println!("  {}", show1(g));
    }

    let naive = prolongation_ideal_naive(
        &[DiffPoly::new(
            parse_poly("x'^2 - 4*x", &vars1).unwrap(),
            ranking1.clone(),
        )],
        1,
        2,
        Caps::default(),
    )
    .expect("naive ideal");
    println!("\nnaive upper approximation (raw generator derivatives):");
    for g in naive.generators() {
        println!("  {}", show1(g));
    }
    println!(
        "\nnaive contained in exact: {} (the reverse fails: the naive ideal\n\
         keeps the singular line x = x' = 0 that differential points cannot reach)",
        exact.contains_ideal(&naive).expect("membership")
    );

    // b_h alone recovers the exact general component image
    let b2 = b_h(&general, 2, Caps::default()).expect("B_2");
    println!("\nB_2 of the general component:");
    for g in b2.generators() {
        println!("  {}", show1(g));
    }
}
