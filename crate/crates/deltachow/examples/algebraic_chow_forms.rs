//! Algebraic Chow forms of affine varieties and cycles, with Chow coordinates.

use deltachow::chain::AscendingChain;
use deltachow::chow::{chow_form_algebraic, cycle_chow_form, ChowForm, Cycle, CycleKind};
use deltachow::diff::{DiffPoly, Ranking};
use deltachow::groebner::Caps;
use deltachow::ideal::{JetRing, TruncatedIdeal};
use deltachow::script::parse_poly;
use deltachow::text::poly_text;

fn show(form: &ChowForm) -> String {
    poly_text(form.poly(), &form.ring(), &form.canonical_order())
}

fn main() {
    let vars = ["y1", "y2"];
    let ring = JetRing::affine(vec!["y1".into(), "y2".into()]);
    let ideal = |srcs: &[&str]| {
        TruncatedIdeal::with_degrevlex(
            ring.clone(),
            srcs.iter()
                .map(|s| parse_poly(s, &vars).expect("parses"))
                .collect(),
            Caps::default(),
        )
        .expect("ideal")
    };

    println!("=== points of A^2 ===\n");
    let point = chow_form_algebraic(&ideal(&["y1 - 1", "y2 - 2"]), 0, Caps::default())
        .expect("Chow form");
    println!("point (1,2):  {}", show(&point));
    let origin = chow_form_algebraic(&ideal(&["y1", "y2"]), 0, Caps::default()).expect("form");
    println!("origin:       {}", show(&origin));

    println!("\nChow coordinates of the point (1,2):");
    for (m, c) in point.coordinates() {
        let mono = deltachow::poly::Poly::term(deltachow::poly::rat(1), m);
        println!(
            "  {} at {}",
            c,
            poly_text(&mono, &point.ring(), &point.canonical_order())
        );
    }

    println!("\n=== the line y1 = y2 (dimension 1) ===\n");
    let line = chow_form_algebraic(&ideal(&["y1 - y2"]), 1, Caps::default()).expect("form");
    println!("{}", show(&line));
    println!("per-block degree: {}", line.degree().expect("equi-degree"));

    println!("\n=== cycles: 2 * (point (1,2)) ===\n");
    let ranking = Ranking::orderly(2);
    let chain = AscendingChain::algebraic(
        2,
        vec![
            DiffPoly::new(parse_poly("y1 - 1", &vars).unwrap(), ranking.clone()),
            DiffPoly::new(parse_poly("y2 - 2", &vars).unwrap(), ranking.clone()),
        ],
        ranking,
    )
    .expect("valid chain");
    let doubled = Cycle::new(vec![(2, chain)], CycleKind::Algebraic).expect("cycle");
    let squared = cycle_chow_form(&doubled, Caps::default()).expect("form");
    println!("{}", show(&squared));
    println!(
        "degree {} = 2 * {}",
        squared.degree().expect("equi-degree"),
        point.degree().expect("equi-degree")
    );
}
