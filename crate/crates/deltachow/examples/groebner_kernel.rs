//! The exact commutative-algebra kernel: reduced Gröbner bases, elimination,
//! saturation, ideal membership, and dimension/degree of the projective closure.

use std::collections::BTreeSet;

use deltachow::groebner::Caps;
use deltachow::ideal::{JetRing, TruncatedIdeal};
use deltachow::poly::Var;
use deltachow::script::parse_poly;
use deltachow::text::poly_text_default;

fn main() {
    let vars = ["x"];
    let ring = JetRing::new(vec!["x".into()], 2);
    let p = |src: &str| parse_poly(src, &vars).expect("parses");

    println!("=== ideal (x'^2 - 4x, 2x'(x'' - 2)) in K[x, x', x''] ===\n");
    let f = p("x'^2 - 4*x");
    let g = p("2*x'*(x'' - 2)");
    let ideal =
        TruncatedIdeal::with_degrevlex(ring.clone(), vec![f.clone(), g.clone()], Caps::default())
            .expect("well-formed ideal");

    println!("reduced Groebner basis (degrevlex):");
    for b in ideal.groebner_basis().expect("basis").iter() {
        println!("  {}", poly_text_default(b, &ring));
    }

    let (dim, deg) = ideal.dim_and_degree().expect("proper ideal");
    println!("\ndimension {dim}, projective degree {deg}");

    println!("\nmembership:");
    let probe = p("x'' - 2");
    println!(
        "  x'' - 2 in ideal?           {}",
        ideal.member(&probe).expect("normal form")
    );

    println!("\nsaturate by x':");
    let saturated = ideal.saturate(&p("x'")).expect("saturation");
    for b in saturated.generators() {
        println!("  {}", poly_text_default(b, &ring));
    }
    println!(
        "  x'' - 2 in saturation?      {}",
        saturated.member(&probe).expect("normal form")
    );

    println!("\n=== elimination: project (y, u00 + u01 y) onto the u-plane ===\n");
    let uvars = ["y", "u00", "u01"];
    let uring = JetRing::affine(vec!["y".into(), "u00".into(), "u01".into()]);
    let ideal = TruncatedIdeal::with_degrevlex(
        uring.clone(),
        vec![
            parse_poly("y", &uvars).expect("parses"),
            parse_poly("u00 + u01*y", &uvars).expect("parses"),
        ],
        Caps::default(),
    )
    .expect("well-formed ideal");
    let drop: BTreeSet<Var> = [Var::new(0, 0)].into();
    let projected = ideal.eliminate(&drop).expect("elimination");
    for b in projected.generators() {
        println!("  {}", poly_text_default(b, &uring));
    }
}
