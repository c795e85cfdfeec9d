//! Differential polynomials at work: the formal derivation, leaders,
//! initials, separants, and Ritt reduction with a verifiable certificate.
//!
//! The running system is the classic (y'')^2 - y, whose third derivative
//! combines with the second into a product that splits the variety.

use deltachow::chain::AscendingChain;
use deltachow::diff::{DiffPoly, Ranking};
use deltachow::groebner::Caps;
use deltachow::ideal::{JetRing, TruncatedIdeal};
use deltachow::script::parse_poly;
use deltachow::text::poly_text_default;

fn main() {
    let vars = ["y"];
    let ring = JetRing::new(vec!["y".into()], 5);
    let show = |p: &deltachow::poly::Poly| poly_text_default(p, &ring);
    let dp = |src: &str| {
        DiffPoly::new(parse_poly(src, &vars).expect("parses"), Ranking::orderly(1))
    };

    let f = dp("y''^2 - y");
    println!("f        = {}", show(f.poly()));
    let (leader, initial, separant) = f.leader_initial_separant().expect("nonconstant");
    println!(
        "leader {:?}, initial {}, separant {}",
        ring.var_name(leader),
        show(&initial),
        show(&separant)
    );

    for k in 1..=3 {
        println!("delta^{k} f = {}", show(f.derive(k).poly()));
    }

    // 2y''' * delta^3 f - (6y'''' - 1) * delta^2 f = y'' (4y'''y''''' - 12y''''^2 + 8y'''' - 1)
    let combo = {
        let lhs = parse_poly("2*y'''", &vars).unwrap().mul(f.derive(3).poly());
        let rhs = parse_poly("6*y'''' - 1", &vars)
            .unwrap()
            .mul(f.derive(2).poly());
        &lhs - &rhs
    };
    println!("\nthe splitting combination:\n  {}", show(&combo));

    // membership in the prolonged ideal (f, delta f, delta^2 f, delta^3 f)
    let ideal = TruncatedIdeal::with_degrevlex(
        ring.clone(),
        (0..=3).map(|k| f.derive(k).into_poly()).collect(),
        Caps::default(),
    )
    .expect("well-formed ideal");
    println!(
        "  lies in (f, df, d2f, d3f)? {}",
        ideal.member(&combo).expect("normal form")
    );

    println!("\n=== Ritt reduction with certificate ===\n");
    let chain = AscendingChain::differential(1, vec![dp("y'^2 - 4*y")], Ranking::orderly(1))
        .expect("valid chain");
    let target = dp("y'' - 2");
    let red = chain.reduce(&target).expect("reduction");
    println!("reduce y''-2 by <y'^2-4y>:");
    println!("  remainder  = {}", show(red.remainder.poly()));
    println!("  multiplier = {}", show(&red.certificate.multiplier));
    println!(
        "  certificate verifies exactly: {}",
        red.certificate
            .verifies(target.poly(), chain.elements(), red.remainder.poly())
    );
}
