//! Characteristic sets of truncated ideals, the algebraic saturation asat,
//! and the bounded irreducibility test with explicit witnesses.

use deltachow::chain::{
    asat, charset_of, charset_with_saturation, diff_charset_of_chain, AscendingChain, ChainMode,
    Irreducibility,
};
use deltachow::diff::{DiffPoly, Ranking};
use deltachow::groebner::Caps;
use deltachow::ideal::{JetRing, TruncatedIdeal};
use deltachow::script::parse_poly;
use deltachow::text::poly_text_default;

fn main() {
    let show_ring = JetRing::new(vec!["x1".into(), "x2".into()], 3);
    let show = |p: &deltachow::poly::Poly| poly_text_default(p, &show_ring);
    let vars = ["x1", "x2"];
    let ranking = Ranking::orderly(2);

    println!("=== characteristic set of (x1', x1'', x2'') in the order-2 ring ===\n");
    let ring = JetRing::new(vec!["x1".into(), "x2".into()], 2);
    let gens: Vec<_> = ["x1'", "x1''", "x2''"]
        .iter()
        .map(|s| parse_poly(s, &vars).expect("parses"))
        .collect();
    let ideal = TruncatedIdeal::with_degrevlex(ring, gens, Caps::default()).expect("ideal");
    let result = charset_with_saturation(&ideal, &ranking, 2, Caps::default()).expect("charset");
    println!("chain:");
    for e in result.chain.elements() {
        println!("  {}", show(e.poly()));
    }
    println!("irreducible: {:?}", result.irreducible);

    println!("\n=== asat strips initials: <x1'^2 - 4x1, 2x1'(x1'' - 2)> ===\n");
    let d1 = DiffPoly::new(parse_poly("x1'^2 - 4*x1", &vars).unwrap(), ranking.clone());
    let chain =
        AscendingChain::algebraic(2, vec![d1.clone(), d1.derive(1)], ranking.clone())
            .expect("valid chain");
    let saturated = asat(&chain, Caps::default()).expect("saturation");
    for g in saturated.generators() {
        println!("  {}", show(g));
    }

    println!("\n=== irreducibility verdicts ===\n");
    let verdict = |src: &str, bound: u32| {
        let chain = AscendingChain::algebraic(
            2,
            vec![DiffPoly::new(parse_poly(src, &vars).unwrap(), ranking.clone())],
            ranking.clone(),
        )
        .expect("valid chain");
        match deltachow::chain::is_irreducible_chain(&chain, bound, Caps::default())
            .expect("bounded test")
        {
            Irreducibility::Yes => format!("<{src}>: irreducible"),
            Irreducibility::No { p, q } => {
                format!("<{src}>: reducible, witnesses {} and {}", show(&p), show(&q))
            }
            Irreducibility::Unknown { bound } => {
                format!("<{src}>: unknown at witness bound {bound}")
            }
        }
    };
    println!("  {}", verdict("x1'^2 - 4*x1", 2));
    println!("  {}", verdict("x1^2", 1));
    println!("  {}", verdict("x1'^2 - x1^2", 2));

    println!("\n=== prolonging a differential chain to an algebraic one ===\n");
    let diff_chain = AscendingChain::differential(
        2,
        vec![
            DiffPoly::new(parse_poly("x1'", &vars).unwrap(), ranking.clone()),
            DiffPoly::new(parse_poly("x2''", &vars).unwrap(), ranking.clone()),
        ],
        ranking.clone(),
    )
    .expect("valid chain");
    let prolonged = diff_charset_of_chain(&diff_chain, 3).expect("prolongation");
    println!("<x1', x2''> prolonged to order 3:");
    for e in prolonged.elements() {
        println!("  {}", show(e.poly()));
    }
    assert_eq!(prolonged.mode(), ChainMode::Algebraic);

    // charset_of is the inverse direction: extract the chain from the ideal
    let back = charset_of(
        &prolonged.ideal_at_order(3, Caps::default()).expect("ideal"),
        &ranking,
    )
    .expect("charset");
    println!("round trip recovers {} elements", back.len());
}
