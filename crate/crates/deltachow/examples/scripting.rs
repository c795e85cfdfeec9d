//! The scripting surface programmatically: run small session scripts and
//! read the JSON reports (same machinery as the `deltachow` binary).

use deltachow::script::{run_source, Config};

fn main() {
    let scripts = [
        "vars y; poly f = y^2*y' + 1; dchow f d=0 h=1;",
        "vars x1, x2; poly a = x1'; poly b = x2''; kolchin a b",
        "vars x1, x2; poly a = x1'; poly b = x2''; admissible a b h=2",
        "vars x; poly f = x'^2 - 4*x; poly g = x; prolongseq [f] [g] l=2",
        "vars u00, u01; poly F = u00^2*u01*u00' - u00^3*u01' - u01^4; index F d=0",
        "bound n=1 d=0 h=1 m=4",
    ];
    for src in scripts {
        let (report, code) = run_source(src, Config::default());
        println!("$ deltachow -e '{src}'");
        println!("exit {code}");
        println!("{}\n", serde_json::to_string_pretty(&report).expect("serializes"));
    }
}
