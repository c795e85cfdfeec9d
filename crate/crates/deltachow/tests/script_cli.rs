//! End-to-end tests of the `deltachow` binary: golden JSON reports, exit
//! codes, determinism, and re-parsability of result polynomials.

use std::process::{Command, Output};

use serde_json::{json, Value};

use deltachow::script::parse_poly;

fn run(args: &[&str]) -> (Value, Output) {
    let output = Command::new(env!("CARGO_BIN_EXE_deltachow"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(output.stdout.clone()).expect("utf-8");
    let report: Value = serde_json::from_str(stdout.trim()).expect("stdout is one JSON report");
    (report, output)
}

fn run_inline(script: &str) -> (Value, i32) {
    let (report, output) = run(&["-e", script]);
    (report, output.status.code().expect("exit code"))
}

#[test]
fn dchow_golden_report() {
    let (report, code) = run_inline("vars y; poly f = y^2*y' + 1; dchow f d=0 h=1;");
    assert_eq!(code, 0, "{report}");
    assert_eq!(
        report["result"]["chow_form"],
        json!("u00^2*u01*u00' - u00^3*u01' - u01^4")
    );
    assert_eq!(report["result"]["index"], json!([0, 1, 1, 4]));
    assert_eq!(
        report["result"]["coordinates"],
        json!([
            {"coefficient": "1", "monomial": "u00^2*u01*u00'"},
            {"coefficient": "-1", "monomial": "u00^3*u01'"},
            {"coefficient": "-1", "monomial": "u01^4"},
        ])
    );
    assert_eq!(report["schema_version"], json!("1"));
    assert_eq!(report["command"], json!("dchow"));
    assert_eq!(report["inputs"]["polys"]["f"], json!("y^2*y' + 1"));
    assert!(report["timings_ms"]["total"].is_number());
}

#[test]
fn kolchin_golden_report() {
    let (report, code) =
        run_inline("vars x1, x2; poly a = x1'; poly b = x2''; kolchin a b");
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"], json!({"d": 0, "h": 3, "omega": "3"}));
}

#[test]
fn admissible_pair_reports() {
    let (no, code) = run_inline("vars x1, x2; poly a = x1'; poly b = x2''; admissible a b h=2");
    assert_eq!(code, 0);
    assert_eq!(no["result"], json!(false));
    let (yes, code) = run_inline(
        "vars x1, x2; poly a = x1'; poly b = x1''; poly c = x2''; admissible a b c h=2",
    );
    assert_eq!(code, 0);
    assert_eq!(yes["result"], json!(true));
}

#[test]
fn chow_of_a_point() {
    let (report, code) = run_inline(
        "vars y1, y2; poly f = y1 - 1; poly g = y2 - 2; chow f g d=0",
    );
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["chow_form"], json!("v00 + v01 + 2*v02"));
    assert_eq!(report["result"]["degree"], json!(1));
}

#[test]
fn derive_and_reduce_commands() {
    let (report, code) = run_inline("vars y; poly f = y''^2 - y; derive f k=1");
    assert_eq!(code, 0);
    assert_eq!(report["result"]["result"], json!("2*y''*y''' - y'"));

    let (report, code) =
        run_inline("vars x; poly g = x'' - 2; poly a = x'^2 - 4*x; reduce g a");
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["remainder"], json!("0"));
    assert_eq!(report["result"]["multiplier"], json!("2*x'"));
    assert_eq!(report["result"]["verified"], json!(true));
}

#[test]
fn bh_and_dominant_commands() {
    let (report, code) =
        run_inline("vars x1, x2; poly a = x1'; poly b = x2''; bh a b h=3");
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["dimension"], json!(3));
    assert_eq!(report["result"]["degree"], json!(1));
    let gens = report["result"]["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 5);

    let (report, code) = run_inline(
        "vars x1, x2; poly a = x1'; poly b = x1''; poly c = D(x1,3); \
         poly d = x2''; poly e = D(x2,3); dominant a b c d e h=3",
    );
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["d"], json!(0));
    assert_eq!(report["result"]["h"], json!(3));
    assert_eq!(report["result"]["omega"], json!("3"));
    assert_eq!(report["result"]["diff_chain"], json!(["x1'", "x2''"]));
}

#[test]
fn prolongseq_modes() {
    let (exact, code) =
        run_inline("vars x; poly f = x'^2 - 4*x; poly g = x; prolongseq [f] [g] l=2");
    assert_eq!(code, 0, "{exact}");
    assert_eq!(exact["result"]["exact"], json!(true));

    let (naive, code) = run_inline("vars x; poly f = x'^2 - 4*x; prolongseq f l=2 mode=naive");
    assert_eq!(code, 0, "{naive}");
    assert_eq!(naive["result"]["exact"], json!(false));
    assert_eq!(
        naive["result"]["generators"],
        json!(["x'^2 - 4*x", "2*x'*x'' - 4*x'"])
    );
}

#[test]
fn index_and_bound_commands() {
    let (report, code) = run_inline(
        "vars u00, u01; poly F = u00^2*u01*u00' - u00^3*u01' - u01^4; index F d=0",
    );
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["index"], json!([0, 1, 1, 4]));

    let (report, code) = run_inline("bound n=1 d=0 h=1 m=4");
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"], json!({"lower": "2", "upper": "64"}));
}

#[test]
fn cyclechow_command() {
    let (report, code) = run_inline("vars y; poly f = y; cyclechow f h=0");
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["result"]["chow_form"], json!("v00"));
    assert_eq!(report["result"]["cycle_dimension"], json!(0));
}

#[test]
fn exit_codes() {
    // 0: success
    let (_, code) = run_inline("vars x; poly f = x; derive f");
    assert_eq!(code, 0);
    // 1: domain error (charset of the unit ideal)
    let (report, code) = run_inline("vars x; poly f = x*0 + 1; charset f");
    assert_eq!(code, 1, "{report}");
    assert_eq!(report["error"]["kind"], json!("domain"));
    // 2: syntax error with position
    let (report, code) = run_inline("vars x; poly f = x ⊕ 1; derive f");
    assert_eq!(code, 2);
    assert_eq!(report["error"]["kind"], json!("syntax"));
    assert_eq!(report["error"]["line"], json!(1));
    assert_eq!(report["error"]["col"], json!(20));
    // 2: unknown command
    let (report, code) = run_inline("vars x; poly f = x; frobnicate f");
    assert_eq!(code, 2);
    assert!(report["error"]["message"]
        .as_str()
        .unwrap()
        .contains("unknown command"));
    // 3: resource limit
    let (report, code, ) = {
        let (r, out) = run(&[
            "--degree-cap",
            "2",
            "-e",
            "vars x, y; poly f = x^2 - y^3*x^3; poly g = y*x^2 - 1; charset f g",
        ]);
        (r, out.status.code().unwrap(), )
    };
    assert_eq!(code, 3, "{report}");
    assert_eq!(report["error"]["kind"], json!("resource-limit"));
}

#[test]
fn file_input_and_pretty_flag() {
    let dir = std::env::temp_dir().join("deltachow-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wronskian.dc");
    std::fs::write(&path, "vars y;\npoly f = y';\n# the Wronskian case\ndchow f d=0 h=1;\n")
        .unwrap();
    let (report, output) = run(&[path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(report["result"]["chow_form"], json!("u01*u00' - u00*u01'"));
    assert_eq!(report["result"]["index"], json!([0, 1, 1, 2]));

    let (pretty, output) = run(&["--pretty", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(pretty["result"], report["result"]);
    // pretty output spans many lines
    assert!(String::from_utf8(output.stdout).unwrap().lines().count() > 3);
}

#[test]
fn reports_are_deterministic() {
    let script = "vars y; poly f = y^2*y' + 1; dchow f d=0 h=1;";
    let (a, _) = run_inline(script);
    let (b, _) = run_inline(script);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["inputs"], b["inputs"]);
    // byte-identical result rendering
    assert_eq!(
        serde_json::to_string(&a["result"]).unwrap(),
        serde_json::to_string(&b["result"]).unwrap()
    );
}

#[test]
fn result_polynomials_reparse() {
    let (report, _) = run_inline("vars y; poly f = y^2*y' + 1; dchow f d=0 h=1;");
    let text = report["result"]["chow_form"].as_str().unwrap();
    let parsed = parse_poly(text, &["u00", "u01"]).expect("result re-parses");
    let expected = parse_poly("u00^2*u01*u00' - u00^3*u01' - u01^4", &["u00", "u01"]).unwrap();
    assert_eq!(parsed, expected);

    let (report, _) = run_inline("vars x; poly f = x'^2 - 4*x; poly g = x; prolongseq [f] [g] l=2");
    for gen in report["result"]["generators"].as_array().unwrap() {
        let text = gen.as_str().unwrap();
        parse_poly(text, &["x"]).expect("generator re-parses");
    }

    // jobs flag changes nothing observable
    let (par, out) = run(&[
        "--jobs",
        "2",
        "-e",
        "vars x; poly f = x'^2 - 4*x; poly g = x; prolongseq [f] [g] l=2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(par["result"], report["result"]);
}
