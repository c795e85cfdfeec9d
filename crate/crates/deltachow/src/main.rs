//! Thin CLI over the script runner: read a script from a file or `-e`,
//! emit one JSON report on stdout, exit 0/1/2/3
//! (success / domain error / syntax error / resource limit).

use std::process::ExitCode;

use deltachow::script::{run_source, Config};

const USAGE: &str = "usage: deltachow [options] <script-file>
       deltachow [options] -e \"<inline script>\"

options:
  -e <script>                 run an inline script instead of a file
  --pretty                    pretty-print the JSON report
  --degree-cap <n>            abort computations above this total degree
  --term-cap <n>              abort computations above this many terms
  --irreducibility-bound <n>  witness degree bound for chain irreducibility
  --jobs <n>                  threads for per-component computations
";

fn main() -> ExitCode {
    let mut args = std::env::args().skip(1);
    let mut config = Config::default();
    let mut pretty = false;
    let mut inline: Option<String> = None;
    let mut file: Option<String> = None;

    let next_value = |args: &mut dyn Iterator<Item = String>, flag: &str| -> Result<String, String> {
        args.next().ok_or_else(|| format!("{flag} needs a value"))
    };

    while let Some(arg) = args.next() {
        let parsed: Result<(), String> = match arg.as_str() {
            "-e" => next_value(&mut args, "-e").map(|v| inline = Some(v)),
            "--pretty" => {
                pretty = true;
                Ok(())
            }
            "--degree-cap" => next_value(&mut args, "--degree-cap").and_then(|v| {
                v.parse::<u32>()
                    .map(|n| config.caps.degree = n)
                    .map_err(|_| "--degree-cap needs an integer".into())
            }),
            "--term-cap" => next_value(&mut args, "--term-cap").and_then(|v| {
                v.parse::<usize>()
                    .map(|n| config.caps.terms = n)
                    .map_err(|_| "--term-cap needs an integer".into())
            }),
            "--irreducibility-bound" => {
                next_value(&mut args, "--irreducibility-bound").and_then(|v| {
                    v.parse::<u32>()
                        .map(|n| config.irreducibility_bound = n)
                        .map_err(|_| "--irreducibility-bound needs an integer".into())
                })
            }
            "--jobs" => next_value(&mut args, "--jobs").and_then(|v| {
                v.parse::<usize>()
                    .map(|n| config.jobs = n.max(1))
                    .map_err(|_| "--jobs needs an integer".into())
            }),
            "--help" | "-h" => {
                print!("{USAGE}");
                return ExitCode::SUCCESS;
            }
            other if file.is_none() && !other.starts_with('-') => {
                file = Some(other.to_string());
                Ok(())
            }
            other => Err(format!("unknown argument '{other}'")),
        };
        if let Err(message) = parsed {
            eprintln!("deltachow: {message}");
            eprint!("{USAGE}");
            return ExitCode::from(2);
        }
    }

    let source = match (inline, file) {
        (Some(s), None) => s,
        (None, Some(path)) => match std::fs::read_to_string(&path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("deltachow: cannot read {path}: {e}");
                return ExitCode::from(2);
            }
        },
        _ => {
            eprint!("{USAGE}");
            return ExitCode::from(2);
        }
    };

    let (report, code) = run_source(&source, config);
    let rendered = if pretty {
        serde_json::to_string_pretty(&report).expect("report serializes")
    } else {
        report.to_string()
    };
    println!("{rendered}");
    ExitCode::from(code as u8)
}
