// Runs a verification suite the way the `covlie verify` command does and
// prints the markdown report.
//
// cargo run --release --example verify_suite -- gs Z2xZ2

use covlie::cli::{cmd_verify, Suite};
use covlie::group::FinAbGroup;

fn suite(name: &str) -> Suite {
    match name {
        "gs" => Suite::Gs,
        "covariant" => Suite::Covariant,
        "affine" => Suite::Affine,
        "delta" => Suite::Delta,
        "appendix" => Suite::Twisted,
        _ => Suite::All,
    }
}

fn run(name: &str, group: &str) -> covlie::Result<bool> {
    let s: FinAbGroup = group.parse()?;
    let reports = cmd_verify(suite(name), &s, 1, Some(2), None)?;
    for r in &reports {
        println!("{}", r.to_markdown());
    }
    Ok(reports.iter().all(|r| r.passed()))
}

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "gs".into());
    let group = args.next().unwrap_or_else(|| "Z5".into());
    std::process::exit(if run(&name, &group).unwrap() { 0 } else { 1 });
}
