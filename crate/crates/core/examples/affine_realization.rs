// D_S as the S-covariant algebra of the affine algebra of g_S, checked on a
// degree window.
//
// cargo run --release --example affine_realization -- 5 3

use covlie::affine::realization::verify_realization;
use covlie::group::{make_character, FinAbGroup};

fn run(order: u64, window: i64) -> covlie::Result<bool> {
    let chi = make_character(&FinAbGroup::cyclic(order), 1)?;
    let report = verify_realization(&chi, window)?;
    print!("{}", report.to_markdown());
    Ok(report.passed())
}

fn main() {
    let mut args = std::env::args().skip(1);
    let order = args.next().map(|a| a.parse().expect("order")).unwrap_or(3);
    let window = args.next().map(|a| a.parse().expect("window")).unwrap_or(2);
    assert!(run(order, window).unwrap());
}
