// Builds gl_S, A_S^tau and g_S for a cyclic group and checks the map pi
// between the last two.
//
// cargo run --example build_algebras -- Z7

use covlie::algebras::build_all;
use covlie::group::FinAbGroup;
use covlie::liealg::{check_jacobi, is_isomorphism};

fn run(group: &str) -> covlie::Result<()> {
    let s: FinAbGroup = group.parse()?;
    let p = build_all(&s)?;
    println!("S = {}", s.name());
    println!("dim gl_S = {}", p.gl.algebra.dim());
    println!("dim A_S^tau = {}", p.ast.algebra.dim());
    println!("dim g_S = {}", p.gs.dim());
    println!("g_S jacobi: {:?}", check_jacobi(&p.gs.algebra).status);
    println!(
        "pi: g_S -> A_S^tau isomorphism: {:?}",
        is_isomorphism(&p.pi, &p.gs.algebra, &p.ast.algebra).status
    );
    println!("dim I = {}", p.ideal.ideal.dim());
    Ok(())
}

fn main() {
    let group = std::env::args().nth(1).unwrap_or_else(|| "Z5".into());
    run(&group).unwrap();
}
