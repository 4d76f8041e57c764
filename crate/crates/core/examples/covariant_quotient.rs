// Covariant algebras: g_S as the quotient of the commutator algebra K by
// <-theta>, and the fixed-point comparison map phi.

use covlie::algebras::{build_g_s, k_lie_algebra, minus_theta};
use covlie::covariant::{covariant_algebra, phi_fixed_point_iso, GroupActionOnLie};
use covlie::group::FinAbGroup;

fn run() -> covlie::Result<()> {
    let s = FinAbGroup::cyclic(5);
    let k = k_lie_algebra(&s);
    let g = GroupActionOnLie::new(&k, vec![minus_theta(&s)])?;
    let cov = covariant_algebra(&k, &g, None)?;
    let gs = build_g_s(&s)?;
    println!("dim K = {}, |G| = {}", k.dim(), g.order());
    println!("dim K/G = {}, dim g_S = {}", cov.algebra.dim(), gs.dim());
    println!(
        "I_G equals the defining ideal of g_S: {}",
        cov.ideal.same_as(&gs.j)
    );

    let phi = phi_fixed_point_iso(&k, &g, &cov)?;
    println!("dim K^G = {}", phi.fixed.dim());
    for c in cov.checks.iter().chain(&phi.checks) {
        println!("  {:<36} {:?}", c.name, c.status);
    }
    Ok(())
}

fn main() {
    run().unwrap();
}
