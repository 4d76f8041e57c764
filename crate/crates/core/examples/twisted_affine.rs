// The shift automorphism of so(3) as exp(2 pi i/3 ad h), the twisted affine
// algebra it defines, and the isomorphism psi onto the untwisted one.

use covlie::affine::twisted::{
    chain_target, find_grading_element, identification_chain, psi_twisted_untwisted_iso,
};
use covlie::group::{make_character, FinAbGroup};

fn run() -> covlie::Result<()> {
    let chi = make_character(&FinAbGroup::cyclic(3), 1)?;
    let t = chain_target(&chi)?;
    let h = find_grading_element(&t.algebra, &t.cartan, &t.sigma, 3)?;
    println!("h = {}", t.algebra.describe(&h));

    let (tw, _psi, checks) = psi_twisted_untwisted_iso(&t.algebra, &t.form, &h, 3, 2)?;
    println!("ad h eigenvalues: {:?}", tw.eigen.eigenvalues);
    for c in &checks {
        println!("  {:<28} {:?}", c.name, c.status);
    }

    let chain = identification_chain(&chi, 3, Some(h))?;
    println!("identification chain passes: {}", chain.passed());
    Ok(())
}

fn main() {
    run().unwrap();
}
