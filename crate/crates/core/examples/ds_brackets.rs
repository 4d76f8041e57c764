// Brackets in D_S, the q-Virasoro-type algebra attached to a character.

use covlie::affine::DSAlgebra;
use covlie::group::{make_character, FinAbGroup};

fn run() -> covlie::Result<()> {
    let s = FinAbGroup::cyclic(5);
    let chi = make_character(&s, 1)?;
    let ds = DSAlgebra::new(&chi, 3);
    println!("D_S on degrees -3..3 has dimension {}", ds.dim());
    for (a, m, b, n) in [(1, 1, 1, -1), (1, -2, 1, 2), (2, 1, 2, 1), (1, 2, 2, -2)] {
        let x = ds.bracket_generators(a, m, b, n)?;
        println!("[D^{a}({m}), D^{b}({n})] = {}", x.describe(&s));
    }
    let x = ds.d_tilde(1, 0)?;
    println!("D~^1(0) = {}", x.describe(&s));
    for c in [ds.check_antisymmetry()?, ds.check_jacobi()?] {
        println!("{}: {:?} over {} tuples", c.name, c.status, c.tuple_count);
    }
    Ok(())
}

fn main() {
    run().unwrap();
}
