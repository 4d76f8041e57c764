// Generating-function identities of D_S, compared coefficient by coefficient
// with the component bracket. Z4 has elements of order 2, so the derivative
// terms fire away from zero.

use covlie::affine::delta::{check_tilde_relation, check_two_index_relation};
use covlie::group::{make_character, FinAbGroup};

fn run() -> covlie::Result<()> {
    for n in [3, 4] {
        let chi = make_character(&FinAbGroup::cyclic(n), 1)?;
        for c in [check_tilde_relation(&chi, 3)?, check_two_index_relation(&chi, 3)?] {
            println!(
                "Z{n} {}: {:?}, {} coefficients, {} on the order-2 branch",
                c.check.name, c.check.status, c.check.tuple_count, c.branch_tuples
            );
        }
    }
    Ok(())
}

fn main() {
    run().unwrap();
}
