// Exact arithmetic with roots of unity and q-integers.

use covlie::cyclotomic::{q_integer, CycNumber};

fn run() -> covlie::Result<()> {
    let z5 = CycNumber::root_of_unity(5, 1);
    let sum = (1..5).fold(CycNumber::zero(), |acc, k| &acc + &z5.pow(k).unwrap());
    println!("zeta_5 + ... + zeta_5^4 = {sum}");

    // zeta_3 lives inside Q(zeta_12)
    let z3 = CycNumber::root_of_unity(3, 1);
    println!("zeta_3 in Q(zeta_12): {}", z3.to_string_in(12)?);

    for q in [
        CycNumber::one(),
        CycNumber::from_i64(-1),
        CycNumber::root_of_unity(8, 1),
    ] {
        let vals: Vec<String> = (-3..=3)
            .map(|n| q_integer(n, &q).map(|v| v.to_string()))
            .collect::<Result<_, _>>()?;
        println!("[n]_q for q = {q}, n = -3..3: {}", vals.join(", "));
    }
    Ok(())
}

fn main() {
    run().unwrap();
}
