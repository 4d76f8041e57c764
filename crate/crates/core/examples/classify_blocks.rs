// Simple types of the blocks of g_S / I for small groups.

use covlie::algebras::classify;
use covlie::group::FinAbGroup;

fn run() -> covlie::Result<()> {
    for name in ["Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z2xZ4"] {
        let s: FinAbGroup = name.parse()?;
        let rec = classify(&s)?;
        println!(
            "{:<6} dim g_S = {:>3}  dim I = {:>2}  {}",
            s.name(),
            rec.g_s_dim,
            rec.ideal_i_dim,
            rec.summary()
        );
    }
    println!();
    print!("{}", classify(&FinAbGroup::cyclic(6))?.to_markdown());
    Ok(())
}

fn main() {
    run().unwrap();
}
