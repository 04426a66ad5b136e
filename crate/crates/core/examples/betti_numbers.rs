// Even Betti numbers of BG: monomials in generators of degree 2 d_j.
//
// `cargo run --example betti_numbers`

use chevalley::{betti, lookup, parse_spec};

pub fn run_example() -> chevalley::Result<Vec<String>> {
    let mut lines = Vec::new();
    for name in ["T1", "A2", "G2", "E8"] {
        let b = betti(&lookup(parse_spec(name)?), 12);
        lines.push(format!("{name}: b_0, b_2, .., b_24 = {b:?}"));
    }
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> chevalley::Result<()> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
