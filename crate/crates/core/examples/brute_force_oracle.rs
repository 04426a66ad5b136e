// Brute-force matrix-group orders next to the formula.
//
// `cargo run --release --example brute_force_oracle`

use chevalley::oracle::{order_so, order_sp, order_sl};
use chevalley::{group_order, lookup, parse_spec, PrimePowerQ};

pub fn run_example() -> chevalley::Result<Vec<String>> {
    let mut lines = Vec::new();
    let cases: [(&str, u64, &str, usize); 6] = [
        ("A1", 4, "SL", 2),
        ("A1", 7, "SL", 2),
        ("A2", 3, "SL", 3),
        ("C2", 3, "Sp", 4),
        ("B1", 5, "SO", 3),
        ("B1", 7, "SO", 3),
    ];
    for (name, q, family, n) in cases {
        let brute = match family {
            "SL" => order_sl(n, q)?,
            "Sp" => order_sp(n, q)?,
            _ => order_so(n, q)?,
        };
        let formula = group_order(&lookup(parse_spec(name)?), PrimePowerQ::new(q)?, 1)?;
        lines.push(format!("{family}_{n}(F_{q}) = {brute}; {name} formula gives {formula}"));
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
