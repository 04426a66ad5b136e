// Orders of finite groups of Lie type from Steinberg's formula.
//
// `cargo run --example group_orders`

use chevalley::{group_order, lookup, parse_spec, validate_q, PrimePowerQ};

pub fn run_example() -> chevalley::Result<Vec<String>> {
    let mut lines = Vec::new();
    for name in ["A1", "A2", "B2", "G2", "F4", "E8", "T2"] {
        let datum = lookup(parse_spec(name)?);
        for q in [2, 3, 4] {
            let q = PrimePowerQ::new(q)?;
            validate_q(datum.spec, q)?;
            lines.push(format!("#{name}(F_{q}) = {}", group_order(&datum, q, 1)?));
        }
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
