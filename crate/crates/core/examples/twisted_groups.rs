// Steinberg groups: the twist shows up as roots of unity on the invariants.
//
// `cargo run --example twisted_groups`

use chevalley::zeta::{euler_sign, zeta_euler_truncated};
use chevalley::{group_order, lookup, parse_spec, validate_q, PrimePowerQ};

pub fn run_example() -> chevalley::Result<Vec<String>> {
    let mut lines = Vec::new();
    for (name, q) in [("2A2", 4), ("2A3", 9), ("2D4", 4), ("2E6", 4), ("3D4", 8)] {
        let datum = lookup(parse_spec(name)?);
        let q = PrimePowerQ::new(q)?;
        validate_q(datum.spec, q)?;
        let eps: Vec<String> = datum
            .eigenvalues
            .iter()
            .map(|e| format!("{}/{}", e.numerator(), e.order()))
            .collect();
        lines.push(format!(
            "{name}: degrees {:?}, eigenvalue angles [{}], #G(F_{q}) = {}",
            datum.degrees,
            eps.join(", "),
            group_order(&datum, q, 1)?
        ));
    }
    // the conjugate ξ-factors of ³D_4 pair off, so the product is rational
    let d = lookup(parse_spec("3D4")?);
    let product = zeta_euler_truncated(&d, PrimePowerQ::new(8)?, 2, 40)?;
    lines.push(format!(
        "3D4 Euler product over {} factors, a_1 = {}; sign at k = (1,2,1,1) is {:?}",
        product.factor_count,
        product.series.coeff(1),
        euler_sign(&d, &[1, 2, 1, 1])
    ));
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> chevalley::Result<()> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
