// Zeta function of BG from the exponential definition and from the Euler product.
//
// `cargo run --example zeta_functions`

use chevalley::exact::decimal_approx;
use chevalley::{euler_exp_discrepancy, gm_functional_equation_check, lookup, parse_spec, zeta_exp, PrimePowerQ};

pub fn run_example() -> chevalley::Result<Vec<String>> {
    let mut lines = Vec::new();
    let q = PrimePowerQ::new(2)?;
    let gm = lookup(parse_spec("T1")?);
    let z = zeta_exp(&gm, q, 5)?;
    let coeffs: Vec<String> = z.coeffs().iter().map(|a| a.to_string()).collect();
    lines.push(format!("zeta_BGm(t) over F_2 = {} + ...", coeffs.join(", ")));
    lines.push(format!("functional equation holds through t^16: {}", gm_functional_equation_check(q, 16)?));

    let g2 = lookup(parse_spec("G2")?);
    for w in [20, 40, 60] {
        let d = euler_exp_discrepancy(&g2, q, 3, w)?;
        let shown: Vec<String> = d.iter().map(|x| decimal_approx(&x.discrepancy, 4)).collect();
        lines.push(format!("G2, W = {w}: |euler - exp| = [{}]", shown.join(", ")));
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
