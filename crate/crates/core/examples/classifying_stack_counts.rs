// `#BG(F_q) = 1/#G(F_q)` and its multi-sum expansion with an exact tail bound.
//
// `cargo run --example classifying_stack_counts`

use chevalley::counting::{abs_diff, CrossCheck};
use chevalley::exact::decimal_approx;
use chevalley::{lookup, parse_spec, stacky_count, stacky_partial_sum, PrimePowerQ};

pub fn run_example() -> chevalley::Result<Vec<String>> {
    let g2 = lookup(parse_spec("G2")?);
    let q = PrimePowerQ::new(2)?;
    let exact = stacky_count(&g2, q, 1)?;
    let mut lines = vec![format!("#BG_2(F_2) = {exact}")];
    for cutoff in [0, 1, 2, 5, 10, 20, 40] {
        let sum = stacky_partial_sum(&g2, q, cutoff)?;
        let checked = match sum.cross_check {
            CrossCheck::Agreed => "nested sum agrees",
            CrossCheck::Skipped => "nested sum skipped",
        };
        lines.push(format!(
            "N = {cutoff:>2}: |exact - partial| = {}  tail bound = {}  ({checked})",
            decimal_approx(&abs_diff(&exact, &sum.partial), 6),
            decimal_approx(&sum.tail_bound, 6),
        ));
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
