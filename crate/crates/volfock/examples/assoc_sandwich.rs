//! Build the monomial-norm envelope `v_M(r) = min_n ||z^n|| r^{-n}` of a
//! weight and show how it sandwiches the weight from above: the gap
//! `log v_M - log v` is nonnegative, pinches to zero where some monomial
//! norm is attained, and stays moderate in between.

use volfock::envelope::MonomialNormTable;
use volfock::weight::RadialWeight;

fn main() -> Result<(), volfock::Error> {
    let v = RadialWeight::exp_power(1.0, 2.0)?;
    let size = MonomialNormTable::suggested_size(&v, 10.0);
    let table = MonomialNormTable::build(&v, size)?;

    println!("weight: {}, table degrees 0..={}", v.name(), table.max_degree());
    println!("{:>8} {:>14} {:>14} {:>12}", "r", "log v", "log v_M", "gap");

    let mut worst = 0.0f64;
    for i in 0..=40 {
        let r = 10.0 * i as f64 / 40.0;
        let lv = v.log_value(r);
        let lm = table.envelope_log(r);
        let gap = lm - lv;
        worst = worst.max(gap);
        println!("{r:>8.3} {lv:>14.6} {lm:>14.6} {gap:>12.6}");
    }

    println!();
    println!("largest gap on [0, 10]: {worst:.6}");
    println!("gap at r = 1: {:.2e} (the degree-2 norm binds there)", table.envelope_log(1.0) - v.log_value(1.0));
    Ok(())
}
