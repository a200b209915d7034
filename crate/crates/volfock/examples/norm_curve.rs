//! Compute a weighted sup norm through the coefficient majorant and print
//! the objective curve `log M(f, r) + log v(r)` it maximizes. The curve
//! makes visible why the computation is safe in the log domain: both terms
//! are huge with opposite signs, yet their sum stays small.

use num_complex::Complex64;
use volfock::taylor::{norm_curve, norm_grid, weighted_sup_norm_log, TaylorPolynomial};
use volfock::weight::RadialWeight;

fn main() -> Result<(), volfock::Error> {
    let v = RadialWeight::exp_power(1.0, 2.0)?;
    let f = TaylorPolynomial::from_coeffs(vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(-0.5, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(3.0, 0.0),
    ]);

    let grid = norm_grid(25.0, 60);
    println!("{:>12} {:>14} {:>14} {:>12}", "r", "log_majorant", "log_weight", "sum");
    for s in norm_curve(&f, &v, &grid) {
        println!(
            "{:>12.4} {:>14.4} {:>14.4} {:>12.4}",
            s.r, s.log_majorant, s.log_weight, s.sum
        );
    }

    let norm = weighted_sup_norm_log(&f, &v, &norm_grid(25.0, 600))?;
    println!();
    println!("log ||f||_v = {norm:.12}   (||f||_v = {:.6})", norm.exp());

    // cross-check against the gaussian closed form
    // log ||z^n|| = (n/2)(log(n/2) - 1), peak at r = sqrt(n/2)
    let z5 = TaylorPolynomial::monomial(5, Complex64::new(1.0, 0.0));
    let got = weighted_sup_norm_log(&z5, &v, &norm_grid(25.0, 600))?;
    let expect = 2.5 * ((2.5f64).ln() - 1.0);
    println!("log ||z^5||_v = {got:.12}, closed form {expect:.12}");
    Ok(())
}
