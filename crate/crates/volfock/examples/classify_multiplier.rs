//! Classify multiplication operators `M_h f = h f` between two different
//! weighted spaces. Multipliers into a smaller space must fight the weight
//! ratio `w/v`, so the same symbol can flip verdict when the spaces swap.

use num_complex::Complex64;
use volfock::classify::{classify_multiplier, ClassifyOptions};
use volfock::taylor::TaylorPolynomial;
use volfock::weight::RadialWeight;

fn main() -> Result<(), volfock::Error> {
    let gaussian = RadialWeight::exp_power(1.0, 2.0)?;
    let exponential = RadialWeight::exp_power(1.0, 1.0)?;
    let opts = ClassifyOptions::default();

    let one = TaylorPolynomial::one();
    let z = TaylorPolynomial::monomial(1, Complex64::new(1.0, 0.0));

    let cases = [
        ("h = 1", &one, &gaussian, &gaussian),
        ("h = z", &z, &gaussian, &gaussian),
        ("h = 1", &one, &exponential, &gaussian),
        ("h = 1", &one, &gaussian, &exponential),
        ("h = z", &z, &gaussian, &exponential),
    ];

    for (label, h, source, target) in cases {
        let result = classify_multiplier(source, target, h, &opts)?;
        println!(
            "{label:6} : {:24} -> {:24} {:?} (slope {:+.3})",
            source.name(),
            target.name(),
            result.verdict,
            result.slope.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
