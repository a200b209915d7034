//! Classify the Volterra operator `V_g f = ∫_0^z f g'` on the gaussian
//! space `v(r) = e^{-r^2}` for a few symbols, showing the compact / bounded
//! / unbounded transition as the symbol degree crosses the growth order.

use num_complex::Complex64;
use volfock::classify::{classify_volterra, ClassifyOptions};
use volfock::taylor::TaylorPolynomial;
use volfock::weight::RadialWeight;

fn main() -> Result<(), volfock::Error> {
    let v = RadialWeight::exp_power(1.0, 2.0)?;
    let opts = ClassifyOptions::default();

    let symbols: Vec<(&str, TaylorPolynomial)> = vec![
        ("g = z", TaylorPolynomial::monomial(1, Complex64::new(1.0, 0.0))),
        ("g = z^2", TaylorPolynomial::monomial(2, Complex64::new(1.0, 0.0))),
        ("g = z^3", TaylorPolynomial::monomial(3, Complex64::new(1.0, 0.0))),
        ("g = e^z (truncated)", TaylorPolynomial::exp_series(1.0, 64)),
        (
            "g = 2z^2 + iz",
            TaylorPolynomial::from_coeffs(vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(2.0, 0.0),
            ]),
        ),
    ];

    println!("source = target = {}", v.name());
    for (label, g) in &symbols {
        let result = classify_volterra(&v, &v, g, &opts)?;
        print!("{label:22} -> {:?}", result.verdict);
        if let Some(slope) = result.slope {
            print!("  (tail slope {slope:+.3})");
        }
        println!();
        for w in &result.warnings {
            println!("{:24}warning: {w}", "");
        }
    }
    Ok(())
}
