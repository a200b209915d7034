//! Measure the two-sided norm equivalence `||f|| ≍ |f(0)| + ||f'||` between
//! a weighted space and its derivative companion on seeded random
//! polynomials, and report the empirical equivalence constant.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use volfock::classify::norm_equivalence_ratios;
use volfock::taylor::TaylorPolynomial;
use volfock::weight::{growth_from_weight, RadialWeight};

fn main() -> Result<(), volfock::Error> {
    let v = RadialWeight::exp_power(1.0, 2.0)?;
    let phi = growth_from_weight(&v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(42);

    println!("space: {} with derivative companion weight", v.name());
    println!("{:>8} {:>6} {:>22} {:>22}", "draw", "deg", "||f'||_u / ||f||_w", "||f||_w / seminorm");

    let mut envelope = 0.0f64;
    for i in 0..20 {
        let degree = rng.gen_range(1..=20);
        let coeffs: Vec<Complex64> = (0..=degree)
            .map(|_| {
                let radius = rng.gen::<f64>().sqrt();
                let angle = rng.gen::<f64>() * std::f64::consts::TAU;
                Complex64::from_polar(radius, angle)
            })
            .collect();
        let f = TaylorPolynomial::from_coeffs(coeffs);

        let ratios = norm_equivalence_ratios(&phi, &f, 20.0, 400)?;
        for x in [ratios.deriv_over_value, ratios.value_over_seminorm] {
            envelope = envelope.max(x).max(1.0 / x);
        }
        println!(
            "{:>8} {:>6} {:>22.12} {:>22.12}",
            format!("poly_{i:02}"),
            degree,
            ratios.deriv_over_value,
            ratios.value_over_seminorm
        );
    }

    println!();
    println!("envelope constant C = {envelope:.12} (both ratios inside [1/C, C])");
    Ok(())
}
