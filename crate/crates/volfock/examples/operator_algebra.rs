//! The operator algebra on truncated Taylor series: differentiation D,
//! integration J, multiplication, and the Volterra operator, together with
//! the identities that tie them together.

use num_complex::Complex64;
use volfock::taylor::{volterra, TaylorPolynomial};

fn max_coeff_distance(a: &TaylorPolynomial, b: &TaylorPolynomial) -> f64 {
    let n = a.coeffs().len().max(b.coeffs().len());
    let zero = Complex64::new(0.0, 0.0);
    (0..n)
        .map(|i| {
            let ca = a.coeffs().get(i).copied().unwrap_or(zero);
            let cb = b.coeffs().get(i).copied().unwrap_or(zero);
            (ca - cb).norm()
        })
        .fold(0.0, f64::max)
}

fn main() {
    let f = TaylorPolynomial::from_coeffs(vec![
        Complex64::new(2.0, -1.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, 3.0),
        Complex64::new(-1.0, 0.25),
    ]);
    let g = TaylorPolynomial::exp_series(0.5, 24);
    let n = 32;

    // D J f = f: integrating then differentiating returns the input
    let dj = f.integrate().differentiate();
    println!("max |D J f - f|          = {:.3e}", max_coeff_distance(&dj, &f));

    // J D f = f - f(0): the constant term is the only loss
    let jd = f.differentiate().integrate();
    let mut dropped = f.clone();
    let mut coeffs = dropped.coeffs().to_vec();
    coeffs[0] = Complex64::new(0.0, 0.0);
    dropped = TaylorPolynomial::from_coeffs(coeffs);
    println!("max |J D f - (f - f(0))| = {:.3e}", max_coeff_distance(&jd, &dropped));

    // D (V_g f) = g' f: the Volterra operator followed by differentiation
    // is multiplication by g'
    let lhs = volterra(&g, &f, n).differentiate();
    let rhs = f.multiply(&g.differentiate(), n - 1);
    println!("max |D V_g f - g' f|     = {:.3e}", max_coeff_distance(&lhs, &rhs));

    // V_g is additive in the symbol
    let g2 = TaylorPolynomial::from_real(&[0.0, 1.0, -2.0, 0.0, 0.5]);
    let sum_sym = {
        let mut coeffs = g.coeffs().to_vec();
        for (i, c) in g2.coeffs().iter().enumerate() {
            if i < coeffs.len() {
                coeffs[i] += c;
            } else {
                coeffs.push(*c);
            }
        }
        TaylorPolynomial::from_coeffs(coeffs)
    };
    let joint = volterra(&sum_sym, &f, n);
    let split = {
        let a = volterra(&g, &f, n);
        let b = volterra(&g2, &f, n);
        let mut coeffs = a.coeffs().to_vec();
        for (i, c) in b.coeffs().iter().enumerate() {
            if i < coeffs.len() {
                coeffs[i] += c;
            } else {
                coeffs.push(*c);
            }
        }
        TaylorPolynomial::from_coeffs(coeffs)
    };
    println!("max |V_(g1+g2) - V_g1 - V_g2| = {:.3e}", max_coeff_distance(&joint, &split));
}
