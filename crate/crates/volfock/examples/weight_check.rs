//! Run every hypothesis check on a small catalog of weights and print the
//! verdicts with their sub-checks. This is the library-level view of what
//! `volfock weight-check` does for a config file.

use volfock::checks::{
    check_differentiation_condition, check_essentialness, check_target_weight_conditions,
    check_weight_axioms, default_axiom_grid, default_differentiation_grid,
    default_structural_grid, ConditionReport,
};
use volfock::weight::{growth_from_weight, RadialWeight};

fn print_report(report: &ConditionReport) {
    let tag = if report.passed { "PASS" } else { "FAIL" };
    println!("  {tag} {} (estimate {:.6})", report.name, report.sup_or_lim_estimate);
    for sub in &report.sub_checks {
        let tag = if sub.passed { "pass" } else { "FAIL" };
        match sub.estimate {
            Some(e) => println!("    [{tag}] {}: {e:.6}", sub.name),
            None => println!("    [{tag}] {}", sub.name),
        }
    }
}

fn main() -> Result<(), volfock::Error> {
    let catalog = [
        RadialWeight::exp_power(1.0, 2.0)?,
        RadialWeight::exp_power(0.5, 1.0)?,
        RadialWeight::exp_power_log(1.0, 2.0, 1.0, 1.0)?,
        RadialWeight::log_power(2.0)?,
        RadialWeight::log_power(1.5)?,
        RadialWeight::hardy_reciprocal(1.0, 0.0, 1.0, 1.0, 0.0, 0.0)?,
    ];

    for v in &catalog {
        println!("{}", v.name());

        print_report(&check_weight_axioms(v, &default_axiom_grid(v)));

        match growth_from_weight(v) {
            Ok(phi) => {
                let grid = default_differentiation_grid(&phi);
                print_report(&check_differentiation_condition(&phi, &grid));
            }
            Err(e) => println!("  SKIP differentiation condition: {e}"),
        }

        let grid = default_structural_grid(v.patch_radius().max(2.0));
        print_report(&check_target_weight_conditions(v, 0.5, &grid)?);

        match v.exponent() {
            Some(psi) => {
                let grid = default_structural_grid(psi.domain_start());
                print_report(&check_essentialness(&psi, &grid));
            }
            None => println!("  SKIP essentialness: no closed-form exponent"),
        }
        println!();
    }
    Ok(())
}
