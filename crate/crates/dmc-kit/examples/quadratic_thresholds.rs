//! Classify the quadratic family `x^T [[1, c], [c, 1]] x` across the
//! boundary values of `c` where each convexity class starts or stops
//! holding, and double-check the closed-form two-dimensional decision
//! against the enumerated one.
//!
//! Run with `cargo run --example quadratic_thresholds`.

use dmc_kit::classify::quad;
use dmc_kit::fixtures;

fn main() {
    println!(
        "{:>6}  {:>5}  {:>8}  {:>7}  {:>9}  {:>6}",
        "c", "lnat", "globally", "locally", "diag.dom.", "eigen"
    );
    for c in [
        "-6/5", "-1", "-1/2", "0", "1/2", "4/5", "9/10", "1", "11/10",
    ] {
        let q = fixtures::quad_2d(c).expect("valid rational");
        let report = quad::classify(&q);
        let (cf_local, cf_global) = quad::closed_form_2d(&q).expect("2x2");
        assert_eq!(cf_local, report.locally_dmc);
        assert_eq!(cf_global, report.globally_dmc);
        println!(
            "{:>6}  {:>5}  {:>8}  {:>7}  {:>9}  {:>6}",
            c,
            report.lnat,
            report.globally_dmc,
            report.locally_dmc,
            report.diag_dominant,
            format!("{:?}", report.eigen_sufficient).to_lowercase(),
        );
    }
    println!();
    println!("L-natural on [-1, 0], globally midpoint convex on [-1, 4/5],");
    println!("locally midpoint convex on [-1, 1]; all boundaries inclusive and exact.");
}
