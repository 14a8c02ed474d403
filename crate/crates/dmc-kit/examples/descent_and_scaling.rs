//! Minimize the staircase instance two ways and watch the guarantees land
//! exactly: the 2-neighborhood descent takes one ball expansion per unit
//! of distance to the minimizer, and the proximity-scaling driver reaches
//! the same optimum within its evaluation budget. The origin is a
//! stride-alpha local minimizer whose distance to the true optimum
//! realizes the proximity bound n(alpha-1) with equality.
//!
//! Run with `cargo run --example descent_and_scaling`.

use dmc_kit::fixtures;
use dmc_kit::lattice::LatticePoint;
use dmc_kit::optimize;

fn main() {
    let (n, alpha) = (2usize, 3i64);
    let f = fixtures::staircase_fn(n, alpha).expect("valid staircase");
    let bounds = f.natural_box().expect("staircase declares a box");
    let origin = LatticePoint::zeros(n);

    println!("f(x) = -x1 on the staircase domain, n = {n}, alpha = {alpha}");
    println!(
        "unique minimizer: {}",
        fixtures::staircase_minimizer(n, alpha)
    );
    println!();

    let local = optimize::alpha_local_check(&f, &origin, alpha).unwrap();
    println!("origin is stride-{alpha} local minimal: {}", local.holds);
    let prox = optimize::proximity_verify(&f, &bounds, &origin, alpha).unwrap();
    println!(
        "proximity: nearest minimizer {} at distance {} (bound {} - tight)",
        prox.nearest, prox.realized, prox.bound
    );
    println!();

    let trace = optimize::steepest_descent_2n(&f, &origin, None).unwrap();
    println!("2-neighborhood descent from {origin}:");
    for stage in &trace.stages {
        println!(
            "    ball radius {:>2}: {} with value {}",
            stage.k, stage.point, stage.value
        );
    }
    println!(
        "    output {} after {} iterations, {} oracle calls",
        trace.output, trace.iterations, trace.oracle_calls
    );
    println!();

    let before = f.eval_count();
    let scaling = optimize::scaling_minimize(&f, &origin, None).unwrap();
    println!("proximity-scaling from {origin}:");
    for phase in &scaling.phases {
        println!(
            "    alpha {:>2}: {} -> {} ({} inner iterations)",
            phase.alpha, phase.start, phase.end, phase.inner_iterations
        );
    }
    println!(
        "    final {} with value {}, {} oracle calls",
        scaling.final_point,
        scaling.final_value,
        f.eval_count() - before
    );

    let (brute, _) = optimize::brute_force_min(&f, &bounds).unwrap();
    assert_eq!(scaling.final_value, brute);
    assert_eq!(trace.value, brute);
    println!();
    println!("both agree with the brute-force minimum {brute}.");
}
