//! Evaluate the local convex envelope at rational points and replay the
//! returned convex-combination certificates.
//!
//! Run with `cargo run --example envelope_certificate`.

use dmc_kit::dmcset::PointSet;
use dmc_kit::envelope::{envelope_value, weak_midpoint_gap};
use dmc_kit::fixtures;
use dmc_kit::funcs::IndicatorFn;
use dmc_kit::lattice::{LatticePoint, RationalPoint};

fn report(name: &str, f: &dmc_kit::funcs::Oracle, at: &str) {
    let x = RationalPoint::parse(at).expect("rational point");
    let res = envelope_value(f, &x);
    println!("envelope of {name} at ({at}) = {}", res.value);
    if let Some(terms) = &res.certificate {
        for t in terms {
            println!("    lambda[{}] = {}", t.z, t.lambda);
        }
    }
}

fn main() {
    let abs = fixtures::abs_sum(5);
    report("|x1+x2|", &abs, "3/2,-3/2");

    let pair = IndicatorFn::oracle(fixtures::indicator_pair()).expect("nonempty");
    report("indicator of {(1,0),(0,1)}", &pair, "1/2,1/2");

    // a hole: the midpoint of the far diagonal pair has no neighbors in
    // the domain, so the envelope is infinite there
    let far = IndicatorFn::oracle(
        PointSet::new(2, [LatticePoint::from([0, 0]), LatticePoint::from([2, 2])]).expect("valid"),
    )
    .expect("nonempty");
    report("indicator of {(0,0),(2,2)}", &far, "1,1");

    println!();
    let x = LatticePoint::from([0, 0]);
    let y = LatticePoint::from([3, -3]);
    match weak_midpoint_gap(&abs, &x, &y) {
        Some(gap) => println!("weak midpoint slack of |x1+x2| at ({x}, {y}) = {gap}"),
        None => println!("weak midpoint inequality fails with infinite envelope"),
    }
    println!("(zero slack: the pair meets the weak inequality with equality,");
    println!(" even though the strong rounding form fails there)");
}
