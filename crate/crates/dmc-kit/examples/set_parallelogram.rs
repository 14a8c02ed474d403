//! Point-set machinery: midpoint convexity checks, scaling preimages, and
//! the parallelogram property that moves member pairs toward each other
//! along any partial sum of their chain decomposition.
//!
//! Run with `cargo run --example set_parallelogram`.

use dmc_kit::dmcset::{
    is_dmc_set, parallelogram_points, scale_set, set_membership_sweep, PointSet,
};
use dmc_kit::fixtures;
use dmc_kit::lattice::{LatticeBox, LatticePoint};

fn main() {
    let pair = fixtures::indicator_pair();
    println!(
        "{{(1,0),(0,1)}} midpoint convex: {}",
        is_dmc_set(&pair).holds
    );

    let diagonal = PointSet::new(2, (-3..=3).map(|t| LatticePoint::from([t, -t]))).unwrap();
    let verdict = is_dmc_set(&diagonal);
    let w = verdict.witness.unwrap();
    println!(
        "the antidiagonal through the origin is not: roundings of ({}, {}) leave the set",
        w.x, w.y
    );

    let minkowski = fixtures::minkowski_counterexample();
    let verdict = is_dmc_set(&minkowski);
    let w = verdict.witness.unwrap();
    println!(
        "a Minkowski sum of two chains fails too, at ({}, {})",
        w.x, w.y
    );
    println!();

    // parallelogram points inside a box window
    let window = LatticeBox::new(LatticePoint::from([-1, -3]), LatticePoint::from([5, 2])).unwrap();
    let s = PointSet::new(2, window.iter_points()).unwrap();
    let x = LatticePoint::from([0, 0]);
    let y = LatticePoint::from([4, -2]);
    println!("chain partial sums move ({x}, {y}) through the box set:");
    for subset in [vec![], vec![0], vec![0, 1], vec![0, 1, 2], vec![0, 1, 2, 3]] {
        let (p, q) = parallelogram_points(&s, &x, &y, &subset).unwrap();
        println!(
            "    steps {:?}: x+d = {p}, y-d = {q}",
            subset.iter().map(|k| k + 1).collect::<Vec<_>>()
        );
        assert!(s.contains(&p) && s.contains(&q));
    }
    let sweep = set_membership_sweep(&s, &x, &y).unwrap();
    println!(
        "all {} subset sums stay inside: {}",
        sweep.pairs_checked, sweep.holds
    );
    println!();

    let evens = PointSet::new(1, [0, 2, 4].map(|t| LatticePoint::from([t]))).unwrap();
    let halved = scale_set(&evens, 2).unwrap();
    println!(
        "scaling preimage of {{0,2,4}} under doubling: {:?} (midpoint convex: {})",
        halved.scan_sorted(),
        is_dmc_set(&halved).holds
    );
}
