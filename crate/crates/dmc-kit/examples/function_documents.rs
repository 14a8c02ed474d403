//! Build oracles from JSON function documents, compose them with the
//! invariance combinators, and show that evaluation accounting follows
//! the base function through any stack of wrappers.
//!
//! Run with `cargo run --example function_documents`.

use dmc_kit::funcs::{parse_function, scale_fn, translate};
use dmc_kit::lattice::LatticePoint;

fn main() {
    let quadratic =
        parse_function(r#"{"kind": "quadratic", "dim": 2, "Q": [[1, "4/5"], ["4/5", 1]]}"#)
            .expect("valid document");
    let p = LatticePoint::from([1, 1]);
    println!("x^T Q x at {p} = {}", quadratic.eval(&p));

    let composite = parse_function(
        r#"{
            "kind": "sum", "dim": 2, "a1": 1, "a2": "1/2",
            "f1": {"kind": "separable", "dim": 2, "phis": [
                {"lo": -2, "values": [4, 1, 0, 1, 4]},
                {"lo": -2, "values": [2, 1, 0, 1, 2]}
            ]},
            "f2": {"kind": "indicator", "dim": 2, "points": [[0, 0], [1, 0], [1, 1], [2, 1]]}
        }"#,
    )
    .expect("valid document");
    println!();
    println!("separable + half an indicator (domain = the staircase):");
    for p in [[0, 0], [1, 1], [2, 1], [2, 2]] {
        let p = LatticePoint::from(p);
        println!("    f{p} = {}", composite.eval(&p));
    }

    println!();
    let shifted = translate(&composite, &LatticePoint::from([1, 0])).expect("same dimension");
    let doubled = scale_fn(&shifted, 2).expect("positive unit");
    println!("after translating by (1,0) and scaling by 2:");
    let q = LatticePoint::from([0, 0]);
    println!("    g{q} = {}", doubled.eval(&q));
    println!(
        "    base oracle evaluations so far: {} (wrappers share the base counter)",
        composite.eval_count()
    );

    // floats are rejected outright: exactness is end to end
    let err = parse_function(r#"{"kind": "quadratic", "dim": 1, "Q": [[0.5]]}"#).unwrap_err();
    println!();
    println!("decimal literals are rejected: {err}");
}
