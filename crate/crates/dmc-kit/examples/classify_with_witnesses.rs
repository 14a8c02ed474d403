//! Run the full classifier ladder on two hand-picked functions and print
//! the counterexample witnesses: `|x1 + x2|` separates the local class
//! from the global one, and `max(x1, x2, -x3)` shows that flipping the
//! sign of one variable can destroy even local midpoint convexity.
//!
//! Run with `cargo run --example classify_with_witnesses`.

use dmc_kit::classify::{Checker, Verdict};
use dmc_kit::fixtures;
use dmc_kit::funcs::Oracle;
use dmc_kit::lattice::LatticeBox;

fn show(name: &str, verdict: &Verdict) {
    match &verdict.witness {
        None => println!("  {name:<22} holds   ({} pairs)", verdict.pairs_checked),
        Some(w) => println!(
            "  {name:<22} FAILS   at x={}, y={}: {} < {}",
            w.x, w.y, w.lhs, w.rhs
        ),
    }
}

fn ladder(title: &str, f: &Oracle, bounds: &LatticeBox) {
    let checker = Checker::sequential();
    println!("{title} on {:?}..{:?}", bounds.lo(), bounds.hi());
    show("submodular", &checker.is_submodular(f, bounds).unwrap());
    show("L-natural", &checker.is_lnat(f, bounds).unwrap());
    show(
        "globally midpoint",
        &checker.is_globally_dmc(f, bounds).unwrap(),
    );
    show(
        "locally midpoint",
        &checker.is_locally_dmc(f, bounds).unwrap(),
    );
    show(
        "integrally convex",
        &checker.is_integrally_convex(f, bounds).unwrap(),
    );
    println!();
}

fn main() {
    ladder(
        "|x1 + x2|",
        &fixtures::abs_sum(3),
        &LatticeBox::centered(2, 3),
    );
    ladder(
        "max(x1, x2, -x3)",
        &fixtures::signed_max3(2),
        &LatticeBox::centered(3, 2),
    );

    let (far, convexity) = dmc_kit::classify::dmc_ge3_insufficiency_demo();
    println!("g(0) = 2, g(t) = t^2 on [-5, 5]:");
    show("midpoint at dist >= 3", &far);
    show("midpoint at dist = 2", &convexity);
    println!("  ... which is why classes restricted to distances >= 3 are uninteresting.");
}
