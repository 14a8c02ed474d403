//! Decompose a difference vector into `{-1,0,+1}` steps three ways: the
//! recursive halving multiset, its step-count-exact refinement, and the
//! chain normalization that coincides with the canonical raise/lower-set
//! decomposition.
//!
//! Run with `cargo run --example chain_decompositions`.

use dmc_kit::dmcset::{
    critical_check, d0_decompose, d1_decompose, d2_decompose, sorted_step_vectors,
};
use dmc_kit::lattice::{step_decompose, LatticePoint};

fn show(label: &str, vectors: &[LatticePoint]) {
    println!("{label} ({} steps):", vectors.len());
    for v in vectors {
        println!("    {v}");
    }
}

fn main() {
    let v = LatticePoint::from([5, 3, -3, -5]);
    println!(
        "decomposing v = {v}, sup-norm {}, critical: {}",
        v.linf_norm(),
        critical_check(&v)
    );
    println!();

    let d0 = d0_decompose(&v).expect("nonzero");
    show("stage 0 (recursive halving)", &d0.vectors);

    let d1 = d1_decompose(&v).expect("nonzero");
    show("stage 1 (critical merges)", &d1.vectors);

    let d2 = d2_decompose(&v).expect("nonzero");
    show("stage 2 (chain normalization)", &d2.vectors);
    println!("    twists performed: {}", d2.twists.len());

    let chain = step_decompose(&v).expect("nonzero");
    println!();
    println!("canonical raise/lower decomposition:");
    print!("{chain}");
    assert_eq!(d2.vectors, sorted_step_vectors(&chain));
    println!("stage 2 equals the canonical step vectors, as it must.");
}
