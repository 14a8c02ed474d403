//! Seeded random instance generators for the test suites.
//!
//! Midpoint convex sets come from rejection sampling: start from a random
//! box, delete a few random points, and keep only candidates the checker
//! certifies. Midpoint convex functions are assembled inside the cone the
//! class forms: nonnegative combinations of separable convex tables,
//! componentwise maxima, certified quadratics, and indicator restrictions
//! to certified sets; every emitted instance is certified by the checker
//! before use, so the suites never trust the construction alone.

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::Rng;

use crate::classify::Checker;
use crate::dmcset::{is_dmc_set, PointSet};
use crate::funcs::{Oracle, TableFn};
use crate::lattice::{ExtValue, LatticeBox, LatticePoint};

/// A random box inside `[-span, span]^dim` with sides of at most
/// `max_side`.
pub fn random_box(rng: &mut StdRng, dim: usize, span: i64, max_side: i64) -> LatticeBox {
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for _ in 0..dim {
        let a = rng.gen_range(-span..=span);
        let side = rng.gen_range(0..max_side.max(1));
        lo.push(a);
        hi.push((a + side).min(span));
    }
    LatticeBox::new(LatticePoint::new(lo), LatticePoint::new(hi)).expect("lo <= hi")
}

/// A checker-certified midpoint convex set: random box minus a few random
/// points, rejection-sampled until the certificate passes.
pub fn random_dmc_set(rng: &mut StdRng, dim: usize, span: i64) -> PointSet {
    loop {
        let bounds = random_box(rng, dim, span, 4);
        let mut points: Vec<LatticePoint> = bounds.iter_points().collect();
        let deletions = rng.gen_range(0..=3.min(points.len() - 1));
        for _ in 0..deletions {
            let idx = rng.gen_range(0..points.len());
            points.swap_remove(idx);
        }
        if points.is_empty() {
            continue;
        }
        let candidate = PointSet::new(dim, points).expect("uniform dimension");
        if is_dmc_set(&candidate).holds {
            return candidate;
        }
    }
}

fn random_convex_univariate(rng: &mut StdRng, lo: i64, hi: i64) -> Vec<i64> {
    // integrate random nonnegative second differences around a random apex
    let len = (hi - lo + 1) as usize;
    let apex = rng.gen_range(0..len);
    let mut vals = vec![0i64; len];
    let mut slope = 0i64;
    for i in (0..apex).rev() {
        slope += rng.gen_range(0..=2);
        vals[i] = vals[i + 1] + slope;
    }
    slope = 0;
    for i in (apex + 1)..len {
        slope += rng.gen_range(0..=2);
        vals[i] = vals[i - 1] + slope;
    }
    vals
}

/// A checker-certified globally midpoint convex table function on a box
/// `[-span, span]^dim` (sides at most `max_side`), with an optional
/// nonrectangular domain carved by a certified midpoint convex set.
///
/// Built inside the cone: separable convex + scaled componentwise maximum
/// (under a random sign-free translation), then certified. The
/// construction cannot fail certification; the assert keeps the suites
/// honest about that.
pub fn random_global_dmc_table(
    rng: &mut StdRng,
    dim: usize,
    span: i64,
    max_side: i64,
) -> (Oracle, LatticeBox) {
    loop {
        let bounds = random_box(rng, dim, span, max_side);
        let tables: Vec<Vec<i64>> = (0..dim)
            .map(|i| {
                random_convex_univariate(rng, bounds.lo().coords()[i], bounds.hi().coords()[i])
            })
            .collect();
        let max_weight = rng.gen_range(0..=2i64);
        let shift: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
        let carve = if rng.gen_bool(0.3) {
            Some(random_dmc_set(rng, dim, span))
        } else {
            None
        };
        let f = TableFn::from_fn(bounds.clone(), |p| {
            if let Some(s) = &carve {
                if !s.contains(p) {
                    return ExtValue::Infinite;
                }
            }
            let sep: i64 = (0..dim)
                .map(|i| tables[i][(p.coords()[i] - bounds.lo().coords()[i]) as usize])
                .sum();
            let peak = (0..dim)
                .map(|i| p.coords()[i] + shift[i])
                .max()
                .expect("dim >= 1");
            ExtValue::from_int(sep + max_weight * peak)
        })
        .expect("desk-scale table");
        if crate::optimize::brute_force_min(&f, &bounds).is_err() {
            continue; // carved domain missed the box entirely
        }
        let verdict = Checker::sequential()
            .is_globally_dmc(&f, &bounds)
            .expect("desk scale");
        assert!(verdict.holds, "cone construction must certify");
        return (f, bounds);
    }
}

/// An unconstrained random table (values and `inf` holes), for mixed
/// corpora where both verdicts must occur. Guaranteed at least one finite
/// entry.
pub fn random_table(
    rng: &mut StdRng,
    dim: usize,
    span: i64,
    max_side: i64,
    inf_prob: f64,
) -> (Oracle, LatticeBox) {
    let bounds = random_box(rng, dim, span, max_side);
    let mut entries: Vec<(LatticePoint, ExtValue)> = bounds
        .iter_points()
        .map(|p| {
            let v = if rng.gen_bool(inf_prob) {
                ExtValue::Infinite
            } else {
                ExtValue::from_int(rng.gen_range(-9..=9))
            };
            (p, v)
        })
        .collect();
    if entries.iter().all(|(_, v)| !v.is_finite()) {
        let idx = rng.gen_range(0..entries.len());
        entries[idx].1 = ExtValue::zero();
    }
    let f = TableFn::oracle(bounds.clone(), entries).expect("dense by construction");
    (f, bounds)
}

/// A random symmetric matrix with small rational entries.
#[allow(clippy::needless_range_loop)] // mirrored writes want explicit indices
pub fn random_symmetric_matrix(rng: &mut StdRng, n: usize) -> crate::funcs::RationalMatrix {
    let mut rows = vec![vec![BigRational::from_integer(0.into()); n]; n];
    for i in 0..n {
        for j in i..n {
            let num = rng.gen_range(-6i64..=6);
            let den = rng.gen_range(1i64..=4);
            let v = BigRational::new(num.into(), den.into());
            rows[i][j] = v.clone();
            rows[j][i] = v;
        }
        // bias the diagonal upward so both verdicts occur at fair rates
        if rng.gen_bool(0.7) {
            let boost = rng.gen_range(0i64..=6);
            rows[i][i] += BigRational::from_integer(boost.into());
        }
    }
    crate::funcs::RationalMatrix::symmetric(rows).expect("symmetric by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn dmc_set_generator_certifies() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let s = random_dmc_set(&mut rng, 2, 5);
            assert!(is_dmc_set(&s).holds);
            assert!(!s.is_empty());
        }
    }

    #[test]
    fn dmc_table_generator_certifies() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10 {
            let (f, bounds) = random_global_dmc_table(&mut rng, 2, 4, 5);
            assert!(
                Checker::sequential()
                    .is_globally_dmc(&f, &bounds)
                    .unwrap()
                    .holds
            );
        }
    }

    #[test]
    fn mixed_tables_produce_both_verdicts() {
        let mut rng = StdRng::seed_from_u64(13);
        let mut yes = 0;
        let mut no = 0;
        for _ in 0..30 {
            let (f, bounds) = random_table(&mut rng, 2, 3, 4, 0.15);
            if let Ok(v) = Checker::sequential().is_globally_dmc(&f, &bounds) {
                if v.holds {
                    yes += 1;
                } else {
                    no += 1;
                }
            }
        }
        assert!(no > 0);
        assert!(yes + no == 30);
    }
}
