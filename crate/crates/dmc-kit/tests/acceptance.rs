//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (visible with `--nocapture`). Every tolerance is pinned in
//! code; the exact-arithmetic criteria admit zero tolerance by
//! construction.
//!
//! Run with
//! `cargo test -p dmc-kit --test acceptance -- --nocapture --test-threads=1`
//! for ordered, timed output.

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use dmc_kit::classify::{quad, Checker, DistanceMode};
use dmc_kit::dmcset::{
    self, check_conditions, d0_decompose, d1_decompose, d2_decompose, is_dmc_set, scale_set,
    sorted_step_vectors, PointSet,
};
use dmc_kit::fixtures;
use dmc_kit::funcs::{scale_fn, Oracle, QuadraticFn};
use dmc_kit::gen;
use dmc_kit::lattice::{
    linf_distance, midpoint_round, parse_rational, step_decompose, ExtValue, LatticeBox,
    LatticePoint,
};
use dmc_kit::optimize;

fn pass(criterion: u32, detail: &str) {
    println!("ACCEPTANCE {criterion}: PASS - {detail}");
}

fn checker() -> Checker {
    Checker::sequential()
}

/// Criterion 1: the 2x2 quadratic family [[1,c],[c,1]] classifies exactly
/// on the closed intervals c in [-1,0] (L-natural), [-1,4/5] (globally),
/// [-1,1] (locally), with zero tolerance, in under a second.
#[test]
fn acceptance_01_quadratic_thresholds() {
    let started = std::time::Instant::now();
    let lo = |s: &str| parse_rational(s).unwrap();
    let (lnat_lo, lnat_hi) = (lo("-1"), lo("0"));
    let (glob_lo, glob_hi) = (lo("-1"), lo("4/5"));
    let (loc_lo, loc_hi) = (lo("-1"), lo("1"));
    for c in [
        "-6/5", "-1", "-1/2", "0", "1/2", "4/5", "9/10", "1", "11/10",
    ] {
        let value = lo(c);
        let report = quad::classify(&fixtures::quad_2d(c).unwrap());
        assert_eq!(
            report.lnat,
            lnat_lo <= value && value <= lnat_hi,
            "lnat at c={c}"
        );
        assert_eq!(
            report.globally_dmc,
            glob_lo <= value && value <= glob_hi,
            "globally at c={c}"
        );
        assert_eq!(
            report.locally_dmc,
            loc_lo <= value && value <= loc_hi,
            "locally at c={c}"
        );
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "threshold sweep took {elapsed:?}"
    );
    pass(
        1,
        &format!("9 boundary values classified exactly in {elapsed:?}"),
    );
}

/// Criterion 2: the finite sign-vector test agrees exactly with pair
/// enumeration of x^T Q x over [-3,3]^n for 200 random rational matrices,
/// n in {2, 3}.
#[test]
fn acceptance_02_quadratic_enumeration_agreement() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let mut counts = [0u32; 2];
    for trial in 0..200 {
        let n = if trial % 2 == 0 { 2 } else { 3 };
        counts[n - 2] += 1;
        let q = gen::random_symmetric_matrix(&mut rng, n);
        let report = quad::classify(&q);
        let f = QuadraticFn::oracle(q, None).unwrap();
        let bounds = LatticeBox::centered(n, 3);
        let local = checker()
            .check_dmc_at(&f, &bounds, 2, DistanceMode::Exact)
            .unwrap();
        let global = checker()
            .check_dmc_at(&f, &bounds, 2, DistanceMode::AtLeast)
            .unwrap();
        assert_eq!(
            report.locally_dmc, local.holds,
            "local disagreement on trial {trial}"
        );
        assert_eq!(
            report.globally_dmc, global.holds,
            "global disagreement on trial {trial}"
        );
    }
    pass(
        2,
        &format!(
            "{} two-dim and {} three-dim matrices agree exactly",
            counts[0], counts[1]
        ),
    );
}

/// Criterion 3: the three pinned counterexamples reproduce byte-exactly,
/// with the exact witnesses and values.
#[test]
fn acceptance_03_counterexample_pinning() {
    // byte-exact golden match
    for example in ["exmdpt1", "exsigninv", "exdiagdom"] {
        let produced = dmc_kit::cli::repro_output(example).unwrap();
        let golden = dmc_kit::cli::repro_golden(example).unwrap();
        assert_eq!(
            produced.trim_end(),
            golden.trim_end(),
            "{example} report drifted"
        );
    }

    // |x1+x2| on [-3,3]^2: locally yes, globally no at exactly ((0,0),(3,-3))
    let abs = fixtures::abs_sum(3);
    let b2 = LatticeBox::centered(2, 3);
    assert!(checker().is_locally_dmc(&abs, &b2).unwrap().holds);
    let global = checker().is_globally_dmc(&abs, &b2).unwrap();
    assert!(!global.holds);
    let w = global.witness.unwrap();
    assert_eq!(w.x, LatticePoint::from([0, 0]));
    assert_eq!(w.y, LatticePoint::from([3, -3]));
    assert_eq!(w.lhs, ExtValue::zero());
    assert_eq!(w.rhs, ExtValue::from_int(2));

    // max(x1,x2,-x3) on [-2,2]^3: locally no at exactly ((0,0,0),(-2,-1,1))
    let smax = fixtures::signed_max3(2);
    let b3 = LatticeBox::centered(3, 2);
    let local = checker().is_locally_dmc(&smax, &b3).unwrap();
    assert!(!local.holds);
    let w = local.witness.unwrap();
    assert_eq!(w.x, LatticePoint::from([0, 0, 0]));
    assert_eq!(w.y, LatticePoint::from([-2, -1, 1]));
    assert_eq!(w.lhs, ExtValue::from_int(-1));
    assert_eq!(w.rhs, ExtValue::zero());

    // (x1+x2)^2: diagonally dominant yet not locally midpoint convex
    let report = quad::classify(&fixtures::quad_diagdom_not_dmc());
    assert!(report.diag_dominant);
    assert!(!report.locally_dmc);

    pass(3, "three pinned counterexamples match byte-exactly");
}

/// Criterion 4: the decomposition pipeline reproduces the worked
/// four-dimensional example, agrees with the canonical chain on 1000
/// random vectors (n <= 6, sup-norm <= 8), and every stage output passes
/// its chain conditions; all in under ten seconds.
#[test]
fn acceptance_04_decomposition_pipeline() {
    let started = std::time::Instant::now();
    let v = LatticePoint::from([5, 3, -3, -5]);
    let sorted = |pts: &[[i64; 4]]| {
        let mut out: Vec<LatticePoint> = pts.iter().map(|p| LatticePoint::from(*p)).collect();
        out.sort();
        out
    };
    assert_eq!(
        d0_decompose(&v).unwrap().vectors,
        sorted(&[
            [1, 1, 0, 0],
            [1, 0, 0, -1],
            [1, 1, -1, -1],
            [1, 1, -1, -1],
            [1, 0, 0, -1],
            [0, 0, -1, -1],
        ])
    );
    assert_eq!(
        d1_decompose(&v).unwrap().vectors,
        sorted(&[
            [1, 0, 0, -1],
            [1, 1, -1, -1],
            [1, 1, -1, -1],
            [1, 0, 0, -1],
            [1, 1, -1, -1],
        ])
    );
    assert_eq!(
        d2_decompose(&v).unwrap().vectors,
        sorted(&[
            [1, 0, -1, -1],
            [1, 0, -1, -1],
            [1, 1, -1, -1],
            [1, 1, 0, -1],
            [1, 1, 0, -1],
        ])
    );

    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let mut tested = 0u32;
    while tested < 1000 {
        let dim = rng.gen_range(1..=6usize);
        let coords: Vec<i64> = (0..dim).map(|_| rng.gen_range(-8i64..=8)).collect();
        let v = LatticePoint::new(coords);
        if v.is_zero() {
            continue;
        }
        tested += 1;
        let d0 = d0_decompose(&v).unwrap();
        let d1 = d1_decompose(&v).unwrap();
        let d2 = d2_decompose(&v).unwrap();
        check_conditions(&v, &d0).unwrap();
        check_conditions(&v, &d1).unwrap();
        check_conditions(&v, &d2).unwrap();
        let chain = step_decompose(&v).unwrap();
        chain.validate().unwrap();
        assert_eq!(
            d2.vectors,
            sorted_step_vectors(&chain),
            "stage-2 mismatch for {v}"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "pipeline took {elapsed:?}");
    pass(
        4,
        &format!("worked example plus 1000 random vectors in {elapsed:?}"),
    );
}

/// Criterion 5: on 100 certified globally midpoint convex tables
/// (n <= 3, box side <= 7) and every domain starting point, the descent's
/// iteration count equals the brute-force distance to the nearest
/// minimizer exactly, and the final value equals the brute-force minimum
/// exactly.
#[test]
fn acceptance_05_descent_iteration_count() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut starts_tested = 0u64;
    for trial in 0..100 {
        let n = rng.gen_range(1..=3usize);
        let (f, bounds) = gen::random_global_dmc_table(&mut rng, n, 4, 7);
        let (min_value, argmin) = optimize::brute_force_min(&f, &bounds).unwrap();
        let dom: Vec<LatticePoint> = bounds
            .iter_points()
            .filter(|p| f.eval(p).is_finite())
            .collect();
        for x0 in &dom {
            let want_l = argmin
                .iter()
                .map(|p| linf_distance(p, x0).unwrap())
                .min()
                .unwrap() as u64;
            let trace = optimize::steepest_descent_2n(&f, x0, None).unwrap();
            assert_eq!(
                trace.terminated,
                optimize::Termination::MinimizerFound,
                "budget hit on trial {trial} from {x0}"
            );
            assert_eq!(
                trace.value, min_value,
                "value mismatch on trial {trial} from {x0}"
            );
            assert_eq!(
                trace.iterations, want_l,
                "count mismatch on trial {trial} from {x0}"
            );
            starts_tested += 1;
        }
    }
    pass(
        5,
        &format!("iteration counts exact over {starts_tested} starting points"),
    );
}

/// Criterion 6: the proximity bound n(alpha-1) is realized with equality
/// on the staircase instances (n,alpha) in {(2,2),(2,3),(3,2)} and never
/// exceeded on 100 random certified instances with alpha in {2,3}.
#[test]
fn acceptance_06_proximity_bound_and_tightness() {
    for (n, alpha) in [(2usize, 2i64), (2, 3), (3, 2)] {
        let f = fixtures::staircase_fn(n, alpha).unwrap();
        let bounds = f.natural_box().unwrap();
        let origin = LatticePoint::zeros(n);
        let report = optimize::proximity_verify(&f, &bounds, &origin, alpha).unwrap();
        assert!(report.holds);
        assert_eq!(report.bound, n as i64 * (alpha - 1));
        assert_eq!(
            report.realized, report.bound,
            "staircase ({n},{alpha}) must be tight"
        );
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    for trial in 0..100 {
        let n = rng.gen_range(1..=3usize);
        let (f, bounds) = gen::random_global_dmc_table(&mut rng, n, 4, 6);
        for alpha in [2i64, 3] {
            // a stride-alpha local minimizer: the best point of a residue
            // class through a domain point
            let base = bounds
                .iter_scan()
                .find(|p| f.eval(p).is_finite())
                .expect("nonempty domain");
            let x_alpha = bounds
                .iter_points()
                .filter(|p| {
                    p.iter()
                        .zip(base.iter())
                        .all(|(a, b)| (a - b).rem_euclid(alpha) == 0)
                        && f.eval(p).is_finite()
                })
                .min_by(|a, b| f.eval(a).cmp(&f.eval(b)).then(a.cmp(b)))
                .expect("base point is in the class");
            let report = optimize::proximity_verify(&f, &bounds, &x_alpha, alpha).unwrap();
            assert!(
                report.holds,
                "trial {trial} alpha {alpha}: realized {} > bound {}",
                report.realized, report.bound
            );
        }
    }
    pass(
        6,
        "bound tight on staircases, never exceeded on 100 random instances",
    );
}

/// Criterion 7: scaling stability. Scaled functions and sets re-certify
/// for alpha in {2,3}; the scaling minimizer matches brute force exactly;
/// and total base evaluations stay within 5^n * n * (ceil(log2 K) + 1).
#[test]
fn acceptance_07_scaling_stability() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for trial in 0..100 {
        let n = rng.gen_range(1..=3usize);
        let (f, bounds) = gen::random_global_dmc_table(&mut rng, n, 4, 6);

        // scaled functions re-certify on the scaled window
        for alpha in [2i64, 3] {
            let lo = LatticePoint::new(
                bounds
                    .lo()
                    .iter()
                    .map(|c| -((-c).div_euclid(alpha)))
                    .collect(),
            );
            let hi = LatticePoint::new(bounds.hi().iter().map(|c| c.div_euclid(alpha)).collect());
            let Ok(scaled_bounds) = LatticeBox::new(lo, hi) else {
                continue; // no multiples of alpha inside: scaled domain empty
            };
            let scaled = scale_fn(&f, alpha).unwrap();
            let verdict = checker().is_globally_dmc(&scaled, &scaled_bounds).unwrap();
            assert!(
                verdict.holds,
                "trial {trial}: scaled function lost certification"
            );
        }

        // scaled sets re-certify
        let s = gen::random_dmc_set(&mut rng, 2, 5);
        for alpha in [2i64, 3] {
            let scaled = scale_set(&s, alpha).unwrap();
            assert!(
                is_dmc_set(&scaled).holds,
                "trial {trial}: scaled set lost certification"
            );
        }

        // scaling minimization is exact and within the evaluation budget
        let (min_value, _) = optimize::brute_force_min(&f, &bounds).unwrap();
        let x0 = bounds
            .iter_scan()
            .find(|p| f.eval(p).is_finite())
            .expect("nonempty domain");
        let k_inf = bounds.diameter().max(1);
        let before = f.eval_count();
        let trace = optimize::scaling_minimize(&f, &x0, Some(k_inf)).unwrap();
        let used = f.eval_count() - before;
        assert_eq!(
            trace.final_value, min_value,
            "trial {trial}: scaling missed the minimum"
        );
        let phases = (k_inf as f64).log2().ceil() as u64 + 1;
        assert_eq!(
            trace.phases.len() as u64,
            phases,
            "trial {trial}: phase count"
        );
        let budget = 5u64.pow(n as u32) * n as u64 * phases;
        assert!(
            used <= budget,
            "trial {trial}: {used} evaluations exceed budget {budget}"
        );
    }
    pass(
        7,
        "re-certification, exact minima, and evaluation budgets on 100 instances",
    );
}

/// Criterion 8: 1000 random draws of (certified function, base point,
/// chain, bipartition) satisfy the parallelogram inequality, and the same
/// corpus satisfies the midpoint inequality on comparable pairs and on
/// pairs at even distance.
#[test]
fn acceptance_08_parallelogram_inequality() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut draws = 0u32;
    let mut corpus = Vec::new();
    while corpus.len() < 40 {
        let n = rng.gen_range(2..=3usize);
        let (f, bounds) = gen::random_global_dmc_table(&mut rng, n, 4, 5);
        let dom: Vec<LatticePoint> = bounds
            .iter_points()
            .filter(|p| f.eval(p).is_finite())
            .collect();
        if dom.len() >= 2 {
            corpus.push((f, bounds, dom));
        }
    }
    while draws < 1000 {
        let (f, _, dom) = &corpus[rng.gen_range(0..corpus.len())];
        let x = &dom[rng.gen_range(0..dom.len())];
        let y = &dom[rng.gen_range(0..dom.len())];
        if x == y {
            continue;
        }
        let chain = step_decompose(&y.sub(x)).unwrap();
        let mask: u32 = rng.gen_range(0..(1u32 << chain.len()));
        let i: Vec<usize> = (0..chain.len()).filter(|k| mask & (1 << k) != 0).collect();
        let j: Vec<usize> = (0..chain.len()).filter(|k| mask & (1 << k) == 0).collect();
        let verdict = dmc_kit::classify::check_parallelogram(f, x, &chain, &i, &j).unwrap();
        assert!(
            verdict.holds,
            "parallelogram violated at x={x}, y={y}, mask={mask}"
        );
        draws += 1;
    }

    // comparable pairs and even distances on the same corpus
    for (f, _, dom) in &corpus {
        for x in dom {
            for y in dom {
                if x == y {
                    continue;
                }
                let comparable = x.le(y);
                let even = linf_distance(x, y).unwrap() % 2 == 0;
                if !(comparable || even) {
                    continue;
                }
                let (up, down) = midpoint_round(x, y).unwrap();
                let lhs = f.eval(x).plus(&f.eval(y));
                let rhs = f.eval(&up).plus(&f.eval(&down));
                assert!(lhs >= rhs, "midpoint inequality failed at x={x}, y={y}");
            }
        }
    }
    pass(
        8,
        "1000 parallelogram draws plus comparable/even-distance sweeps",
    );
}

/// Criterion 9: on 200 random tables (mixed convexity, partial domains),
/// the full weak-inequality scan agrees with the domain-first route
/// whenever the latter's precondition holds.
#[test]
fn acceptance_09_weak_routes_agree() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let mut applicable = 0u32;
    let mut holds_count = 0u32;
    for trial in 0..200 {
        let n = rng.gen_range(2..=3usize);
        let (f, bounds) = if trial % 3 == 0 {
            gen::random_global_dmc_table(&mut rng, n, 3, 4)
        } else {
            gen::random_table(&mut rng, n, 3, 4, 0.2)
        };
        let direct = checker().is_integrally_convex(&f, &bounds).unwrap();
        if let Some(via_domain) = checker()
            .is_integrally_convex_via_domain(&f, &bounds)
            .unwrap()
        {
            applicable += 1;
            assert_eq!(
                direct.holds, via_domain.holds,
                "route disagreement on trial {trial}"
            );
        }
        if direct.holds {
            holds_count += 1;
        }
    }
    assert!(
        holds_count > 0,
        "corpus must contain integrally convex instances"
    );
    assert!(holds_count < 200, "corpus must contain failing instances");
    pass(
        9,
        &format!("routes agree on all {applicable} applicable instances of 200 (mixed verdicts)"),
    );
}

/// Criterion 10: the class hierarchy holds as verdict implications on
/// every instance drawn across the suites: L-natural implies globally,
/// globally implies locally, locally implies integrally convex.
#[test]
fn acceptance_10_hierarchy_invariant() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    let mut corpus: Vec<(Oracle, LatticeBox)> = Vec::new();

    // quadratics over the classification window
    for _ in 0..40 {
        let n = rng.gen_range(2..=3usize);
        let q = gen::random_symmetric_matrix(&mut rng, n);
        corpus.push((
            QuadraticFn::oracle(q, None).unwrap(),
            LatticeBox::centered(n, 3),
        ));
    }
    // certified midpoint convex tables
    for _ in 0..30 {
        let n = rng.gen_range(1..=3usize);
        corpus.push(gen::random_global_dmc_table(&mut rng, n, 4, 5));
    }
    // unconstrained mixed tables
    for _ in 0..60 {
        let n = rng.gen_range(2..=3usize);
        corpus.push(gen::random_table(&mut rng, n, 3, 4, 0.2));
    }
    // named fixtures
    corpus.push((fixtures::abs_sum(3), LatticeBox::centered(2, 3)));
    corpus.push((fixtures::signed_max3(2), LatticeBox::centered(3, 2)));
    corpus.push((
        dmc_kit::funcs::IndicatorFn::oracle(fixtures::indicator_pair()).unwrap(),
        LatticeBox::new(LatticePoint::from([0, 0]), LatticePoint::from([1, 1])).unwrap(),
    ));
    corpus.push((
        dmc_kit::funcs::IndicatorFn::oracle(fixtures::minkowski_counterexample()).unwrap(),
        LatticeBox::new(
            LatticePoint::from([0, 0, 0, 0]),
            LatticePoint::from([1, 2, 1, 0]),
        )
        .unwrap(),
    ));

    let mut lnat_count = 0u32;
    for (idx, (f, bounds)) in corpus.iter().enumerate() {
        let lnat = checker().is_lnat(f, bounds).unwrap().holds;
        let global = checker().is_globally_dmc(f, bounds).unwrap().holds;
        let local = checker().is_locally_dmc(f, bounds).unwrap().holds;
        assert!(!lnat || global, "instance {idx}: L-natural without global");
        assert!(!global || local, "instance {idx}: global without local");
        if local {
            let ic = checker().is_integrally_convex(f, bounds).unwrap().holds;
            assert!(ic, "instance {idx}: local without integral convexity");
        }
        if lnat {
            lnat_count += 1;
        }
    }
    assert!(
        lnat_count > 0,
        "corpus must exercise the top of the hierarchy"
    );
    pass(
        10,
        &format!("hierarchy implications hold on {} instances", corpus.len()),
    );
}

/// Minimizer sets of globally midpoint convex functions are midpoint
/// convex sets; the locally-convex-only counterexample genuinely fails.
/// (Supporting invariant exercised alongside the numbered criteria.)
#[test]
fn supporting_minimizer_set_structure() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0011);
    for _ in 0..25 {
        let n = rng.gen_range(1..=3usize);
        let (f, bounds) = gen::random_global_dmc_table(&mut rng, n, 4, 5);
        let (_, argmin) = optimize::brute_force_min(&f, &bounds).unwrap();
        let s = PointSet::new(n, argmin).unwrap();
        assert!(
            is_dmc_set(&s).holds,
            "minimizer set must be midpoint convex"
        );
        assert!(
            dmc_kit::classify::is_integrally_convex_set(&s).holds,
            "midpoint convex minimizer set must be integrally convex"
        );
    }
    let abs = fixtures::abs_sum(3);
    let (_, argmin) = optimize::brute_force_min(&abs, &LatticeBox::centered(2, 3)).unwrap();
    assert!(!is_dmc_set(&PointSet::new(2, argmin).unwrap()).holds);
}

/// Intersections of midpoint convex sets stay midpoint convex, and every
/// midpoint convex set is integrally convex via its indicator.
/// (Supporting invariant exercised alongside the numbered criteria.)
#[test]
fn supporting_set_closure_properties() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0012);
    for _ in 0..20 {
        let a = gen::random_dmc_set(&mut rng, 2, 5);
        let b = gen::random_dmc_set(&mut rng, 2, 5);
        let inter: Vec<LatticePoint> = a.iter().filter(|p| b.contains(p)).cloned().collect();
        let inter = PointSet::new(2, inter).unwrap();
        assert!(
            is_dmc_set(&inter).holds,
            "intersection lost midpoint convexity"
        );

        let ind = dmc_kit::funcs::IndicatorFn::oracle(a.clone()).unwrap();
        let bounds = a.bounding_box().unwrap();
        assert!(
            checker().is_integrally_convex(&ind, &bounds).unwrap().holds,
            "indicator of a midpoint convex set must be integrally convex"
        );
    }
}

/// Every subset of the stage-2 decomposition keeps partial sums inside a
/// certified midpoint convex set, exercised on random member pairs.
/// (Supporting invariant exercised alongside the numbered criteria.)
#[test]
fn supporting_membership_sweep() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0013);
    let mut swept = 0;
    while swept < 15 {
        let s = gen::random_dmc_set(&mut rng, 3, 4);
        let pts = s.scan_sorted();
        if pts.len() < 2 {
            continue;
        }
        let x = &pts[rng.gen_range(0..pts.len())];
        let y = &pts[rng.gen_range(0..pts.len())];
        if x == y {
            continue;
        }
        let verdict = dmcset::set_membership_sweep(&s, x, y).unwrap();
        assert!(verdict.holds, "subset sum left the set for x={x}, y={y}");
        swept += 1;
    }
}

/// Spot check beyond the distance-{2,3} quadratic certificates: globally
/// midpoint convex matrices satisfy the sign-vector inequality at random
/// vectors of sup-norm four and five as well.
/// (Supporting invariant exercised alongside the numbered criteria.)
#[test]
fn supporting_quadratic_far_distances() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0014);
    let mut certified = 0;
    while certified < 10 {
        let n = rng.gen_range(2..=3usize);
        let q = gen::random_symmetric_matrix(&mut rng, n);
        if !quad::classify(&q).globally_dmc {
            continue;
        }
        certified += 1;
        for _ in 0..50 {
            let norm = rng.gen_range(4i64..=5);
            let mut coords: Vec<i64> = (0..n).map(|_| rng.gen_range(-norm..=norm)).collect();
            coords[rng.gen_range(0..n)] = if rng.gen_bool(0.5) { norm } else { -norm };
            let z = LatticePoint::new(coords);
            let odd = LatticePoint::new(z.iter().map(|c| c.rem_euclid(2)).collect());
            assert!(
                q.quad_form(&z) >= q.quad_form(&odd),
                "sign-vector inequality failed at z={z}"
            );
        }
    }
}

/// A certified globally midpoint convex oracle stays certified after the
/// invariance combinators: translation, permutation, full negation, and
/// nonnegative weighted sums. (Supporting invariant exercised alongside
/// the numbered criteria.)
#[test]
fn supporting_invariance_combinators() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0015);
    let one = BigRational::from_integer(1.into());
    let two = BigRational::from_integer(2.into());
    for _ in 0..10 {
        let n = rng.gen_range(2..=3usize);
        let (f, bounds) = gen::random_global_dmc_table(&mut rng, n, 3, 4);
        let (g, g_bounds) = gen::random_global_dmc_table(&mut rng, n, 3, 4);

        let shift = LatticePoint::new((0..n).map(|_| rng.gen_range(-2..=2)).collect());
        let translated = dmc_kit::funcs::translate(&f, &shift).unwrap();
        let t_bounds = bounds.translate(&shift.neg());
        assert!(
            checker()
                .is_globally_dmc(&translated, &t_bounds)
                .unwrap()
                .holds
        );

        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.reverse();
        let permuted = dmc_kit::funcs::permute(&f, &sigma).unwrap();
        let p_lo = LatticePoint::new(sigma.iter().map(|&i| bounds.lo().coords()[i]).collect());
        let p_hi = LatticePoint::new(sigma.iter().map(|&i| bounds.hi().coords()[i]).collect());
        let p_bounds = LatticeBox::new(p_lo, p_hi).unwrap();
        assert!(
            checker()
                .is_globally_dmc(&permuted, &p_bounds)
                .unwrap()
                .holds
        );

        let negated = dmc_kit::funcs::negate_all(&f);
        let n_bounds = LatticeBox::new(bounds.hi().neg(), bounds.lo().neg()).unwrap();
        assert!(
            checker()
                .is_globally_dmc(&negated, &n_bounds)
                .unwrap()
                .holds
        );

        if let Some(sum_bounds) = bounds.intersect(&g_bounds) {
            let sum = dmc_kit::funcs::weighted_sum(one.clone(), two.clone(), &f, &g).unwrap();
            if optimize::brute_force_min(&sum, &sum_bounds).is_ok() {
                assert!(checker().is_globally_dmc(&sum, &sum_bounds).unwrap().holds);
            }
        }
    }
}
