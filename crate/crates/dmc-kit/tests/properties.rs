//! Cross-module property tests: invariants that tie the envelope, the
//! classifiers, and the minimizers together on randomized instances.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use dmc_kit::classify::quad::{self, EigenVerdict};
use dmc_kit::classify::Checker;
use dmc_kit::envelope::envelope_value;
use dmc_kit::funcs::{scale_fn, weighted_sum, Oracle, TableFn};
use dmc_kit::gen;
use dmc_kit::lattice::{ExtValue, LatticeBox, LatticePoint, RationalPoint};
use dmc_kit::optimize;

fn random_entry_table(values: &[i64], reach: i64) -> Oracle {
    let bounds = LatticeBox::centered(2, reach);
    let mut it = values.iter().copied().cycle();
    let entries = bounds
        .iter_points()
        .map(|p| {
            let v = it.next().unwrap();
            let value = if v == 9 {
                ExtValue::Infinite
            } else {
                ExtValue::from_int(v)
            };
            (p, value)
        })
        .collect();
    TableFn::oracle(bounds, entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// An envelope certificate replays exactly: coefficients are positive,
    /// sum to one, and reproduce both the query point and the value from
    /// raw oracle evaluations.
    #[test]
    fn envelope_certificate_replays(
        values in proptest::collection::vec(-5i64..10, 25),
        nums in proptest::collection::vec(-6i64..6, 2),
        dens in proptest::collection::vec(1i64..4, 2),
    ) {
        let f = random_entry_table(&values, 2);
        let coords: Vec<BigRational> = nums
            .iter()
            .zip(&dens)
            .map(|(&p, &q)| BigRational::new(p.into(), q.into()))
            .collect();
        let x = RationalPoint::new(coords);
        let res = envelope_value(&f, &x);
        match &res.value {
            ExtValue::Infinite => prop_assert!(res.certificate.is_none()),
            ExtValue::Finite(v) => {
                let terms = res.certificate.as_ref().unwrap();
                let mut total = BigRational::zero();
                let mut point = vec![BigRational::zero(); 2];
                let mut replayed = BigRational::zero();
                for t in terms {
                    prop_assert!(t.lambda.is_positive());
                    total += &t.lambda;
                    for (acc, zc) in point.iter_mut().zip(t.z.coords()) {
                        *acc += &t.lambda * BigRational::from_integer((*zc).into());
                    }
                    match f.eval(&t.z) {
                        ExtValue::Finite(fz) => replayed += &t.lambda * fz,
                        ExtValue::Infinite => prop_assert!(false, "certificate left the domain"),
                    }
                }
                prop_assert!(total.is_one());
                prop_assert_eq!(&point[..], x.coords());
                prop_assert_eq!(&replayed, v);
            }
        }
    }

    /// At an integral domain point the envelope is the function value with
    /// a singleton certificate.
    #[test]
    fn envelope_is_exact_at_integral_points(values in proptest::collection::vec(-5i64..10, 25)) {
        let f = random_entry_table(&values, 2);
        for p in LatticeBox::centered(2, 2).iter_points() {
            let fx = f.eval(&p);
            let res = envelope_value(&f, &p.to_rational());
            prop_assert_eq!(&res.value, &fx);
            if fx.is_finite() {
                prop_assert_eq!(res.certificate.as_ref().map(|c| c.len()), Some(1));
            }
        }
    }

    /// Composing scalings multiplies the units.
    #[test]
    fn scaling_composes(values in proptest::collection::vec(-5i64..10, 25),
                        a in 1i64..4, b in 1i64..4) {
        let f = random_entry_table(&values, 2);
        let nested = scale_fn(&scale_fn(&f, a).unwrap(), b).unwrap();
        let flat = scale_fn(&f, a * b).unwrap();
        for p in LatticeBox::centered(2, 3).iter_points() {
            prop_assert_eq!(nested.eval(&p), flat.eval(&p));
        }
    }

    /// A zero second weight reduces a weighted sum to the scaled first
    /// summand wherever that summand is finite.
    #[test]
    fn zero_weight_drops_a_summand(values in proptest::collection::vec(-5i64..10, 25),
                                   a1 in 0i64..5) {
        let f = random_entry_table(&values, 2);
        let g = random_entry_table(&[1, 2, 3], 2);
        let a1 = BigRational::from_integer(a1.into());
        let sum = weighted_sum(a1.clone(), BigRational::zero(), &f, &g).unwrap();
        for p in LatticeBox::centered(2, 2).iter_points() {
            let expected = f.eval(&p).scaled(&a1);
            if expected.is_finite() {
                prop_assert_eq!(sum.eval(&p), expected);
            }
        }
    }

    /// The spectral sufficient test never contradicts the exact decision.
    #[test]
    fn eigen_yes_implies_globally(seed in 0u64..1u64 << 48) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(2..=4usize);
        let q = gen::random_symmetric_matrix(&mut rng, n);
        if quad::eigen_sufficient(&q) == EigenVerdict::Yes {
            prop_assert!(quad::classify(&q).globally_dmc);
        }
    }

    /// Closed-form and enumerated two-dimensional decisions coincide on a
    /// rational grid.
    #[test]
    fn closed_form_matches_enumeration_2d(p11 in -4i64..8, p12 in -6i64..7, p22 in -4i64..8,
                                          den in 1i64..4) {
        let d = BigRational::from_integer(den.into());
        let q = dmc_kit::funcs::RationalMatrix::symmetric(vec![
            vec![BigRational::from_integer(p11.into()) / &d, BigRational::from_integer(p12.into()) / &d],
            vec![BigRational::from_integer(p12.into()) / &d, BigRational::from_integer(p22.into()) / &d],
        ]).unwrap();
        let report = quad::classify(&q);
        let (locally, globally) = quad::closed_form_2d(&q).unwrap();
        prop_assert_eq!(report.locally_dmc, locally);
        prop_assert_eq!(report.globally_dmc, globally);
    }
}

/// Local midpoint convexity alone already forces the strong inequality on
/// every comparable pair and on every pair at even distance; the function
/// `|x1 + x2|` is the sharp instance, failing at odd distances three and
/// five while satisfying both derived families.
#[test]
fn local_convexity_extends_to_even_and_comparable_pairs() {
    let f = dmc_kit::fixtures::abs_sum(3);
    let bounds = LatticeBox::centered(2, 3);
    let checker = Checker::sequential();
    assert!(checker.is_locally_dmc(&f, &bounds).unwrap().holds);
    for k in [4, 6] {
        let v = checker
            .check_dmc_at(&f, &bounds, k, dmc_kit::classify::DistanceMode::Exact)
            .unwrap();
        assert!(v.holds, "even distance {k} must follow from distance two");
    }
    for k in [3, 5] {
        let v = checker
            .check_dmc_at(&f, &bounds, k, dmc_kit::classify::DistanceMode::Exact)
            .unwrap();
        assert!(!v.holds, "odd distance {k} genuinely fails here");
    }
    let pts: Vec<LatticePoint> = bounds.iter_points().collect();
    for x in &pts {
        for y in &pts {
            if x == y || !x.le(y) {
                continue;
            }
            let (up, down) = dmc_kit::lattice::midpoint_round(x, y).unwrap();
            let lhs = f.eval(x).plus(&f.eval(y));
            assert!(
                lhs >= f.eval(&up).plus(&f.eval(&down)),
                "comparable pair ({x}, {y})"
            );
        }
    }
}

/// Each descent stage minimizes the function over the whole current ball,
/// and stage values strictly decrease until the final repeat.
#[test]
fn descent_stages_minimize_expanding_balls() {
    let mut rng = StdRng::seed_from_u64(0xbace_0001);
    for _ in 0..25 {
        let n = rng.gen_range(1..=3usize);
        let (f, bounds) = gen::random_global_dmc_table(&mut rng, n, 4, 5);
        let dom: Vec<LatticePoint> = bounds
            .iter_points()
            .filter(|p| f.eval(p).is_finite())
            .collect();
        let x0 = dom[rng.gen_range(0..dom.len())].clone();
        let trace = optimize::steepest_descent_2n(&f, &x0, None).unwrap();
        for stage in &trace.stages {
            let ball = LatticeBox::centered(n, stage.k).translate(&x0);
            let window = ball.intersect(&bounds).expect("start is in both");
            let (ball_min, _) = optimize::brute_force_min(&f, &window).unwrap();
            assert_eq!(
                stage.value, ball_min,
                "stage {} is not ball-minimal",
                stage.k
            );
        }
        for w in trace.stages.windows(2) {
            let last = w[1].value == trace.value && w[0].value == trace.value;
            assert!(
                w[1].value < w[0].value || last,
                "non-final repeat in the value sequence"
            );
        }
    }
}

/// Each scaling phase ends at a point that is stride-alpha local minimal.
#[test]
fn scaling_phases_end_alpha_local_minimal() {
    let mut rng = StdRng::seed_from_u64(0xbace_0002);
    for _ in 0..25 {
        let n = rng.gen_range(1..=3usize);
        let (f, bounds) = gen::random_global_dmc_table(&mut rng, n, 4, 5);
        let x0 = bounds.iter_scan().find(|p| f.eval(p).is_finite()).unwrap();
        let k_inf = bounds.diameter().max(1);
        let trace = optimize::scaling_minimize(&f, &x0, Some(k_inf)).unwrap();
        for phase in &trace.phases {
            let verdict = optimize::alpha_local_check(&f, &phase.end, phase.alpha).unwrap();
            assert!(
                verdict.holds,
                "phase alpha={} ended non-minimal",
                phase.alpha
            );
            assert!(
                phase.end.sub(&phase.start).linf_norm() <= n as i64 * phase.alpha,
                "phase displacement exceeded the proximity ball"
            );
        }
        let (min_value, _) = optimize::brute_force_min(&f, &bounds).unwrap();
        assert_eq!(trace.final_value, min_value);
    }
}

/// The box-barrier conclusion holds on random certified instances with a
/// wall-minimal center.
#[test]
fn barrier_conclusion_on_random_instances() {
    let mut rng = StdRng::seed_from_u64(0xbace_0003);
    let mut exercised = 0;
    while exercised < 15 {
        let n = rng.gen_range(2..=3usize);
        let (f, bounds) = gen::random_global_dmc_table(&mut rng, n, 3, 5);
        let Ok((_, argmin)) = optimize::brute_force_min(&f, &bounds) else {
            continue;
        };
        let center = argmin[0].clone();
        let p: Vec<Option<i64>> = center.iter().map(|c| Some(c - 1)).collect();
        let q: Vec<Option<i64>> = center.iter().map(|c| Some(c + 1)).collect();
        let outer = LatticeBox::centered(n, 6);
        let report = optimize::box_barrier_check(&f, &p, &q, &center, &outer).unwrap();
        assert!(report.wall_minimal, "a global minimizer is wall-minimal");
        assert!(report.conclusion.holds);
        exercised += 1;
    }
}
