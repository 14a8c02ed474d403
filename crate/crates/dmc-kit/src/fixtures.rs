//! Small named instances that recur throughout tests, examples, and the
//! `repro` subcommand.

use num_rational::BigRational;

use crate::dmcset::PointSet;
use crate::error::Result;
use crate::funcs::{ClosureFn, LinearOnSetFn, Oracle, RationalMatrix, TableFn};
use crate::lattice::{parse_rational, ExtValue, LatticeBox, LatticePoint};

/// `f(x1, x2) = |x1 + x2|` as a dense table on `[-reach, reach]^2`: locally
/// midpoint convex everywhere, globally midpoint convex nowhere past
/// distance two along the zero line.
pub fn abs_sum(reach: i64) -> Oracle {
    TableFn::from_fn(LatticeBox::centered(2, reach), |p| {
        ExtValue::from_int((p.coords()[0] + p.coords()[1]).abs())
    })
    .expect("small table")
}

/// `f(x1, x2, x3) = max(x1, x2, -x3)` on `[-reach, reach]^3`: the sign
/// inversion of one variable of a componentwise maximum, which destroys
/// local midpoint convexity while preserving integral convexity.
pub fn signed_max3(reach: i64) -> Oracle {
    TableFn::from_fn(LatticeBox::centered(3, reach), |p| {
        ExtValue::from_int(p.coords()[0].max(p.coords()[1]).max(-p.coords()[2]))
    })
    .expect("small table")
}

/// `max(x1, ..., xn)` as an unbounded closure oracle.
pub fn max_all(dim: usize) -> Oracle {
    ClosureFn::oracle(dim, |x: &LatticePoint| {
        ExtValue::from_int(x.iter().max().expect("nonempty"))
    })
}

/// The symmetric 2x2 matrix `[[1, c], [c, 1]]`.
pub fn quad_2d(c: &str) -> Result<RationalMatrix> {
    let c = parse_rational(c)?;
    let one = BigRational::from_integer(1.into());
    RationalMatrix::symmetric(vec![vec![one.clone(), c.clone()], vec![c, one]])
}

/// A globally midpoint convex quadratic that is not diagonally dominant.
pub fn quad_dmc_not_diagdom() -> RationalMatrix {
    RationalMatrix::from_i64(&[&[1, -1, 1], &[-1, 2, -1], &[1, -1, 2]]).expect("symmetric")
}

/// A diagonally dominant quadratic, `(x1 + x2)^2`, that is not even locally
/// midpoint convex.
pub fn quad_diagdom_not_dmc() -> RationalMatrix {
    RationalMatrix::from_i64(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]]).expect("symmetric")
}

/// The two-point set `{(1,0), (0,1)}`: midpoint convex but not L♮-convex.
pub fn indicator_pair() -> PointSet {
    PointSet::new(2, [LatticePoint::from([1, 0]), LatticePoint::from([0, 1])]).expect("valid")
}

/// A Minkowski sum of two chain sets that fails midpoint convexity.
pub fn minkowski_counterexample() -> PointSet {
    PointSet::new(
        4,
        [
            LatticePoint::from([0, 0, 0, 0]),
            LatticePoint::from([0, 1, 1, 0]),
            LatticePoint::from([1, 1, 0, 0]),
            LatticePoint::from([1, 2, 1, 0]),
        ],
    )
    .expect("valid")
}

/// The staircase domain
/// `{ x : 0 <= x_i - x_{i+1} <= alpha - 1, 0 <= x_n <= alpha - 1 }`,
/// enumerated explicitly (it is finite: coordinate `i` ranges over
/// `[0, (n - i + 1)(alpha - 1)]`).
pub fn staircase_set(dim: usize, alpha: i64) -> Result<PointSet> {
    crate::lattice::require_positive(alpha, "scaling unit")?;
    let hi: Vec<i64> = (0..dim).map(|i| (dim - i) as i64 * (alpha - 1)).collect();
    let bounds = LatticeBox::new(LatticePoint::zeros(dim), LatticePoint::new(hi))?;
    let members = bounds.iter_points().filter(|p| {
        let c = p.coords();
        let chain_ok = (0..dim - 1).all(|i| (0..=alpha - 1).contains(&(c[i] - c[i + 1])));
        chain_ok && (0..=alpha - 1).contains(&c[dim - 1])
    });
    PointSet::new(dim, members)
}

/// `f(x) = -x1` on the staircase domain: L♮-convex with the unique
/// minimizer `(n(alpha-1), (n-1)(alpha-1), ..., alpha-1)`, while the origin
/// is stride-`alpha` local minimal. Realizes the proximity bound
/// `n(alpha-1)` with equality.
pub fn staircase_fn(dim: usize, alpha: i64) -> Result<Oracle> {
    let mut cost = vec![BigRational::from_integer(0.into()); dim];
    cost[0] = BigRational::from_integer((-1).into());
    LinearOnSetFn::oracle(cost, staircase_set(dim, alpha)?)
}

/// The unique minimizer of [`staircase_fn`].
pub fn staircase_minimizer(dim: usize, alpha: i64) -> LatticePoint {
    LatticePoint::new((0..dim).map(|i| (dim - i) as i64 * (alpha - 1)).collect())
}
