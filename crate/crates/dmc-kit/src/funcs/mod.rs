//! Extended-real function oracles on the integer lattice.
//!
//! An [`Oracle`] pairs a pure function `Z^n -> Q ∪ {+∞}` with a declared
//! dimension and an atomic evaluation counter. Single-child wrappers
//! (translate, permute, negate, scale) share the counter of the function
//! they wrap, so evaluation accounting always reflects true evaluations of
//! the underlying base function; a weighted sum owns a counter of its own
//! while its children keep counting themselves.

mod document;

pub use document::{load_function, parse_function};

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::dmcset::PointSet;
use crate::error::{Error, Result};
use crate::lattice::{require_positive, ExtValue, LatticeBox, LatticePoint};

/// A pure extended-real function on the lattice. Implementations must be
/// deterministic: repeated evaluation at the same point returns the same
/// value.
pub trait Function: Send + Sync {
    fn dim(&self) -> usize;
    fn eval(&self, x: &LatticePoint) -> ExtValue;
    /// A box known to contain the effective domain, when one is declared.
    fn natural_box(&self) -> Option<LatticeBox> {
        None
    }
}

/// The counting layer every oracle wraps around its root function: one
/// counter bump per evaluation that actually reaches the function. Probes
/// short-circuited above this layer (a box restriction rejecting an
/// out-of-window point, an absorbed summand) do not count.
struct Counted {
    base: Arc<dyn Function>,
    calls: Arc<AtomicU64>,
}

impl Function for Counted {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.base.eval(x)
    }

    fn natural_box(&self) -> Option<LatticeBox> {
        self.base.natural_box()
    }
}

/// A counted, shareable function oracle. Argument-transform wrappers
/// (translate, permute, negate, scale, restrict) share the counter of the
/// oracle they wrap, so evaluation accounting follows the base function
/// through any stack of transforms.
#[derive(Clone)]
pub struct Oracle {
    inner: Arc<dyn Function>,
    calls: Arc<AtomicU64>,
}

impl std::fmt::Debug for Oracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Oracle")
            .field("dim", &self.dim())
            .field("eval_count", &self.eval_count())
            .finish_non_exhaustive()
    }
}

impl Oracle {
    pub fn new(base: Arc<dyn Function>) -> Self {
        let calls = Arc::new(AtomicU64::new(0));
        Oracle {
            inner: Arc::new(Counted {
                base,
                calls: calls.clone(),
            }),
            calls,
        }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn eval(&self, x: &LatticePoint) -> ExtValue {
        assert_eq!(
            x.dim(),
            self.dim(),
            "oracle evaluated at a point of wrong dimension"
        );
        self.inner.eval(x)
    }

    pub fn eval_count(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn in_domain(&self, x: &LatticePoint) -> bool {
        self.eval(x).is_finite()
    }

    pub fn natural_box(&self) -> Option<LatticeBox> {
        self.inner.natural_box()
    }

    fn wrap_sharing_counter(&self, inner: Arc<dyn Function>) -> Oracle {
        Oracle {
            inner,
            calls: self.calls.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// Built-in families
// ---------------------------------------------------------------------------

/// A dense symmetric matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    n: usize,
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    /// Builds a symmetric matrix, rejecting non-square or asymmetric input.
    pub fn symmetric(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MatrixSize {
                expected: 1,
                got: 0,
            });
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::MatrixSize {
                    expected: n,
                    got: r.len(),
                });
            }
        }
        // symmetry probes mirrored entries; index form keeps that visible
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::AsymmetricMatrix { row: i, col: j });
                }
            }
        }
        Ok(RationalMatrix { n, rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        RationalMatrix::symmetric(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// `z^T Q z` for an integer vector.
    pub fn quad_form(&self, z: &LatticePoint) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..self.n {
            if z.coords()[i] == 0 {
                continue;
            }
            let zi = BigRational::from_integer(z.coords()[i].into());
            for j in 0..self.n {
                if z.coords()[j] == 0 {
                    continue;
                }
                let zj = BigRational::from_integer(z.coords()[j].into());
                acc += &zi * &zj * &self.rows[i][j];
            }
        }
        acc
    }
}

/// `f(x) = x^T Q x`, optionally restricted to a box.
pub struct QuadraticFn {
    pub matrix: RationalMatrix,
    pub domain: Option<LatticeBox>,
}

impl QuadraticFn {
    pub fn oracle(matrix: RationalMatrix, domain: Option<LatticeBox>) -> Result<Oracle> {
        if let Some(b) = &domain {
            if b.dim() != matrix.n() {
                return Err(Error::DimensionMismatch {
                    expected: matrix.n(),
                    got: b.dim(),
                });
            }
        }
        Ok(Oracle::new(Arc::new(QuadraticFn { matrix, domain })))
    }
}

impl Function for QuadraticFn {
    fn dim(&self) -> usize {
        self.matrix.n()
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        if let Some(b) = &self.domain {
            if !b.contains(x) {
                return ExtValue::Infinite;
            }
        }
        ExtValue::Finite(self.matrix.quad_form(x))
    }

    fn natural_box(&self) -> Option<LatticeBox> {
        self.domain.clone()
    }
}

/// One univariate value table on a finite integer interval.
#[derive(Clone, Debug)]
pub struct Univariate {
    lo: i64,
    values: Vec<ExtValue>,
}

impl Univariate {
    pub fn new(lo: i64, values: Vec<ExtValue>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("empty univariate table".into()));
        }
        Ok(Univariate { lo, values })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn eval(&self, t: i64) -> ExtValue {
        if t < self.lo || t > self.hi() {
            return ExtValue::Infinite;
        }
        self.values[(t - self.lo) as usize].clone()
    }

    /// Midpoint convexity at distance two: `phi(t-1) + phi(t+1) >= 2 phi(t)`
    /// for every interior point of the table.
    fn is_discretely_convex(&self) -> bool {
        for t in (self.lo + 1)..self.hi() {
            let lhs = self.eval(t - 1).plus(&self.eval(t + 1));
            if lhs < self.eval(t).double() {
                return false;
            }
        }
        true
    }
}

/// Separable sum of univariate discretely convex tables.
pub struct SeparableConvexFn {
    phis: Vec<Univariate>,
}

impl SeparableConvexFn {
    /// Rejects any table violating univariate midpoint convexity.
    pub fn oracle(phis: Vec<Univariate>) -> Result<Oracle> {
        if phis.is_empty() {
            return Err(Error::InvalidArgument(
                "separable function needs at least one coordinate".into(),
            ));
        }
        for (i, phi) in phis.iter().enumerate() {
            if !phi.is_discretely_convex() {
                return Err(Error::InvalidArgument(format!(
                    "univariate table {i} is not discretely convex"
                )));
            }
        }
        Ok(Oracle::new(Arc::new(SeparableConvexFn { phis })))
    }
}

impl Function for SeparableConvexFn {
    fn dim(&self) -> usize {
        self.phis.len()
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        let mut acc = ExtValue::zero();
        for (phi, t) in self.phis.iter().zip(x.iter()) {
            acc = acc.plus(&phi.eval(t));
            if !acc.is_finite() {
                return ExtValue::Infinite;
            }
        }
        acc
    }

    fn natural_box(&self) -> Option<LatticeBox> {
        let lo = LatticePoint::new(self.phis.iter().map(|p| p.lo()).collect());
        let hi = LatticePoint::new(self.phis.iter().map(|p| p.hi()).collect());
        LatticeBox::new(lo, hi).ok()
    }
}

/// A dense table of values on a box; `+∞` outside.
pub struct TableFn {
    bounds: LatticeBox,
    strides: Vec<usize>,
    values: Vec<ExtValue>,
}

impl TableFn {
    /// Every in-box point must have exactly one entry; partial domains are
    /// written as explicit `inf` entries.
    pub fn oracle(bounds: LatticeBox, entries: Vec<(LatticePoint, ExtValue)>) -> Result<Oracle> {
        Ok(Oracle::new(Arc::new(TableFn::build(bounds, entries)?)))
    }

    pub fn build(bounds: LatticeBox, entries: Vec<(LatticePoint, ExtValue)>) -> Result<TableFn> {
        let volume = bounds.volume();
        if volume > 4_000_000 {
            return Err(Error::InvalidArgument(format!(
                "table box volume {volume} is beyond desk scale"
            )));
        }
        let volume = volume as usize;
        let mut strides = vec![1usize; bounds.dim()];
        for i in (0..bounds.dim().saturating_sub(1)).rev() {
            let extent = (bounds.hi().coords()[i + 1] - bounds.lo().coords()[i + 1] + 1) as usize;
            strides[i] = strides[i + 1] * extent;
        }
        let mut values: Vec<Option<ExtValue>> = vec![None; volume];
        let table = TableFn {
            bounds,
            strides,
            values: Vec::new(),
        };
        for (p, v) in entries {
            let Some(idx) = table.index(&p) else {
                return Err(Error::Document(format!(
                    "table entry {p} lies outside the declared box"
                )));
            };
            if values[idx].is_some() {
                return Err(Error::Document(format!("duplicate table entry at {p}")));
            }
            values[idx] = Some(v);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Document(format!("missing table entry #{i}; every in-box point needs a value (use \"inf\" for points outside the effective domain)"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(TableFn { values, ..table })
    }

    /// Builds a dense table by evaluating a closure over the box.
    pub fn from_fn(bounds: LatticeBox, f: impl Fn(&LatticePoint) -> ExtValue) -> Result<Oracle> {
        let entries = bounds.iter_points().map(|p| {
            let v = f(&p);
            (p, v)
        });
        TableFn::oracle(bounds.clone(), entries.collect())
    }

    fn index(&self, p: &LatticePoint) -> Option<usize> {
        if !self.bounds.contains(p) {
            return None;
        }
        let mut idx = 0usize;
        for i in 0..p.dim() {
            idx += self.strides[i] * (p.coords()[i] - self.bounds.lo().coords()[i]) as usize;
        }
        Some(idx)
    }
}

impl Function for TableFn {
    fn dim(&self) -> usize {
        self.bounds.dim()
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        match self.index(x) {
            Some(i) => self.values[i].clone(),
            None => ExtValue::Infinite,
        }
    }

    fn natural_box(&self) -> Option<LatticeBox> {
        Some(self.bounds.clone())
    }
}

/// The indicator of a finite explicit set: 0 on members, `+∞` elsewhere.
pub struct IndicatorFn {
    set: PointSet,
}

impl IndicatorFn {
    pub fn oracle(set: PointSet) -> Result<Oracle> {
        if set.is_empty() {
            return Err(Error::EmptyDomain);
        }
        Ok(Oracle::new(Arc::new(IndicatorFn { set })))
    }
}

impl Function for IndicatorFn {
    fn dim(&self) -> usize {
        self.set.dim()
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        if self.set.contains(x) {
            ExtValue::zero()
        } else {
            ExtValue::Infinite
        }
    }

    fn natural_box(&self) -> Option<LatticeBox> {
        self.set.bounding_box()
    }
}

/// `c . x` on an explicit finite domain set, `+∞` outside.
pub struct LinearOnSetFn {
    cost: Vec<BigRational>,
    domain: PointSet,
}

impl LinearOnSetFn {
    pub fn oracle(cost: Vec<BigRational>, domain: PointSet) -> Result<Oracle> {
        if cost.len() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: domain.dim(),
                got: cost.len(),
            });
        }
        if domain.is_empty() {
            return Err(Error::EmptyDomain);
        }
        Ok(Oracle::new(Arc::new(LinearOnSetFn { cost, domain })))
    }
}

impl Function for LinearOnSetFn {
    fn dim(&self) -> usize {
        self.cost.len()
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        if !self.domain.contains(x) {
            return ExtValue::Infinite;
        }
        let mut acc = BigRational::zero();
        for (c, v) in self.cost.iter().zip(x.iter()) {
            acc += c * BigRational::from_integer(v.into());
        }
        ExtValue::Finite(acc)
    }

    fn natural_box(&self) -> Option<LatticeBox> {
        self.domain.bounding_box()
    }
}

/// An oracle backed by an arbitrary closure; handy in tests and examples.
pub struct ClosureFn<F: Fn(&LatticePoint) -> ExtValue + Send + Sync> {
    pub dim: usize,
    pub f: F,
    pub domain: Option<LatticeBox>,
}

impl<F: Fn(&LatticePoint) -> ExtValue + Send + Sync + 'static> ClosureFn<F> {
    pub fn oracle(dim: usize, f: F) -> Oracle {
        Oracle::new(Arc::new(ClosureFn {
            dim,
            f,
            domain: None,
        }))
    }
}

impl<F: Fn(&LatticePoint) -> ExtValue + Send + Sync> Function for ClosureFn<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        (self.f)(x)
    }

    fn natural_box(&self) -> Option<LatticeBox> {
        self.domain.clone()
    }
}

// ---------------------------------------------------------------------------
// Combinators
// ---------------------------------------------------------------------------

struct Translate {
    base: Arc<dyn Function>,
    shift: LatticePoint,
}

impl Function for Translate {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        self.base.eval(&self.shift.add(x))
    }

    fn natural_box(&self) -> Option<LatticeBox> {
        // f(z + x) is finite iff z + x lies in the base box
        self.base
            .natural_box()
            .map(|b| b.translate(&self.shift.neg()))
    }
}

/// `x \mapsto f(z + x)`.
pub fn translate(f: &Oracle, z: &LatticePoint) -> Result<Oracle> {
    if z.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: z.dim(),
        });
    }
    Ok(f.wrap_sharing_counter(Arc::new(Translate {
        base: f.inner.clone(),
        shift: z.clone(),
    })))
}

struct Permute {
    base: Arc<dyn Function>,
    sigma: Vec<usize>, // 0-based
}

impl Function for Permute {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        let y = LatticePoint::new(self.sigma.iter().map(|&i| x.coords()[i]).collect());
        self.base.eval(&y)
    }
}

/// `x \mapsto f(x_{sigma(1)}, ..., x_{sigma(n)})` with `sigma` 0-based.
pub fn permute(f: &Oracle, sigma: &[usize]) -> Result<Oracle> {
    if sigma.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: sigma.len(),
        });
    }
    let mut seen = vec![false; sigma.len()];
    for &i in sigma {
        if i >= sigma.len() || seen[i] {
            return Err(Error::InvalidArgument("sigma is not a permutation".into()));
        }
        seen[i] = true;
    }
    Ok(f.wrap_sharing_counter(Arc::new(Permute {
        base: f.inner.clone(),
        sigma: sigma.to_vec(),
    })))
}

struct Negate {
    base: Arc<dyn Function>,
}

impl Function for Negate {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        self.base.eval(&x.neg())
    }

    fn natural_box(&self) -> Option<LatticeBox> {
        self.base
            .natural_box()
            .and_then(|b| LatticeBox::new(b.hi().neg(), b.lo().neg()).ok())
    }
}

/// `x \mapsto f(-x)` (all variables negated at once).
pub fn negate_all(f: &Oracle) -> Oracle {
    f.wrap_sharing_counter(Arc::new(Negate {
        base: f.inner.clone(),
    }))
}

struct Scale {
    base: Arc<dyn Function>,
    alpha: i64,
}

impl Function for Scale {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        self.base.eval(&x.scaled(self.alpha))
    }

    fn natural_box(&self) -> Option<LatticeBox> {
        let b = self.base.natural_box()?;
        let lo = LatticePoint::new(b.lo().iter().map(|c| div_ceil(c, self.alpha)).collect());
        let hi = LatticePoint::new(b.hi().iter().map(|c| div_floor(c, self.alpha)).collect());
        LatticeBox::new(lo, hi).ok()
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// The scaling `x \mapsto f(alpha * x)` for a positive integer unit.
pub fn scale_fn(f: &Oracle, alpha: i64) -> Result<Oracle> {
    require_positive(alpha, "scaling unit")?;
    Ok(f.wrap_sharing_counter(Arc::new(Scale {
        base: f.inner.clone(),
        alpha,
    })))
}

struct WeightedSum {
    a1: BigRational,
    a2: BigRational,
    f1: Oracle,
    f2: Oracle,
}

impl Function for WeightedSum {
    fn dim(&self) -> usize {
        self.f1.dim()
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        let left = self.f1.eval(x).scaled(&self.a1);
        if !left.is_finite() {
            // +inf absorbs; the second summand is never consulted
            return ExtValue::Infinite;
        }
        left.plus(&self.f2.eval(x).scaled(&self.a2))
    }

    fn natural_box(&self) -> Option<LatticeBox> {
        match (self.f1.natural_box(), self.f2.natural_box()) {
            (Some(a), Some(b)) => a.intersect(&b),
            (Some(a), None) => Some(a),
            (None, b) => b,
        }
    }
}

/// `a1*f1 + a2*f2` with nonnegative rational weights; `+∞` absorbing, and a
/// zero weight drops its summand entirely.
pub fn weighted_sum(a1: BigRational, a2: BigRational, f1: &Oracle, f2: &Oracle) -> Result<Oracle> {
    if a1.is_negative() || a2.is_negative() {
        return Err(Error::InvalidArgument("weights must be nonnegative".into()));
    }
    if f1.dim() != f2.dim() {
        return Err(Error::DimensionMismatch {
            expected: f1.dim(),
            got: f2.dim(),
        });
    }
    Ok(Oracle::new(Arc::new(WeightedSum {
        a1,
        a2,
        f1: f1.clone(),
        f2: f2.clone(),
    })))
}

// ---------------------------------------------------------------------------
// Box restriction and memoized snapshots
// ---------------------------------------------------------------------------

struct Restrict {
    base: Arc<dyn Function>,
    bounds: LatticeBox,
}

impl Function for Restrict {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn eval(&self, x: &LatticePoint) -> ExtValue {
        if self.bounds.contains(x) {
            self.base.eval(x)
        } else {
            ExtValue::Infinite
        }
    }

    fn natural_box(&self) -> Option<LatticeBox> {
        match self.base.natural_box() {
            Some(b) => b.intersect(&self.bounds),
            None => Some(self.bounds.clone()),
        }
    }
}

/// The restriction of `f` to a box: unchanged inside, `+∞` outside. Shares
/// the counter of `f`.
pub fn restrict(f: &Oracle, bounds: &LatticeBox) -> Result<Oracle> {
    if bounds.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: bounds.dim(),
        });
    }
    Ok(f.wrap_sharing_counter(Arc::new(Restrict {
        base: f.inner.clone(),
        bounds: bounds.clone(),
    })))
}

/// A one-shot memoized view of an oracle: each distinct point is evaluated
/// through the oracle at most once. Used by the minimizers so that
/// evaluation accounting counts distinct points.
pub struct MemoOracle<'a> {
    oracle: &'a Oracle,
    cache: std::cell::RefCell<BTreeMap<LatticePoint, ExtValue>>,
}

impl<'a> MemoOracle<'a> {
    pub fn new(oracle: &'a Oracle) -> Self {
        MemoOracle {
            oracle,
            cache: std::cell::RefCell::new(BTreeMap::new()),
        }
    }

    pub fn eval(&self, x: &LatticePoint) -> ExtValue {
        if let Some(v) = self.cache.borrow().get(x) {
            return v.clone();
        }
        let v = self.oracle.eval(x);
        self.cache.borrow_mut().insert(x.clone(), v.clone());
        v
    }
}

/// Dense snapshot of an oracle over a box with O(1) indexed access, shared
/// by the pair-enumerating checkers so each point is evaluated once.
pub struct BoxSnapshot {
    pub bounds: LatticeBox,
    strides: Vec<usize>,
    pub values: Vec<ExtValue>,
}

impl BoxSnapshot {
    pub fn capture(f: &Oracle, bounds: &LatticeBox) -> Result<BoxSnapshot> {
        if bounds.dim() != f.dim() {
            return Err(Error::DimensionMismatch {
                expected: f.dim(),
                got: bounds.dim(),
            });
        }
        let volume = bounds.volume();
        if volume > 4_000_000 {
            return Err(Error::InvalidArgument(format!(
                "box volume {volume} is beyond desk scale"
            )));
        }
        let mut strides = vec![1usize; bounds.dim()];
        for i in (0..bounds.dim().saturating_sub(1)).rev() {
            let extent = (bounds.hi().coords()[i + 1] - bounds.lo().coords()[i + 1] + 1) as usize;
            strides[i] = strides[i + 1] * extent;
        }
        let mut values = Vec::with_capacity(volume as usize);
        for p in bounds.iter_points() {
            values.push(f.eval(&p));
        }
        Ok(BoxSnapshot {
            bounds: bounds.clone(),
            strides,
            values,
        })
    }

    pub fn value(&self, p: &LatticePoint) -> &ExtValue {
        debug_assert!(self.bounds.contains(p));
        let mut idx = 0usize;
        for i in 0..p.dim() {
            idx += self.strides[i] * (p.coords()[i] - self.bounds.lo().coords()[i]) as usize;
        }
        &self.values[idx]
    }

    /// Points of the effective domain inside the box, in scan order.
    pub fn domain_scan(&self) -> Vec<LatticePoint> {
        self.bounds
            .iter_scan()
            .filter(|p| self.value(p).is_finite())
            .collect()
    }
}
