//! Exact lattice primitives: integer points, rational points, extended
//! values, boxes, midpoint rounding, integer neighborhoods, and the chain
//! step-decomposition of a difference vector.
//!
//! Everything here is exact; no floating point. All values are immutable
//! after construction and safe to share across threads.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// LatticePoint
// ---------------------------------------------------------------------------

/// A point of the integer lattice. The derived `Ord` is plain lexicographic
/// order on coordinates, used for tie-breaking in the minimizers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `max_i |x_i|`.
    pub fn linf_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// `max(0, x_1, ..., x_n)`.
    pub fn linf_norm_pos(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0).max(0)
    }

    /// `max(0, -x_1, ..., -x_n)`.
    pub fn linf_norm_neg(&self) -> i64 {
        self.0.iter().map(|&c| -c).max().unwrap_or(0).max(0)
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.dim(), other.dim());
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.dim(), other.dim());
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|&a| -a).collect())
    }

    pub fn scaled(&self, k: i64) -> LatticePoint {
        LatticePoint(self.0.iter().map(|&a| a * k).collect())
    }

    /// Componentwise maximum (lattice join).
    pub fn join(&self, other: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.dim(), other.dim());
        LatticePoint(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Componentwise minimum (lattice meet).
    pub fn meet(&self, other: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.dim(), other.dim());
        LatticePoint(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// `self <= other` componentwise.
    pub fn le(&self, other: &LatticePoint) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Comparable in the componentwise order (`<=` or `>=`).
    pub fn comparable(&self, other: &LatticePoint) -> bool {
        self.le(other) || other.le(self)
    }

    /// Indices with positive component, 0-based sorted.
    pub fn pos_support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.0[i] > 0).collect()
    }

    /// Indices with negative component, 0-based sorted.
    pub fn neg_support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.0[i] < 0).collect()
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint(
            self.0
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Rational midpoint `(x + y) / 2`.
    pub fn midpoint(&self, other: &LatticePoint) -> RationalPoint {
        debug_assert_eq!(self.dim(), other.dim());
        let two = BigInt::from(2);
        RationalPoint(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| BigRational::new(BigInt::from(a + b), two.clone()))
                .collect(),
        )
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }
}

impl From<&[i64]> for LatticePoint {
    fn from(coords: &[i64]) -> Self {
        LatticePoint(coords.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(coords: [i64; N]) -> Self {
        LatticePoint(coords.to_vec())
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(LatticePoint(Vec::<i64>::deserialize(d)?))
    }
}

/// `max_i |x_i - y_i|`, the metric behind every neighborhood here.
pub fn linf_distance(x: &LatticePoint, y: &LatticePoint) -> Result<i64> {
    check_dims(x.dim(), y.dim())?;
    Ok(x.sub(y).linf_norm())
}

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Componentwise `(ceil((x+y)/2), floor((x+y)/2))`.
///
/// The two roundings satisfy `up + down = x + y` and `up - down` is the
/// 0/1-indicator of the coordinates where `x_i + y_i` is odd.
pub fn midpoint_round(x: &LatticePoint, y: &LatticePoint) -> Result<(LatticePoint, LatticePoint)> {
    check_dims(x.dim(), y.dim())?;
    let mut up = Vec::with_capacity(x.dim());
    let mut down = Vec::with_capacity(x.dim());
    for (a, b) in x.iter().zip(y.iter()) {
        let s = a + b;
        down.push(s >> 1); // arithmetic shift: floor division by 2
        up.push(-((-s) >> 1));
    }
    Ok((LatticePoint(up), LatticePoint(down)))
}

// ---------------------------------------------------------------------------
// Scan order
// ---------------------------------------------------------------------------

/// Deterministic scan order on lattice points used by all pair-enumerating
/// checkers: each coordinate ranks nonnegative values ascending before
/// negative values ascending (`0 < 1 < 2 < ... < -2 < -1`), compared
/// coordinate-by-coordinate. Witnesses are pinned to this order.
pub fn scan_cmp(a: &LatticePoint, b: &LatticePoint) -> Ordering {
    debug_assert_eq!(a.dim(), b.dim());
    for (x, y) in a.iter().zip(b.iter()) {
        let o = scan_key(x).cmp(&scan_key(y));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

fn scan_key(v: i64) -> (bool, i64) {
    (v < 0, v)
}

// ---------------------------------------------------------------------------
// LatticeBox
// ---------------------------------------------------------------------------

/// Componentwise integer bounds; the finite window every enumeration runs on.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LatticeBox {
    lo: LatticePoint,
    hi: LatticePoint,
}

impl LatticeBox {
    pub fn new(lo: LatticePoint, hi: LatticePoint) -> Result<Self> {
        check_dims(lo.dim(), hi.dim())?;
        for i in 0..lo.dim() {
            if lo.coords()[i] > hi.coords()[i] {
                return Err(Error::InvalidBox { coord: i });
            }
        }
        Ok(LatticeBox { lo, hi })
    }

    /// The cube `[-r, r]^n`.
    pub fn centered(dim: usize, r: i64) -> Self {
        LatticeBox {
            lo: LatticePoint(vec![-r.abs(); dim]),
            hi: LatticePoint(vec![r.abs(); dim]),
        }
    }

    /// Smallest box containing all given points.
    pub fn hull<'a>(points: impl IntoIterator<Item = &'a LatticePoint>) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut lo = first.0.clone();
        let mut hi = first.0.clone();
        for p in it {
            for i in 0..lo.len() {
                lo[i] = lo[i].min(p.0[i]);
                hi[i] = hi[i].max(p.0[i]);
            }
        }
        Some(LatticeBox {
            lo: LatticePoint(lo),
            hi: LatticePoint(hi),
        })
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn lo(&self) -> &LatticePoint {
        &self.lo
    }

    pub fn hi(&self) -> &LatticePoint {
        &self.hi
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.dim() == self.dim()
            && p.iter()
                .zip(self.lo.iter().zip(self.hi.iter()))
                .all(|(v, (l, h))| l <= v && v <= h)
    }

    pub fn volume(&self) -> u128 {
        self.lo
            .iter()
            .zip(self.hi.iter())
            .map(|(l, h)| (h - l + 1) as u128)
            .product()
    }

    /// `max_i (hi_i - lo_i)`.
    pub fn diameter(&self) -> i64 {
        self.lo
            .iter()
            .zip(self.hi.iter())
            .map(|(l, h)| h - l)
            .max()
            .unwrap_or(0)
    }

    pub fn intersect(&self, other: &LatticeBox) -> Option<LatticeBox> {
        if self.dim() != other.dim() {
            return None;
        }
        let lo = self.lo.join(&other.lo);
        let hi = self.hi.meet(&other.hi);
        LatticeBox::new(lo, hi).ok()
    }

    pub fn translate(&self, z: &LatticePoint) -> LatticeBox {
        LatticeBox {
            lo: self.lo.add(z),
            hi: self.hi.add(z),
        }
    }

    /// Points in ascending plain-lexicographic order.
    pub fn iter_points(&self) -> BoxIter {
        BoxIter::new(self, false)
    }

    /// Points in the checker scan order (see [`scan_cmp`]).
    pub fn iter_scan(&self) -> BoxIter {
        BoxIter::new(self, true)
    }
}

/// Odometer over a box, in either plain-lex or scan order.
pub struct BoxIter {
    axes: Vec<Vec<i64>>,
    idx: Vec<usize>,
    done: bool,
}

impl BoxIter {
    fn new(b: &LatticeBox, scan: bool) -> Self {
        let axes: Vec<Vec<i64>> =
            b.lo.iter()
                .zip(b.hi.iter())
                .map(|(l, h)| {
                    let mut vals: Vec<i64> = (l..=h).collect();
                    if scan {
                        vals.sort_by_key(|&v| scan_key(v));
                    }
                    vals
                })
                .collect();
        BoxIter {
            idx: vec![0; axes.len()],
            axes,
            done: false,
        }
    }
}

impl Iterator for BoxIter {
    type Item = LatticePoint;

    fn next(&mut self) -> Option<LatticePoint> {
        if self.done {
            return None;
        }
        let p = LatticePoint(
            self.idx
                .iter()
                .zip(&self.axes)
                .map(|(&i, ax)| ax[i])
                .collect(),
        );
        // advance odometer, last axis fastest
        let mut k = self.axes.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.idx[k] += 1;
            if self.idx[k] < self.axes[k].len() {
                break;
            }
            self.idx[k] = 0;
        }
        Some(p)
    }
}

// ---------------------------------------------------------------------------
// RationalPoint
// ---------------------------------------------------------------------------

/// A point with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPoint(Vec<BigRational>);

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalPoint(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Parses `"3,-1/2,0"` style coordinate lists.
    pub fn parse(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::InvalidArgument("empty coordinate list".into()));
        }
        Ok(RationalPoint(coords))
    }
}

impl From<&LatticePoint> for RationalPoint {
    fn from(p: &LatticePoint) -> Self {
        p.to_rational()
    }
}

pub fn parse_rational(t: &str) -> Result<BigRational> {
    let mk = |msg: String| Error::InvalidArgument(msg);
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| mk(format!("bad numerator in {t:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| mk(format!("bad denominator in {t:?}")))?;
        if d.is_zero() {
            return Err(mk(format!("zero denominator in {t:?}")));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = t
            .parse()
            .map_err(|_| mk(format!("not an integer or p/q rational: {t:?}")))?;
        Ok(BigRational::from_integer(n))
    }
}

/// The integer neighborhood `N(x) = { z integral : |x_i - z_i| < 1 }`,
/// returned in ascending lexicographic order. Integral coordinates admit a
/// single value; fractional ones admit floor and ceiling, so the size is
/// `2^(number of fractional coordinates)`.
pub fn integer_neighborhood(x: &RationalPoint) -> Vec<LatticePoint> {
    let axes: Vec<Vec<i64>> = x
        .coords()
        .iter()
        .map(|c| {
            if c.is_integer() {
                vec![big_to_i64(&c.to_integer())]
            } else {
                let f = big_to_i64(&c.floor().to_integer());
                vec![f, f + 1]
            }
        })
        .collect();
    let mut out = vec![Vec::with_capacity(axes.len())];
    for ax in &axes {
        let mut next = Vec::with_capacity(out.len() * ax.len());
        for prefix in &out {
            for &v in ax {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(LatticePoint).collect()
}

pub(crate) fn big_to_i64(b: &BigInt) -> i64 {
    b.to_i64().expect("lattice coordinate exceeds i64 range")
}

// ---------------------------------------------------------------------------
// ExtValue
// ---------------------------------------------------------------------------

/// A value in `Q ∪ {+∞}`. Addition absorbs `+∞`; the order is total with
/// `+∞` maximal; subtracting `+∞` is an error, never silently zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtValue {
    Finite(BigRational),
    Infinite,
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue::Finite(BigRational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        ExtValue::Finite(BigRational::from_integer(v.into()))
    }

    pub fn infinite() -> Self {
        ExtValue::Infinite
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtValue::Finite(r) => Some(r),
            ExtValue::Infinite => None,
        }
    }

    pub fn plus(&self, other: &ExtValue) -> ExtValue {
        match (self, other) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Infinite,
        }
    }

    /// `self - other`; errors when `other` is `+∞`.
    pub fn checked_sub(&self, other: &ExtValue) -> Result<ExtValue> {
        match (self, other) {
            (_, ExtValue::Infinite) => Err(Error::InfiniteSubtraction),
            (ExtValue::Infinite, _) => Ok(ExtValue::Infinite),
            (ExtValue::Finite(a), ExtValue::Finite(b)) => Ok(ExtValue::Finite(a - b)),
        }
    }

    pub fn double(&self) -> ExtValue {
        match self {
            ExtValue::Finite(r) => ExtValue::Finite(r + r),
            ExtValue::Infinite => ExtValue::Infinite,
        }
    }

    /// `c * self` for a nonnegative finite coefficient. `0 * ∞ = 0` here so
    /// that zero-weighted summands drop out of weighted sums.
    pub fn scaled(&self, c: &BigRational) -> ExtValue {
        debug_assert!(!c.is_negative());
        if c.is_zero() {
            return ExtValue::zero();
        }
        match self {
            ExtValue::Finite(r) => ExtValue::Finite(r * c),
            ExtValue::Infinite => ExtValue::Infinite,
        }
    }

    pub fn to_string_exact(&self) -> String {
        match self {
            ExtValue::Finite(r) => r.to_string(),
            ExtValue::Infinite => "inf".to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s == "inf" {
            Ok(ExtValue::Infinite)
        } else {
            Ok(ExtValue::Finite(parse_rational(s)?))
        }
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtValue::Infinite, ExtValue::Infinite) => Ordering::Equal,
            (ExtValue::Infinite, ExtValue::Finite(_)) => Ordering::Greater,
            (ExtValue::Finite(_), ExtValue::Infinite) => Ordering::Less,
            (ExtValue::Finite(a), ExtValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_exact())
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string_exact())
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        ext_value_from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Accepts `"inf"`, `"p/q"` strings, and integer literals. Float literals
/// are rejected: exact boundary decisions must not pass through binary
/// floating point.
pub fn ext_value_from_json(v: &serde_json::Value) -> Result<ExtValue> {
    match v {
        serde_json::Value::String(s) => ExtValue::parse(s),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(ExtValue::from_int(i))
            } else {
                Err(Error::Document(format!(
                    "non-integer numeric literal {n}; write rationals as \"p/q\" strings"
                )))
            }
        }
        other => Err(Error::Document(format!(
            "expected rational value, got {other}"
        ))),
    }
}

pub fn rational_from_json(v: &serde_json::Value) -> Result<BigRational> {
    match ext_value_from_json(v)? {
        ExtValue::Finite(r) => Ok(r),
        ExtValue::Infinite => Err(Error::Document(
            "expected a finite rational, got inf".into(),
        )),
    }
}

/// Serde adapter for `BigRational` fields rendered as `"p/q"` strings.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// StepChain
// ---------------------------------------------------------------------------

/// One step of a chain decomposition: the 0-based coordinate sets raised by
/// one and lowered by one.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ChainStep {
    pub raise: Vec<usize>,
    pub lower: Vec<usize>,
}

impl ChainStep {
    pub fn vector(&self, dim: usize) -> LatticePoint {
        let mut v = vec![0i64; dim];
        for &i in &self.raise {
            v[i] = 1;
        }
        for &i in &self.lower {
            v[i] = -1;
        }
        LatticePoint::new(v)
    }
}

/// The ordered decomposition of a nonzero vector `v` into `m = ||v||_inf`
/// steps in `{-1,0,+1}^n`: step `k` (1-based) raises `{ i : v_i >= m+1-k }`
/// and lowers `{ i : v_i <= -k }`. Raise sets grow along the chain, lower
/// sets shrink, the last raise set is disjoint from the first lower set, and
/// the sum of the step vectors reconstructs `v`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StepChain {
    dim: usize,
    steps: Vec<ChainStep>,
}

impl StepChain {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[ChainStep] {
        &self.steps
    }

    pub fn step_vector(&self, k: usize) -> LatticePoint {
        self.steps[k].vector(self.dim)
    }

    pub fn step_vectors(&self) -> Vec<LatticePoint> {
        (0..self.len()).map(|k| self.step_vector(k)).collect()
    }

    /// Sum of the steps selected by the 0-based index set `j`.
    pub fn partial_sum(&self, j: &[usize]) -> Result<LatticePoint> {
        let mut v = vec![0i64; self.dim];
        for &k in j {
            if k >= self.steps.len() {
                return Err(Error::StepIndexOutOfRange {
                    index: k,
                    len: self.steps.len(),
                });
            }
            for &i in &self.steps[k].raise {
                v[i] += 1;
            }
            for &i in &self.steps[k].lower {
                v[i] -= 1;
            }
        }
        Ok(LatticePoint::new(v))
    }

    pub fn reconstruct(&self) -> LatticePoint {
        self.partial_sum(&(0..self.len()).collect::<Vec<_>>())
            .expect("full index set is in range")
    }

    /// Checks the four chain conditions and the step count.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(format!("broken step chain: {msg}")));
        let m = self.steps.len();
        if m == 0 {
            return bad("no steps");
        }
        for k in 1..m {
            if !is_subset(&self.steps[k - 1].raise, &self.steps[k].raise) {
                return bad("raise sets do not form an increasing chain");
            }
            if !is_subset(&self.steps[k].lower, &self.steps[k - 1].lower) {
                return bad("lower sets do not form a decreasing chain");
            }
        }
        if self.steps[m - 1]
            .raise
            .iter()
            .any(|i| self.steps[0].lower.contains(i))
        {
            return bad("last raise set intersects first lower set");
        }
        if self.steps[0].raise.is_empty() && self.steps[m - 1].lower.is_empty() {
            return bad("first raise set and last lower set are both empty");
        }
        let v = self.reconstruct();
        if v.linf_norm() != m as i64 {
            return bad("step count differs from the sup-norm of the reconstruction");
        }
        Ok(())
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Canonical step decomposition of a nonzero difference vector.
pub fn step_decompose(v: &LatticePoint) -> Result<StepChain> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let m = v.linf_norm();
    let mut steps = Vec::with_capacity(m as usize);
    for k in 1..=m {
        let raise = (0..v.dim())
            .filter(|&i| v.coords()[i] >= m + 1 - k)
            .collect();
        let lower = (0..v.dim()).filter(|&i| v.coords()[i] <= -k).collect();
        steps.push(ChainStep { raise, lower });
    }
    let chain = StepChain {
        dim: v.dim(),
        steps,
    };
    debug_assert!(chain.validate().is_ok());
    debug_assert_eq!(&chain.reconstruct(), v);
    Ok(chain)
}

impl fmt::Display for StepChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 1-based presentation of both step indices and coordinate sets
        for (k, s) in self.steps.iter().enumerate() {
            let fmt_set = |xs: &[usize]| {
                if xs.is_empty() {
                    "{}".to_string()
                } else {
                    format!(
                        "{{{}}}",
                        xs.iter()
                            .map(|i| (i + 1).to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                }
            };
            writeln!(
                f,
                "k={}: A={} B={}",
                k + 1,
                fmt_set(&s.raise),
                fmt_set(&s.lower)
            )?;
        }
        Ok(())
    }
}

/// Scaling units and other strictly positive integers.
pub fn require_positive(alpha: i64, what: &str) -> Result<()> {
    if alpha < 1 {
        return Err(Error::InvalidArgument(format!(
            "{what} must be a positive integer, got {alpha}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn pt(v: &[i64]) -> LatticePoint {
        LatticePoint::from(v)
    }

    #[test]
    fn linf_distance_examples() {
        assert_eq!(linf_distance(&pt(&[0, 0]), &pt(&[3, -3])).unwrap(), 3);
        assert_eq!(linf_distance(&pt(&[5, -5]), &pt(&[5, -5])).unwrap(), 0);
        assert_eq!(
            linf_distance(&pt(&[0, 0, 0, 0, 0, 0, 0]), &pt(&[4, 2, 1, 0, -1, -2, -2])).unwrap(),
            4
        );
        assert!(linf_distance(&pt(&[0]), &pt(&[0, 0])).is_err());
    }

    #[test]
    fn midpoint_round_examples() {
        let (up, down) = midpoint_round(&pt(&[0, 0]), &pt(&[3, -3])).unwrap();
        assert_eq!(up, pt(&[2, -1]));
        assert_eq!(down, pt(&[1, -2]));

        let (up, down) = midpoint_round(&pt(&[1, 0, 0]), &pt(&[0, 1, 2])).unwrap();
        assert_eq!(up, pt(&[1, 1, 1]));
        assert_eq!(down, pt(&[0, 0, 1]));

        let (up, down) = midpoint_round(&pt(&[5, -5]), &pt(&[5, -5])).unwrap();
        assert_eq!(up, pt(&[5, -5]));
        assert_eq!(down, pt(&[5, -5]));
    }

    #[test]
    fn integer_neighborhood_examples() {
        let half = RationalPoint::parse("1/2,1/2").unwrap();
        let n = integer_neighborhood(&half);
        assert_eq!(n, vec![pt(&[0, 0]), pt(&[0, 1]), pt(&[1, 0]), pt(&[1, 1])]);

        let integral = RationalPoint::parse("2,-1").unwrap();
        assert_eq!(integer_neighborhood(&integral), vec![pt(&[2, -1])]);

        let mixed = RationalPoint::parse("3/2,-3/2,0").unwrap();
        assert_eq!(
            integer_neighborhood(&mixed),
            vec![
                pt(&[1, -2, 0]),
                pt(&[1, -1, 0]),
                pt(&[2, -2, 0]),
                pt(&[2, -1, 0])
            ]
        );
    }

    #[test]
    fn step_decompose_seven_dim_example() {
        let v = pt(&[4, 2, 1, 0, -1, -2, -2]);
        let c = step_decompose(&v).unwrap();
        assert_eq!(c.len(), 4);
        // 0-based sets; 1-based presentation would be A = ({1},{1},{1,2},{1,2,3})
        assert_eq!(c.steps()[0].raise, vec![0]);
        assert_eq!(c.steps()[1].raise, vec![0]);
        assert_eq!(c.steps()[2].raise, vec![0, 1]);
        assert_eq!(c.steps()[3].raise, vec![0, 1, 2]);
        assert_eq!(c.steps()[0].lower, vec![4, 5, 6]);
        assert_eq!(c.steps()[1].lower, vec![5, 6]);
        assert_eq!(c.steps()[2].lower, Vec::<usize>::new());
        assert_eq!(c.steps()[3].lower, Vec::<usize>::new());
        assert_eq!(c.reconstruct(), v);
    }

    #[test]
    fn step_decompose_parallelogram_example() {
        let c = step_decompose(&pt(&[4, -2])).unwrap();
        let vs = c.step_vectors();
        assert_eq!(
            vs,
            vec![pt(&[1, -1]), pt(&[1, -1]), pt(&[1, 0]), pt(&[1, 0])]
        );
    }

    #[test]
    fn step_decompose_unit() {
        let c = step_decompose(&pt(&[1])).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.steps()[0].raise, vec![0]);
        assert!(c.steps()[0].lower.is_empty());
        assert!(step_decompose(&pt(&[0, 0])).is_err());
    }

    #[test]
    fn chain_partial_sums() {
        let c = step_decompose(&pt(&[4, -2])).unwrap();
        assert_eq!(c.partial_sum(&[0, 1]).unwrap(), pt(&[2, -2]));
        assert_eq!(c.partial_sum(&[]).unwrap(), pt(&[0, 0]));
        let full = step_decompose(&pt(&[4, 2, 1, 0, -1, -2, -2])).unwrap();
        assert_eq!(
            full.partial_sum(&[0, 1, 2, 3]).unwrap(),
            pt(&[4, 2, 1, 0, -1, -2, -2])
        );
        assert!(matches!(
            c.partial_sum(&[9]),
            Err(Error::StepIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn scan_order_ranks_nonnegatives_first() {
        let b = LatticeBox::centered(1, 2);
        let order: Vec<i64> = b.iter_scan().map(|p| p.coords()[0]).collect();
        assert_eq!(order, vec![0, 1, 2, -2, -1]);
        assert_eq!(scan_cmp(&pt(&[3, -3]), &pt(&[-3, 3])), Ordering::Less);
    }

    #[test]
    fn ext_value_order_and_arith() {
        let two = ExtValue::from_int(2);
        let inf = ExtValue::infinite();
        assert!(two < inf);
        assert_eq!(two.plus(&inf), inf);
        assert!(inf.checked_sub(&inf).is_err());
        assert_eq!(ExtValue::parse("4/5").unwrap().to_string_exact(), "4/5");
        assert_eq!(ExtValue::parse("inf").unwrap(), inf);
        assert!(ExtValue::parse("0.5").is_err());
    }

    proptest! {
        #[test]
        fn midpoint_roundings_sum_exactly(xs in proptest::collection::vec(-20i64..20, 1..6),
                                          ys in proptest::collection::vec(-20i64..20, 1..6)) {
            let n = xs.len().min(ys.len());
            let x = pt(&xs[..n]);
            let y = pt(&ys[..n]);
            let (up, down) = midpoint_round(&x, &y).unwrap();
            prop_assert_eq!(up.add(&down), x.add(&y));
            for i in 0..n {
                let d = up.coords()[i] - down.coords()[i];
                prop_assert!(d == 0 || d == 1);
                prop_assert_eq!(d == 1, (x.coords()[i] + y.coords()[i]).rem_euclid(2) == 1);
            }
        }

        #[test]
        fn step_chain_invariants(vs in proptest::collection::vec(-9i64..9, 1..7)) {
            prop_assume!(vs.iter().any(|&c| c != 0));
            let v = pt(&vs);
            let c = step_decompose(&v).unwrap();
            c.validate().unwrap();
            prop_assert_eq!(c.len() as i64, v.linf_norm());
            prop_assert_eq!(c.reconstruct(), v);
        }

        #[test]
        fn partial_sums_of_a_bipartition_cover(vs in proptest::collection::vec(-7i64..7, 1..6),
                                               mask in 0u32..1024) {
            prop_assume!(vs.iter().any(|&c| c != 0));
            let v = pt(&vs);
            let c = step_decompose(&v).unwrap();
            let left: Vec<usize> = (0..c.len()).filter(|k| mask & (1 << k) != 0).collect();
            let right: Vec<usize> = (0..c.len()).filter(|k| mask & (1 << k) == 0).collect();
            let sum = c.partial_sum(&left).unwrap().add(&c.partial_sum(&right).unwrap());
            prop_assert_eq!(sum, v);
        }

        #[test]
        fn neighborhood_cardinality(nums in proptest::collection::vec((-12i64..12, 1i64..4), 1..5)) {
            let coords: Vec<BigRational> = nums.iter()
                .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                .collect();
            let fractional = coords.iter().filter(|c| !c.is_integer()).count();
            let x = RationalPoint::new(coords);
            let n = integer_neighborhood(&x);
            prop_assert_eq!(n.len(), 1usize << fractional);
            for z in &n {
                for (zc, xc) in z.iter().zip(x.coords()) {
                    let diff = BigRational::from_integer(zc.into()) - xc;
                    prop_assert!(diff.abs() < BigRational::one());
                }
            }
        }
    }
}
