//! Midpoint convex point sets and the constructive decomposition pipeline.
//!
//! A set `S` of lattice points is discrete midpoint convex when for every
//! pair `x, y` in `S` at sup-distance at least two, both midpoint roundings
//! stay in `S`. Such sets admit a parallelogram property: for the canonical
//! chain decomposition of `y - x`, every partial sum `d` keeps `x + d` and
//! `y - d` inside the set.
//!
//! The decomposition pipeline turns an arbitrary nonzero integer vector
//! into a multiset of `{-1,0,+1}` steps in three stages:
//!
//! - stage 0 recursively splits `v` into ceil/floor halves;
//! - stage 1 merges one extremal pair per "critical" vector (odd sup-norm
//!   at least 3 with equal positive and negative parts) so the step count
//!   equals the sup-norm;
//! - stage 2 repeatedly replaces incomparable pairs by the roundings of
//!   their average until the steps form a chain, at which point the result
//!   coincides with the canonical step decomposition.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::classify::{Verdict, Witness};
use crate::error::{Error, Result};
use crate::lattice::{
    linf_distance, midpoint_round, require_positive, scan_cmp, step_decompose, ExtValue,
    LatticeBox, LatticePoint, StepChain,
};

// ---------------------------------------------------------------------------
// PointSet
// ---------------------------------------------------------------------------

/// A finite set of lattice points of uniform dimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointSet {
    dim: usize,
    points: BTreeSet<LatticePoint>,
}

impl PointSet {
    pub fn new(dim: usize, points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "point set dimension must be at least 1".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            set.insert(p);
        }
        Ok(PointSet { dim, points: set })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticePoint> {
        self.points.iter()
    }

    /// Members sorted in the checker scan order.
    pub fn scan_sorted(&self) -> Vec<LatticePoint> {
        let mut v: Vec<LatticePoint> = self.points.iter().cloned().collect();
        v.sort_by(scan_cmp);
        v
    }

    pub fn bounding_box(&self) -> Option<LatticeBox> {
        LatticeBox::hull(self.points.iter())
    }

    /// Largest sup-distance between two members.
    pub fn diameter(&self) -> i64 {
        match self.bounding_box() {
            Some(b) => b.diameter(),
            None => 0,
        }
    }
}

/// JSON form of a point set: `{"dim": n, "points": [[..], ..]}`.
#[derive(Serialize, Deserialize)]
pub struct PointSetDocument {
    pub dim: usize,
    pub points: Vec<LatticePoint>,
}

impl PointSet {
    pub fn from_document(doc: &PointSetDocument) -> Result<Self> {
        PointSet::new(doc.dim, doc.points.iter().cloned())
    }

    pub fn to_document(&self) -> PointSetDocument {
        PointSetDocument {
            dim: self.dim,
            points: self.scan_sorted(),
        }
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: PointSetDocument =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        PointSet::from_document(&doc)
    }
}

// ---------------------------------------------------------------------------
// Set checks
// ---------------------------------------------------------------------------

/// Checks closure under midpoint rounding for all member pairs at
/// sup-distance at least two. Pairs are scanned in the deterministic order
/// of [`scan_cmp`]; the witness is the first violating pair, with indicator
/// values (0 for members, `inf` for the missing rounding side).
pub fn is_dmc_set(s: &PointSet) -> Verdict {
    let pts = s.scan_sorted();
    let mut pairs = 0u64;
    let mut witness = None;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let (x, y) = (&pts[i], &pts[j]);
            if linf_distance(x, y).expect("uniform dimension") < 2 {
                continue;
            }
            pairs += 1;
            if witness.is_some() {
                continue;
            }
            let (up, down) = midpoint_round(x, y).expect("uniform dimension");
            if !(s.contains(&up) && s.contains(&down)) {
                let miss = |p: &LatticePoint| {
                    if s.contains(p) {
                        ExtValue::zero()
                    } else {
                        ExtValue::infinite()
                    }
                };
                witness = Some(Witness {
                    x: x.clone(),
                    y: y.clone(),
                    lhs: ExtValue::zero(),
                    rhs: miss(&up).plus(&miss(&down)),
                });
            }
        }
    }
    Verdict {
        holds: witness.is_none(),
        witness,
        pairs_checked: pairs,
    }
}

/// The preimage `{ x : alpha*x in S }`.
pub fn scale_set(s: &PointSet, alpha: i64) -> Result<PointSet> {
    require_positive(alpha, "scaling unit")?;
    let scaled = s
        .iter()
        .filter(|p| p.iter().all(|c| c % alpha == 0))
        .map(|p| LatticePoint::new(p.iter().map(|c| c / alpha).collect()));
    PointSet::new(s.dim(), scaled)
}

/// For members `x, y` and a 0-based step subset `j`, returns
/// `(x + d, y - d)` where `d` is the partial sum of the chain decomposition
/// of `y - x`. For a midpoint convex set both returned points are members.
pub fn parallelogram_points(
    s: &PointSet,
    x: &LatticePoint,
    y: &LatticePoint,
    j: &[usize],
) -> Result<(LatticePoint, LatticePoint)> {
    for p in [x, y] {
        if !s.contains(p) {
            return Err(Error::OutsideDomain(p.to_string()));
        }
    }
    if x == y {
        return Err(Error::InvalidArgument(
            "parallelogram endpoints must differ".into(),
        ));
    }
    let chain = step_decompose(&y.sub(x))?;
    let d = chain.partial_sum(j)?;
    Ok((x.add(&d), y.sub(&d)))
}

/// Exhaustively verifies that every subset of the stage-2 decomposition of
/// `y - x` keeps `x + sum(subset)` inside the certified midpoint convex set.
/// This is the executable form of the parallelogram property.
pub fn set_membership_sweep(s: &PointSet, x: &LatticePoint, y: &LatticePoint) -> Result<Verdict> {
    if !is_dmc_set(s).holds {
        return Err(Error::InvalidArgument(
            "set_membership_sweep requires a midpoint convex set".into(),
        ));
    }
    for p in [x, y] {
        if !s.contains(p) {
            return Err(Error::OutsideDomain(p.to_string()));
        }
    }
    if x == y {
        return Err(Error::InvalidArgument("sweep endpoints must differ".into()));
    }
    let dec = d2_decompose(&y.sub(x))?;
    let m = dec.vectors.len();
    if m > 24 {
        return Err(Error::InvalidArgument(format!(
            "2^{m} subsets is beyond desk scale"
        )));
    }
    let mut checked = 0u64;
    let mut witness = None;
    for mask in 0u32..(1 << m) {
        let mut p = x.clone();
        for (k, d) in dec.vectors.iter().enumerate() {
            if mask & (1 << k) != 0 {
                p = p.add(d);
            }
        }
        checked += 1;
        if witness.is_none() && !s.contains(&p) {
            witness = Some(Witness {
                x: x.clone(),
                y: p,
                lhs: ExtValue::zero(),
                rhs: ExtValue::infinite(),
            });
        }
    }
    Ok(Verdict {
        holds: witness.is_none(),
        witness,
        pairs_checked: checked,
    })
}

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    D0,
    D1,
    D2,
}

/// One incomparable-pair replacement performed by stage 2.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Twist {
    pub removed: (LatticePoint, LatticePoint),
    pub inserted: (LatticePoint, LatticePoint),
}

/// A multiset of `{-1,0,+1}` step vectors summing to the decomposed vector,
/// stored sorted lexicographically; equality is multiset equality.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Decomposition {
    pub stage: Stage,
    pub vectors: Vec<LatticePoint>,
    /// Replacement trace; empty except for stage 2.
    pub twists: Vec<Twist>,
}

fn ceil_half(v: &LatticePoint) -> LatticePoint {
    LatticePoint::new(v.iter().map(|c| -((-c) >> 1)).collect())
}

fn floor_half(v: &LatticePoint) -> LatticePoint {
    LatticePoint::new(v.iter().map(|c| c >> 1).collect())
}

/// True iff the sup-norm is odd, at least 3, and the positive and negative
/// parts agree. Critical vectors are where the naive recursive split
/// overshoots the step count.
pub fn critical_check(v: &LatticePoint) -> bool {
    let norm = v.linf_norm();
    norm >= 3 && norm % 2 == 1 && v.linf_norm_pos() == v.linf_norm_neg()
}

/// Iterated rounding toward the positive part: the extremal all-{0,1} step.
fn d_plus(v: &LatticePoint) -> LatticePoint {
    let mut y = v.clone();
    while y.linf_norm() > 1 {
        y = ceil_half(&y);
    }
    y
}

/// Iterated rounding toward the negative part: the extremal all-{0,-1} step.
fn d_minus(v: &LatticePoint) -> LatticePoint {
    let mut y = v.clone();
    while y.linf_norm() > 1 {
        y = floor_half(&y);
    }
    y
}

fn d0_vectors(v: &LatticePoint) -> Vec<LatticePoint> {
    match v.linf_norm() {
        0 => vec![],
        1 => vec![v.clone()],
        2 => vec![ceil_half(v), floor_half(v)],
        _ => {
            let mut out = d0_vectors(&ceil_half(v));
            out.extend(d0_vectors(&floor_half(v)));
            out
        }
    }
}

fn d1_vectors(v: &LatticePoint) -> Vec<LatticePoint> {
    match v.linf_norm() {
        0 => vec![],
        1 => vec![v.clone()],
        2 => vec![ceil_half(v), floor_half(v)],
        _ => {
            let mut up = d1_vectors(&ceil_half(v));
            let mut down = d1_vectors(&floor_half(v));
            if critical_check(v) {
                let dp = d_plus(v);
                let dm = d_minus(v);
                remove_one(&mut up, &dp);
                remove_one(&mut down, &dm);
                up.extend(down);
                up.push(dp.add(&dm));
                up
            } else {
                up.extend(down);
                up
            }
        }
    }
}

fn remove_one(vs: &mut Vec<LatticePoint>, target: &LatticePoint) {
    let idx = vs
        .iter()
        .position(|v| v == target)
        .expect("extremal step must occur in the child decomposition");
    vs.remove(idx);
}

fn sorted(mut vs: Vec<LatticePoint>) -> Vec<LatticePoint> {
    vs.sort();
    vs
}

/// Stage-0 decomposition by recursive ceil/floor halving.
pub fn d0_decompose(v: &LatticePoint) -> Result<Decomposition> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(Decomposition {
        stage: Stage::D0,
        vectors: sorted(d0_vectors(v)),
        twists: vec![],
    })
}

/// Stage-1 decomposition: stage 0 with one extremal-pair merge per critical
/// vector, which makes the step count equal the sup-norm.
pub fn d1_decompose(v: &LatticePoint) -> Result<Decomposition> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(Decomposition {
        stage: Stage::D1,
        vectors: sorted(d1_vectors(v)),
        twists: vec![],
    })
}

/// Stage-2 decomposition: repeatedly replaces the lexicographically first
/// incomparable pair by the roundings of its average until the vectors form
/// a chain. The result equals the step vectors of [`step_decompose`].
pub fn d2_decompose(v: &LatticePoint) -> Result<Decomposition> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut vs = sorted(d1_vectors(v));
    let mut twists = Vec::new();
    // Each twist strictly reduces disorder; cap generously to surface bugs.
    let cap = 64 * vs.len() * vs.len() + 64;
    loop {
        let mut found = None;
        'scan: for i in 0..vs.len() {
            for j in (i + 1)..vs.len() {
                if !vs[i].comparable(&vs[j]) {
                    found = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((i, j)) = found else { break };
        let a = vs[j].clone();
        let b = vs[i].clone();
        let sum = b.add(&a);
        let up = ceil_half(&sum);
        let down = floor_half(&sum);
        twists.push(Twist {
            removed: (b.clone(), a.clone()),
            inserted: (up.clone(), down.clone()),
        });
        vs.remove(j);
        vs.remove(i);
        vs.push(up);
        vs.push(down);
        vs.sort();
        if twists.len() > cap {
            return Err(Error::InvalidArgument(
                "chain normalization did not converge".into(),
            ));
        }
    }
    Ok(Decomposition {
        stage: Stage::D2,
        vectors: vs,
        twists,
    })
}

/// Validates the chain-decomposition conditions appropriate to a stage:
/// nonzero sign vectors summing to `v` with supports inside the supports of
/// `v` and nested (stages 0-2), step count equal to the sup-norm (stages
/// 1-2), and pairwise comparability (stage 2).
pub fn check_conditions(v: &LatticePoint, dec: &Decomposition) -> Result<()> {
    let fail = |msg: String| Err(Error::InvalidArgument(msg));
    // (C1) nonzero sign vectors
    for d in &dec.vectors {
        if d.is_zero() || d.iter().any(|c| !(-1..=1).contains(&c)) {
            return fail(format!("step {d} is not a nonzero sign vector"));
        }
    }
    // (C2) sum reconstructs v
    let mut sum = LatticePoint::zeros(v.dim());
    for d in &dec.vectors {
        sum = sum.add(d);
    }
    if &sum != v {
        return fail(format!("steps sum to {sum}, expected {v}"));
    }
    // (C3) support inclusion
    for d in &dec.vectors {
        for i in 0..v.dim() {
            if d.coords()[i] == 1 && v.coords()[i] <= 0 {
                return fail(format!(
                    "step {d} raises outside the positive support of {v}"
                ));
            }
            if d.coords()[i] == -1 && v.coords()[i] >= 0 {
                return fail(format!(
                    "step {d} lowers outside the negative support of {v}"
                ));
            }
        }
    }
    // (C4) nested supports
    for a in &dec.vectors {
        for b in &dec.vectors {
            let pa = a.pos_support();
            let pb = b.pos_support();
            if !(pa.iter().all(|i| pb.contains(i)) || pb.iter().all(|i| pa.contains(i))) {
                return fail(format!("positive supports of {a} and {b} are not nested"));
            }
            let na = a.neg_support();
            let nb = b.neg_support();
            if !(na.iter().all(|i| nb.contains(i)) || nb.iter().all(|i| na.contains(i))) {
                return fail(format!("negative supports of {a} and {b} are not nested"));
            }
        }
    }
    if dec.stage == Stage::D0 {
        return Ok(());
    }
    // (C5) step count equals sup-norm
    if dec.vectors.len() as i64 != v.linf_norm() {
        return fail(format!(
            "{} steps for a vector of sup-norm {}",
            dec.vectors.len(),
            v.linf_norm()
        ));
    }
    if dec.stage == Stage::D1 {
        return Ok(());
    }
    // (C6) chain
    for w in dec.vectors.windows(2) {
        if !w[0].le(&w[1]) {
            return fail(format!("steps {} and {} are not ordered", w[0], w[1]));
        }
    }
    Ok(())
}

/// The sorted step vectors of the canonical chain decomposition; stage 2
/// converges to exactly this multiset.
pub fn sorted_step_vectors(chain: &StepChain) -> Vec<LatticePoint> {
    sorted(chain.step_vectors())
}
