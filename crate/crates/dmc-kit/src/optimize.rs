//! Minimization: local optimality certificates, 2-neighborhood steepest
//! descent, proximity-scaling, brute-force oracles, and the box-barrier
//! test.
//!
//! The descent expands a ball around the start point: the first stage
//! minimizes over the radius-2 ball, every later stage over the
//! 2-neighborhood of the previous iterate intersected with the grown ball,
//! and the run stops when the value repeats. On a midpoint convex input
//! each iterate minimizes the function over the whole current ball, values
//! strictly decrease until the first global minimizer appears, and the
//! returned minimizer sits at sup-distance from the start exactly equal to
//! the distance to the nearest minimizer.
//!
//! The scaling driver halves the scaling unit from `2^ceil(log2 K)` down to
//! one, minimizing `y -> f(x + alpha*y)` over `||y|| <= n` each phase with
//! the descent as the inner oracle.

use serde::Serialize;

use crate::classify::{Verdict, Witness};
use crate::error::{Error, Result};
use crate::funcs::{restrict, scale_fn, translate, MemoOracle, Oracle};
use crate::lattice::{linf_distance, require_positive, ExtValue, LatticeBox, LatticePoint};

// ---------------------------------------------------------------------------
// Local optimality
// ---------------------------------------------------------------------------

/// Checks `f(x) <= f(x + d)` for all nonzero `d` in `{-1,0,+1}^n`. The
/// witness on failure is the first improving direction in scan order.
pub fn local_min_check(f: &Oracle, x: &LatticePoint) -> Result<Verdict> {
    alpha_local_check(f, x, 1)
}

/// Stride-`alpha` local optimality: `f(x) <= f(x + alpha*d)` for all
/// nonzero sign vectors `d`.
pub fn alpha_local_check(f: &Oracle, x: &LatticePoint, alpha: i64) -> Result<Verdict> {
    require_positive(alpha, "stride")?;
    let fx = f.eval(x);
    if !fx.is_finite() {
        return Err(Error::OutsideDomain(x.to_string()));
    }
    let mut pairs = 0u64;
    let mut witness = None;
    for d in LatticeBox::centered(x.dim(), 1).iter_scan() {
        if d.is_zero() {
            continue;
        }
        pairs += 1;
        if witness.is_some() {
            continue;
        }
        let y = x.add(&d.scaled(alpha));
        let fy = f.eval(&y);
        if fy < fx {
            witness = Some(Witness {
                x: x.clone(),
                y,
                lhs: fy,
                rhs: fx.clone(),
            });
        }
    }
    Ok(Verdict {
        holds: witness.is_none(),
        witness,
        pairs_checked: pairs,
    })
}

// ---------------------------------------------------------------------------
// Neighborhood minimization
// ---------------------------------------------------------------------------

/// Exact minimizer of `f` over the 2-neighborhood of `center` intersected
/// with `clip`; ties break to the lexicographically smallest point. At most
/// `5^n` points are evaluated.
pub fn neighborhood2_minimize(
    f: &Oracle,
    center: &LatticePoint,
    clip: &LatticeBox,
) -> Result<(LatticePoint, ExtValue)> {
    if !f.eval(center).is_finite() {
        return Err(Error::OutsideDomain(center.to_string()));
    }
    let memo = MemoOracle::new(f);
    min_over_neighborhood(&memo, center, clip, |p, v| (v.clone(), p.clone()))
        .ok_or(Error::EmptyDomain)
}

/// Minimum of `f` over `N_2(center) ∩ clip` under an arbitrary total order
/// on `(value, point)` keys; `None` when the intersection is empty.
fn min_over_neighborhood<K: Ord>(
    memo: &MemoOracle<'_>,
    center: &LatticePoint,
    clip: &LatticeBox,
    key: impl Fn(&LatticePoint, &ExtValue) -> K,
) -> Option<(LatticePoint, ExtValue)> {
    let ball = LatticeBox::centered(center.dim(), 2).translate(center);
    let feasible = ball.intersect(clip)?;
    let mut best: Option<(K, LatticePoint, ExtValue)> = None;
    for p in feasible.iter_points() {
        let v = memo.eval(&p);
        let k = key(&p, &v);
        let better = match &best {
            None => true,
            Some((bk, _, _)) => k < *bk,
        };
        if better {
            best = Some((k, p, v));
        }
    }
    best.map(|(_, p, v)| (p, v))
}

// ---------------------------------------------------------------------------
// 2-neighborhood steepest descent
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    MinimizerFound,
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentStage {
    /// Ball radius of this stage.
    pub k: i64,
    pub point: LatticePoint,
    pub value: ExtValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentTrace {
    pub start: LatticePoint,
    /// One entry per ball-expansion stage, including the final stage whose
    /// repeated value triggered termination. Values are non-increasing and
    /// consecutive points sit at sup-distance at most two.
    pub stages: Vec<DescentStage>,
    pub output: LatticePoint,
    pub value: ExtValue,
    /// Sup-distance from the start to the output; on a midpoint convex
    /// input this equals both the distance to the nearest minimizer and
    /// the number of productive ball expansions.
    pub iterations: u64,
    /// True oracle evaluations performed by this run (distinct points; the
    /// run memoizes).
    pub oracle_calls: u64,
    pub terminated: Termination,
}

/// Runs the 2-neighborhood steepest descent from `x0`.
///
/// `budget` caps the number of stages; omitted, it defaults to the
/// function's declared box diameter plus one. Exhausting the budget is
/// reported in the trace, never thrown: on a certified midpoint convex
/// input it cannot happen, so it doubles as a counterexample signal.
///
/// Ties inside every stage break toward the point closest to `x0`, then
/// lexicographically; this keeps the output a *nearest* minimizer.
pub fn steepest_descent_2n(
    f: &Oracle,
    x0: &LatticePoint,
    budget: Option<u64>,
) -> Result<DescentTrace> {
    let calls_before = f.eval_count();
    let budget = match budget {
        Some(b) => b,
        None => match f.natural_box() {
            Some(b) => b.diameter() as u64 + 1,
            None => {
                return Err(Error::InvalidArgument(
                    "descent budget required for functions with no declared box".into(),
                ))
            }
        },
    };
    let memo = MemoOracle::new(f);
    let f0 = memo.eval(x0);
    if !f0.is_finite() {
        return Err(Error::OutsideDomain(x0.to_string()));
    }
    let tie_key = |p: &LatticePoint, v: &ExtValue| {
        (
            v.clone(),
            linf_distance(p, x0).expect("uniform dimension"),
            p.clone(),
        )
    };

    let mut stages = Vec::new();
    let mut terminated = Termination::BudgetExhausted;
    let mut output;
    let mut value;

    // stage with ball radius 2
    let ball2 = LatticeBox::centered(x0.dim(), 2).translate(x0);
    let (x2, v2) = min_over_neighborhood(&memo, x0, &ball2, tie_key)
        .expect("ball around a domain point is nonempty");
    stages.push(DescentStage {
        k: 2,
        point: x2.clone(),
        value: v2.clone(),
    });
    if v2 == f0 {
        // the start already minimizes its radius-2 ball, hence the function
        output = x0.clone();
        value = f0;
        terminated = Termination::MinimizerFound;
        return Ok(finish(
            f,
            calls_before,
            x0,
            stages,
            output,
            value,
            terminated,
        ));
    }
    output = x2;
    value = v2;

    let mut k: i64 = 3;
    while (stages.len() as u64) < budget {
        let ball_k = LatticeBox::centered(x0.dim(), k).translate(x0);
        let (xk, vk) = min_over_neighborhood(&memo, &output, &ball_k, tie_key)
            .expect("previous iterate stays feasible");
        stages.push(DescentStage {
            k,
            point: xk.clone(),
            value: vk.clone(),
        });
        if vk == value {
            terminated = Termination::MinimizerFound;
            break;
        }
        output = xk;
        value = vk;
        k += 1;
    }
    Ok(finish(
        f,
        calls_before,
        x0,
        stages,
        output,
        value,
        terminated,
    ))
}

fn finish(
    f: &Oracle,
    calls_before: u64,
    x0: &LatticePoint,
    stages: Vec<DescentStage>,
    output: LatticePoint,
    value: ExtValue,
    terminated: Termination,
) -> DescentTrace {
    let iterations = linf_distance(&output, x0).expect("uniform dimension") as u64;
    DescentTrace {
        start: x0.clone(),
        stages,
        iterations,
        oracle_calls: f.eval_count() - calls_before,
        output,
        value,
        terminated,
    }
}

// ---------------------------------------------------------------------------
// Proximity-scaling minimization
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct ScalingPhase {
    pub alpha: i64,
    pub start: LatticePoint,
    pub end: LatticePoint,
    /// Inner descent iterations; the phase displacement `||y||` never
    /// exceeds the dimension.
    pub inner_iterations: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingTrace {
    pub phases: Vec<ScalingPhase>,
    pub final_point: LatticePoint,
    pub final_value: ExtValue,
    /// True evaluations of the base oracle across all phases.
    pub oracle_calls: u64,
}

/// Derives an upper bound for the domain diameter from the declared box.
pub fn derive_k_inf(f: &Oracle) -> Option<i64> {
    f.natural_box().map(|b| b.diameter())
}

/// Proximity-scaling minimization of a (certified) midpoint convex
/// function whose effective domain has sup-diameter at most `k_inf`.
///
/// When `k_inf` is omitted it is derived from the declared box; for
/// oracles with no declared box it must be supplied.
pub fn scaling_minimize(f: &Oracle, x0: &LatticePoint, k_inf: Option<i64>) -> Result<ScalingTrace> {
    let calls_before = f.eval_count();
    let k_inf = match k_inf.or_else(|| derive_k_inf(f)) {
        Some(k) => k,
        None => {
            return Err(Error::InvalidArgument(
                "domain diameter bound required for functions with no declared box".into(),
            ))
        }
    };
    if k_inf < 1 {
        return Err(Error::InvalidArgument(format!(
            "domain diameter bound must be at least 1, got {k_inf}"
        )));
    }
    if !f.eval(x0).is_finite() {
        return Err(Error::OutsideDomain(x0.to_string()));
    }
    let n = f.dim() as i64;
    let mut alpha = 1i64;
    while alpha < k_inf {
        alpha *= 2;
    }
    let mut x = x0.clone();
    let mut phases = Vec::new();
    loop {
        // g(y) = f(x + alpha*y) restricted to ||y|| <= n
        let g = restrict(
            &scale_fn(&translate(f, &x)?, alpha)?,
            &LatticeBox::centered(f.dim(), n),
        )?;
        let trace = steepest_descent_2n(&g, &LatticePoint::zeros(f.dim()), Some(2 * n as u64 + 2))?;
        debug_assert_eq!(trace.terminated, Termination::MinimizerFound);
        let end = x.add(&trace.output.scaled(alpha));
        phases.push(ScalingPhase {
            alpha,
            start: x.clone(),
            end: end.clone(),
            inner_iterations: trace.iterations,
        });
        x = end;
        if alpha == 1 {
            break;
        }
        alpha /= 2;
    }
    let final_value = f.eval(&x);
    Ok(ScalingTrace {
        phases,
        final_point: x,
        final_value,
        oracle_calls: f.eval_count() - calls_before,
    })
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

/// Exact minimum and the full minimizer set over a box by exhaustive scan,
/// in ascending lexicographic order.
pub fn brute_force_min(f: &Oracle, bounds: &LatticeBox) -> Result<(ExtValue, Vec<LatticePoint>)> {
    let mut best: Option<ExtValue> = None;
    let mut argmin: Vec<LatticePoint> = Vec::new();
    for p in bounds.iter_points() {
        let v = f.eval(&p);
        if !v.is_finite() {
            continue;
        }
        match &best {
            Some(b) if v > *b => {}
            Some(b) if v == *b => argmin.push(p),
            _ => {
                best = Some(v);
                argmin = vec![p];
            }
        }
    }
    match best {
        Some(value) => Ok((value, argmin)),
        None => Err(Error::EmptyDomain),
    }
}

/// Minimum sup-distance from `x` to any brute-force minimizer on the box.
pub fn distance_to_argmin(f: &Oracle, bounds: &LatticeBox, x: &LatticePoint) -> Result<i64> {
    let (_, argmin) = brute_force_min(f, bounds)?;
    argmin
        .iter()
        .map(|p| linf_distance(p, x).expect("uniform dimension"))
        .min()
        .ok_or(Error::EmptyDomain)
}

// ---------------------------------------------------------------------------
// Proximity verification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct ProximityReport {
    /// `n * (alpha - 1)`.
    pub bound: i64,
    /// Realized sup-distance from the stride-local minimizer to the
    /// nearest global minimizer on the box.
    pub realized: i64,
    pub nearest: LatticePoint,
    pub holds: bool,
}

/// Verifies the proximity bound: a stride-`alpha` local minimizer lies
/// within sup-distance `n*(alpha-1)` of some global minimizer. Requires
/// `x_alpha` to actually be stride-`alpha` local minimal.
pub fn proximity_verify(
    f: &Oracle,
    bounds: &LatticeBox,
    x_alpha: &LatticePoint,
    alpha: i64,
) -> Result<ProximityReport> {
    require_positive(alpha, "scaling unit")?;
    let local = alpha_local_check(f, x_alpha, alpha)?;
    if !local.holds {
        return Err(Error::InvalidArgument(format!(
            "{x_alpha} is not stride-{alpha} local minimal"
        )));
    }
    let (_, argmin) = brute_force_min(f, bounds)?;
    let (realized, nearest) = argmin
        .iter()
        .map(|p| {
            (
                linf_distance(p, x_alpha).expect("uniform dimension"),
                p.clone(),
            )
        })
        .min()
        .ok_or(Error::EmptyDomain)?;
    let bound = f.dim() as i64 * (alpha - 1);
    Ok(ProximityReport {
        bound,
        realized,
        nearest,
        holds: realized <= bound,
    })
}

// ---------------------------------------------------------------------------
// Box barrier
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct BarrierReport {
    /// Whether the center value is at most every wall value.
    pub wall_minimal: bool,
    /// When the wall hypothesis holds: the certified conclusion that the
    /// center value bounds every point outside the open box (within the
    /// outer window). Vacuously true otherwise.
    pub conclusion: Verdict,
}

/// Extended bounds: `None` encodes an infinite bound in that coordinate.
pub type ExtendedBound = Vec<Option<i64>>;

/// Box-barrier test: with `p < center < q` componentwise (infinite bounds
/// allowed), if the center value is at most the value on the wall
/// `W = union_i { x : x_i = p_i or q_i, p_j <= x_j <= q_j }`, then it is at
/// most the value at every point outside the open box. All enumeration is
/// clipped to `outer`.
pub fn box_barrier_check(
    f: &Oracle,
    p: &ExtendedBound,
    q: &ExtendedBound,
    center: &LatticePoint,
    outer: &LatticeBox,
) -> Result<BarrierReport> {
    let n = f.dim();
    if p.len() != n || q.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.len().max(q.len()),
        });
    }
    for i in 0..n {
        let c = center.coords()[i];
        if let Some(lo) = p[i] {
            if lo >= c {
                return Err(Error::InvalidArgument(format!(
                    "lower bound must be strictly below the center in coordinate {i}"
                )));
            }
        }
        if let Some(hi) = q[i] {
            if hi <= c {
                return Err(Error::InvalidArgument(format!(
                    "upper bound must be strictly above the center in coordinate {i}"
                )));
            }
        }
        if let (Some(lo), Some(hi)) = (p[i], q[i]) {
            if lo > hi {
                return Err(Error::InvalidBox { coord: i });
            }
        }
    }
    let fc = f.eval(center);
    if !fc.is_finite() {
        return Err(Error::OutsideDomain(center.to_string()));
    }

    let between = |x: &LatticePoint| {
        (0..n).all(|i| {
            p[i].is_none_or(|lo| x.coords()[i] >= lo) && q[i].is_none_or(|hi| x.coords()[i] <= hi)
        })
    };
    let strictly_inside = |x: &LatticePoint| {
        (0..n).all(|i| {
            p[i].is_none_or(|lo| x.coords()[i] > lo) && q[i].is_none_or(|hi| x.coords()[i] < hi)
        })
    };
    let on_wall = |x: &LatticePoint| {
        between(x)
            && (0..n).any(|i| {
                p[i].is_some_and(|lo| x.coords()[i] == lo)
                    || q[i].is_some_and(|hi| x.coords()[i] == hi)
            })
    };

    let mut wall_minimal = true;
    for x in outer.iter_scan() {
        if on_wall(&x) && f.eval(&x) < fc {
            wall_minimal = false;
            break;
        }
    }
    if !wall_minimal {
        return Ok(BarrierReport {
            wall_minimal,
            conclusion: Verdict::vacuous(),
        });
    }
    let mut pairs = 0u64;
    let mut witness = None;
    for x in outer.iter_scan() {
        if strictly_inside(&x) {
            continue;
        }
        pairs += 1;
        if witness.is_some() {
            continue;
        }
        let v = f.eval(&x);
        if v < fc {
            witness = Some(Witness {
                x: center.clone(),
                y: x,
                lhs: v,
                rhs: fc.clone(),
            });
        }
    }
    Ok(BarrierReport {
        wall_minimal,
        conclusion: Verdict {
            holds: witness.is_none(),
            witness,
            pairs_checked: pairs,
        },
    })
}
