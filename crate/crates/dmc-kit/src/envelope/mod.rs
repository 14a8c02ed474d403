//! The local convex envelope and the weak midpoint inequality.
//!
//! For a rational point `x`, the envelope value is the minimum of
//! `sum(lambda_z * f(z))` over convex-combination coefficients supported on
//! the integer neighborhood `N(x)` with `sum(lambda_z * z) = x`. The
//! minimum is computed by an exact rational simplex; an infeasible program
//! (that is, `x` outside the convex hull of `N(x) ∩ dom f`) yields `+∞`.

pub mod simplex;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::funcs::Oracle;
use crate::lattice::{integer_neighborhood, ExtValue, LatticePoint, RationalPoint};
use simplex::{solve, LpOutcome, StandardLp};

/// Envelope value together with the optimal coefficients when finite.
#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeResult {
    pub value: ExtValue,
    /// Present exactly when the value is finite: strictly positive
    /// coefficients, summing to one, reproducing both the query point and
    /// the value. Support lies in `N(x) ∩ dom f`.
    pub certificate: Option<Vec<CertificateTerm>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateTerm {
    pub z: LatticePoint,
    #[serde(with = "crate::lattice::rational_string")]
    pub lambda: BigRational,
}

impl EnvelopeResult {
    pub fn certificate_map(&self) -> Option<BTreeMap<LatticePoint, BigRational>> {
        self.certificate.as_ref().map(|terms| {
            terms
                .iter()
                .map(|t| (t.z.clone(), t.lambda.clone()))
                .collect()
        })
    }
}

/// Exact envelope value of `f` at a rational point.
pub fn envelope_value(f: &Oracle, x: &RationalPoint) -> EnvelopeResult {
    assert_eq!(x.dim(), f.dim(), "envelope query of wrong dimension");
    let neighborhood = integer_neighborhood(x);
    // columns: neighborhood points with finite value
    let mut points = Vec::new();
    let mut values = Vec::new();
    for z in neighborhood {
        if let ExtValue::Finite(v) = f.eval(&z) {
            points.push(z);
            values.push(v);
        }
    }
    if points.is_empty() {
        return EnvelopeResult {
            value: ExtValue::Infinite,
            certificate: None,
        };
    }
    let n = x.dim();
    // rows: one per coordinate, plus the convex-combination row
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for i in 0..n {
        rows.push(
            points
                .iter()
                .map(|z| BigRational::from_integer(z.coords()[i].into()))
                .collect::<Vec<_>>(),
        );
        rhs.push(x.coords()[i].clone());
    }
    rows.push(vec![BigRational::one(); points.len()]);
    rhs.push(BigRational::one());
    let lp = StandardLp {
        costs: values.clone(),
        rows,
        rhs,
    };
    match solve(&lp) {
        LpOutcome::Infeasible => EnvelopeResult {
            value: ExtValue::Infinite,
            certificate: None,
        },
        LpOutcome::Unbounded => unreachable!("simplex over a probability simplex is bounded"),
        LpOutcome::Optimal {
            objective,
            solution,
        } => {
            let certificate = points
                .iter()
                .zip(&solution)
                .filter(|(_, lambda)| lambda.is_positive())
                .map(|(z, lambda)| CertificateTerm {
                    z: z.clone(),
                    lambda: lambda.clone(),
                })
                .collect();
            EnvelopeResult {
                value: ExtValue::Finite(objective),
                certificate: Some(certificate),
            }
        }
    }
}

/// `f(x) + f(y) - 2 * envelope((x+y)/2)`.
///
/// Returns `+∞` when either endpoint lies outside the effective domain (the
/// weak inequality is vacuous there), `None` when both endpoints are finite
/// but the envelope is `+∞` (the inequality fails with no finite slack),
/// and the exact slack otherwise; a negative slack witnesses failure.
pub fn weak_midpoint_gap(f: &Oracle, x: &LatticePoint, y: &LatticePoint) -> Option<ExtValue> {
    let lhs = f.eval(x).plus(&f.eval(y));
    if !lhs.is_finite() {
        return Some(ExtValue::Infinite);
    }
    let mid = x.midpoint(y);
    let env = envelope_value(f, &mid);
    match env.value {
        ExtValue::Infinite => None,
        ExtValue::Finite(_) => Some(
            lhs.checked_sub(&env.value.double())
                .expect("finite subtraction"),
        ),
    }
}
