//! Classifiers for quadratic forms `f(x) = x^T Q x`.
//!
//! Midpoint convexity of a quadratic at a pair `(x, y)` depends only on
//! `z = x - y`: it is equivalent to `z^T Q z >= 1_J^T Q 1_J` where `J`
//! collects the odd coordinates of `z`. Local midpoint convexity is the
//! inequality for all `z` of sup-norm two, global adds sup-norm three; no
//! larger norms are needed because midpoint convexity at distances two and
//! three already implies it at every distance at least two.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::classify::jacobi::symmetric_eigenvalues;
use crate::error::{Error, Result};
use crate::funcs::RationalMatrix;
use crate::lattice::{LatticeBox, LatticePoint};

/// Tri-state answer of the floating-point sufficiency tests.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EigenVerdict {
    Yes,
    Inconclusive,
}

/// Aggregate classification of one symmetric rational matrix.
#[derive(Clone, Debug, Serialize)]
pub struct QuadReport {
    pub lnat: bool,
    pub globally_dmc: bool,
    pub locally_dmc: bool,
    pub diag_dominant: bool,
    pub eigen_sufficient: EigenVerdict,
}

/// `z^T Q z >= 1_J^T Q 1_J` with `J` the odd coordinates of `z`.
fn midpoint_inequality(q: &RationalMatrix, z: &LatticePoint) -> bool {
    let odd = LatticePoint::new(z.iter().map(|c| (c.rem_euclid(2)).abs()).collect());
    q.quad_form(z) >= q.quad_form(&odd)
}

/// The inequality for every `z` of sup-norm exactly `norm`.
fn holds_at_norm(q: &RationalMatrix, norm: i64) -> bool {
    LatticeBox::centered(q.n(), norm)
        .iter_points()
        .filter(|z| z.linf_norm() == norm)
        .all(|z| midpoint_inequality(q, &z))
}

/// Diagonal dominance with nonnegative diagonal:
/// `q_ii >= sum_{j != i} |q_ij|` for every row.
pub fn diag_dominant(q: &RationalMatrix) -> bool {
    (0..q.n()).all(|i| {
        let off: BigRational = (0..q.n())
            .filter(|&j| j != i)
            .map(|j| q.entry(i, j).abs())
            .sum();
        q.entry(i, i) >= &off
    })
}

/// L♮-convexity of the quadratic form: diagonal dominance together with
/// nonpositive off-diagonal entries.
pub fn is_lnat_quadratic(q: &RationalMatrix) -> bool {
    let offdiag_nonpositive = (0..q.n()).all(|i| {
        (0..q.n())
            .filter(|&j| j != i)
            .all(|j| !q.entry(i, j).is_positive())
    });
    offdiag_nonpositive && diag_dominant(q)
}

/// Full report: exact local/global decisions by finite enumeration, the
/// exact L♮ and diagonal-dominance conditions, and the floating-point
/// eigenvalue sufficiency check.
pub fn classify(q: &RationalMatrix) -> QuadReport {
    let locally_dmc = holds_at_norm(q, 2);
    let globally_dmc = locally_dmc && holds_at_norm(q, 3);
    QuadReport {
        lnat: is_lnat_quadratic(q),
        globally_dmc,
        locally_dmc,
        diag_dominant: diag_dominant(q),
        eigen_sufficient: eigen_sufficient(q),
    }
}

/// Closed-form two-dimensional decision:
/// locally midpoint convex iff `q11 >= |q12|` and `q22 >= |q12|`;
/// globally iff additionally `q11 + q22 >= (5/2) q12`.
pub fn closed_form_2d(q: &RationalMatrix) -> Result<(bool, bool)> {
    if q.n() != 2 {
        return Err(Error::MatrixSize {
            expected: 2,
            got: q.n(),
        });
    }
    let q12 = q.entry(0, 1).abs();
    let locally = q.entry(0, 0) >= &q12 && q.entry(1, 1) >= &q12;
    let five_half = BigRational::new(5.into(), 2.into());
    let globally = locally && q.entry(0, 0) + q.entry(1, 1) >= five_half * q.entry(0, 1);
    Ok((locally, globally))
}

const EIGEN_TOL: f64 = 1e-12;
const EIGEN_MARGIN: f64 = 1e-11;

fn to_f64_matrix(q: &RationalMatrix) -> Vec<Vec<f64>> {
    q.rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| v.to_f64().expect("finite rational"))
                .collect()
        })
        .collect()
}

/// Sufficient spectral test for global midpoint convexity:
/// `lambda_min >= (n-1)/(n+3) * lambda_max` answers yes; anything within
/// the floating-point margin stays inconclusive. Never used to declare
/// failure.
pub fn eigen_sufficient(q: &RationalMatrix) -> EigenVerdict {
    let eig = symmetric_eigenvalues(&to_f64_matrix(q));
    let (min, max) = (eig[0], eig[eig.len() - 1]);
    let n = q.n() as f64;
    let ratio = (n - 1.0) / (n + 3.0);
    let scale = max.abs().max(1.0);
    if min - ratio * max >= EIGEN_MARGIN * scale {
        EigenVerdict::Yes
    } else {
        EigenVerdict::Inconclusive
    }
}

/// Exact sufficient row-sum test: for `Q = alpha (I + R)` with
/// `alpha >= 0` and positive semidefinite `R`, the form is globally
/// midpoint convex whenever every absolute row sum of `R` is at most
/// `4/(n-1)`. Positive semidefiniteness of `R` is checked spectrally to
/// the same tolerance as the eigenvalue test.
pub fn row_sum_sufficient(alpha: &BigRational, r: &RationalMatrix) -> Result<bool> {
    if r.n() < 2 {
        return Err(Error::MatrixSize {
            expected: 2,
            got: r.n(),
        });
    }
    if alpha.is_negative() {
        return Err(Error::InvalidArgument("alpha must be nonnegative".into()));
    }
    let eig = symmetric_eigenvalues(&to_f64_matrix(r));
    let scale = eig[eig.len() - 1].abs().max(1.0);
    if eig[0] < -EIGEN_TOL * scale * 10.0 {
        return Err(Error::InvalidArgument(
            "R must be positive semidefinite".into(),
        ));
    }
    let bound = BigRational::new(4.into(), (r.n() as i64 - 1).into());
    let ok = (0..r.n()).all(|i| {
        let row_sum: BigRational = (0..r.n()).map(|j| r.entry(i, j).abs()).sum();
        row_sum <= bound
    });
    Ok(ok)
}
