//! Cyclic Jacobi eigenvalue iteration for small symmetric matrices.
//!
//! The one place floating point enters the crate: the eigenvalue-based
//! sufficiency tests are tri-state (yes / inconclusive), so conservative
//! rounding can never flip an exact verdict.

// rotations index rows and columns simultaneously; iterator form obscures them
#![allow(clippy::needless_range_loop)]

/// Eigenvalues of a symmetric matrix, ascending. Relative off-diagonal
/// tolerance `1e-12`, at most 64 sweeps; plane rotations zero one
/// off-diagonal entry at a time and convergence is quadratic.
pub fn symmetric_eigenvalues(matrix: &[Vec<f64>]) -> Vec<f64> {
    let n = matrix.len();
    assert!(n > 0, "empty matrix");
    for row in matrix {
        assert_eq!(row.len(), n, "matrix must be square");
    }
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let scale: f64 = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|v| v.abs())
        .fold(0.0, f64::max)
        .max(1.0);
    let tol = 1e-12 * scale;

    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q].abs();
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() <= tol * 1e-3 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    eig
}
