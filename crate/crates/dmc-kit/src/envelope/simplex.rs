//! Dense primal simplex over exact rationals.
//!
//! Two phases with auxiliary variables for feasibility and Bland's rule for
//! anti-cycling. Sized for the envelope subproblems: at most a few hundred
//! columns and a handful of equality rows, so no scaling or presolve.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `min c.x  s.t.  A x = b, x >= 0` in dense form.
pub struct StandardLp {
    pub costs: Vec<BigRational>,
    pub rows: Vec<Vec<BigRational>>,
    pub rhs: Vec<BigRational>,
}

#[derive(Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        objective: BigRational,
        solution: Vec<BigRational>,
    },
}

struct Tableau {
    /// rows[i][j] for structural+artificial columns, one extra rhs column.
    a: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    n_struct: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        let cols = self.a[i].len();
        &self.a[i][cols - 1]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.a[row][col].clone();
        debug_assert!(!piv.is_zero());
        for v in self.a[row].iter_mut() {
            *v /= &piv;
        }
        for i in 0..self.a.len() {
            if i == row || self.a[i][col].is_zero() {
                continue;
            }
            let factor = self.a[i][col].clone();
            for j in 0..self.a[i].len() {
                let delta = &factor * &self.a[row][j];
                self.a[i][j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Reduced cost vector for the given column costs.
    fn reduced_costs(&self, costs: &[BigRational]) -> Vec<BigRational> {
        let m = self.a.len();
        let cols = costs.len();
        let mut red = costs.to_vec();
        for i in 0..m {
            let cb = &costs[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, r) in red.iter_mut().enumerate().take(cols) {
                let delta = cb * &self.a[i][j];
                *r -= delta;
            }
        }
        red
    }

    /// One phase of Bland-rule simplex over the allowed columns.
    /// Returns false on unboundedness.
    fn optimize(&mut self, costs: &[BigRational], allowed: usize) -> bool {
        loop {
            let red = self.reduced_costs(costs);
            let Some(entering) = (0..allowed).find(|&j| red[j].is_negative()) else {
                return true;
            };
            let mut leaving: Option<usize> = None;
            for i in 0..self.a.len() {
                if !self.a[i][entering].is_positive() {
                    continue;
                }
                let better = match leaving {
                    None => true,
                    Some(l) => {
                        let cur = self.rhs(l) / &self.a[l][entering];
                        let cand = self.rhs(i) / &self.a[i][entering];
                        // Bland: smallest ratio, ties by smallest basic index
                        cand < cur || (cand == cur && self.basis[i] < self.basis[l])
                    }
                };
                if better {
                    leaving = Some(i);
                }
            }
            let Some(row) = leaving else {
                return false;
            };
            self.pivot(row, entering);
        }
    }

    fn objective(&self, costs: &[BigRational]) -> BigRational {
        let mut obj = BigRational::zero();
        for i in 0..self.a.len() {
            obj += &costs[self.basis[i]] * self.rhs(i);
        }
        obj
    }
}

pub fn solve(lp: &StandardLp) -> LpOutcome {
    let m = lp.rows.len();
    let n = lp.costs.len();
    debug_assert!(lp.rows.iter().all(|r| r.len() == n));
    debug_assert_eq!(lp.rhs.len(), m);

    // tableau layout: n structural | m artificial | rhs
    let cols = n + m + 1;
    let mut a = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(cols);
        let flip = lp.rhs[i].is_negative();
        for j in 0..n {
            row.push(if flip {
                -&lp.rows[i][j]
            } else {
                lp.rows[i][j].clone()
            });
        }
        for k in 0..m {
            row.push(if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        row.push(if flip { -&lp.rhs[i] } else { lp.rhs[i].clone() });
        a.push(row);
    }
    let mut t = Tableau {
        a,
        basis: (n..n + m).collect(),
        n_struct: n,
    };

    // phase 1: drive the artificial variables to zero
    let mut phase1 = vec![BigRational::zero(); n + m];
    for c in phase1.iter_mut().skip(n) {
        *c = BigRational::one();
    }
    let bounded = t.optimize(&phase1, n + m);
    debug_assert!(bounded, "phase-1 objective is bounded below by zero");
    if t.objective(&phase1).is_positive() {
        return LpOutcome::Infeasible;
    }

    // pivot lingering artificials out of the basis; drop redundant rows
    let mut row = 0;
    while row < t.a.len() {
        if t.basis[row] >= t.n_struct {
            match (0..t.n_struct).find(|&j| !t.a[row][j].is_zero()) {
                Some(col) => t.pivot(row, col),
                None => {
                    t.a.remove(row);
                    t.basis.remove(row);
                    continue;
                }
            }
        }
        row += 1;
    }

    // phase 2 over structural columns only
    let mut phase2 = lp.costs.clone();
    phase2.extend(std::iter::repeat_with(BigRational::zero).take(m));
    if !t.optimize(&phase2, t.n_struct) {
        return LpOutcome::Unbounded;
    }

    let mut solution = vec![BigRational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            solution[b] = t.rhs(i).clone();
        }
    }
    LpOutcome::Optimal {
        objective: t.objective(&phase2),
        solution,
    }
}
