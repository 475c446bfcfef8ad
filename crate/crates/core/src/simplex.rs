//! Dense exact-rational simplex with Bland's rule.
//!
//! Solves max c.x subject to A x = b, x >= 0 over arbitrary-precision
//! rationals. No floating point anywhere; Bland's rule rules out cycling.
//! Instances in this crate are tiny, so the plain tableau method is fine.

use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Rat>, value: Rat },
}

struct Tableau {
    rows: Vec<Vec<Rat>>, // m x (ncols + 1); last column is the rhs
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for e in self.rows[row].iter_mut() {
            *e /= &p;
        }
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let f = self.rows[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..=self.ncols {
                let t = &self.rows[row][j] * &f;
                self.rows[i][j] -= t;
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex steps maximizing `cost` (one entry per column) with
    /// Bland's rule. Returns false when the objective is unbounded.
    fn optimize(&mut self, cost: &[Rat]) -> bool {
        loop {
            let mut entering = None;
            for j in 0..self.ncols {
                if self.basis.contains(&j) {
                    continue;
                }
                // reduced cost c_j - c_B . column_j
                let mut r = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !cost[bi].is_zero() {
                        r -= &cost[bi] * &self.rows[i][j];
                    }
                }
                if r.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else { return true };
            let mut leaving: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = self.rhs(i) / &self.rows[i][col];
                    let better = match &leaving {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else { return false };
            self.pivot(row, col);
        }
    }

    fn objective_value(&self, cost: &[Rat]) -> Rat {
        let mut v = Rat::zero();
        for (i, &bi) in self.basis.iter().enumerate() {
            v += &cost[bi] * self.rhs(i);
        }
        v
    }

    fn solution(&self, nvars: usize) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); nvars];
        for (i, &bi) in self.basis.iter().enumerate() {
            if bi < nvars {
                x[bi] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Maximizes `c . x` subject to `a x = b`, `x >= 0`.
pub fn lp_maximize(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    if m == 0 {
        if c.iter().any(|cj| cj.is_positive()) {
            return LpOutcome::Unbounded;
        }
        return LpOutcome::Optimal {
            x: vec![Rat::zero(); n],
            value: Rat::zero(),
        };
    }

    // Phase 1: artificial variable per row, rhs made nonnegative first.
    let ncols = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = Vec::with_capacity(ncols + 1);
        for j in 0..n {
            row.push(if flip { -&a[i][j] } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        ncols,
    };
    let mut phase1_cost = vec![Rat::zero(); ncols];
    for cj in phase1_cost.iter_mut().skip(n) {
        *cj = -Rat::one();
    }
    let bounded = t.optimize(&phase1_cost);
    debug_assert!(bounded, "phase-1 objective is bounded by construction");
    if t.objective_value(&phase1_cost).is_negative() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase 2 on the original columns only.
    for row in t.rows.iter_mut() {
        let rhs = row[ncols].clone();
        row.truncate(n);
        row.push(rhs);
    }
    t.ncols = n;
    if !t.optimize(c) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal {
        x: t.solution(n),
        value: t.objective_value(c),
    }
}

/// Finds x >= 0 with `a x = b`, if one exists.
pub fn feasible_point(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = if a.is_empty() { 0 } else { a[0].len() };
    match lp_maximize(a, b, &vec![Rat::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}
