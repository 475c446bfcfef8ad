//! The saturation decision: Z+(S) = Z(S) cap Q+(S)?
//!
//! Completeness argument: any v in Z(S) cap Q+(S) has a nonnegative rational
//! combination over a linearly independent subset of S; extend it to a
//! maximal independent subset B with zero coefficients and subtract the
//! floors. What is left is a point of Z(S) in the half-open parallelepiped
//! of B, so testing all those points for semigroup membership decides
//! saturation. Only B with [Z(S) cap span(B) : Z(B)] > 1 contribute points
//! beyond the origin, and that index is the determinant of B written over a
//! lattice basis of Z(S).

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::LatticeError;
use crate::intmat::{self, IntRow};
use crate::qvec::{Combination, GeneratorSet, QVector};
use crate::rat::{Int, Rat};

use super::parallelepiped::half_open_points;
use super::semigroup::{SemigroupContext, SemigroupLimits};
use super::{cone_membership, lattice_membership, scaled_integer_rows, IntLattice};

#[derive(Clone, Copy, Debug, Default)]
pub struct SaturationLimits {
    pub semigroup: SemigroupLimits,
}

/// Non-saturation witness: a vector of Z(S) cap Q+(S) outside Z+(S),
/// together with exact combinations proving the two memberships.
#[derive(Clone, Debug)]
pub struct SaturationWitness {
    pub vector: QVector,
    pub cone: Combination,
    pub lattice: Combination,
}

#[derive(Debug)]
pub struct SaturationVerdict {
    pub saturated: bool,
    pub witness: Option<SaturationWitness>,
}

/// Outcome of the cheap overflow-checked analysis of one generator family.
pub(crate) enum FastAnalysis {
    Saturated,
    /// Maximal-rank independent index subsets with determinant index > 1.
    Candidates(Vec<Vec<usize>>),
    Overflow,
}

/// Incremental fraction-free elimination over the coordinate rows of the
/// generators in a rank-r lattice basis. Enumerates index subsets whose
/// rows are independent of full rank r, reporting |det| for each.
struct BareissStack<'a> {
    t_rows: &'a [Vec<i128>],
    r: usize,
    rows: Vec<(Vec<i128>, usize, i128)>, // reduced row, pivot col, pivot value
    chosen: Vec<usize>,
}

impl<'a> BareissStack<'a> {
    fn new(t_rows: &'a [Vec<i128>], r: usize) -> Self {
        BareissStack {
            t_rows,
            r,
            rows: Vec::with_capacity(r),
            chosen: Vec::with_capacity(r),
        }
    }

    /// Pushes generator `idx`; Ok(false) when dependent, Err on overflow.
    fn push(&mut self, idx: usize) -> Result<bool, ()> {
        let mut x = self.t_rows[idx].clone();
        let mut prev: i128 = 1;
        for (row, pivot_col, pivot_val) in &self.rows {
            let c = x[*pivot_col];
            for (xe, re) in x.iter_mut().zip(row.iter()) {
                let a = xe.checked_mul(*pivot_val).ok_or(())?;
                let b = c.checked_mul(*re).ok_or(())?;
                *xe = a.checked_sub(b).ok_or(())? / prev;
            }
            prev = *pivot_val;
        }
        match x.iter().position(|&e| e != 0) {
            None => Ok(false),
            Some(col) => {
                let val = x[col];
                self.rows.push((x, col, val));
                self.chosen.push(idx);
                Ok(true)
            }
        }
    }

    fn pop(&mut self) {
        self.rows.pop();
        self.chosen.pop();
    }

    fn depth(&self) -> usize {
        self.rows.len()
    }

    /// |det| of the current full-depth square block.
    fn abs_det(&self) -> i128 {
        debug_assert_eq!(self.depth(), self.r);
        self.rows.last().map(|(_, _, v)| v.abs()).unwrap_or(1)
    }
}

fn collect_bad_subsets(
    t_rows: &[Vec<i128>],
    r: usize,
    bad: &mut Vec<Vec<usize>>,
) -> Result<(), ()> {
    fn recurse(
        stack: &mut BareissStack<'_>,
        start: usize,
        bad: &mut Vec<Vec<usize>>,
    ) -> Result<(), ()> {
        let m = stack.t_rows.len();
        let need = stack.r - stack.depth();
        if need == 0 {
            if stack.abs_det() > 1 {
                bad.push(stack.chosen.clone());
            }
            return Ok(());
        }
        for i in start..m {
            if m - i < need {
                break;
            }
            if stack.push(i)? {
                recurse(stack, i + 1, bad)?;
                stack.pop();
            }
        }
        Ok(())
    }
    let mut stack = BareissStack::new(t_rows, r);
    recurse(&mut stack, 0, bad)
}

/// Cheap definitive test on pre-scaled integer rows: `Some(true)` means the
/// family is certainly saturated (independent, or every maximal-rank index
/// subset has determinant index 1); anything else needs the full decision.
pub fn fast_subset_analysis(rows_i128: &[Vec<i128>]) -> Option<bool> {
    match fast_analyze(rows_i128) {
        FastAnalysis::Saturated => Some(true),
        FastAnalysis::Candidates(_) => Some(false),
        FastAnalysis::Overflow => None,
    }
}

/// Overflow-checked analysis on pre-scaled integer rows. `Saturated` is a
/// definitive verdict; `Candidates` names the subsets still to examine.
pub(crate) fn fast_analyze(rows_i128: &[Vec<i128>]) -> FastAnalysis {
    let Some((h, _u)) = intmat::hnf_i128_raw(rows_i128) else {
        return FastAnalysis::Overflow;
    };
    let basis: Vec<Vec<i128>> = h
        .into_iter()
        .filter(|row| row.iter().any(|&e| e != 0))
        .collect();
    let r = basis.len();
    if r == rows_i128.len() {
        // linearly independent set: saturated outright
        return FastAnalysis::Saturated;
    }
    let pivots = intmat::echelon_pivots_i128(&basis);
    let mut t_rows = Vec::with_capacity(rows_i128.len());
    for row in rows_i128 {
        match intmat::solve_left_echelon_i128(&basis, &pivots, row) {
            Err(_) => return FastAnalysis::Overflow,
            Ok(None) => unreachable!("generator lies in its own lattice"),
            Ok(Some(y)) => t_rows.push(y),
        }
    }
    let mut bad = Vec::new();
    if collect_bad_subsets(&t_rows, r, &mut bad).is_err() {
        return FastAnalysis::Overflow;
    }
    if bad.is_empty() {
        FastAnalysis::Saturated
    } else {
        FastAnalysis::Candidates(bad)
    }
}

fn bigint_bad_subsets(rows: &[IntRow]) -> (usize, Vec<Vec<usize>>) {
    let lattice = IntLattice::from_rows(rows);
    let r = lattice.rank();
    if r == rows.len() {
        return (r, Vec::new());
    }
    let t_rows: Vec<IntRow> = rows
        .iter()
        .map(|row| lattice.solve(row).expect("generator in own lattice"))
        .collect();
    let mut bad = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        let sub: Vec<IntRow> = idx.iter().map(|&i| t_rows[i].clone()).collect();
        let d = intmat::det(&sub);
        if d.abs() > Int::from(1) {
            bad.push(idx.clone());
        }
        // next lexicographic r-combination of 0..rows.len()
        let m = rows.len();
        let mut k = r;
        loop {
            if k == 0 {
                return (r, bad);
            }
            k -= 1;
            if idx[k] != k + m - r {
                idx[k] += 1;
                for j in k + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Decides whether Z+(S) = Z(S) cap Q+(S). On failure returns the
/// lexicographically smallest failing parallelepiped point as witness.
pub fn is_saturated(
    gens: &GeneratorSet,
    limits: &SaturationLimits,
) -> Result<SaturationVerdict, LatticeError> {
    let live: Vec<usize> = (0..gens.len())
        .filter(|&i| !gens.vector(i).is_zero())
        .collect();
    if live.is_empty() {
        return Ok(SaturationVerdict {
            saturated: true,
            witness: None,
        });
    }
    let refs: Vec<&QVector> = live.iter().map(|&i| gens.vector(i)).collect();
    let (scale, rows) = scaled_integer_rows(&refs);

    let bad_subsets = match intmat::to_i128_rows(&rows) {
        Some(rows128) => match fast_analyze(&rows128) {
            FastAnalysis::Saturated => {
                return Ok(SaturationVerdict {
                    saturated: true,
                    witness: None,
                })
            }
            FastAnalysis::Candidates(bad) => bad,
            FastAnalysis::Overflow => bigint_bad_subsets(&rows).1,
        },
        None => bigint_bad_subsets(&rows).1,
    };
    if bad_subsets.is_empty() {
        return Ok(SaturationVerdict {
            saturated: true,
            witness: None,
        });
    }

    // candidate points of Z(S) in the half-open cells, smallest first
    let mut candidates: BTreeSet<IntRow> = BTreeSet::new();
    for subset in &bad_subsets {
        let b_rows: Vec<IntRow> = subset.iter().map(|&i| rows[i].clone()).collect();
        for p in half_open_points(&b_rows, &rows, None)? {
            if p.iter().any(|e| !e.is_zero()) {
                candidates.insert(p);
            }
        }
    }

    // the stripped set keeps the canonical order of the parent set
    let (stripped, perm) = GeneratorSet::new(
        gens.dim(),
        refs.iter().map(|v| (*v).clone()).collect(),
    )
    .expect("stripped set has no duplicates");
    debug_assert!(perm.iter().enumerate().all(|(i, &p)| i == p));

    let ctx = SemigroupContext::new(&stripped)?;
    let scale_rat = Rat::from_integer(scale);
    for cand in candidates {
        let vector = QVector::new(
            cand.iter()
                .map(|e| Rat::from_integer(e.clone()) / &scale_rat)
                .collect(),
        );
        if ctx.decide(&vector, &limits.semigroup)?.is_some() {
            continue;
        }
        let cone = cone_membership(&vector, &stripped)?.ok_or_else(|| {
            LatticeError::InvalidCertificate("candidate escaped the cone".into())
        })?;
        let lattice = lattice_membership(&vector, &stripped)?.ok_or_else(|| {
            LatticeError::InvalidCertificate("candidate escaped the lattice".into())
        })?;
        let to_original = |c: &Combination| {
            Combination::new(
                c.kind,
                c.terms
                    .iter()
                    .map(|(k, coeff)| (live[*k], coeff.clone()))
                    .collect(),
            )
        };
        return Ok(SaturationVerdict {
            saturated: false,
            witness: Some(SaturationWitness {
                cone: to_original(&cone),
                lattice: to_original(&lattice),
                vector,
            }),
        });
    }
    Ok(SaturationVerdict {
        saturated: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(dim: usize, rows: &[&[i64]]) -> GeneratorSet {
        let (s, _) = GeneratorSet::new(
            dim,
            rows.iter().map(|r| QVector::from_ints(r)).collect(),
        )
        .unwrap();
        s
    }

    #[test]
    fn independent_sets_are_saturated() {
        let s = set(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let v = is_saturated(&s, &SaturationLimits::default()).unwrap();
        assert!(v.saturated);
    }

    #[test]
    fn two_three_ray_not_saturated() {
        let s = set(2, &[&[2, -2], &[3, -3]]);
        let v = is_saturated(&s, &SaturationLimits::default()).unwrap();
        assert!(!v.saturated);
        let w = v.witness.unwrap();
        assert_eq!(w.vector, QVector::from_ints(&[1, -1]));
        w.cone.validate(&s, &w.vector).unwrap();
        w.lattice.validate(&s, &w.vector).unwrap();
    }

    #[test]
    fn opposite_pair_saturated() {
        let s = set(2, &[&[1, -1], &[-1, 1]]);
        assert!(is_saturated(&s, &SaturationLimits::default())
            .unwrap()
            .saturated);
    }

    #[test]
    fn zero_vector_ignored() {
        let s = set(2, &[&[0, 0], &[1, 0]]);
        assert!(is_saturated(&s, &SaturationLimits::default())
            .unwrap()
            .saturated);
    }
}
