//! Exact membership in the lattice Z(S), the cone Q+(S) and the semigroup
//! Z+(S) spanned by a finite generator set, plus the saturation decision.
//!
//! Everything returns machine-checkable combination certificates; all
//! arithmetic is exact. Rational inputs are scaled to integers by the common
//! denominator, which changes none of the three memberships.

mod parallelepiped;
mod saturation;
mod semigroup;

pub use parallelepiped::enumerate_parallelepiped_points;
pub use saturation::{
    fast_subset_analysis, is_saturated, SaturationLimits, SaturationVerdict, SaturationWitness,
};
pub use semigroup::{semigroup_membership, SemigroupContext, SemigroupLimits};

use num_traits::{Signed, Zero};

use crate::error::LatticeError;
use crate::intmat::{self, IntRow};
use crate::qvec::{Combination, CombinationKind, GeneratorSet, QVector};
use crate::rat::{denominator_lcm, Int, Rat};
use crate::simplex;

/// Multiplies a family of rational vectors into integer rows by the LCM of
/// all denominators. Returns the scale and the rows.
pub(crate) fn scaled_integer_rows(vectors: &[&QVector]) -> (Int, Vec<IntRow>) {
    let scale = denominator_lcm(vectors.iter().flat_map(|v| v.coords().iter()));
    let rows = vectors
        .iter()
        .map(|v| scale_vector(v, &scale).expect("scale covers all denominators"))
        .collect();
    (scale, rows)
}

/// Scales one vector; None when some denominator does not divide `scale`.
pub(crate) fn scale_vector(v: &QVector, scale: &Int) -> Option<IntRow> {
    let scale_rat = Rat::from_integer(scale.clone());
    v.coords()
        .iter()
        .map(|c| {
            let s = c * &scale_rat;
            s.is_integer().then(|| s.to_integer())
        })
        .collect()
}

/// An integer lattice held as the Hermite form of its generating rows,
/// remembering the transform back to the original generators.
pub(crate) struct IntLattice {
    pub basis: Vec<IntRow>,   // nonzero HNF rows
    pub pivots: Vec<usize>,   // pivot column per basis row
    pub transform: Vec<IntRow>, // u rows aligned with `basis` (u * rows = h)
    pub ngens: usize,
}

impl IntLattice {
    pub fn from_rows(rows: &[IntRow]) -> Self {
        let (h, u) = intmat::hnf_with_transform(rows);
        let mut basis = Vec::new();
        let mut transform = Vec::new();
        for (hrow, urow) in h.into_iter().zip(u) {
            if hrow.iter().any(|e| !e.is_zero()) {
                basis.push(hrow);
                transform.push(urow);
            }
        }
        let pivots = intmat::echelon_pivots(&basis);
        IntLattice {
            basis,
            pivots,
            transform,
            ngens: rows.len(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        intmat::solve_left_echelon(&self.basis, &self.pivots, v).is_some()
    }

    /// Coordinates of `v` over the HNF basis.
    pub fn solve(&self, v: &[Int]) -> Option<Vec<Int>> {
        intmat::solve_left_echelon(&self.basis, &self.pivots, v)
    }

    /// Integer coefficients over the original generating rows.
    pub fn coeffs_over_generators(&self, v: &[Int]) -> Option<Vec<Int>> {
        let y = self.solve(v)?;
        let mut coeffs = vec![Int::zero(); self.ngens];
        for (yi, urow) in y.iter().zip(&self.transform) {
            if yi.is_zero() {
                continue;
            }
            for (c, ue) in coeffs.iter_mut().zip(urow.iter()) {
                *c += yi * ue;
            }
        }
        Some(coeffs)
    }
}

fn check_dim(v: &QVector, gens: &GeneratorSet) -> Result<(), LatticeError> {
    if v.dim() != gens.dim() {
        return Err(LatticeError::DimensionMismatch {
            expected: gens.dim(),
            got: v.dim(),
        });
    }
    Ok(())
}

/// Indices of the nonzero generators; the zero vector spans nothing and is
/// stripped before membership computations.
fn nonzero_indices(gens: &GeneratorSet) -> Vec<usize> {
    (0..gens.len()).filter(|&i| !gens.vector(i).is_zero()).collect()
}

/// Hermite normal form of an integer matrix given as rational vectors.
/// Returns `(h, u)` with `u * a = h`; see [`intmat::hnf_with_transform`]
/// for the exact normal form conventions.
pub fn hnf(matrix: &[QVector]) -> Result<(Vec<QVector>, Vec<QVector>), LatticeError> {
    if matrix.is_empty() {
        return Err(LatticeError::EmptyInput("hnf needs at least one row"));
    }
    let dim = matrix[0].dim();
    let mut rows: Vec<IntRow> = Vec::with_capacity(matrix.len());
    for v in matrix {
        if v.dim() != dim {
            return Err(LatticeError::DimensionMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
        let mut row = Vec::with_capacity(dim);
        for c in v.coords() {
            if !c.is_integer() {
                return Err(LatticeError::NonIntegerEntry(c.to_string()));
            }
            row.push(c.to_integer());
        }
        rows.push(row);
    }
    let (h, u) = intmat::hnf_with_transform(&rows);
    let to_qvec = |rows: Vec<IntRow>| {
        rows.into_iter()
            .map(|row| QVector::new(row.into_iter().map(Rat::from_integer).collect()))
            .collect()
    };
    Ok((to_qvec(h), to_qvec(u)))
}

/// Decides v in Z(S) and returns an exact integer combination when present.
pub fn lattice_membership(
    v: &QVector,
    gens: &GeneratorSet,
) -> Result<Option<Combination>, LatticeError> {
    check_dim(v, gens)?;
    let live = nonzero_indices(gens);
    if live.is_empty() {
        return Ok(v
            .is_zero()
            .then(|| Combination::empty(CombinationKind::Lattice)));
    }
    let mut all: Vec<&QVector> = live.iter().map(|&i| gens.vector(i)).collect();
    all.push(v);
    let (_, mut rows) = scaled_integer_rows(&all);
    let v_row = rows.pop().expect("v row present");
    let lattice = IntLattice::from_rows(&rows);
    match lattice.coeffs_over_generators(&v_row) {
        None => Ok(None),
        Some(coeffs) => {
            let terms = coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| (live[k], Rat::from_integer(c)))
                .collect();
            let combo = Combination::new(CombinationKind::Lattice, terms);
            debug_assert!(combo.validate(gens, v).is_ok());
            Ok(Some(combo))
        }
    }
}

/// Decides v in Q+(S) by exact LP feasibility; certificates come back with
/// linearly independent support.
pub fn cone_membership(
    v: &QVector,
    gens: &GeneratorSet,
) -> Result<Option<Combination>, LatticeError> {
    check_dim(v, gens)?;
    let live = nonzero_indices(gens);
    if live.is_empty() {
        return Ok(v
            .is_zero()
            .then(|| Combination::empty(CombinationKind::Cone)));
    }
    let dim = gens.dim();
    let a: Vec<Vec<Rat>> = (0..dim)
        .map(|i| live.iter().map(|&j| gens.vector(j).coord(i).clone()).collect())
        .collect();
    let b: Vec<Rat> = v.coords().to_vec();
    match simplex::feasible_point(&a, &b) {
        None => Ok(None),
        Some(x) => {
            let terms = x
                .into_iter()
                .enumerate()
                .map(|(k, c)| (live[k], c))
                .collect();
            let combo = Combination::new(CombinationKind::Cone, terms);
            let reduced = reduce_to_independent_support(v, &combo, gens)?;
            Ok(Some(reduced))
        }
    }
}

/// Rewrites a cone combination so that its support is linearly independent
/// while still re-substituting exactly to `v`.
pub fn reduce_to_independent_support(
    v: &QVector,
    combo: &Combination,
    gens: &GeneratorSet,
) -> Result<Combination, LatticeError> {
    if combo.kind != CombinationKind::Cone {
        return Err(LatticeError::InvalidCertificate(
            "expected a cone combination".into(),
        ));
    }
    combo.validate(gens, v)?;
    let mut coeffs = combo.dense(gens.len());
    loop {
        let support: Vec<usize> = (0..gens.len())
            .filter(|&i| coeffs[i].is_positive())
            .collect();
        // first support vector dependent on its predecessors, if any
        let mut ech = crate::intmat::RatEchelon::new(gens.dim());
        let mut dependency: Option<(usize, Vec<Rat>)> = None;
        for (pos, &i) in support.iter().enumerate() {
            if let Some(expr) = ech.insert(gens.vector(i).coords()) {
                dependency = Some((pos, expr));
                break;
            }
        }
        let Some((pos, expr)) = dependency else {
            break; // independent support
        };
        // direction d with sum d_i s_i = 0: d = e_pos - expr over earlier kept
        let mut d = vec![Rat::zero(); support.len()];
        d[pos] = Rat::from_integer(Int::from(1));
        for (k, c) in expr.into_iter().enumerate() {
            d[k] = -c;
        }
        // walk until the first positive-direction coefficient hits zero
        let mut step: Option<Rat> = None;
        for (k, dk) in d.iter().enumerate() {
            if dk.is_positive() {
                let ratio = &coeffs[support[k]] / dk;
                if step.as_ref().map_or(true, |s| ratio < *s) {
                    step = Some(ratio);
                }
            }
        }
        let step = step.expect("direction has a positive entry by construction");
        for (k, dk) in d.iter().enumerate() {
            if !dk.is_zero() {
                let delta = dk * &step;
                coeffs[support[k]] -= delta;
            }
        }
    }
    let combo = Combination::new(
        CombinationKind::Cone,
        coeffs.into_iter().enumerate().collect(),
    );
    debug_assert!(combo.validate(gens, v).is_ok());
    Ok(combo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn gens(dim: usize, rows: &[&[i64]]) -> GeneratorSet {
        let (set, _) = GeneratorSet::new(
            dim,
            rows.iter().map(|r| QVector::from_ints(r)).collect(),
        )
        .unwrap();
        set
    }

    #[test]
    fn hnf_rejects_non_integer() {
        let m = vec![QVector::new(vec![ratio(1, 2), rat(0)])];
        assert!(matches!(hnf(&m), Err(LatticeError::NonIntegerEntry(_))));
    }

    #[test]
    fn lattice_membership_generator_itself() {
        let s = gens(2, &[&[2, -2], &[3, -3]]);
        let v = QVector::from_ints(&[2, -2]);
        let combo = lattice_membership(&v, &s).unwrap().unwrap();
        assert_eq!(combo.evaluate(&s), v);
    }

    #[test]
    fn lattice_membership_paper_n2_case() {
        // (1,-1) = (3,-3) - (2,-2)
        let s = gens(2, &[&[2, -2], &[3, -3]]);
        let v = QVector::from_ints(&[1, -1]);
        let combo = lattice_membership(&v, &s).unwrap().unwrap();
        combo.validate(&s, &v).unwrap();
        assert_eq!(
            combo.terms,
            vec![(0, rat(-1)), (1, rat(1))],
            "expected the (3,-3) - (2,-2) combination"
        );
    }

    #[test]
    fn lattice_membership_absent() {
        let s = gens(2, &[&[2, 0], &[0, 2]]);
        let v = QVector::from_ints(&[1, 0]);
        assert!(lattice_membership(&v, &s).unwrap().is_none());
    }

    #[test]
    fn cone_membership_zero_vector() {
        let s = gens(2, &[&[1, 0], &[0, 1]]);
        let combo = cone_membership(&QVector::zero(2), &s).unwrap().unwrap();
        assert!(combo.terms.is_empty());
    }

    #[test]
    fn cone_membership_scaled_ray() {
        // (1/2,-1/2) = 1/3 * (3/2,-3/2)
        let s = {
            let (set, _) = GeneratorSet::new(
                2,
                vec![
                    QVector::new(vec![ratio(3, 2), ratio(-3, 2)]),
                    QVector::new(vec![ratio(5, 2), ratio(-5, 2)]),
                ],
            )
            .unwrap();
            set
        };
        let v = QVector::new(vec![ratio(1, 2), ratio(-1, 2)]);
        let combo = cone_membership(&v, &s).unwrap().unwrap();
        assert_eq!(combo.terms, vec![(0, ratio(1, 3))]);
    }

    #[test]
    fn cone_membership_absent() {
        let s = gens(2, &[&[1, 0], &[0, 1]]);
        let v = QVector::from_ints(&[-1, 0]);
        assert!(cone_membership(&v, &s).unwrap().is_none());
    }

    #[test]
    fn reduction_keeps_value_and_independence() {
        let s = gens(2, &[&[0, 1], &[1, 0], &[3, 0]]);
        let v = QVector::from_ints(&[2, 0]);
        let combo = Combination::new(
            CombinationKind::Cone,
            vec![(1, ratio(1, 2)), (2, ratio(1, 2))],
        );
        let reduced = reduce_to_independent_support(&v, &combo, &s).unwrap();
        reduced.validate(&s, &v).unwrap();
        assert_eq!(reduced.terms.len(), 1, "rank-1 family reduces to one term");
    }

    #[test]
    fn reduction_rejects_invalid_input() {
        let s = gens(2, &[&[1, 0]]);
        let v = QVector::from_ints(&[2, 0]);
        let bad = Combination::new(CombinationKind::Cone, vec![(0, rat(1))]);
        assert!(reduce_to_independent_support(&v, &bad, &s).is_err());
    }
}
