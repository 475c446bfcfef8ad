//! Lattice points in the half-open parallelepiped of an independent family.

use num_traits::{One, Zero};

use crate::error::LatticeError;
use crate::intmat::{self, IntRow};
use crate::qvec::{GeneratorSet, QVector};
use crate::rat::{rat_floor, Int, Rat};

use super::{scaled_integer_rows, IntLattice};

const INDEX_CAP: u64 = 4_000_000;

/// All points of the lattice Z(L) inside `{ sum q_b * b : 0 <= q_b < 1 }`
/// for a linearly independent family `B`, in lexicographic order.
pub fn enumerate_parallelepiped_points(
    b: &GeneratorSet,
    l: &GeneratorSet,
) -> Result<Vec<QVector>, LatticeError> {
    if b.is_empty() {
        return Err(LatticeError::EmptyInput("parallelepiped needs vectors"));
    }
    if b.dim() != l.dim() {
        return Err(LatticeError::DimensionMismatch {
            expected: b.dim(),
            got: l.dim(),
        });
    }
    let rows_q: Vec<Vec<Rat>> = b.iter().map(|v| v.coords().to_vec()).collect();
    if intmat::rational_rank(&rows_q) != b.len() {
        return Err(LatticeError::DependentVectors);
    }

    let all: Vec<&QVector> = b.iter().chain(l.iter()).collect();
    let (scale, rows) = scaled_integer_rows(&all);
    let (b_rows, l_rows) = rows.split_at(b.len());

    let l_lattice = IntLattice::from_rows(l_rows);
    let mut plus_rows = l_rows.to_vec();
    plus_rows.extend_from_slice(b_rows);
    let points = half_open_points(b_rows, &plus_rows, Some(&l_lattice))?;

    let scale_rat = Rat::from_integer(scale);
    let mut out: Vec<QVector> = points
        .into_iter()
        .map(|row| {
            QVector::new(
                row.into_iter()
                    .map(|e| Rat::from_integer(e) / &scale_rat)
                    .collect(),
            )
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Integer-row version shared with the saturation scan. `b_rows` must be
/// independent and contained (as a set of lattice members) in the row span
/// of `lattice_rows`; `filter` restricts the output to a sublattice.
pub(crate) fn half_open_points(
    b_rows: &[IntRow],
    lattice_rows: &[IntRow],
    filter: Option<&IntLattice>,
) -> Result<Vec<IntRow>, LatticeError> {
    let dim = b_rows[0].len();
    let s = b_rows.len();
    let lattice = IntLattice::from_rows(lattice_rows);

    // sublattice of `lattice` inside span(B): kernel of pairing with the
    // orthogonal complement of span(B)
    let normals = intmat::right_kernel(b_rows);
    let section_basis: Vec<IntRow> = if normals.is_empty() {
        lattice.basis.clone()
    } else {
        let pairing: Vec<IntRow> = lattice
            .basis
            .iter()
            .map(|row| {
                normals
                    .iter()
                    .map(|nrm| {
                        row.iter()
                            .zip(nrm)
                            .map(|(a, b)| a * b)
                            .fold(Int::zero(), |acc, t| acc + t)
                    })
                    .collect()
            })
            .collect();
        intmat::left_kernel(&pairing)
            .into_iter()
            .map(|y| {
                let mut v = vec![Int::zero(); dim];
                for (yi, brow) in y.iter().zip(&lattice.basis) {
                    for (ve, be) in v.iter_mut().zip(brow) {
                        *ve += yi * be;
                    }
                }
                v
            })
            .collect()
    };
    if section_basis.len() != s {
        return Err(LatticeError::InvalidCertificate(
            "family is not contained in the lattice span".into(),
        ));
    }
    let section = IntLattice::from_rows(&section_basis);

    // B expressed over the section lattice
    let c_rows: Vec<IntRow> = b_rows
        .iter()
        .map(|row| {
            section.solve(row).ok_or(LatticeError::InvalidCertificate(
                "family member escapes the section lattice".into(),
            ))
        })
        .collect::<Result<_, _>>()?;
    let (c_h, _) = intmat::hnf_with_transform(&c_rows);
    let diag: Vec<Int> = (0..s).map(|i| c_h[i][i].clone()).collect();
    if diag.iter().any(|d| d.is_zero()) {
        return Err(LatticeError::DependentVectors);
    }
    let mut index = 1u64;
    for d in &diag {
        let d64: u64 = d
            .to_string()
            .parse()
            .map_err(|_| LatticeError::ResourceLimit("parallelepiped index overflow".into()))?;
        index = index
            .checked_mul(d64)
            .filter(|&v| v <= INDEX_CAP)
            .ok_or_else(|| {
                LatticeError::ResourceLimit(format!(
                    "parallelepiped index exceeds cap {INDEX_CAP}"
                ))
            })?;
    }

    let b_rows_q: Vec<Vec<Rat>> = b_rows
        .iter()
        .map(|row| row.iter().cloned().map(Rat::from_integer).collect())
        .collect();

    let mut out = Vec::with_capacity(index as usize);
    let mut counter = vec![Int::zero(); s];
    loop {
        // point of the section lattice for this residue class
        let mut p = vec![Int::zero(); dim];
        for (ci, srow) in counter.iter().zip(&section.basis) {
            if ci.is_zero() {
                continue;
            }
            for (pe, se) in p.iter_mut().zip(srow) {
                *pe += ci * se;
            }
        }
        // reduce into the half-open box by subtracting floors of B-coords
        let p_q: Vec<Rat> = p.iter().cloned().map(Rat::from_integer).collect();
        let q = intmat::solve_combination(&b_rows_q, &p_q)
            .expect("section point lies in span(B)");
        for (qb, brow) in q.iter().zip(b_rows) {
            let f = rat_floor(qb);
            if f.is_zero() {
                continue;
            }
            for (pe, be) in p.iter_mut().zip(brow) {
                *pe -= &f * be;
            }
        }
        if filter.map_or(true, |lat| lat.contains(&p)) {
            out.push(p);
        }

        // odometer over the residue box
        let mut k = s;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            counter[k] += Int::one();
            if counter[k] < diag[k] {
                break;
            }
            counter[k] = Int::zero();
            if k == 0 {
                k = usize::MAX;
                break;
            }
        }
        if k == usize::MAX {
            break;
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
