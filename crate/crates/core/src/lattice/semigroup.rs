//! Exact decision of semigroup membership v in Z+(S).
//!
//! The search splits the generators into "unit" ones, whose negative lies in
//! Q+(S), and the rest, whose images in the quotient by the lineality space
//! span a pointed cone. For the unit part Z+ equals Z: a nonnegative rational
//! combination of all unit generators sums to zero, so any integer
//! combination can be shifted into nonnegative coefficients. The pointed part
//! is searched depth-first with three exact prunings: the residual must stay
//! in the lattice of the remaining generators, a strictly positive functional
//! bounds every remaining coefficient, and the residual must stay inside the
//! cone of the remaining generators (rational LP).

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::LatticeError;
use crate::intmat::IntRow;
use crate::qvec::{Combination, CombinationKind, GeneratorSet, QVector};
use crate::rat::{denominator_lcm, rat_floor, Int, Rat};
use crate::simplex;

use super::{scale_vector, scaled_integer_rows, IntLattice};

#[derive(Clone, Copy, Debug)]
pub struct SemigroupLimits {
    /// Upper bound on explored search nodes before reporting a resource
    /// limit (distinct from a non-membership verdict).
    pub max_nodes: u64,
}

impl Default for SemigroupLimits {
    fn default() -> Self {
        SemigroupLimits {
            max_nodes: 2_000_000,
        }
    }
}

/// Per-generator-set state reused across many membership queries.
pub struct SemigroupContext {
    dim: usize,
    scale: Int,
    live: Vec<usize>,
    rows: Vec<IntRow>,
    lattice: IntLattice,
    units: Vec<usize>,
    pointed: Vec<usize>,
    unit_lattice: IntLattice,
    zero_combo: Vec<Int>,
    suffix_lattices: Vec<IntLattice>,
    phi: Option<Vec<Rat>>,
    max_abs_entry: Int,
    generator_lookup: Vec<QVector>,
}

fn cone_feasible(columns: &[&IntRow], target: &[Int]) -> bool {
    if columns.is_empty() {
        return target.iter().all(|e| e.is_zero());
    }
    let dim = target.len();
    let a: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            columns
                .iter()
                .map(|col| Rat::from_integer(col[i].clone()))
                .collect()
        })
        .collect();
    let b: Vec<Rat> = target.iter().cloned().map(Rat::from_integer).collect();
    simplex::feasible_point(&a, &b).is_some()
}

fn div_ceil(a: &Int, b: &Int) -> Int {
    -(-a).div_floor(b)
}

impl SemigroupContext {
    pub fn new(gens: &GeneratorSet) -> Result<Self, LatticeError> {
        let live: Vec<usize> = (0..gens.len())
            .filter(|&i| !gens.vector(i).is_zero())
            .collect();
        let refs: Vec<&QVector> = live.iter().map(|&i| gens.vector(i)).collect();
        let (scale, rows) = scaled_integer_rows(&refs);
        let lattice = IntLattice::from_rows(&rows);

        let mut units = Vec::new();
        let mut pointed = Vec::new();
        let all_refs: Vec<&IntRow> = rows.iter().collect();
        for (k, row) in rows.iter().enumerate() {
            let neg: IntRow = row.iter().map(|e| -e.clone()).collect();
            if cone_feasible(&all_refs, &neg) {
                units.push(k);
            } else {
                pointed.push(k);
            }
        }

        let unit_rows: Vec<IntRow> = units.iter().map(|&k| rows[k].clone()).collect();
        let unit_lattice = IntLattice::from_rows(&unit_rows);

        let zero_combo = if units.is_empty() {
            Vec::new()
        } else {
            // mu >= 0 with sum mu_j g_j = -sum g_j exists because the unit
            // cone is a linear subspace; then (mu + 1) scaled to integers is
            // an all-positive integer combination of zero.
            let dim = gens.dim();
            let mut neg_sum = vec![Int::zero(); dim];
            for row in &unit_rows {
                for (t, e) in neg_sum.iter_mut().zip(row) {
                    *t -= e;
                }
            }
            let a: Vec<Vec<Rat>> = (0..dim)
                .map(|i| {
                    unit_rows
                        .iter()
                        .map(|row| Rat::from_integer(row[i].clone()))
                        .collect()
                })
                .collect();
            let b: Vec<Rat> = neg_sum.into_iter().map(Rat::from_integer).collect();
            let mu = simplex::feasible_point(&a, &b).ok_or_else(|| {
                LatticeError::InvalidCertificate(
                    "unit generators fail to close into a subspace cone".into(),
                )
            })?;
            let shifted: Vec<Rat> = mu.into_iter().map(|m| m + Rat::one()).collect();
            let lcm = denominator_lcm(shifted.iter());
            let ints: Vec<Int> = shifted
                .into_iter()
                .map(|m| (m * Rat::from_integer(lcm.clone())).to_integer())
                .collect();
            let g = ints
                .iter()
                .fold(Int::zero(), |acc, c| acc.gcd(c))
                .max(Int::one());
            ints.into_iter().map(|c| c / &g).collect()
        };

        let mut suffix_lattices = Vec::with_capacity(pointed.len() + 1);
        for t in 0..=pointed.len() {
            let mut sub: Vec<IntRow> = pointed[t..].iter().map(|&k| rows[k].clone()).collect();
            sub.extend(unit_rows.iter().cloned());
            suffix_lattices.push(IntLattice::from_rows(&sub));
        }

        let phi = if pointed.is_empty() {
            None
        } else {
            Some(positive_functional(&rows, &units, &pointed)?)
        };

        let max_abs_entry = rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|e| e.abs())
            .max()
            .unwrap_or_else(Int::one)
            .max(Int::one());

        Ok(SemigroupContext {
            dim: gens.dim(),
            scale,
            live,
            rows,
            lattice,
            units,
            pointed,
            unit_lattice,
            zero_combo,
            suffix_lattices,
            phi,
            max_abs_entry,
            generator_lookup: gens.vectors().to_vec(),
        })
    }

    /// A-priori cap on any coefficient of a minimal solution of the integer
    /// system over generators and target: with m = #generators, d = dim and
    /// a the largest absolute entry of the system, a solvable system has a
    /// solution with every coefficient at most m * (d*a)^(2d+1).
    fn coefficient_cap(&self, v_row: &[Int]) -> Int {
        let a = v_row
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_else(Int::one)
            .max(self.max_abs_entry.clone());
        let base = Int::from(self.dim as u64) * a;
        Int::from(self.rows.len().max(1) as u64) * base.pow(2 * self.dim as u32 + 1)
    }

    /// Decides v in Z+(S); `Ok(None)` is an authoritative non-membership.
    pub fn decide(
        &self,
        v: &QVector,
        limits: &SemigroupLimits,
    ) -> Result<Option<Combination>, LatticeError> {
        if v.dim() != self.dim {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        if v.is_zero() {
            return Ok(Some(Combination::empty(CombinationKind::Semigroup)));
        }
        if let Some(i) = self.generator_lookup.iter().position(|g| g == v) {
            return Ok(Some(Combination::new(
                CombinationKind::Semigroup,
                vec![(i, Rat::one())],
            )));
        }
        let Some(v_row) = scale_vector(v, &self.scale) else {
            return Ok(None);
        };
        if !self.lattice.contains(&v_row) {
            return Ok(None);
        }
        let coeff_cap = self.coefficient_cap(&v_row);
        let mut search = Search {
            ctx: self,
            nodes: 0,
            max_nodes: limits.max_nodes,
            chosen: vec![Int::zero(); self.pointed.len()],
            coeff_cap,
        };
        match search.dfs(0, v_row)? {
            None => Ok(None),
            Some(terms) => {
                let combo = Combination::new(CombinationKind::Semigroup, terms);
                debug_assert!({
                    let eval: QVector = combo_eval(&combo, &self.generator_lookup);
                    &eval == v
                });
                Ok(Some(combo))
            }
        }
    }

    fn assemble(&self, chosen: &[Int], residual: &[Int]) -> Option<Vec<(usize, Rat)>> {
        let z = self.unit_lattice.coeffs_over_generators(residual)?;
        let mut lift = Int::zero();
        for (zi, ci) in z.iter().zip(&self.zero_combo) {
            if zi.is_negative() {
                lift = lift.max(div_ceil(&-zi.clone(), ci));
            }
        }
        let mut terms = Vec::new();
        for (slot, n) in chosen.iter().enumerate() {
            if !n.is_zero() {
                let orig = self.live[self.pointed[slot]];
                terms.push((orig, Rat::from_integer(n.clone())));
            }
        }
        for ((zi, ci), &k) in z.iter().zip(&self.zero_combo).zip(&self.units) {
            let coeff = zi + &lift * ci;
            debug_assert!(!coeff.is_negative());
            if !coeff.is_zero() {
                terms.push((self.live[k], Rat::from_integer(coeff)));
            }
        }
        Some(terms)
    }
}

fn combo_eval(combo: &Combination, gens: &[QVector]) -> QVector {
    let dim = gens[0].dim();
    let mut acc = QVector::zero(dim);
    for (i, c) in &combo.terms {
        acc = acc.add(&gens[*i].scale(c));
    }
    acc
}

struct Search<'a> {
    ctx: &'a SemigroupContext,
    nodes: u64,
    max_nodes: u64,
    chosen: Vec<Int>,
    coeff_cap: Int,
}

impl Search<'_> {
    fn dfs(&mut self, t: usize, residual: IntRow) -> Result<Option<Vec<(usize, Rat)>>, LatticeError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(LatticeError::ResourceLimit(format!(
                "semigroup search exceeded {} nodes",
                self.max_nodes
            )));
        }
        // zero on every remaining pointed generator, rest absorbed by units
        if self.ctx.unit_lattice.contains(&residual) {
            return Ok(self.ctx.assemble(&self.chosen[..], &residual));
        }
        if t == self.ctx.pointed.len() {
            return Ok(None);
        }
        // residual must stay in the lattice of the remaining generators
        if !self.ctx.suffix_lattices[t].contains(&residual) {
            return Ok(None);
        }
        let phi = self.ctx.phi.as_ref().expect("pointed part has a functional");
        let phi_r = dot_rat(phi, &residual);
        if phi_r.is_negative() {
            return Ok(None);
        }
        // residual must stay in the cone of the remaining generators
        let mut cols: Vec<&IntRow> = self.ctx.pointed[t..]
            .iter()
            .map(|&k| &self.ctx.rows[k])
            .collect();
        cols.extend(self.ctx.units.iter().map(|&k| &self.ctx.rows[k]));
        if !cone_feasible(&cols, &residual) {
            return Ok(None);
        }

        let gen_row = &self.ctx.rows[self.ctx.pointed[t]];
        let phi_g = dot_rat(phi, gen_row);
        debug_assert!(phi_g >= Rat::one());
        let mut bound = rat_floor(&(phi_r / phi_g));
        if bound > self.coeff_cap {
            bound = self.coeff_cap.clone();
        }
        let mut n = Int::zero();
        let mut r = residual;
        while n <= bound {
            self.chosen[t] = n.clone();
            if let Some(hit) = self.dfs(t + 1, r.clone())? {
                return Ok(Some(hit));
            }
            for (re, ge) in r.iter_mut().zip(gen_row) {
                *re -= ge;
            }
            n += 1;
        }
        self.chosen[t] = Int::zero();
        Ok(None)
    }
}

fn dot_rat(phi: &[Rat], row: &[Int]) -> Rat {
    phi.iter()
        .zip(row)
        .map(|(p, e)| p * Rat::from_integer(e.clone()))
        .fold(Rat::zero(), |acc, t| acc + t)
}

/// A rational functional vanishing on the unit generators and >= 1 on every
/// pointed generator. Exists exactly because the quotient cone is pointed.
fn positive_functional(
    rows: &[IntRow],
    units: &[usize],
    pointed: &[usize],
) -> Result<Vec<Rat>, LatticeError> {
    let dim = rows[0].len();
    // variables: phi+ (dim), phi- (dim), slack per pointed generator
    let nvars = 2 * dim + pointed.len();
    let mut a: Vec<Vec<Rat>> = Vec::new();
    let mut b: Vec<Rat> = Vec::new();
    for (slot, &k) in pointed.iter().enumerate() {
        let mut row = vec![Rat::zero(); nvars];
        for i in 0..dim {
            row[i] = Rat::from_integer(rows[k][i].clone());
            row[dim + i] = -row[i].clone();
        }
        row[2 * dim + slot] = -Rat::one();
        a.push(row);
        b.push(Rat::one());
    }
    for &k in units {
        let mut row = vec![Rat::zero(); nvars];
        for i in 0..dim {
            row[i] = Rat::from_integer(rows[k][i].clone());
            row[dim + i] = -row[i].clone();
        }
        a.push(row);
        b.push(Rat::zero());
    }
    let x = simplex::feasible_point(&a, &b).ok_or_else(|| {
        LatticeError::InvalidCertificate("pointed part admits no positive functional".into())
    })?;
    Ok((0..dim).map(|i| &x[i] - &x[dim + i]).collect())
}

/// Decides v in Z+(S) with a fresh context; `Ok(None)` is authoritative.
pub fn semigroup_membership(
    v: &QVector,
    gens: &GeneratorSet,
    limits: &SemigroupLimits,
) -> Result<Option<Combination>, LatticeError> {
    if v.dim() != gens.dim() {
        return Err(LatticeError::DimensionMismatch {
            expected: gens.dim(),
            got: v.dim(),
        });
    }
    if gens.is_empty() {
        return Ok(v
            .is_zero()
            .then(|| Combination::empty(CombinationKind::Semigroup)));
    }
    let ctx = SemigroupContext::new(gens)?;
    ctx.decide(v, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn gens(dim: usize, rows: &[&[i64]]) -> GeneratorSet {
        let (s, _) = GeneratorSet::new(
            dim,
            rows.iter().map(|r| QVector::from_ints(r)).collect(),
        )
        .unwrap();
        s
    }

    #[test]
    fn generator_itself() {
        let s = gens(2, &[&[2, -2], &[3, -3]]);
        let v = QVector::from_ints(&[3, -3]);
        let combo = semigroup_membership(&v, &s, &SemigroupLimits::default())
            .unwrap()
            .unwrap();
        assert_eq!(combo.terms, vec![(1, rat(1))]);
    }

    #[test]
    fn paper_n2_non_member() {
        let s = gens(2, &[&[2, -2], &[3, -3]]);
        let v = QVector::from_ints(&[1, -1]);
        assert!(semigroup_membership(&v, &s, &SemigroupLimits::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn member_with_coefficients() {
        let s = gens(2, &[&[2, -2], &[3, -3]]);
        let v = QVector::from_ints(&[5, -5]);
        let combo = semigroup_membership(&v, &s, &SemigroupLimits::default())
            .unwrap()
            .unwrap();
        combo.validate(&s, &v).unwrap();
    }

    #[test]
    fn subspace_cone_is_whole_lattice() {
        // opposite pair: Z+ = Z
        let s = gens(2, &[&[1, -1], &[-1, 1]]);
        let v = QVector::from_ints(&[-4, 4]);
        let combo = semigroup_membership(&v, &s, &SemigroupLimits::default())
            .unwrap()
            .unwrap();
        combo.validate(&s, &v).unwrap();
    }

    #[test]
    fn mixed_units_and_pointed() {
        // units {(1,0),(-1,0)}, pointed (0,1)
        let s = gens(2, &[&[1, 0], &[-1, 0], &[0, 1]]);
        let v = QVector::from_ints(&[-3, 2]);
        let combo = semigroup_membership(&v, &s, &SemigroupLimits::default())
            .unwrap()
            .unwrap();
        combo.validate(&s, &v).unwrap();
        let v2 = QVector::from_ints(&[2, -1]);
        assert!(semigroup_membership(&v2, &s, &SemigroupLimits::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn zero_is_always_member() {
        let s = gens(2, &[&[5, 7]]);
        let combo = semigroup_membership(&QVector::zero(2), &s, &SemigroupLimits::default())
            .unwrap()
            .unwrap();
        assert!(combo.terms.is_empty());
    }

    #[test]
    fn lex_smallest_solution() {
        // 3 = 0*1 + 1*3 preferred over 3*1
        let s = gens(1, &[&[1], &[3]]);
        let v = QVector::from_ints(&[3]);
        let combo = semigroup_membership(&v, &s, &SemigroupLimits::default())
            .unwrap()
            .unwrap();
        assert_eq!(combo.terms, vec![(1, rat(1))]);
    }
}
