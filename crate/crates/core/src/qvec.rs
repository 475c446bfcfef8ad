//! Exact rational vectors, generator sets and combination certificates.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::LatticeError;
use crate::rat::{format_rat, parse_rat, Rat};

/// A vector with exact rational coordinates. Equality is exact and the
/// derived ordering is lexicographic on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector {
    coords: Vec<Rat>,
}

impl QVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        assert!(!coords.is_empty(), "QVector must have dimension >= 1");
        QVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        QVector::new(vec![Rat::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        QVector::new(coords.iter().map(|&c| crate::rat::rat(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim());
        QVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> QVector {
        QVector::new(self.coords.iter().map(|a| a * c).collect())
    }

    pub fn dot(&self, other: &QVector) -> Rat {
        assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, t| acc + t)
    }

    /// Parses a whitespace-separated list of integers or `p/q` rationals.
    pub fn parse(line: &str) -> Result<QVector, String> {
        let coords = line
            .split_whitespace()
            .map(parse_rat)
            .collect::<Result<Vec<_>, _>>()?;
        if coords.is_empty() {
            return Err("empty vector".into());
        }
        Ok(QVector::new(coords))
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rat).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A duplicate-free list of generators of common dimension, kept in
/// lexicographic order so that enumerations are reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    dim: usize,
    vectors: Vec<QVector>,
}

impl GeneratorSet {
    /// Builds the set and returns, for each input position, the index the
    /// vector ended up at after canonical sorting.
    pub fn new(dim: usize, vectors: Vec<QVector>) -> Result<(Self, Vec<usize>), LatticeError> {
        for v in &vectors {
            if v.dim() != dim {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
        }
        let mut order: Vec<usize> = (0..vectors.len()).collect();
        order.sort_by(|&a, &b| vectors[a].cmp(&vectors[b]));
        for w in order.windows(2) {
            if vectors[w[0]] == vectors[w[1]] {
                let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(LatticeError::DuplicateGenerator {
                    first: a,
                    second: b,
                });
            }
        }
        let mut perm = vec![0usize; vectors.len()];
        for (sorted_pos, &orig) in order.iter().enumerate() {
            perm[orig] = sorted_pos;
        }
        let mut sorted = Vec::with_capacity(vectors.len());
        for &orig in &order {
            sorted.push(vectors[orig].clone());
        }
        Ok((
            GeneratorSet {
                dim,
                vectors: sorted,
            },
            perm,
        ))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, i: usize) -> &QVector {
        &self.vectors[i]
    }

    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    pub fn iter(&self) -> impl Iterator<Item = &QVector> {
        self.vectors.iter()
    }

    pub fn position(&self, v: &QVector) -> Option<usize> {
        self.vectors.binary_search(v).ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombinationKind {
    Cone,
    Lattice,
    Semigroup,
}

/// A sparse linear combination of generators: pairs of (index, coefficient).
/// Omitted indices carry coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination {
    pub kind: CombinationKind,
    pub terms: Vec<(usize, Rat)>,
}

impl Combination {
    pub fn new(kind: CombinationKind, mut terms: Vec<(usize, Rat)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by_key(|&(i, _)| i);
        Combination { kind, terms }
    }

    pub fn empty(kind: CombinationKind) -> Self {
        Combination {
            kind,
            terms: Vec::new(),
        }
    }

    /// Re-substitutes the combination over `gens`.
    pub fn evaluate(&self, gens: &GeneratorSet) -> QVector {
        let mut acc = QVector::zero(gens.dim());
        for (i, c) in &self.terms {
            acc = acc.add(&gens.vector(*i).scale(c));
        }
        acc
    }

    /// Dense coefficient view of length `len`.
    pub fn dense(&self, len: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); len];
        for (i, c) in &self.terms {
            out[*i] = c.clone();
        }
        out
    }

    /// Checks the coefficient-shape invariant for the combination kind and
    /// that the combination re-substitutes exactly to `target`.
    pub fn validate(&self, gens: &GeneratorSet, target: &QVector) -> Result<(), LatticeError> {
        for (i, c) in &self.terms {
            if *i >= gens.len() {
                return Err(LatticeError::InvalidCertificate(format!(
                    "generator index {i} out of range"
                )));
            }
            let ok = match self.kind {
                CombinationKind::Cone => !c.is_negative(),
                CombinationKind::Lattice => c.is_integer(),
                CombinationKind::Semigroup => c.is_integer() && !c.is_negative(),
            };
            if !ok {
                return Err(LatticeError::InvalidCertificate(format!(
                    "coefficient {} on generator {} violates {:?} constraints",
                    format_rat(c),
                    i,
                    self.kind
                )));
            }
        }
        if &self.evaluate(gens) != target {
            return Err(LatticeError::InvalidCertificate(
                "combination does not re-substitute to the target vector".into(),
            ));
        }
        Ok(())
    }

    /// Remaps generator indices, e.g. after canonical re-sorting of the set.
    pub fn remap(&self, perm: &[usize]) -> Combination {
        Combination::new(
            self.kind,
            self.terms
                .iter()
                .map(|(i, c)| (perm[*i], c.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| format!("{}:{}", i, format_rat(c)))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Compares vectors lexicographically; used for deterministic witness picks.
pub fn lex_cmp(a: &QVector, b: &QVector) -> Ordering {
    a.cmp(b)
}
