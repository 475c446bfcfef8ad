//! Characters of the diagonal torus of SL(n) in the quasi-basis, dominance
//! order, weight-system generation, duality and the Shift move.
//!
//! A character is an integer vector modulo the relation e_1 + ... + e_n = 0;
//! the canonical representative has minimum coordinate 0. The usual form is
//! the unique representative with rational coordinates summing to zero.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::WeightError;
use crate::qvec::QVector;
use crate::rat::{rat, Rat};

/// A torus character: integer quasi-coordinates with minimum coordinate 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuasiWeight {
    n: usize,
    coords: Vec<i64>,
}

impl QuasiWeight {
    /// Canonicalizes an arbitrary representative by subtracting the minimum.
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty());
        let min = *coords.iter().min().unwrap();
        QuasiWeight {
            n: coords.len(),
            coords: coords.into_iter().map(|c| c - min).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        QuasiWeight::new(vec![0; n])
    }

    /// e_{i1} + ... + e_{ik} for 0-based indices.
    pub fn from_support(n: usize, support: &[usize]) -> Self {
        let mut coords = vec![0i64; n];
        for &i in support {
            coords[i] += 1;
        }
        QuasiWeight::new(coords)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn coord_sum(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn neg(&self) -> QuasiWeight {
        QuasiWeight::new(self.coords.iter().map(|&c| -c).collect())
    }

    pub fn add(&self, other: &QuasiWeight) -> QuasiWeight {
        assert_eq!(self.n, other.n);
        QuasiWeight::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
    }

    /// The dominant member of the S_n-orbit.
    pub fn dominant_representative(&self) -> QuasiWeight {
        let mut coords = self.coords.clone();
        coords.sort_unstable_by(|a, b| b.cmp(a));
        QuasiWeight::new(coords)
    }

    /// The unique representative with coordinate sum zero.
    pub fn to_usual(&self) -> UsualWeight {
        let sum = rat(self.coord_sum());
        let mean = sum / rat(self.n as i64);
        UsualWeight {
            coords: self.coords.iter().map(|&c| rat(c) - &mean).collect(),
        }
    }

    pub fn parse(s: &str) -> Result<QuasiWeight, String> {
        let coords: Vec<i64> = s
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| format!("invalid integer `{t}`")))
            .collect::<Result<_, _>>()?;
        if coords.is_empty() {
            return Err("empty weight".into());
        }
        Ok(QuasiWeight::new(coords))
    }
}

impl fmt::Display for QuasiWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A character in usual coordinates: exact rationals summing to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UsualWeight {
    coords: Vec<Rat>,
}

impl UsualWeight {
    pub fn new(coords: Vec<Rat>) -> Result<Self, WeightError> {
        let sum: Rat = coords.iter().fold(Rat::zero(), |a, c| a + c);
        if !sum.is_zero() {
            return Err(WeightError::NonZeroSum);
        }
        Ok(UsualWeight { coords })
    }

    pub fn n(&self) -> usize {
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

    pub fn neg(&self) -> UsualWeight {
        UsualWeight {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn sorted_desc(&self) -> UsualWeight {
        let mut coords = self.coords.clone();
        coords.sort_by(|a, b| b.cmp(a));
        UsualWeight { coords }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn to_qvector(&self) -> QVector {
        QVector::new(self.coords.clone())
    }

    /// Back to canonical quasi-coordinates. The input must be a genuine
    /// character, i.e. all coordinates share one fractional part.
    pub fn to_quasi(&self) -> QuasiWeight {
        let min = self.coords.iter().min().expect("nonempty");
        let shifted: Vec<i64> = self
            .coords
            .iter()
            .map(|c| {
                let d = c - min;
                assert!(d.is_integer(), "not a character: mixed fractional parts");
                i64::try_from(d.to_integer()).expect("weight coordinate fits i64")
            })
            .collect();
        QuasiWeight::new(shifted)
    }

    pub fn sum_of_squares(&self) -> Rat {
        self.coords
            .iter()
            .map(|c| c * c)
            .fold(Rat::zero(), |a, t| a + t)
    }

    /// The Shift move: for |y_i - y_j| >= 2 moves one unit from the larger
    /// coordinate to the smaller one. Stays inside M(lambda) of the input's
    /// dominant representative and strictly decreases the sum of squares.
    pub fn shift(&self, i: usize, j: usize) -> Result<UsualWeight, WeightError> {
        assert!(i < self.n() && j < self.n() && i != j);
        let gap = &self.coords[i] - &self.coords[j];
        let two = rat(2);
        if gap.abs() < two {
            return Err(WeightError::ShiftGapTooSmall);
        }
        let one = rat(1);
        let mut coords = self.coords.clone();
        if gap.is_positive() {
            coords[i] -= &one;
            coords[j] += &one;
        } else {
            coords[i] += &one;
            coords[j] -= &one;
        }
        Ok(UsualWeight { coords })
    }
}

impl fmt::Display for UsualWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(crate::rat::format_rat).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// nu <= mu in the dominance order: all prefix sums of mu - nu nonnegative.
pub fn dominance_leq(nu: &UsualWeight, mu: &UsualWeight) -> Result<bool, WeightError> {
    if nu.n() != mu.n() {
        return Err(WeightError::DimensionMismatch {
            expected: mu.n(),
            got: nu.n(),
        });
    }
    let mut prefix = Rat::zero();
    for (m, v) in mu.coords().iter().zip(nu.coords()) {
        prefix += m - v;
        if prefix.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The k-th fundamental weight e_1 + ... + e_k, 1 <= k <= n-1.
pub fn fundamental_weight(k: usize, n: usize) -> Result<QuasiWeight, WeightError> {
    if k == 0 || k >= n {
        return Err(WeightError::IndexOutOfRange { k, n });
    }
    let mut coords = vec![0i64; n];
    for c in coords.iter_mut().take(k) {
        *c = 1;
    }
    Ok(QuasiWeight::new(coords))
}

/// Is the canonical representative a fundamental weight? Returns k.
pub fn fundamental_index(w: &QuasiWeight) -> Option<usize> {
    let mut ones = 0usize;
    for &c in w.coords() {
        match c {
            0 => {}
            1 => ones += 1,
            _ => return None,
        }
    }
    (ones >= 1 && ones < w.n()).then_some(ones)
}

/// Highest weight of the adjoint module, e_1 - e_n.
pub fn adjoint_weight(n: usize) -> QuasiWeight {
    assert!(n >= 2);
    let mut coords = vec![1i64; n];
    coords[0] = 2;
    coords[n - 1] = 0;
    QuasiWeight::new(coords)
}

/// The dominant weight whose weight system is -M(lambda).
pub fn dual_weight(lambda: &QuasiWeight) -> QuasiWeight {
    lambda.neg().dominant_representative()
}

/// All distinct coordinate permutations, lexicographically sorted.
pub fn weyl_orbit(w: &QuasiWeight) -> Vec<QuasiWeight> {
    let mut coords = w.coords().to_vec();
    coords.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(QuasiWeight::new(coords.clone()));
        if !next_permutation(&mut coords) {
            break;
        }
    }
    out.sort();
    out
}

fn next_permutation(a: &mut [i64]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Membership of a - b in the root lattice: the coordinate sum of any quasi
/// representative of the difference is divisible by n.
pub fn difference_in_root_lattice(a: &QuasiWeight, b: &QuasiWeight) -> bool {
    debug_assert_eq!(a.n(), b.n());
    (a.coord_sum() - b.coord_sum()).rem_euclid(a.n() as i64) == 0
}

/// mu in M(lambda), decided directly: the dominant representative of mu is
/// dominance-below lambda and lambda - mu lies in the root lattice.
pub fn in_weight_system(lambda: &QuasiWeight, mu: &QuasiWeight) -> Result<bool, WeightError> {
    if lambda.n() != mu.n() {
        return Err(WeightError::DimensionMismatch {
            expected: lambda.n(),
            got: mu.n(),
        });
    }
    if !difference_in_root_lattice(lambda, mu) {
        return Ok(false);
    }
    dominance_leq(
        &mu.dominant_representative().to_usual(),
        &lambda.to_usual(),
    )
}

/// The finite weight system M(lambda) of the simple module V(lambda).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    n: usize,
    highest: QuasiWeight,
    weights: Vec<QuasiWeight>, // sorted lexicographically, deduplicated
}

impl WeightSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn highest(&self) -> &QuasiWeight {
        &self.highest
    }

    pub fn weights(&self) -> &[QuasiWeight] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn contains(&self, w: &QuasiWeight) -> bool {
        self.weights.binary_search(w).is_ok()
    }
}

/// Generates M(lambda) by enumerating the dominant weights below lambda in
/// the same root-lattice class and closing under coordinate permutations.
pub fn weight_system(lambda: &QuasiWeight) -> Result<WeightSystem, WeightError> {
    if !lambda.is_dominant() {
        return Err(WeightError::NotDominant(lambda.to_string()));
    }
    let n = lambda.n();
    // usual coordinates scaled by n: integers in one residue class mod n
    let scaled: Vec<i64> = {
        let sum = lambda.coord_sum();
        lambda
            .coords()
            .iter()
            .map(|&c| c * n as i64 - sum)
            .collect()
    };
    let hi = scaled[0];
    let lo = scaled[n - 1];
    let residue = hi.rem_euclid(n as i64);

    let mut dominants: Vec<Vec<i64>> = Vec::new();
    let mut current = vec![0i64; n];
    enumerate_dominants(&scaled, hi, lo, residue, 0, 0, &mut current, &mut dominants);

    let mut weights: Vec<QuasiWeight> = Vec::new();
    for y in dominants {
        // back to canonical quasi-coordinates: (y - min) / n
        let min = *y.iter().min().unwrap();
        let quasi: Vec<i64> = y.iter().map(|&v| (v - min) / n as i64).collect();
        weights.extend(weyl_orbit(&QuasiWeight::new(quasi)));
    }
    weights.sort();
    weights.dedup();
    Ok(WeightSystem {
        n,
        highest: lambda.clone(),
        weights,
    })
}

/// Depth-first enumeration of weakly decreasing vectors on the residue grid
/// with sum zero that sit dominance-below lambda (all in n-scaled usual
/// coordinates).
fn enumerate_dominants(
    lambda: &[i64],
    hi: i64,
    lo: i64,
    residue: i64,
    depth: usize,
    partial_sum: i64,
    current: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let n = lambda.len();
    if depth == n {
        if partial_sum == 0 {
            out.push(current.clone());
        }
        return;
    }
    let modulus = n as i64;
    let prev = if depth == 0 { hi } else { current[depth - 1] };
    let lambda_prefix: i64 = lambda[..=depth].iter().sum();
    let mut v = prev - (prev - residue).rem_euclid(modulus);
    while v >= lo {
        let new_sum = partial_sum + v;
        if lambda_prefix - new_sum >= 0 {
            let remaining = (n - depth - 1) as i64;
            // the rest is bounded coordinatewise by [lo, v]
            if new_sum + remaining * lo <= 0 && new_sum + remaining * v >= 0 {
                current[depth] = v;
                enumerate_dominants(lambda, hi, lo, residue, depth + 1, new_sum, current, out);
            }
        }
        v -= modulus;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    #[test]
    fn canonical_representative_min_zero() {
        let w = QuasiWeight::new(vec![3, 1, 2]);
        assert_eq!(w.coords(), &[2, 0, 1]);
        assert_eq!(QuasiWeight::new(vec![-1, -1, -1]).coords(), &[0, 0, 0]);
    }

    #[test]
    fn to_usual_examples() {
        let e1 = QuasiWeight::new(vec![1, 0, 0]);
        assert_eq!(
            e1.to_usual().coords(),
            &[ratio(2, 3), ratio(-1, 3), ratio(-1, 3)]
        );
        assert!(QuasiWeight::zero(4).to_usual().is_zero());
        let w = QuasiWeight::new(vec![2, 0]);
        assert_eq!(w.to_usual().coords(), &[rat(1), rat(-1)]);
    }

    #[test]
    fn usual_quasi_roundtrip() {
        let w = QuasiWeight::new(vec![4, 0, 2, 1]);
        assert_eq!(w.to_usual().to_quasi(), w);
    }

    #[test]
    fn fundamental_weights() {
        assert_eq!(fundamental_weight(1, 4).unwrap().coords(), &[1, 0, 0, 0]);
        assert_eq!(
            fundamental_weight(3, 6).unwrap().coords(),
            &[1, 1, 1, 0, 0, 0]
        );
        assert_eq!(fundamental_weight(3, 4).unwrap().coords(), &[1, 1, 1, 0]);
        assert!(fundamental_weight(0, 4).is_err());
        assert!(fundamental_weight(4, 4).is_err());
        assert_eq!(
            fundamental_index(&fundamental_weight(2, 5).unwrap()),
            Some(2)
        );
        assert_eq!(fundamental_index(&QuasiWeight::new(vec![2, 0, 0])), None);
    }

    use crate::rat::rat;

    #[test]
    fn dominance_prefix_sums() {
        let mu = UsualWeight::new(vec![rat(1), rat(0), rat(-1)]).unwrap();
        let zero = UsualWeight::new(vec![rat(0), rat(0), rat(0)]).unwrap();
        assert!(dominance_leq(&zero, &mu).unwrap());
        assert!(!dominance_leq(&mu, &zero).unwrap());
        assert!(dominance_leq(&mu, &mu).unwrap());
    }

    #[test]
    fn weyl_orbit_multiset() {
        let orbit = weyl_orbit(&QuasiWeight::new(vec![1, 1, 0]));
        assert_eq!(orbit.len(), 3);
        let orbit = weyl_orbit(&fundamental_weight(2, 4).unwrap());
        assert_eq!(orbit.len(), 6);
        let orbit = weyl_orbit(&QuasiWeight::zero(5));
        assert_eq!(orbit.len(), 1);
    }

    #[test]
    fn weight_system_pi2_n4() {
        let ws = weight_system(&fundamental_weight(2, 4).unwrap()).unwrap();
        assert_eq!(ws.len(), 6);
        for w in ws.weights() {
            assert_eq!(w.coords().iter().filter(|&&c| c == 1).count(), 2);
        }
    }

    #[test]
    fn weight_system_adjoint_n3() {
        let ws = weight_system(&adjoint_weight(3)).unwrap();
        assert_eq!(ws.len(), 7);
        assert!(ws.contains(&QuasiWeight::zero(3)));
    }

    #[test]
    fn weight_system_two_pi1_n3() {
        let ws = weight_system(&QuasiWeight::new(vec![2, 0, 0])).unwrap();
        assert_eq!(ws.len(), 6);
        assert!(ws.contains(&QuasiWeight::new(vec![1, 1, 0])));
        assert!(ws.contains(&QuasiWeight::new(vec![0, 2, 0])));
    }

    #[test]
    fn dual_weights() {
        let pi1 = fundamental_weight(1, 3).unwrap();
        let pi2 = fundamental_weight(2, 3).unwrap();
        assert_eq!(dual_weight(&pi1), pi2);
        let adj = adjoint_weight(5);
        assert_eq!(dual_weight(&adj), adj);
        assert_eq!(
            dual_weight(&QuasiWeight::new(vec![2, 0, 0])),
            QuasiWeight::new(vec![2, 2, 0])
        );
    }

    #[test]
    fn shift_moves() {
        let w = UsualWeight::new(vec![rat(2), rat(0), rat(-2)]).unwrap();
        let s = w.shift(0, 2).unwrap();
        assert_eq!(s.coords(), &[rat(1), rat(0), rat(-1)]);
        let t = UsualWeight::new(vec![rat(3), rat(-1), rat(-2)]).unwrap();
        assert_eq!(t.shift(0, 2).unwrap().coords(), &[rat(2), rat(-1), rat(-1)]);
        // gap exactly 2 is a legal move: (1,-1) pairs zero out
        let u = UsualWeight::new(vec![rat(1), rat(0), rat(-1)]).unwrap();
        assert_eq!(u.shift(0, 2).unwrap().coords(), &[rat(0), rat(0), rat(0)]);
        assert!(u.shift(0, 1).is_err());
        assert!(u.shift(1, 2).is_err());
    }

    #[test]
    fn shift_stays_in_weight_system_and_decreases_norm() {
        let lam = QuasiWeight::new(vec![4, 2, 0]);
        let usual = lam.to_usual();
        let shifted = usual.shift(0, 2).unwrap();
        assert!(shifted.sum_of_squares() < usual.sum_of_squares());
        assert!(in_weight_system(&lam, &shifted.to_quasi()).unwrap());
    }

    #[test]
    fn membership_predicate_matches_enumeration() {
        for lam in [
            QuasiWeight::new(vec![2, 1, 0]),
            QuasiWeight::new(vec![3, 0, 0]),
            QuasiWeight::new(vec![2, 2, 0, 0]),
            QuasiWeight::new(vec![3, 1, 0, 0]),
        ] {
            let ws = weight_system(&lam).unwrap();
            for w in ws.weights() {
                assert!(in_weight_system(&lam, w).unwrap());
            }
            let probe = QuasiWeight::new(vec![5i64; lam.n()]);
            assert_eq!(in_weight_system(&lam, &probe).unwrap(), ws.contains(&probe));
        }
    }
}
