//! Non-fundamental highest weights: breadth-first search over Shift moves
//! for the lemma-specific special points, and the certificates built at
//! them. By the inclusion property M(lambda') is a subset of M(lambda) for
//! any dominant lambda' in M(lambda), so a certificate below lambda' also
//! certifies lambda.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Zero};

use crate::error::ForgeError;
use crate::lattice::lattice_membership;
use crate::qvec::GeneratorSet;
use crate::rat::{rat, ratio, Rat};
use crate::weights::{fundamental_index, QuasiWeight, UsualWeight};

use super::examples::{example8, example9};
use super::transform::negate_enss;
use super::{DiscriminatingFunction, EnssCertificate};

/// Coordinate-multiset shapes searched for by [`find_special_point`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetPattern {
    /// (2, 0, ..., 0, -1, -1)
    TwoMinusOneMinusOne,
    /// (1, 1, 0, ..., 0, -2)
    OneOneMinusTwo,
    /// (1, 1, 0, ..., 0, -1, -1)
    OneOneMinusOneMinusOne,
    /// three coordinate values alpha+1, alpha, alpha-1 present at once
    GoodTriple,
    /// an explicit coordinate multiset
    Exact(UsualWeight),
}

fn fixed_shape(pattern: &TargetPattern, n: usize) -> Option<Vec<Rat>> {
    let mut shape = match pattern {
        TargetPattern::TwoMinusOneMinusOne if n >= 3 => {
            let mut s = vec![rat(2)];
            s.resize(n - 2, rat(0));
            s.push(rat(-1));
            s.push(rat(-1));
            s
        }
        TargetPattern::OneOneMinusTwo if n >= 3 => {
            let mut s = vec![rat(1), rat(1)];
            s.resize(n - 1, rat(0));
            s.push(rat(-2));
            s
        }
        TargetPattern::OneOneMinusOneMinusOne if n >= 4 => {
            let mut s = vec![rat(1), rat(1)];
            s.resize(n - 2, rat(0));
            s.push(rat(-1));
            s.push(rat(-1));
            s
        }
        TargetPattern::Exact(w) => w.sorted_desc().coords().to_vec(),
        _ => return None,
    };
    shape.sort_by(|a, b| b.cmp(a));
    Some(shape)
}

/// Looks for a good triple alpha+1 > alpha > alpha-1 among the distinct
/// coordinate values; returns alpha.
fn good_triple_alpha(sorted: &[Rat]) -> Option<Rat> {
    let mut distinct: Vec<&Rat> = Vec::new();
    for v in sorted {
        if distinct.last().map_or(true, |&d| d != v) {
            distinct.push(v);
        }
    }
    let one = Rat::one();
    for v in &distinct {
        let mid = *v - &one;
        let low = &mid - &one;
        if distinct.iter().any(|d| **d == mid) && distinct.iter().any(|d| **d == low) {
            return Some(mid);
        }
    }
    None
}

fn match_target(pattern: &TargetPattern, state: &[Rat], n: usize) -> Option<UsualWeight> {
    match pattern {
        TargetPattern::GoodTriple => {
            let alpha = good_triple_alpha(state)?;
            // arrange as (alpha+1, alpha, alpha-1, rest sorted descending)
            let mut rest = state.to_vec();
            let one = Rat::one();
            for v in [&alpha + &one, alpha.clone(), &alpha - &one] {
                let pos = rest.iter().position(|r| *r == v).expect("triple present");
                rest.remove(pos);
            }
            let mut coords = vec![&alpha + &one, alpha.clone(), &alpha - &one];
            coords.extend(rest);
            Some(UsualWeight::new(coords).expect("permutation keeps the zero sum"))
        }
        _ => {
            let shape = fixed_shape(pattern, n)?;
            (state == shape.as_slice())
                .then(|| UsualWeight::new(shape).expect("target shapes sum to zero"))
        }
    }
}

/// Breadth-first search over Shift moves from `lambda`, looking for a point
/// of M(lambda) whose coordinate multiset matches one of `targets` (checked
/// in the given order at every reached point, starting with lambda itself).
/// Every Shift strictly decreases the coordinate square sum, so the search
/// space is finite.
pub fn find_special_point(
    lambda: &UsualWeight,
    targets: &[TargetPattern],
) -> Result<UsualWeight, ForgeError> {
    let n = lambda.n();
    let start = lambda.sorted_desc().coords().to_vec();
    let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<Rat>> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(state) = queue.pop_front() {
        for t in targets {
            if let Some(point) = match_target(t, &state, n) {
                return Ok(point);
            }
        }
        let two = rat(2);
        for i in 0..n {
            for j in i + 1..n {
                if &state[i] - &state[j] >= two {
                    let mut next = state.clone();
                    next[i] -= Rat::one();
                    next[j] += Rat::one();
                    next.sort_by(|a, b| b.cmp(a));
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Err(ForgeError::NotFound(format!(
        "no target point reachable from {lambda}"
    )))
}

/// Integer lattice combination computed from scratch; the constructors never
/// copy a combination they cannot re-verify.
fn computed_lattice_terms(
    gens: &[QuasiWeight],
    witness: &QuasiWeight,
) -> Result<Vec<(usize, Rat)>, ForgeError> {
    let n = gens[0].n();
    let vectors = gens.iter().map(|g| g.to_usual().to_qvector()).collect();
    let (set, perm) = GeneratorSet::new(n, vectors)?;
    let combo = lattice_membership(&witness.to_usual().to_qvector(), &set)?
        .ok_or_else(|| ForgeError::Routing("witness escaped the generator lattice".into()))?;
    // set index -> position in the given generator order
    let mut back = vec![0usize; perm.len()];
    for (orig, &sorted) in perm.iter().enumerate() {
        back[sorted] = orig;
    }
    Ok(combo
        .terms
        .into_iter()
        .map(|(i, c)| (back[i], c))
        .collect())
}

/// Rebuilds a certificate anchored below a larger highest weight; the
/// self-check re-runs against the new context.
fn reanchor(
    cert: &EnssCertificate,
    lambda: &QuasiWeight,
    via: &UsualWeight,
) -> Result<EnssCertificate, ForgeError> {
    EnssCertificate::new(
        cert.n(),
        Some(lambda.clone()),
        cert.generators().to_vec(),
        cert.witness().clone(),
        cert.cone_combo().terms.clone(),
        cert.lattice_combo().terms.clone(),
        cert.disc_fn().cloned(),
        format!("{} via special point ({})", cert.provenance(), via),
    )
}

fn adjoint_usual(n: usize) -> UsualWeight {
    let mut coords = vec![rat(0); n];
    coords[0] = rat(1);
    coords[n - 1] = rat(-1);
    UsualWeight::new(coords).expect("sums to zero")
}

/// Certificate for a dominant weight with all usual coordinates integral,
/// outside {0, adjoint} (and |a| >= 3 when n = 2).
pub fn integer_coordinate_enss(lambda: &UsualWeight) -> Result<EnssCertificate, ForgeError> {
    let n = lambda.n();
    if n < 2 {
        return Err(ForgeError::ParamOutOfRange("need n >= 2".into()));
    }
    if !lambda.is_dominant() {
        return Err(ForgeError::Routing(format!("{lambda} is not dominant")));
    }
    if !lambda.is_integral() {
        return Err(ForgeError::Routing(
            "integer-coordinate constructor requires integral coordinates".into(),
        ));
    }
    if lambda.is_zero() {
        return Err(ForgeError::SaturatedCase("zero weight".into()));
    }
    if *lambda == adjoint_usual(n) {
        return Err(ForgeError::SaturatedCase("adjoint representation".into()));
    }

    if n == 2 {
        let a = lambda.coord(0).clone();
        if a <= rat(2) {
            return Err(ForgeError::SaturatedCase(format!(
                "SL(2) weight ({lambda}) with |a| <= 2"
            )));
        }
        // {(2,-2), (3,-3)} with witness (1,-1); the lattice combination is
        // recomputed rather than copied
        let gens = vec![QuasiWeight::new(vec![4, 0]), QuasiWeight::new(vec![6, 0])];
        let witness = QuasiWeight::new(vec![2, 0]);
        let lattice = computed_lattice_terms(&gens, &witness)?;
        return EnssCertificate::new(
            2,
            Some(lambda.to_quasi()),
            gens,
            witness,
            vec![(0, ratio(1, 2))],
            lattice,
            None,
            format!("sl2 integer endgame below ({lambda})"),
        );
    }

    let mut targets = vec![
        TargetPattern::TwoMinusOneMinusOne,
        TargetPattern::OneOneMinusTwo,
    ];
    if n >= 4 {
        targets.push(TargetPattern::OneOneMinusOneMinusOne);
    }
    let point = find_special_point(lambda, &targets)?;
    let sorted = point.coords();
    let base = if Some(sorted.to_vec()) == fixed_shape(&TargetPattern::TwoMinusOneMinusOne, n) {
        example8(n)?
    } else if Some(sorted.to_vec()) == fixed_shape(&TargetPattern::OneOneMinusTwo, n) {
        negate_enss(&example8(n)?)?
    } else {
        example9(n)?
    };
    reanchor(&base, &lambda.to_quasi(), &point)
}

/// The explicit four-vector certificate below 2e_1 (usual coordinates
/// ((2n-2)/n, -2/n, ..., -2/n)), n >= 4.
fn two_e1_cert(n: usize, lambda: &QuasiWeight) -> Result<EnssCertificate, ForgeError> {
    let gens = vec![
        QuasiWeight::from_support(n, &[0, 0]), // 2e1
        QuasiWeight::from_support(n, &[1, 1]), // 2e2
        QuasiWeight::from_support(n, &[0, 2]), // e1+e3
        QuasiWeight::from_support(n, &[1, 2]), // e2+e3
    ];
    let witness = QuasiWeight::from_support(n, &[0, 1]);
    let mut fcoeffs = vec![0i64; n];
    fcoeffs[0] = 1;
    fcoeffs[1] = 1;
    fcoeffs[2] = 1;
    fcoeffs[n - 1] = -3;
    EnssCertificate::new(
        n,
        Some(lambda.clone()),
        gens,
        witness,
        vec![(0, ratio(1, 2)), (1, ratio(1, 2))],
        vec![(0, rat(1)), (3, rat(1)), (2, rat(-1))],
        Some(DiscriminatingFunction::from_ints(&fcoeffs)?),
        format!("no-good-triple shape 2e1 (n={n})"),
    )
}

/// Certificate for a dominant non-fundamental weight with all usual
/// coordinates non-integral.
pub fn fractional_coordinate_enss(lambda: &UsualWeight) -> Result<EnssCertificate, ForgeError> {
    let n = lambda.n();
    if n < 2 {
        return Err(ForgeError::ParamOutOfRange("need n >= 2".into()));
    }
    if !lambda.is_dominant() {
        return Err(ForgeError::Routing(format!("{lambda} is not dominant")));
    }
    if lambda.coords().iter().any(|c| c.is_integer()) {
        return Err(ForgeError::Routing(
            "fractional constructor requires non-integral coordinates".into(),
        ));
    }
    let quasi = lambda.to_quasi();
    if fundamental_index(&quasi).is_some() {
        return Err(ForgeError::Routing(format!(
            "fundamental weight ({quasi}) is handled by the fundamental constructor"
        )));
    }

    if n == 2 {
        let a = lambda.coord(0).clone();
        if a == ratio(3, 2) {
            return Err(ForgeError::SaturatedCase("SL(2) cubic weight".into()));
        }
        debug_assert!(a >= ratio(5, 2), "smaller half-integers are fundamental");
        let gens = vec![QuasiWeight::new(vec![3, 0]), QuasiWeight::new(vec![5, 0])];
        let witness = QuasiWeight::new(vec![1, 0]);
        let lattice = computed_lattice_terms(&gens, &witness)?;
        return EnssCertificate::new(
            2,
            Some(quasi),
            gens,
            witness,
            vec![(0, ratio(1, 3))],
            lattice,
            None,
            format!("sl2 half-integer endgame below ({lambda}); lattice combination recomputed"),
        );
    }

    if n == 3 {
        // normalize the fractional parts to 2/3
        let frac = lambda.coord(0) - Rat::from_integer(lambda.coord(0).floor().to_integer());
        if frac == ratio(1, 3) {
            return negate_enss(&fractional_coordinate_enss(&lambda.neg().sorted_desc())?);
        }
        let two_pi1: UsualWeight = QuasiWeight::new(vec![2, 0, 0]).to_usual();
        if *lambda == two_pi1 {
            return Err(ForgeError::SaturatedCase("S^2 k^3".into()));
        }
        let target = UsualWeight::new(vec![ratio(5, 3), ratio(-1, 3), ratio(-4, 3)])
            .expect("sums to zero");
        let point = find_special_point(lambda, &[TargetPattern::Exact(target)])?;
        let gens = vec![
            QuasiWeight::new(vec![1, 0, 0]), // e1
            QuasiWeight::new(vec![2, 2, 0]), // 2e1 + 2e2
            QuasiWeight::new(vec![3, 1, 0]), // 3e1 + e2
        ];
        let witness = QuasiWeight::new(vec![2, 1, 0]);
        return EnssCertificate::new(
            3,
            Some(quasi),
            gens,
            witness,
            vec![(0, rat(1)), (1, ratio(1, 2))],
            vec![(2, rat(1)), (0, rat(-1))],
            Some(DiscriminatingFunction::from_ints(&[1, 0, -1])?),
            format!("sl3 endgame via special point ({point})"),
        );
    }

    // n >= 4: the two shapes without a good triple get the explicit
    // certificate, everything else the permuted-triple one
    let pos_shape = {
        let mut coords = vec![ratio(2 * n as i64 - 2, n as i64)];
        coords.resize(n, ratio(-2, n as i64));
        UsualWeight::new(coords).expect("sums to zero")
    };
    if *lambda == pos_shape {
        return two_e1_cert(n, &quasi);
    }
    if *lambda == pos_shape.neg().sorted_desc() {
        return negate_enss(&two_e1_cert(n, &crate::weights::dual_weight(&quasi))?);
    }

    let point = find_special_point(lambda, &[TargetPattern::GoodTriple])?;
    let p = point.coords();
    let (alpha_plus, alpha, alpha_minus) = (p[0].clone(), p[1].clone(), p[2].clone());
    let rest: Vec<Rat> = p[3..].to_vec();
    let arrange = |a: &Rat, b: &Rat, c: &Rat| {
        let mut coords = vec![a.clone(), b.clone(), c.clone()];
        coords.extend(rest.iter().cloned());
        UsualWeight::new(coords).expect("permutation keeps zero sum").to_quasi()
    };
    let v1 = arrange(&alpha_plus, &alpha, &alpha_minus);
    let v2 = arrange(&alpha_minus, &alpha, &alpha_plus);
    let v3 = arrange(&alpha_plus, &alpha_minus, &alpha);
    let v4 = arrange(&alpha, &alpha_minus, &alpha_plus);
    let witness = arrange(&alpha, &alpha, &alpha);
    let a4 = p[3].clone();
    debug_assert!(!a4.is_zero());
    let mut fcoeffs = vec![Rat::zero(); n];
    fcoeffs[3] = Rat::one() / &a4;
    EnssCertificate::new(
        n,
        Some(quasi),
        vec![v1, v2, v3, v4],
        witness,
        vec![(0, ratio(1, 2)), (1, ratio(1, 2))],
        vec![(1, rat(1)), (2, rat(1)), (3, rat(-1))],
        Some(DiscriminatingFunction::from_usual_coeffs(fcoeffs)),
        format!("good-triple certificate at ({point})"),
    )
}
