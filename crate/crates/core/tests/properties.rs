//! Property and invariant tests: the standing lemmas behind the pruning
//! rules, weight-system identities, certificate transforms, and the
//! equality of pruned and unpruned subset scans.

use norbit_core::classify::{check_all_subsets, ScanOptions, ScanOutcome};
use norbit_core::enss::{
    check_discriminating_function, example_enss, fundamental_enss, multiply_enss, negate_enss,
    step_enss, DiscOutcome,
};
use norbit_core::lattice::{
    cone_membership, is_saturated, semigroup_membership, SaturationLimits, SemigroupLimits,
};
use norbit_core::qvec::{GeneratorSet, QVector};
use norbit_core::rat::{rat, Rat};
use norbit_core::simplex;
use norbit_core::weights::{
    adjoint_weight, dual_weight, fundamental_weight, in_weight_system, weight_system, weyl_orbit,
    QuasiWeight,
};

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_set(rng: &mut ChaCha8Rng, dim: usize, count: usize, bound: i64) -> GeneratorSet {
    let mut gens: Vec<Vec<i64>> = Vec::new();
    while gens.len() < count {
        let g: Vec<i64> = (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect();
        if !gens.contains(&g) {
            gens.push(g);
        }
    }
    let (set, _) = GeneratorSet::new(
        dim,
        gens.iter().map(|g| QVector::from_ints(g)).collect(),
    )
    .unwrap();
    set
}

#[test]
fn cone_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..100 {
        let dim = rng.gen_range(2..=3usize);
        let set = random_set(&mut rng, dim, rng.gen_range(2..=4), 3);
        let v = QVector::from_ints(
            &(0..dim)
                .map(|_| rng.gen_range(-4..=4i64))
                .collect::<Vec<_>>(),
        );
        if cone_membership(&v, &set).unwrap().is_none() {
            continue;
        }
        // enlarge the set by a fresh vector; membership must survive
        let mut vectors: Vec<QVector> = set.vectors().to_vec();
        loop {
            let w = QVector::from_ints(
                &(0..dim)
                    .map(|_| rng.gen_range(-3..=3i64))
                    .collect::<Vec<_>>(),
            );
            if !vectors.contains(&w) {
                vectors.push(w);
                break;
            }
        }
        let (bigger, _) = GeneratorSet::new(dim, vectors).unwrap();
        assert!(
            cone_membership(&v, &bigger).unwrap().is_some(),
            "cone membership lost after adding a generator"
        );
    }
}

#[test]
fn independent_sets_are_saturated() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let limits = SaturationLimits::default();
    let mut tested = 0;
    while tested < 100 {
        let dim = rng.gen_range(2..=4usize);
        let count = rng.gen_range(1..=dim);
        let set = random_set(&mut rng, dim, count, 3);
        let rows: Vec<Vec<Rat>> = set.iter().map(|v| v.coords().to_vec()).collect();
        if norbit_core::intmat::rational_rank(&rows) != set.len() {
            continue;
        }
        let verdict = is_saturated(&set, &limits).unwrap();
        assert!(verdict.saturated, "independent set reported non-saturated");
        tested += 1;
    }
}

#[test]
fn pair_removal_preserves_non_saturation() {
    // for a non-saturated set containing {a, -a}, at least one of the two
    // one-element removals is still non-saturated
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let limits = SaturationLimits::default();
    let mut premises = 0;
    for _ in 0..400 {
        let dim = rng.gen_range(2..=3usize);
        let mut gens: Vec<Vec<i64>> = Vec::new();
        let alpha: Vec<i64> = loop {
            let a: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2i64)).collect();
            if a.iter().any(|&x| x != 0) {
                break a;
            }
        };
        gens.push(alpha.clone());
        gens.push(alpha.iter().map(|&x| -x).collect());
        while gens.len() < 5 {
            let g: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3i64)).collect();
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        let build = |list: &[Vec<i64>]| {
            GeneratorSet::new(dim, list.iter().map(|g| QVector::from_ints(g)).collect())
                .unwrap()
                .0
        };
        let full = build(&gens);
        if is_saturated(&full, &limits).unwrap().saturated {
            continue;
        }
        premises += 1;
        let without = |skip: usize| {
            let rest: Vec<Vec<i64>> = gens
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, g)| g.clone())
                .collect();
            build(&rest)
        };
        let a_removed = is_saturated(&without(0), &limits).unwrap().saturated;
        let neg_removed = is_saturated(&without(1), &limits).unwrap().saturated;
        assert!(
            !a_removed || !neg_removed,
            "both pair removals became saturated for {gens:?}"
        );
    }
    assert!(premises >= 10, "premise fired only {premises} times");
}

#[test]
fn saturation_is_scale_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let limits = SaturationLimits::default();
    for _ in 0..60 {
        let dim = rng.gen_range(2..=3usize);
        let set = random_set(&mut rng, dim, rng.gen_range(2..=4), 3);
        let verdict = is_saturated(&set, &limits).unwrap().saturated;
        for c in [2i64, 3] {
            let scaled: Vec<QVector> = set
                .iter()
                .map(|v| v.scale(&rat(c)))
                .collect();
            let (scaled_set, _) = GeneratorSet::new(dim, scaled).unwrap();
            assert_eq!(
                is_saturated(&scaled_set, &limits).unwrap().saturated,
                verdict,
                "saturation changed under scaling by {c}"
            );
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[test]
fn fundamental_weight_system_sizes() {
    for n in 2..=10usize {
        for k in 1..n {
            let ws = weight_system(&fundamental_weight(k, n).unwrap()).unwrap();
            assert_eq!(
                ws.len(),
                binomial(n, k),
                "M(pi{k}, {n}) has the wrong size"
            );
        }
    }
}

fn dominant_family(n: usize, max_coord: i64) -> Vec<QuasiWeight> {
    fn rec(n: usize, depth: usize, prev: i64, cur: &mut Vec<i64>, out: &mut Vec<QuasiWeight>) {
        if depth == n - 1 {
            let mut coords = cur.clone();
            coords.push(0);
            out.push(QuasiWeight::new(coords));
            return;
        }
        for c in (0..=prev).rev() {
            cur.push(c);
            rec(n, depth + 1, c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, max_coord, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

#[test]
fn dual_weight_system_is_negated() {
    for n in 2..=5usize {
        for lam in dominant_family(n, 4) {
            let ws = weight_system(&lam).unwrap();
            let dual = weight_system(&dual_weight(&lam)).unwrap();
            let negated: Vec<QuasiWeight> = {
                let mut v: Vec<QuasiWeight> = ws.weights().iter().map(|w| w.neg()).collect();
                v.sort();
                v
            };
            assert_eq!(dual.weights(), negated.as_slice(), "dual mismatch at {lam}");
        }
    }
}

#[test]
fn weight_system_inclusion() {
    for n in 2..=4usize {
        for lam in dominant_family(n, 3) {
            let ws = weight_system(&lam).unwrap();
            for mu in ws.weights() {
                if !mu.is_dominant() {
                    continue;
                }
                for inner in weight_system(mu).unwrap().weights() {
                    assert!(
                        ws.contains(inner),
                        "M({mu}) escapes M({lam}) at {inner}"
                    );
                }
            }
        }
    }
}

#[test]
fn shift_outputs_stay_in_weight_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for _ in 0..200 {
        let n = rng.gen_range(2..=5usize);
        let lam = {
            let mut coords: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=4i64)).collect();
            coords.sort_unstable_by(|a, b| b.cmp(a));
            QuasiWeight::new(coords)
        };
        let mut point = lam.to_usual();
        // random walk of shifts; every stop must stay inside M(lambda)
        for _ in 0..4 {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            let Ok(next) = point.shift(i, j) else { continue };
            assert!(next.sum_of_squares() < point.sum_of_squares());
            point = next;
            assert!(
                in_weight_system(&lam, &point.to_quasi()).unwrap(),
                "shift escaped M({lam})"
            );
        }
    }
}

/// Hull membership by exact LP: mu in conv(orbit) iff a convex combination
/// of the orbit reaches it.
fn hull_member(lam: &QuasiWeight, mu: &QuasiWeight) -> bool {
    let orbit = weyl_orbit(lam);
    let n = lam.n();
    let mu_usual = mu.to_usual();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            orbit
                .iter()
                .map(|w| w.to_usual().coords()[i].clone())
                .collect()
        })
        .collect();
    a.push(vec![Rat::one(); orbit.len()]);
    let mut b: Vec<Rat> = mu_usual.coords().to_vec();
    b.push(Rat::one());
    simplex::feasible_point(&a, &b).is_some()
}

#[test]
fn weight_system_matches_hull_and_filter() {
    for n in 2..=4usize {
        for lam in dominant_family(n, 3) {
            let ws = weight_system(&lam).unwrap();
            // probe every orbit representative in a small box
            for mu in dominant_family(n, 4) {
                let direct = ws.contains(&mu);
                let oracle = norbit_core::weights::difference_in_root_lattice(&lam, &mu)
                    && hull_member(&lam, &mu);
                assert_eq!(direct, oracle, "hull oracle disagrees at lam={lam} mu={mu}");
            }
        }
    }
}

#[test]
fn pruned_and_unpruned_scans_agree() {
    for lam in [adjoint_weight(3), fundamental_weight(3, 6).unwrap()] {
        let ws = weight_system(&lam).unwrap();
        let pruned = check_all_subsets(&ws, &ScanOptions::default());
        let unpruned = check_all_subsets(
            &ws,
            &ScanOptions {
                prune_pairs: false,
                ..Default::default()
            },
        );
        let verdict = |o: &ScanOutcome| match o {
            ScanOutcome::Saturated => true,
            ScanOutcome::NotSaturated(_) => false,
            ScanOutcome::ResourceLimit(m) => panic!("scan hit a resource limit: {m}"),
        };
        assert_eq!(
            verdict(&pruned.outcome),
            verdict(&unpruned.outcome),
            "pruning changed the verdict for {lam}"
        );
        assert!(verdict(&pruned.outcome), "both scans must be saturated here");
    }
}

#[test]
fn transforms_preserve_validity() {
    // all negative fundamental pairs up to n = 12 give valid inputs; step
    // and multiply outputs must verify
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut pool = Vec::new();
    for n in 7..=12usize {
        for k in 2..=n - 2 {
            pool.push((n, k));
        }
    }
    let limits = SemigroupLimits::default();
    for _ in 0..50 {
        let (n, k) = pool[rng.gen_range(0..pool.len())];
        let cert = fundamental_enss(n, k).unwrap();
        match rng.gen_range(0..3) {
            0 => {
                let stepped = step_enss(&cert).unwrap();
                assert!(stepped.verify(None, &limits).unwrap().ok());
            }
            1 => {
                let doubled = multiply_enss(&cert, 2).unwrap();
                assert!(doubled.verify(None, &limits).unwrap().ok());
            }
            _ => {
                let dualed = negate_enss(&cert).unwrap();
                assert!(dualed.verify(None, &limits).unwrap().ok());
            }
        }
    }
}

#[test]
fn discriminating_function_agrees_with_search() {
    // whenever the coin-problem argument refutes, the exhaustive search
    // must refute as well
    let cases = [
        (1, None),
        (2, None),
        (3, Some(4)),
        (3, Some(5)),
        (4, Some(3)),
        (5, None),
        (6, None),
        (7, None),
        (8, None),
        (9, None),
    ];
    for (id, k) in cases {
        let cert = example_enss(id, k).unwrap();
        let f = cert.disc_fn().expect("examples carry f").clone();
        let outcome = check_discriminating_function(&f, &cert).unwrap();
        assert_eq!(outcome, DiscOutcome::Refutes, "example {id}");
        let (set, _) = cert.usual_generator_set();
        let witness = cert.witness().to_usual().to_qvector();
        assert!(
            semigroup_membership(&witness, &set, &SemigroupLimits::default())
                .unwrap()
                .is_none(),
            "example {id}: the two non-membership proofs disagree"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_is_idempotent_and_certified(rows in proptest::collection::vec(
        proptest::collection::vec(-6i64..=6, 3), 1..5
    )) {
        let matrix: Vec<QVector> = rows.iter().map(|r| QVector::from_ints(r)).collect();
        let (h, u) = norbit_core::lattice::hnf(&matrix).unwrap();
        // u * rows = h
        for (i, hrow) in h.iter().enumerate() {
            let mut acc = QVector::zero(3);
            for (k, r) in matrix.iter().enumerate() {
                acc = acc.add(&r.scale(u[i].coord(k)));
            }
            prop_assert_eq!(&acc, hrow);
        }
        // a second pass fixes nothing
        let (h2, _) = norbit_core::lattice::hnf(&h).unwrap();
        prop_assert_eq!(h, h2);
    }

    #[test]
    fn vector_text_roundtrip(coords in proptest::collection::vec((-40i64..=40, 1i64..=12), 1..6)) {
        let v = QVector::new(
            coords.iter().map(|&(p, q)| norbit_core::rat::Rat::new(p.into(), q.into())).collect(),
        );
        let parsed = QVector::parse(&v.to_string()).unwrap();
        prop_assert_eq!(v, parsed);
    }

    #[test]
    fn semigroup_members_scale(coeffs in proptest::collection::vec(0i64..=3, 3)) {
        // a freely built combination is always recognized
        let (set, _) = GeneratorSet::new(
            2,
            vec![
                QVector::from_ints(&[1, 0]),
                QVector::from_ints(&[1, 1]),
                QVector::from_ints(&[0, 2]),
            ],
        )
        .unwrap();
        let mut v = QVector::zero(2);
        for (c, g) in coeffs.iter().zip(set.vectors()) {
            v = v.add(&g.scale(&rat(*c)));
        }
        let combo = semigroup_membership(&v, &set, &SemigroupLimits::default())
            .unwrap()
            .expect("constructed member must be found");
        prop_assert!(combo.terms.iter().all(|(_, c)| !c.is_zero() || false));
        let eval = combo.evaluate(&set);
        prop_assert_eq!(eval, v);
    }
}

#[test]
fn zero_weight_changes_nothing_in_scans() {
    // S^4 k^2 contains the zero weight; dropping it from the universe is
    // an identity on verdicts
    let ws = weight_system(&QuasiWeight::new(vec![4, 0])).unwrap();
    assert!(ws.weights().iter().any(|w| w.is_zero()));
    let summary = check_all_subsets(&ws, &ScanOptions::default());
    assert!(matches!(summary.outcome, ScanOutcome::Saturated));
}
