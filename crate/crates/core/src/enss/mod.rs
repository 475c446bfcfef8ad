//! Explicit non-saturated subsets of weight systems, as verifiable
//! certificates.
//!
//! A certificate carries a generator subset S of some weight system, a
//! witness v with exact combinations proving v in Z(S) and v in Q+(S), and
//! the fact v not in Z+(S) re-checked by exhaustive search. An optional
//! discriminating function gives a second, human-readable obstruction: a
//! linear functional vanishing on (1,...,1) and nonnegative on S whose value
//! at v is not a Z+-combination of its values on S.

mod examples;
mod format;
mod fundamental;
mod special;
mod transform;

pub use examples::example_enss;
pub use format::{format_certificate, parse_certificate};
pub use fundamental::{fundamental_enss, positive_fundamental_pair};
pub use special::{
    find_special_point, fractional_coordinate_enss, integer_coordinate_enss, TargetPattern,
};
pub use transform::{multiply_enss, negate_enss, step_enss};

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::ForgeError;
use crate::lattice::{semigroup_membership, SemigroupLimits};
use crate::qvec::{Combination, CombinationKind, GeneratorSet, QVector};
use crate::rat::{format_rat, Rat};
use crate::weights::{in_weight_system, QuasiWeight};

/// A linear functional in quasi-coordinate form with coefficient sum zero,
/// so its value on a character does not depend on the representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminatingFunction {
    coeffs: Vec<Rat>,
}

impl DiscriminatingFunction {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self, ForgeError> {
        let sum: Rat = coeffs.iter().fold(Rat::zero(), |a, c| a + c);
        if !sum.is_zero() {
            return Err(ForgeError::Malformed(
                "discriminating function must vanish on (1,...,1)".into(),
            ));
        }
        Ok(DiscriminatingFunction { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, ForgeError> {
        DiscriminatingFunction::new(coeffs.iter().map(|&c| crate::rat::rat(c)).collect())
    }

    /// Converts a functional given on usual coordinates by normalizing the
    /// coefficient sum to zero; values on characters are unchanged.
    pub fn from_usual_coeffs(coeffs: Vec<Rat>) -> Self {
        let n = coeffs.len();
        let mean = coeffs.iter().fold(Rat::zero(), |a, c| a + c)
            / Rat::from_integer(crate::rat::Int::from(n as u64));
        DiscriminatingFunction {
            coeffs: coeffs.into_iter().map(|c| c - &mean).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, w: &QuasiWeight) -> Rat {
        assert_eq!(w.n(), self.n());
        self.coeffs
            .iter()
            .zip(w.coords())
            .map(|(c, &x)| c * crate::rat::rat(x))
            .fold(Rat::zero(), |a, t| a + t)
    }

    pub fn neg(&self) -> DiscriminatingFunction {
        DiscriminatingFunction {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Coefficient string repeated r times: the matching functional on the
    /// r-fold concatenation of quasi-coordinates.
    pub fn repeat(&self, r: usize) -> DiscriminatingFunction {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() * r);
        for _ in 0..r {
            coeffs.extend(self.coeffs.iter().cloned());
        }
        DiscriminatingFunction { coeffs }
    }
}

/// Result of the discriminating-function check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiscOutcome {
    /// No Z+-combination of generator values reaches the witness value, or
    /// every one that does re-substitutes to a different vector.
    Refutes,
    /// Some generator value is zero; the coin-problem fiber is infinite and
    /// authority falls back to the exhaustive semigroup search.
    Inconclusive,
    /// A fiber solution actually re-substitutes to the witness; the
    /// certificate is broken.
    Counterexample(Vec<u64>),
}

/// Non-saturation certificate over a weight system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnssCertificate {
    n: usize,
    highest: Option<QuasiWeight>,
    generators: Vec<QuasiWeight>, // sorted lexicographically, duplicate-free
    witness: QuasiWeight,
    cone_combo: Combination,
    lattice_combo: Combination,
    disc_fn: Option<DiscriminatingFunction>,
    provenance: String,
}

impl EnssCertificate {
    /// Builds and self-verifies a certificate. Combination indices refer to
    /// `generators` as given here; they are remapped to canonical order.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: usize,
        highest: Option<QuasiWeight>,
        generators: Vec<QuasiWeight>,
        witness: QuasiWeight,
        cone_terms: Vec<(usize, Rat)>,
        lattice_terms: Vec<(usize, Rat)>,
        disc_fn: Option<DiscriminatingFunction>,
        provenance: String,
    ) -> Result<Self, ForgeError> {
        let cert = Self::new_unverified(
            n,
            highest,
            generators,
            witness,
            cone_terms,
            lattice_terms,
            disc_fn,
            provenance,
        )?;
        let report = cert.verify(None, &SemigroupLimits::default())?;
        if !report.ok() {
            return Err(ForgeError::Malformed(format!(
                "self-check failed: {}",
                report.failures.join("; ")
            )));
        }
        Ok(cert)
    }

    /// Structural construction without the semantic self-check; used by the
    /// parser so that verification failures are reportable, not fatal.
    #[allow(clippy::too_many_arguments)]
    pub fn new_unverified(
        n: usize,
        highest: Option<QuasiWeight>,
        generators: Vec<QuasiWeight>,
        witness: QuasiWeight,
        cone_terms: Vec<(usize, Rat)>,
        lattice_terms: Vec<(usize, Rat)>,
        disc_fn: Option<DiscriminatingFunction>,
        provenance: String,
    ) -> Result<Self, ForgeError> {
        if generators.is_empty() {
            return Err(ForgeError::Malformed("certificate has no generators".into()));
        }
        for g in generators.iter().chain([&witness]) {
            if g.n() != n {
                return Err(ForgeError::Malformed(format!(
                    "weight `{g}` does not have dimension {n}"
                )));
            }
        }
        if let Some(h) = &highest {
            if h.n() != n {
                return Err(ForgeError::Malformed("highest weight dimension mismatch".into()));
            }
        }
        if let Some(f) = &disc_fn {
            if f.n() != n {
                return Err(ForgeError::Malformed(
                    "discriminating function dimension mismatch".into(),
                ));
            }
        }
        let mut order: Vec<usize> = (0..generators.len()).collect();
        order.sort_by(|&a, &b| generators[a].cmp(&generators[b]));
        for w in order.windows(2) {
            if generators[w[0]] == generators[w[1]] {
                return Err(ForgeError::Malformed("duplicate generator".into()));
            }
        }
        let mut perm = vec![0usize; generators.len()];
        for (pos, &orig) in order.iter().enumerate() {
            perm[orig] = pos;
        }
        let sorted: Vec<QuasiWeight> = order.iter().map(|&i| generators[i].clone()).collect();
        let count = sorted.len();
        let remap = |terms: Vec<(usize, Rat)>, kind| -> Result<Combination, ForgeError> {
            for (i, _) in &terms {
                if *i >= count {
                    return Err(ForgeError::Malformed(format!(
                        "combination index {i} out of range"
                    )));
                }
            }
            Ok(Combination::new(
                kind,
                terms.into_iter().map(|(i, c)| (perm[i], c)).collect(),
            ))
        };
        let cone_combo = remap(cone_terms, CombinationKind::Cone)?;
        let lattice_combo = remap(lattice_terms, CombinationKind::Lattice)?;
        Ok(EnssCertificate {
            n,
            highest,
            generators: sorted,
            witness,
            cone_combo,
            lattice_combo,
            disc_fn,
            provenance,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn highest(&self) -> Option<&QuasiWeight> {
        self.highest.as_ref()
    }

    pub fn generators(&self) -> &[QuasiWeight] {
        &self.generators
    }

    pub fn witness(&self) -> &QuasiWeight {
        &self.witness
    }

    pub fn cone_combo(&self) -> &Combination {
        &self.cone_combo
    }

    pub fn lattice_combo(&self) -> &Combination {
        &self.lattice_combo
    }

    pub fn disc_fn(&self) -> Option<&DiscriminatingFunction> {
        self.disc_fn.as_ref()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_highest(mut self, highest: Option<QuasiWeight>) -> Self {
        self.highest = highest;
        self
    }

    pub fn with_provenance(mut self, provenance: String) -> Self {
        self.provenance = provenance;
        self
    }

    /// Generators converted to usual coordinates as a lattice-layer set,
    /// plus the permutation from certificate index to set index.
    pub fn usual_generator_set(&self) -> (GeneratorSet, Vec<usize>) {
        let vectors: Vec<QVector> = self
            .generators
            .iter()
            .map(|g| g.to_usual().to_qvector())
            .collect();
        GeneratorSet::new(self.n, vectors).expect("distinct quasi-weights stay distinct")
    }

    /// Full verification; clause failures are reported by name, never
    /// raised. See [`verify_enss`].
    pub fn verify(
        &self,
        context: Option<&QuasiWeight>,
        limits: &SemigroupLimits,
    ) -> Result<VerifyReport, ForgeError> {
        verify_enss(self, context, limits)
    }

    /// Multiset of discriminating-function values on the generators,
    /// in canonical generator order.
    pub fn disc_values(&self) -> Option<(Vec<Rat>, Rat)> {
        let f = self.disc_fn.as_ref()?;
        Some((
            self.generators.iter().map(|g| f.eval(g)).collect(),
            f.eval(&self.witness),
        ))
    }
}

impl fmt::Display for EnssCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_certificate(self))
    }
}

/// Outcome of `verify_enss`: `ok()` with the failing clauses named.
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-checks a certificate from scratch:
/// (a) the cone combination is valid and re-substitutes to the witness,
/// (b) same for the lattice combination,
/// (c) the witness is not in Z+(generators) (exhaustive search),
/// (d) with a context weight, every generator lies in M(lambda),
/// (e) a present discriminating function must be well-formed and must not
///     be contradicted by its own fiber check.
pub fn verify_enss(
    cert: &EnssCertificate,
    context: Option<&QuasiWeight>,
    limits: &SemigroupLimits,
) -> Result<VerifyReport, ForgeError> {
    let mut report = VerifyReport::default();
    let witness_usual = cert.witness.to_usual().to_qvector();
    let gens_usual: Vec<QVector> = cert
        .generators
        .iter()
        .map(|g| g.to_usual().to_qvector())
        .collect();

    let eval = |combo: &Combination| {
        let mut acc = QVector::zero(cert.n);
        for (i, c) in &combo.terms {
            acc = acc.add(&gens_usual[*i].scale(c));
        }
        acc
    };

    // (a) cone combination
    if cert
        .cone_combo
        .terms
        .iter()
        .any(|(_, c)| c.is_negative())
    {
        report
            .failures
            .push("clause (a): cone combination has a negative coefficient".into());
    } else if eval(&cert.cone_combo) != witness_usual {
        report
            .failures
            .push("clause (a): cone combination does not reach the witness".into());
    }

    // (b) lattice combination
    if cert
        .lattice_combo
        .terms
        .iter()
        .any(|(_, c)| !c.is_integer())
    {
        report
            .failures
            .push("clause (b): lattice combination has a non-integer coefficient".into());
    } else if eval(&cert.lattice_combo) != witness_usual {
        report
            .failures
            .push("clause (b): lattice combination does not reach the witness".into());
    }

    // (c) witness outside Z+(generators)
    let (set, _) = cert.usual_generator_set();
    match semigroup_membership(
        &QVector::new(witness_usual.coords().to_vec()),
        &set,
        limits,
    ) {
        Ok(None) => {}
        Ok(Some(_)) => report
            .failures
            .push("clause (c): witness is a Z+-combination of the generators".into()),
        Err(e) => report
            .failures
            .push(format!("clause (c): semigroup search did not finish: {e}")),
    }

    // (d) generators inside the claimed weight system
    if let Some(lambda) = context.or(cert.highest.as_ref()) {
        if lambda.n() != cert.n {
            report
                .failures
                .push("clause (d): context weight has wrong dimension".into());
        } else {
            for g in &cert.generators {
                match in_weight_system(lambda, g) {
                    Ok(true) => {}
                    Ok(false) => report.failures.push(format!(
                        "clause (d): generator `{g}` is not a weight of V({lambda})"
                    )),
                    Err(e) => report.failures.push(format!("clause (d): {e}")),
                }
            }
        }
    }

    // (e) discriminating function
    if let Some(f) = &cert.disc_fn {
        match check_discriminating_function(f, cert) {
            Ok(DiscOutcome::Refutes) => {}
            Ok(DiscOutcome::Inconclusive) => report
                .notes
                .push("discriminating function inconclusive (zero value on a generator)".into()),
            Ok(DiscOutcome::Counterexample(sol)) => report.failures.push(format!(
                "clause (e): fiber solution {sol:?} re-substitutes to the witness"
            )),
            Err(e) => report.failures.push(format!("clause (e): {e}")),
        }
    }

    Ok(report)
}

/// Is `target` a nonnegative integer combination of `values`?
pub fn coin_representable(target: u64, values: &[u64]) -> bool {
    debug_assert!(values.iter().all(|&v| v > 0));
    if target == 0 {
        return true;
    }
    let mut reach = vec![false; target as usize + 1];
    reach[0] = true;
    for t in 1..=target as usize {
        for &v in values {
            let v = v as usize;
            if v <= t && reach[t - v] {
                reach[t] = true;
                break;
            }
        }
    }
    reach[target as usize]
}

/// Checks the coin-problem obstruction: with all generator values positive,
/// enumerates the finite fiber of Z+-combinations of the values reaching the
/// witness value and demands that none re-substitutes to the witness.
pub fn check_discriminating_function(
    f: &DiscriminatingFunction,
    cert: &EnssCertificate,
) -> Result<DiscOutcome, ForgeError> {
    if f.n() != cert.n {
        return Err(ForgeError::Malformed(
            "discriminating function dimension mismatch".into(),
        ));
    }
    let gen_values: Vec<Rat> = cert.generators.iter().map(|g| f.eval(g)).collect();
    if gen_values.iter().any(|v| v.is_negative()) {
        return Err(ForgeError::Malformed(
            "discriminating function is negative on a generator".into(),
        ));
    }
    if gen_values.iter().any(|v| v.is_zero()) {
        return Ok(DiscOutcome::Inconclusive);
    }
    let target_value = f.eval(&cert.witness);
    if target_value.is_negative() {
        return Ok(DiscOutcome::Refutes);
    }

    // clear denominators so the fiber is an integer coin problem
    let scale = crate::rat::denominator_lcm(gen_values.iter().chain([&target_value]));
    let scale_rat = Rat::from_integer(scale);
    let to_u64 = |v: &Rat| -> Result<u64, ForgeError> {
        let s = (v * &scale_rat).to_integer();
        s.to_string()
            .parse::<u64>()
            .map_err(|_| ForgeError::Malformed("discriminating value out of range".into()))
    };
    let values: Vec<u64> = gen_values
        .iter()
        .map(to_u64)
        .collect::<Result<_, _>>()?;
    let target = to_u64(&target_value)?;
    if !coin_representable(target, &values) {
        return Ok(DiscOutcome::Refutes);
    }

    // some fiber solutions exist; each must miss the witness vector
    let gens_usual: Vec<QVector> = cert
        .generators
        .iter()
        .map(|g| g.to_usual().to_qvector())
        .collect();
    let witness_usual = cert.witness.to_usual().to_qvector();
    let mut counts = vec![0u64; values.len()];
    let hit = fiber_search(
        &values,
        target,
        0,
        &mut counts,
        &gens_usual,
        &witness_usual,
    );
    match hit {
        Some(sol) => Ok(DiscOutcome::Counterexample(sol)),
        None => Ok(DiscOutcome::Refutes),
    }
}

fn fiber_search(
    values: &[u64],
    remaining: u64,
    idx: usize,
    counts: &mut Vec<u64>,
    gens: &[QVector],
    witness: &QVector,
) -> Option<Vec<u64>> {
    if idx == values.len() {
        if remaining != 0 {
            return None;
        }
        let mut acc = QVector::zero(witness.dim());
        for (k, &c) in counts.iter().enumerate() {
            if c > 0 {
                acc = acc.add(&gens[k].scale(&Rat::from_integer(crate::rat::Int::from(c))));
            }
        }
        return (acc == *witness).then(|| counts.clone());
    }
    let max = remaining / values[idx];
    for c in 0..=max {
        counts[idx] = c;
        if let Some(sol) = fiber_search(
            values,
            remaining - c * values[idx],
            idx + 1,
            counts,
            gens,
            witness,
        ) {
            return Some(sol);
        }
    }
    counts[idx] = 0;
    None
}

/// Pretty one-line summary of the discriminating data, for reports.
pub fn disc_summary(cert: &EnssCertificate) -> Option<String> {
    let (values, target) = cert.disc_values()?;
    let vals: Vec<String> = values.iter().map(format_rat).collect();
    Some(format!(
        "f-values {{{}}}, f(witness) = {}",
        vals.join(", "),
        format_rat(&target)
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use crate::weights::fundamental_weight;

    fn simple_cert() -> EnssCertificate {
        // the SL(2) integer endgame: {(2,-2),(3,-3)} with witness (1,-1),
        // living in M(lambda) for lambda = (3,-3)
        EnssCertificate::new(
            2,
            Some(QuasiWeight::new(vec![6, 0])),
            vec![QuasiWeight::new(vec![4, 0]), QuasiWeight::new(vec![6, 0])],
            QuasiWeight::new(vec![2, 0]),
            vec![(0, ratio(1, 2))],
            vec![(0, rat(-1)), (1, rat(1))],
            None,
            "test".into(),
        )
        .unwrap()
    }

    #[test]
    fn builds_and_verifies() {
        let cert = simple_cert();
        let report = cert.verify(None, &SemigroupLimits::default()).unwrap();
        assert!(report.ok(), "{:?}", report.failures);
    }

    #[test]
    fn broken_witness_fails_clause_c() {
        // witness replaced by a generator: clause (c) must fail
        let out = EnssCertificate::new(
            2,
            None,
            vec![QuasiWeight::new(vec![4, 0]), QuasiWeight::new(vec![6, 0])],
            QuasiWeight::new(vec![4, 0]),
            vec![(0, rat(1))],
            vec![(0, rat(1))],
            None,
            "broken".into(),
        );
        match out {
            Err(ForgeError::Malformed(msg)) => assert!(msg.contains("clause (c)"), "{msg}"),
            other => panic!("expected clause (c) failure, got {other:?}"),
        }
    }

    #[test]
    fn context_checks_weight_system() {
        let cert = simple_cert();
        // against 3*pi_1 for SL(2) the generators (2,-2),(3,-3) are too big
        let ctx = fundamental_weight(1, 2).unwrap();
        let report = cert
            .verify(Some(&ctx), &SemigroupLimits::default())
            .unwrap();
        assert!(!report.ok());
        assert!(report.failures.iter().any(|f| f.contains("clause (d)")));
    }

    #[test]
    fn coin_representability() {
        assert!(coin_representable(0, &[3, 10]));
        assert!(!coin_representable(8, &[3, 10]));
        assert!(coin_representable(13, &[3, 10]));
        assert!(!coin_representable(18, &[4, 8, 11, 12, 15]));
        assert!(!coin_representable(13, &[2, 8, 10, 15]));
        assert!(!coin_representable(9, &[2, 4, 10, 11]));
    }

    #[test]
    fn usual_coeff_normalization() {
        // f = -y_2 on usual coordinates, n = 4
        let f = DiscriminatingFunction::from_usual_coeffs(vec![
            rat(0),
            rat(-1),
            rat(0),
            rat(0),
        ]);
        let sum: Rat = f.coeffs().iter().fold(Rat::zero(), |a, c| a + c);
        assert!(sum.is_zero());
        // value on (1,-1,0,0): -(-1) = 1, evaluated on the quasi form
        let w = crate::weights::UsualWeight::new(vec![rat(1), rat(-1), rat(0), rat(0)])
            .unwrap()
            .to_quasi();
        assert_eq!(f.eval(&w), rat(1));
    }
}
