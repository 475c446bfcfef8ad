//! Top-level decision: is every maximal-torus orbit closure in V(lambda)
//! normal? Positive cases are recognized symbolically against the known
//! list; every other dominant weight gets a verified non-saturation
//! certificate. The exhaustive subset scan is the independent audit.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use crate::enss::{
    fractional_coordinate_enss, fundamental_enss, integer_coordinate_enss, EnssCertificate,
};
use crate::error::ForgeError;
use crate::lattice::{
    fast_subset_analysis, is_saturated, SaturationLimits, SaturationWitness, SemigroupLimits,
};
use crate::qvec::{Combination, GeneratorSet};
use crate::rat::Int;
use crate::weights::{
    adjoint_weight, dual_weight, fundamental_index, fundamental_weight, weight_system,
    QuasiWeight, WeightSystem,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositiveReason {
    Tautological,
    Adjoint,
    ExceptionalTableRow,
    DualOfPositive,
    DegenerateZero,
}

impl fmt::Display for PositiveReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PositiveReason::Tautological => "tautological",
            PositiveReason::Adjoint => "adjoint",
            PositiveReason::ExceptionalTableRow => "exceptional-table-row",
            PositiveReason::DualOfPositive => "dual-of-positive",
            PositiveReason::DegenerateZero => "degenerate-zero",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug)]
pub struct ClassificationVerdict {
    pub all_normal: bool,
    pub positive_reason: Option<PositiveReason>,
    pub certificate: Option<EnssCertificate>,
}

fn base_positive(lambda: &QuasiWeight) -> Option<PositiveReason> {
    let n = lambda.n();
    if n < 2 {
        return None;
    }
    if lambda == &fundamental_weight(1, n).expect("n >= 2") {
        return Some(PositiveReason::Tautological);
    }
    if lambda == &adjoint_weight(n) {
        return Some(PositiveReason::Adjoint);
    }
    let exceptional = match n {
        2 => vec![QuasiWeight::new(vec![3, 0]), QuasiWeight::new(vec![4, 0])],
        3 => vec![QuasiWeight::new(vec![2, 0, 0])],
        4 | 5 => vec![fundamental_weight(2, n).expect("k in range")],
        6 => vec![
            fundamental_weight(2, 6).expect("k in range"),
            fundamental_weight(3, 6).expect("k in range"),
        ],
        _ => Vec::new(),
    };
    exceptional
        .contains(lambda)
        .then_some(PositiveReason::ExceptionalTableRow)
}

/// The symbolic positive-list test, duality included.
pub fn positive_reason(lambda: &QuasiWeight) -> Option<PositiveReason> {
    if lambda.is_zero() {
        return Some(PositiveReason::DegenerateZero);
    }
    if let Some(r) = base_positive(lambda) {
        return Some(r);
    }
    base_positive(&dual_weight(lambda)).map(|_| PositiveReason::DualOfPositive)
}

/// Decides whether every T-orbit closure in V(lambda) is normal. Negative
/// verdicts carry a certificate that has passed full verification against
/// lambda.
pub fn classify(lambda: &QuasiWeight) -> Result<ClassificationVerdict, ForgeError> {
    if lambda.n() < 2 {
        return Err(ForgeError::ParamOutOfRange("need n >= 2".into()));
    }
    if !lambda.is_dominant() {
        return Err(ForgeError::Weight(crate::error::WeightError::NotDominant(
            lambda.to_string(),
        )));
    }
    if let Some(reason) = positive_reason(lambda) {
        return Ok(ClassificationVerdict {
            all_normal: true,
            positive_reason: Some(reason),
            certificate: None,
        });
    }
    let cert = if let Some(k) = fundamental_index(lambda) {
        fundamental_enss(lambda.n(), k)?
    } else {
        let usual = lambda.to_usual();
        if usual.is_integral() {
            integer_coordinate_enss(&usual)?
        } else {
            fractional_coordinate_enss(&usual)?
        }
    };
    Ok(ClassificationVerdict {
        all_normal: false,
        positive_reason: None,
        certificate: Some(cert),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    /// Hard cap on the number of subsets actually tested; exceeding it is a
    /// distinct resource-limit outcome, never reported as saturated.
    pub subset_cap: u64,
    /// Skip subsets containing an opposite pair {a, -a}: iterating the
    /// pair-removal lemma, some pair-free non-saturated subset exists
    /// whenever any non-saturated subset does.
    pub prune_pairs: bool,
    pub semigroup: SemigroupLimits,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            subset_cap: 10_000_000,
            prune_pairs: true,
            semigroup: SemigroupLimits::default(),
        }
    }
}

#[derive(Debug)]
pub enum ScanOutcome {
    Saturated,
    NotSaturated(Box<EnssCertificate>),
    ResourceLimit(String),
}

#[derive(Debug)]
pub struct ScanSummary {
    pub outcome: ScanOutcome,
    /// number of weights in the system (including a zero weight if present)
    pub universe: usize,
    /// subsets actually examined
    pub subsets_tested: u64,
    /// 2^universe as a decimal string
    pub total_subsets: String,
    /// total minus examined, as a decimal string
    pub pruned: String,
}

enum Group {
    Single(usize),
    Pair(usize, usize),
}

/// Decides whether every subset of the weight system is saturated.
///
/// Enumeration prunings: subsets containing the zero weight behave exactly
/// like the subset without it, so the zero weight is dropped from the
/// universe; with `prune_pairs`, subsets containing an opposite pair are
/// skipped. The first failing subset in enumeration order yields the
/// certificate, independent of thread count.
pub fn check_all_subsets(m: &WeightSystem, opts: &ScanOptions) -> ScanSummary {
    check_all_subsets_with_progress(m, opts, None)
}

/// [`check_all_subsets`] with a status callback, fired roughly every ten
/// thousand tested subsets, separate from the result.
pub fn check_all_subsets_with_progress(
    m: &WeightSystem,
    opts: &ScanOptions,
    progress: Option<&(dyn Fn(u64) + Sync)>,
) -> ScanSummary {
    let n = m.n();
    let live: Vec<&QuasiWeight> = m.weights().iter().filter(|w| !w.is_zero()).collect();
    let total_subsets = Int::from(2u32).pow(m.len() as u32).to_string();

    let mut grouped = vec![false; live.len()];
    let mut groups: Vec<Group> = Vec::new();
    for i in 0..live.len() {
        if grouped[i] {
            continue;
        }
        grouped[i] = true;
        if opts.prune_pairs {
            let neg = live[i].neg();
            if let Ok(j) = live.binary_search_by(|w| (*w).cmp(&&neg)) {
                if !grouped[j] {
                    grouped[j] = true;
                    groups.push(Group::Pair(i, j));
                    continue;
                }
            }
        }
        groups.push(Group::Single(i));
    }

    let mut enumerated: u128 = 1;
    for g in &groups {
        let c = match g {
            Group::Single(_) => 2u128,
            Group::Pair(..) => 3u128,
        };
        enumerated = enumerated.saturating_mul(c);
        if enumerated > opts.subset_cap as u128 {
            return ScanSummary {
                outcome: ScanOutcome::ResourceLimit(format!(
                    "subset count exceeds the cap of {}",
                    opts.subset_cap
                )),
                universe: m.len(),
                subsets_tested: 0,
                total_subsets,
                pruned: "0".into(),
            };
        }
    }
    let enumerated = enumerated as u64;

    // usual coordinates scaled by n: exact integers, i128
    let rows128: Vec<Vec<i128>> = live
        .iter()
        .map(|w| {
            let sum = w.coord_sum() as i128;
            w.coords()
                .iter()
                .map(|&c| c as i128 * n as i128 - sum)
                .collect()
        })
        .collect();

    let decode = |mut code: u64| -> Vec<usize> {
        let mut subset = Vec::new();
        for g in &groups {
            match g {
                Group::Single(i) => {
                    if code % 2 == 1 {
                        subset.push(*i);
                    }
                    code /= 2;
                }
                Group::Pair(a, b) => {
                    match code % 3 {
                        1 => subset.push(*a),
                        2 => subset.push(*b),
                        _ => {}
                    }
                    code /= 3;
                }
            }
        }
        subset.sort_unstable();
        subset
    };

    enum SubsetResult {
        Ok,
        Failure(Vec<usize>, SaturationWitness),
        Error(String),
    }

    let limits = SaturationLimits {
        semigroup: opts.semigroup,
    };
    let check_subset = |code: u64| -> SubsetResult {
        let subset = decode(code);
        if subset.is_empty() {
            return SubsetResult::Ok;
        }
        let sub_rows: Vec<Vec<i128>> = subset.iter().map(|&i| rows128[i].clone()).collect();
        if fast_subset_analysis(&sub_rows) == Some(true) {
            return SubsetResult::Ok;
        }
        let vectors = subset
            .iter()
            .map(|&i| live[i].to_usual().to_qvector())
            .collect();
        let (set, _) = GeneratorSet::new(n, vectors).expect("weights are distinct");
        match is_saturated(&set, &limits) {
            Ok(v) if v.saturated => SubsetResult::Ok,
            Ok(v) => SubsetResult::Failure(subset, v.witness.expect("failing scan has witness")),
            Err(e) => SubsetResult::Error(e.to_string()),
        }
    };

    let chunk_size: u64 = 4096;
    let mut tested: u64 = 0;
    let mut failure: Option<SubsetResult> = None;
    let mut start: u64 = 0;
    let mut last_report: u64 = 0;
    while start < enumerated {
        let end = (start + chunk_size).min(enumerated);
        let results: Vec<SubsetResult> =
            (start..end).into_par_iter().map(check_subset).collect();
        tested += end - start;
        if let Some(cb) = progress {
            if tested - last_report >= 10_000 {
                cb(tested);
                last_report = tested;
            }
        }
        if let Some(hit) = results
            .into_iter()
            .find(|r| !matches!(r, SubsetResult::Ok))
        {
            failure = Some(hit);
            break;
        }
        start = end;
    }

    let pruned = (Int::parse_bytes(total_subsets.as_bytes(), 10).expect("decimal")
        - Int::from(tested))
    .to_string();
    let outcome = match failure {
        None => ScanOutcome::Saturated,
        Some(SubsetResult::Error(e)) => ScanOutcome::ResourceLimit(e),
        Some(SubsetResult::Ok) => unreachable!(),
        Some(SubsetResult::Failure(subset, witness)) => {
            let gens: Vec<QuasiWeight> = subset.iter().map(|&i| live[i].clone()).collect();
            match certificate_from_witness(
                n,
                Some(m.highest().clone()),
                gens,
                &witness,
                format!("subset scan of M({})", m.highest()),
            ) {
                Ok(cert) => ScanOutcome::NotSaturated(Box::new(cert)),
                Err(e) => ScanOutcome::ResourceLimit(format!(
                    "witness found but certificate construction failed: {e}"
                )),
            }
        }
    };
    ScanSummary {
        outcome,
        universe: m.len(),
        subsets_tested: tested,
        total_subsets,
        pruned,
    }
}

/// Wraps a raw saturation witness over a quasi-weight subset into a full
/// certificate (indices translated from the usual-coordinate ordering).
pub fn certificate_from_witness(
    n: usize,
    highest: Option<QuasiWeight>,
    generators: Vec<QuasiWeight>,
    witness: &SaturationWitness,
    provenance: String,
) -> Result<EnssCertificate, ForgeError> {
    let vectors = generators
        .iter()
        .map(|g| g.to_usual().to_qvector())
        .collect();
    let (_, perm) = GeneratorSet::new(n, vectors)?;
    let mut back = vec![0usize; perm.len()];
    for (orig, &sorted) in perm.iter().enumerate() {
        back[sorted] = orig;
    }
    let translate = |c: &Combination| -> Vec<(usize, crate::rat::Rat)> {
        c.terms
            .iter()
            .map(|(i, coeff)| (back[*i], coeff.clone()))
            .collect()
    };
    let witness_quasi = crate::weights::UsualWeight::new(witness.vector.coords().to_vec())
        .map_err(ForgeError::from)?
        .to_quasi();
    EnssCertificate::new(
        n,
        highest,
        generators,
        witness_quasi,
        translate(&witness.cone),
        translate(&witness.lattice),
        None,
        provenance,
    )
}

/// One audited case of the main-theorem report.
#[derive(Debug, Clone)]
pub struct CaseRecord {
    pub kind: String,
    pub n: usize,
    pub label: String,
    pub verdict: String,
    pub expected: String,
    pub subsets_tested: u64,
    pub pruned: String,
    pub detail: String,
    pub wall_ms: u128,
}

impl CaseRecord {
    pub fn agrees(&self) -> bool {
        self.verdict == self.expected
    }
}

#[derive(Debug)]
pub struct MainTheoremReport {
    pub max_n: usize,
    pub records: Vec<CaseRecord>,
    pub disagreements: u64,
}

/// Audits the classification against exhaustive scans up to `max_n`:
/// the tautological family, the adjoint family (scanned up to n = 5, where
/// the pair-free subset count stays within budget), the exceptional table
/// rows, every fundamental pair outside the list, and an SL(2) sample of
/// negative weights.
pub fn verify_main_theorem(max_n: usize, opts: &ScanOptions) -> MainTheoremReport {
    enum Case {
        PositiveScan(&'static str, QuasiWeight),
        NegativeFundamental(usize, usize),
        NegativeSample(QuasiWeight),
    }

    let mut cases: Vec<Case> = Vec::new();
    for n in 2..=max_n {
        cases.push(Case::PositiveScan(
            "tautological",
            fundamental_weight(1, n).expect("n >= 2"),
        ));
    }
    for n in 2..=max_n.min(5) {
        cases.push(Case::PositiveScan("adjoint", adjoint_weight(n)));
    }
    let table: Vec<(usize, QuasiWeight)> = vec![
        (2, QuasiWeight::new(vec![3, 0])),
        (2, QuasiWeight::new(vec![4, 0])),
        (3, QuasiWeight::new(vec![2, 0, 0])),
        (4, fundamental_weight(2, 4).expect("in range")),
        (5, fundamental_weight(2, 5).expect("in range")),
        (6, fundamental_weight(2, 6).expect("in range")),
        (6, fundamental_weight(3, 6).expect("in range")),
    ];
    for (n, lam) in table {
        if n <= max_n {
            cases.push(Case::PositiveScan("exceptional", lam));
        }
    }
    for n in 2..=max_n {
        for k in 2..=n.saturating_sub(2) {
            if !crate::enss::positive_fundamental_pair(n, k) {
                cases.push(Case::NegativeFundamental(n, k));
            }
        }
    }
    if max_n >= 2 {
        for a in [5i64, 6, 7] {
            cases.push(Case::NegativeSample(QuasiWeight::new(vec![a, 0])));
        }
    }

    let records: Vec<CaseRecord> = cases
        .par_iter()
        .map(|case| {
            let t0 = Instant::now();
            let mut rec = match case {
                Case::PositiveScan(kind, lam) => {
                    let mut rec = CaseRecord {
                        kind: (*kind).into(),
                        n: lam.n(),
                        label: lam.to_string(),
                        verdict: String::new(),
                        expected: "saturated".into(),
                        subsets_tested: 0,
                        pruned: "0".into(),
                        detail: "-".into(),
                        wall_ms: 0,
                    };
                    match weight_system(lam) {
                        Err(e) => rec.verdict = format!("error: {e}"),
                        Ok(ws) => {
                            let summary = check_all_subsets(&ws, opts);
                            rec.subsets_tested = summary.subsets_tested;
                            rec.pruned = summary.pruned;
                            rec.verdict = match summary.outcome {
                                ScanOutcome::Saturated => "saturated".into(),
                                ScanOutcome::NotSaturated(c) => {
                                    rec.detail = format!("witness {}", c.witness());
                                    "not-saturated".into()
                                }
                                ScanOutcome::ResourceLimit(msg) => {
                                    rec.detail = msg;
                                    "resource-limit".into()
                                }
                            };
                        }
                    }
                    rec
                }
                Case::NegativeFundamental(n, k) => {
                    let mut rec = CaseRecord {
                        kind: "negative-fundamental".into(),
                        n: *n,
                        label: format!("pi{k}"),
                        verdict: String::new(),
                        expected: "certified".into(),
                        subsets_tested: 0,
                        pruned: "0".into(),
                        detail: "-".into(),
                        wall_ms: 0,
                    };
                    match fundamental_enss(*n, *k) {
                        Ok(cert) => {
                            rec.detail = cert.provenance().to_string();
                            let lam = fundamental_weight(*k, *n).expect("in range");
                            match cert.verify(Some(&lam), &opts.semigroup) {
                                Ok(rep) if rep.ok() => rec.verdict = "certified".into(),
                                Ok(rep) => {
                                    rec.verdict = "broken-certificate".into();
                                    rec.detail = rep.failures.join("; ");
                                }
                                Err(e) => rec.verdict = format!("error: {e}"),
                            }
                        }
                        Err(e) => rec.verdict = format!("error: {e}"),
                    }
                    rec
                }
                Case::NegativeSample(lam) => {
                    let mut rec = CaseRecord {
                        kind: "negative-sample".into(),
                        n: lam.n(),
                        label: lam.to_string(),
                        verdict: String::new(),
                        expected: "certified".into(),
                        subsets_tested: 0,
                        pruned: "0".into(),
                        detail: "-".into(),
                        wall_ms: 0,
                    };
                    match classify(lam) {
                        Ok(v) if !v.all_normal => {
                            rec.verdict = "certified".into();
                            rec.detail = v
                                .certificate
                                .map(|c| c.provenance().to_string())
                                .unwrap_or_default();
                        }
                        Ok(_) => rec.verdict = "unexpected-positive".into(),
                        Err(e) => rec.verdict = format!("error: {e}"),
                    }
                    rec
                }
            };
            rec.wall_ms = t0.elapsed().as_millis();
            rec
        })
        .collect();

    let disagreements = records.iter().filter(|r| !r.agrees()).count() as u64;
    MainTheoremReport {
        max_n,
        records,
        disagreements,
    }
}

/// Machine format: deterministic, no timings.
pub fn render_structured(report: &MainTheoremReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "main-theorem-report max_n={} cases={} disagreements={}\n",
        report.max_n,
        report.records.len(),
        report.disagreements
    ));
    for r in &report.records {
        out.push_str(&format!(
            "case: kind={} n={} highest={} verdict={} subsets_tested={} pruned={} note={}\n",
            r.kind,
            r.n,
            r.label.replace(' ', ","),
            r.verdict,
            r.subsets_tested,
            r.pruned,
            r.detail.replace(' ', "_"),
        ));
    }
    out.push_str("end\n");
    out
}

/// Human format, timings included.
pub fn render_text(report: &MainTheoremReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "Main theorem audit up to n = {}: {} cases, {} disagreement(s)\n",
        report.max_n,
        report.records.len(),
        report.disagreements
    ));
    for r in &report.records {
        out.push_str(&format!(
            "  [{}] n={} {} -> {} (expected {}), subsets tested {}, pruned {}, {} ms; {}\n",
            r.kind,
            r.n,
            r.label,
            r.verdict,
            r.expected,
            r.subsets_tested,
            r.pruned,
            r.wall_ms,
            r.detail
        ));
    }
    out
}
