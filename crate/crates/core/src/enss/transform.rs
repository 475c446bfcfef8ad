//! Certificate transforms: coordinate repetition, the Step procedure and
//! dual transport by negation.

use num_traits::{Signed, Zero};

use crate::error::ForgeError;
use crate::rat::{rat, Int, Rat};
use crate::weights::{dual_weight, fundamental_index, fundamental_weight, QuasiWeight};

use super::EnssCertificate;

/// Ones-count shared by all generators of a fundamental certificate.
fn fundamental_k(cert: &EnssCertificate) -> Result<usize, ForgeError> {
    let mut k = None;
    for g in cert.generators() {
        let Some(ones) = fundamental_index(g) else {
            return Err(ForgeError::NotFundamental);
        };
        match k {
            None => k = Some(ones),
            Some(prev) if prev == ones => {}
            Some(_) => return Err(ForgeError::NotFundamental),
        }
    }
    k.ok_or(ForgeError::NotFundamental)
}

fn repeat_coords(w: &QuasiWeight, r: usize) -> QuasiWeight {
    let mut coords = Vec::with_capacity(w.n() * r);
    for _ in 0..r {
        coords.extend_from_slice(w.coords());
    }
    QuasiWeight::new(coords)
}

/// Writes every quasi-coordinate string r times in succession, turning a
/// certificate for (n, k) into one for (nr, kr). Combination coefficients
/// carry over unchanged.
pub fn multiply_enss(cert: &EnssCertificate, r: usize) -> Result<EnssCertificate, ForgeError> {
    if r == 0 {
        return Err(ForgeError::ParamOutOfRange("repetition factor must be >= 1".into()));
    }
    if r == 1 {
        return Ok(cert.clone());
    }
    let k = fundamental_k(cert)?;
    let n = cert.n() * r;
    let gens: Vec<QuasiWeight> = cert
        .generators()
        .iter()
        .map(|g| repeat_coords(g, r))
        .collect();
    let witness = repeat_coords(cert.witness(), r);
    EnssCertificate::new(
        n,
        Some(fundamental_weight(k * r, n)?),
        gens,
        witness,
        cert.cone_combo().terms.clone(),
        cert.lattice_combo().terms.clone(),
        cert.disc_fn().map(|f| f.repeat(r)),
        format!("multiply[r={r}]({})", cert.provenance()),
    )
}

/// The Step procedure: pads every vector with k zero coordinates and adds
/// the generator supported on the new coordinates, turning a certificate
/// for (n, k) into one for (n+k, k).
///
/// The witness in canonical form has nonnegative coordinates with a zero,
/// which makes the correction coefficient on the new generator nonnegative
/// in the cone combination.
pub fn step_enss(cert: &EnssCertificate) -> Result<EnssCertificate, ForgeError> {
    let k = fundamental_k(cert)?;
    let n = cert.n();
    let n_new = n + k;

    let pad = |w: &QuasiWeight| {
        let mut coords = w.coords().to_vec();
        coords.resize(n_new, 0);
        QuasiWeight::new(coords)
    };
    let mut gens: Vec<QuasiWeight> = cert.generators().iter().map(pad).collect();
    let mut extra = vec![0i64; n_new];
    for c in extra.iter_mut().skip(n) {
        *c = 1;
    }
    let extra_idx = gens.len();
    gens.push(QuasiWeight::new(extra));
    let witness = pad(cert.witness());

    // raw identities over canonical representatives:
    //   w = sum q_i g_i + beta * (1,..,1)_n  with beta <= 0,
    //   w = sum z_i g_i + gamma * (1,..,1)_n with gamma integer;
    // after padding the corrections transfer to the new generator with
    // coefficients -beta and -gamma.
    let witness_sum = rat(cert.witness().coord_sum());
    let n_rat = rat(n as i64);
    let k_rat = rat(k as i64);

    let cone_sum: Rat = cert
        .cone_combo()
        .terms
        .iter()
        .map(|(_, c)| c.clone())
        .fold(Rat::zero(), |a, c| a + c);
    let beta = (&witness_sum - &k_rat * cone_sum) / &n_rat;
    debug_assert!(!beta.is_positive(), "canonical witness forces beta <= 0");
    let mut cone_terms = cert.cone_combo().terms.clone();
    if !beta.is_zero() {
        cone_terms.push((extra_idx, -beta));
    }

    let lattice_sum: Rat = cert
        .lattice_combo()
        .terms
        .iter()
        .map(|(_, c)| c.clone())
        .fold(Rat::zero(), |a, c| a + c);
    let gamma = (&witness_sum - &k_rat * lattice_sum) / &n_rat;
    debug_assert!(gamma.is_integer(), "quotient identity forces integer gamma");
    let mut lattice_terms = cert.lattice_combo().terms.clone();
    if !gamma.is_zero() {
        lattice_terms.push((extra_idx, -gamma));
    }

    EnssCertificate::new(
        n_new,
        Some(fundamental_weight(k, n_new)?),
        gens,
        witness,
        cone_terms,
        lattice_terms,
        None,
        format!("step({})", cert.provenance()),
    )
}

/// Dual transport: negates every generator and the witness (for fundamental
/// certificates this complements the 0/1 strings), keeping all combination
/// coefficients; the discriminating function is negated alongside.
pub fn negate_enss(cert: &EnssCertificate) -> Result<EnssCertificate, ForgeError> {
    let gens: Vec<QuasiWeight> = cert.generators().iter().map(|g| g.neg()).collect();
    let witness = cert.witness().neg();
    EnssCertificate::new(
        cert.n(),
        cert.highest().map(dual_weight),
        gens,
        witness,
        cert.cone_combo().terms.clone(),
        cert.lattice_combo().terms.clone(),
        cert.disc_fn().map(|f| f.neg()),
        format!("dual({})", cert.provenance()),
    )
}

/// Lattice coefficient sums stay integral across transports.
#[allow(dead_code)]
fn lattice_sum(cert: &EnssCertificate) -> Int {
    cert.lattice_combo()
        .terms
        .iter()
        .map(|(_, c)| c.to_integer())
        .fold(Int::zero(), |a, c| a + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enss::example_enss;
    use crate::lattice::SemigroupLimits;
    use crate::weights::fundamental_index;

    #[test]
    fn multiply_identity() {
        let cert = example_enss(1, None).unwrap();
        let same = multiply_enss(&cert, 1).unwrap();
        assert_eq!(cert, same);
    }

    #[test]
    fn multiply_example1_to_14_4() {
        let cert = example_enss(1, None).unwrap();
        let doubled = multiply_enss(&cert, 2).unwrap();
        assert_eq!(doubled.n(), 14);
        assert_eq!(
            fundamental_index(doubled.highest().unwrap()),
            Some(4)
        );
        let report = doubled.verify(None, &SemigroupLimits::default()).unwrap();
        assert!(report.ok(), "{:?}", report.failures);
    }

    #[test]
    fn step_example1_to_9_2() {
        let cert = example_enss(1, None).unwrap();
        let stepped = step_enss(&cert).unwrap();
        assert_eq!(stepped.n(), 9);
        assert_eq!(fundamental_index(stepped.highest().unwrap()), Some(2));
        assert_eq!(stepped.generators().len(), 8);
        let report = stepped.verify(None, &SemigroupLimits::default()).unwrap();
        assert!(report.ok(), "{:?}", report.failures);
    }

    #[test]
    fn step_example2_to_11_3() {
        let cert = example_enss(2, None).unwrap();
        let stepped = step_enss(&cert).unwrap();
        assert_eq!(stepped.n(), 11);
        let report = stepped.verify(None, &SemigroupLimits::default()).unwrap();
        assert!(report.ok(), "{:?}", report.failures);
    }

    #[test]
    fn negq_example6_is_9_6() {
        let cert = example_enss(6, None).unwrap();
        let dualed = negate_enss(&cert).unwrap();
        assert_eq!(fundamental_index(dualed.highest().unwrap()), Some(6));
        let report = dualed.verify(None, &SemigroupLimits::default()).unwrap();
        assert!(report.ok(), "{:?}", report.failures);
    }

    #[test]
    fn non_fundamental_rejected() {
        let cert = example_enss(8, None).unwrap();
        assert!(matches!(
            multiply_enss(&cert, 2),
            Err(ForgeError::NotFundamental)
        ));
        assert!(matches!(step_enss(&cert), Err(ForgeError::NotFundamental)));
    }
}
