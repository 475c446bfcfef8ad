//! The nine explicit non-saturated subsets used as induction bases.

use crate::error::ForgeError;
use crate::rat::{rat, ratio, Rat};
use crate::weights::{fundamental_weight, QuasiWeight, UsualWeight};

use super::{DiscriminatingFunction, EnssCertificate};

fn w(n: usize, support: &[usize]) -> QuasiWeight {
    QuasiWeight::from_support(n, support)
}

/// Builds one of the nine base certificates. Example 3 takes k >= 4 and
/// Example 4 takes k >= 3; the others are fixed-size (Examples 8 and 9 at
/// their minimal dimensions 3 and 4).
pub fn example_enss(id: u32, k: Option<usize>) -> Result<EnssCertificate, ForgeError> {
    match id {
        1 => example1(),
        2 => example2(),
        3 => {
            let k = k.ok_or_else(|| ForgeError::ParamOutOfRange("example 3 needs k".into()))?;
            example3(k)
        }
        4 => {
            let k = k.ok_or_else(|| ForgeError::ParamOutOfRange("example 4 needs k".into()))?;
            example4(k)
        }
        5 => example5(),
        6 => example6(),
        7 => example7(),
        8 => example8(3),
        9 => example9(4),
        other => Err(ForgeError::ParamOutOfRange(format!(
            "example id {other} out of range 1..9"
        ))),
    }
}

/// n = 7, k = 2: a triangle with four pendant edges covering all vertices.
fn example1() -> Result<EnssCertificate, ForgeError> {
    let n = 7;
    let gens = vec![
        w(n, &[0, 1]), // e1+e2
        w(n, &[1, 2]), // e2+e3
        w(n, &[0, 2]), // e1+e3
        w(n, &[1, 3]), // e2+e4
        w(n, &[1, 4]), // e2+e5
        w(n, &[2, 5]), // e3+e6
        w(n, &[2, 6]), // e3+e7
    ];
    let witness = w(n, &[0, 1, 2]);
    let cone = vec![(0, ratio(1, 2)), (1, ratio(1, 2)), (2, ratio(1, 2))];
    let lattice = vec![
        (1, rat(2)),
        (3, rat(-1)),
        (4, rat(-1)),
        (5, rat(-1)),
        (6, rat(-1)),
    ];
    let f = DiscriminatingFunction::from_ints(&[-2, 5, 5, -2, -2, -2, -2])?;
    EnssCertificate::new(
        n,
        Some(fundamental_weight(2, n)?),
        gens,
        witness,
        cone,
        lattice,
        Some(f),
        "example-1 (7,2)".into(),
    )
}

/// n = 8, k = 3.
fn example2() -> Result<EnssCertificate, ForgeError> {
    let n = 8;
    let gens = vec![
        w(n, &[2, 3, 4]),
        w(n, &[0, 3, 4]),
        w(n, &[0, 1, 4]),
        w(n, &[0, 1, 2]),
        w(n, &[1, 2, 3]),
        w(n, &[2, 3, 5]),
        w(n, &[1, 3, 6]),
        w(n, &[1, 2, 7]),
    ];
    let witness = w(n, &[0, 1, 2, 3, 4]);
    let cone = (0..5).map(|i| (i, ratio(1, 3))).collect();
    let lattice = vec![(4, rat(2)), (5, rat(-1)), (6, rat(-1)), (7, rat(-1))];
    let f = DiscriminatingFunction::from_ints(&[1, 5, 5, 5, 2, -6, -6, -6])?;
    EnssCertificate::new(
        n,
        Some(fundamental_weight(3, n)?),
        gens,
        witness,
        cone,
        lattice,
        Some(f),
        "example-2 (8,3)".into(),
    )
}

/// n = 2k, k >= 4.
fn example3(k: usize) -> Result<EnssCertificate, ForgeError> {
    if k < 4 {
        return Err(ForgeError::ParamOutOfRange(format!(
            "example 3 needs k >= 4, got {k}"
        )));
    }
    let n = 2 * k;
    let mut gens = Vec::with_capacity(k + 2);
    // v_i = e_i plus the whole second block except position k+i
    for i in 0..k {
        let mut support = vec![i];
        for j in k..2 * k {
            if j != k + i {
                support.push(j);
            }
        }
        gens.push(w(n, &support));
    }
    // v_{k+1} = e_2 + (e_{k+1} + ... + e_{2k-1})
    let mut support = vec![1usize];
    support.extend(k..2 * k - 1);
    gens.push(w(n, &support));
    // v_{k+2} = e_1 + e_2 + (e_{k+2} + ... + e_{2k-1})
    let mut support = vec![0usize, 1];
    support.extend(k + 1..2 * k - 1);
    gens.push(w(n, &support));

    let witness = w(n, &(k..2 * k).collect::<Vec<_>>());
    let cone = (0..k).map(|i| (i, ratio(1, k as i64 - 2))).collect();
    let lattice = vec![(0, rat(1)), (k, rat(1)), (k + 1, rat(-1))];
    let f = if k == 4 {
        DiscriminatingFunction::from_ints(&[0, 0, -6, -7, 5, 5, 5, -2])?
    } else {
        let mut coeffs = vec![0i64; n];
        for c in coeffs.iter_mut().take(k).skip(2) {
            *c = -(k as i64);
        }
        for c in coeffs.iter_mut().skip(k) {
            *c = k as i64 - 2;
        }
        DiscriminatingFunction::from_ints(&coeffs)?
    };
    EnssCertificate::new(
        n,
        Some(fundamental_weight(k, n)?),
        gens,
        witness,
        cone,
        lattice,
        Some(f),
        format!("example-3 ({n},{k})"),
    )
}

/// n = 2k+1, k >= 3.
fn example4(k: usize) -> Result<EnssCertificate, ForgeError> {
    if k < 3 {
        return Err(ForgeError::ParamOutOfRange(format!(
            "example 4 needs k >= 3, got {k}"
        )));
    }
    let n = 2 * k + 1;
    let mut gens = Vec::with_capacity(2 * k + 1);
    // v_1 .. v_{k+1}: all of the first block except one position
    for i in 0..=k {
        let support: Vec<usize> = (0..=k).filter(|&j| j != i).collect();
        gens.push(w(n, &support));
    }
    // v_{k+2} .. v_{2k+1}: first k positions minus one, plus one tail slot
    for i in 0..k {
        let mut support: Vec<usize> = (0..k).filter(|&j| j != i).collect();
        support.push(k + 1 + i);
        gens.push(w(n, &support));
    }
    let witness = w(n, &(0..=k).collect::<Vec<_>>());
    let cone = (0..=k).map(|i| (i, ratio(1, k as i64))).collect();
    let mut lattice = vec![(k, rat(k as i64 - 1))];
    for i in k + 1..=2 * k {
        lattice.push((i, rat(-1)));
    }
    let mut coeffs = vec![0i64; n];
    for c in coeffs.iter_mut().take(k) {
        *c = k as i64 + 1;
    }
    for c in coeffs.iter_mut().skip(k) {
        *c = -(k as i64);
    }
    let f = DiscriminatingFunction::from_ints(&coeffs)?;
    EnssCertificate::new(
        n,
        Some(fundamental_weight(k, n)?),
        gens,
        witness,
        cone,
        lattice,
        Some(f),
        format!("example-4 ({n},{k})"),
    )
}

/// n = 8, k = 2: two triangles joined by a path through vertex 4.
fn example5() -> Result<EnssCertificate, ForgeError> {
    let n = 8;
    let gens = vec![
        w(n, &[0, 1]),
        w(n, &[1, 2]),
        w(n, &[0, 2]),
        w(n, &[4, 5]),
        w(n, &[5, 6]),
        w(n, &[4, 6]),
        w(n, &[2, 3]),
        w(n, &[3, 4]),
    ];
    let witness = w(n, &[0, 1, 2, 4, 5, 6]);
    let cone = (0..6).map(|i| (i, ratio(1, 2))).collect();
    let lattice = vec![
        (0, rat(1)),
        (6, rat(1)),
        (7, rat(-1)),
        (3, rat(1)),
        (5, rat(1)),
    ];
    let f = DiscriminatingFunction::from_ints(&[1, 1, 1, 9, 2, 2, 2, -18])?;
    EnssCertificate::new(
        n,
        Some(fundamental_weight(2, n)?),
        gens,
        witness,
        cone,
        lattice,
        Some(f),
        "example-5 (8,2)".into(),
    )
}

/// n = 9, k = 3.
fn example6() -> Result<EnssCertificate, ForgeError> {
    let n = 9;
    let gens = vec![
        w(n, &[0, 1, 3]),
        w(n, &[0, 1, 4]),
        w(n, &[1, 2, 5]),
        w(n, &[1, 2, 6]),
        w(n, &[0, 2, 7]),
        w(n, &[0, 2, 8]),
        w(n, &[1, 3, 5]),
    ];
    let witness = w(n, &[0, 1, 2]);
    let cone = (0..6).map(|i| (i, ratio(1, 3))).collect();
    let lattice = vec![(0, rat(1)), (2, rat(1)), (6, rat(-1))];
    let f = DiscriminatingFunction::from_ints(&[5, 5, 5, 5, -4, -4, -4, -4, -4])?;
    EnssCertificate::new(
        n,
        Some(fundamental_weight(3, n)?),
        gens,
        witness,
        cone,
        lattice,
        Some(f),
        "example-6 (9,3)".into(),
    )
}

/// n = 10, k = 4.
fn example7() -> Result<EnssCertificate, ForgeError> {
    let n = 10;
    let gens = vec![
        w(n, &[0, 1, 2, 4]),
        w(n, &[0, 1, 3, 5]),
        w(n, &[2, 3, 4, 5]),
        w(n, &[4, 5, 6, 7]),
        w(n, &[4, 6, 7, 8]),
        w(n, &[5, 6, 7, 9]),
    ];
    let witness = w(n, &[0, 1, 2, 3, 4, 5]);
    let cone = (0..3).map(|i| (i, ratio(1, 2))).collect();
    let lattice = vec![(3, rat(1)), (4, rat(-1)), (5, rat(-1))];
    let f = DiscriminatingFunction::from_ints(&[1, 0, 1, 1, 0, 0, 6, 6, -7, -8])?;
    EnssCertificate::new(
        n,
        Some(fundamental_weight(4, n)?),
        gens,
        witness,
        cone,
        lattice,
        Some(f),
        "example-7 (10,4)".into(),
    )
}

fn usual(coords: Vec<Rat>) -> Result<UsualWeight, ForgeError> {
    UsualWeight::new(coords).map_err(ForgeError::from)
}

fn padded(mut head: Vec<i64>, n: usize) -> Vec<Rat> {
    head.resize(n, 0);
    head.into_iter().map(rat).collect()
}

/// The four-vector certificate below lambda = (2, 0, ..., 0, -1, -1),
/// for any n >= 3 (usual coordinates).
pub(crate) fn example8(n: usize) -> Result<EnssCertificate, ForgeError> {
    if n < 3 {
        return Err(ForgeError::ParamOutOfRange("example 8 needs n >= 3".into()));
    }
    let v1 = usual(padded(vec![1, -1], n))?;
    let v2 = usual(padded(vec![-1, -1, 2], n))?;
    let v3 = usual(padded(vec![2, -1, -1], n))?;
    let witness = usual(padded(vec![0, -1, 1], n))?;
    let mut lam = vec![rat(2)];
    lam.resize(n - 2, rat(0));
    lam.push(rat(-1));
    lam.push(rat(-1));
    let highest = usual(lam)?.to_quasi();
    let mut fcoeffs = vec![rat(0); n];
    fcoeffs[1] = rat(-1);
    let f = DiscriminatingFunction::from_usual_coeffs(fcoeffs);
    EnssCertificate::new(
        n,
        Some(highest),
        vec![v1.to_quasi(), v2.to_quasi(), v3.to_quasi()],
        witness.to_quasi(),
        vec![(0, ratio(1, 2)), (1, ratio(1, 2))],
        vec![(1, rat(1)), (2, rat(1)), (0, rat(-1))],
        Some(f),
        format!("example-8 (n={n})"),
    )
}

/// The four-vector certificate below lambda = (1, 1, 0, ..., 0, -1, -1),
/// for any n >= 4 (usual coordinates).
pub(crate) fn example9(n: usize) -> Result<EnssCertificate, ForgeError> {
    if n < 4 {
        return Err(ForgeError::ParamOutOfRange("example 9 needs n >= 4".into()));
    }
    let v1 = usual(padded(vec![1, 1, -1, -1], n))?;
    let v2 = usual(padded(vec![1, -1, 1, -1], n))?;
    let v3 = usual(padded(vec![0, 1, 0, -1], n))?;
    let v4 = usual(padded(vec![0, 0, 1, -1], n))?;
    let witness = usual(padded(vec![1, 0, 0, -1], n))?;
    let mut lam = vec![rat(1), rat(1)];
    lam.resize(n - 2, rat(0));
    lam.push(rat(-1));
    lam.push(rat(-1));
    let highest = usual(lam)?.to_quasi();
    let mut fcoeffs = vec![rat(0); n];
    fcoeffs[3] = rat(-1);
    let f = DiscriminatingFunction::from_usual_coeffs(fcoeffs);
    EnssCertificate::new(
        n,
        Some(highest),
        vec![
            v1.to_quasi(),
            v2.to_quasi(),
            v3.to_quasi(),
            v4.to_quasi(),
        ],
        witness.to_quasi(),
        vec![(0, ratio(1, 2)), (1, ratio(1, 2))],
        vec![(0, rat(1)), (3, rat(1)), (2, rat(-1))],
        Some(f),
        format!("example-9 (n={n})"),
    )
}
