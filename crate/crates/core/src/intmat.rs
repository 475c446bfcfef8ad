//! Integer and rational matrix kernels: Hermite normal form with unimodular
//! transform, fraction-free determinants, echelon solves and kernels.
//!
//! All public entry points work on `BigInt`; inputs that fit are routed
//! through a checked `i128` implementation first, which covers essentially
//! every matrix this crate sees in practice.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rat::{Int, Rat};

pub type IntRow = Vec<Int>;

fn identity(n: usize) -> Vec<IntRow> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

fn row_sub(rows: &mut [IntRow], target: usize, source: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    // split_at_mut keeps the borrows disjoint
    let (a, b) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (t, s) in a.iter_mut().zip(b.iter()) {
        *t -= q * s;
    }
}

fn negate_row(row: &mut IntRow) {
    for e in row.iter_mut() {
        *e = -std::mem::take(e);
    }
}

/// Row-style Hermite normal form. Returns `(h, u)` with `u * a = h`,
/// `u` unimodular. `h` is in row echelon form with positive pivots, entries
/// above each pivot reduced into `[0, pivot)`, and zero rows at the bottom.
pub fn hnf_with_transform(a: &[IntRow]) -> (Vec<IntRow>, Vec<IntRow>) {
    if let Some(res) = hnf_i128(a) {
        return res;
    }
    hnf_bigint(a)
}

fn hnf_bigint(a: &[IntRow]) -> (Vec<IntRow>, Vec<IntRow>) {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut h: Vec<IntRow> = a.to_vec();
    let mut u = identity(m);
    let mut r = 0usize;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !h[i][col].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) if h[i][col].abs() < h[b][col].abs() => Some(i),
                        keep => keep,
                    };
                }
            }
            let Some(pivot_row) = best else { break };
            h.swap(r, pivot_row);
            u.swap(r, pivot_row);
            let mut done = true;
            for i in r + 1..m {
                if !h[i][col].is_zero() {
                    let q = h[i][col].div_floor(&h[r][col]);
                    row_sub(&mut h, i, r, &q);
                    row_sub(&mut u, i, r, &q);
                    if !h[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][col].is_zero() {
            continue;
        }
        if h[r][col].is_negative() {
            negate_row(&mut h[r]);
            negate_row(&mut u[r]);
        }
        for i in 0..r {
            let q = h[i][col].div_floor(&h[r][col]);
            row_sub(&mut h, i, r, &q);
            row_sub(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

pub(crate) fn to_i128_rows(a: &[IntRow]) -> Option<Vec<Vec<i128>>> {
    a.iter()
        .map(|row| row.iter().map(|e| e.to_i128()).collect())
        .collect()
}

/// Marker for arithmetic overflow in the checked i128 kernels.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Overflow;

/// Checked i128 variant of [`solve_left_echelon`].
pub(crate) fn solve_left_echelon_i128(
    h: &[Vec<i128>],
    pivots: &[usize],
    t: &[i128],
) -> Result<Option<Vec<i128>>, Overflow> {
    let mut rem = t.to_vec();
    let mut y = Vec::with_capacity(h.len());
    for (row, &p) in h.iter().zip(pivots) {
        let q = rem[p].div_euclid(row[p]);
        if rem[p].rem_euclid(row[p]) != 0 {
            return Ok(None);
        }
        if q != 0 {
            for (re, he) in rem.iter_mut().zip(row.iter()) {
                *re = re
                    .checked_sub(q.checked_mul(*he).ok_or(Overflow)?)
                    .ok_or(Overflow)?;
            }
        }
        y.push(q);
    }
    if rem.iter().all(|&e| e == 0) {
        Ok(Some(y))
    } else {
        Ok(None)
    }
}

/// Checked i128 HNF on raw rows; None on overflow.
pub(crate) fn hnf_i128_raw(
    a: &[Vec<i128>],
) -> Option<(Vec<Vec<i128>>, Vec<Vec<i128>>)> {
    let mut h = a.to_vec();
    let m = h.len();
    let n = if m == 0 { 0 } else { h[0].len() };
    let mut u: Vec<Vec<i128>> = (0..m)
        .map(|i| (0..m).map(|j| i128::from(i == j)).collect())
        .collect();

    fn sub_checked(rows: &mut [Vec<i128>], target: usize, source: usize, q: i128) -> Option<()> {
        if q == 0 {
            return Some(());
        }
        let (a, b) = if target < source {
            let (lo, hi) = rows.split_at_mut(source);
            (&mut lo[target], &hi[0])
        } else {
            let (lo, hi) = rows.split_at_mut(target);
            (&mut hi[0], &lo[source])
        };
        for (t, s) in a.iter_mut().zip(b.iter()) {
            *t = t.checked_sub(q.checked_mul(*s)?)?;
        }
        Some(())
    }

    let mut r = 0usize;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if h[i][col] != 0 {
                    best = match best {
                        None => Some(i),
                        Some(b) if h[i][col].abs() < h[b][col].abs() => Some(i),
                        keep => keep,
                    };
                }
            }
            let Some(pivot_row) = best else { break };
            h.swap(r, pivot_row);
            u.swap(r, pivot_row);
            let mut done = true;
            for i in r + 1..m {
                if h[i][col] != 0 {
                    let q = Integer::div_floor(&h[i][col], &h[r][col]);
                    sub_checked(&mut h, i, r, q)?;
                    sub_checked(&mut u, i, r, q)?;
                    if h[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][col] == 0 {
            continue;
        }
        if h[r][col] < 0 {
            for e in h[r].iter_mut() {
                *e = e.checked_neg()?;
            }
            for e in u[r].iter_mut() {
                *e = e.checked_neg()?;
            }
        }
        for i in 0..r {
            let q = Integer::div_floor(&h[i][col], &h[r][col]);
            sub_checked(&mut h, i, r, q)?;
            sub_checked(&mut u, i, r, q)?;
        }
        r += 1;
    }
    Some((h, u))
}

/// Pivot columns of the nonzero rows of a raw i128 echelon matrix.
pub(crate) fn echelon_pivots_i128(h: &[Vec<i128>]) -> Vec<usize> {
    let mut pivots = Vec::new();
    for row in h {
        if let Some(col) = row.iter().position(|&e| e != 0) {
            pivots.push(col);
        }
    }
    pivots
}

fn from_i128_rows(a: Vec<Vec<i128>>) -> Vec<IntRow> {
    a.into_iter()
        .map(|row| row.into_iter().map(Int::from).collect())
        .collect()
}

fn hnf_i128(a: &[IntRow]) -> Option<(Vec<IntRow>, Vec<IntRow>)> {
    let rows = to_i128_rows(a)?;
    let (h, u) = hnf_i128_raw(&rows)?;
    Some((from_i128_rows(h), from_i128_rows(u)))
}

/// Column index of the first nonzero entry of each nonzero row of an
/// echelon-form matrix.
pub fn echelon_pivots(h: &[IntRow]) -> Vec<usize> {
    let mut pivots = Vec::new();
    for row in h {
        if let Some(col) = row.iter().position(|e| !e.is_zero()) {
            pivots.push(col);
        }
    }
    pivots
}

pub fn rank(h: &[IntRow]) -> usize {
    echelon_pivots(h).len()
}

/// Nonzero rows of an echelon matrix.
pub fn nonzero_rows(h: &[IntRow]) -> Vec<IntRow> {
    h.iter()
        .filter(|row| row.iter().any(|e| !e.is_zero()))
        .cloned()
        .collect()
}

/// Solves `y * h = t` for integer `y` where `h` is a nonzero-row echelon
/// matrix with pivot columns `pivots`. Returns None when `t` is not in the
/// row lattice of `h`.
pub fn solve_left_echelon(h: &[IntRow], pivots: &[usize], t: &[Int]) -> Option<Vec<Int>> {
    let mut rem = t.to_vec();
    let mut y = Vec::with_capacity(h.len());
    for (row, &p) in h.iter().zip(pivots) {
        let (q, r) = rem[p].div_rem(&row[p]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (re, he) in rem.iter_mut().zip(row.iter()) {
                *re -= &q * he;
            }
        }
        y.push(q);
    }
    if rem.iter().all(|e| e.is_zero()) {
        Some(y)
    } else {
        None
    }
}

pub fn transpose(a: &[IntRow]) -> Vec<IntRow> {
    if a.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    (0..n)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Basis of the saturated lattice `{ y : y * a = 0 }`.
pub fn left_kernel(a: &[IntRow]) -> Vec<IntRow> {
    let (h, u) = hnf_with_transform(a);
    h.iter()
        .zip(u)
        .filter(|(hrow, _)| hrow.iter().all(|e| e.is_zero()))
        .map(|(_, urow)| urow)
        .collect()
}

/// Basis of `{ x : a * x = 0 }` as row vectors.
pub fn right_kernel(a: &[IntRow]) -> Vec<IntRow> {
    left_kernel(&transpose(a))
}

/// Determinant of a square integer matrix (Bareiss fraction-free).
pub fn det(a: &[IntRow]) -> Int {
    if let Some(d) = det_i128(a) {
        return d;
    }
    det_bigint(a)
}

fn det_bigint(a: &[IntRow]) -> Int {
    let n = a.len();
    if n == 0 {
        return Int::one();
    }
    let mut m: Vec<IntRow> = a.to_vec();
    let mut sign = 1i8;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Int::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = val;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

fn det_i128(a: &[IntRow]) -> Option<Int> {
    let n = a.len();
    if n == 0 {
        return Some(Int::one());
    }
    let mut m = to_i128_rows(a)?;
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0);
            let Some(swap) = swap else {
                return Some(Int::zero());
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t1 = m[i][j].checked_mul(m[k][k])?;
                let t2 = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = t1.checked_sub(t2)? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Some(Int::from(sign * m[n - 1][n - 1]))
}

/// Incremental rational row echelon with dependence tracking. `insert`
/// returns `None` when the row is independent of everything inserted so far,
/// and otherwise the coefficients expressing it over the previous inserts.
pub struct RatEchelon {
    dim: usize,
    rows: Vec<(Vec<Rat>, Vec<Rat>, usize)>, // reduced row, expression, pivot
    inserted: usize,
}

impl RatEchelon {
    pub fn new(dim: usize) -> Self {
        RatEchelon {
            dim,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, row: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(row.len(), self.dim);
        let mut r = row.to_vec();
        let mut expr = vec![Rat::zero(); self.inserted];
        self.inserted += 1;
        expr.push(Rat::one());
        for (reduced, rexpr, pivot) in &self.rows {
            let c = r[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (re, de) in r.iter_mut().zip(reduced) {
                *re -= &c * de;
            }
            for (ee, de) in expr.iter_mut().zip(rexpr) {
                *ee -= &c * de;
            }
        }
        match r.iter().position(|e| !e.is_zero()) {
            None => {
                // 0 = row - sum(c_i * original_i); drop this row again
                self.inserted -= 1;
                expr.pop();
                Some(expr.into_iter().map(|e| -e).collect())
            }
            Some(pivot) => {
                let p = r[pivot].clone();
                for e in r.iter_mut() {
                    *e /= &p;
                }
                expr.resize(self.inserted, Rat::zero());
                for e in expr.iter_mut() {
                    *e /= &p;
                }
                self.rows.push((r, expr, pivot));
                None
            }
        }
    }
}

/// Rank of a set of rational rows.
pub fn rational_rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut ech = RatEchelon::new(rows[0].len());
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

/// Solves `sum x_i rows[i] = target` over the rationals; for independent
/// rows the solution is unique. None when inconsistent.
pub fn solve_combination(rows: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let dim = target.len();
    let mut ech = RatEchelon::new(dim);
    for row in rows {
        ech.insert(row);
    }
    match {
        let mut probe = ech;
        probe.insert(target)
    } {
        Some(coeffs) => {
            // target = sum over *independent inserts*; expand to all rows.
            // Re-run tracking which inserts were kept.
            let mut ech = RatEchelon::new(dim);
            let mut kept: Vec<usize> = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                if ech.insert(row).is_none() {
                    kept.push(i);
                }
            }
            let mut x = vec![Rat::zero(); rows.len()];
            for (slot, c) in kept.into_iter().zip(coeffs) {
                x[slot] = c;
            }
            Some(x)
        }
        None => None,
    }
}
