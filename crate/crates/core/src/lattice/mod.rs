//! Small dense integer and rational matrices.
//!
//! Sizes here never exceed 5x5, so everything is straightforward
//! Gaussian elimination with exact arithmetic.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::Rational;

pub type IVec = Vec<i64>;
/// Row-major integer matrix.
pub type IMat = Vec<Vec<i64>>;
pub type QMat = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn zeros(r: usize, c: usize) -> IMat {
    vec![vec![0; c]; r]
}

pub fn cols(m: &IMat) -> usize {
    m.first().map_or(0, |r| r.len())
}

pub fn mul(a: &IMat, b: &IMat) -> IMat {
    let (n, k, m) = (a.len(), b.len(), cols(b));
    let mut out = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

pub fn mul_vec(a: &IMat, v: &[i64]) -> IVec {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub_vec(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn transpose(a: &IMat) -> IMat {
    let (r, c) = (a.len(), cols(a));
    (0..c).map(|j| (0..r).map(|i| a[i][j]).collect()).collect()
}

pub fn sub(a: &IMat, b: &IMat) -> IMat {
    a.iter().zip(b).map(|(x, y)| sub_vec(x, y)).collect()
}

pub fn is_zero(a: &IMat) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(a: &IMat) -> i64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

pub fn is_unimodular(a: &IMat) -> bool {
    a.len() == cols(a) && det(a).abs() == 1
}

pub fn to_q(a: &IMat) -> QMat {
    a.iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect()
}

/// Integer matrix from a rational one, if every entry is integral.
pub fn from_q(a: &QMat) -> Option<IMat> {
    a.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    if x.is_integer() {
                        x.to_integer().to_i64()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut QMat) -> Vec<usize> {
    let (r, c) = (m.len(), m.first().map_or(0, |x| x.len()));
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        let Some(p) = (row..r).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..c {
                    let t = &m[row][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(a: &IMat) -> usize {
    rref(&mut to_q(a)).len()
}

pub fn rank_q(a: &QMat) -> usize {
    rref(&mut a.clone()).len()
}

/// Solves `X · P = Q` for `X` (`P` is k×m, `Q` is n×m). Returns `None`
/// when there is no solution or it is not unique.
pub fn solve_left(p: &QMat, q: &QMat) -> Option<QMat> {
    // X P = Q  <=>  P^T X^T = Q^T
    let k = p.len();
    let m = p.first().map_or(0, |r| r.len());
    let n = q.len();
    let mut aug: QMat = (0..m)
        .map(|j| {
            let mut row: Vec<Rational> = (0..k).map(|i| p[i][j].clone()).collect();
            row.extend((0..n).map(|i| q[i][j].clone()));
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() != k || piv.iter().any(|&c| c >= k) {
        return None;
    }
    for row in aug.iter().skip(k) {
        if row.iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    Some(
        (0..n)
            .map(|i| (0..k).map(|j| aug[j][k + i].clone()).collect())
            .collect(),
    )
}

/// Inverse of an integer matrix over Q.
pub fn inverse_q(a: &IMat) -> Option<QMat> {
    let n = a.len();
    solve_left(&to_q(a), &to_q(&identity(n)))
}

/// Inverse of a unimodular matrix.
pub fn inverse(a: &IMat) -> Option<IMat> {
    if !is_unimodular(a) {
        return None;
    }
    from_q(&inverse_q(a)?)
}

/// Unimodular `U` such that `a · U` is in column echelon form.
pub fn column_echelon(a: &IMat) -> (IMat, IMat) {
    let (r, c) = (a.len(), cols(a));
    let mut m = a.clone();
    let mut u = identity(c);
    let mut lead = 0;
    for row in 0..r {
        if lead == c {
            break;
        }
        // gcd-reduce columns lead..c on this row
        loop {
            let nz: Vec<usize> = (lead..c).filter(|&j| m[row][j] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    swap_cols(&mut m, &mut u, lead, j);
                    lead += 1;
                }
                break;
            }
            let p = *nz
                .iter()
                .min_by_key(|&&j| m[row][j].abs())
                .expect("nonempty");
            for &j in &nz {
                if j != p {
                    let f = Integer::div_floor(&m[row][j], &m[row][p]);
                    add_col(&mut m, &mut u, j, p, -f);
                }
            }
        }
    }
    (m, u)
}

fn swap_cols(m: &mut IMat, u: &mut IMat, a: usize, b: usize) {
    for r in m.iter_mut().chain(u.iter_mut()) {
        r.swap(a, b);
    }
}

/// column `dst` += f * column `src`
fn add_col(m: &mut IMat, u: &mut IMat, dst: usize, src: usize, f: i64) {
    for r in m.iter_mut().chain(u.iter_mut()) {
        r[dst] += f * r[src];
    }
}

/// A Z-basis (as columns) of the integer kernel `{x ∈ Z^c : a x = 0}`.
pub fn integer_kernel(a: &IMat, c: usize) -> IMat {
    if a.is_empty() {
        return identity(c);
    }
    let (m, u) = column_echelon(a);
    let nonzero_cols = (0..c).filter(|&j| m.iter().any(|r| r[j] != 0)).count();
    (0..c).map(|i| u[i][nonzero_cols..].to_vec()).collect()
}

/// Z-basis (columns) of the saturated lattice `span_R(vs) ∩ Z^n`.
pub fn saturated_span(vs: &[IVec], n: usize) -> IMat {
    if vs.is_empty() {
        return zeros(n, 0);
    }
    // orthogonal complement, then its kernel
    let perp = transpose(&integer_kernel(&vs.to_vec(), n));
    integer_kernel(&perp, n)
}

pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

pub fn primitive_vec(v: &[i64]) -> IVec {
    let g = gcd_vec(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn gcd_entries(a: &IMat) -> i64 {
    a.iter().fold(0i64, |g, r| g.gcd(&gcd_vec(r)))
}

/// Unimodular `M` with `M v = e_last`; `v` must be primitive.
pub fn complete_to_last(v: &[i64]) -> Option<IMat> {
    let n = v.len();
    if gcd_vec(v) != 1 {
        return None;
    }
    let (m, u) = column_echelon(&vec![v.to_vec()]);
    // v^T U = (±1, 0, ..., 0), so U^T v = ±e_1
    let s = m[0][0];
    let mut ut = transpose(&u);
    if s < 0 {
        ut[0].iter_mut().for_each(|x| *x = -*x);
    }
    let mut out = Vec::with_capacity(n);
    out.extend(ut[1..].iter().cloned());
    out.push(ut[0].clone());
    if det(&out) < 0 && n > 1 {
        out[0].iter_mut().for_each(|x| *x = -*x);
    }
    debug_assert_eq!(mul_vec(&out, v), {
        let mut e = vec![0; n];
        e[n - 1] = 1;
        e
    });
    Some(out)
}

/// Integer solution `x` of `⟨α, x⟩ = 1` for a primitive covector.
pub fn solve_pairing_one(alpha: &[i64]) -> Option<IVec> {
    if gcd_vec(alpha) != 1 {
        return None;
    }
    let (m, u) = column_echelon(&vec![alpha.to_vec()]);
    let s = m[0][0];
    Some(u.iter().map(|r| r[0] * s).collect())
}

/// Elementary divisors via determinantal divisors (fine for tiny matrices).
pub fn elementary_divisors(a: &IMat) -> Vec<i64> {
    let (r, c) = (a.len(), cols(a));
    let mut dets = vec![1i64];
    for k in 1..=r.min(c) {
        let mut g = 0i64;
        for rows in subsets(r, k) {
            for cs in subsets(c, k) {
                let minor: IMat = rows
                    .iter()
                    .map(|&i| cs.iter().map(|&j| a[i][j]).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        dets.push(g);
    }
    dets.windows(2).map(|w| w[1] / w[0]).collect()
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn q_is_zero(a: &QMat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

#[cfg(test)]
mod tests;
