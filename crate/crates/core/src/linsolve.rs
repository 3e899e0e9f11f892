//! Exact solving of `A x = b` over `Z/n` and `Q`.
//!
//! Over `Z/n` the system is split by CRT into prime-power moduli; over each
//! `Z/p^k` elimination always pivots on an entry of least `p`-valuation, so
//! every other entry in its row and column is a multiple of the pivot. This is
//! Smith-form elimination for the local principal ideal ring `Z/p^k`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith;

/// A solution of `a x = b` over `Z/n`, or `None` when the system has none.
pub fn solve_mod(a: &[Vec<u64>], b: &[u64], n: u64) -> Option<Vec<u64>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut x = vec![0u64; cols];
    for (q, e) in arith::crt_idempotents(n) {
        let (p, _) = arith::factorize(q)[0];
        let aq: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|v| v % q).collect()).collect();
        let bq: Vec<u64> = b.iter().map(|v| v % q).collect();
        let xq = solve_prime_power(aq, bq, p, q)?;
        for (xi, v) in x.iter_mut().zip(xq) {
            *xi = arith::add_mod(*xi, arith::mul_mod(v, e, n), n);
        }
    }
    Some(x)
}

fn val(x: u64, p: u64, q: u64) -> Option<u32> {
    if x.is_multiple_of(q) {
        return None;
    }
    let mut v = 0;
    let mut y = x;
    while y.is_multiple_of(p) {
        y /= p;
        v += 1;
    }
    Some(v)
}

fn sub_mul(x: u64, c: u64, y: u64, q: u64) -> u64 {
    let t = arith::mul_mod(c, y, q);
    (x + q - t) % q
}

/// `x / (p^v w)` for `x` of valuation at least `v`, as a residue mod `q`.
fn divide(x: u64, pivot: u64, v: u32, p: u64, q: u64) -> u64 {
    let pv = p.pow(v);
    let w = pivot / pv;
    let w_inv = arith::inv_mod(w % q, q).expect("pivot cofactor is a unit");
    arith::mul_mod((x / pv) % q, w_inv, q)
}

fn solve_prime_power(mut a: Vec<Vec<u64>>, mut b: Vec<u64>, p: u64, q: u64) -> Option<Vec<u64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    // Column operations are recorded in `t` so that the original x = t y.
    let mut t: Vec<Vec<u64>> = (0..cols).map(|i| (0..cols).map(|j| u64::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        let best = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .filter_map(|(i, j)| val(a[i][j], p, q).map(|v| (v, i, j)))
            .min();
        let Some((v, pi, pj)) = best else { break };
        a.swap(k, pi);
        b.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        for row in t.iter_mut() {
            row.swap(k, pj);
        }
        let pivot = a[k][k];
        for i in 0..rows {
            if i != k && a[i][k] != 0 {
                let c = divide(a[i][k], pivot, v, p, q);
                for j in 0..cols {
                    a[i][j] = sub_mul(a[i][j], c, a[k][j], q);
                }
                b[i] = sub_mul(b[i], c, b[k], q);
            }
        }
        for j in k + 1..cols {
            if a[k][j] != 0 {
                let c = divide(a[k][j], pivot, v, p, q);
                for row in a.iter_mut() {
                    row[j] = sub_mul(row[j], c, row[k], q);
                }
                for row in t.iter_mut() {
                    row[j] = sub_mul(row[j], c, row[k], q);
                }
            }
        }
        pivots.push(v);
        k += 1;
    }
    let mut y = vec![0u64; cols];
    for (i, &v) in pivots.iter().enumerate() {
        let bi = b[i];
        if bi != 0 && val(bi, p, q)? < v {
            return None;
        }
        y[i] = if bi == 0 { 0 } else { divide(bi, a[i][i], v, p, q) };
    }
    if b[pivots.len()..].iter().any(|&x| x != 0) {
        return None;
    }
    Some(
        (0..cols)
            .map(|i| (0..cols).fold(0u64, |acc, j| arith::add_mod(acc, arith::mul_mod(t[i][j], y[j], q), q)))
            .collect(),
    )
}

/// A solution of `a x = b` over `Q` by Gauss-Jordan elimination.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> =
        a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain(std::iter::once(x.clone())).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let d = &f * &m[r][j];
                    m[i][j] = &m[i][j] - d;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}
