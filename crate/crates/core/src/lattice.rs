//! Small exact linear algebra over `Z` and `Q`: Hermite bases, ranks,
//! kernels and rational solving. Dimensions here are at most a handful, so
//! everything is dense and straightforward.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<i128>;

pub fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| Q::from_integer(x as i128)).collect()
}

pub fn dot_i(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

pub fn dot_q(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

/// The primitive integer vector on the ray through a rational vector.
pub fn primitive_q(v: &[Q]) -> Vec<i64> {
    let l = v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i128> = v.iter().map(|x| (x * Q::from_integer(l)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g == 0 {
        return vec![0; v.len()];
    }
    ints.iter().map(|&x| i64::try_from(x / g).expect("primitive vector fits in i64")).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for k in 0..cols {
                    let t = m[r][k] * f;
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_q(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_i(rows: &[Vec<i64>]) -> usize {
    rank_q(&rows.iter().map(|r| to_q(r)).collect::<Vec<_>>())
}

/// A basis of `{x : row . x = 0 for every row}` in `Q^ncols`.
pub fn kernel(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f];
            }
            v
        })
        .collect()
}

/// Solves `y . A = b` for `y` (a combination of the rows of `A`), if possible.
pub fn solve_left(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let k = a.len();
    let n = b.len();
    // Transposed augmented system: columns are the rows of A.
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|j| {
            let mut row: Vec<Q> = a.iter().map(|r| r[j]).collect();
            row.push(b[j]);
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut y = vec![Q::zero(); k];
    for (r, &p) in pivots.iter().enumerate() {
        y[p] = m[r][k];
    }
    Some(y)
}

/// Row-style Hermite normal form: the nonzero rows form a basis of the
/// lattice spanned by `rows`, upper triangular with positive pivots.
pub fn hnf_basis(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        // Euclid on column c among rows r.. until a single nonzero remains.
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| m[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            m.swap(r, p);
            if nz.len() == 1 && (nz[0] == p) {
                break;
            }
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c] != 0 {
                    let q = m[i][c].div_euclid(m[r][c]);
                    for k in 0..cols {
                        m[i][k] -= q * m[r][k];
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            for x in m[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = m[i][c].div_euclid(m[r][c]);
            for k in 0..cols {
                m[i][k] -= q * m[r][k];
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.into_iter()
        .map(|row| row.into_iter().map(|x| i64::try_from(x).expect("HNF entry fits in i64")).collect())
        .collect()
}

/// Integer coordinates of `x` in the lattice basis `basis`, if `x` lies in
/// the lattice.
pub fn lattice_coords(basis: &[Vec<i64>], x: &[i64]) -> Option<Vec<i64>> {
    let a: Vec<Vec<Q>> = basis.iter().map(|r| to_q(r)).collect();
    let y = solve_left(&a, &to_q(x))?;
    // With a basis the solution is unique; check it is integral.
    if y.iter().all(|c| c.is_integer()) {
        Some(y.iter().map(|c| c.to_integer() as i64).collect())
    } else {
        None
    }
}

/// `y . basis` as an ambient vector.
pub fn from_coords(basis: &[Vec<i64>], y: &[i64]) -> Vec<i64> {
    let n = basis.first().map_or(0, |r| r.len());
    (0..n)
        .map(|j| {
            let s: i128 = basis.iter().zip(y).map(|(b, &c)| b[j] as i128 * c as i128).sum();
            i64::try_from(s).expect("ambient coordinate fits in i64")
        })
        .collect()
}

pub fn from_coords_q(basis: &[Vec<i64>], y: &[Q]) -> Vec<Q> {
    let n = basis.first().map_or(0, |r| r.len());
    (0..n)
        .map(|j| basis.iter().zip(y).fold(Q::zero(), |acc, (b, c)| acc + c * Q::from_integer(b[j] as i128)))
        .collect()
}

/// Is `x` in the convex hull of `points`? Exact, by Caratheodory: tries every
/// affinely independent subset of size at most `dim + 1`.
pub fn in_hull(points: &[Vec<Q>], x: &[Q]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = x.len();
    let max = (n + 1).min(points.len());
    for size in 1..=max {
        for subset in combinations(points.len(), size) {
            // Solve sum c_i p_i = x, sum c_i = 1.
            let a: Vec<Vec<Q>> = subset
                .iter()
                .map(|&i| {
                    let mut r = points[i].clone();
                    r.push(Q::one());
                    r
                })
                .collect();
            if rank_q(&a) != size {
                continue;
            }
            let mut b = x.to_vec();
            b.push(Q::one());
            if let Some(c) = solve_left(&a, &b) {
                if c.iter().all(|v| !v.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Dimension of the affine hull of a point set (`-1` when empty).
pub fn affine_dim(points: &[Vec<Q>]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    rank_q(&diffs) as isize
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn hnf_of_even_sum_lattice() {
        let b = hnf_basis(&[vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(b, vec![vec![1, 1], vec![0, 2]]);
        assert_eq!(lattice_coords(&b, &[3, 1]), Some(vec![3, -1]));
        assert_eq!(lattice_coords(&b, &[1, 0]), None);
        assert_eq!(from_coords(&b, &[3, -1]), vec![3, 1]);
    }

    #[test]
    fn hnf_of_numerical_semigroup() {
        assert_eq!(hnf_basis(&[vec![2], vec![3]]), vec![vec![1]]);
        assert_eq!(hnf_basis(&[vec![4], vec![6]]), vec![vec![2]]);
        assert_eq!(hnf_basis(&[vec![0, 0]]), Vec::<Vec<i64>>::new());
    }

    #[test]
    fn kernel_and_rank() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        assert_eq!(rank_q(&rows), 1);
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot_q(&rows[0], v).is_zero());
        }
    }

    #[test]
    fn hull_membership() {
        let pts = vec![vec![q(0), q(0)], vec![q(2), q(0)], vec![q(0), q(2)]];
        assert!(in_hull(&pts, &[q(1), q(1)]));
        assert!(!in_hull(&pts, &[q(2), q(1)]));
        assert!(in_hull(&pts, &[Q::new(1, 2), Q::new(1, 3)]));
        assert_eq!(affine_dim(&pts), 2);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[4, -6]), vec![2, -3]);
        assert_eq!(primitive_q(&[Q::new(1, 2), Q::new(-1, 2)]), vec![1, -1]);
    }
}
