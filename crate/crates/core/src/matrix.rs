//! Dense square and rectangular matrices over any [`Ring`] carrier.

use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: Vec<Vec<E>>,
}

impl<E: Clone> Matrix<E> {
    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Option<Self> {
        let w = rows.first().map_or(0, |r| r.len());
        rows.iter().all(|r| r.len() == w).then_some(Matrix { rows })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let (n, m) = (self.nrows(), self.ncols());
        Matrix { rows: (0..m).map(|j| (0..n).map(|i| self.rows[i][j].clone()).collect()).collect() }
    }

    /// Top-left `k x k` block.
    pub fn block(&self, k: usize) -> Self {
        Matrix { rows: self.rows[..k].iter().map(|r| r[..k].to_vec()).collect() }
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }
}

pub fn identity<R: Ring>(r: &R, n: usize) -> Matrix<R::Elem> {
    Matrix {
        rows: (0..n).map(|i| (0..n).map(|j| if i == j { r.one() } else { r.zero() }).collect()).collect(),
    }
}

pub fn zeros<R: Ring>(r: &R, n: usize, m: usize) -> Matrix<R::Elem> {
    Matrix { rows: vec![vec![r.zero(); m]; n] }
}

pub fn mul<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.ncols(), b.nrows(), "matrix product shape mismatch");
    let m = b.ncols();
    Matrix {
        rows: a
            .rows
            .iter()
            .map(|row| {
                (0..m)
                    .map(|j| {
                        row.iter()
                            .zip(&b.rows)
                            .fold(r.zero(), |acc, (x, brow)| {
                                if r.is_zero(x) {
                                    acc
                                } else {
                                    r.add(&acc, &r.mul(x, &brow[j]))
                                }
                            })
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn add<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    Matrix {
        rows: a.rows.iter().zip(&b.rows).map(|(x, y)| x.iter().zip(y).map(|(p, q)| r.add(p, q)).collect()).collect(),
    }
}

pub fn sub<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    Matrix {
        rows: a.rows.iter().zip(&b.rows).map(|(x, y)| x.iter().zip(y).map(|(p, q)| r.sub(p, q)).collect()).collect(),
    }
}

/// Row vector times matrix.
pub fn row_times<R: Ring>(r: &R, u: &[R::Elem], a: &Matrix<R::Elem>) -> Vec<R::Elem> {
    (0..a.ncols())
        .map(|j| u.iter().zip(&a.rows).fold(r.zero(), |acc, (x, row)| r.add(&acc, &r.mul(x, &row[j]))))
        .collect()
}

/// Matrix times column vector.
pub fn times_col<R: Ring>(r: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    a.rows.iter().map(|row| r.dot(row, v)).collect()
}

pub fn is_identity<R: Ring>(r: &R, a: &Matrix<R::Elem>) -> bool {
    a.is_square()
        && a.rows.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| if i == j { r.is_one(x) } else { r.is_zero(x) })
        })
}

/// Block sum `a (+) b`.
pub fn direct_sum<R: Ring>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = zeros(r, n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            out.rows[i][j] = a.rows[i][j].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out.rows[n + i][n + j] = b.rows[i][j].clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_rings::RingDescriptor;

    #[test]
    fn products_and_identity() {
        let r = RingDescriptor::integers_mod(7).unwrap();
        let a = Matrix::from_rows(vec![vec![r.int(1), r.int(2)], vec![r.int(3), r.int(4)]]).unwrap();
        let id = identity(&r, 2);
        assert_eq!(mul(&r, &a, &id), a);
        assert_eq!(mul(&r, &id, &a), a);
        let aa = mul(&r, &a, &a);
        assert_eq!(aa.row(0), &[r.int(7), r.int(10)]);
        assert_eq!(row_times(&r, &[r.int(1), r.int(0)], &a), vec![r.int(1), r.int(2)]);
        assert_eq!(times_col(&r, &a, &[r.int(1), r.int(0)]), vec![r.int(1), r.int(3)]);
        assert!(is_identity(&r, &id));
        assert!(!is_identity(&r, &a));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(direct_sum(&r, &a, &id).nrows(), 4);
        assert!(Matrix::from_rows(vec![vec![r.int(1)], vec![]]).is_none());
    }
}
