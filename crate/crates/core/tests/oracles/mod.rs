//! Independent reference computations for integration tests. Nothing here
//! calls into the library's algebra beyond reading plain values out.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use umrow_core::coeff_rings::Scalar;
use umrow_core::matrix::Matrix;

pub type ModMatrix = Vec<Vec<u64>>;

pub fn residue(x: &Scalar) -> u64 {
    x.as_mod().expect("Z/n element")
}

pub fn to_mod(a: &Matrix<Scalar>) -> ModMatrix {
    a.rows().iter().map(|r| r.iter().map(residue).collect()).collect()
}

pub fn row_to_mod(u: &[Scalar]) -> Vec<u64> {
    u.iter().map(residue).collect()
}

pub fn identity(size: usize) -> ModMatrix {
    (0..size).map(|i| (0..size).map(|j| u64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &ModMatrix, b: &ModMatrix, n: u64) -> ModMatrix {
    let (rows, inner, cols) = (a.len(), b.len(), b[0].len());
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..inner).fold(0u128, |acc, k| acc + a[i][k] as u128 * b[k][j] as u128) % n as u128)
                .map(|v| v as u64)
                .collect()
        })
        .collect()
}

pub fn transpose(a: &ModMatrix) -> ModMatrix {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn row_times(u: &[u64], a: &ModMatrix, n: u64) -> Vec<u64> {
    mat_mul(&vec![u.to_vec()], a, n).remove(0)
}

/// The Gram matrix of the hyperbolic pairs `(e_{2k-1}, e_{2k})`:
/// alternating for symplectic forms, symmetric for orthogonal ones.
pub fn gram(symplectic: bool, size: usize, n: u64) -> ModMatrix {
    let mut f = vec![vec![0; size]; size];
    for k in (0..size).step_by(2) {
        f[k][k + 1] = 1;
        f[k + 1][k] = if symplectic { n - 1 } else { 1 };
    }
    f
}

pub fn preserves_form(a: &ModMatrix, f: &ModMatrix, n: u64) -> bool {
    &mat_mul(&mat_mul(&transpose(a), f, n), a, n) == f
}

/// `(F_1 ⊥ F_2)` block sum.
pub fn block_sum(a: &ModMatrix, b: &ModMatrix) -> ModMatrix {
    let (p, q) = (a.len(), b.len());
    let mut out = vec![vec![0; p + q]; p + q];
    for i in 0..p {
        out[i][..p].copy_from_slice(&a[i]);
    }
    for i in 0..q {
        out[p + i][p..].copy_from_slice(&b[i]);
    }
    out
}

/// Exact membership in the monoid generated by `gens`, by descent along a
/// strictly positive integer grading found by brute force.
pub struct MonoidOracle {
    pub gens: Vec<Vec<i64>>,
    grading: Vec<i64>,
    memo: HashMap<Vec<i64>, bool>,
    sum: Vec<i64>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl MonoidOracle {
    pub fn new(gens: &[Vec<i64>]) -> Self {
        let d = gens[0].len();
        let grading = positive_grading(gens, d).expect("pointed monoid");
        let sum = (0..d).map(|k| gens.iter().map(|g| g[k]).sum()).collect();
        MonoidOracle { gens: gens.to_vec(), grading, memo: HashMap::new(), sum }
    }

    pub fn member(&mut self, x: &[i64]) -> bool {
        if x.iter().all(|&v| v == 0) {
            return true;
        }
        if dot(&self.grading, x) <= 0 {
            return false;
        }
        if let Some(&b) = self.memo.get(x) {
            return b;
        }
        let gens = self.gens.clone();
        let found = gens.iter().any(|g| {
            let rest: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
            self.member(&rest)
        });
        self.memo.insert(x.to_vec(), found);
        found
    }

    /// `x` lies in the group of differences: some `x + k s` with `s` the sum
    /// of all generators is a member (deep interior points of the group are).
    pub fn in_group(&mut self, x: &[i64]) -> bool {
        (0..=8).any(|k| {
            let y: Vec<i64> = x.iter().zip(&self.sum).map(|(a, s)| a + k * s).collect();
            self.member(&y)
        })
    }

    /// For a group element: it lies in the cone iff some multiple is a member.
    pub fn multiple_is_member(&mut self, x: &[i64], from: i64) -> bool {
        (from..=6).any(|k| {
            let y: Vec<i64> = x.iter().map(|v| k * v).collect();
            self.member(&y)
        })
    }
}

fn positive_grading(gens: &[Vec<i64>], d: usize) -> Option<Vec<i64>> {
    let range: Vec<i64> = (-4..=4).collect();
    let mut stack = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == d {
            if gens.iter().all(|g| dot(&prefix, g) > 0) {
                return Some(prefix);
            }
            continue;
        }
        for &v in &range {
            let mut p = prefix.clone();
            p.push(v);
            stack.push(p);
        }
    }
    None
}

fn box_points(d: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-b..=b).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn box_size(d: usize) -> i64 {
    match d {
        1 => 30,
        2 => 9,
        3 => 4,
        _ => 2,
    }
}

/// Normal: every group element with a member multiple is a member.
pub fn normal_oracle(gens: &[Vec<i64>]) -> bool {
    let mut o = MonoidOracle::new(gens);
    let d = gens[0].len();
    box_points(d, box_size(d))
        .iter()
        .all(|x| o.member(x) || !o.multiple_is_member(x, 2) || !o.in_group(x))
}

/// Seminormal: every group element with `2x` and `3x` members is a member.
pub fn seminormal_oracle(gens: &[Vec<i64>]) -> bool {
    let mut o = MonoidOracle::new(gens);
    let d = gens[0].len();
    box_points(d, box_size(d)).iter().all(|x| {
        let x2: Vec<i64> = x.iter().map(|v| 2 * v).collect();
        let x3: Vec<i64> = x.iter().map(|v| 3 * v).collect();
        o.member(x) || !(o.member(&x2) && o.member(&x3)) || !o.in_group(x)
    })
}

/// Hilbert basis of the cone spanned by two independent integer rays in
/// `Z^2`: the irreducible lattice points of the closed parallelogram
/// `{a r1 + b r2 : 0 <= a, b <= 1}`, which contains every irreducible
/// point together with both summands of any decomposition.
pub fn rank2_hilbert_oracle(r1: &[i64], r2: &[i64]) -> HashSet<Vec<i64>> {
    let det = r1[0] * r2[1] - r1[1] * r2[0];
    assert_ne!(det, 0);
    let in_par = |x: &[i64]| {
        // a = det(x, r2) / det, b = det(r1, x) / det, both in [0, 1].
        let a = x[0] * r2[1] - x[1] * r2[0];
        let b = r1[0] * x[1] - r1[1] * x[0];
        let ok = |t: i64| if det > 0 { (0..=det).contains(&t) } else { (det..=0).contains(&t) };
        ok(a) && ok(b)
    };
    let lo0 = [0, r1[0], r2[0], r1[0] + r2[0]].into_iter().min().unwrap();
    let hi0 = [0, r1[0], r2[0], r1[0] + r2[0]].into_iter().max().unwrap();
    let lo1 = [0, r1[1], r2[1], r1[1] + r2[1]].into_iter().min().unwrap();
    let hi1 = [0, r1[1], r2[1], r1[1] + r2[1]].into_iter().max().unwrap();
    let pts: Vec<Vec<i64>> = (lo0..=hi0)
        .flat_map(|x| (lo1..=hi1).map(move |y| vec![x, y]))
        .filter(|p| p != &vec![0, 0] && in_par(p))
        .collect();
    let set: HashSet<Vec<i64>> = pts.iter().cloned().collect();
    pts.iter()
        .filter(|x| {
            !pts.iter().any(|y| {
                let z = vec![x[0] - y[0], x[1] - y[1]];
                z != vec![0, 0] && set.contains(&z)
            })
        })
        .cloned()
        .collect()
}
