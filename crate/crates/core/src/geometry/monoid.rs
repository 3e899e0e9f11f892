use std::collections::HashMap;

use num_traits::Signed;

use super::hilbert::RationalCone;
use super::GeometryError;
use crate::lattice::{self, Q};

/// A finitely generated submonoid of `Z^r`, with its group lattice, facets
/// and extreme rays computed once at construction.
///
/// Internally everything lives in coordinates of the Hermite basis of
/// `gp(M)`, where the monoid is full-dimensional.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMonoid {
    ambient_rank: usize,
    generators: Vec<Vec<i64>>,
    basis: Vec<Vec<i64>>,
    gens_lat: Vec<Vec<i64>>,
    facets_lat: Vec<Vec<i64>>,
    rays_lat: Vec<Vec<i64>>,
    alpha_lat: Vec<i64>,
    pointed: bool,
}

/// Inward facet normals of the cone spanned by `gens` in `Z^d`, where the
/// generators span `Q^d`. Returned primitive, deduplicated and sorted.
pub(crate) fn facets_of(gens: &[Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut consider = |n: Vec<i64>| {
        let vals: Vec<i128> = gens.iter().map(|g| lattice::dot_i(&n, g)).collect();
        let normal = if vals.iter().all(|&v| v >= 0) {
            n
        } else if vals.iter().all(|&v| v <= 0) {
            n.iter().map(|x| -x).collect()
        } else {
            return;
        };
        if !out.contains(&normal) {
            out.push(normal);
        }
    };
    if d == 1 {
        consider(vec![1]);
    } else {
        for subset in lattice::combinations(gens.len(), d - 1) {
            let rows: Vec<Vec<Q>> = subset.iter().map(|&i| lattice::to_q(&gens[i])).collect();
            if lattice::rank_q(&rows) != d - 1 {
                continue;
            }
            let k = lattice::kernel(&rows, d);
            consider(lattice::primitive_q(&k[0]));
        }
    }
    out.sort();
    out
}

/// Primitive generators of the extreme rays of a pointed cone.
pub(crate) fn rays_of(gens: &[Vec<i64>], facets: &[Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for g in gens {
        let tight: Vec<Vec<i64>> =
            facets.iter().filter(|f| lattice::dot_i(f, g) == 0).cloned().collect();
        if lattice::rank_i(&tight) + 1 == d || (d == 1 && tight.is_empty()) {
            let r = lattice::primitive(g);
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out.sort();
    out
}

impl AffineMonoid {
    pub fn new(generators: Vec<Vec<i64>>) -> Result<Self, GeometryError> {
        let Some(first) = generators.first() else {
            return Err(GeometryError::InvalidMonoid("at least one generator is required".into()));
        };
        let ambient_rank = first.len();
        if ambient_rank == 0 {
            return Err(GeometryError::InvalidMonoid("ambient rank must be positive".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.len() != ambient_rank {
                return Err(GeometryError::DimensionMismatch { expected: ambient_rank, got: g.len() });
            }
            if g.iter().all(|&x| x == 0) {
                return Err(GeometryError::InvalidMonoid("generators must be nonzero".into()));
            }
            if generators[..i].contains(g) {
                return Err(GeometryError::InvalidMonoid(format!("duplicate generator {g:?}")));
            }
        }
        let basis = lattice::hnf_basis(&generators);
        let d = basis.len();
        let gens_lat: Vec<Vec<i64>> = generators
            .iter()
            .map(|g| lattice::lattice_coords(&basis, g).expect("generator lies in its own lattice"))
            .collect();
        let facets_lat = facets_of(&gens_lat, d);
        let pointed = !facets_lat.is_empty() && lattice::rank_i(&facets_lat) == d;
        let (rays_lat, alpha_lat) = if pointed {
            let rays = rays_of(&gens_lat, &facets_lat, d);
            let sum: Vec<i64> = (0..d).map(|k| facets_lat.iter().map(|f| f[k]).sum()).collect();
            (rays, lattice::primitive(&sum))
        } else {
            (Vec::new(), Vec::new())
        };
        Ok(AffineMonoid { ambient_rank, generators, basis, gens_lat, facets_lat, rays_lat, alpha_lat, pointed })
    }

    /// The free monoid `Z_+^r` on the unit vectors.
    pub fn free(r: usize) -> Self {
        let gens = (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new(gens).expect("unit vectors form a valid monoid")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Rank of `gp(M)`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Hermite basis of `gp(M)` (rows).
    pub fn lattice_basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn is_positive(&self) -> bool {
        self.pointed
    }

    /// True when the generators are exactly the unit vectors of `Z^r`.
    pub fn is_free(&self) -> bool {
        let r = self.ambient_rank;
        self.generators.len() == r
            && (0..r).all(|i| {
                let e: Vec<i64> = (0..r).map(|j| i64::from(i == j)).collect();
                self.generators.contains(&e)
            })
    }

    pub(crate) fn generators_lattice(&self) -> &[Vec<i64>] {
        &self.gens_lat
    }

    pub(crate) fn facets_lattice(&self) -> &[Vec<i64>] {
        &self.facets_lat
    }

    pub(crate) fn rays_lattice(&self) -> &[Vec<i64>] {
        &self.rays_lat
    }

    /// A functional strictly positive on the cone minus the origin, in
    /// lattice coordinates (sum of facet normals, made primitive).
    pub(crate) fn alpha_lattice(&self) -> &[i64] {
        &self.alpha_lat
    }

    pub fn check_len(&self, x: &[i64]) -> Result<(), GeometryError> {
        if x.len() != self.ambient_rank {
            return Err(GeometryError::DimensionMismatch { expected: self.ambient_rank, got: x.len() });
        }
        Ok(())
    }

    pub(crate) fn require_positive(&self) -> Result<(), GeometryError> {
        if self.pointed {
            Ok(())
        } else {
            Err(GeometryError::PositivityRequired)
        }
    }

    /// Coordinates of `x` in the Hermite basis, or `None` if `x` is not in `gp(M)`.
    pub fn to_lattice(&self, x: &[i64]) -> Option<Vec<i64>> {
        if x.len() != self.ambient_rank {
            return None;
        }
        if x.iter().all(|&v| v == 0) {
            return Some(vec![0; self.rank()]);
        }
        lattice::lattice_coords(&self.basis, x)
    }

    pub fn from_lattice(&self, y: &[i64]) -> Vec<i64> {
        lattice::from_coords(&self.basis, y)
    }

    pub(crate) fn in_cone_lat(&self, y: &[i64]) -> bool {
        self.facets_lat.iter().all(|f| lattice::dot_i(f, y) >= 0)
    }

    pub(crate) fn in_interior_lat(&self, y: &[i64]) -> bool {
        self.facets_lat.iter().all(|f| lattice::dot_i(f, y) > 0)
    }

    pub(crate) fn alpha_of(&self, y: &[i64]) -> i128 {
        lattice::dot_i(&self.alpha_lat, y)
    }

    /// Is the rational point `x` in the real cone spanned by the generators?
    pub fn in_cone_q(&self, x: &[Q]) -> bool {
        let b: Vec<Vec<Q>> = self.basis.iter().map(|r| lattice::to_q(r)).collect();
        match lattice::solve_left(&b, x) {
            Some(y) => self
                .facets_lat
                .iter()
                .all(|f| !lattice::dot_q(&lattice::to_q(f), &y).is_negative()),
            None => false,
        }
    }

    /// Exact membership `x in M`, by memoized descent along the generators.
    pub fn contains(&self, x: &[i64]) -> Result<bool, GeometryError> {
        self.check_len(x)?;
        self.require_positive()?;
        let mut memo = HashMap::new();
        Ok(match self.to_lattice(x) {
            Some(y) => self.contains_lat(&y, &mut memo),
            None => false,
        })
    }

    pub(crate) fn contains_lat(&self, y: &[i64], memo: &mut HashMap<Vec<i64>, bool>) -> bool {
        if y.iter().all(|&v| v == 0) {
            return true;
        }
        if !self.in_cone_lat(y) {
            return false;
        }
        if let Some(&known) = memo.get(y) {
            return known;
        }
        let mut found = false;
        for g in &self.gens_lat {
            let rest: Vec<i64> = y.iter().zip(g).map(|(a, b)| a - b).collect();
            if self.contains_lat(&rest, memo) {
                found = true;
                break;
            }
        }
        memo.insert(y.to_vec(), found);
        found
    }

    /// `x in int(M)`: a member on which every facet functional is positive.
    pub fn interior(&self, x: &[i64]) -> Result<bool, GeometryError> {
        self.check_len(x)?;
        self.require_positive()?;
        match self.to_lattice(x) {
            Some(y) if self.in_interior_lat(&y) => self.contains(x),
            _ => Ok(false),
        }
    }

    /// Converts a functional on lattice coordinates to an ambient integer
    /// functional (primitive) agreeing with it up to a positive factor on
    /// `gp(M)`. The representative is chosen inside the span of `gp(M)`.
    pub fn functional_to_ambient(&self, f: &[Q]) -> Vec<i64> {
        let b: Vec<Vec<Q>> = self.basis.iter().map(|r| lattice::to_q(r)).collect();
        let gram: Vec<Vec<Q>> =
            b.iter().map(|bi| b.iter().map(|bj| lattice::dot_q(bi, bj)).collect()).collect();
        // Symmetric Gram matrix: z . G = f gives G z = f.
        let z = lattice::solve_left(&gram, f).expect("Gram matrix of a basis is invertible");
        let g = lattice::from_coords_q(&self.basis, &z);
        lattice::primitive_q(&g)
    }

    /// Restriction of an ambient functional to lattice coordinates.
    pub fn functional_to_lattice(&self, g: &[i64]) -> Vec<i64> {
        self.basis.iter().map(|b| lattice::dot_i(b, g) as i64).collect()
    }

    /// The cone of `M` in ambient coordinates.
    pub fn cone(&self) -> RationalCone {
        let rays = self.rays_lat.iter().map(|r| lattice::primitive(&self.from_lattice(r))).collect();
        let facets = self
            .facets_lat
            .iter()
            .map(|f| self.functional_to_ambient(&lattice::to_q(f)))
            .collect();
        RationalCone { rank: self.rank(), rays, facets }
    }

    /// Faces of the cone as sets of generator indices, from the apex face
    /// (empty set) up to the whole cone. Each face is cut out by a set of
    /// facets.
    pub fn faces(&self) -> Result<Vec<Vec<usize>>, GeometryError> {
        self.require_positive()?;
        let nf = self.facets_lat.len();
        if nf > 20 {
            return Err(GeometryError::DeskScale(format!("{nf} facets is too many for face enumeration")));
        }
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for mask in 0u32..(1 << nf) {
            let on: Vec<usize> = (0..self.gens_lat.len())
                .filter(|&i| {
                    (0..nf)
                        .filter(|k| mask >> k & 1 == 1)
                        .all(|k| lattice::dot_i(&self.facets_lat[k], &self.gens_lat[i]) == 0)
                })
                .collect();
            if !faces.contains(&on) {
                faces.push(on);
            }
        }
        faces.sort_by_key(|f| (f.len(), f.clone()));
        Ok(faces)
    }

    /// The monoid `F cap M` for a face given by generator indices.
    pub fn face_monoid(&self, face: &[usize]) -> Result<AffineMonoid, GeometryError> {
        AffineMonoid::new(face.iter().map(|&i| self.generators[i].clone()).collect())
    }

    /// Largest absolute coordinate over all generators.
    pub fn max_coordinate(&self) -> i64 {
        self.generators.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Is `x` in the cone and in `gp(M)` (the normalization of `M`)?
    pub fn in_normalization(&self, x: &[i64]) -> bool {
        self.to_lattice(x).is_some_and(|y| self.in_cone_lat(&y))
    }

    /// Rational point of the section `alpha = 1` on the ray through `y`.
    pub(crate) fn section_point_lat(&self, y: &[i64]) -> Vec<Q> {
        let a = self.alpha_of(y);
        y.iter().map(|&v| Q::new(v as i128, a)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(g: &[&[i64]]) -> AffineMonoid {
        AffineMonoid::new(g.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let veronese = m(&[&[2, 0], &[1, 1], &[0, 2]]);
        assert!(veronese.contains(&[3, 1]).unwrap());
        assert!(veronese.contains(&[0, 0]).unwrap());
        assert!(!veronese.contains(&[1, 0]).unwrap());
        let ns = m(&[&[2], &[3]]);
        assert!(!ns.contains(&[1]).unwrap());
        assert!(ns.contains(&[5]).unwrap());
        assert!(!ns.contains(&[-2]).unwrap());
    }

    #[test]
    fn interior_examples() {
        let free = AffineMonoid::free(2);
        assert!(free.interior(&[1, 1]).unwrap());
        assert!(!free.interior(&[1, 0]).unwrap());
        assert!(m(&[&[2, 0], &[1, 1], &[0, 2]]).interior(&[1, 1]).unwrap());
    }

    #[test]
    fn non_pointed_is_refused() {
        let z = m(&[&[1], &[-1]]);
        assert!(!z.is_positive());
        assert_eq!(z.contains(&[3]), Err(GeometryError::PositivityRequired));
        let half = m(&[&[1, 0], &[-1, 0], &[0, 1]]);
        assert!(!half.is_positive());
    }

    #[test]
    fn invalid_generators() {
        assert!(AffineMonoid::new(vec![]).is_err());
        assert!(AffineMonoid::new(vec![vec![0, 0]]).is_err());
        assert!(AffineMonoid::new(vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(AffineMonoid::new(vec![vec![1, 0], vec![1]]).is_err());
    }

    #[test]
    fn square_cone_structure() {
        let sq = m(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        assert_eq!(sq.rank(), 3);
        let cone = sq.cone();
        assert_eq!(cone.rays.len(), 4);
        assert_eq!(cone.facets.len(), 4);
        for r in &cone.rays {
            for f in &cone.facets {
                assert!(lattice::dot_i(f, r) >= 0);
            }
        }
        // Apex, four rays, four 2-faces and the cone itself.
        assert_eq!(sq.faces().unwrap().len(), 10);
    }

    #[test]
    fn lower_rank_monoid() {
        let line = m(&[&[2, 2, 0], &[3, 3, 0]]);
        assert_eq!(line.rank(), 1);
        assert!(line.contains(&[5, 5, 0]).unwrap());
        assert!(!line.contains(&[1, 1, 0]).unwrap());
        assert!(!line.contains(&[1, 0, 0]).unwrap());
        let cone = line.cone();
        assert_eq!(cone.rays, vec![vec![1, 1, 0]]);
        assert!(lattice::dot_i(&cone.facets[0], &[1, 1, 0]) > 0);
    }
}
