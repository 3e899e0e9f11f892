use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::hilbert::lcm_all;
use super::normality::is_normal;
use super::{AffineMonoid, GeometryError, MAX_COMPLEXITY_VERTICES, MAX_DESK_RANK};
use crate::lattice::{self, Q};

/// A decidable subset of the ambient lattice.
pub trait MembershipPredicate {
    fn contains(&self, x: &[i64]) -> Result<bool, GeometryError>;
}

/// `M_* = int(M) cup {0}`.
#[derive(Clone, Debug)]
pub struct StarSubmonoid<'a> {
    monoid: &'a AffineMonoid,
}

pub fn star_submonoid(m: &AffineMonoid) -> Result<StarSubmonoid<'_>, GeometryError> {
    m.require_positive()?;
    Ok(StarSubmonoid { monoid: m })
}

impl MembershipPredicate for StarSubmonoid<'_> {
    fn contains(&self, x: &[i64]) -> Result<bool, GeometryError> {
        self.monoid.check_len(x)?;
        if x.iter().all(|&v| v == 0) {
            return Ok(true);
        }
        self.monoid.interior(x)
    }
}

impl MembershipPredicate for AffineMonoid {
    fn contains(&self, x: &[i64]) -> Result<bool, GeometryError> {
        AffineMonoid::contains(self, x)
    }
}

/// The section `{alpha = level} cap cone(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPolytope {
    pub alpha: Vec<i64>,
    pub level: Q,
    /// One vertex per extreme ray, sorted.
    pub vertices: Vec<Vec<Q>>,
}

impl SectionPolytope {
    /// `phi(x)`: the point where the ray through `x` meets the hyperplane.
    pub fn project(&self, x: &[i64]) -> Option<Vec<Q>> {
        let a = lattice::dot_i(&self.alpha, x);
        (a > 0).then(|| x.iter().map(|&v| Q::from_integer(v as i128) * self.level / Q::from_integer(a)).collect())
    }

    pub fn contains_point(&self, p: &[Q]) -> bool {
        lattice::dot_q(&lattice::to_q(&self.alpha), p) == self.level && lattice::in_hull(&self.vertices, p)
    }
}

/// The default section: `alpha` the primitive sum of the facet normals and
/// the level the lcm of `alpha` over the rays, so that every vertex is a
/// lattice point of the ambient space.
pub fn default_section(m: &AffineMonoid) -> Result<(Vec<i64>, Q), GeometryError> {
    m.require_positive()?;
    let alpha = m.functional_to_ambient(&lattice::to_q(m.alpha_lattice()));
    let level = lcm_all(m.cone().rays.iter().map(|r| lattice::dot_i(&alpha, r)));
    Ok((alpha, Q::from_integer(level)))
}

pub fn section_polytope(m: &AffineMonoid, alpha: &[i64], level: Q) -> Result<SectionPolytope, GeometryError> {
    m.check_len(alpha)?;
    m.require_positive()?;
    if !level.is_positive() {
        return Err(GeometryError::Precondition("section level must be positive".into()));
    }
    let mut vertices = Vec::new();
    for r in m.cone().rays {
        let a = lattice::dot_i(alpha, &r);
        if a <= 0 {
            return Err(GeometryError::NotInteriorDual);
        }
        vertices.push(r.iter().map(|&v| Q::from_integer(v as i128) * level / Q::from_integer(a)).collect());
    }
    vertices.sort();
    Ok(SectionPolytope { alpha: alpha.to_vec(), level, vertices })
}

/// `M(Q) = {m in M \ 0 : phi(m) in Q} cup {0}` for a polytope `Q` inside
/// the section.
#[derive(Clone, Debug)]
pub struct PolytopeSubmonoid<'a> {
    monoid: &'a AffineMonoid,
    section: SectionPolytope,
    polytope: Vec<Vec<Q>>,
}

pub fn submonoid_of_polytope<'a>(
    m: &'a AffineMonoid,
    section: &SectionPolytope,
    polytope: Vec<Vec<Q>>,
) -> Result<PolytopeSubmonoid<'a>, GeometryError> {
    if polytope.is_empty() || !polytope.iter().all(|p| p.len() == m.ambient_rank() && section.contains_point(p)) {
        return Err(GeometryError::Containment);
    }
    Ok(PolytopeSubmonoid { monoid: m, section: section.clone(), polytope })
}

impl MembershipPredicate for PolytopeSubmonoid<'_> {
    fn contains(&self, x: &[i64]) -> Result<bool, GeometryError> {
        self.monoid.check_len(x)?;
        if x.iter().all(|&v| v == 0) {
            return Ok(true);
        }
        if !self.monoid.contains(x)? {
            return Ok(false);
        }
        Ok(match self.section.project(x) {
            Some(p) => lattice::in_hull(&self.polytope, &p),
            None => false,
        })
    }
}

/// Primitive members of `M` on the extreme rays. For normal `M` the ray
/// monoid is free on exactly this element.
pub fn extremal_generators(m: &AffineMonoid) -> Result<Vec<Vec<i64>>, GeometryError> {
    m.require_positive()?;
    if !is_normal(m)? {
        return Err(GeometryError::Precondition("extremal generators require a normal monoid".into()));
    }
    let mut out: Vec<Vec<i64>> = m.rays_lattice().iter().map(|r| m.from_lattice(r)).collect();
    out.sort();
    Ok(out)
}

fn section_points_lat(m: &AffineMonoid) -> Vec<Vec<Q>> {
    m.rays_lattice().iter().map(|r| m.section_point_lat(r)).collect()
}

/// `k(M)`: rank minus the largest number of vertices that can be peeled off
/// one at a time, each the apex of a pyramid over the hull of the rest.
pub fn complexity(m: &AffineMonoid) -> Result<usize, GeometryError> {
    m.require_positive()?;
    if m.rank() > MAX_DESK_RANK {
        return Err(GeometryError::DeskScale(format!("rank {} exceeds {MAX_DESK_RANK}", m.rank())));
    }
    if !is_normal(m)? {
        return Err(GeometryError::Precondition("complexity is defined for normal monoids".into()));
    }
    let pts = section_points_lat(m);
    if pts.len() > MAX_COMPLEXITY_VERTICES {
        return Err(GeometryError::DeskScale(format!(
            "{} vertices exceeds {MAX_COMPLEXITY_VERTICES}",
            pts.len()
        )));
    }
    let full = (1u32 << pts.len()) - 1;
    let mut memo = HashMap::new();
    let peels = max_peels(&pts, full, &mut memo);
    Ok(m.rank() - peels)
}

fn subset(pts: &[Vec<Q>], mask: u32) -> Vec<Vec<Q>> {
    (0..pts.len()).filter(|i| mask >> i & 1 == 1).map(|i| pts[i].clone()).collect()
}

fn max_peels(pts: &[Vec<Q>], mask: u32, memo: &mut HashMap<u32, usize>) -> usize {
    if mask == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let dim = lattice::affine_dim(&subset(pts, mask));
    let mut best = 0;
    for i in 0..pts.len() {
        if mask >> i & 1 == 1 {
            let rest = mask & !(1 << i);
            if lattice::affine_dim(&subset(pts, rest)) == dim - 1 {
                best = best.max(1 + max_peels(pts, rest, memo));
            }
        }
    }
    memo.insert(mask, best);
    best
}

/// A splitting of the section polytope into a pyramid `Delta` with apex at
/// an extremal generator and the rest `Gamma`, meeting in the face `H`.
/// Points are given on the default section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PyramidalDecomposition {
    pub apex: Vec<i64>,
    pub alpha: Vec<i64>,
    pub level: Q,
    pub delta: Vec<Vec<Q>>,
    pub gamma: Vec<Vec<Q>>,
    pub h: Vec<Vec<Q>>,
    /// Primitive ambient functional: zero on `H`, positive towards the apex.
    pub degree_functional: Vec<i64>,
}

impl PyramidalDecomposition {
    pub fn degree(&self, x: &[i64]) -> i64 {
        lattice::dot_i(&self.degree_functional, x) as i64
    }

    pub fn degree_q(&self, p: &[Q]) -> Q {
        lattice::dot_q(&lattice::to_q(&self.degree_functional), p)
    }

    pub fn in_delta(&self, p: &[Q]) -> bool {
        lattice::in_hull(&self.delta, p)
    }

    pub fn in_gamma(&self, p: &[Q]) -> bool {
        lattice::in_hull(&self.gamma, p)
    }

    pub fn in_h(&self, p: &[Q]) -> bool {
        lattice::in_hull(&self.h, p)
    }
}

fn push_unique(v: &mut Vec<Vec<Q>>, p: Vec<Q>) {
    if !v.contains(&p) {
        v.push(p);
    }
}

pub fn pyramidal_decomposition(m: &AffineMonoid, apex: &[i64]) -> Result<PyramidalDecomposition, GeometryError> {
    m.check_len(apex)?;
    let extremal = extremal_generators(m)?;
    if !extremal.iter().any(|e| e == apex) {
        return Err(GeometryError::Precondition(format!("{apex:?} is not an extremal generator")));
    }
    let d = m.rank();
    if d < 2 {
        return Err(GeometryError::Degenerate("the section polytope is a single point".into()));
    }
    let rays = m.rays_lattice();
    let apex_lat = m.to_lattice(apex).expect("extremal generators lie in gp(M)");
    let p = rays.iter().position(|r| *r == apex_lat).expect("apex is a ray generator");
    let facets = m.facets_lattice();
    let through_apex: Vec<&Vec<i64>> = facets.iter().filter(|f| lattice::dot_i(f, &apex_lat) == 0).collect();
    let ell: Vec<Q> = (0..d)
        .map(|k| -Q::from_integer(through_apex.iter().map(|f| f[k] as i128).sum()))
        .collect();
    let pts = section_points_lat(m);
    let vals: Vec<Q> = pts.iter().map(|x| lattice::dot_q(&ell, x)).collect();
    let mut edges = Vec::new();
    for (i, j) in lattice::combinations(rays.len(), 2).into_iter().map(|v| (v[0], v[1])) {
        let common: Vec<Vec<i64>> = facets
            .iter()
            .filter(|f| lattice::dot_i(f, &rays[i]) == 0 && lattice::dot_i(f, &rays[j]) == 0)
            .cloned()
            .collect();
        if lattice::rank_i(&common) + 2 == d {
            edges.push((i, j));
        }
    }
    let slice = |c: Q| {
        let mut gamma = Vec::new();
        let mut h = Vec::new();
        for (i, x) in pts.iter().enumerate() {
            if vals[i] <= c {
                push_unique(&mut gamma, x.clone());
            }
            if vals[i] == c {
                push_unique(&mut h, x.clone());
            }
        }
        for &(i, j) in &edges {
            if (vals[i] - c) * (vals[j] - c) < Q::zero() {
                let t = (c - vals[i]) / (vals[j] - vals[i]);
                let x: Vec<Q> = pts[i].iter().zip(&pts[j]).map(|(a, b)| a + t * (b - a)).collect();
                push_unique(&mut gamma, x.clone());
                push_unique(&mut h, x);
            }
        }
        (gamma, h)
    };
    let c0 = (0..pts.len()).filter(|&i| i != p).map(|i| vals[i]).max().expect("rank >= 2 gives two rays");
    let (mut c, (mut gamma, mut h)) = (c0, slice(c0));
    if lattice::affine_dim(&gamma) < d as isize - 1 {
        c = c0 / Q::from_integer(2);
        (gamma, h) = slice(c);
    }
    if lattice::affine_dim(&gamma) < d as isize - 1 || h.is_empty() {
        return Err(GeometryError::Degenerate("no full-dimensional complement at this apex".into()));
    }
    let mut delta = h.clone();
    push_unique(&mut delta, pts[p].clone());

    let alpha_lat = lattice::to_q(m.alpha_lattice());
    let delta_lat: Vec<Q> = ell.iter().zip(&alpha_lat).map(|(l, a)| l - c * a).collect();
    let degree_functional = m.functional_to_ambient(&delta_lat);
    let (alpha, level) = default_section(m)?;
    let to_ambient = |y: &Vec<Q>| -> Vec<Q> {
        let x = lattice::from_coords_q(m.lattice_basis(), y);
        let a = lattice::dot_q(&lattice::to_q(&alpha), &x);
        x.iter().map(|v| v * level / a).collect()
    };
    let sorted = |v: Vec<Vec<Q>>| {
        let mut out: Vec<Vec<Q>> = v.iter().map(to_ambient).collect();
        out.sort();
        out
    };
    Ok(PyramidalDecomposition {
        apex: apex.to_vec(),
        alpha: alpha.clone(),
        level,
        delta: sorted(delta),
        gamma: sorted(gamma),
        h: sorted(h),
        degree_functional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(g: &[&[i64]]) -> AffineMonoid {
        AffineMonoid::new(g.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    fn q(a: i128, b: i128) -> Q {
        Q::new(a, b)
    }

    fn square() -> AffineMonoid {
        m(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]])
    }

    #[test]
    fn sections() {
        let s = section_polytope(&AffineMonoid::free(2), &[1, 1], q(1, 1)).unwrap();
        assert_eq!(s.vertices, vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]]);
        let s = section_polytope(&square(), &[0, 0, 1], q(1, 1)).unwrap();
        assert_eq!(s.vertices.len(), 4);
        assert!(s.vertices.iter().all(|v| v[2] == q(1, 1)));
        let v = m(&[&[2, 0], &[1, 1], &[0, 2]]);
        let s = section_polytope(&v, &[1, 1], q(2, 1)).unwrap();
        assert_eq!(s.vertices, vec![vec![q(0, 1), q(2, 1)], vec![q(2, 1), q(0, 1)]]);
        assert_eq!(section_polytope(&v, &[1, -1], q(1, 1)), Err(GeometryError::NotInteriorDual));
    }

    #[test]
    fn default_section_has_lattice_vertices() {
        let (alpha, level) = default_section(&square()).unwrap();
        assert_eq!(alpha, vec![0, 0, 1]);
        assert_eq!(level, q(1, 1));
    }

    #[test]
    fn polytope_submonoid() {
        let free = AffineMonoid::free(2);
        let s = section_polytope(&free, &[1, 1], q(1, 1)).unwrap();
        let half = submonoid_of_polytope(&free, &s, vec![vec![q(0, 1), q(1, 1)], vec![q(1, 2), q(1, 2)]]).unwrap();
        assert!(half.contains(&[1, 3]).unwrap());
        assert!(!half.contains(&[3, 1]).unwrap());
        assert!(half.contains(&[0, 0]).unwrap());
        assert!(submonoid_of_polytope(&free, &s, vec![vec![q(2, 1), q(-1, 1)]]).is_err());
    }

    #[test]
    fn star() {
        let free = AffineMonoid::free(2);
        let st = star_submonoid(&free).unwrap();
        assert!(st.contains(&[0, 0]).unwrap());
        assert!(!st.contains(&[1, 0]).unwrap());
        assert!(st.contains(&[2, 3]).unwrap());
    }

    #[test]
    fn extremal() {
        assert_eq!(extremal_generators(&AffineMonoid::free(2)).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(
            extremal_generators(&m(&[&[2, 0], &[1, 1], &[0, 2]])).unwrap(),
            vec![vec![0, 2], vec![2, 0]]
        );
        assert_eq!(extremal_generators(&square()).unwrap().len(), 4);
        assert!(extremal_generators(&m(&[&[2], &[3]])).is_err());
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(complexity(&AffineMonoid::free(3)).unwrap(), 0);
        assert_eq!(complexity(&square()).unwrap(), 3);
        assert_eq!(complexity(&m(&[&[1, 0], &[1, 1], &[1, 2]])).unwrap(), 0);
        // Pyramid over a square: peel the apex, then stuck at the square.
        let pyr = m(&[&[0, 0, 0, 1], &[1, 0, 0, 1], &[0, 1, 0, 1], &[1, 1, 0, 1], &[0, 0, 1, 1]]);
        assert_eq!(complexity(&pyr).unwrap(), 3);
    }

    #[test]
    fn decomposition_of_quadrant() {
        let pd = pyramidal_decomposition(&AffineMonoid::free(2), &[1, 0]).unwrap();
        assert_eq!(pd.degree_functional, vec![1, -1]);
        assert_eq!(pd.h, vec![vec![q(1, 2), q(1, 2)]]);
        assert!(pd.in_delta(&[q(1, 1), q(0, 1)]));
        assert!(pd.in_gamma(&[q(0, 1), q(1, 1)]));
    }

    #[test]
    fn decomposition_of_square_cone() {
        let pd = pyramidal_decomposition(&square(), &[0, 0, 1]).unwrap();
        assert_eq!(pd.degree_functional, vec![-1, -1, 1]);
        assert_eq!(pd.h.len(), 2);
        for x in &pd.h {
            assert!(pd.degree_q(x).is_zero());
        }
        assert!(pd.gamma.iter().all(|x| !pd.degree_q(x).is_positive()));
        assert!(pd.delta.iter().all(|x| !pd.degree_q(x).is_negative()));
    }

    #[test]
    fn decomposition_errors() {
        assert!(pyramidal_decomposition(&AffineMonoid::free(2), &[1, 1]).is_err());
        assert!(matches!(
            pyramidal_decomposition(&AffineMonoid::free(1), &[1]),
            Err(GeometryError::Degenerate(_))
        ));
    }
}
