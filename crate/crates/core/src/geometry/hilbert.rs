use num_integer::Integer;
use num_rational::Ratio;

use super::monoid::{facets_of, rays_of};
use super::{GeometryError, MAX_DESK_RANK, MAX_ENUMERATION};
use crate::lattice::{self, Q};

/// A rational polyhedral cone given by both descriptions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCone {
    pub rank: usize,
    /// Primitive integer generators of the extreme rays.
    pub rays: Vec<Vec<i64>>,
    /// Primitive integer inward normals of the facets.
    pub facets: Vec<Vec<i64>>,
}

impl RationalCone {
    /// Builds both descriptions from a finite list of ray generators.
    pub fn from_rays(rays: &[Vec<i64>]) -> Result<Self, GeometryError> {
        let m = super::AffineMonoid::new(dedup_primitive(rays))?;
        Ok(m.cone())
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| lattice::dot_i(f, x) >= 0)
            && lattice::rank_i(&[self.rays.clone(), vec![x.to_vec()]].concat()) == self.rank
    }
}

fn dedup_primitive(rays: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for r in rays {
        let p = lattice::primitive(r);
        if !out.contains(&p) && p.iter().any(|&x| x != 0) {
            out.push(p);
        }
    }
    out
}

/// Every lattice point `y` of the cone with `alpha(y) <= bound`, in the
/// coordinates where the lattice is `Z^d`. The region is the convex hull of
/// the origin and the rays scaled to level `bound`, so its bounding box is
/// finite.
pub(crate) fn cone_points(
    rays: &[Vec<i64>],
    facets: &[Vec<i64>],
    alpha: &[i64],
    bound: i128,
) -> Result<Vec<Vec<i64>>, GeometryError> {
    let d = alpha.len();
    let mut lo = vec![0i128; d];
    let mut hi = vec![0i128; d];
    for r in rays {
        let a = lattice::dot_i(alpha, r);
        for k in 0..d {
            let v = Ratio::new(r[k] as i128 * bound, a);
            lo[k] = lo[k].min(v.floor().to_integer());
            hi[k] = hi[k].max(v.ceil().to_integer());
        }
    }
    let total = lo
        .iter()
        .zip(&hi)
        .try_fold(1u64, |acc, (l, h)| acc.checked_mul((h - l + 1) as u64))
        .filter(|&t| t <= MAX_ENUMERATION)
        .ok_or_else(|| GeometryError::DeskScale(format!("enumeration box up to level {bound} is too large")))?;
    let mut out = Vec::new();
    let mut cur: Vec<i128> = lo.clone();
    for _ in 0..total {
        let y: Vec<i64> = cur.iter().map(|&v| v as i64).collect();
        if lattice::dot_i(alpha, &y) <= bound && facets.iter().all(|f| lattice::dot_i(f, &y) >= 0) {
            out.push(y);
        }
        for k in 0..d {
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
        }
    }
    Ok(out)
}

/// Hilbert basis of a pointed cone in `Z^d` given by rays and facets.
pub(crate) fn hilbert_basis_lattice(
    rays: &[Vec<i64>],
    facets: &[Vec<i64>],
    alpha: &[i64],
) -> Result<Vec<Vec<i64>>, GeometryError> {
    let d = alpha.len();
    if d > MAX_DESK_RANK {
        return Err(GeometryError::DeskScale(format!("rank {d} exceeds {MAX_DESK_RANK}")));
    }
    // Every irreducible element is a ray generator or lies in the half-open
    // parallelepiped of some simplicial subcone, hence has alpha at most the
    // sum of the d largest ray values.
    let mut levels: Vec<i128> = rays.iter().map(|r| lattice::dot_i(alpha, r)).collect();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    let bound: i128 = levels.iter().take(d).sum();
    let mut pts = cone_points(rays, facets, alpha, bound)?;
    pts.retain(|y| y.iter().any(|&v| v != 0));
    pts.sort_by_key(|y| (lattice::dot_i(alpha, y), y.clone()));
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for y in pts {
        let ay = lattice::dot_i(alpha, &y);
        let reducible = basis.iter().any(|h| {
            lattice::dot_i(alpha, h) < ay && {
                let rest: Vec<i64> = y.iter().zip(h).map(|(a, b)| a - b).collect();
                facets.iter().all(|f| lattice::dot_i(f, &rest) >= 0)
            }
        });
        if !reducible {
            basis.push(y);
        }
    }
    Ok(basis)
}

/// The Hilbert basis of `C cap L`, where `L` is the lattice spanned by
/// `lattice_gens` and the rays of `C` lie in `L (x) Q`. Output is sorted.
pub fn hilbert_basis(cone: &RationalCone, lattice_gens: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, GeometryError> {
    if cone.rays.is_empty() {
        return Err(GeometryError::PositivityRequired);
    }
    let basis = lattice::hnf_basis(lattice_gens);
    let bq: Vec<Vec<Q>> = basis.iter().map(|r| lattice::to_q(r)).collect();
    let mut rays_lat = Vec::new();
    for r in &cone.rays {
        let y = lattice::solve_left(&bq, &lattice::to_q(r)).ok_or_else(|| {
            GeometryError::Precondition(format!("ray {r:?} is not in the span of the lattice"))
        })?;
        rays_lat.push(lattice::primitive_q(&y));
    }
    let d = basis.len();
    if lattice::rank_i(&rays_lat) != d {
        return Err(GeometryError::Precondition("cone must be full-dimensional in the lattice".into()));
    }
    if d > MAX_DESK_RANK {
        return Err(GeometryError::DeskScale(format!("rank {d} exceeds {MAX_DESK_RANK}")));
    }
    let facets = facets_of(&rays_lat, d);
    if facets.is_empty() || lattice::rank_i(&facets) != d {
        return Err(GeometryError::PositivityRequired);
    }
    let rays = rays_of(&rays_lat, &facets, d);
    let sum: Vec<i64> = (0..d).map(|k| facets.iter().map(|f| f[k]).sum()).collect();
    let alpha = lattice::primitive(&sum);
    let mut out: Vec<Vec<i64>> = hilbert_basis_lattice(&rays, &facets, &alpha)?
        .iter()
        .map(|y| lattice::from_coords(&basis, y))
        .collect();
    out.sort();
    Ok(out)
}

/// Lowest common multiple helper used for section levels.
pub(crate) fn lcm_all(values: impl IntoIterator<Item = i128>) -> i128 {
    values.into_iter().fold(1i128, |acc, v| acc.lcm(&v))
}
