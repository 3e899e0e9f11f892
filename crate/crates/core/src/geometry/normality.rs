use std::collections::HashMap;

use super::hilbert::{cone_points, hilbert_basis_lattice};
use super::{AffineMonoid, GeometryError, MAX_DESK_RANK};
use crate::lattice;

fn check_desk_rank(m: &AffineMonoid) -> Result<(), GeometryError> {
    if m.rank() > MAX_DESK_RANK {
        return Err(GeometryError::DeskScale(format!("rank {} exceeds {MAX_DESK_RANK}", m.rank())));
    }
    Ok(())
}

/// Hilbert basis of the normalization `cone(M) cap gp(M)`, in lattice
/// coordinates.
pub(crate) fn normalization_basis_lat(m: &AffineMonoid) -> Result<Vec<Vec<i64>>, GeometryError> {
    m.require_positive()?;
    check_desk_rank(m)?;
    hilbert_basis_lattice(m.rays_lattice(), m.facets_lattice(), m.alpha_lattice())
}

/// `M` is normal iff it contains every Hilbert basis element of its
/// normalization.
pub fn is_normal(m: &AffineMonoid) -> Result<bool, GeometryError> {
    let hb = normalization_basis_lat(m)?;
    let mut memo = HashMap::new();
    Ok(hb.iter().all(|y| m.contains_lat(y, &mut memo)))
}

/// `M` is phi-simplicial iff its cone is simplicial.
pub fn is_phi_simplicial(m: &AffineMonoid) -> Result<bool, GeometryError> {
    m.require_positive()?;
    Ok(m.rays_lattice().len() == m.rank())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeminormalStatus {
    /// Every face passed; `certified` is false only if some face was
    /// checked by enumeration below its certification level.
    Seminormal { certified: bool },
    /// A relative-interior lattice point of a face monoid that is missing
    /// from the face monoid (ambient coordinates).
    NotSeminormal { face: Vec<Vec<i64>>, hole: Vec<i64> },
    /// No hole found up to `bound`, which is below the certification level.
    Inconclusive { bound: i64 },
}

impl SeminormalStatus {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            SeminormalStatus::Seminormal { .. } => Some(true),
            SeminormalStatus::NotSeminormal { .. } => Some(false),
            SeminormalStatus::Inconclusive { .. } => None,
        }
    }
}

/// Level (in the face's own alpha) up to which interior points must be
/// checked. Any relative-interior point `x = sum c_i e_i` over independent
/// extreme members `e_i` splits as `z + sum k_i e_i` with `k_i =
/// max(0, floor(c_i) - 1)`; then `z` keeps every positive coefficient, so it
/// is still interior, and `alpha(z) < 2 sum alpha(e_i)`.
fn certification_level(face: &AffineMonoid) -> i128 {
    let mut per_ray: Vec<i128> = face
        .rays_lattice()
        .iter()
        .map(|r| {
            face.generators_lattice()
                .iter()
                .filter(|g| lattice::primitive(g) == *r)
                .map(|g| face.alpha_of(g))
                .min()
                .expect("every extreme ray carries a generator")
        })
        .collect();
    per_ray.sort_unstable_by(|a, b| b.cmp(a));
    2 * per_ray.iter().take(face.rank()).sum::<i128>()
}

enum FaceVerdict {
    Normal,
    Hole(Vec<i64>),
    Clean { certified: bool },
}

/// Decides whether `(F cap M)_*` is normal for one face monoid, checking
/// relative-interior points of `gp(F cap M)` up to the given level.
fn star_normal(face: &AffineMonoid, bound: Option<i64>) -> Result<FaceVerdict, GeometryError> {
    if is_normal(face)? {
        return Ok(FaceVerdict::Normal);
    }
    let cert = certification_level(face);
    let level = match bound {
        Some(b) => b as i128,
        None => cert,
    };
    let pts = cone_points(face.rays_lattice(), face.facets_lattice(), face.alpha_lattice(), level)?;
    let mut memo = HashMap::new();
    let mut sorted = pts;
    sorted.sort_by_key(|y| (face.alpha_of(y), y.clone()));
    for y in sorted {
        if face.in_interior_lat(&y) && !face.contains_lat(&y, &mut memo) {
            return Ok(FaceVerdict::Hole(face.from_lattice(&y)));
        }
    }
    Ok(FaceVerdict::Clean { certified: level >= cert })
}

/// Seminormality through the face criterion: `M` is seminormal iff
/// `(F cap M)_*` is normal for every face `F`.
///
/// Without an explicit `bound` each face is enumerated up to the larger of
/// `8 * (max generator coordinate)` and its certification level, so the
/// answer is always decided. An explicit bound is used as given and may
/// yield [`SeminormalStatus::Inconclusive`].
pub fn is_seminormal(m: &AffineMonoid, bound: Option<i64>) -> Result<SeminormalStatus, GeometryError> {
    m.require_positive()?;
    check_desk_rank(m)?;
    let default_floor = 8 * m.max_coordinate();
    let mut all_certified = true;
    for face in m.faces()? {
        if face.is_empty() {
            continue;
        }
        let fm = m.face_monoid(&face)?;
        let level = match bound {
            Some(b) => Some(b),
            None => Some(default_floor.max(certification_level(&fm) as i64)),
        };
        match star_normal(&fm, level)? {
            FaceVerdict::Normal => {}
            FaceVerdict::Hole(hole) => {
                return Ok(SeminormalStatus::NotSeminormal { face: fm.generators().to_vec(), hole });
            }
            FaceVerdict::Clean { certified } => all_certified &= certified,
        }
    }
    match (all_certified, bound) {
        (true, _) => Ok(SeminormalStatus::Seminormal { certified: true }),
        (false, Some(b)) => Ok(SeminormalStatus::Inconclusive { bound: b }),
        (false, None) => unreachable!("default levels are always certified"),
    }
}
