//! Nagata twisting until the last entry is monic in `t_1`.

use crate::coeff_rings::{RingDescriptor, Scalar};
use crate::groups::FormKind;
use crate::monoid_ring::{DegreeAssignment, LeadingTerm, MonoidRing, Poly};
use crate::ring::Ring;

use super::row::{check_size, check_unimodular};
use super::ReductionError;

/// Largest twist exponent tried before giving up.
pub const C_MAX: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct MonicOutcome {
    /// The exponent that worked.
    pub c: u32,
    /// Every entry after `t_j -> t_j + t_1^c`.
    pub twisted: Vec<Poly<Scalar>>,
    /// Leading term of the last twisted entry.
    pub leading: LeadingTerm<Scalar>,
}

fn check_coefficients(mr: &MonoidRing<RingDescriptor>) -> Result<(), ReductionError> {
    match mr.coeffs() {
        RingDescriptor::IntegersMod(_) | RingDescriptor::Rationals => Ok(()),
        other => Err(ReductionError::Unsupported(format!("monic twisting over {}", other.describe()))),
    }
}

/// One twist attempt; `None` is the retry signal.
pub fn try_monic_twist(
    mr: &MonoidRing<RingDescriptor>,
    u: &[Poly<Scalar>],
    c: u32,
    degree: &DegreeAssignment,
    m: &[i64],
) -> Result<Option<MonicOutcome>, ReductionError> {
    let twisted = u.iter().map(|f| mr.nagata_twist(f, c)).collect::<Result<Vec<_>, _>>()?;
    let last = twisted.last().expect("nonempty row");
    if !mr.is_monic_in(last, m, degree) {
        return Ok(None);
    }
    let leading = mr.leading_term(last, degree)?;
    Ok(Some(MonicOutcome { c, twisted, leading }))
}

/// Twists with `c = c_start, 2 c_start, ...` up to [`C_MAX`] (starting from
/// 1 when `c_start = 0` fails) until the last entry is monic in `m` under
/// `degree`. The restriction `u|_{t_1 = 0}` must be unimodular.
pub fn monic_then_reduce(
    mr: &MonoidRing<RingDescriptor>,
    form: FormKind,
    u: &[Poly<Scalar>],
    degree: &DegreeAssignment,
    m: &[i64],
    c_start: u32,
) -> Result<MonicOutcome, ReductionError> {
    check_size(form, u)?;
    check_coefficients(mr)?;
    let restricted = u.iter().map(|f| mr.evaluate_at_t1_zero(f)).collect::<Result<Vec<_>, _>>()?;
    if check_unimodular(mr, &restricted, None)?.is_none() {
        return Err(ReductionError::Precondition("u restricted to t1 = 0 is not unimodular".into()));
    }
    let mut c = c_start;
    loop {
        if let Some(out) = try_monic_twist(mr, u, c, degree, m)? {
            return Ok(out);
        }
        c = if c == 0 { 1 } else { c * 2 };
        if c > C_MAX {
            return Err(ReductionError::MonicNotAchieved { c_max: C_MAX });
        }
    }
}

/// The `t_1`-weight on `Z^r` and the exponent of `t_1`.
pub fn t1_weight(r: usize) -> (DegreeAssignment, Vec<i64>) {
    let mut m = vec![0; r];
    m[0] = 1;
    (DegreeAssignment::coordinate(r, 0), m)
}
