//! Semilocal reduction over `Z/n` and over finite excision rings.
//!
//! Over `Z/n` each prime-power factor `Z/p^k` is handled by reducing over
//! `F_p`, lifting the word, and finishing with the radical script for the
//! ideal `(p)`. The factor words are then moved into `Z/n` by multiplying
//! every parameter with the CRT idempotent of the factor; such a word acts
//! as the identity on every other factor, so the factor words are aligned
//! by padding each with identity tokens on the remaining factors.
//!
//! Excision rings are split into local corners by their idempotents and
//! each corner is reduced with a unit pivot.

use crate::arith;
use crate::coeff_rings::{IdealDescriptor, RingDescriptor, Scalar};
use crate::groups::{self, FormKind, GroupWord};
use crate::ring::Ring;

use super::lift::{lift_word, residue_lift};
use super::local::{unit_entry_word, Corner};
use super::radical::radical_word;
use super::row::{check_isotropy, check_size};
use super::transcript::{finish, Procedure, ReductionTranscript};
use super::ReductionError;

fn to_modulus(x: &Scalar, m: u64) -> Scalar {
    Scalar::Mod(x.as_mod().expect("residue payload") % m)
}

/// The word for one factor `Z/q`, `q = p^k`.
fn prime_power_word(form: FormKind, u: &[Scalar], p: u64, q: u64) -> Result<GroupWord<Scalar>, ReductionError> {
    let fp = RingDescriptor::IntegersMod(p);
    let rq = RingDescriptor::IntegersMod(q);
    let ubar: Vec<Scalar> = u.iter().map(|x| to_modulus(x, p)).collect();
    if ubar.iter().all(|x| fp.is_zero(x)) {
        return Err(ReductionError::NotUnimodular);
    }
    let wp = unit_entry_word(&fp, form, &ubar)?;
    let mut word = lift_word(&wp, residue_lift)?;
    let uq: Vec<Scalar> = u.iter().map(|x| to_modulus(x, q)).collect();
    let v = groups::act_on_row(&rq, &uq, &word)?;
    if q != p {
        let ideal = IdealDescriptor::new(&rq, vec![Scalar::Mod(p)])?;
        super::row::check_congruent_e1(&rq, &v, &ideal)?;
        word.extend(radical_word(&rq, form, &v)?);
    }
    Ok(word)
}

fn reduce_mod_n(n: u64, form: FormKind, u: &[Scalar]) -> Result<GroupWord<Scalar>, ReductionError> {
    let mut word = GroupWord::empty(form);
    for (q, e) in arith::crt_idempotents(n) {
        let (p, _) = arith::factorize(q)[0];
        let wq = prime_power_word(form, u, p, q)?;
        word.extend(wq.map(|x| Scalar::Mod(arith::mul_mod(x.as_mod().unwrap(), e, n))));
    }
    Ok(word)
}

fn reduce_excision(ex: &RingDescriptor, form: FormKind, u: &[Scalar]) -> Result<GroupWord<Scalar>, ReductionError> {
    let idems = ex
        .local_idempotents()
        .ok_or_else(|| ReductionError::Unsupported(format!("semilocal reduction over {}", ex.describe())))?;
    let mut word = GroupWord::empty(form);
    for e in idems {
        let corner = Corner::new(ex.clone(), e);
        let ue: Vec<Scalar> = u.iter().map(|x| corner.restrict(x)).collect();
        let w = unit_entry_word(&corner, form, &ue).map_err(|err| match err {
            ReductionError::NoUnitEntry => ReductionError::NotUnimodular,
            other => other,
        })?;
        word.extend(w);
    }
    Ok(word)
}

/// Reduction over a semilocal coefficient ring: `Z/n`, `Q`, or a finite
/// excision ring.
pub fn reduce_semilocal(
    r: &RingDescriptor,
    form: FormKind,
    u: &[Scalar],
) -> Result<ReductionTranscript<Scalar>, ReductionError> {
    form.check_ring(r)?;
    check_size(form, u)?;
    for x in u {
        r.validate(x)?;
    }
    check_isotropy(r, form, u)?;
    let word = match r {
        RingDescriptor::IntegersMod(n) => reduce_mod_n(*n, form, u)?,
        RingDescriptor::Rationals => {
            if u.iter().all(|x| r.is_zero(x)) {
                return Err(ReductionError::ZeroRow);
            }
            unit_entry_word(r, form, u)?
        }
        RingDescriptor::Excision { .. } => reduce_excision(r, form, u)?,
        RingDescriptor::Integers => {
            return Err(ReductionError::Unsupported("Z is not semilocal".into()));
        }
    };
    finish(r, Procedure::Semilocal, u, word, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(r: &RingDescriptor, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| r.int(x)).collect()
    }

    #[test]
    fn small_moduli() {
        let z4 = RingDescriptor::integers_mod(4).unwrap();
        let t = reduce_semilocal(&z4, FormKind::symplectic(2), &row(&z4, &[3, 2, 2, 2])).unwrap();
        assert!(t.replay(&z4).unwrap().ok());
        let z360 = RingDescriptor::integers_mod(360).unwrap();
        let t = reduce_semilocal(&z360, FormKind::symplectic(2), &row(&z360, &[6, 10, 15, 0])).unwrap();
        assert!(t.replay(&z360).unwrap().ok());
        // q = 6 * 10 + 15 * 4 = 120, not isotropic; use (6, 10, 15, 20): 60 + 300 = 360 = 0.
        let u = row(&z360, &[6, 10, 15, 20]);
        let t = reduce_semilocal(&z360, FormKind::orthogonal(2), &u).unwrap();
        assert!(t.replay(&z360).unwrap().ok());
    }

    #[test]
    fn non_unimodular_rows_fail() {
        let z12 = RingDescriptor::integers_mod(12).unwrap();
        assert_eq!(
            reduce_semilocal(&z12, FormKind::symplectic(2), &row(&z12, &[2, 4, 6, 0])),
            Err(ReductionError::NotUnimodular)
        );
    }

    #[test]
    fn field_delegation() {
        let f7 = RingDescriptor::integers_mod(7).unwrap();
        let t = reduce_semilocal(&f7, FormKind::symplectic(2), &row(&f7, &[0, 3, 0, 0])).unwrap();
        assert!(t.replay(&f7).unwrap().ok());
    }

    #[test]
    fn split_excision_ring() {
        // Z/6 + (2): the ideal is a unit at 3, so that corner splits.
        let base = RingDescriptor::integers_mod(6).unwrap();
        let ex = RingDescriptor::excision(base.clone(), vec![Scalar::Mod(2)]).unwrap();
        let u = vec![
            Scalar::pair(base.int(1), base.int(2)),
            Scalar::pair(base.int(0), base.int(4)),
            Scalar::pair(base.int(0), base.int(2)),
            Scalar::pair(base.int(0), base.int(0)),
        ];
        let t = reduce_semilocal(&ex, FormKind::symplectic(2), &u).unwrap();
        assert!(t.replay(&ex).unwrap().ok());
    }
}
