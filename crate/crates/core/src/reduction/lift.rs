use crate::coeff_rings::Scalar;
use crate::groups::GroupWord;

use super::ReductionError;

/// Tokenwise lift along a surjection: same shape, each parameter replaced by
/// a chosen preimage.
pub fn lift_word<S: Clone, T: Clone>(
    w: &GroupWord<S>,
    chooser: impl Fn(&S) -> Option<T>,
) -> Result<GroupWord<T>, ReductionError> {
    w.try_map(|x| chooser(x).ok_or_else(|| ReductionError::Precondition("no preimage for a parameter".into())))
}

/// Applies a ring map to every parameter.
pub fn project_word<S: Clone, T: Clone>(w: &GroupWord<S>, pi: impl Fn(&S) -> T) -> GroupWord<T> {
    w.map(pi)
}

/// The least-residue preimage for `Z/m -> Z/d`, `d | m`.
pub fn residue_lift(x: &Scalar) -> Option<Scalar> {
    x.as_mod().map(Scalar::Mod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_rings::RingDescriptor;
    use crate::groups::{word_matrix, FormKind, Token};
    use crate::ring::Ring;

    #[test]
    fn lift_then_project() {
        let z2 = RingDescriptor::integers_mod(2).unwrap();
        let z4 = RingDescriptor::integers_mod(4).unwrap();
        let f = FormKind::symplectic(2);
        let w = GroupWord::from_tokens(f, vec![Token::ge(1, 3, z2.int(1)), Token::se(2, z2.int(1)), Token::ge(4, 1, z2.int(1))]);
        let lifted = lift_word(&w, residue_lift).unwrap();
        let m4 = word_matrix(&z4, &lifted).unwrap();
        let m2 = word_matrix(&z2, &w).unwrap();
        assert_eq!(m4.map(|x| z2.int(x.as_mod().unwrap())), m2);
        let same = lift_word(&w, |x: &Scalar| Some(x.clone())).unwrap();
        assert_eq!(same, w);
        assert_eq!(project_word(&lifted, |x: &Scalar| z2.int(x.as_mod().unwrap())), w);
    }

    #[test]
    fn quotient_by_t1_lifts_by_inclusion() {
        use crate::monoid_ring::MonoidRing;
        let f3 = RingDescriptor::integers_mod(3).unwrap();
        let mr = MonoidRing::polynomial(f3.clone(), 2);
        let f = FormKind::symplectic(2);
        let t2 = mr.variable(2);
        let w = GroupWord::from_tokens(f, vec![Token::ge(1, 3, t2.clone()), Token::ge(3, 2, mr.add(&t2, &mr.one()))]);
        // The representatives already avoid t1, so inclusion is a section.
        let lifted = lift_word(&w, |x| Some(x.clone())).unwrap();
        let back = lifted.try_map(|x| mr.evaluate_at_t1_zero(x)).unwrap();
        assert_eq!(word_matrix(&mr, &back).unwrap(), word_matrix(&mr, &w).unwrap());
    }
}
