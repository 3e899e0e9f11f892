//! Relative reduction through the excision ring `R + I`.
//!
//! A row `u = e_1 mod I` is embedded as `v = ((1, u1 - 1), (0, u2), ...)`.
//! The two structure maps send `v` to `u` (via `(r, i) -> r + i`) and to
//! `e_1` (via `(r, i) -> r`). A word `x_1 ... x_m` carrying `v` to `e_1` has
//! tokens with parameters `(r_t, i_t)`; additivity splits each projected
//! token as `g(r_t) g(i_t)`, and with `A_t = g(r_1) ... g(r_t)`
//!
//! ```text
//! prod g(r_t) g(i_t) = prod (A_t g(i_t) A_t^-1) . A_m
//! ```
//!
//! `A_m` is the image under `(r, i) -> r` and fixes `e_1`, so the product of
//! conjugates alone carries `u` to `e_1` and lies in `E(2n, R, I)`.

use crate::coeff_rings::{IdealDescriptor, RingDescriptor, Scalar};
use crate::groups::{FormKind, GroupWord, Token, WordItem};
use crate::ring::Ring;

use super::row::{check_congruent_e1, check_isotropy, check_size};
use super::semilocal::reduce_semilocal;
use super::transcript::{finish, Procedure, ReductionTranscript};
use super::ReductionError;

/// The excision embedding of a row `u = e_1 mod I`.
pub(crate) fn excision_embedding(base: &RingDescriptor, u: &[Scalar]) -> Vec<Scalar> {
    u.iter()
        .enumerate()
        .map(|(k, x)| {
            if k == 0 {
                Scalar::pair(base.one(), base.sub(x, &base.one()))
            } else {
                Scalar::pair(base.zero(), x.clone())
            }
        })
        .collect()
}

fn split_token(t: &Token<Scalar>) -> (Token<Scalar>, Token<Scalar>) {
    let (r, i) = t.param().as_pair().expect("excision payload");
    (t.with_param(r.clone()), t.with_param(i.clone()))
}

pub fn reduce_relative(
    r: &RingDescriptor,
    form: FormKind,
    u: &[Scalar],
    ideal: &IdealDescriptor,
) -> Result<ReductionTranscript<Scalar>, ReductionError> {
    if !matches!(r, RingDescriptor::IntegersMod(_)) {
        return Err(ReductionError::Unsupported(format!("relative reduction over {}", r.describe())));
    }
    form.check_ring(r)?;
    check_size(form, u)?;
    check_isotropy(r, form, u)?;
    check_congruent_e1(r, u, ideal)?;
    let ex = RingDescriptor::excision(r.clone(), ideal.generators().to_vec())?;
    let v = excision_embedding(r, u);
    let lifted = reduce_semilocal(&ex, form, &v).map_err(|e| ReductionError::Excision(e.to_string()))?;
    let tokens = lifted.word.expand(|x| ex.neg(x));

    let mut items = Vec::new();
    let mut prefix_inverse: Vec<WordItem<Scalar>> = Vec::new();
    for t in &tokens {
        let (rt, it) = split_token(t);
        // A_t^-1 = g(-r_t) A_{t-1}^-1
        prefix_inverse.insert(0, WordItem::Token(rt.map(|x| r.neg(x))));
        if !r.is_zero(it.param()) {
            items.push(WordItem::Conjugate { core: vec![WordItem::Token(it)], by: prefix_inverse.clone() });
        }
    }
    let word = GroupWord { form, items };
    finish(r, Procedure::Relative, u, word, Some(ideal.clone()))
}
