//! Reduction of rows congruent to `e_1` modulo an ideal inside the Jacobson
//! radical.
//!
//! For `2n = 4` and `u = (1 + i1, i2, i3, i4)` the script is
//!
//! ```text
//! ge13(-(i3 - 1)(1 + i1)^-1)  ->  (1 + i1, i2', 1, i4)
//! ge24(i1)                    ->  (1, i2', 1, i4')
//! ge14(-i4')                  ->  (1, i2'', 1, 0)
//! ge13(-1)                    ->  (1, i2'', 0, 0)
//! se(1, -i2'')                ->  e_1            (symplectic only)
//! ```
//!
//! In the orthogonal case `q(1, i2'', 0, 0) = i2''`, so isotropy forces
//! `i2'' = 0`. The emitted word regroups the same product so that every
//! parameter outside a conjugating word lies in the ideal: writing
//! `ge13(l) = ge13(l - 1) ge13(1)` turns steps 2-4 into the conjugate of
//! `ge24(i1) ge14(-i4')` by `ge13(-1)`.
//!
//! For `n > 2` the last pair is cleared with `ge_{1,2n}` and `ge_{1,2n-1}`
//! and the script recurses on the first `2n - 2` slots.

use crate::coeff_rings::IdealDescriptor;
use crate::groups::{self, FormKind, GroupWord, Token, WordItem};
use crate::ring::Ring;

use super::local::Builder;
use super::row::{check_congruent_e1, check_isotropy, check_size};
use super::transcript::{drop_trivial, finish, Procedure, ReductionTranscript};
use super::ReductionError;

/// One step of the literal `2n = 4` script: the token and the row after it.
#[derive(Clone, Debug, PartialEq)]
pub struct ScriptStep<E> {
    pub token: Token<E>,
    pub row: Vec<E>,
}

fn first_inverse<R: Ring>(r: &R, u: &[R::Elem]) -> Result<R::Elem, ReductionError> {
    r.inverse(&u[0]).ok_or_else(|| ReductionError::Precondition("1 + i1 is not a unit".into()))
}

/// The five-step script for `2n = 4`, token by token, with all row states.
pub fn radical_script<R: Ring>(
    r: &R,
    form: FormKind,
    u: &[R::Elem],
) -> Result<Vec<ScriptStep<R::Elem>>, ReductionError> {
    if form.n != 2 {
        return Err(ReductionError::Precondition("the literal script is for 2n = 4".into()));
    }
    check_size(form, u)?;
    check_isotropy(r, form, u)?;
    let inv = first_inverse(r, u)?;
    let one = r.one();
    let mut row = u.to_vec();
    let mut steps = Vec::new();
    let mut push = |row: &mut Vec<R::Elem>, t: Token<R::Elem>| {
        groups::apply_token(r, form, row, &t);
        steps.push(ScriptStep { token: t, row: row.clone() });
    };
    let i1 = r.sub(&u[0], &one);
    push(&mut row, Token::ge(1, 3, r.neg(&r.mul(&r.sub(&u[2], &one), &inv))));
    push(&mut row, Token::ge(2, 4, i1));
    let i4p = row[3].clone();
    push(&mut row, Token::ge(1, 4, r.neg(&i4p)));
    push(&mut row, Token::ge(1, 3, r.neg(&one)));
    if form.is_symplectic() {
        let i2pp = row[1].clone();
        push(&mut row, Token::se(1, r.neg(&i2pp)));
    } else if !r.is_zero(&row[1]) {
        return Err(ReductionError::Isotropy);
    }
    Ok(steps)
}

/// The regrouped `2n = 4` word for a row with `u_1` a unit.
fn size_four_word<R: Ring>(r: &R, form: FormKind, u: &[R::Elem]) -> Result<Vec<WordItem<R::Elem>>, ReductionError> {
    let steps = radical_script(r, form, u)?;
    let one = r.one();
    let lam1 = steps[0].token.param().clone();
    let conj_core = vec![WordItem::Token(steps[1].token.clone()), WordItem::Token(steps[2].token.clone())];
    let mut items = vec![
        WordItem::Token(Token::ge(1, 3, r.sub(&lam1, &one))),
        WordItem::Conjugate { core: conj_core, by: vec![WordItem::Token(Token::ge(1, 3, r.neg(&one)))] },
    ];
    if let Some(step) = steps.get(4) {
        items.push(WordItem::Token(step.token.clone()));
    }
    Ok(drop_trivial(r, items))
}

/// The full radical word for any `n >= 2`; requires only that `u_1` is a
/// unit (and isotropy in the orthogonal case).
pub(crate) fn radical_word<R: Ring>(
    r: &R,
    form: FormKind,
    u: &[R::Elem],
) -> Result<GroupWord<R::Elem>, ReductionError> {
    check_size(form, u)?;
    check_isotropy(r, form, u)?;
    let inv = first_inverse(r, u)?;
    let mut b = Builder::new(r, form, u);
    let mut k = form.n;
    while k > 2 {
        let (a, c) = (2 * k, 2 * k - 1);
        let lam = r.neg(&r.mul(b.at(a), &inv));
        b.apply(Token::ge(1, a, lam));
        let lam = r.neg(&r.mul(b.at(c), &inv));
        b.apply(Token::ge(1, c, lam));
        k -= 1;
    }
    let head = FormKind { kind: form.kind, n: 2 };
    let mut word = b.word;
    word.items.extend(size_four_word(r, head, &b.row[..4])?);
    Ok(word)
}

/// Reduction of `u = e_1 mod I` with `I` inside the Jacobson radical. Every
/// bare token and every conjugated core carries a parameter in `I`.
pub fn reduce_mod_radical<R: Ring>(
    r: &R,
    form: FormKind,
    u: &[R::Elem],
    ideal: &IdealDescriptor,
) -> Result<ReductionTranscript<R::Elem>, ReductionError> {
    form.check_ring(r)?;
    check_size(form, u)?;
    check_congruent_e1(r, u, ideal)?;
    for (k, x) in u.iter().enumerate() {
        let d = if k == 0 { r.sub(x, &r.one()) } else { x.clone() };
        if !r.in_jacobson_radical(&d)? {
            return Err(ReductionError::Precondition(format!(
                "entry {} deviates from e_1 outside the Jacobson radical",
                k + 1
            )));
        }
    }
    let w = radical_word(r, form, u)?;
    finish(r, Procedure::Radical, u, w, Some(ideal.clone()))
}
