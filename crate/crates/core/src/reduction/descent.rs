//! Factoring a group matrix that fixes `e_{2n}` as
//! `alpha = word_matrix(eps) . (beta (+) Id_2)`.
//!
//! Such an `alpha` has row `2n - 1` equal to `e_{2n-1}` (pair the form with
//! `e_{2n}`), so `beta`, its top-left block, lies in `G(2n - 2)`. The
//! quotient `U = alpha (beta^-1 (+) Id_2)` is unipotent with identity top-left
//! block and is a product of `ge_{k, 2n-1}(U_{k, 2n-1})` for `k <= 2n - 2`
//! and, in the symplectic case, one short-root token at slot `2n`.

use crate::groups::{self, FormKind, GroupWord, Token};
use crate::matrix::{self, Matrix};
use crate::ring::Ring;

use super::ReductionError;

#[derive(Clone, Debug, PartialEq)]
pub struct Descent<E> {
    pub epsilon: GroupWord<E>,
    pub beta: Matrix<E>,
}

pub fn stabilization_descent<R: Ring>(
    r: &R,
    form: FormKind,
    alpha: &Matrix<R::Elem>,
) -> Result<Descent<R::Elem>, ReductionError> {
    let size = form.size();
    if alpha.nrows() != size || !alpha.is_square() {
        return Err(groups::GroupError::SizeMismatch { expected: size, got: alpha.nrows() }.into());
    }
    if form.n < 2 {
        return Err(ReductionError::TooSmall(size));
    }
    form.check_ring(r)?;
    if !groups::is_in_group(r, form, alpha) {
        return Err(ReductionError::NotInGroup);
    }
    if alpha.column(size - 1) != groups::unit_row(r, size, size) {
        return Err(ReductionError::LastColumn { size });
    }
    let small = form.smaller();
    let beta = alpha.block(size - 2);
    if !groups::is_in_group(r, small, &beta) {
        return Err(ReductionError::NotInGroup);
    }
    let beta_inv = groups::group_inverse(r, small, &beta);
    let u = matrix::mul(r, alpha, &matrix::direct_sum(r, &beta_inv, &matrix::identity(r, 2)));

    let mut eps = GroupWord::empty(form);
    for k in 1..=size - 2 {
        let lam = u.get(k - 1, size - 2).clone();
        if !r.is_zero(&lam) {
            eps.push(Token::ge(k, size - 1, lam));
        }
    }
    // What is left is Id + x e_{2n, 2n-1}.
    let partial = groups::word_matrix(r, &eps)?;
    let rest = matrix::mul(r, &groups::group_inverse(r, form, &partial), &u);
    let x = rest.get(size - 1, size - 2).clone();
    if !r.is_zero(&x) {
        if !form.is_symplectic() {
            return Err(ReductionError::Replay("orthogonal descent residue".into()));
        }
        eps.push(Token::se(size, x));
    }
    let rebuilt = matrix::mul(
        r,
        &groups::word_matrix(r, &eps)?,
        &matrix::direct_sum(r, &beta, &matrix::identity(r, 2)),
    );
    if &rebuilt != alpha {
        return Err(ReductionError::Replay("descent".into()));
    }
    Ok(Descent { epsilon: eps, beta })
}
