//! Reduction driven by a unit entry: fields, local rings, and rows whose
//! first entry is already a unit.

use crate::coeff_rings::IdealDescriptor;
use crate::groups::{self, FormKind, GroupWord, Token};
use crate::ring::{Ring, RingError};

use super::row::{check_isotropy, check_size};
use super::transcript::{finish, Procedure, ReductionTranscript};
use super::ReductionError;

/// Accumulates tokens while tracking the current row.
pub(crate) struct Builder<'a, R: Ring> {
    r: &'a R,
    pub form: FormKind,
    pub row: Vec<R::Elem>,
    pub word: GroupWord<R::Elem>,
}

impl<'a, R: Ring> Builder<'a, R> {
    pub fn new(r: &'a R, form: FormKind, u: &[R::Elem]) -> Self {
        Builder { r, form, row: u.to_vec(), word: GroupWord::empty(form) }
    }

    /// Applies a token; zero-parameter tokens are identities and skipped.
    pub fn apply(&mut self, t: Token<R::Elem>) {
        if self.r.is_zero(t.param()) {
            return;
        }
        groups::apply_token(self.r, self.form, &mut self.row, &t);
        self.word.push(t);
    }

    /// `u[k]`, 1-based.
    pub fn at(&self, k: usize) -> &R::Elem {
        &self.row[k - 1]
    }
}

/// Makes the first entry exactly `1` using some unit entry.
fn make_first_one<R: Ring>(b: &mut Builder<'_, R>) -> Result<(), ReductionError> {
    let r = b.r;
    let size = b.form.size();
    if r.is_one(b.at(1)) {
        return Ok(());
    }
    let one = r.one();
    if let Some(a_inv) = r.inverse(b.at(1)) {
        // u_3 -> 1, then u_1 -> u_1 + (1 - u_1) u_3 = 1.
        let lam = r.mul(&r.sub(&one, b.at(3)), &a_inv);
        b.apply(Token::ge(1, 3, lam));
        let lam = r.sub(&one, b.at(1));
        b.apply(Token::ge(3, 1, lam));
        return Ok(());
    }
    if let Some(j) = (3..=size).find(|&j| r.is_unit(b.at(j))) {
        let inv = r.inverse(b.at(j)).unwrap();
        let lam = r.mul(&inv, &r.sub(&one, b.at(1)));
        b.apply(Token::ge(j, 1, lam));
        return Ok(());
    }
    if let Some(inv) = r.inverse(b.at(2)) {
        let lam = r.mul(&inv, &r.sub(&one, b.at(3)));
        b.apply(Token::ge(2, 3, lam));
        let lam = r.sub(&one, b.at(1));
        b.apply(Token::ge(3, 1, lam));
        return Ok(());
    }
    Err(ReductionError::NoUnitEntry)
}

/// With `u_1 = 1`: clear slots `3..2n` against the pivot, then slot 2.
fn clear_with_pivot<R: Ring>(b: &mut Builder<'_, R>) -> Result<(), ReductionError> {
    let r = b.r;
    for j in 3..=b.form.size() {
        let lam = r.neg(b.at(j));
        b.apply(Token::ge(1, j, lam));
    }
    if !r.is_zero(b.at(2)) {
        if !b.form.is_symplectic() {
            // (1, x, 0, ..., 0) has q = x.
            return Err(ReductionError::Isotropy);
        }
        let lam = r.neg(b.at(2));
        b.apply(Token::se(1, lam));
    }
    Ok(())
}

/// A word carrying `u` to `e_1`, for any row with a unit entry. No
/// characteristic restriction is imposed here.
pub(crate) fn unit_entry_word<R: Ring>(
    r: &R,
    form: FormKind,
    u: &[R::Elem],
) -> Result<GroupWord<R::Elem>, ReductionError> {
    check_size(form, u)?;
    check_isotropy(r, form, u)?;
    let mut b = Builder::new(r, form, u);
    make_first_one(&mut b)?;
    clear_with_pivot(&mut b)?;
    Ok(b.word)
}

/// Reduction of a row that has some unit entry (always the case over a
/// local ring).
pub fn reduce_with_unit_entry<R: Ring>(
    r: &R,
    form: FormKind,
    u: &[R::Elem],
) -> Result<ReductionTranscript<R::Elem>, ReductionError> {
    form.check_ring(r)?;
    let w = unit_entry_word(r, form, u)?;
    finish(r, Procedure::Field, u, w, None)
}

pub fn reduce_over_field<R: Ring>(
    r: &R,
    form: FormKind,
    u: &[R::Elem],
) -> Result<ReductionTranscript<R::Elem>, ReductionError> {
    if !r.is_field() {
        return Err(ReductionError::Precondition(format!("{} is not a field", r.describe())));
    }
    check_size(form, u)?;
    if u.iter().all(|x| r.is_zero(x)) {
        return Err(ReductionError::ZeroRow);
    }
    reduce_with_unit_entry(r, form, u)
}

/// Reduction using `u_1` as the pivot; the symplectic word ends with the
/// short-root token clearing slot 2.
pub fn pivot_reduce<R: Ring>(
    r: &R,
    form: FormKind,
    u: &[R::Elem],
) -> Result<ReductionTranscript<R::Elem>, ReductionError> {
    form.check_ring(r)?;
    check_size(form, u)?;
    if !r.is_unit(&u[0]) {
        return Err(ReductionError::Precondition("first entry is not a unit".into()));
    }
    check_isotropy(r, form, u)?;
    let mut b = Builder::new(r, form, u);
    make_first_one(&mut b)?;
    clear_with_pivot(&mut b)?;
    finish(r, Procedure::Pivot, u, b.word, None)
}

/// The corner ring `R e` of an idempotent `e`, with identity `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct Corner<R: Ring> {
    ring: R,
    e: R::Elem,
}

impl<R: Ring> Corner<R> {
    pub fn new(ring: R, e: R::Elem) -> Self {
        Corner { ring, e }
    }

    pub fn idempotent(&self) -> &R::Elem {
        &self.e
    }

    /// `x e`.
    pub fn restrict(&self, x: &R::Elem) -> R::Elem {
        self.ring.mul(x, &self.e)
    }
}

impl<R: Ring> Ring for Corner<R> {
    type Elem = R::Elem;

    fn zero(&self) -> R::Elem {
        self.ring.zero()
    }

    fn one(&self) -> R::Elem {
        self.e.clone()
    }

    fn from_int(&self, n: i64) -> R::Elem {
        self.restrict(&self.ring.from_int(n))
    }

    fn add(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.ring.add(a, b)
    }

    fn neg(&self, a: &R::Elem) -> R::Elem {
        self.ring.neg(a)
    }

    fn mul(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.ring.mul(a, b)
    }

    fn is_zero(&self, a: &R::Elem) -> bool {
        self.ring.is_zero(a)
    }

    /// `x` is a unit of `R e` iff `x + (1 - e)` is a unit of `R`.
    fn inverse(&self, a: &R::Elem) -> Option<R::Elem> {
        let shifted = self.ring.add(a, &self.ring.sub(&self.ring.one(), &self.e));
        self.ring.inverse(&shifted).map(|y| self.restrict(&y))
    }

    fn is_field(&self) -> bool {
        false
    }

    fn characteristic(&self) -> u64 {
        self.ring.characteristic()
    }

    fn in_jacobson_radical(&self, _a: &R::Elem) -> Result<bool, RingError> {
        Err(RingError::Unsupported("Jacobson radical of a corner ring".into()))
    }

    fn is_nilpotent(&self, a: &R::Elem) -> bool {
        self.ring.is_nilpotent(a)
    }

    fn in_ideal(&self, ideal: &IdealDescriptor, a: &R::Elem) -> Result<bool, RingError> {
        self.ring.in_ideal(ideal, a)
    }

    fn describe(&self) -> String {
        format!("{} * {:?}", self.ring.describe(), self.e)
    }
}
