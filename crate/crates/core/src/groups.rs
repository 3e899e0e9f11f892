//! Symplectic and orthogonal forms, elementary generators as tokens and as
//! matrices, words in those generators, and the right action on rows.
//!
//! Indices are 1-based everywhere in the public interface. The pairing
//! `sigma` swaps `2k-1` and `2k`.

use std::fmt;

use thiserror::Error;

use crate::coeff_rings::IdealDescriptor;
use crate::matrix::{self, Matrix};
use crate::ring::{Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid token: {0}")]
    InvalidToken(String),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("orthogonal forms need a coefficient ring of characteristic other than 2")]
    CharacteristicTwo,
    #[error("form size 2n must be at least 2")]
    EmptyForm,
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormType {
    Symplectic,
    Orthogonal,
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormType::Symplectic => "symplectic",
            FormType::Orthogonal => "orthogonal",
        })
    }
}

/// A form kind and half size `n`; matrices are `2n x 2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FormKind {
    pub kind: FormType,
    pub n: usize,
}

impl FormKind {
    pub fn new(kind: FormType, n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::EmptyForm);
        }
        Ok(FormKind { kind, n })
    }

    pub fn symplectic(n: usize) -> Self {
        FormKind { kind: FormType::Symplectic, n }
    }

    pub fn orthogonal(n: usize) -> Self {
        FormKind { kind: FormType::Orthogonal, n }
    }

    /// `2n`.
    pub fn size(&self) -> usize {
        2 * self.n
    }

    pub fn is_symplectic(&self) -> bool {
        self.kind == FormType::Symplectic
    }

    /// The same kind one step down (`n - 1`).
    pub fn smaller(&self) -> Self {
        FormKind { kind: self.kind, n: self.n - 1 }
    }

    /// Rejects orthogonal forms over characteristic 2.
    pub fn check_ring<R: Ring>(&self, r: &R) -> Result<(), GroupError> {
        if self.kind == FormType::Orthogonal && r.characteristic() == 2 {
            return Err(GroupError::CharacteristicTwo);
        }
        Ok(())
    }

    /// Sign `s` in `ge_ij = Id + l e_ij - s l e_{sigma(j) sigma(i)}`.
    pub fn sign(&self, i: usize, j: usize) -> i64 {
        match self.kind {
            FormType::Symplectic if (i + j) % 2 == 1 => -1,
            _ => 1,
        }
    }
}

/// `sigma = (1 2)(3 4)...`, 1-based.
pub fn sigma(i: usize) -> usize {
    if i % 2 == 1 {
        i + 1
    } else {
        i - 1
    }
}

pub fn standard_form<R: Ring>(r: &R, f: FormKind) -> Matrix<R::Elem> {
    let mut m = matrix::zeros(r, f.size(), f.size());
    for k in 0..f.n {
        m.set(2 * k, 2 * k + 1, r.one());
        let lower = match f.kind {
            FormType::Symplectic => r.neg(&r.one()),
            FormType::Orthogonal => r.one(),
        };
        m.set(2 * k + 1, 2 * k, lower);
    }
    m
}

fn check_row<E>(f: FormKind, u: &[E]) -> Result<(), GroupError> {
    if u.len() != f.size() {
        return Err(GroupError::SizeMismatch { expected: f.size(), got: u.len() });
    }
    Ok(())
}

/// `<u, v> = u^T F v`.
pub fn inner_product<R: Ring>(r: &R, f: FormKind, u: &[R::Elem], v: &[R::Elem]) -> Result<R::Elem, GroupError> {
    check_row(f, u)?;
    check_row(f, v)?;
    let mut acc = r.zero();
    for k in 0..f.n {
        let a = r.mul(&u[2 * k], &v[2 * k + 1]);
        let b = r.mul(&u[2 * k + 1], &v[2 * k]);
        acc = match f.kind {
            FormType::Symplectic => r.add(&acc, &r.sub(&a, &b)),
            FormType::Orthogonal => r.add(&acc, &r.add(&a, &b)),
        };
    }
    Ok(acc)
}

/// `q(u) = sum u_{2k-1} u_{2k}`, the quadratic form whose polar is the
/// orthogonal bilinear form. Isotropy of orthogonal rows means `q(u) = 0`.
pub fn quadratic_value<R: Ring>(r: &R, u: &[R::Elem]) -> R::Elem {
    u.chunks(2).fold(r.zero(), |acc, p| r.add(&acc, &r.mul(&p[0], &p[1])))
}

/// `alpha^T F alpha = F`.
pub fn is_in_group<R: Ring>(r: &R, f: FormKind, a: &Matrix<R::Elem>) -> bool {
    if a.nrows() != f.size() || !a.is_square() {
        return false;
    }
    let form = standard_form(r, f);
    matrix::mul(r, &matrix::mul(r, &a.transpose(), &form), a) == form
}

/// `F^-1 = F^T` for both standard forms, so `alpha^-1 = F^T alpha^T F` on
/// group elements.
pub fn group_inverse<R: Ring>(r: &R, f: FormKind, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let form = standard_form(r, f);
    matrix::mul(r, &matrix::mul(r, &form.transpose(), &a.transpose()), &form)
}

/// One elementary generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Token<E> {
    /// `se_ij` / `oe_ij`.
    Ge { i: usize, j: usize, lam: E },
    /// `Id + l e_{i, sigma(i)}` (symplectic only).
    SeShort { i: usize, lam: E },
}

impl<E: Clone> Token<E> {
    pub fn ge(i: usize, j: usize, lam: E) -> Self {
        Token::Ge { i, j, lam }
    }

    pub fn se(i: usize, lam: E) -> Self {
        Token::SeShort { i, lam }
    }

    pub fn param(&self) -> &E {
        match self {
            Token::Ge { lam, .. } | Token::SeShort { lam, .. } => lam,
        }
    }

    pub fn with_param<F>(&self, lam: F) -> Token<F> {
        match self {
            Token::Ge { i, j, .. } => Token::Ge { i: *i, j: *j, lam },
            Token::SeShort { i, .. } => Token::SeShort { i: *i, lam },
        }
    }

    pub fn map<F>(&self, f: impl Fn(&E) -> F) -> Token<F> {
        self.with_param(f(self.param()))
    }
}

pub fn validate_token<E>(f: FormKind, t: &Token<E>) -> Result<(), GroupError> {
    let size = f.size();
    match t {
        Token::Ge { i, j, .. } => {
            if !(1..=size).contains(i) || !(1..=size).contains(j) {
                return Err(GroupError::InvalidToken(format!("indices ({i}, {j}) out of range 1..={size}")));
            }
            if i == j || sigma(*i) == *j {
                return Err(GroupError::InvalidToken(format!("ge({i}, {j}) needs i != j and sigma(i) != j")));
            }
        }
        Token::SeShort { i, .. } => {
            if !f.is_symplectic() {
                return Err(GroupError::InvalidToken("the short-root generator is symplectic only".into()));
            }
            if !(1..=size).contains(i) {
                return Err(GroupError::InvalidToken(format!("index {i} out of range 1..={size}")));
            }
        }
    }
    Ok(())
}

pub fn token_matrix<R: Ring>(r: &R, f: FormKind, t: &Token<R::Elem>) -> Result<Matrix<R::Elem>, GroupError> {
    validate_token(f, t)?;
    let mut m = matrix::identity(r, f.size());
    match t {
        Token::Ge { i, j, lam } => {
            m.set(i - 1, j - 1, lam.clone());
            let v = if f.sign(*i, *j) == 1 { r.neg(lam) } else { lam.clone() };
            m.set(sigma(*j) - 1, sigma(*i) - 1, v);
        }
        Token::SeShort { i, lam } => m.set(i - 1, sigma(*i) - 1, lam.clone()),
    }
    Ok(m)
}

/// `u . token`, computed directly from the two affected coordinates.
pub fn apply_token<R: Ring>(r: &R, f: FormKind, u: &mut [R::Elem], t: &Token<R::Elem>) {
    match t {
        Token::Ge { i, j, lam } => {
            let (i, j) = (*i, *j);
            let ui = u[i - 1].clone();
            let usj = u[sigma(j) - 1].clone();
            u[j - 1] = r.add(&u[j - 1], &r.mul(lam, &ui));
            let delta = r.mul(lam, &usj);
            u[sigma(i) - 1] = if f.sign(i, j) == 1 {
                r.sub(&u[sigma(i) - 1], &delta)
            } else {
                r.add(&u[sigma(i) - 1], &delta)
            };
        }
        Token::SeShort { i, lam } => {
            let ui = u[i - 1].clone();
            u[sigma(*i) - 1] = r.add(&u[sigma(*i) - 1], &r.mul(lam, &ui));
        }
    }
}

/// An item of a word: a generator, or `by^-1 . core . by`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WordItem<E> {
    Token(Token<E>),
    Conjugate { core: Vec<WordItem<E>>, by: Vec<WordItem<E>> },
}

impl<E: Clone> WordItem<E> {
    pub fn depth(&self) -> usize {
        match self {
            WordItem::Token(_) => 0,
            WordItem::Conjugate { core, .. } => 1 + core.iter().map(WordItem::depth).max().unwrap_or(0),
        }
    }

    /// `by^-1 . core . by` as a list of items with nesting capped at 2. When
    /// the plain conjugate would nest deeper it is distributed over the core,
    /// and a core item `h^-1 c h` becomes `(h by)^-1 c (h by)`.
    pub fn conjugate(core: Vec<WordItem<E>>, by: Vec<WordItem<E>>) -> Vec<Self> {
        let item = WordItem::Conjugate { core, by };
        if item.depth() <= 2 {
            return vec![item];
        }
        let WordItem::Conjugate { core, by } = item else { unreachable!() };
        core.into_iter()
            .flat_map(|c| match c {
                WordItem::Conjugate { core: inner, by: h } => {
                    let mut hg = h;
                    hg.extend(by.iter().cloned());
                    WordItem::conjugate(inner, hg)
                }
                t => vec![WordItem::Conjugate { core: vec![t], by: by.clone() }],
            })
            .collect()
    }

    pub fn inverse(&self, neg: &impl Fn(&E) -> E) -> Self {
        match self {
            WordItem::Token(t) => WordItem::Token(t.map(neg)),
            WordItem::Conjugate { core, by } => WordItem::Conjugate { core: invert_items(core, neg), by: by.clone() },
        }
    }

    pub fn map<F: Clone>(&self, f: &impl Fn(&E) -> F) -> WordItem<F> {
        match self {
            WordItem::Token(t) => WordItem::Token(t.map(f)),
            WordItem::Conjugate { core, by } => WordItem::Conjugate {
                core: core.iter().map(|c| c.map(f)).collect(),
                by: by.iter().map(|c| c.map(f)).collect(),
            },
        }
    }

    pub fn try_map<F: Clone, X>(&self, f: &impl Fn(&E) -> Result<F, X>) -> Result<WordItem<F>, X> {
        Ok(match self {
            WordItem::Token(t) => WordItem::Token(t.with_param(f(t.param())?)),
            WordItem::Conjugate { core, by } => WordItem::Conjugate {
                core: core.iter().map(|c| c.try_map(f)).collect::<Result<_, _>>()?,
                by: by.iter().map(|c| c.try_map(f)).collect::<Result<_, _>>()?,
            },
        })
    }

    /// Visits every token, in order, including those inside conjugates.
    pub fn for_each_token(&self, visit: &mut impl FnMut(&Token<E>)) {
        match self {
            WordItem::Token(t) => visit(t),
            WordItem::Conjugate { core, by } => {
                for c in core.iter().chain(by) {
                    c.for_each_token(visit);
                }
            }
        }
    }
}

fn expand_items<E: Clone>(items: &[WordItem<E>], neg: &impl Fn(&E) -> E, out: &mut Vec<Token<E>>) {
    for it in items {
        match it {
            WordItem::Token(t) => out.push(t.clone()),
            WordItem::Conjugate { core, by } => {
                expand_items(&invert_items(by, neg), neg, out);
                expand_items(core, neg, out);
                expand_items(by, neg, out);
            }
        }
    }
}

pub fn invert_items<E: Clone>(items: &[WordItem<E>], neg: &impl Fn(&E) -> E) -> Vec<WordItem<E>> {
    items.iter().rev().map(|it| it.inverse(neg)).collect()
}

/// A word over a fixed form, read left to right as a matrix product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord<E> {
    pub form: FormKind,
    pub items: Vec<WordItem<E>>,
}

impl<E: Clone> GroupWord<E> {
    pub fn empty(form: FormKind) -> Self {
        GroupWord { form, items: Vec::new() }
    }

    pub fn from_tokens(form: FormKind, tokens: Vec<Token<E>>) -> Self {
        GroupWord { form, items: tokens.into_iter().map(WordItem::Token).collect() }
    }

    pub fn push(&mut self, t: Token<E>) {
        self.items.push(WordItem::Token(t));
    }

    pub fn extend(&mut self, other: GroupWord<E>) {
        self.items.extend(other.items);
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn depth(&self) -> usize {
        self.items.iter().map(WordItem::depth).max().unwrap_or(0)
    }

    pub fn inverse(&self, neg: impl Fn(&E) -> E) -> Self {
        GroupWord { form: self.form, items: invert_items(&self.items, &neg) }
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> GroupWord<F> {
        GroupWord { form: self.form, items: self.items.iter().map(|i| i.map(&f)).collect() }
    }

    pub fn try_map<F: Clone, X>(&self, f: impl Fn(&E) -> Result<F, X>) -> Result<GroupWord<F>, X> {
        Ok(GroupWord { form: self.form, items: self.items.iter().map(|i| i.try_map(&f)).collect::<Result<_, _>>()? })
    }

    pub fn token_count(&self) -> usize {
        let mut n = 0;
        for it in &self.items {
            it.for_each_token(&mut |_| n += 1);
        }
        n
    }

    /// The same element as a flat token sequence, with every conjugate
    /// written out as `by^-1 core by`.
    pub fn expand(&self, neg: impl Fn(&E) -> E) -> Vec<Token<E>> {
        let mut out = Vec::new();
        expand_items(&self.items, &neg, &mut out);
        out
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let mut err = None;
        for it in &self.items {
            it.for_each_token(&mut |t| {
                if err.is_none() {
                    err = validate_token(self.form, t).err();
                }
            });
        }
        err.map_or(Ok(()), Err)
    }
}

fn items_matrix<R: Ring>(r: &R, f: FormKind, items: &[WordItem<R::Elem>]) -> Result<Matrix<R::Elem>, GroupError> {
    let mut acc = matrix::identity(r, f.size());
    for it in items {
        let m = match it {
            WordItem::Token(t) => token_matrix(r, f, t)?,
            WordItem::Conjugate { core, by } => {
                let g = items_matrix(r, f, by)?;
                let g_inv = items_matrix(r, f, &invert_items(by, &|x| r.neg(x)))?;
                let v = items_matrix(r, f, core)?;
                matrix::mul(r, &matrix::mul(r, &g_inv, &v), &g)
            }
        };
        acc = matrix::mul(r, &acc, &m);
    }
    Ok(acc)
}

pub fn word_matrix<R: Ring>(r: &R, w: &GroupWord<R::Elem>) -> Result<Matrix<R::Elem>, GroupError> {
    items_matrix(r, w.form, &w.items)
}

fn apply_items<R: Ring>(r: &R, f: FormKind, u: &mut [R::Elem], items: &[WordItem<R::Elem>]) -> Result<(), GroupError> {
    for it in items {
        match it {
            WordItem::Token(t) => {
                validate_token(f, t)?;
                apply_token(r, f, u, t);
            }
            WordItem::Conjugate { core, by } => {
                apply_items(r, f, u, &invert_items(by, &|x| r.neg(x)))?;
                apply_items(r, f, u, core)?;
                apply_items(r, f, u, by)?;
            }
        }
    }
    Ok(())
}

/// `u . word_matrix(w)`.
pub fn act_on_row<R: Ring>(r: &R, u: &[R::Elem], w: &GroupWord<R::Elem>) -> Result<Vec<R::Elem>, GroupError> {
    check_row(w.form, u)?;
    let mut v = u.to_vec();
    apply_items(r, w.form, &mut v, &w.items)?;
    Ok(v)
}

fn core_in_ideal<R: Ring>(r: &R, items: &[WordItem<R::Elem>], ideal: &IdealDescriptor) -> Result<bool, GroupError> {
    for it in items {
        let ok = match it {
            WordItem::Token(t) => r.in_ideal(ideal, t.param())?,
            WordItem::Conjugate { core, .. } => core_in_ideal(r, core, ideal)?,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Structural membership in `E(2n, R, I)`: bare tokens and conjugated cores
/// carry parameters in `I`; conjugating words are unrestricted.
pub fn word_in_relative_subgroup<R: Ring>(
    r: &R,
    w: &GroupWord<R::Elem>,
    ideal: &IdealDescriptor,
) -> Result<bool, GroupError> {
    core_in_ideal(r, &w.items, ideal)
}

/// Entrywise `a = Id mod I`.
pub fn congruent_to_identity<R: Ring>(r: &R, a: &Matrix<R::Elem>, ideal: &IdealDescriptor) -> Result<bool, GroupError> {
    for (i, row) in a.rows().iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let d = if i == j { r.sub(x, &r.one()) } else { x.clone() };
            if !r.in_ideal(ideal, &d)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The unit row `e_k` (1-based).
pub fn unit_row<R: Ring>(r: &R, size: usize, k: usize) -> Vec<R::Elem> {
    (0..size).map(|i| if i + 1 == k { r.one() } else { r.zero() }).collect()
}

/// Every valid generator shape for a form, as `(i, j)` pairs for `ge` and
/// `(i, 0)` for the short generator.
pub fn token_shapes(f: FormKind) -> Vec<(usize, usize)> {
    let size = f.size();
    let mut out = Vec::new();
    for i in 1..=size {
        for j in 1..=size {
            if i != j && sigma(i) != j {
                out.push((i, j));
            }
        }
        if f.is_symplectic() {
            out.push((i, 0));
        }
    }
    out
}

pub fn token_from_shape<E: Clone>(shape: (usize, usize), lam: E) -> Token<E> {
    match shape {
        (i, 0) => Token::se(i, lam),
        (i, j) => Token::ge(i, j, lam),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_rings::{RingDescriptor, Scalar};

    fn z7() -> RingDescriptor {
        RingDescriptor::integers_mod(7).unwrap()
    }

    #[test]
    fn forms() {
        let r = RingDescriptor::Integers;
        let s = standard_form(&r, FormKind::symplectic(1));
        assert_eq!(s.rows(), &[vec![r.int(0), r.int(1)], vec![r.int(-1), r.int(0)]]);
        let o = standard_form(&r, FormKind::orthogonal(1));
        assert_eq!(o.rows(), &[vec![r.int(0), r.int(1)], vec![r.int(1), r.int(0)]]);
        let s2 = standard_form(&r, FormKind::symplectic(2));
        assert_eq!(s2, matrix::direct_sum(&r, &s, &s));
    }

    #[test]
    fn inner_products() {
        let r = RingDescriptor::Integers;
        let f = FormKind::symplectic(2);
        let e1 = unit_row(&r, 4, 1);
        let e2 = unit_row(&r, 4, 2);
        assert_eq!(inner_product(&r, f, &e1, &e2).unwrap(), r.int(1));
        let u = vec![r.int(3), r.int(-2), r.int(5), r.int(7)];
        assert_eq!(inner_product(&r, f, &u, &u).unwrap(), r.int(0));
        assert_eq!(inner_product(&r, FormKind::orthogonal(2), &e1, &e2).unwrap(), r.int(1));
        assert!(inner_product(&r, f, &e1, &e1[..2]).is_err());
    }

    #[test]
    fn explicit_token_matrices() {
        let r = RingDescriptor::Integers;
        let lam = r.int(5);
        for f in [FormKind::symplectic(2), FormKind::orthogonal(2)] {
            let m = token_matrix(&r, f, &Token::ge(1, 3, lam.clone())).unwrap();
            let mut want = matrix::identity(&r, 4);
            want.set(0, 2, r.int(5));
            want.set(3, 1, r.int(-5));
            assert_eq!(m, want);
        }
        let zero = token_matrix(&r, FormKind::symplectic(2), &Token::ge(2, 4, r.int(0))).unwrap();
        assert!(matrix::is_identity(&r, &zero));
    }

    #[test]
    fn sign_table_for_size_four() {
        // (-1)^{i+j} is -1 exactly when i and j have different parity.
        let r = RingDescriptor::Integers;
        let f = FormKind::symplectic(2);
        for (i, j) in token_shapes(f).into_iter().filter(|s| s.1 != 0) {
            let m = token_matrix(&r, f, &Token::ge(i, j, r.int(1))).unwrap();
            let expected = if (i + j) % 2 == 0 { r.int(-1) } else { r.int(1) };
            assert_eq!(m.get(sigma(j) - 1, sigma(i) - 1), &expected, "ge({i},{j})");
            assert!(is_in_group(&r, f, &m));
        }
    }

    #[test]
    fn invalid_tokens() {
        let f = FormKind::orthogonal(2);
        assert!(validate_token(f, &Token::ge(1, 2, 0)).is_err());
        assert!(validate_token(f, &Token::ge(1, 1, 0)).is_err());
        assert!(validate_token(f, &Token::ge(1, 5, 0)).is_err());
        assert!(validate_token(f, &Token::se(1, 0)).is_err());
        assert!(validate_token(FormKind::symplectic(2), &Token::se(1, 0)).is_ok());
    }

    #[test]
    fn group_membership() {
        let r = RingDescriptor::Rationals;
        let f = FormKind::symplectic(2);
        assert!(is_in_group(&r, f, &matrix::identity(&r, 4)));
        let mut d = matrix::identity(&r, 4);
        d.set(0, 0, r.int(2));
        assert!(!is_in_group(&r, f, &d));
    }

    #[test]
    fn words_and_rows_agree() {
        let r = z7();
        let f = FormKind::symplectic(2);
        let g = vec![WordItem::Token(Token::ge(2, 3, r.int(4))), WordItem::Token(Token::se(4, r.int(2)))];
        let w = GroupWord {
            form: f,
            items: vec![
                WordItem::Token(Token::ge(1, 3, r.int(3))),
                WordItem::Conjugate { core: vec![WordItem::Token(Token::ge(4, 1, r.int(5)))], by: g },
                WordItem::Token(Token::se(2, r.int(6))),
            ],
        };
        let m = word_matrix(&r, &w).unwrap();
        assert!(is_in_group(&r, f, &m));
        let u = vec![r.int(1), r.int(2), r.int(3), r.int(4)];
        assert_eq!(act_on_row(&r, &u, &w).unwrap(), matrix::row_times(&r, &u, &m));
        let inv = w.inverse(|x| r.neg(x));
        let both = GroupWord { form: f, items: [w.items.clone(), inv.items].concat() };
        assert!(matrix::is_identity(&r, &word_matrix(&r, &both).unwrap()));
    }

    #[test]
    fn relative_structure() {
        let r = RingDescriptor::integers_mod(25).unwrap();
        let ideal = IdealDescriptor::new(&r, vec![Scalar::Mod(5)]).unwrap();
        let f = FormKind::symplectic(2);
        let bare_in = GroupWord::from_tokens(f, vec![Token::ge(1, 3, r.int(10))]);
        assert!(word_in_relative_subgroup(&r, &bare_in, &ideal).unwrap());
        let conj = GroupWord {
            form: f,
            items: WordItem::conjugate(
                vec![WordItem::Token(Token::ge(1, 3, r.int(5)))],
                vec![WordItem::Token(Token::ge(2, 4, r.int(7)))],
            ),
        };
        assert!(word_in_relative_subgroup(&r, &conj, &ideal).unwrap());
        assert!(congruent_to_identity(&r, &word_matrix(&r, &conj).unwrap(), &ideal).unwrap());
        let bare_out = GroupWord::from_tokens(f, vec![Token::ge(1, 3, r.int(3))]);
        assert!(!word_in_relative_subgroup(&r, &bare_out, &ideal).unwrap());
    }

    #[test]
    fn deep_conjugates_are_flattened() {
        let r = z7();
        let f = FormKind::symplectic(2);
        let t = |i, j, v| WordItem::Token(Token::ge(i, j, r.int(v)));
        let inner = WordItem::Conjugate { core: vec![t(1, 3, 2)], by: vec![t(2, 4, 3)] };
        let mid = WordItem::Conjugate { core: vec![inner], by: vec![t(3, 1, 1)] };
        let deep = WordItem::conjugate(vec![mid.clone(), t(1, 4, 1)], vec![t(4, 2, 5)]);
        assert!(deep.iter().all(|d| d.depth() <= 2));
        let raw = WordItem::Conjugate { core: vec![mid, t(1, 4, 1)], by: vec![t(4, 2, 5)] };
        let a = word_matrix(&r, &GroupWord { form: f, items: deep }).unwrap();
        let b = word_matrix(&r, &GroupWord { form: f, items: vec![raw] }).unwrap();
        assert_eq!(a, b);
    }
}
