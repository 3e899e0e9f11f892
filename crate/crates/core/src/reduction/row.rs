use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff_rings::{IdealDescriptor, RingDescriptor, Scalar};
use crate::groups::{self, FormKind, FormType};
use crate::linsolve;
use crate::monoid_ring::{MonoidRing, Poly};
use crate::ring::Ring;

use super::ReductionError;

/// A row of length `2n` together with optional unimodularity and relative
/// data.
#[derive(Clone, Debug, PartialEq)]
pub struct UnimodularRow<E> {
    pub form: FormKind,
    pub entries: Vec<E>,
    pub witness: Option<Vec<E>>,
    pub relative_ideal: Option<IdealDescriptor>,
}

impl<E: Clone> UnimodularRow<E> {
    pub fn new(form: FormKind, entries: Vec<E>) -> Result<Self, ReductionError> {
        if entries.len() != form.size() {
            return Err(groups::GroupError::SizeMismatch { expected: form.size(), got: entries.len() }.into());
        }
        Ok(UnimodularRow { form, entries, witness: None, relative_ideal: None })
    }

    /// Attaches a witness after checking `sum u_i s_i = 1`.
    pub fn with_witness<R: Ring<Elem = E>>(mut self, r: &R, s: Vec<E>) -> Result<Self, ReductionError> {
        if s.len() != self.entries.len() || !r.is_one(&r.dot(&self.entries, &s)) {
            return Err(ReductionError::Precondition("witness does not pair to 1".into()));
        }
        self.witness = Some(s);
        Ok(self)
    }

    /// Attaches a relative ideal after checking `u = e_1 mod I`.
    pub fn with_relative_ideal<R: Ring<Elem = E>>(
        mut self,
        r: &R,
        ideal: IdealDescriptor,
    ) -> Result<Self, ReductionError> {
        check_congruent_e1(r, &self.entries, &ideal)?;
        self.relative_ideal = Some(ideal);
        Ok(self)
    }

    pub fn check_isotropic<R: Ring<Elem = E>>(&self, r: &R) -> Result<(), ReductionError> {
        check_isotropy(r, self.form, &self.entries)
    }
}

pub(crate) fn check_isotropy<R: Ring>(r: &R, form: FormKind, u: &[R::Elem]) -> Result<(), ReductionError> {
    if form.kind == FormType::Orthogonal && !r.is_zero(&groups::quadratic_value(r, u)) {
        return Err(ReductionError::Isotropy);
    }
    Ok(())
}

pub(crate) fn check_size<E>(form: FormKind, u: &[E]) -> Result<(), ReductionError> {
    if u.len() != form.size() {
        return Err(groups::GroupError::SizeMismatch { expected: form.size(), got: u.len() }.into());
    }
    if form.n < 2 {
        return Err(ReductionError::TooSmall(form.size()));
    }
    Ok(())
}

pub(crate) fn check_congruent_e1<R: Ring>(r: &R, u: &[R::Elem], ideal: &IdealDescriptor) -> Result<(), ReductionError> {
    for (k, x) in u.iter().enumerate() {
        let d = if k == 0 { r.sub(x, &r.one()) } else { x.clone() };
        if !r.in_ideal(ideal, &d)? {
            return Err(ReductionError::Precondition(format!("entry {} is not congruent to e_1 mod I", k + 1)));
        }
    }
    Ok(())
}

/// Carriers that can search for a unimodularity witness.
pub trait WitnessSearch: Ring {
    /// The degree bound used when the caller gives none.
    fn default_bound(&self, _u: &[Self::Elem]) -> i64 {
        0
    }

    /// A row `s` with `sum u_i s_i = 1`, searched up to `bound`; `None` does
    /// not certify that `u` is not unimodular unless the carrier is a
    /// coefficient ring.
    fn search_witness(&self, u: &[Self::Elem], bound: i64) -> Result<Option<Vec<Self::Elem>>, ReductionError>;
}

/// Bounded witness search; every returned witness has been checked.
pub fn check_unimodular<R: WitnessSearch>(
    r: &R,
    u: &[R::Elem],
    bound: Option<i64>,
) -> Result<Option<Vec<R::Elem>>, ReductionError> {
    let b = bound.unwrap_or_else(|| r.default_bound(u));
    let s = r.search_witness(u, b)?;
    if let Some(s) = &s {
        if !r.is_one(&r.dot(u, s)) {
            return Err(ReductionError::Replay("witness search".into()));
        }
    }
    Ok(s)
}

fn bigint(s: &Scalar) -> &BigInt {
    match s {
        Scalar::Int(v) => v,
        _ => unreachable!("integer payload expected"),
    }
}

impl WitnessSearch for RingDescriptor {
    fn search_witness(&self, u: &[Scalar], _bound: i64) -> Result<Option<Vec<Scalar>>, ReductionError> {
        let mut s = vec![self.zero(); u.len()];
        match self {
            RingDescriptor::Rationals => {
                let Some(k) = u.iter().position(|x| !self.is_zero(x)) else { return Ok(None) };
                s[k] = self.inverse(&u[k]).unwrap();
                Ok(Some(s))
            }
            RingDescriptor::Integers => {
                // Running combination g = sum u_i s_i with g = gcd so far.
                let mut g = BigInt::zero();
                for (k, x) in u.iter().enumerate() {
                    let e = g.extended_gcd(bigint(x));
                    for v in s.iter_mut().take(k) {
                        *v = Scalar::Int(bigint(v) * &e.x);
                    }
                    s[k] = Scalar::Int(e.y.clone());
                    g = e.gcd;
                }
                if !g.abs().is_one() {
                    return Ok(None);
                }
                if g.is_negative() {
                    s = s.iter().map(|v| self.neg(v)).collect();
                }
                Ok(Some(s))
            }
            RingDescriptor::IntegersMod(n) => {
                let a = vec![u.iter().map(|x| x.as_mod().unwrap()).collect::<Vec<u64>>()];
                Ok(linsolve::solve_mod(&a, &[1], *n).map(|x| x.into_iter().map(Scalar::Mod).collect()))
            }
            RingDescriptor::Excision { .. } => {
                // Each corner R e is local, so a unimodular row has an entry
                // invertible there.
                let idems = self.local_idempotents().ok_or_else(|| {
                    ReductionError::Unsupported(format!("witness search over {}", self.describe()))
                })?;
                for e in idems {
                    let one_minus_e = self.sub(&self.one(), &e);
                    let found = u.iter().enumerate().find_map(|(k, x)| {
                        let shifted = self.add(&self.mul(x, &e), &one_minus_e);
                        self.inverse(&shifted).map(|inv| (k, self.mul(&inv, &e)))
                    });
                    let Some((k, v)) = found else { return Ok(None) };
                    s[k] = self.add(&s[k], &v);
                }
                Ok(Some(s))
            }
        }
    }
}

impl WitnessSearch for MonoidRing<RingDescriptor> {
    /// Twice the largest support degree of the row.
    fn default_bound(&self, u: &[Poly<Scalar>]) -> i64 {
        2 * u.iter().filter_map(Poly::support_degree).max().unwrap_or(0)
    }

    fn search_witness(&self, u: &[Poly<Scalar>], bound: i64) -> Result<Option<Vec<Poly<Scalar>>>, ReductionError> {
        let members = self.members_up_to(bound)?;
        let unknowns: Vec<(usize, &Vec<i64>)> =
            (0..u.len()).flat_map(|i| members.iter().map(move |m| (i, m))).collect();
        let mut eq_index: HashMap<Vec<i64>, usize> = HashMap::new();
        eq_index.insert(self.zero_exp(), 0);
        // (equation, unknown, coefficient)
        let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
        for (col, (i, m)) in unknowns.iter().enumerate() {
            for (e, c) in u[*i].terms() {
                let sum: Vec<i64> = e.iter().zip(m.iter()).map(|(a, b)| a + b).collect();
                let next = eq_index.len();
                let row = *eq_index.entry(sum).or_insert(next);
                entries.push((row, col, c.clone()));
            }
        }
        let rows = eq_index.len();
        let cols = unknowns.len();
        let coeffs = self.coeffs();
        let solution: Option<Vec<Scalar>> = match coeffs {
            RingDescriptor::IntegersMod(n) => {
                let mut a = vec![vec![0u64; cols]; rows];
                for (r, c, v) in &entries {
                    a[*r][*c] = crate::arith::add_mod(a[*r][*c], v.as_mod().unwrap(), *n);
                }
                let mut b = vec![0u64; rows];
                b[0] = 1;
                linsolve::solve_mod(&a, &b, *n).map(|x| x.into_iter().map(Scalar::Mod).collect())
            }
            RingDescriptor::Rationals => {
                let mut a = vec![vec![BigRational::zero(); cols]; rows];
                for (r, c, v) in &entries {
                    let Scalar::Rat(q) = v else { unreachable!() };
                    a[*r][*c] = &a[*r][*c] + q;
                }
                let mut b = vec![BigRational::zero(); rows];
                b[0] = BigRational::one();
                linsolve::solve_rational(&a, &b).map(|x| x.into_iter().map(Scalar::Rat).collect())
            }
            other => {
                return Err(ReductionError::Unsupported(format!(
                    "witness search needs field or Z/n coefficients, got {}",
                    other.describe()
                )))
            }
        };
        let Some(x) = solution else { return Ok(None) };
        let mut s = vec![self.zero(); u.len()];
        for ((i, m), v) in unknowns.iter().zip(x) {
            let term = self.monomial_unchecked((*m).clone(), v);
            s[*i] = self.add(&s[*i], &term);
        }
        Ok(Some(s))
    }
}
