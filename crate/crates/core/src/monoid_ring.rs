//! The monoid ring `R[M]`: finite formal sums of coefficients times monoid
//! exponents, with degree/leading-term machinery, the Nagata substitution
//! and restriction to `t_1 = 0`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::coeff_rings::{IdealDescriptor, RingDescriptor};
use crate::geometry::{AffineMonoid, GeometryError};
use crate::ring::{Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidRingError {
    #[error("carrier mismatch: {0} vs {1}")]
    Mismatch(String, String),
    #[error("exponent {0:?} is not in the monoid")]
    NotMember(Vec<i64>),
    #[error("zero coefficient stored at exponent {0:?}")]
    ZeroCoefficient(Vec<i64>),
    #[error("leading term of the zero element is undefined")]
    ZeroLeadingTerm,
    #[error("unsupported monoid: {0}")]
    UnsupportedMonoid(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// An exponent vector, ordered by coordinate sum and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite sum of terms with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    terms: BTreeMap<Monomial, E>,
}

impl<E> Default for Poly<E> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<E: Clone> Poly<E> {
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i64], &E)> + '_ {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i64]) -> Option<&E> {
        self.terms.get(&Monomial(exp.to_vec()))
    }

    /// Largest coordinate sum over the support (`None` for zero).
    pub fn support_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().map(Monomial::total_degree)
    }
}

/// Linear functional giving the degree of an exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeAssignment {
    pub functional: Vec<i64>,
}

impl DegreeAssignment {
    pub fn new(functional: Vec<i64>) -> Self {
        DegreeAssignment { functional }
    }

    /// Weight of the `k`-th coordinate (0-based) on `Z^r`.
    pub fn coordinate(r: usize, k: usize) -> Self {
        DegreeAssignment { functional: (0..r).map(|j| i64::from(j == k)).collect() }
    }

    pub fn degree(&self, exp: &[i64]) -> i64 {
        self.functional.iter().zip(exp).map(|(a, b)| a * b).sum()
    }
}

/// The top-degree part of a nonzero element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm<E> {
    pub degree: i64,
    /// All terms attaining the top degree.
    pub top: Vec<(Vec<i64>, E)>,
}

impl<E: Clone> LeadingTerm<E> {
    /// The leading monomial and its coefficient, when the top degree is
    /// attained by exactly one term; `None` is the multi-term marker.
    pub fn single(&self) -> Option<(&[i64], &E)> {
        match self.top.as_slice() {
            [(m, c)] => Some((m.as_slice(), c)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonoidRing<R: Ring> {
    coeffs: R,
    monoid: Arc<AffineMonoid>,
}

impl<R: Ring> MonoidRing<R> {
    pub fn new(coeffs: R, monoid: AffineMonoid) -> Result<Self, MonoidRingError> {
        if !monoid.is_positive() {
            return Err(MonoidRingError::Geometry(GeometryError::PositivityRequired));
        }
        Ok(MonoidRing { coeffs, monoid: Arc::new(monoid) })
    }

    /// `R[t_1, ..., t_r]`.
    pub fn polynomial(coeffs: R, r: usize) -> Self {
        MonoidRing { coeffs, monoid: Arc::new(AffineMonoid::free(r)) }
    }

    pub fn coeffs(&self) -> &R {
        &self.coeffs
    }

    pub fn monoid(&self) -> &AffineMonoid {
        &self.monoid
    }

    pub fn rank(&self) -> usize {
        self.monoid.ambient_rank()
    }

    pub fn zero_exp(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    /// `c * x^exp`, checking that `exp` is in the monoid.
    pub fn monomial(&self, exp: &[i64], c: R::Elem) -> Result<Poly<R::Elem>, MonoidRingError> {
        if !self.monoid.contains(exp)? {
            return Err(MonoidRingError::NotMember(exp.to_vec()));
        }
        Ok(self.monomial_unchecked(exp.to_vec(), c))
    }

    pub(crate) fn monomial_unchecked(&self, exp: Vec<i64>, c: R::Elem) -> Poly<R::Elem> {
        let mut p = Poly::default();
        if !self.coeffs.is_zero(&c) {
            p.terms.insert(Monomial(exp), c);
        }
        p
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.monomial_unchecked(self.zero_exp(), c)
    }

    /// Builds an element from terms, merging repeated exponents, pruning
    /// zeros and checking membership.
    pub fn from_terms(&self, terms: Vec<(Vec<i64>, R::Elem)>) -> Result<Poly<R::Elem>, MonoidRingError> {
        let mut p = Poly::default();
        for (e, c) in terms {
            let m = self.monomial(&e, c)?;
            p = self.add(&p, &m);
        }
        Ok(p)
    }

    /// Checks the canonical-form invariants of an element.
    pub fn validate(&self, f: &Poly<R::Elem>) -> Result<(), MonoidRingError> {
        for (e, c) in f.terms() {
            if self.coeffs.is_zero(c) {
                return Err(MonoidRingError::ZeroCoefficient(e.to_vec()));
            }
            if !self.monoid.contains(e)? {
                return Err(MonoidRingError::NotMember(e.to_vec()));
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &R::Elem, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut out = Poly::default();
        for (m, a) in &f.terms {
            let v = self.coeffs.mul(c, a);
            if !self.coeffs.is_zero(&v) {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn shift(&self, exp: &[i64], f: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut out = Poly::default();
        for (m, a) in &f.terms {
            out.terms.insert(Monomial(m.0.iter().zip(exp).map(|(x, y)| x + y).collect()), a.clone());
        }
        out
    }

    pub fn constant_term(&self, f: &Poly<R::Elem>) -> R::Elem {
        f.coeff(&self.zero_exp()).cloned().unwrap_or_else(|| self.coeffs.zero())
    }

    pub fn leading_term(
        &self,
        f: &Poly<R::Elem>,
        d: &DegreeAssignment,
    ) -> Result<LeadingTerm<R::Elem>, MonoidRingError> {
        let degree = f.terms().map(|(e, _)| d.degree(e)).max().ok_or(MonoidRingError::ZeroLeadingTerm)?;
        let top = f.terms().filter(|(e, _)| d.degree(e) == degree).map(|(e, c)| (e.to_vec(), c.clone())).collect();
        Ok(LeadingTerm { degree, top })
    }

    /// `f` is monic in `m` when its leading term is a unit times `m^c`.
    pub fn is_monic_in(&self, f: &Poly<R::Elem>, m: &[i64], d: &DegreeAssignment) -> bool {
        let Ok(lt) = self.leading_term(f, d) else {
            return false;
        };
        let Some((exp, c)) = lt.single() else {
            return false;
        };
        self.coeffs.is_unit(c) && power_of(exp, m).is_some()
    }

    fn require_free(&self) -> Result<(), MonoidRingError> {
        if self.monoid.is_free() {
            Ok(())
        } else {
            Err(MonoidRingError::UnsupportedMonoid("operation needs the free monoid Z_+^r".into()))
        }
    }

    /// The variable `t_k` (1-based) of a polynomial ring.
    pub fn variable(&self, k: usize) -> Poly<R::Elem> {
        let mut e = self.zero_exp();
        e[k - 1] = 1;
        self.monomial_unchecked(e, self.coeffs.one())
    }

    /// Image of `f` under `t_j -> t_j + t_1^c` for `j >= 2`.
    pub fn nagata_twist(&self, f: &Poly<R::Elem>, c: u32) -> Result<Poly<R::Elem>, MonoidRingError> {
        self.require_free()?;
        let r = self.rank();
        let mut t1c = self.zero_exp();
        t1c[0] = c as i64;
        let images: Vec<Poly<R::Elem>> = (2..=r)
            .map(|j| self.add(&self.variable(j), &self.monomial_unchecked(t1c.clone(), self.coeffs.one())))
            .collect();
        let mut out = Poly::default();
        for (e, a) in f.terms() {
            let mut t1 = self.zero_exp();
            t1[0] = e[0];
            let mut term = self.monomial_unchecked(t1, a.clone());
            for j in 1..r {
                term = self.mul(&term, &self.pow(&images[j - 1], e[j] as u64));
            }
            out = self.add(&out, &term);
        }
        Ok(out)
    }

    /// Drops every term with a positive `t_1` exponent.
    pub fn evaluate_at_t1_zero(&self, f: &Poly<R::Elem>) -> Result<Poly<R::Elem>, MonoidRingError> {
        self.require_free()?;
        let mut out = Poly::default();
        for (m, a) in &f.terms {
            if m.0[0] == 0 {
                out.terms.insert(m.clone(), a.clone());
            }
        }
        Ok(out)
    }

    /// Applies a coefficient map termwise (e.g. reduction to a quotient ring).
    pub fn map_coeffs<S: Ring>(
        &self,
        target: &MonoidRing<S>,
        f: &Poly<R::Elem>,
        phi: impl Fn(&R::Elem) -> S::Elem,
    ) -> Poly<S::Elem> {
        let mut out = Poly::default();
        for (m, a) in &f.terms {
            let v = phi(a);
            if !target.coeffs.is_zero(&v) {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    /// Members of the monoid of coordinate sum at most `bound`, sorted in
    /// term order. Every generator must have positive coordinate sum.
    pub fn members_up_to(&self, bound: i64) -> Result<Vec<Vec<i64>>, MonoidRingError> {
        let gens = self.monoid.generators();
        if gens.iter().any(|g| g.iter().sum::<i64>() <= 0) {
            return Err(MonoidRingError::UnsupportedMonoid(
                "degree enumeration needs generators of positive coordinate sum".into(),
            ));
        }
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut frontier = vec![self.zero_exp()];
        seen.insert(self.zero_exp());
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| a + b).collect();
                if y.iter().sum::<i64>() <= bound && seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<Monomial> = seen.into_iter().map(Monomial).collect();
        out.sort();
        Ok(out.into_iter().map(|m| m.0).collect())
    }

    /// Drops every term of coordinate sum above `bound`.
    pub fn truncate(&self, f: &Poly<R::Elem>, bound: i64) -> Poly<R::Elem> {
        Poly { terms: f.terms.iter().filter(|(m, _)| m.total_degree() <= bound).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }
}

/// `Some(c)` with `exp = c * m` and `c >= 0`.
pub fn power_of(exp: &[i64], m: &[i64]) -> Option<i64> {
    if exp.iter().all(|&x| x == 0) {
        return Some(0);
    }
    let k = m.iter().position(|&x| x != 0)?;
    if exp[k] % m[k] != 0 {
        return None;
    }
    let c = exp[k] / m[k];
    (c > 0 && exp.iter().zip(m).all(|(a, b)| *a == c * b)).then_some(c)
}

impl<R: Ring> Ring for MonoidRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::default()
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.coeffs.one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.coeffs.from_int(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            match out.terms.get_mut(m) {
                Some(v) => {
                    let s = self.coeffs.add(v, c);
                    if self.coeffs.is_zero(&s) {
                        out.terms.remove(m);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    out.terms.insert(m.clone(), c.clone());
                }
            }
        }
        out
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly { terms: a.terms.iter().map(|(m, c)| (m.clone(), self.coeffs.neg(c))).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut acc: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
                let p = self.coeffs.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = self.coeffs.add(v, &p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        acc.retain(|_, v| !self.coeffs.is_zero(v));
        Poly { terms: acc }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }

    /// For a positive monoid, `f` is a unit iff its constant term is a unit
    /// and every other coefficient is nilpotent; the inverse is then a
    /// terminating geometric series.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let c0 = self.constant_term(a);
        let c0_inv = self.coeffs.inverse(&c0)?;
        if a.terms().any(|(e, c)| e.iter().any(|&x| x != 0) && !self.coeffs.is_nilpotent(c)) {
            return None;
        }
        // a = c0 (1 + n) with n nilpotent.
        let n = self.add(&self.scale(&c0_inv, a), &self.neg(&self.one()));
        let mut sum = self.one();
        let mut power = self.one();
        let neg_n = self.neg(&n);
        loop {
            power = self.mul(&power, &neg_n);
            if self.is_zero(&power) {
                break;
            }
            sum = self.add(&sum, &power);
        }
        Some(self.scale(&c0_inv, &sum))
    }

    fn is_field(&self) -> bool {
        false
    }

    fn characteristic(&self) -> u64 {
        self.coeffs.characteristic()
    }

    /// `J(R[M]) = nil(R)[M]` for a cancellative torsion-free monoid.
    fn in_jacobson_radical(&self, a: &Self::Elem) -> Result<bool, RingError> {
        Ok(a.terms().all(|(_, c)| self.coeffs.is_nilpotent(c)))
    }

    fn is_nilpotent(&self, a: &Self::Elem) -> bool {
        a.terms().all(|(_, c)| self.coeffs.is_nilpotent(c))
    }

    fn in_ideal(&self, ideal: &IdealDescriptor, a: &Self::Elem) -> Result<bool, RingError> {
        for (_, c) in a.terms() {
            if !self.coeffs.in_ideal(ideal, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn describe(&self) -> String {
        let gens: Vec<String> = self.monoid.generators().iter().map(|g| format!("{g:?}")).collect();
        format!("{}[<{}>]", self.coeffs.describe(), gens.join(", "))
    }
}

/// An element of `R[M]` tagged with its carrier, for the checked API.
#[derive(Clone, Debug, PartialEq)]
pub struct MonoidRingElement {
    ring: MonoidRing<RingDescriptor>,
    poly: Poly<crate::coeff_rings::Scalar>,
}

impl MonoidRingElement {
    pub fn new(
        ring: MonoidRing<RingDescriptor>,
        poly: Poly<crate::coeff_rings::Scalar>,
    ) -> Result<Self, MonoidRingError> {
        ring.validate(&poly)?;
        Ok(MonoidRingElement { ring, poly })
    }

    pub fn ring(&self) -> &MonoidRing<RingDescriptor> {
        &self.ring
    }

    pub fn poly(&self) -> &Poly<crate::coeff_rings::Scalar> {
        &self.poly
    }

    fn same(&self, other: &Self) -> Result<(), MonoidRingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(MonoidRingError::Mismatch(self.ring.describe(), other.ring.describe()))
        }
    }
}

pub fn mr_add(f: &MonoidRingElement, g: &MonoidRingElement) -> Result<MonoidRingElement, MonoidRingError> {
    f.same(g)?;
    Ok(MonoidRingElement { poly: f.ring.add(&f.poly, &g.poly), ring: f.ring.clone() })
}

pub fn mr_mul(f: &MonoidRingElement, g: &MonoidRingElement) -> Result<MonoidRingElement, MonoidRingError> {
    f.same(g)?;
    Ok(MonoidRingElement { poly: f.ring.mul(&f.poly, &g.poly), ring: f.ring.clone() })
}

type MonomialPredicate = dyn Fn(&[i64]) -> bool + Send + Sync;
type TiltFunction = dyn Fn(&[i64]) -> u64 + Send + Sync;

/// A subalgebra `T` of `R[t_1, ..., t_r]` spanned by monomials, with a tilt
/// exponent `p_m` such that `t_1^p m` is in `T` for every `p >= p_m`.
#[derive(Clone)]
pub struct TiltedAlgebraDescriptor {
    pub ambient_rank: usize,
    membership: Arc<MonomialPredicate>,
    tilt_exponent: Arc<TiltFunction>,
}

impl fmt::Debug for TiltedAlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TiltedAlgebraDescriptor").field("ambient_rank", &self.ambient_rank).finish_non_exhaustive()
    }
}

impl TiltedAlgebraDescriptor {
    pub fn new(
        ambient_rank: usize,
        membership: impl Fn(&[i64]) -> bool + Send + Sync + 'static,
        tilt_exponent: impl Fn(&[i64]) -> u64 + Send + Sync + 'static,
    ) -> Self {
        TiltedAlgebraDescriptor { ambient_rank, membership: Arc::new(membership), tilt_exponent: Arc::new(tilt_exponent) }
    }

    /// The whole polynomial ring.
    pub fn everything(ambient_rank: usize) -> Self {
        Self::new(ambient_rank, |_| true, |_| 0)
    }

    /// Monomials whose `t_1` exponent dominates every other exponent.
    pub fn dominated(ambient_rank: usize) -> Self {
        Self::new(
            ambient_rank,
            |e| e[1..].iter().all(|&x| e[0] >= x),
            |e| e[1..].iter().map(|&x| (x - e[0]).max(0) as u64).max().unwrap_or(0),
        )
    }

    pub fn contains(&self, exp: &[i64]) -> bool {
        (self.membership)(exp)
    }

    pub fn tilt_exponent(&self, exp: &[i64]) -> u64 {
        (self.tilt_exponent)(exp)
    }

    /// Checks the tilting property on the given monomials for `p` in
    /// `p_m .. p_m + extra`.
    pub fn spot_check(&self, samples: &[Vec<i64>], extra: u64) -> bool {
        samples.iter().all(|m| {
            let p0 = self.tilt_exponent(m);
            (p0..p0 + extra).all(|p| {
                let mut e = m.clone();
                e[0] += p as i64;
                self.contains(&e)
            })
        })
    }
}

/// Every monomial of `f` lies in `T`.
pub fn tilted_membership<R: Ring>(t: &TiltedAlgebraDescriptor, f: &Poly<R::Elem>) -> bool {
    f.terms().all(|(e, _)| e.len() == t.ambient_rank && t.contains(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff_rings::Scalar;
    use num_rational::BigRational;

    fn zmod(n: u64) -> RingDescriptor {
        RingDescriptor::integers_mod(n).unwrap()
    }

    fn poly(r: &MonoidRing<RingDescriptor>, terms: &[(&[i64], i64)]) -> Poly<Scalar> {
        r.from_terms(terms.iter().map(|(e, c)| (e.to_vec(), r.coeffs().int(*c))).collect()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = MonoidRing::polynomial(RingDescriptor::Rationals, 2);
        let x = r.variable(1);
        let y = r.variable(2);
        let lhs = r.mul(&r.add(&x, &y), &r.sub(&x, &y));
        assert_eq!(lhs, poly(&r, &[(&[2, 0], 1), (&[0, 2], -1)]));
        assert!(r.is_zero(&r.mul(&lhs, &r.zero())));
    }

    #[test]
    fn numerical_semigroup_ring_mod_4() {
        let m = AffineMonoid::new(vec![vec![2], vec![3]]).unwrap();
        let r = MonoidRing::new(zmod(4), m).unwrap();
        let f = poly(&r, &[(&[0], 1), (&[2], 2)]);
        let g = poly(&r, &[(&[0], 1), (&[3], 2)]);
        assert_eq!(r.mul(&f, &g), poly(&r, &[(&[0], 1), (&[2], 2), (&[3], 2)]));
        assert!(matches!(r.monomial(&[1], Scalar::Mod(1)), Err(MonoidRingError::NotMember(_))));
    }

    #[test]
    fn checked_api_rejects_mismatch() {
        let a = MonoidRing::polynomial(zmod(4), 1);
        let b = MonoidRing::polynomial(zmod(5), 1);
        let f = MonoidRingElement::new(a.clone(), a.one()).unwrap();
        let g = MonoidRingElement::new(b.clone(), b.one()).unwrap();
        assert!(matches!(mr_add(&f, &g), Err(MonoidRingError::Mismatch(..))));
        assert_eq!(mr_mul(&f, &f).unwrap().poly(), &a.one());
    }

    #[test]
    fn leading_terms() {
        let r = MonoidRing::polynomial(RingDescriptor::Rationals, 2);
        let d = DegreeAssignment::new(vec![3, 1]);
        let m = poly(&r, &[(&[1, 0], 1)]);
        let lt = r.leading_term(&m, &d).unwrap();
        assert_eq!(lt.degree, 3);
        assert_eq!(lt.single().unwrap().0, &[1, 0]);
        let tie = poly(&r, &[(&[1, 0], 2), (&[0, 3], 3)]);
        let lt = r.leading_term(&tie, &d).unwrap();
        assert_eq!(lt.degree, 3);
        assert!(lt.single().is_none());
        let u = Scalar::Rat(BigRational::new(5.into(), 2.into()));
        let f = r.add(&r.monomial(&[2, 0], u.clone()).unwrap(), &poly(&r, &[(&[0, 1], 1), (&[0, 0], 4)]));
        let lt = r.leading_term(&f, &d).unwrap();
        assert_eq!((lt.degree, lt.single().unwrap().1), (6, &u));
        assert_eq!(r.leading_term(&r.zero(), &d), Err(MonoidRingError::ZeroLeadingTerm));
    }

    #[test]
    fn monic_detection() {
        let r = MonoidRing::polynomial(zmod(4), 2);
        let d = DegreeAssignment::coordinate(2, 0);
        let m = [1, 0];
        assert!(r.is_monic_in(&poly(&r, &[(&[2, 0], 1), (&[0, 5], 3)]), &m, &d));
        assert!(!r.is_monic_in(&poly(&r, &[(&[2, 0], 2)]), &m, &d));
        assert!(!r.is_monic_in(&poly(&r, &[(&[2, 0], 1), (&[2, 1], 1)]), &m, &d));
        assert!(!r.is_monic_in(&r.zero(), &m, &d));
    }

    #[test]
    fn nagata_examples() {
        let r = MonoidRing::polynomial(RingDescriptor::Integers, 2);
        assert_eq!(r.nagata_twist(&r.variable(2), 3).unwrap(), poly(&r, &[(&[0, 1], 1), (&[3, 0], 1)]));
        assert_eq!(r.nagata_twist(&r.variable(1), 3).unwrap(), r.variable(1));
        let t2sq = poly(&r, &[(&[0, 2], 1)]);
        assert_eq!(
            r.nagata_twist(&t2sq, 2).unwrap(),
            poly(&r, &[(&[0, 2], 1), (&[2, 1], 2), (&[4, 0], 1)])
        );
        let m = AffineMonoid::new(vec![vec![2], vec![3]]).unwrap();
        let ns = MonoidRing::new(RingDescriptor::Integers, m).unwrap();
        assert!(ns.nagata_twist(&ns.one(), 1).is_err());
    }

    #[test]
    fn restriction_to_t1_zero() {
        let r = MonoidRing::polynomial(RingDescriptor::Integers, 2);
        let f = poly(&r, &[(&[0, 0], 3), (&[0, 1], 1), (&[1, 1], 1)]);
        assert_eq!(r.evaluate_at_t1_zero(&f).unwrap(), poly(&r, &[(&[0, 0], 3), (&[0, 1], 1)]));
        assert!(r.is_zero(&r.evaluate_at_t1_zero(&r.variable(1)).unwrap()));
    }

    #[test]
    fn tilted() {
        let r = MonoidRing::polynomial(RingDescriptor::Integers, 2);
        let t = TiltedAlgebraDescriptor::dominated(2);
        assert!(tilted_membership::<RingDescriptor>(&t, &poly(&r, &[(&[1, 1], 1)])));
        assert!(!tilted_membership::<RingDescriptor>(&t, &r.variable(2)));
        assert!(tilted_membership::<RingDescriptor>(&TiltedAlgebraDescriptor::everything(2), &r.variable(2)));
        assert!(t.spot_check(&[vec![0, 3], vec![2, 1], vec![0, 0]], 5));
    }

    #[test]
    fn units_with_nilpotent_parts() {
        let r = MonoidRing::polynomial(zmod(4), 1);
        let f = poly(&r, &[(&[0], 1), (&[1], 2)]);
        let g = r.inverse(&f).unwrap();
        assert!(r.is_one(&r.mul(&f, &g)));
        assert!(r.inverse(&poly(&r, &[(&[0], 1), (&[1], 1)])).is_none());
        assert!(r.inverse(&poly(&r, &[(&[0], 2)])).is_none());
    }

    #[test]
    fn enumerate_members() {
        let m = AffineMonoid::new(vec![vec![2], vec![3]]).unwrap();
        let r = MonoidRing::new(zmod(2), m).unwrap();
        assert_eq!(r.members_up_to(5).unwrap(), vec![vec![0], vec![2], vec![3], vec![4], vec![5]]);
    }
}
