//! Exact coefficient rings: `Z`, `Q`, `Z/n` and the excision ring `R + I`.
//!
//! All four are served by one dynamic carrier, [`RingDescriptor`], whose
//! elements are [`Scalar`] payloads in canonical form. [`RingElement`] pairs a
//! payload with its descriptor and checks descriptors on every operation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::ring::{Ring, RingError};

/// Canonical payload of a coefficient-ring element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    /// `(r, i)` in an excision ring, with `i` in the ideal.
    Pair(Box<Scalar>, Box<Scalar>),
}

impl Scalar {
    pub fn pair(r: Scalar, i: Scalar) -> Scalar {
        Scalar::Pair(Box::new(r), Box::new(i))
    }

    pub fn as_mod(&self) -> Option<u64> {
        match self {
            Scalar::Mod(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Scalar, &Scalar)> {
        match self {
            Scalar::Pair(r, i) => Some((r, i)),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) => write!(f, "{v}"),
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Pair(r, i) => write!(f, "({r}, {i})"),
        }
    }
}

/// An ideal of a base coefficient ring, kept as its generator list together
/// with a single generator that decides membership.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealDescriptor {
    generators: Vec<Scalar>,
    principal: Scalar,
}

impl IdealDescriptor {
    /// Builds the ideal of `ring` generated by `generators`. `Z` and `Z/n`
    /// are principal ideal rings, so a gcd decides membership; in `Q` every
    /// ideal is `0` or `Q`.
    pub fn new(ring: &RingDescriptor, generators: Vec<Scalar>) -> Result<Self, RingError> {
        for g in &generators {
            ring.validate(g)?;
        }
        let principal = match ring {
            RingDescriptor::Integers => Scalar::Int(
                generators
                    .iter()
                    .fold(BigInt::zero(), |acc, g| match g {
                        Scalar::Int(v) => acc.gcd(v),
                        _ => unreachable!(),
                    }),
            ),
            RingDescriptor::Rationals => {
                let nonzero = generators.iter().any(|g| !ring.is_zero(g));
                Scalar::Rat(if nonzero { BigRational::one() } else { BigRational::zero() })
            }
            RingDescriptor::IntegersMod(n) => {
                let g = generators.iter().fold(*n, |acc, g| arith::gcd_u64(acc, g.as_mod().unwrap()));
                Scalar::Mod(g % n)
            }
            RingDescriptor::Excision { .. } => {
                return Err(RingError::Unsupported(
                    "ideals of an excision ring cannot seed another excision ring".into(),
                ))
            }
        };
        Ok(IdealDescriptor { generators, principal })
    }

    pub fn generators(&self) -> &[Scalar] {
        &self.generators
    }

    /// The single generator of the ideal (gcd form).
    pub fn principal(&self) -> &Scalar {
        &self.principal
    }

    /// Exact membership test for `x` in `ring`.
    pub fn contains(&self, ring: &RingDescriptor, x: &Scalar) -> bool {
        match (ring, &self.principal, x) {
            (RingDescriptor::Integers, Scalar::Int(g), Scalar::Int(v)) => {
                if g.is_zero() {
                    v.is_zero()
                } else {
                    (v % g).is_zero()
                }
            }
            (RingDescriptor::Rationals, Scalar::Rat(g), Scalar::Rat(v)) => !g.is_zero() || v.is_zero(),
            (RingDescriptor::IntegersMod(_), Scalar::Mod(g), Scalar::Mod(v)) => {
                if *g == 0 {
                    *v == 0
                } else {
                    v % g == 0
                }
            }
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    Rationals,
    IntegersMod(u64),
    Excision { base: Box<RingDescriptor>, ideal: IdealDescriptor },
}

impl RingDescriptor {
    pub fn integers_mod(n: u64) -> Result<Self, RingError> {
        if n < 2 {
            return Err(RingError::InvalidDescriptor(format!("modulus must be >= 2, got {n}")));
        }
        Ok(RingDescriptor::IntegersMod(n))
    }

    pub fn excision(base: RingDescriptor, generators: Vec<Scalar>) -> Result<Self, RingError> {
        if matches!(base, RingDescriptor::Excision { .. }) {
            return Err(RingError::InvalidDescriptor("excision rings nest at most once".into()));
        }
        let ideal = IdealDescriptor::new(&base, generators)?;
        Ok(RingDescriptor::Excision { base: Box::new(base), ideal })
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingDescriptor::IntegersMod(n) => Some(*n),
            _ => None,
        }
    }

    pub fn excision_parts(&self) -> Option<(&RingDescriptor, &IdealDescriptor)> {
        match self {
            RingDescriptor::Excision { base, ideal } => Some((base, ideal)),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            RingDescriptor::IntegersMod(_) => true,
            RingDescriptor::Excision { base, .. } => base.is_finite(),
            _ => false,
        }
    }

    /// Checks that `x` is a canonical payload for this ring.
    pub fn validate(&self, x: &Scalar) -> Result<(), RingError> {
        let ok = match (self, x) {
            (RingDescriptor::Integers, Scalar::Int(_)) => true,
            (RingDescriptor::Rationals, Scalar::Rat(v)) => v.denom().is_positive(),
            (RingDescriptor::IntegersMod(n), Scalar::Mod(v)) => v < n,
            (RingDescriptor::Excision { base, ideal }, Scalar::Pair(r, i)) => {
                base.validate(r).is_ok() && base.validate(i).is_ok() && ideal.contains(base, i)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(RingError::NonCanonical { ring: self.describe(), value: x.to_string() })
        }
    }

    /// Canonical image of an integer.
    pub fn int(&self, v: impl Into<BigInt>) -> Scalar {
        let v: BigInt = v.into();
        match self {
            RingDescriptor::Integers => Scalar::Int(v),
            RingDescriptor::Rationals => Scalar::Rat(BigRational::from_integer(v)),
            RingDescriptor::IntegersMod(n) => {
                let r = v.mod_floor(&BigInt::from(*n));
                Scalar::Mod(r.to_u64().unwrap())
            }
            RingDescriptor::Excision { base, .. } => Scalar::pair(base.int(v), base.zero()),
        }
    }

    /// Excision projection `(r, i) -> r + i`.
    pub fn project(&self, x: &Scalar) -> Result<Scalar, RingError> {
        match (self, x) {
            (RingDescriptor::Excision { base, .. }, Scalar::Pair(r, i)) => Ok(base.add(r, i)),
            _ => Err(RingError::DescriptorMismatch(self.describe(), "excision ring".into())),
        }
    }

    /// The other structure map `(r, i) -> r`.
    pub fn base_part(&self, x: &Scalar) -> Result<Scalar, RingError> {
        match (self, x) {
            (RingDescriptor::Excision { .. }, Scalar::Pair(r, _)) => Ok((**r).clone()),
            _ => Err(RingError::DescriptorMismatch(self.describe(), "excision ring".into())),
        }
    }

    fn residue_in_radical(n: u64, v: u64) -> bool {
        v.is_multiple_of(arith::radical(n))
    }
}

impl Ring for RingDescriptor {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        self.int(0)
    }

    fn one(&self) -> Scalar {
        self.int(1)
    }

    fn from_int(&self, n: i64) -> Scalar {
        self.int(n)
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (RingDescriptor::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (RingDescriptor::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (RingDescriptor::IntegersMod(n), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(arith::add_mod(*x, *y, *n))
            }
            (RingDescriptor::Excision { base, .. }, Scalar::Pair(r1, i1), Scalar::Pair(r2, i2)) => {
                Scalar::pair(base.add(r1, r2), base.add(i1, i2))
            }
            _ => panic!("payload mismatch in {}: {a} + {b}", self.describe()),
        }
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (RingDescriptor::Integers, Scalar::Int(x)) => Scalar::Int(-x),
            (RingDescriptor::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (RingDescriptor::IntegersMod(n), Scalar::Mod(x)) => Scalar::Mod((n - x) % n),
            (RingDescriptor::Excision { base, .. }, Scalar::Pair(r, i)) => {
                Scalar::pair(base.neg(r), base.neg(i))
            }
            _ => panic!("payload mismatch in {}: -{a}", self.describe()),
        }
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (RingDescriptor::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (RingDescriptor::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (RingDescriptor::IntegersMod(n), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(arith::mul_mod(*x, *y, *n))
            }
            // (r1, i1)(r2, i2) = (r1 r2, r1 i2 + r2 i1 + i1 i2)
            (RingDescriptor::Excision { base, .. }, Scalar::Pair(r1, i1), Scalar::Pair(r2, i2)) => {
                let r = base.mul(r1, r2);
                let i = base.add(
                    &base.add(&base.mul(r1, i2), &base.mul(r2, i1)),
                    &base.mul(i1, i2),
                );
                Scalar::pair(r, i)
            }
            _ => panic!("payload mismatch in {}: {a} * {b}", self.describe()),
        }
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_zero(),
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Mod(x) => *x == 0,
            Scalar::Pair(r, i) => self.is_zero(r) && self.is_zero(i),
        }
    }

    fn inverse(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (RingDescriptor::Integers, Scalar::Int(x)) => {
                (x.is_one() || (-x).is_one()).then(|| Scalar::Int(x.clone()))
            }
            (RingDescriptor::Rationals, Scalar::Rat(x)) => (!x.is_zero()).then(|| Scalar::Rat(x.recip())),
            (RingDescriptor::IntegersMod(n), Scalar::Mod(x)) => arith::inv_mod(*x, *n).map(Scalar::Mod),
            // (r, i)(x, y) = (1, 0) forces x = r^-1 and y (r + i) = -x i.
            (RingDescriptor::Excision { base, .. }, Scalar::Pair(r, i)) => {
                let x = base.inverse(r)?;
                let s = base.inverse(&base.add(r, i))?;
                let y = base.neg(&base.mul(&base.mul(&x, i), &s));
                Some(Scalar::pair(x, y))
            }
            _ => panic!("payload mismatch in {}: {a}^-1", self.describe()),
        }
    }

    fn is_field(&self) -> bool {
        match self {
            RingDescriptor::Integers => false,
            RingDescriptor::Rationals => true,
            RingDescriptor::IntegersMod(n) => arith::is_prime(*n),
            RingDescriptor::Excision { base, ideal } => base.is_field() && base.is_zero(ideal.principal()),
        }
    }

    fn characteristic(&self) -> u64 {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => 0,
            RingDescriptor::IntegersMod(n) => *n,
            RingDescriptor::Excision { base, .. } => base.characteristic(),
        }
    }

    fn in_jacobson_radical(&self, a: &Scalar) -> Result<bool, RingError> {
        match (self, a) {
            (RingDescriptor::IntegersMod(n), Scalar::Mod(v)) => Ok(Self::residue_in_radical(*n, *v)),
            // R + I is the fibre product R x_{R/I} R via (r, i) -> (r, r + i);
            // its maximal ideals are pulled back from either factor.
            (RingDescriptor::Excision { base, .. }, Scalar::Pair(r, i)) => {
                Ok(base.in_jacobson_radical(r)? && base.in_jacobson_radical(&base.add(r, i))?)
            }
            _ => Err(RingError::Unsupported(format!(
                "Jacobson radical membership over {}",
                self.describe()
            ))),
        }
    }

    fn is_nilpotent(&self, a: &Scalar) -> bool {
        match (self, a) {
            (RingDescriptor::IntegersMod(n), Scalar::Mod(v)) => Self::residue_in_radical(*n, *v),
            (RingDescriptor::Excision { base, .. }, Scalar::Pair(r, i)) => {
                base.is_nilpotent(r) && base.is_nilpotent(&base.add(r, i))
            }
            _ => self.is_zero(a),
        }
    }

    fn in_ideal(&self, ideal: &IdealDescriptor, a: &Scalar) -> Result<bool, RingError> {
        match self {
            RingDescriptor::Excision { .. } => Err(RingError::Unsupported(
                "ideal membership inside an excision ring".into(),
            )),
            _ => Ok(ideal.contains(self, a)),
        }
    }

    fn local_idempotents(&self) -> Option<Vec<Scalar>> {
        match self {
            RingDescriptor::IntegersMod(n) => {
                Some(arith::crt_idempotents(*n).into_iter().map(|(_, e)| Scalar::Mod(e)).collect())
            }
            RingDescriptor::Excision { base, ideal } => {
                let n = base.modulus()?;
                let g = ideal.principal().as_mod()?;
                let mut out = Vec::new();
                for (q, e) in arith::crt_idempotents(n) {
                    let p = arith::factorize(q)[0].0;
                    let e = Scalar::Mod(e);
                    if g % p == 0 {
                        // I is inside the maximal ideal at p: the corner is local.
                        out.push(Scalar::pair(e, base.zero()));
                    } else {
                        // I is the unit ideal at p: the corner splits as R_p x R_p.
                        out.push(Scalar::pair(e.clone(), base.neg(&e)));
                        out.push(Scalar::pair(base.zero(), e));
                    }
                }
                Some(out)
            }
            _ => None,
        }
    }

    fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            RingDescriptor::IntegersMod(n) if *n <= 1 << 16 => Some((0..*n).map(Scalar::Mod).collect()),
            RingDescriptor::Excision { base, ideal } => {
                let base_elems = base.elements()?;
                let ideal_elems: Vec<Scalar> =
                    base_elems.iter().filter(|x| ideal.contains(base, x)).cloned().collect();
                if base_elems.len() * ideal_elems.len() > 1 << 16 {
                    return None;
                }
                Some(
                    base_elems
                        .iter()
                        .flat_map(|r| ideal_elems.iter().map(move |i| Scalar::pair(r.clone(), i.clone())))
                        .collect(),
                )
            }
            _ => None,
        }
    }

    fn describe(&self) -> String {
        match self {
            RingDescriptor::Integers => "Z".into(),
            RingDescriptor::Rationals => "Q".into(),
            RingDescriptor::IntegersMod(n) => format!("Z/{n}"),
            RingDescriptor::Excision { base, ideal } => format!(
                "{} + ({})",
                base.describe(),
                ideal.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
            ),
        }
    }
}

/// A coefficient-ring element tagged with its ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingDescriptor,
    value: Scalar,
}

impl RingElement {
    pub fn new(ring: RingDescriptor, value: Scalar) -> Result<Self, RingError> {
        ring.validate(&value)?;
        Ok(RingElement { ring, value })
    }

    pub fn from_int(ring: &RingDescriptor, v: i64) -> Self {
        RingElement { value: ring.int(v), ring: ring.clone() }
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    fn same_ring(&self, other: &RingElement) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::DescriptorMismatch(self.ring.describe(), other.ring.describe()))
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.value, self.ring.describe())
    }
}

pub fn ring_add(a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
    a.same_ring(b)?;
    Ok(RingElement { value: a.ring.add(&a.value, &b.value), ring: a.ring.clone() })
}

pub fn ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
    a.same_ring(b)?;
    Ok(RingElement { value: a.ring.mul(&a.value, &b.value), ring: a.ring.clone() })
}

pub fn ring_neg(a: &RingElement) -> RingElement {
    RingElement { value: a.ring.neg(&a.value), ring: a.ring.clone() }
}

/// `None` is the "not a unit" answer.
pub fn ring_inverse(a: &RingElement) -> Option<RingElement> {
    a.ring.inverse(&a.value).map(|value| RingElement { value, ring: a.ring.clone() })
}

pub fn excision_project(x: &RingElement) -> Result<RingElement, RingError> {
    let value = x.ring.project(&x.value)?;
    let (base, _) = x.ring.excision_parts().expect("checked by project");
    Ok(RingElement { value, ring: base.clone() })
}

pub fn is_in_jacobson_radical(a: &RingElement) -> Result<bool, RingError> {
    a.ring.in_jacobson_radical(&a.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u64) -> RingDescriptor {
        RingDescriptor::integers_mod(n).unwrap()
    }

    fn el(ring: &RingDescriptor, v: i64) -> RingElement {
        RingElement::from_int(ring, v)
    }

    fn exc(n: u64, g: u64) -> RingDescriptor {
        RingDescriptor::excision(zmod(n), vec![Scalar::Mod(g)]).unwrap()
    }

    #[test]
    fn modular_product() {
        let r = zmod(4);
        assert_eq!(ring_mul(&el(&r, 3), &el(&r, 3)).unwrap(), el(&r, 1));
        for v in 0..4 {
            assert_eq!(ring_mul(&el(&r, v), &el(&r, 1)).unwrap(), el(&r, v));
        }
    }

    #[test]
    fn mismatch_is_an_error() {
        let err = ring_add(&el(&zmod(4), 1), &el(&zmod(5), 1)).unwrap_err();
        assert!(matches!(err, RingError::DescriptorMismatch(..)));
    }

    #[test]
    fn excision_product_matches_formula() {
        let e = exc(25, 5);
        let x = RingElement::new(e.clone(), Scalar::pair(Scalar::Mod(2), Scalar::Mod(5))).unwrap();
        let y = RingElement::new(e.clone(), Scalar::pair(Scalar::Mod(3), Scalar::Mod(10))).unwrap();
        let p = ring_mul(&x, &y).unwrap();
        assert_eq!(p.value(), &Scalar::pair(Scalar::Mod(6), Scalar::Mod(10)));
    }

    #[test]
    fn excision_rejects_non_ideal_component() {
        let e = exc(25, 5);
        assert!(RingElement::new(e, Scalar::pair(Scalar::Mod(2), Scalar::Mod(3))).is_err());
        assert!(RingDescriptor::excision(exc(25, 5), vec![]).is_err());
    }

    #[test]
    fn inverses() {
        let r = zmod(4);
        assert_eq!(ring_inverse(&el(&r, 3)), Some(el(&r, 3)));
        assert_eq!(ring_inverse(&el(&r, 1)), Some(el(&r, 1)));
        assert_eq!(ring_inverse(&el(&r, 2)), None);
        assert_eq!(ring_inverse(&el(&RingDescriptor::Integers, 2)), None);
        let q = RingDescriptor::Rationals;
        assert_eq!(ring_inverse(&el(&q, 4)).unwrap().value(), &Scalar::Rat(BigRational::new(1.into(), 4.into())));
    }

    #[test]
    fn excision_inverse_is_exact_and_complete() {
        let e = exc(25, 5);
        let elems = e.elements().unwrap();
        for a in &elems {
            match e.inverse(a) {
                Some(b) => assert!(e.is_one(&e.mul(a, &b))),
                None => assert!(elems.iter().all(|b| !e.is_one(&e.mul(a, b)))),
            }
        }
    }

    #[test]
    fn projection() {
        let e = exc(25, 5);
        let x = RingElement::new(e.clone(), Scalar::pair(Scalar::Mod(3), Scalar::Mod(5))).unwrap();
        assert_eq!(excision_project(&x).unwrap(), el(&zmod(25), 8));
        let one = RingElement::from_int(&e, 1);
        assert_eq!(excision_project(&one).unwrap(), el(&zmod(25), 1));
        let k = RingElement::new(e, Scalar::pair(Scalar::Mod(0), Scalar::Mod(15))).unwrap();
        assert_eq!(excision_project(&k).unwrap(), el(&zmod(25), 15));
        assert!(excision_project(&el(&zmod(25), 3)).is_err());
    }

    #[test]
    fn jacobson_radical() {
        assert!(is_in_jacobson_radical(&el(&zmod(4), 2)).unwrap());
        assert!(is_in_jacobson_radical(&el(&zmod(6), 0)).unwrap());
        assert!(!is_in_jacobson_radical(&el(&zmod(6), 3)).unwrap());
        assert!(is_in_jacobson_radical(&el(&RingDescriptor::Integers, 0)).is_err());
        let e = exc(25, 5);
        let x = RingElement::new(e.clone(), Scalar::pair(Scalar::Mod(5), Scalar::Mod(10))).unwrap();
        assert!(is_in_jacobson_radical(&x).unwrap());
        let y = RingElement::new(e, Scalar::pair(Scalar::Mod(1), Scalar::Mod(10))).unwrap();
        assert!(!is_in_jacobson_radical(&y).unwrap());
    }

    #[test]
    fn idempotents_are_complete_and_orthogonal() {
        for ring in [zmod(360), exc(10, 2), exc(25, 5), exc(12, 3)] {
            let ids = ring.local_idempotents().unwrap();
            let sum = ids.iter().fold(ring.zero(), |acc, e| ring.add(&acc, e));
            assert!(ring.is_one(&sum), "{}", ring.describe());
            for (a, e) in ids.iter().enumerate() {
                assert_eq!(&ring.mul(e, e), e);
                for f in &ids[a + 1..] {
                    assert!(ring.is_zero(&ring.mul(e, f)));
                }
            }
        }
    }

    #[test]
    fn ideal_membership() {
        let z = RingDescriptor::Integers;
        let i = IdealDescriptor::new(&z, vec![z.int(6), z.int(10)]).unwrap();
        assert!(i.contains(&z, &z.int(-4)));
        assert!(!i.contains(&z, &z.int(3)));
        let r = zmod(12);
        let j = IdealDescriptor::new(&r, vec![Scalar::Mod(8)]).unwrap();
        assert_eq!(j.principal(), &Scalar::Mod(4));
        assert!(j.contains(&r, &Scalar::Mod(0)));
    }
}
