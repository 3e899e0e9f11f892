//! The commutative-ring interface every matrix, word and row is built over.
//!
//! A [`Ring`] value is a carrier: it owns whatever context the arithmetic
//! needs (a modulus, an ideal, a monoid) and elements are plain values that
//! only make sense together with their carrier.

use std::fmt;

use thiserror::Error;

use crate::coeff_rings::IdealDescriptor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("element {value} is not a canonical element of {ring}")]
    NonCanonical { ring: String, value: String },
    #[error("unsupported ring for this operation: {0}")]
    Unsupported(String),
}

pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Multiplicative inverse, or `None` when `a` is not a unit.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inverse(a).is_some()
    }

    fn is_field(&self) -> bool;

    /// Additive order of `1`, or `0` in characteristic zero.
    fn characteristic(&self) -> u64;

    fn in_jacobson_radical(&self, a: &Self::Elem) -> Result<bool, RingError>;

    fn is_nilpotent(&self, a: &Self::Elem) -> bool;

    /// Membership in the extension of `ideal` (an ideal of the coefficient
    /// ring) to this ring.
    fn in_ideal(&self, ideal: &IdealDescriptor, a: &Self::Elem) -> Result<bool, RingError>;

    /// For finite rings: a complete family of orthogonal idempotents whose
    /// corner rings `R e` are local.
    fn local_idempotents(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Every element, for small finite rings.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn describe(&self) -> String;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }
}
