//! Finite fields, polynomials over them, and the rings `F_q[x, 1/h]`.

pub mod descriptor;
pub mod fq;
pub mod poly;
pub mod prime;
pub mod ring;
pub mod snf;

use std::fmt::Debug;

use thiserror::Error;

pub use fq::{FieldId, Fq, FqElem};
pub use poly::Poly;
pub use ring::{CoordinateRing, Mode, PartialFractions, RingElem, RingId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("invalid extension degree {0}")]
    InvalidDegree(u32),
    #[error("field of size {p}^{m} exceeds the 2^16 limit")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("modulus is not monic irreducible")]
    ReducibleModulus,
    #[error("element index {0} out of range")]
    ElementOutOfRange(u64),
    #[error("h = {0} is not squarefree and split")]
    NotSquarefreeSplit(String),
    #[error("denominator {0} is not a unit of the ring")]
    NotInRing(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A commutative ring of characteristic `p`, the coefficient ring for Witt
/// vectors.
pub trait CoeffRing: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Whether `a` was produced by this ring.
    fn owns(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic() as u64)
    }
}

impl CoeffRing for Fq {
    type Elem = FqElem;

    fn characteristic(&self) -> u32 {
        self.p()
    }
    fn zero(&self) -> FqElem {
        Fq::zero(self)
    }
    fn one(&self) -> FqElem {
        Fq::one(self)
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        Fq::add(self, *a, *b)
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        Fq::neg(self, *a)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        Fq::mul(self, *a, *b)
    }
    fn from_int(&self, n: i64) -> FqElem {
        Fq::from_int(self, n)
    }
    fn owns(&self, a: &FqElem) -> bool {
        self.contains(*a)
    }
    fn pow(&self, a: &FqElem, e: u64) -> FqElem {
        Fq::pow(self, *a, e)
    }
}

impl CoeffRing for CoordinateRing {
    type Elem = RingElem;

    fn characteristic(&self) -> u32 {
        self.p()
    }
    fn zero(&self) -> RingElem {
        CoordinateRing::zero(self)
    }
    fn one(&self) -> RingElem {
        CoordinateRing::one(self)
    }
    fn is_zero(&self, a: &RingElem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        CoordinateRing::add(self, a, b)
    }
    fn neg(&self, a: &RingElem) -> RingElem {
        CoordinateRing::neg(self, a)
    }
    fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        CoordinateRing::mul(self, a, b)
    }
    fn from_int(&self, n: i64) -> RingElem {
        CoordinateRing::from_int(self, n)
    }
    fn owns(&self, a: &RingElem) -> bool {
        CoordinateRing::owns(self, a)
    }
    fn frobenius(&self, a: &RingElem) -> RingElem {
        CoordinateRing::frobenius(self, a)
    }
}
