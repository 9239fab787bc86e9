//! Coefficient rings for Witt vectors.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::MPoly;
use crate::localfield::{LFElement, LocalField};

/// A commutative ring with exact equality at its working precision.
pub trait CoeffRing: Clone + Debug {
    type Elt: Clone + Debug;

    fn zero(&self) -> Self::Elt;
    fn one(&self) -> Self::Elt;
    fn from_bigint(&self, n: &BigInt) -> Self::Elt;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn sub(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn eq(&self, a: &Self::Elt, b: &Self::Elt) -> bool;

    fn neg(&self, a: &Self::Elt) -> Self::Elt {
        self.sub(&self.zero(), a)
    }

    fn pow(&self, a: &Self::Elt, mut k: u64) -> Self::Elt {
        let mut acc = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn is_zero(&self, a: &Self::Elt) -> bool {
        self.eq(a, &self.zero())
    }

    fn eval_poly(&self, f: &MPoly, vals: &[Self::Elt]) -> Self::Elt {
        f.eval_direct(self, vals)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elt = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn eq(&self, a: &BigInt, b: &BigInt) -> bool {
        a == b
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elt = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn eq(&self, a: &BigRational, b: &BigRational) -> bool {
        a == b
    }
    fn eval_poly(&self, f: &MPoly, vals: &[BigRational]) -> BigRational {
        f.eval_rational(vals)
    }
}

/// O_F modulo pi^prec (prec in digits of F's uniformizer).
#[derive(Clone, Debug)]
pub struct Truncated {
    pub field: LocalField,
    pub prec: u32,
}

impl Truncated {
    pub fn new(field: &LocalField, prec: u32) -> Truncated {
        Truncated {
            field: field.clone(),
            prec: prec.min(field.cap_digits()),
        }
    }

    /// Full working precision of the field.
    pub fn full(field: &LocalField) -> Truncated {
        Truncated::new(field, field.cap_digits())
    }

    pub fn reduce(&self, a: &LFElement) -> LFElement {
        a.with_prec(self.prec)
    }
}

impl CoeffRing for Truncated {
    type Elt = LFElement;
    fn zero(&self) -> LFElement {
        LFElement::zero(&self.field).with_prec(self.prec)
    }
    fn one(&self) -> LFElement {
        LFElement::one(&self.field).with_prec(self.prec)
    }
    fn from_bigint(&self, n: &BigInt) -> LFElement {
        LFElement::from_bigint(&self.field, n).with_prec(self.prec)
    }
    fn add(&self, a: &LFElement, b: &LFElement) -> LFElement {
        a.add(b)
    }
    fn sub(&self, a: &LFElement, b: &LFElement) -> LFElement {
        a.sub(b)
    }
    fn mul(&self, a: &LFElement, b: &LFElement) -> LFElement {
        a.mul(b)
    }
    fn eq(&self, a: &LFElement, b: &LFElement) -> bool {
        a.sub(b).with_prec(self.prec).is_zero()
    }
}

/// Integer polynomials, for composing universal polynomials symbolically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Polynomials;

impl CoeffRing for Polynomials {
    type Elt = MPoly;
    fn zero(&self) -> MPoly {
        MPoly::zero()
    }
    fn one(&self) -> MPoly {
        MPoly::constant(BigInt::one())
    }
    fn from_bigint(&self, n: &BigInt) -> MPoly {
        MPoly::constant(n.clone())
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.add(b)
    }
    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.sub(b)
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul(b)
    }
    fn eq(&self, a: &MPoly, b: &MPoly) -> bool {
        a == b
    }
}
