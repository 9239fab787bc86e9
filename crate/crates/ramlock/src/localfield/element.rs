//! Precision-tracked integral elements of a local field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::field::LocalField;
use crate::error::{Error, Result};
use crate::rat::{q, Q};

/// An element of O_F known modulo m_F^prec, stored in the tower basis.
#[derive(Clone)]
pub struct LFElement {
    field: LocalField,
    c: Vec<u64>,
    prec: u32,
}

impl fmt::Debug for LFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + O(pi^{})", self.c, self.prec)
    }
}

/// Serialized form: flat coefficient array and precision in uniformizer digits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub coeffs: Vec<String>,
    pub precision: u32,
}

impl LFElement {
    pub(crate) fn from_raw(field: &LocalField, mut c: Vec<u64>, prec: u32) -> LFElement {
        let prec = prec.min(field.cap_digits());
        field.normalize(&mut c, prec);
        LFElement {
            field: field.clone(),
            c,
            prec,
        }
    }

    pub fn zero(field: &LocalField) -> LFElement {
        LFElement::from_raw(field, vec![0; field.degree()], field.cap_digits())
    }

    pub fn one(field: &LocalField) -> LFElement {
        LFElement::from_int(field, 1)
    }

    pub fn from_int(field: &LocalField, n: i64) -> LFElement {
        LFElement::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: &LocalField, n: &BigInt) -> LFElement {
        let mut c = vec![0u64; field.degree()];
        c[0] = field.reduce_bigint(n);
        LFElement::from_raw(field, c, field.cap_digits())
    }

    /// Element from flat tower-basis coefficients.
    pub fn from_coeffs(field: &LocalField, coeffs: &[BigInt], prec: u32) -> Result<LFElement> {
        if coeffs.len() != field.degree() {
            return Err(Error::Input(format!(
                "expected {} coefficients, got {}",
                field.degree(),
                coeffs.len()
            )));
        }
        let c = coeffs.iter().map(|x| field.reduce_bigint(x)).collect();
        Ok(LFElement::from_raw(field, c, prec))
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    /// Precision in digits of the field's uniformizer.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.c
    }

    pub fn coeffs(&self) -> Vec<BigInt> {
        self.c.iter().map(|&x| BigInt::from(x)).collect()
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            coeffs: self.c.iter().map(|x| x.to_string()).collect(),
            precision: self.prec,
        }
    }

    pub fn from_json(field: &LocalField, j: &ElementJson) -> Result<LFElement> {
        let mut c = Vec::new();
        for s in &j.coeffs {
            c.push(
                s.parse::<BigInt>()
                    .map_err(|_| Error::Input(format!("bad coefficient {s:?}")))?,
            );
        }
        LFElement::from_coeffs(field, &c, j.precision)
    }

    /// Valuation in digits of the field's own uniformizer; None when zero at precision.
    pub fn val_digits(&self) -> Option<u32> {
        self.field.raw_val(&self.c).filter(|&v| v < self.prec)
    }

    /// Valuation normalized to the base field the tower was built over.
    /// Ok(None) stands for an exact zero.
    pub fn valuation(&self) -> Result<Option<Q>> {
        match self.val_digits() {
            Some(v) => Ok(Some(q(
                v as i64 * self.field.normalizing_e() as i64,
                self.field.e() as i64,
            ))),
            None if self.prec >= self.field.cap_digits() => Ok(None),
            None => Err(Error::PrecisionLoss(format!(
                "element vanishes to its precision {}",
                self.prec
            ))),
        }
    }

    /// Valuation with v(p) = 1.
    pub fn vp(&self) -> Option<Q> {
        self.val_digits().map(|v| q(v as i64, self.field.e() as i64))
    }

    /// Valuation in the normalization of an ancestor field.
    pub fn valuation_over(&self, base: &LocalField) -> Result<Option<Q>> {
        let e = self.field.e_over(base)?;
        Ok(self.val_digits().map(|v| q(v as i64, e as i64)))
    }

    /// Valuation in digits, or the precision when the element is zero at precision.
    pub fn val_or_prec(&self) -> u32 {
        self.val_digits().unwrap_or(self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.val_digits().is_none()
    }

    pub fn is_one(&self) -> bool {
        self.sub(&LFElement::one(&self.field)).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.val_digits() == Some(0)
    }

    pub fn with_prec(&self, prec: u32) -> LFElement {
        LFElement::from_raw(&self.field, self.c.clone(), self.prec.min(prec))
    }

    /// Same representative, declared known to the field's cap.
    pub(crate) fn as_exact(&self) -> LFElement {
        LFElement::from_raw(&self.field, self.c.clone(), self.field.cap_digits())
    }

    fn check(&self, other: &LFElement) {
        assert!(
            self.field == other.field,
            "elements of different fields: {} vs {}",
            self.field.name(),
            other.field.name()
        );
    }

    pub fn add(&self, other: &LFElement) -> LFElement {
        self.check(other);
        LFElement::from_raw(
            &self.field,
            self.field.raw_add(&self.c, &other.c),
            self.prec.min(other.prec),
        )
    }

    pub fn sub(&self, other: &LFElement) -> LFElement {
        self.check(other);
        LFElement::from_raw(
            &self.field,
            self.field.raw_sub(&self.c, &other.c),
            self.prec.min(other.prec),
        )
    }

    pub fn neg(&self) -> LFElement {
        LFElement::from_raw(&self.field, self.field.raw_neg(&self.c), self.prec)
    }

    pub fn mul(&self, other: &LFElement) -> LFElement {
        self.check(other);
        let va = self.val_or_prec();
        let vb = other.val_or_prec();
        let prec = (self.prec + vb).min(other.prec + va);
        LFElement::from_raw(&self.field, self.field.raw_mul(&self.c, &other.c), prec)
    }

    pub fn mul_int(&self, n: i64) -> LFElement {
        self.mul(&LFElement::from_int(&self.field, n))
    }

    pub fn pow(&self, mut k: u64) -> LFElement {
        let mut result = LFElement::one(&self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact division by the k-th power of the uniformizer.
    pub fn div_unif(&self, k: u32) -> Result<LFElement> {
        if k == 0 {
            return Ok(self.clone());
        }
        match self.val_digits() {
            Some(v) if v < k => {
                return Err(Error::NotDivisible(format!(
                    "valuation {v} below divisor valuation {k}"
                )))
            }
            None if self.prec < k => {
                return Err(Error::PrecisionLoss(
                    "dividend unknown at the divisor's valuation".into(),
                ))
            }
            _ => {}
        }
        let mut c = self.c.clone();
        for _ in 0..k {
            c = self.field.raw_div_unif(&c);
        }
        Ok(LFElement::from_raw(&self.field, c, self.prec - k))
    }

    /// Inverse of a unit, by Newton iteration from a residue inverse.
    pub fn inv(&self) -> Result<LFElement> {
        match self.val_digits() {
            Some(0) => {}
            Some(_) => return Err(Error::NotDivisible("element is not a unit".into())),
            None => return Err(Error::PrecisionLoss("inverse of an indeterminate element".into())),
        }
        let target = self.prec;
        let y = self.as_exact();
        let qsize = self.field.q();
        let mut z = y.with_prec(1).pow(qsize - 2).as_exact();
        let one = LFElement::one(&self.field);
        let two = LFElement::from_int(&self.field, 2);
        loop {
            let err = y.mul(&z).sub(&one);
            let reached = err.val_digits().unwrap_or(u32::MAX);
            if reached >= target {
                break;
            }
            z = z.mul(&two.sub(&y.mul(&z)));
        }
        Ok(z.with_prec(target))
    }

    /// Division with valuation bookkeeping; fails when the quotient is not integral.
    pub fn div(&self, other: &LFElement) -> Result<LFElement> {
        self.check(other);
        let vb = other
            .val_digits()
            .ok_or_else(|| Error::PrecisionLoss("divisor vanishes at its precision".into()))?;
        let a = self.div_unif(vb)?;
        let b = other.div_unif(vb)?;
        Ok(a.mul(&b.inv()?))
    }

    /// Image in an extension of the element's field.
    pub fn embed(&self, target: &LocalField) -> Result<LFElement> {
        if &self.field == target {
            return Ok(self.clone());
        }
        let e = target.e_over(&self.field)?;
        let mut c = vec![0u64; target.degree()];
        c[..self.c.len()].copy_from_slice(&self.c);
        Ok(LFElement::from_raw(target, c, self.prec * e))
    }

    /// Coordinates over the parent field in the basis 1, g, .., g^(d-1) of the top step.
    pub fn components(&self) -> Result<Vec<LFElement>> {
        let parent = self.field.parent().ok_or(Error::NotInTower)?.clone();
        let d = self.field.step_degree();
        let db = parent.degree();
        let es = self.field.e() / parent.e();
        Ok((0..d)
            .map(|j| {
                let pr = if es == 1 {
                    self.prec
                } else {
                    self.prec.saturating_sub(j as u32).div_ceil(es)
                };
                LFElement::from_raw(&parent, self.c[j * db..(j + 1) * db].to_vec(), pr)
            })
            .collect())
    }

    /// Equality modulo the smaller of the two precisions.
    pub fn equals(&self, other: &LFElement) -> bool {
        self.field == other.field && self.sub(other).is_zero()
    }

    /// Flat coefficients restricted to a subfield, when the element lies in it.
    pub fn restrict(&self, sub: &LocalField) -> Result<LFElement> {
        let e = self.field.e_over(sub)?;
        let d = sub.degree();
        if self.c[d..].iter().any(|&x| x != 0) {
            return Err(Error::NotInTower);
        }
        Ok(LFElement::from_raw(sub, self.c[..d].to_vec(), self.prec / e))
    }
}

impl Add for &LFElement {
    type Output = LFElement;
    fn add(self, rhs: &LFElement) -> LFElement {
        LFElement::add(self, rhs)
    }
}
impl Sub for &LFElement {
    type Output = LFElement;
    fn sub(self, rhs: &LFElement) -> LFElement {
        LFElement::sub(self, rhs)
    }
}
impl Mul for &LFElement {
    type Output = LFElement;
    fn mul(self, rhs: &LFElement) -> LFElement {
        LFElement::mul(self, rhs)
    }
}
impl Neg for &LFElement {
    type Output = LFElement;
    fn neg(self) -> LFElement {
        LFElement::neg(self)
    }
}
