use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::context::{WittContext, Y_OFF};
use super::poly::MPoly;
use super::ring::{CoeffRing, Truncated};
use crate::error::{Error, Result};
use crate::localfield::element::ElementJson;
use crate::localfield::{LFElement, LocalField};

/// A length-n p-typical Witt vector over a coefficient ring.
#[derive(Clone, Debug)]
pub struct WittVector<R: CoeffRing> {
    ctx: WittContext,
    ring: R,
    entries: Vec<R::Elt>,
}

impl<R: CoeffRing> WittVector<R> {
    pub fn new(ctx: &WittContext, ring: &R, entries: Vec<R::Elt>) -> Result<Self> {
        if entries.len() != ctx.n() {
            return Err(Error::ContextMismatch);
        }
        Ok(WittVector {
            ctx: ctx.clone(),
            ring: ring.clone(),
            entries,
        })
    }

    pub fn zero(ctx: &WittContext, ring: &R) -> Self {
        WittVector {
            ctx: ctx.clone(),
            ring: ring.clone(),
            entries: vec![ring.zero(); ctx.n()],
        }
    }

    pub fn one(ctx: &WittContext, ring: &R) -> Self {
        Self::teichmuller(ctx, ring, ring.one())
    }

    /// [a] = (a, 0, .., 0).
    pub fn teichmuller(ctx: &WittContext, ring: &R, a: R::Elt) -> Self {
        let mut v = Self::zero(ctx, ring);
        v.entries[0] = a;
        v
    }

    /// V^i[a]: a in position i.
    pub fn shifted_teichmuller(ctx: &WittContext, ring: &R, i: usize, a: R::Elt) -> Self {
        let mut v = Self::zero(ctx, ring);
        v.entries[i] = a;
        v
    }

    /// The image of an integer, found by inverting the ghost map over Z.
    pub fn from_integer(ctx: &WittContext, ring: &R, m: &BigInt) -> Self {
        let entries = integer_entries(ctx.p(), ctx.n(), m)
            .iter()
            .map(|z| ring.from_bigint(z))
            .collect();
        WittVector {
            ctx: ctx.clone(),
            ring: ring.clone(),
            entries,
        }
    }

    pub fn ctx(&self) -> &WittContext {
        &self.ctx
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn entries(&self) -> &[R::Elt] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<R::Elt> {
        self.entries
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.ctx != o.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn args(&self, o: &Self) -> Vec<R::Elt> {
        let n = self.ctx.n();
        let mut vals = vec![self.ring.zero(); Y_OFF + n];
        vals[..n].clone_from_slice(&self.entries);
        vals[Y_OFF..Y_OFF + n].clone_from_slice(&o.entries);
        vals
    }

    fn apply(&self, polys: &[MPoly], vals: &[R::Elt]) -> Self {
        WittVector {
            ctx: self.ctx.clone(),
            ring: self.ring.clone(),
            entries: polys.iter().map(|s| s.eval(&self.ring, vals)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.apply(&self.ctx.polys().sum, &self.args(o)))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.apply(&self.ctx.polys().prod, &self.args(o)))
    }

    pub fn neg(&self) -> Self {
        match &self.ctx.polys().neg {
            Some(polys) => self.apply(polys, &self.entries),
            None => WittVector {
                ctx: self.ctx.clone(),
                ring: self.ring.clone(),
                entries: self.entries.iter().map(|a| self.ring.neg(a)).collect(),
            },
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn pow(&self, mut k: u64) -> Result<Self> {
        let mut acc = Self::one(&self.ctx, &self.ring);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn scale_int(&self, m: &BigInt) -> Result<Self> {
        self.mul(&Self::from_integer(&self.ctx, &self.ring, m))
    }

    /// Phi with Phi_i = X_i^p.
    pub fn frobenius_lift(&self) -> Self {
        let p = self.ctx.p();
        WittVector {
            ctx: self.ctx.clone(),
            ring: self.ring.clone(),
            entries: self.entries.iter().map(|a| self.ring.pow(a, p)).collect(),
        }
    }

    /// Ghost components w_k = sum_{i<=k} p^i x_i^(p^(k-i)).
    pub fn ghost(&self) -> Vec<R::Elt> {
        let p = self.ctx.p();
        (0..self.ctx.n())
            .map(|k| {
                let mut acc = self.ring.zero();
                for i in 0..=k {
                    let term = self.ring.mul(
                        &self.ring.from_bigint(&BigInt::from(p).pow(i as u32)),
                        &self.ring.pow(&self.entries[i], p.pow((k - i) as u32)),
                    );
                    acc = self.ring.add(&acc, &term);
                }
                acc
            })
            .collect()
    }

    /// Entrywise equality in the coefficient ring.
    pub fn entries_eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx
            && self
                .entries
                .iter()
                .zip(&o.entries)
                .all(|(a, b)| self.ring.eq(a, b))
    }

    /// Apply a ring map entrywise; Witt vectors are functorial.
    pub fn map<S: CoeffRing>(&self, ring: &S, f: impl Fn(&R::Elt) -> S::Elt) -> WittVector<S> {
        WittVector {
            ctx: self.ctx.clone(),
            ring: ring.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// Entries of the Witt vector of an integer m: ghost components all equal to m.
pub fn integer_entries(p: u64, n: usize, m: &BigInt) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    let mut z: Vec<BigInt> = Vec::with_capacity(n);
    for k in 0..n {
        let mut rest = m.clone();
        for (i, zi) in z.iter().enumerate() {
            rest -= pb.pow(i as u32) * zi.pow(p.pow((k - i) as u32) as u32);
        }
        let d = pb.pow(k as u32);
        debug_assert!(rest.is_multiple_of(&d));
        z.push(rest / d);
    }
    z
}

/// Serialized Witt vector over a local field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittJson {
    pub p: u64,
    pub n: usize,
    pub entries: Vec<ElementJson>,
}

impl WittVector<Truncated> {
    pub fn to_json(&self) -> WittJson {
        WittJson {
            p: self.ctx.p(),
            n: self.ctx.n(),
            entries: self.entries.iter().map(LFElement::to_json).collect(),
        }
    }

    pub fn from_json(field: &LocalField, prec: u32, j: &WittJson) -> Result<Self> {
        let ctx = WittContext::new(j.p, j.n)?;
        let ring = Truncated::new(field, prec);
        let entries = j
            .entries
            .iter()
            .map(|e| LFElement::from_json(field, e).map(|x| ring.reduce(&x)))
            .collect::<Result<Vec<_>>>()?;
        WittVector::new(&ctx, &ring, entries)
    }

    /// Reduce every entry to a coarser precision.
    pub fn truncate(&self, prec: u32) -> Self {
        let ring = Truncated::new(&self.ring.field, prec);
        self.map(&ring, |a| ring.reduce(a))
    }

    /// Smallest entry valuation in digits, None for the zero vector.
    pub fn min_entry_val(&self) -> Option<u32> {
        self.entries.iter().filter_map(|a| a.val_digits()).min()
    }

    /// Image in a larger field.
    pub fn embed(&self, target: &LocalField) -> Result<Self> {
        let e = target.e_over(&self.ring.field)?;
        let ring = Truncated::new(target, self.ring.prec * e);
        let entries = self
            .entries
            .iter()
            .map(|a| a.embed(target))
            .collect::<Result<Vec<_>>>()?;
        WittVector::new(&self.ctx, &ring, entries)
    }
}

impl<R: CoeffRing> PartialEq for WittVector<R> {
    fn eq(&self, o: &Self) -> bool {
        self.entries_eq(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::standard_field;
    use crate::witt::ring::Integers;

    fn v(ctx: &WittContext, e: &[i64]) -> WittVector<Integers> {
        WittVector::new(ctx, &Integers, e.iter().map(|&a| BigInt::from(a)).collect()).unwrap()
    }

    #[test]
    fn identities() {
        let c = WittContext::new(3, 3).unwrap();
        let x = v(&c, &[5, -2, 7]);
        let zero = WittVector::zero(&c, &Integers);
        let one = WittVector::one(&c, &Integers);
        assert_eq!(x.add(&zero).unwrap(), x);
        assert_eq!(x.mul(&one).unwrap(), x);
        assert_eq!(x.sub(&x).unwrap(), zero);
        assert_eq!(one.frobenius_lift(), one);
    }

    #[test]
    fn teichmuller_is_multiplicative() {
        let c = WittContext::new(2, 3).unwrap();
        let a = WittVector::teichmuller(&c, &Integers, BigInt::from(6));
        let b = WittVector::teichmuller(&c, &Integers, BigInt::from(-5));
        let ab = WittVector::teichmuller(&c, &Integers, BigInt::from(-30));
        assert_eq!(a.mul(&b).unwrap(), ab);
        assert_eq!(a.frobenius_lift(), WittVector::teichmuller(&c, &Integers, BigInt::from(36)));
    }

    #[test]
    fn negation_for_p2() {
        let c = WittContext::new(2, 3).unwrap();
        let x = v(&c, &[3, 1, -4]);
        assert!(x.add(&x.neg()).unwrap().entries().iter().all(|e| e == &BigInt::from(0)));
    }

    #[test]
    fn integers_have_constant_ghosts() {
        let c = WittContext::new(5, 3).unwrap();
        let m = BigInt::from(-17);
        let x = WittVector::from_integer(&c, &Integers, &m);
        assert!(x.ghost().iter().all(|g| g == &m));
        let y = WittVector::from_integer(&c, &Integers, &BigInt::from(4));
        let s = WittVector::from_integer(&c, &Integers, &BigInt::from(-13));
        assert_eq!(x.add(&y).unwrap(), s);
    }

    #[test]
    fn json_round_trip() {
        let f = standard_field(3, 2, 10).unwrap();
        let c = WittContext::new(3, 2).unwrap();
        let ring = Truncated::new(&f, 12);
        let x = WittVector::new(&c, &ring, vec![f.uniformizer(), LFElement::from_int(&f, 7)])
            .unwrap()
            .truncate(12);
        let j = x.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: WittJson = serde_json::from_str(&text).unwrap();
        let y = WittVector::from_json(&f, 12, &back).unwrap();
        assert!(x.entries_eq(&y));
    }

    #[test]
    fn frobenius_is_entrywise_power_mod_p() {
        let f = standard_field(3, 1, 10).unwrap();
        let c = WittContext::new(3, 2).unwrap();
        let ring = Truncated::full(&f);
        let x = WittVector::new(&c, &ring, vec![LFElement::from_int(&f, 4), LFElement::from_int(&f, 2)]).unwrap();
        let y = WittVector::new(&c, &ring, vec![LFElement::from_int(&f, 5), LFElement::from_int(&f, 8)]).unwrap();
        let lhs = x.add(&y).unwrap().frobenius_lift().truncate(1);
        let rhs = x.frobenius_lift().add(&y.frobenius_lift()).unwrap().truncate(1);
        assert!(lhs.entries_eq(&rhs));
    }
}
