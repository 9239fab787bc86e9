//! Entrywise division in W_n(O_F) by an element with known ghost components.

use super::ring::Truncated;
use super::vector::WittVector;
use crate::error::{Error, Result};

type W = WittVector<Truncated>;

/// Where the quotient is required to live.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientIn {
    /// W_n(O_F).
    Integers,
    /// W_n(m_F).
    MaximalIdeal,
}

/// Find y with x y = w in W_n(O_F / pi^modulus), solving entry i after entries < i:
/// y_i = z_i / w_i(x), then z <- z - x V^i[y_i].
pub fn ideal_divide(w: &W, x: &W, modulus: u32, target: QuotientIn) -> Result<W> {
    if w.ctx() != x.ctx() {
        return Err(Error::ContextMismatch);
    }
    let field = w.ring().field.clone();
    let ring = Truncated::new(&field, modulus);
    let ctx = w.ctx().clone();
    let n = ctx.n();
    let ghosts = x.ghost();
    let xt = x.truncate(modulus);
    let mut z = w.truncate(modulus);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let zi = z.entries()[i].clone();
        let vz = match zi.val_digits() {
            None => {
                y.push(ring.reduce(&zi));
                continue;
            }
            Some(v) => v,
        };
        let vg = ghosts[i].val_digits().ok_or_else(|| {
            Error::PrecisionLoss(format!("ghost component {i} of the divisor vanishes"))
        })?;
        let need = match target {
            QuotientIn::Integers => vg,
            QuotientIn::MaximalIdeal => vg + 1,
        };
        if vz < need {
            return Err(Error::NotDivisible(format!(
                "entry {i} has valuation {vz}, divisor needs {need}"
            )));
        }
        let yi = ring.reduce(&zi.div(&ghosts[i])?.as_exact());
        let term = xt.mul(&W::shifted_teichmuller(&ctx, &ring, i, yi.clone()))?;
        z = z.sub(&term)?;
        if !z.entries()[i].is_zero() {
            return Err(Error::PrecisionLoss(format!("entry {i} did not cancel")));
        }
        y.push(yi);
    }
    W::new(&ctx, &ring, y)
}

/// Inverse of a unit of W_n(O_F) at the given precision.
pub fn witt_inverse(x: &W, modulus: u32) -> Result<W> {
    if !x.entries()[0].is_unit() {
        return Err(Error::NotDivisible("not a unit".into()));
    }
    let one = W::one(x.ctx(), &Truncated::new(&x.ring().field, modulus));
    ideal_divide(&one, x, modulus, QuotientIn::Integers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::construct::adjoin_zeta_p;
    use crate::localfield::standard_field;
    use crate::localfield::LFElement;
    use crate::witt::context::WittContext;

    #[test]
    fn exact_multiple_and_threshold() {
        let k = standard_field(3, 1, 30).unwrap();
        let z = adjoin_zeta_p(&k).unwrap();
        let f = z.field.clone();
        let ctx = WittContext::new(3, 1).unwrap();
        let ring = Truncated::full(&f);
        let one = LFElement::one(&f);
        let x = W::teichmuller(&ctx, &ring, z.root.sub(&one));
        // v_p(w) = 1 > 1/2
        let w = W::teichmuller(&ctx, &ring, LFElement::from_int(&f, 3));
        let y = ideal_divide(&w, &x, 40, QuotientIn::MaximalIdeal).unwrap();
        assert!(x.mul(&y).unwrap().truncate(40).entries_eq(&w.truncate(40)));
        let u = W::teichmuller(&ctx, &ring, z.root.sub(&one));
        assert!(ideal_divide(&u, &x, 40, QuotientIn::MaximalIdeal).is_err());
        assert!(ideal_divide(&u, &x, 40, QuotientIn::Integers).is_ok());
    }

    #[test]
    fn length_two_multiple() {
        let k = standard_field(3, 1, 30).unwrap();
        let t = crate::localfield::towers::cyclotomic_tower(&k, 2).unwrap();
        let f = t.field.clone();
        let ctx = WittContext::new(3, 2).unwrap();
        let ring = Truncated::full(&f);
        let one = W::one(&ctx, &ring);
        let x = W::teichmuller(&ctx, &ring, t.root.clone()).sub(&one).unwrap();
        let a = W::new(
            &ctx,
            &ring,
            vec![f.uniformizer(), f.uniformizer().pow(2).add(&LFElement::from_int(&f, 2))],
        )
        .unwrap();
        let prec = 60;
        let w = x.mul(&a).unwrap();
        let y = ideal_divide(&w, &x, prec, QuotientIn::Integers).unwrap();
        let back = x.mul(&y).unwrap().truncate(prec);
        assert!(back.entries_eq(&w.truncate(prec)));
    }
}
