use super::bound::bound_value;
use super::profile::{break_from_polynomial, BreakDatum};
use crate::error::{Error, Result};
use crate::localfield::construct::adjoin_zeta_p;
use crate::localfield::poly;
use crate::localfield::{LFElement, LocalField, StepKind};
use crate::rat::{q, qi, Q};

pub fn kummer_poly(k: &LocalField, n: u32) -> Vec<LFElement> {
    let deg = k.p().pow(n) as usize;
    let mut f = vec![k.uniformizer().neg()];
    for _ in 1..deg {
        f.push(LFElement::zero(k));
    }
    f.push(LFElement::one(k));
    f
}

/// Break of K_n/K from the profile of T^(p^n) - pi.
pub fn break_kummer(k: &LocalField, n: u32) -> Result<BreakDatum> {
    let mut b = break_from_polynomial(&kummer_poly(k, n), k)?;
    b.label = format!("kummer n={n}");
    Ok(b)
}

/// e(K(zeta_p)/K), read off an explicit construction.
pub fn cyclotomic_index(k: &LocalField) -> Result<u32> {
    let z = adjoin_zeta_p(k)?;
    z.field.e_over(k)
}

/// Upper bound 1 - 1/e' + e(n + 1/(p-1)) for the break of K(zeta_{p^(n+1)})/K.
pub fn break_cyclotomic(k: &LocalField, n: u32) -> Result<Q> {
    let ep = cyclotomic_index(k)? as i64;
    let e = qi(k.e() as i64);
    Ok(qi(1) - q(1, ep) + e * (qi(n as i64) + q(1, k.p() as i64 - 1)))
}

/// Closed form 1 + e(n + 1/(p-1)).
pub fn fn_closed_form(p: u64, e: u32, n: u32) -> Q {
    qi(1) + qi(e as i64) * (qi(n as i64) + q(1, p as i64 - 1))
}

/// Break of a composite over K: the larger of the parts' breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeBreak {
    pub kummer: BreakDatum,
    pub cyclotomic_bound: Q,
    pub computed: Q,
    pub closed_form: Q,
}

impl CompositeBreak {
    pub fn matches(&self) -> bool {
        self.computed == self.closed_form
    }

    pub fn datum(&self, label: &str) -> BreakDatum {
        BreakDatum {
            label: label.into(),
            u: self.computed.clone(),
            different: None,
            upper_bound_only: false,
        }
    }
}

fn composite(k: &LocalField, n: u32, cyc_level: u32) -> Result<CompositeBreak> {
    if k.p() < 3 {
        return Err(Error::RangeError("composite breaks need p >= 3".into()));
    }
    let kummer = break_kummer(k, n)?;
    let cyc = break_cyclotomic(k, cyc_level)?;
    let computed = if cyc > kummer.u { cyc.clone() } else { kummer.u.clone() };
    Ok(CompositeBreak {
        kummer,
        cyclotomic_bound: cyc,
        computed,
        closed_form: fn_closed_form(k.p(), k.e(), n),
    })
}

/// F_n = K(pi_n, zeta_{p^(n+1)}): G_{F_n} is the intersection of G_{K_n} and the
/// cyclotomic group, so its break is the larger of the two.
pub fn break_fn(k: &LocalField, n: u32) -> Result<CompositeBreak> {
    composite(k, n, n)
}

/// K_n(zeta_{p^n}).
pub fn break_tate(k: &LocalField, n: u32) -> Result<CompositeBreak> {
    composite(k, n, n.saturating_sub(1))
}

/// v_K of the different of a tower over K, summing the step differents.
pub fn different_valuation(top: &LocalField, base: &LocalField) -> Result<Q> {
    if !base.is_ancestor_of(top) {
        return Err(Error::NotInTower);
    }
    let mut total = qi(0);
    let mut cur = top.clone();
    while &cur != base {
        let parent = cur.parent().ok_or(Error::NotInTower)?.clone();
        if cur.step_kind() == Some(StepKind::Eisenstein) {
            let g = cur.step_polynomial().ok_or(Error::NotInTower)?;
            let g = poly::embed_poly(&g, &cur)?;
            let dg = poly::eval(&poly::derivative(&g), &cur.generator());
            let v = dg
                .val_digits()
                .ok_or_else(|| Error::PrecisionLoss("step derivative vanishes".into()))?;
            total += q(v as i64, cur.e_over(base)? as i64);
        }
        cur = parent;
    }
    Ok(total)
}

/// v_K(D_{L/K}) < u(K, r, n) for r > 0; the different must vanish for r = 0.
pub fn check_discriminant_bound(top: &LocalField, base: &LocalField, r: u32, n: u32) -> Result<bool> {
    let d = different_valuation(top, base)?;
    let u = bound_value(base.p(), base.e(), r, n)?;
    Ok(if r == 0 { d == qi(0) } else { d < u })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::construct::adjoin_root;
    use crate::localfield::poly::poly_from_ints;
    use crate::localfield::standard_field;
    use crate::localfield::towers::{fn_tower, kummer_tower};

    #[test]
    fn cyclotomic_examples() {
        let q3 = standard_field(3, 1, 30).unwrap();
        assert_eq!(break_cyclotomic(&q3, 1).unwrap(), qi(2));
        let q5 = standard_field(5, 1, 20).unwrap();
        assert_eq!(break_cyclotomic(&q5, 1).unwrap(), qi(2));
        let z = adjoin_zeta_p(&q3).unwrap().field.renormalized();
        assert_eq!(cyclotomic_index(&z).unwrap(), 1);
        assert_eq!(break_cyclotomic(&z, 1).unwrap(), qi(3));
    }

    #[test]
    fn fn_examples() {
        let q3 = standard_field(3, 1, 30).unwrap();
        let b = break_fn(&q3, 1).unwrap();
        assert_eq!(b.computed, q(5, 2));
        assert!(b.matches());
        let k = standard_field(5, 2, 12).unwrap();
        assert_eq!(fn_closed_form(5, 2, 2), q(11, 2));
        assert!(break_fn(&k, 2).unwrap().matches());
    }

    #[test]
    fn differents() {
        let q3 = standard_field(3, 1, 30).unwrap();
        let k1 = kummer_tower(&q3, 1).unwrap();
        assert_eq!(different_valuation(&k1.field, &q3).unwrap(), q(5, 3));
        let u = adjoin_root(&q3, &poly_from_ints(&q3, &[1, 0, 1]), None).unwrap();
        assert_eq!(different_valuation(&u.field, &q3).unwrap(), qi(0));
        assert!(check_discriminant_bound(&u.field, &q3, 0, 1).unwrap());
        assert!(check_discriminant_bound(&q3, &q3, 1, 1).unwrap());
        let z = adjoin_zeta_p(&q3).unwrap();
        assert_eq!(different_valuation(&z.field, &q3).unwrap(), q(1, 2));
        let f1 = fn_tower(&q3, 1).unwrap();
        let d = different_valuation(&f1.field, &q3).unwrap();
        assert!(d < q(5, 2));
        assert!(check_discriminant_bound(&f1.field, &q3, 1, 1).unwrap());
    }
}
