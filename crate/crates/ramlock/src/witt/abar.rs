//! The quotient ring W_n(O_F/b_F) / ([zeta_{p^n}] - 1)^r W_n(m_F/b_F) and the structure
//! it carries: the image of u and Y, the filtration, the divided Frobenius and the unit c.

use num_bigint::BigInt;

use super::context::WittContext;
use super::ideal::{ideal_divide, witt_inverse, QuotientIn};
use super::ring::Truncated;
use super::vector::WittVector;
use crate::error::{Error, Result};
use crate::localfield::arith::binom;
use crate::localfield::towers::RadicalTower;
use crate::localfield::{roots, LFElement, LocalField};

type W = WittVector<Truncated>;

/// Integer coefficients of the Eisenstein polynomial of K, constant term first.
pub fn eisenstein_coefficients(k: &LocalField) -> Result<Vec<BigInt>> {
    match k.presentation() {
        Some(pres) => pres
            .eisenstein
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Input(format!("bad coefficient {s:?}")))
            })
            .collect(),
        None if k.parent().is_none() => Ok(vec![-BigInt::from(k.p()), BigInt::from(1)]),
        None => Err(Error::UnsupportedPresentation(
            "base field has no integer Eisenstein presentation".into(),
        )),
    }
}

#[derive(Clone, Debug)]
pub struct AbarRing {
    base: LocalField,
    field: LocalField,
    ctx: WittContext,
    r: u32,
    bound_digits: u32,
    pi_n: LFElement,
    zeta: LFElement,
    work: Truncated,
    kernel: W,
    teich_pi: W,
    gamma: W,
    gamma_r: W,
    t_hat: W,
    v_n: W,
    a_n: W,
    y_img: W,
    c: W,
    c_r: W,
}

impl AbarRing {
    /// Build the ring from chosen pi_n (a p^n-th root of the uniformizer of K) and
    /// zeta (a primitive p^(n+1)-th root of unity), both in F.
    pub fn new(
        base: &LocalField,
        field: &LocalField,
        n: usize,
        r: u32,
        pi_n: &LFElement,
        zeta: &LFElement,
    ) -> Result<AbarRing> {
        let p = base.p();
        if !base.is_ancestor_of(field) {
            return Err(Error::NotInTower);
        }
        if p > 2 && r as u64 >= p - 1 || p == 2 && r > 0 {
            return Err(Error::RangeError(format!("r = {r} must be below p - 1 = {}", p - 1)));
        }
        let ctx = WittContext::new(p, n)?;
        let pn = p.pow(n as u32);
        let unif = base.uniformizer().embed(field)?;
        if pi_n.field() != field || zeta.field() != field {
            return Err(Error::MissingRoots("roots must lie in the ambient field".into()));
        }
        if !pi_n.pow(pn).sub(&unif).is_zero() {
            return Err(Error::MissingRoots(format!("pi_n is not a {pn}-th root of the uniformizer")));
        }
        let zn = zeta.pow(pn);
        if zn.sub(&LFElement::one(field)).is_zero() || !zn.pow(p).is_one() {
            return Err(Error::MissingRoots(format!(
                "zeta is not a primitive {}-th root of unity",
                pn * p
            )));
        }
        let e_f = field.e_over(base)? * base.e();
        // b_F = {v_K > e r/(p-1)}, in digits of F: v_F > e_F r/(p-1)
        let bound_digits = e_f * r / (p as u32 - 1) + 1;
        let work = Truncated::full(field);
        let one = W::one(&ctx, &work);
        let int = |m: &BigInt| W::from_integer(&ctx, &work, m);

        let teich_pi = W::teichmuller(&ctx, &work, pi_n.clone());
        let eis = eisenstein_coefficients(base)?;
        if eis.len() as u32 - 1 != base.e() {
            return Err(Error::UnsupportedPresentation(
                "Eisenstein degree differs from the ramification index".into(),
            ));
        }
        let poly_at = |coeffs: &[BigInt], x: &W| -> Result<W> {
            let mut acc = W::zero(&ctx, &work);
            for c in coeffs.iter().rev() {
                acc = acc.mul(x)?.add(&int(c))?;
            }
            Ok(acc)
        };
        let gamma = poly_at(&eis, &teich_pi)?;
        let gamma_r = gamma.pow(r as u64)?;

        let zeta_n = W::teichmuller(&ctx, &work, zn);
        let kernel = zeta_n.sub(&one)?.pow(r as u64)?;

        let teich_zeta: Vec<W> = (0..p)
            .map(|k| W::teichmuller(&ctx, &work, zeta.pow(k)))
            .collect();
        let mut t_hat = W::zero(&ctx, &work);
        for z in &teich_zeta {
            t_hat = t_hat.add(z)?;
        }
        let v_n = ideal_divide(&t_hat, &gamma, work.prec, QuotientIn::Integers)?;
        if !v_n.entries()[0].is_unit() {
            return Err(Error::PrecisionLoss("v_n is not a unit".into()));
        }
        let pb = BigInt::from(p);
        let mut a_n = W::zero(&ctx, &work);
        for k in 1..p.saturating_sub(1) {
            let sign = if (p - 1 - k).is_multiple_of(2) { 1 } else { -1 };
            let num = BigInt::from(sign) * BigInt::from(binom(p - 1, k)) - 1;
            a_n = a_n.add(&teich_zeta[k as usize].mul(&int(&(num / &pb)))?)?;
        }
        let v_inv = witt_inverse(&v_n, v_n.entries().iter().map(|x| x.prec()).min().unwrap_or(0))?;
        let v_inv = v_inv.map(&work, |x| x.clone());
        let y_img = a_n
            .mul(&v_inv)?
            .mul(&gamma.pow(p - 1)?)?
            .neg();

        // c = Y + sum_{k<p} C(p,k) (-1)^(p-k) p^(p-k-1) E^k g^(p-k) + g(u^p), E = u^e + p g
        let mut g = eis.clone();
        g.pop();
        let g: Vec<BigInt> = g.iter().map(|c| c / &pb).collect();
        let g_pi = poly_at(&g, &teich_pi)?;
        let mut c = y_img.clone();
        for k in 0..p {
            let sign = if (p - k).is_multiple_of(2) { 1 } else { -1 };
            let coeff = BigInt::from(sign) * BigInt::from(binom(p, k)) * pb.pow((p - k - 1) as u32);
            let term = gamma.pow(k)?.mul(&g_pi.pow(p - k)?)?.mul(&int(&coeff))?;
            c = c.add(&term)?;
        }
        c = c.add(&poly_at(&g, &teich_pi.pow(p)?)?)?;
        if !c.entries()[0].is_unit() {
            return Err(Error::PrecisionLoss("c is not a unit".into()));
        }
        let c_r = c.pow(r as u64)?;
        Ok(AbarRing {
            base: base.clone(),
            field: field.clone(),
            ctx,
            r,
            bound_digits,
            pi_n: pi_n.clone(),
            zeta: zeta.clone(),
            work,
            kernel,
            teich_pi,
            gamma,
            gamma_r,
            t_hat,
            v_n,
            a_n,
            y_img,
            c,
            c_r,
        })
    }

    /// Use the roots recorded in a radical tower below F.
    pub fn from_tower(tower: &RadicalTower, field: &LocalField, r: u32) -> Result<AbarRing> {
        let n = tower.n as usize;
        if tower.m < tower.n + 1 {
            return Err(Error::MissingRoots(format!(
                "tower has zeta_(p^{}) but level {} needs zeta_(p^{})",
                tower.m,
                tower.n,
                tower.n + 1
            )));
        }
        if !tower.field.is_ancestor_of(field) {
            return Err(Error::NotInTower);
        }
        let p = tower.base.p();
        let zeta = tower.zeta_top()?.embed(field)?.pow(p.pow(tower.m - tower.n - 1));
        let pi_n = tower.pi_n.embed(field)?;
        AbarRing::new(&tower.base, field, n, r, &pi_n, &zeta)
    }

    /// Search F for pi_n and zeta_{p^(n+1)}.
    pub fn locate(base: &LocalField, field: &LocalField, n: usize, r: u32) -> Result<AbarRing> {
        let p = base.p();
        let pn = p.pow(n as u32) as usize;
        let mut f = vec![LFElement::zero(field); pn + 1];
        f[0] = base.uniformizer().embed(field)?.neg();
        f[pn] = LFElement::one(field);
        let pi_roots = roots(&f)?;
        let pi_n = pi_roots
            .first()
            .ok_or_else(|| Error::MissingRoots(format!("no {pn}-th root of the uniformizer")))?;
        let mut cyc = vec![LFElement::zero(field); pn * (p as usize - 1) + 1];
        for k in 0..p as usize {
            cyc[k * pn] = LFElement::one(field);
        }
        let zetas = roots(&cyc)?;
        let zeta = zetas.first().ok_or_else(|| {
            Error::MissingRoots(format!("no primitive {}-th root of unity", pn * p as usize))
        })?;
        AbarRing::new(base, field, n, r, pi_n, zeta)
    }

    pub fn base(&self) -> &LocalField {
        &self.base
    }
    pub fn field(&self) -> &LocalField {
        &self.field
    }
    pub fn ctx(&self) -> &WittContext {
        &self.ctx
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn n(&self) -> usize {
        self.ctx.n()
    }
    /// Digits of F cut off by b_F.
    pub fn bound_digits(&self) -> u32 {
        self.bound_digits
    }
    /// Working coefficient ring for lifts.
    pub fn work(&self) -> &Truncated {
        &self.work
    }
    pub fn pi_n(&self) -> &LFElement {
        &self.pi_n
    }
    pub fn zeta(&self) -> &LFElement {
        &self.zeta
    }
    /// ([zeta_{p^n}] - 1)^r.
    pub fn kernel_generator(&self) -> &W {
        &self.kernel
    }
    /// [pi_n], the image of u.
    pub fn u_image(&self) -> &W {
        &self.teich_pi
    }
    /// E([pi_n]).
    pub fn gamma(&self) -> &W {
        &self.gamma
    }
    pub fn t_hat(&self) -> &W {
        &self.t_hat
    }
    pub fn v_n(&self) -> &W {
        &self.v_n
    }
    pub fn a_n(&self) -> &W {
        &self.a_n
    }
    /// The image of Y.
    pub fn y_image(&self) -> &W {
        &self.y_img
    }
    pub fn c(&self) -> &W {
        &self.c
    }

    pub fn zero(&self) -> W {
        W::zero(&self.ctx, &self.work)
    }

    pub fn one(&self) -> W {
        W::one(&self.ctx, &self.work)
    }

    pub fn from_integer(&self, m: &BigInt) -> W {
        W::from_integer(&self.ctx, &self.work, m)
    }

    /// Canonical representative modulo W_n(b_F).
    pub fn reduce(&self, x: &W) -> W {
        x.truncate(self.bound_digits)
    }

    /// Whether x maps to zero in the quotient.
    pub fn is_zero(&self, x: &W) -> Result<bool> {
        let d = self.reduce(x);
        if d.min_entry_val().is_none() {
            return Ok(true);
        }
        match ideal_divide(&d, &self.kernel, self.bound_digits, QuotientIn::MaximalIdeal) {
            Ok(_) => Ok(true),
            Err(Error::NotDivisible(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn equal(&self, a: &W, b: &W) -> Result<bool> {
        self.is_zero(&a.sub(b)?)
    }

    /// y with E([pi_n])^r y = x, when x lies in Fil^r.
    pub fn fil_quotient(&self, x: &W) -> Result<W> {
        let prec = x.ring().prec.min(self.work.prec);
        ideal_divide(x, &self.gamma_r, prec, QuotientIn::Integers)
    }

    pub fn in_fil(&self, x: &W) -> Result<bool> {
        match self.fil_quotient(x) {
            Ok(_) => Ok(true),
            Err(Error::NotDivisible(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// The divided Frobenius phi_r(E^r y) = c^r Phi(y).
    pub fn phi_r(&self, x: &W) -> Result<W> {
        let y = self.fil_quotient(x)?;
        self.c_r.mul(&y.frobenius_lift().map(&self.work, |a| a.clone()))
    }

    /// Phi applied after multiplying by c^r, for an already divided element.
    pub fn phi_r_of_quotient(&self, y: &W) -> Result<W> {
        self.c_r.mul(&y.frobenius_lift().map(&self.work, |a| a.clone()))
    }

    /// Evaluate sum coef * u^a * Y^b.
    pub fn eval_sigma(&self, terms: &[(BigInt, u32, u32)]) -> Result<W> {
        let mut acc = self.zero();
        for (coef, a, b) in terms {
            let t = self
                .teich_pi
                .pow(*a as u64)?
                .mul(&self.y_img.pow(*b as u64)?)?
                .mul(&self.from_integer(coef))?;
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::standard_field;
    use crate::localfield::towers::fn_tower;

    fn f1() -> (RadicalTower, AbarRing) {
        let k = standard_field(3, 1, 12).unwrap();
        let t = fn_tower(&k, 1).unwrap();
        let a = AbarRing::from_tower(&t, &t.field, 1).unwrap();
        (t, a)
    }

    #[test]
    fn v_n_times_gamma_is_t_hat() {
        let (_, a) = f1();
        let prod = a.gamma().mul(a.v_n()).unwrap();
        let prec = a.v_n().entries()[0].prec();
        assert!(prod.truncate(prec).entries_eq(&a.t_hat().truncate(prec)));
        assert!(a.v_n().entries()[0].is_unit());
    }

    #[test]
    fn c_is_minus_one_for_linear_eisenstein() {
        let (_, a) = f1();
        assert!(a.c().entries()[0].is_unit());
        let m1 = a.from_integer(&BigInt::from(-1));
        assert!(a.equal(a.c(), &m1).unwrap());
    }

    #[test]
    fn kernel_is_killed() {
        let (t, a) = f1();
        let f = &t.field;
        assert_eq!(a.bound_digits(), 18 / 2 + 1);
        let m = W::teichmuller(a.ctx(), a.work(), f.uniformizer());
        let x = a.kernel_generator().mul(&m).unwrap();
        assert!(a.is_zero(&x).unwrap());
        assert!(!a.is_zero(a.kernel_generator()).unwrap());
        let b = W::teichmuller(a.ctx(), a.work(), f.uniformizer().pow(a.bound_digits() as u64));
        assert!(a.is_zero(&b).unwrap());
        assert!(!a.is_zero(&a.one()).unwrap());
    }

    #[test]
    fn phi_r_on_filtration() {
        let (_, a) = f1();
        let x = a.gamma().mul(a.u_image()).unwrap();
        assert!(a.in_fil(&x).unwrap());
        let img = a.phi_r(&x).unwrap();
        let expect = a.c().mul(&a.u_image().frobenius_lift()).unwrap();
        assert!(a.equal(&img, &expect).unwrap());
        assert!(!a.in_fil(&a.one()).unwrap());
    }

    #[test]
    fn r_zero_is_plain_truncation() {
        let k = standard_field(3, 1, 12).unwrap();
        let t = fn_tower(&k, 1).unwrap();
        let a = AbarRing::from_tower(&t, &t.field, 0).unwrap();
        assert_eq!(a.bound_digits(), 1);
        let m = W::teichmuller(a.ctx(), a.work(), t.field.uniformizer());
        assert!(a.is_zero(&m).unwrap());
    }

    #[test]
    fn locate_fails_without_roots() {
        let k = standard_field(3, 1, 12).unwrap();
        let err = AbarRing::locate(&k, &k, 1, 1).unwrap_err();
        assert!(matches!(err, Error::MissingRoots(_)));
    }
}
