//! Field handles: a chain of unramified and Eisenstein steps above Q_p.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::arith::{self, addm, mulm, negm, subm};
use super::element::LFElement;
use super::fp;
use crate::error::{Error, Result};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Unramified,
    Eisenstein,
}

#[derive(Debug)]
pub(crate) struct Step {
    pub kind: StepKind,
    pub degree: usize,
    /// Lower coefficients g_0..g_{d-1} of the monic defining polynomial, in parent coordinates.
    pub poly: Vec<Vec<u64>>,
    /// Eisenstein steps: inverse of the unit g_0 / (parent uniformizer).
    pub g0_inv: Vec<u64>,
}

#[derive(Debug)]
pub(crate) struct FieldData {
    pub id: u64,
    pub p: u64,
    pub cap: u32,
    pub modulus: u64,
    pub ppow: Vec<u64>,
    pub dim: usize,
    pub e: u32,
    pub f: u32,
    pub weights: Vec<u32>,
    pub parent: Option<LocalField>,
    pub step: Option<Step>,
    pub unif: Vec<u64>,
    /// Ramification index of the field whose valuation normalizes `valuation()`.
    pub norm_e: u32,
    pub name: String,
    pub presentation: Option<Presentation>,
}

/// Handle to a finite extension of Q_p. Cloning is cheap; equality is identity.
#[derive(Clone)]
pub struct LocalField(pub(crate) Arc<FieldData>);

impl PartialEq for LocalField {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}
impl Eq for LocalField {}

impl fmt::Debug for LocalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LocalField({}, p={}, [{}], e={}, f={}, N={})",
            self.0.name,
            self.0.p,
            self.0.dim,
            self.0.e,
            self.0.f,
            self.0.cap
        )
    }
}

/// JSON presentation of a base field: integer Eisenstein polynomial over W(F_q).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub p: u64,
    #[serde(default = "one_u32")]
    pub unramified_degree: u32,
    /// Coefficients of E(u) from the constant term up to the leading 1.
    pub eisenstein: Vec<String>,
    pub precision: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<Presentation>>,
}

fn one_u32() -> u32 {
    1
}

impl LocalField {
    /// Q_p with coefficients kept modulo p^cap.
    pub fn qp(p: u64, cap: u32) -> Result<LocalField> {
        if !arith::is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        let maxd = arith::max_digits(p);
        if cap == 0 || cap > maxd {
            return Err(Error::PrecisionTooLow(format!(
                "precision must lie in 1..={maxd} digits for p = {p}"
            )));
        }
        let ppow = powers(p, cap);
        let modulus = ppow[cap as usize];
        Ok(LocalField(Arc::new(FieldData {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            p,
            cap,
            modulus,
            ppow,
            dim: 1,
            e: 1,
            f: 1,
            weights: vec![0],
            parent: None,
            step: None,
            unif: vec![p % modulus],
            norm_e: 1,
            name: format!("Q_{p}"),
            presentation: None,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    /// Working precision in p-adic digits.
    pub fn cap(&self) -> u32 {
        self.0.cap
    }
    /// Precision cap in digits of the field's own uniformizer.
    pub fn cap_digits(&self) -> u32 {
        self.0.cap * self.0.e
    }
    pub fn degree(&self) -> usize {
        self.0.dim
    }
    /// Absolute ramification index.
    pub fn e(&self) -> u32 {
        self.0.e
    }
    /// Absolute residue degree.
    pub fn f(&self) -> u32 {
        self.0.f
    }
    pub fn q(&self) -> u64 {
        self.0.p.pow(self.0.f)
    }
    pub fn name(&self) -> &str {
        &self.0.name
    }
    pub fn parent(&self) -> Option<&LocalField> {
        self.0.parent.as_ref()
    }
    pub fn step_kind(&self) -> Option<StepKind> {
        self.0.step.as_ref().map(|s| s.kind)
    }
    pub fn step_degree(&self) -> usize {
        self.0.step.as_ref().map_or(1, |s| s.degree)
    }
    pub fn presentation(&self) -> Option<&Presentation> {
        self.0.presentation.as_ref()
    }
    /// Ramification index of the field normalizing `LFElement::valuation`.
    pub fn normalizing_e(&self) -> u32 {
        self.0.norm_e
    }

    /// Lower coefficients of the top step's defining polynomial, as parent elements.
    pub fn step_polynomial(&self) -> Option<Vec<LFElement>> {
        let parent = self.parent()?;
        let step = self.0.step.as_ref()?;
        let mut out: Vec<LFElement> = step
            .poly
            .iter()
            .map(|c| LFElement::from_raw(parent, c.clone(), parent.cap_digits()))
            .collect();
        out.push(LFElement::one(parent));
        Some(out)
    }

    /// The generator of the top step (a uniformizer for Eisenstein steps).
    pub fn generator(&self) -> LFElement {
        match &self.0.parent {
            None => LFElement::from_int(self, 1),
            Some(par) => {
                let mut c = vec![0u64; self.0.dim];
                c[par.degree()] = 1 % self.0.modulus;
                LFElement::from_raw(self, c, self.cap_digits())
            }
        }
    }

    pub fn uniformizer(&self) -> LFElement {
        LFElement::from_raw(self, self.0.unif.clone(), self.cap_digits())
    }

    /// Chain of fields from Q_p up to and including this one.
    pub fn chain(&self) -> Vec<LocalField> {
        let mut out = vec![self.clone()];
        let mut cur = self.clone();
        while let Some(par) = cur.parent().cloned() {
            out.push(par.clone());
            cur = par;
        }
        out.reverse();
        out
    }

    pub fn is_ancestor_of(&self, other: &LocalField) -> bool {
        other.chain().iter().any(|f| f == self)
    }

    /// Ramification index of self over an ancestor.
    pub fn e_over(&self, base: &LocalField) -> Result<u32> {
        if !base.is_ancestor_of(self) {
            return Err(Error::NotInTower);
        }
        Ok(self.e() / base.e())
    }

    pub fn degree_over(&self, base: &LocalField) -> Result<usize> {
        if !base.is_ancestor_of(self) {
            return Err(Error::NotInTower);
        }
        Ok(self.degree() / base.degree())
    }

    /// Copy of this handle whose valuations are reported in its own normalization.
    pub fn renormalized(&self) -> LocalField {
        let d = &self.0;
        LocalField(Arc::new(FieldData {
            id: d.id,
            p: d.p,
            cap: d.cap,
            modulus: d.modulus,
            ppow: d.ppow.clone(),
            dim: d.dim,
            e: d.e,
            f: d.f,
            weights: d.weights.clone(),
            parent: d.parent.clone(),
            step: d.step.as_ref().map(|s| Step {
                kind: s.kind,
                degree: s.degree,
                poly: s.poly.clone(),
                g0_inv: s.g0_inv.clone(),
            }),
            unif: d.unif.clone(),
            norm_e: d.e,
            name: d.name.clone(),
            presentation: d.presentation.clone(),
        }))
    }

    /// Extend by a monic polynomial whose reduction is irreducible over the residue field.
    /// The caller certifies irreducibility.
    pub(crate) fn extend_unramified(&self, poly: &[LFElement], name: &str) -> Result<LocalField> {
        let d = poly.len() - 1;
        let lower = self.lower_coeffs(poly)?;
        self.push_step(
            Step {
                kind: StepKind::Unramified,
                degree: d,
                poly: lower,
                g0_inv: Vec::new(),
            },
            name,
            self.cap(),
        )
    }

    /// Extend by an Eisenstein polynomial over this field.
    pub(crate) fn extend_eisenstein(&self, poly: &[LFElement], name: &str) -> Result<LocalField> {
        let d = poly.len() - 1;
        if d == 0 {
            return Err(Error::Input("constant polynomial".into()));
        }
        for (i, c) in poly[..d].iter().enumerate() {
            match c.val_digits() {
                Some(0) => {
                    return Err(Error::NotEisenstein(format!(
                        "coefficient {i} is a unit"
                    )))
                }
                None if c.prec() < 2 => {
                    return Err(Error::PrecisionTooLow(format!(
                        "coefficient {i} is not known to two digits"
                    )))
                }
                _ => {}
            }
        }
        match poly[0].val_digits() {
            Some(1) => {}
            Some(_) | None => {
                if poly[0].prec() < 2 && poly[0].val_digits().is_none() {
                    return Err(Error::PrecisionTooLow("constant term indeterminate".into()));
                }
                return Err(Error::NotEisenstein(
                    "constant term must have valuation one".into(),
                ));
            }
        }
        if !poly[d].is_one() {
            return Err(Error::NotEisenstein("polynomial is not monic".into()));
        }
        let lower = self.lower_coeffs(poly)?;
        let unit = poly[0].div_unif(1)?;
        let g0_inv = unit.inv()?.raw().to_vec();
        // the defining coefficients fix the precision available above
        let min_prec = poly[..d].iter().map(|c| c.prec()).min().unwrap_or(self.cap_digits());
        let cap = self.cap().min(min_prec / self.e()).max(1);
        self.push_step(
            Step {
                kind: StepKind::Eisenstein,
                degree: d,
                poly: lower,
                g0_inv,
            },
            name,
            cap,
        )
    }

    fn lower_coeffs(&self, poly: &[LFElement]) -> Result<Vec<Vec<u64>>> {
        let d = poly.len() - 1;
        let mut out = Vec::with_capacity(d);
        for c in &poly[..d] {
            if c.field() != self {
                return Err(Error::NotInTower);
            }
            out.push(c.raw().to_vec());
        }
        Ok(out)
    }

    fn push_step(&self, step: Step, name: &str, cap: u32) -> Result<LocalField> {
        let par = &self.0;
        let d = step.degree;
        let db = par.dim;
        let (e, f) = match step.kind {
            StepKind::Unramified => (par.e, par.f * d as u32),
            StepKind::Eisenstein => (par.e * d as u32, par.f),
        };
        let mut weights = Vec::with_capacity(d * db);
        for i in 0..d {
            for &w in &par.weights {
                weights.push(match step.kind {
                    StepKind::Unramified => w,
                    StepKind::Eisenstein => i as u32 + d as u32 * w,
                });
            }
        }
        let ppow = powers(par.p, cap);
        let modulus = ppow[cap as usize];
        let mut unif = vec![0u64; d * db];
        match step.kind {
            StepKind::Unramified => {
                for (i, &u) in par.unif.iter().enumerate() {
                    unif[i] = u % modulus;
                }
            }
            StepKind::Eisenstein => unif[db] = 1 % modulus,
        }
        let step = Step {
            kind: step.kind,
            degree: d,
            poly: step
                .poly
                .into_iter()
                .map(|v| v.into_iter().map(|x| x % modulus).collect())
                .collect(),
            g0_inv: step.g0_inv.into_iter().map(|x| x % modulus).collect(),
        };
        Ok(LocalField(Arc::new(FieldData {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            p: par.p,
            cap,
            modulus,
            ppow,
            dim: d * db,
            e,
            f,
            weights,
            parent: Some(self.clone()),
            step: Some(step),
            unif,
            norm_e: par.norm_e,
            name: name.to_string(),
            presentation: None,
        })))
    }

    fn with_presentation(self, pres: Presentation, name: String) -> LocalField {
        let d = &self.0;
        LocalField(Arc::new(FieldData {
            id: d.id,
            p: d.p,
            cap: d.cap,
            modulus: d.modulus,
            ppow: d.ppow.clone(),
            dim: d.dim,
            e: d.e,
            f: d.f,
            weights: d.weights.clone(),
            parent: d.parent.clone(),
            step: d.step.as_ref().map(|s| Step {
                kind: s.kind,
                degree: s.degree,
                poly: s.poly.clone(),
                g0_inv: s.g0_inv.clone(),
            }),
            unif: d.unif.clone(),
            norm_e: d.e,
            name,
            presentation: Some(pres),
        }))
    }

    // ---- raw coefficient arithmetic --------------------------------------

    pub(crate) fn raw_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.0.modulus;
        a.iter().zip(b).map(|(&x, &y)| addm(x, y, m)).collect()
    }

    pub(crate) fn raw_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.0.modulus;
        a.iter().zip(b).map(|(&x, &y)| subm(x, y, m)).collect()
    }

    pub(crate) fn raw_neg(&self, a: &[u64]) -> Vec<u64> {
        let m = self.0.modulus;
        a.iter().map(|&x| negm(x % m, m)).collect()
    }

    pub(crate) fn raw_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let fd = &self.0;
        let m = fd.modulus;
        let (par, step) = match (&fd.parent, &fd.step) {
            (Some(p), Some(s)) => (p, s),
            _ => return vec![mulm(a[0], b[0], m)],
        };
        let d = step.degree;
        let db = par.0.dim;
        if db == 1 {
            let mut prod = vec![0u128; 2 * d - 1];
            let mm = m as u128;
            for i in 0..d {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..d {
                    if b[j] == 0 {
                        continue;
                    }
                    prod[i + j] = (prod[i + j] + a[i] as u128 * b[j] as u128) % mm;
                }
            }
            for t in (d..2 * d - 1).rev() {
                let c = prod[t] % mm;
                if c == 0 {
                    continue;
                }
                for l in 0..d {
                    let g = step.poly[l][0] as u128;
                    let sub = c * g % mm;
                    prod[t - d + l] = (prod[t - d + l] + mm - sub) % mm;
                }
            }
            return prod[..d].iter().map(|&x| (x % mm) as u64).collect();
        }
        let zero = |s: &[u64]| s.iter().all(|&x| x == 0);
        let mut prod: Vec<Vec<u64>> = vec![vec![0u64; db]; 2 * d - 1];
        for i in 0..d {
            let ai = &a[i * db..(i + 1) * db];
            if zero(ai) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * db..(j + 1) * db];
                if zero(bj) {
                    continue;
                }
                let t = par.raw_mul(ai, bj);
                prod[i + j] = par.raw_add(&prod[i + j], &t);
            }
        }
        for t in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[t]);
            if zero(&c) {
                continue;
            }
            for l in 0..d {
                if zero(&step.poly[l]) {
                    continue;
                }
                let s = par.raw_mul(&c, &step.poly[l]);
                prod[t - d + l] = par.raw_sub(&prod[t - d + l], &s);
            }
        }
        let mut out = Vec::with_capacity(d * db);
        for v in prod.into_iter().take(d) {
            out.extend(v.into_iter().map(|x| x % m));
        }
        out
    }

    /// Divide by the uniformizer; the caller guarantees valuation at least one.
    pub(crate) fn raw_div_unif(&self, a: &[u64]) -> Vec<u64> {
        let fd = &self.0;
        let m = fd.modulus;
        let (par, step) = match (&fd.parent, &fd.step) {
            (Some(p), Some(s)) => (p, s),
            _ => return vec![(a[0] / fd.p) % m],
        };
        let d = step.degree;
        let db = par.0.dim;
        match step.kind {
            StepKind::Unramified => {
                let mut out = Vec::with_capacity(d * db);
                for i in 0..d {
                    out.extend(par.raw_div_unif(&a[i * db..(i + 1) * db]));
                }
                out.into_iter().map(|x| x % m).collect()
            }
            StepKind::Eisenstein => {
                let b0 = &a[0..db];
                let qv = par.raw_mul(&par.raw_div_unif(b0), &step.g0_inv);
                let mut out = Vec::with_capacity(d * db);
                for j in 0..d {
                    let next = if j + 1 < d {
                        let bj = &a[(j + 1) * db..(j + 2) * db];
                        par.raw_sub(bj, &par.raw_mul(&qv, &step.poly[j + 1]))
                    } else {
                        par.raw_neg(&qv)
                    };
                    out.extend(next);
                }
                out.into_iter().map(|x| x % m).collect()
            }
        }
    }

    /// Reduce coefficients to the canonical representative modulo the given precision.
    pub(crate) fn normalize(&self, c: &mut [u64], prec: u32) {
        let fd = &self.0;
        for (x, &w) in c.iter_mut().zip(&fd.weights) {
            let k = if prec <= w {
                0
            } else {
                (prec - w).div_ceil(fd.e).min(fd.cap)
            };
            *x %= fd.ppow[k as usize];
        }
    }

    pub(crate) fn raw_val(&self, c: &[u64]) -> Option<u32> {
        let fd = &self.0;
        let mut best: Option<u32> = None;
        for (&x, &w) in c.iter().zip(&fd.weights) {
            if x != 0 {
                let v = fd.e * arith::vp_word(x, fd.p) + w;
                best = Some(best.map_or(v, |b: u32| b.min(v)));
            }
        }
        best
    }

    pub(crate) fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.0.modulus);
        n.mod_floor(&m).to_u64().unwrap_or(0)
    }

    /// Indices of the flat basis that survive to the residue field.
    pub(crate) fn residue_indices(&self) -> Vec<usize> {
        self.0
            .weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w == 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// A complete set of representatives of the residue field, in a fixed order.
    pub fn residue_representatives(&self) -> Vec<LFElement> {
        let idx = self.residue_indices();
        let p = self.0.p;
        let count = p.pow(idx.len() as u32);
        let mut out = Vec::with_capacity(count as usize);
        for mut t in 0..count {
            let mut c = vec![0u64; self.0.dim];
            for &i in &idx {
                c[i] = t % p;
                t /= p;
            }
            out.push(LFElement::from_raw(self, c, self.cap_digits()));
        }
        out
    }
}

fn powers(p: u64, cap: u32) -> Vec<u64> {
    let mut v = Vec::with_capacity(cap as usize + 1);
    let mut acc = 1u64;
    v.push(1);
    for _ in 0..cap {
        acc *= p;
        v.push(acc);
    }
    v
}

/// Build K from an unramified degree and an integer Eisenstein polynomial.
/// `eis` lists the coefficients from the constant term upward and must be monic.
pub fn make_field(p: u64, m: u32, eis: &[BigInt], precision: u32) -> Result<LocalField> {
    if m == 0 {
        return Err(Error::Input("unramified degree must be positive".into()));
    }
    if eis.len() < 2 {
        return Err(Error::NotEisenstein("degree must be at least one".into()));
    }
    let root = LocalField::qp(p, precision)?;
    let e = eis.len() - 1;
    let pb = BigInt::from(p);
    if eis[e] != BigInt::from(1) {
        return Err(Error::NotEisenstein("polynomial is not monic".into()));
    }
    let pm = BigInt::from(p).pow(precision);
    for (i, c) in eis[..e].iter().enumerate() {
        if (c % &pm).is_zero() && i == 0 {
            return Err(Error::PrecisionTooLow(
                "constant term vanishes at this precision".into(),
            ));
        }
        if !(c % &pb).is_zero() {
            return Err(Error::NotEisenstein(format!("coefficient {i} is a unit")));
        }
    }
    if (&eis[0] % (&pb * &pb)).is_zero() {
        return Err(Error::NotEisenstein(
            "constant term has valuation above one".into(),
        ));
    }
    let mut base = root;
    let mut name = format!("Q_{p}");
    if m > 1 {
        let h = fp::conway_like(p, m);
        let poly: Vec<LFElement> = h.iter().map(|&c| LFElement::from_int(&base, c as i64)).collect();
        name = format!("Q_{p}^({m})");
        base = base.extend_unramified(&poly, &name)?;
    }
    let field = if e == 1 {
        base
    } else {
        let poly: Vec<LFElement> = eis.iter().map(|c| LFElement::from_bigint(&base, c)).collect();
        name = format!("{name}[u]/({})", poly_string(eis));
        base.extend_eisenstein(&poly, &name)?
    };
    let pres = Presentation {
        p,
        unramified_degree: m,
        eisenstein: eis.iter().map(|c| c.to_string()).collect(),
        precision,
        base: None,
    };
    Ok(field.with_presentation(pres, name))
}

/// Build a field from its JSON presentation.
pub fn field_from_presentation(pres: &Presentation) -> Result<LocalField> {
    if pres.base.is_some() {
        return Err(Error::UnsupportedPresentation(
            "nested presentations are built with adjoin_root".into(),
        ));
    }
    let mut coeffs = Vec::new();
    for s in &pres.eisenstein {
        coeffs.push(
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Input(format!("bad coefficient {s:?}")))?,
        );
    }
    make_field(pres.p, pres.unramified_degree, &coeffs, pres.precision)
}

pub fn field_from_json(text: &str) -> Result<LocalField> {
    let pres: Presentation =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("field JSON: {e}")))?;
    field_from_presentation(&pres)
}

fn poly_string(c: &[BigInt]) -> String {
    let mut parts = Vec::new();
    for (i, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "u".to_string(),
            _ => format!("u^{i}"),
        };
        let coef = if i > 0 && *a == BigInt::from(1) {
            String::new()
        } else {
            a.to_string()
        };
        parts.push(format!("{coef}{mono}"));
    }
    parts.join("+").replace("+-", "-")
}

/// The field K = Q_p(p^{1/e}) used by tables over (p, e).
pub fn standard_field(p: u64, e: u32, precision: u32) -> Result<LocalField> {
    let mut coeffs = vec![BigInt::zero(); e as usize + 1];
    coeffs[0] = -BigInt::from(p);
    coeffs[e as usize] = BigInt::from(1);
    make_field(p, 1, &coeffs, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qi};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn make_field_examples() {
        let k = make_field(3, 1, &ints(&[-3, 1]), 20).unwrap();
        assert_eq!(k.e(), 1);
        assert_eq!(LFElement::from_int(&k, 3).valuation().unwrap(), Some(qi(1)));
        let k2 = make_field(3, 1, &ints(&[-3, 0, 1]), 20).unwrap();
        assert_eq!(k2.e(), 2);
        assert_eq!(LFElement::from_int(&k2, 3).valuation().unwrap(), Some(qi(2)));
        assert_eq!(k2.uniformizer().valuation().unwrap(), Some(qi(1)));
        let err = make_field(3, 1, &ints(&[-1, 0, 1]), 20).unwrap_err();
        assert!(matches!(err, Error::NotEisenstein(_)));
        let _ = q(1, 2);
    }

    #[test]
    fn unramified_base() {
        let k = make_field(3, 2, &ints(&[-3, 1]), 10).unwrap();
        assert_eq!(k.f(), 2);
        assert_eq!(k.residue_representatives().len(), 9);
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"p":5,"unramified_degree":1,"eisenstein":["-5","0","1"],"precision":12}"#;
        let k = field_from_json(text).unwrap();
        assert_eq!(k.e(), 2);
        let back = serde_json::to_string(k.presentation().unwrap()).unwrap();
        let k2 = field_from_json(&back).unwrap();
        assert_eq!(k2.degree(), 2);
    }
}
