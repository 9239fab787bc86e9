//! Tower construction: adjoining roots with Eisenstein re-presentation, radicals
//! and roots of unity.

use super::arith;
use super::element::LFElement;
use super::field::{LocalField, StepKind};
use super::poly::{self, Poly};
use crate::error::{Error, Result};

/// A new field together with a root of the adjoined polynomial.
#[derive(Clone, Debug)]
pub struct Adjoined {
    pub field: LocalField,
    pub root: LFElement,
}

// ---- residue-field polynomials (elements at precision one) -----------------

fn res(x: &LFElement) -> LFElement {
    x.with_prec(1)
}

fn rtrim(a: &mut Poly) {
    while a.len() > 1 && a.last().unwrap().is_zero() {
        a.pop();
    }
}

fn rpoly(f: &[LFElement]) -> Poly {
    let mut v: Poly = f.iter().map(res).collect();
    rtrim(&mut v);
    v
}

fn ris_zero(a: &[LFElement]) -> bool {
    a.iter().all(|c| c.is_zero())
}

fn rrem(a: &[LFElement], m: &[LFElement]) -> Result<Poly> {
    let mut r: Poly = a.to_vec();
    rtrim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = m[dm].inv()?;
    while r.len() > dm && !ris_zero(&r) {
        let dr = r.len() - 1;
        let c = r[dr].mul(&lead_inv);
        for i in 0..=dm {
            let idx = dr - dm + i;
            r[idx] = r[idx].sub(&c.mul(&m[i]));
        }
        r.pop();
        rtrim(&mut r);
    }
    Ok(r)
}

fn rmulmod(a: &[LFElement], b: &[LFElement], m: &[LFElement]) -> Result<Poly> {
    let prod = poly::mul(a, b);
    rrem(&prod.iter().map(res).collect::<Poly>(), m)
}

fn rgcd(a: &[LFElement], b: &[LFElement]) -> Result<Poly> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    rtrim(&mut x);
    rtrim(&mut y);
    while !ris_zero(&y) {
        let r = rrem(&x, &y)?;
        x = y;
        y = r;
    }
    Ok(x)
}

/// X^(q^times) modulo m over the residue field.
fn rfrob(m: &[LFElement], times: u32, qsize: u64) -> Result<Poly> {
    let field = m[0].field().clone();
    let x = vec![LFElement::zero(&field).with_prec(1), LFElement::one(&field).with_prec(1)];
    let mut cur = rrem(&x, m)?;
    for _ in 0..times {
        let mut acc = vec![LFElement::one(&field).with_prec(1)];
        let mut base = cur.clone();
        let mut e = qsize;
        while e > 0 {
            if e & 1 == 1 {
                acc = rmulmod(&acc, &base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = rmulmod(&base, &base, m)?;
            }
        }
        cur = acc;
    }
    Ok(cur)
}

fn minus_x(mut a: Poly) -> Poly {
    let field = a[0].field().clone();
    while a.len() < 2 {
        a.push(LFElement::zero(&field).with_prec(1));
    }
    a[1] = a[1].sub(&LFElement::one(&field));
    rtrim(&mut a);
    a
}

/// Rabin's test over the residue field of f's coefficient field.
pub fn residue_irreducible(f: &[LFElement]) -> Result<bool> {
    let m = rpoly(f);
    let d = m.len() - 1;
    if d == 0 {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    let qsize = m[0].field().q();
    if !ris_zero(&minus_x(rfrob(&m, d as u32, qsize)?)) {
        return Ok(false);
    }
    for l in arith::prime_factors(d as u64) {
        let g = minus_x(rfrob(&m, (d as u64 / l) as u32, qsize)?);
        if rgcd(&m, &g)?.len() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn residue_squarefree(f: &[LFElement]) -> Result<bool> {
    let m = rpoly(f);
    let dm = rpoly(&poly::derivative(&m));
    if ris_zero(&dm) {
        return Ok(false);
    }
    Ok(rgcd(&m, &dm)?.len() == 1)
}

// ---- linear algebra over O_B -------------------------------------------------

/// Characteristic polynomial det(X - M), low coefficients first, division free.
pub fn charpoly(m: &[Vec<LFElement>]) -> Poly {
    let n = m.len();
    let field = m[0][0].field().clone();
    let zero = LFElement::zero(&field);
    let one = LFElement::one(&field);
    let mut c: Vec<LFElement> = vec![one.clone(), m[0][0].neg()];
    for r in 1..n {
        let row: Vec<LFElement> = m[r][..r].to_vec();
        let col: Vec<LFElement> = (0..r).map(|i| m[i][r].clone()).collect();
        let a = &m[r][r];
        let mut t = vec![one.clone(), a.neg()];
        let mut v = col.clone();
        for _ in 0..r {
            let dot = row
                .iter()
                .zip(&v)
                .fold(zero.clone(), |acc, (x, y)| acc.add(&x.mul(y)));
            t.push(dot.neg());
            v = (0..r)
                .map(|i| {
                    (0..r).fold(zero.clone(), |acc, j| acc.add(&m[i][j].mul(&v[j])))
                })
                .collect();
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut s = zero.clone();
            for j in 0..=i.min(r) {
                if i - j < t.len() && j < c.len() {
                    s = s.add(&t[i - j].mul(&c[j]));
                }
            }
            next.push(s);
        }
        c = next;
    }
    c.reverse();
    c
}

/// Multiply two residues modulo a monic h over O_B (coefficient vectors).
fn pmulmod(a: &[LFElement], b: &[LFElement], h: &[LFElement]) -> Poly {
    let d = h.len() - 1;
    let mut prod = poly::mul(a, b);
    for t in (d..prod.len()).rev() {
        let c = prod[t].clone();
        if c.is_zero() && c.prec() >= c.field().cap_digits() {
            continue;
        }
        for l in 0..d {
            prod[t - d + l] = prod[t - d + l].sub(&c.mul(&h[l]));
        }
    }
    prod.truncate(d);
    let field = h[0].field().clone();
    while prod.len() < d {
        prod.push(LFElement::zero(&field));
    }
    prod
}

fn monomial(field: &LocalField, k: usize, d: usize) -> Poly {
    let mut v = vec![LFElement::zero(field); d.max(k + 1)];
    v[k] = LFElement::one(field);
    v
}

/// Adjoin a root of a monic h whose polygon is a single slope a/d with gcd(a, d) = 1.
/// The step is re-presented by the Eisenstein polynomial of a uniformizer.
pub fn adjoin_single_slope(base: &LocalField, h: &[LFElement], a: u32, name: &str) -> Result<Adjoined> {
    let d = h.len() - 1;
    if arith::gcd(a as i64, d as i64) != 1 {
        return Err(Error::UnsupportedPresentation(format!(
            "slope {a}/{d} is not in lowest terms"
        )));
    }
    if a == 1 || d == 1 {
        let field = base.extend_eisenstein(h, name)?;
        let root = field.generator();
        return Ok(Adjoined { field, root });
    }
    let i = arith::inv_mod(a as i64, d as i64).unwrap() as usize;
    let k = (i as u32 * a - 1) / d as u32;
    // column t of the matrix of S^i is S^(i + t) reduced
    let si = {
        let s = monomial(base, 1, d);
        let mut acc = monomial(base, 0, d);
        for _ in 0..i {
            acc = pmulmod(&acc, &s, h);
        }
        acc
    };
    let mut cols: Vec<Poly> = Vec::with_capacity(d);
    let mut cur = monomial(base, 0, d);
    for _ in 0..d {
        cols.push(pmulmod(&si, &cur, h));
        cur = pmulmod(&cur, &monomial(base, 1, d), h);
    }
    let mat: Vec<Vec<LFElement>> = (0..d)
        .map(|r| (0..d).map(|c| cols[c][r].clone()).collect())
        .collect();
    let chi = charpoly(&mat);
    let mut g: Poly = Vec::with_capacity(d + 1);
    for (l, c) in chi.iter().enumerate().take(d) {
        g.push(c.div_unif(k * (d - l) as u32)?);
    }
    g.push(LFElement::one(base));
    let field = base.extend_eisenstein(&g, name)?;
    let theta = field.generator();
    // S in the new basis: solve Q c' = e_1 where column t of Q is S^(i t)
    let mut qcols: Vec<Poly> = Vec::with_capacity(d);
    let mut cur = monomial(base, 0, d);
    for _ in 0..d {
        qcols.push(cur.clone());
        cur = pmulmod(&cur, &si, h);
    }
    let qmat: Vec<Vec<LFElement>> = (0..d)
        .map(|r| (0..d).map(|c| qcols[c][r].clone()).collect())
        .collect();
    let chq = charpoly(&qmat);
    let e1: Poly = monomial(base, 1, d)[..d].to_vec();
    let mut acc = e1.clone();
    for kk in (1..d).rev() {
        let qv: Poly = (0..d)
            .map(|r| {
                (0..d).fold(LFElement::zero(base), |s, c| s.add(&qmat[r][c].mul(&acc[c])))
            })
            .collect();
        acc = qv.iter().zip(&e1).map(|(x, y)| x.add(&y.mul(&chq[kk]))).collect();
    }
    let det = chq[0].neg();
    let pi_b = base.uniformizer();
    let mut s_new = LFElement::zero(&field);
    let mut th_pow = LFElement::one(&field);
    for (t, coef) in acc.iter().enumerate() {
        let num = coef.mul(&pi_b.pow(k as u64 * t as u64));
        let ct = num.div(&det)?;
        s_new = s_new.add(&ct.embed(&field)?.mul(&th_pow));
        th_pow = th_pow.mul(&theta);
    }
    let hf = poly::embed_poly(h, &field)?;
    if !poly::eval(&hf, &s_new).is_zero() {
        return Err(Error::PrecisionLoss("re-presented root fails its equation".into()));
    }
    Ok(Adjoined { field, root: s_new })
}

fn step_name(base: &LocalField, what: &str) -> String {
    format!("{}({})", base.name(), what)
}

/// Adjoin a root of a monic irreducible f, certified by its polygon or its residue.
pub fn adjoin_root(base: &LocalField, f: &[LFElement], name: Option<&str>) -> Result<Adjoined> {
    let d = f.len() - 1;
    let name = name.map(str::to_string).unwrap_or_else(|| step_name(base, "t"));
    if d == 0 {
        return Err(Error::Input("constant polynomial".into()));
    }
    if !f[d].is_one() {
        return Err(Error::Input("polynomial must be monic".into()));
    }
    if d == 1 {
        return Ok(Adjoined {
            field: base.clone(),
            root: f[0].neg(),
        });
    }
    let np = poly::newton_polygon_scaled(f, 1)?;
    if np.zero_roots > 0 || np.slopes.len() > 1 {
        return Err(Error::Reducible("polygon has several slopes".into()));
    }
    let slope = np.slopes[0].0.clone();
    if slope > crate::rat::qi(0) {
        // slope a/d in digits of the base
        let num = (&slope * crate::rat::qi(d as i64)).to_integer();
        let a: u32 = num
            .try_into()
            .map_err(|_| Error::UnsupportedPresentation("slope numerator too large".into()))?;
        let g = arith::gcd(a as i64, d as i64) as u32;
        if g == 1 {
            return adjoin_single_slope(base, f, a, &name);
        }
        if g as usize == d {
            // integral slope s: substitute T = pi^s S
            let s = a / d as u32;
            let pis = base.uniformizer().pow(s as u64);
            let scaled = poly::scale_var(f, &pis);
            let mut unit_poly = Vec::with_capacity(d + 1);
            for (i, c) in scaled.iter().enumerate() {
                let _ = i;
                unit_poly.push(c.div_unif(s * d as u32)?);
            }
            let adj = adjoin_root(base, &unit_poly, Some(&name))?;
            let root = adj.root.mul(&pis.embed(&adj.field)?);
            return Ok(Adjoined { field: adj.field, root });
        }
        return Err(Error::UnsupportedPresentation(format!(
            "slope {}/{d} has common factor {g}",
            a
        )));
    }
    // all roots are units
    if residue_irreducible(f)? {
        let field = base.extend_unramified(f, &name)?;
        let root = field.generator();
        return Ok(Adjoined { field, root });
    }
    if residue_squarefree(f)? {
        return Err(Error::Reducible("residue polynomial splits into coprime factors".into()));
    }
    // f reduces to (T - a)^d: recenter
    let digits = base.residue_representatives();
    for a in &digits {
        let shifted = poly::taylor_shift(f, a);
        if shifted[..d].iter().all(|c| c.val_digits() != Some(0)) {
            let np2 = poly::newton_polygon_scaled(&shifted, 1)?;
            if np2.zero_roots > 0 || np2.slopes.len() != 1 {
                return Err(Error::Reducible("shifted polygon has several slopes".into()));
            }
            let adj = adjoin_root(base, &shifted, Some(&name))?;
            let root = adj.root.add(&a.embed(&adj.field)?);
            return Ok(Adjoined { field: adj.field, root });
        }
    }
    Err(Error::UnsupportedPresentation(
        "residue polynomial is a power of a nonlinear irreducible".into(),
    ))
}

// ---- radicals ---------------------------------------------------------------

/// A residue p-th root of a unit: its q/p-th power.
fn residue_pth_root(u: &LFElement) -> LFElement {
    let qsize = u.field().q();
    u.with_prec(1).pow(qsize / u.field().p()).as_exact()
}

fn first_root(f: &[LFElement]) -> Result<LFElement> {
    poly::roots(f)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Reducible("expected a root in the base".into()))
}

/// Adjoin an l-th root of w for a prime l different from p.
fn adjoin_tame_prime(base: &LocalField, w: &LFElement, l: u32, name: &str) -> Result<Adjoined> {
    let a = w
        .val_digits()
        .ok_or_else(|| Error::PrecisionLoss("radicand vanishes".into()))?;
    let mut f = vec![w.neg()];
    for _ in 1..l {
        f.push(LFElement::zero(base));
    }
    f.push(LFElement::one(base));
    if a % l != 0 {
        return adjoin_single_slope(base, &f, a, name);
    }
    let s = a / l;
    let u = w.div_unif(a)?;
    let qsize = base.q();
    let g = arith::gcd(l as i64, (qsize - 1) as i64) as u64;
    let is_power = g == 1 || u.with_prec(1).pow((qsize - 1) / g).is_one();
    let mut fu = vec![u.neg()];
    for _ in 1..l {
        fu.push(LFElement::zero(base));
    }
    fu.push(LFElement::one(base));
    let (field, ru) = if is_power {
        (base.clone(), first_root(&fu)?)
    } else {
        let field = base.extend_unramified(&fu, name)?;
        let r = field.generator();
        (field, r)
    };
    let root = ru.mul(&base.uniformizer().pow(s as u64).embed(&field)?);
    Ok(Adjoined { field, root })
}

/// Adjoin an l-th root of w for l prime to p, one prime factor at a time.
pub fn adjoin_tame_root(base: &LocalField, w: &LFElement, l: u32, name: &str) -> Result<Adjoined> {
    if (l as u64).is_multiple_of(base.p()) {
        return Err(Error::Input("tame radical degree divisible by p".into()));
    }
    let mut field = base.clone();
    let mut root = w.clone();
    let mut rest = l;
    let mut d = 2;
    while rest > 1 {
        while rest.is_multiple_of(d) {
            let adj = adjoin_tame_prime(&field, &root, d, name)?;
            field = adj.field;
            root = adj.root;
            rest /= d;
        }
        d += 1;
    }
    Ok(Adjoined { field, root })
}

/// Adjoin a p-th root of a nonzero w, reducing the Kummer defect as needed.
pub fn adjoin_pth_root(base: &LocalField, w: &LFElement, name: &str) -> Result<Adjoined> {
    let p = base.p();
    let pu = p as u32;
    let a = w
        .val_digits()
        .ok_or_else(|| Error::PrecisionLoss("radicand vanishes".into()))?;
    let mut tp = vec![w.neg()];
    for _ in 1..p {
        tp.push(LFElement::zero(base));
    }
    tp.push(LFElement::one(base));
    if a % pu != 0 {
        return adjoin_single_slope(base, &tp, a, name);
    }
    let pi = base.uniformizer();
    let unit = w.div_unif(a)?;
    // scale so that the radicand is 1 mod m
    let c0 = residue_pth_root(&unit);
    let mut factor = c0.mul(&pi.pow((a / pu) as u64));
    let mut w1 = unit.mul(&c0.pow(p).inv()?);
    let eb = base.e();
    let one = LFElement::one(base);
    loop {
        let t = w1.sub(&one);
        let m0 = match t.val_digits() {
            Some(v) => v,
            None => {
                let mut fw = vec![w1.neg()];
                for _ in 1..p {
                    fw.push(LFElement::zero(base));
                }
                fw.push(one.clone());
                let r = first_root(&fw)?;
                return Ok(Adjoined {
                    field: base.clone(),
                    root: r.mul(&factor),
                });
            }
        };
        let lhs = m0 as u64 * (p - 1);
        let bound = p * eb as u64;
        if lhs > bound {
            let mut fw = vec![w1.neg()];
            for _ in 1..p {
                fw.push(LFElement::zero(base));
            }
            fw.push(one.clone());
            let r = first_root(&fw)?;
            return Ok(Adjoined {
                field: base.clone(),
                root: r.mul(&factor),
            });
        }
        if lhs == bound {
            return artin_schreier_step(base, &w1, &factor, name);
        }
        if m0 % pu != 0 {
            // (1 + S)^p - w1 has the single slope m0/p
            let mut h: Poly = Vec::with_capacity(p as usize + 1);
            h.push(t.neg());
            for l in 1..=p {
                h.push(LFElement::from_int(base, arith::binom(p, l) as i64));
            }
            let adj = adjoin_single_slope(base, &h, m0, name)?;
            let root = adj
                .root
                .add(&LFElement::one(&adj.field))
                .mul(&factor.embed(&adj.field)?);
            return Ok(Adjoined {
                field: adj.field,
                root,
            });
        }
        let tau = t.div_unif(m0)?;
        let s = residue_pth_root(&tau.neg());
        let g = one.add(&s.mul(&pi.pow((m0 / pu) as u64)));
        w1 = w1.mul(&g.pow(p));
        factor = factor.mul(&g.inv()?);
    }
}

/// The defect-free case v(w1 - 1) = p e/(p-1): an Artin-Schreier residue equation.
fn artin_schreier_step(base: &LocalField, w1: &LFElement, factor: &LFElement, name: &str) -> Result<Adjoined> {
    let p = base.p();
    let mut fm = vec![LFElement::from_int(base, p as i64)];
    for _ in 1..p - 1 {
        fm.push(LFElement::zero(base));
    }
    fm.push(LFElement::one(base));
    // mu with mu^(p-1) = -p
    let mu = first_root(&fm).map_err(|_| {
        Error::UnsupportedPresentation("Artin-Schreier step needs (-p)^(1/(p-1)) in the base".into())
    })?;
    let mp = mu.pow(p);
    let mut h: Poly = Vec::with_capacity(p as usize + 1);
    let one = LFElement::one(base);
    h.push(one.sub(w1).div(&mp)?);
    let mut mupow = mu.clone();
    for l in 1..=p {
        let c = mupow.mul_int(arith::binom(p, l) as i64).div(&mp)?;
        h.push(c);
        mupow = mupow.mul(&mu);
    }
    let rts = poly::roots(&h)?;
    let (field, x) = if let Some(r) = rts.into_iter().next() {
        (base.clone(), r)
    } else if residue_irreducible(&h)? {
        let field = base.extend_unramified(&h, name)?;
        let x = field.generator();
        (field, x)
    } else {
        return Err(Error::UnsupportedPresentation("Artin-Schreier residue test failed".into()));
    };
    let root = LFElement::one(&field)
        .add(&mu.embed(&field)?.mul(&x))
        .mul(&factor.embed(&field)?);
    Ok(Adjoined { field, root })
}

/// Adjoin a primitive p-th root of unity.
pub fn adjoin_zeta_p(base: &LocalField) -> Result<Adjoined> {
    let p = base.p();
    let name = step_name(base, &format!("zeta_{p}"));
    // Phi_p(1 + T) = ((1 + T)^p - 1) / T
    let h: Poly = (1..=p)
        .map(|l| LFElement::from_int(base, arith::binom(p, l) as i64))
        .collect();
    let eb = base.e() as i64;
    let g = arith::gcd(eb, p as i64 - 1);
    if g == 1 {
        let adj = adjoin_single_slope(base, &h, base.e(), &name)?;
        let root = adj.root.add(&LFElement::one(&adj.field));
        return Ok(Adjoined { field: adj.field, root });
    }
    let minus_p = LFElement::from_int(base, -(p as i64));
    let adj = adjoin_tame_root(base, &minus_p, p as u32 - 1, &name)?;
    let hf = poly::embed_poly(&h, &adj.field)?;
    let r = first_root(&hf)?;
    let root = r.add(&LFElement::one(&adj.field));
    Ok(Adjoined { field: adj.field, root })
}

/// Whether the top step of a field is totally ramified.
pub fn top_is_ramified(f: &LocalField) -> bool {
    f.step_kind() == Some(StepKind::Eisenstein)
}
