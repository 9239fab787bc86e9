//! Norms down a tower and the standard Kummer and cyclotomic towers over a base K.

use super::construct::{adjoin_pth_root, adjoin_root, adjoin_zeta_p, charpoly, Adjoined};
use super::element::LFElement;
use super::field::LocalField;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Norm from a field to its immediate parent: determinant of multiplication.
pub fn norm_down(x: &LFElement) -> Result<LFElement> {
    let field = x.field().clone();
    let d = field.step_degree();
    let g = field.generator();
    let mut cols = Vec::with_capacity(d);
    let mut cur = x.clone();
    for _ in 0..d {
        cols.push(cur.components()?);
        cur = cur.mul(&g);
    }
    let mat: Vec<Vec<LFElement>> = (0..d)
        .map(|r| (0..d).map(|c| cols[c][r].clone()).collect())
        .collect();
    let chi = charpoly(&mat);
    Ok(if d.is_multiple_of(2) { chi[0].clone() } else { chi[0].neg() })
}

/// Norm from x's field down to an ancestor in its tower.
pub fn norm_to_base(x: &LFElement, base: &LocalField) -> Result<LFElement> {
    if !base.is_ancestor_of(x.field()) {
        return Err(Error::NotInTower);
    }
    let mut cur = x.clone();
    while cur.field() != base {
        cur = norm_down(&cur)?;
    }
    Ok(cur)
}

fn binomial_poly(field: &LocalField, deg: usize, c: &LFElement) -> Poly {
    let mut f = vec![c.neg()];
    for _ in 1..deg {
        f.push(LFElement::zero(field));
    }
    f.push(LFElement::one(field));
    f
}

/// K_n = K(pi_n) with pi_n^(p^n) = pi, as a single Eisenstein step.
pub fn kummer_tower(k: &LocalField, n: u32) -> Result<Adjoined> {
    if n == 0 {
        return Ok(Adjoined {
            field: k.clone(),
            root: k.uniformizer(),
        });
    }
    let deg = k.p().pow(n) as usize;
    let f = binomial_poly(k, deg, &k.uniformizer());
    adjoin_root(k, &f, Some(&format!("{}_{n}", k.name())))
}

/// A field containing a primitive p^m-th root of unity, built one p-th root at a time.
pub fn cyclotomic_tower(k: &LocalField, m: u32) -> Result<Adjoined> {
    if m == 0 {
        return Ok(Adjoined {
            field: k.clone(),
            root: LFElement::one(k),
        });
    }
    let mut cur = adjoin_zeta_p(k)?;
    let p = k.p();
    for level in 2..=m {
        let name = format!("{}(zeta_{})", k.name(), p.pow(level));
        cur = adjoin_pth_root(&cur.field, &cur.root, &name)?;
    }
    Ok(cur)
}

/// A tower over K containing a primitive p^m-th root of unity and pi_n.
#[derive(Clone, Debug)]
pub struct RadicalTower {
    pub base: LocalField,
    pub cyclotomic: LocalField,
    pub field: LocalField,
    pub zeta: LFElement,
    pub pi_n: LFElement,
    pub n: u32,
    pub m: u32,
}

impl RadicalTower {
    /// The root of unity embedded in the top field.
    pub fn zeta_top(&self) -> Result<LFElement> {
        self.zeta.embed(&self.field)
    }
}

fn radical_tower(k: &LocalField, n: u32, m: u32, label: &str) -> Result<RadicalTower> {
    let cyc = cyclotomic_tower(k, m)?;
    let mut field = cyc.field.clone();
    let mut root = k.uniformizer().embed(&field)?;
    for level in 1..=n {
        let adj = adjoin_pth_root(&field, &root, &format!("{label}(pi_{level})"))?;
        field = adj.field;
        root = adj.root;
    }
    Ok(RadicalTower {
        base: k.clone(),
        cyclotomic: cyc.field,
        field,
        zeta: cyc.root,
        pi_n: root,
        n,
        m,
    })
}

/// F_n = K(pi_n, zeta_{p^(n+1)}).
pub fn fn_tower(k: &LocalField, n: u32) -> Result<RadicalTower> {
    radical_tower(k, n, n + 1, &format!("{} F_{n}", k.name()))
}

/// K_n(zeta_{p^n}), the field cut out by the p^n-torsion of a Tate curve.
pub fn tate_tower(k: &LocalField, n: u32) -> Result<RadicalTower> {
    radical_tower(k, n, n, &format!("{} T_{n}", k.name()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::field::standard_field;
    use crate::localfield::poly::{self, poly_from_ints};
    use crate::rat::{q, qi};

    #[test]
    fn norms_of_uniformizers() {
        let k = standard_field(3, 1, 20).unwrap();
        let f = poly_from_ints(&k, &[-3, 0, 1]);
        let adj = adjoin_root(&k, &f, None).unwrap();
        let nm = norm_to_base(&adj.field.uniformizer(), &k).unwrap();
        assert!(nm.equals(&LFElement::from_int(&k, -3)));
        let k1 = kummer_tower(&k, 1).unwrap();
        let nm = norm_to_base(&k1.root, &k).unwrap();
        assert_eq!(nm.valuation().unwrap(), Some(qi(1)));
        // unit with residue 2 in a quadratic unramified step
        let u = adjoin_root(&k, &poly_from_ints(&k, &[1, 0, 1]), None).unwrap();
        let two = LFElement::from_int(&u.field, 2);
        let nm = norm_to_base(&two, &k).unwrap();
        assert!(nm.is_unit());
        assert!(nm.with_prec(1).is_one());
    }

    #[test]
    fn norm_multiplicative() {
        let k = standard_field(3, 1, 20).unwrap();
        let z = adjoin_zeta_p(&k).unwrap();
        let a = z.root.add(&LFElement::from_int(&z.field, 4));
        let b = z.field.uniformizer().add(&LFElement::from_int(&z.field, 3));
        let lhs = norm_to_base(&a.mul(&b), &k).unwrap();
        let rhs = norm_to_base(&a, &k).unwrap().mul(&norm_to_base(&b, &k).unwrap());
        assert!(lhs.equals(&rhs));
        assert_eq!(norm_to_base(&b, &k).unwrap().valuation().unwrap(), Some(qi(1)));
    }

    #[test]
    fn f1_over_q3() {
        let k = standard_field(3, 1, 40).unwrap();
        let t = fn_tower(&k, 1).unwrap();
        assert_eq!(t.field.e(), 18);
        assert_eq!(t.field.degree(), 18);
        let zt = t.zeta_top().unwrap();
        assert!(zt.pow(9).is_one());
        assert!(!zt.pow(3).is_one());
        let pik = k.uniformizer().embed(&t.field).unwrap();
        assert!(t.pi_n.pow(3).equals(&pik));
        assert_eq!(t.pi_n.valuation().unwrap(), Some(q(1, 3)));
        let fx = poly_from_ints(&t.field, &[-3, 0, 0, 1]);
        assert_eq!(poly::roots(&fx).unwrap().len(), 3);
    }
}
