//! Automorphisms of a tower over a fixed subfield, given by the images of the step generators.

use crate::error::{Error, Result};
use crate::localfield::poly::eval;
use crate::localfield::{roots, LFElement, LocalField};

#[derive(Clone, Debug)]
pub struct FieldAutomorphism {
    top: LocalField,
    base: LocalField,
    /// Image of the generator of each step above `base`, bottom step first.
    images: Vec<LFElement>,
}

fn steps_above(top: &LocalField, base: &LocalField) -> Result<Vec<LocalField>> {
    if !base.is_ancestor_of(top) {
        return Err(Error::NotInTower);
    }
    let chain = top.chain();
    let at = chain.iter().position(|f| f == base).ok_or(Error::NotInTower)?;
    Ok(chain[at + 1..].to_vec())
}

impl FieldAutomorphism {
    pub fn identity(top: &LocalField, base: &LocalField) -> Result<FieldAutomorphism> {
        let images = steps_above(top, base)?
            .iter()
            .map(|f| f.generator().embed(top))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldAutomorphism {
            top: top.clone(),
            base: base.clone(),
            images,
        })
    }

    /// Checks that each image is a root of its step polynomial, twisted by the images below.
    pub fn new(top: &LocalField, base: &LocalField, images: Vec<LFElement>) -> Result<FieldAutomorphism> {
        let steps = steps_above(top, base)?;
        if images.len() != steps.len() {
            return Err(Error::NotAnAutomorphism(format!(
                "{} steps above the base but {} images",
                steps.len(),
                images.len()
            )));
        }
        if images.iter().any(|g| g.field() != top) {
            return Err(Error::NotAnAutomorphism("images must lie in the top field".into()));
        }
        let sigma = FieldAutomorphism {
            top: top.clone(),
            base: base.clone(),
            images,
        };
        for (k, f) in steps.iter().enumerate() {
            let twisted = sigma.twisted_step_polynomial(f, k)?;
            let value = eval(&twisted, &sigma.images[k]);
            if !value.is_zero() {
                return Err(Error::NotAnAutomorphism(format!(
                    "image of step {} is not a root of its polynomial",
                    k + 1
                )));
            }
        }
        Ok(sigma)
    }

    fn twisted_step_polynomial(&self, step: &LocalField, level: usize) -> Result<Vec<LFElement>> {
        let poly = step.step_polynomial().ok_or(Error::NotInTower)?;
        poly.iter().map(|c| self.apply_level(c, level)).collect()
    }

    pub fn top(&self) -> &LocalField {
        &self.top
    }

    pub fn base(&self) -> &LocalField {
        &self.base
    }

    pub fn images(&self) -> &[LFElement] {
        &self.images
    }

    /// x lies in the field `level` steps above the base.
    fn apply_level(&self, x: &LFElement, level: usize) -> Result<LFElement> {
        if level == 0 {
            return x.embed(&self.top);
        }
        let comps = x.components()?;
        let g = &self.images[level - 1];
        let mut acc = LFElement::zero(&self.top);
        let mut gp = LFElement::one(&self.top);
        for c in comps {
            acc = acc.add(&self.apply_level(&c, level - 1)?.mul(&gp));
            gp = gp.mul(g);
        }
        Ok(acc.with_prec(x.prec()))
    }

    pub fn apply(&self, x: &LFElement) -> Result<LFElement> {
        if x.field() != &self.top {
            return Err(Error::NotInTower);
        }
        self.apply_level(x, self.images.len())
    }

    /// self after other.
    pub fn compose(&self, other: &FieldAutomorphism) -> Result<FieldAutomorphism> {
        let images = other
            .images
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldAutomorphism {
            top: self.top.clone(),
            base: self.base.clone(),
            images,
        })
    }

    pub fn is_identity(&self) -> Result<bool> {
        let id = FieldAutomorphism::identity(&self.top, &self.base)?;
        Ok(self.images.iter().zip(&id.images).all(|(a, b)| a.equals(b)))
    }
}

/// Every automorphism of `top` fixing `base`, found by choosing roots step by step.
pub fn automorphisms(top: &LocalField, base: &LocalField) -> Result<Vec<FieldAutomorphism>> {
    let steps = steps_above(top, base)?;
    let mut partial: Vec<Vec<LFElement>> = vec![Vec::new()];
    for (k, step) in steps.iter().enumerate() {
        let mut next = Vec::new();
        for imgs in &partial {
            let sigma = FieldAutomorphism {
                top: top.clone(),
                base: base.clone(),
                images: imgs.clone(),
            };
            let twisted = sigma.twisted_step_polynomial(step, k)?;
            for root in roots(&twisted)? {
                let mut v = imgs.clone();
                v.push(root);
                next.push(v);
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(|images| FieldAutomorphism {
            top: top.clone(),
            base: base.clone(),
            images,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::construct::adjoin_root;
    use crate::localfield::poly::poly_from_ints;
    use crate::localfield::standard_field;

    #[test]
    fn quadratic_unramified_group() {
        let k = standard_field(3, 1, 10).unwrap();
        let l = adjoin_root(&k, &poly_from_ints(&k, &[1, 0, 1]), Some("i")).unwrap();
        let auts = automorphisms(&l.field, &k).unwrap();
        assert_eq!(auts.len(), 2);
        let i = l.root.clone();
        let images: Vec<LFElement> = auts.iter().map(|s| s.apply(&i).unwrap()).collect();
        assert!(images.iter().any(|x| x.equals(&i)));
        assert!(images.iter().any(|x| x.equals(&i.neg())));
        let sq = auts[0].compose(&auts[0]).unwrap();
        assert!(sq.is_identity().unwrap());
        let x = i.mul_int(5).add(&LFElement::from_int(&l.field, 7));
        let y = x.mul(&x);
        for s in &auts {
            assert!(s.apply(&y).unwrap().equals(&s.apply(&x).unwrap().pow(2)));
        }
    }

    #[test]
    fn rejects_non_roots() {
        let k = standard_field(3, 1, 10).unwrap();
        let l = adjoin_root(&k, &poly_from_ints(&k, &[1, 0, 1]), Some("i")).unwrap();
        let bad = LFElement::from_int(&l.field, 2);
        assert!(matches!(
            FieldAutomorphism::new(&l.field, &k, vec![bad]),
            Err(Error::NotAnAutomorphism(_))
        ));
        let ok = l.root.neg();
        assert!(FieldAutomorphism::new(&l.field, &k, vec![ok]).is_ok());
    }
}
