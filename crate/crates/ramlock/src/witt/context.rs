//! Universal sum, product and negation polynomials, cached per (p, n).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use once_cell::sync::Lazy;

use super::poly::{ghost_poly, invert_ghost, MPoly, MAX_VARS};
use super::ring::Polynomials;
use super::vector::WittVector;
use crate::error::{Error, Result};

/// Offset of the second argument's variables.
pub const Y_OFF: usize = MAX_VARS / 2;
/// Longest supported length.
pub const MAX_LEN: usize = MAX_VARS / 2;

#[derive(Debug)]
pub struct UniversalPolys {
    pub sum: Vec<MPoly>,
    pub prod: Vec<MPoly>,
    /// Present for p = 2; for odd p negation is entrywise.
    pub neg: Option<Vec<MPoly>>,
}

static CACHE: Lazy<Mutex<HashMap<(u64, usize), Arc<UniversalPolys>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

static CARRIES: Lazy<Mutex<HashMap<(u64, usize), Arc<CarryPolys>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn build(p: u64, n: usize) -> UniversalPolys {
    let gx: Vec<MPoly> = (0..n).map(|k| ghost_poly(p, k, 0)).collect();
    let gy: Vec<MPoly> = (0..n).map(|k| ghost_poly(p, k, Y_OFF)).collect();
    let sums: Vec<MPoly> = gx.iter().zip(&gy).map(|(a, b)| a.add(b)).collect();
    let prods: Vec<MPoly> = gx.iter().zip(&gy).map(|(a, b)| a.mul(b)).collect();
    let neg = (p == 2).then(|| {
        let m1 = BigInt::from(-1);
        let negs: Vec<MPoly> = gx.iter().map(|a| a.scale(&m1)).collect();
        invert_ghost(p, &negs)
    });
    UniversalPolys {
        sum: invert_ghost(p, &sums),
        prod: invert_ghost(p, &prods),
        neg,
    }
}

/// Parameters of W_n over a p-typical base, with its universal polynomials.
#[derive(Clone, Debug)]
pub struct WittContext {
    p: u64,
    n: usize,
    polys: Arc<UniversalPolys>,
}

impl PartialEq for WittContext {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.n == o.n
    }
}
impl Eq for WittContext {}

impl WittContext {
    pub fn new(p: u64, n: usize) -> Result<WittContext> {
        if n == 0 || n > MAX_LEN {
            return Err(Error::Input(format!("Witt length must be in 1..={MAX_LEN}")));
        }
        if !crate::localfield::arith::is_prime(p) {
            return Err(Error::Input(format!("{p} is not a prime")));
        }
        let polys = {
            let mut cache = CACHE.lock().expect("polynomial cache poisoned");
            cache
                .entry((p, n))
                .or_insert_with(|| Arc::new(build(p, n)))
                .clone()
        };
        Ok(WittContext { p, n, polys })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn polys(&self) -> &UniversalPolys {
        &self.polys
    }

    /// Audit dump of S_k and P_k, one polynomial per line.
    pub fn dump(&self) -> String {
        let mut names: Vec<String> = (0..Y_OFF).map(|i| format!("X{i}")).collect();
        names.extend((0..Y_OFF).map(|i| format!("Y{i}")));
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut out = format!("# p = {}, n = {}\n", self.p, self.n);
        for (k, s) in self.polys.sum.iter().enumerate() {
            out.push_str(&format!("S{k} = {}\n", s.render(&names)));
        }
        for (k, s) in self.polys.prod.iter().enumerate() {
            out.push_str(&format!("P{k} = {}\n", s.render(&names)));
        }
        out
    }

    /// The carry polynomials U, U' with Phi(X+Y) = Phi(X) + Phi(Y) + (pU) and
    /// Phi(XY) = Phi(X) Phi(Y) + (pU'), for the lift Phi_i = X_i^p.
    pub fn carries(&self) -> Result<Arc<CarryPolys>> {
        if (self.p as u128).pow(self.n as u32) > 27 {
            return Err(Error::TooLarge {
                needed: (self.p as u128).pow(self.n as u32),
                budget: 27,
            });
        }
        let mut cache = CARRIES.lock().expect("carry cache poisoned");
        if let Some(c) = cache.get(&(self.p, self.n)) {
            return Ok(c.clone());
        }
        let c = Arc::new(build_carries(self)?);
        cache.insert((self.p, self.n), c.clone());
        Ok(c)
    }
}

#[derive(Debug)]
pub struct CarryPolys {
    pub add: Vec<MPoly>,
    pub mul: Vec<MPoly>,
}

fn build_carries(ctx: &WittContext) -> Result<CarryPolys> {
    let n = ctx.n;
    let ring = Polynomials;
    let x = WittVector::new(ctx, &ring, (0..n).map(MPoly::var).collect())?;
    let y = WittVector::new(ctx, &ring, (0..n).map(|i| MPoly::var(Y_OFF + i)).collect())?;
    let fx = x.frobenius_lift();
    let fy = y.frobenius_lift();
    let pb = BigInt::from(ctx.p);
    let split = |d: WittVector<Polynomials>| -> Result<Vec<MPoly>> {
        d.entries()
            .iter()
            .map(|e| {
                e.div_exact(&pb)
                    .ok_or_else(|| Error::PrecisionLoss("carry polynomial not divisible by p".into()))
            })
            .collect()
    };
    let add = split(x.add(&y)?.frobenius_lift().sub(&fx.add(&fy)?)?)?;
    let mul = split(x.mul(&y)?.frobenius_lift().sub(&fx.mul(&fy)?)?)?;
    Ok(CarryPolys { add, mul })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::ring::{Integers, Polynomials};

    fn names() -> Vec<&'static str> {
        vec!["X0", "X1", "X2", "X3", "Y0", "Y1", "Y2", "Y3"]
    }

    #[test]
    fn p2_sum_and_p3_product() {
        let c = WittContext::new(2, 2).unwrap();
        assert_eq!(c.polys().sum[1].render(&names()), "-X0*Y0 + X1 + Y1");
        let c = WittContext::new(3, 2).unwrap();
        let x0 = MPoly::var(0);
        let x1 = MPoly::var(1);
        let y0 = MPoly::var(Y_OFF);
        let y1 = MPoly::var(Y_OFF + 1);
        let expect = x0
            .pow(3)
            .mul(&y1)
            .add(&x1.mul(&y0.pow(3)))
            .add(&x1.mul(&y1).scale(&BigInt::from(3)));
        assert_eq!(c.polys().prod[1], expect);
        assert_eq!(c.polys().prod[0], x0.mul(&y0));
    }

    #[test]
    fn ghost_identities_hold_symbolically() {
        for (p, n) in [(2, 3), (3, 3), (5, 2)] {
            let c = WittContext::new(p, n).unwrap();
            let ring = Polynomials;
            let x = WittVector::new(&c, &ring, (0..n).map(MPoly::var).collect()).unwrap();
            let y =
                WittVector::new(&c, &ring, (0..n).map(|i| MPoly::var(Y_OFF + i)).collect()).unwrap();
            let (gx, gy) = (x.ghost(), y.ghost());
            let gs = x.add(&y).unwrap().ghost();
            let gp = x.mul(&y).unwrap().ghost();
            for k in 0..n {
                assert_eq!(gs[k], gx[k].add(&gy[k]));
                assert_eq!(gp[k], gx[k].mul(&gy[k]));
            }
        }
    }

    #[test]
    fn carries_recombine() {
        let c = WittContext::new(3, 2).unwrap();
        let carries = c.carries().unwrap();
        let ring = Integers;
        let x = WittVector::new(&c, &ring, vec![BigInt::from(4), BigInt::from(-7)]).unwrap();
        let y = WittVector::new(&c, &ring, vec![BigInt::from(2), BigInt::from(5)]).unwrap();
        let mut vals = vec![BigInt::from(0); MAX_VARS];
        vals[0] = BigInt::from(4);
        vals[1] = BigInt::from(-7);
        vals[Y_OFF] = BigInt::from(2);
        vals[Y_OFF + 1] = BigInt::from(5);
        let pu = |polys: &[MPoly]| {
            WittVector::new(
                &c,
                &ring,
                polys.iter().map(|u| u.eval(&ring, &vals) * 3).collect(),
            )
            .unwrap()
        };
        let fx = x.frobenius_lift();
        let fy = y.frobenius_lift();
        let lhs = x.add(&y).unwrap().frobenius_lift();
        assert_eq!(lhs, fx.add(&fy).unwrap().add(&pu(&carries.add)).unwrap());
        let lhs = x.mul(&y).unwrap().frobenius_lift();
        assert_eq!(lhs, fx.mul(&fy).unwrap().add(&pu(&carries.mul)).unwrap());
        assert!(WittContext::new(5, 3).unwrap().carries().is_err());
    }

    #[test]
    fn dump_lists_every_polynomial() {
        let d = WittContext::new(2, 2).unwrap().dump();
        assert!(d.contains("S1 = -X0*Y0 + X1 + Y1"));
        assert!(d.contains("P1 ="));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(WittContext::new(4, 2).is_err());
        assert!(WittContext::new(3, 0).is_err());
        assert!(WittContext::new(3, MAX_LEN + 1).is_err());
    }
}
