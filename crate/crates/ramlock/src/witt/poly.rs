//! Sparse integer polynomials in at most eight variables, enough for the
//! universal Witt polynomials of length up to four in two vector arguments.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::CoeffRing;

pub const MAX_VARS: usize = 8;

pub type Mono = [u16; MAX_VARS];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    pub terms: HashMap<Mono, BigInt>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn constant(c: BigInt) -> MPoly {
        let mut t = HashMap::new();
        if !c.is_zero() {
            t.insert([0; MAX_VARS], c);
        }
        MPoly { terms: t }
    }

    pub fn var(i: usize) -> MPoly {
        let mut m = [0; MAX_VARS];
        m[i] = 1;
        let mut t = HashMap::new();
        t.insert(m, BigInt::one());
        MPoly { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c);
        }
        r
    }

    pub fn scale(&self, k: &BigInt) -> MPoly {
        if k.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r: HashMap<Mono, BigInt> = HashMap::with_capacity(self.len() * o.len() / 2 + 1);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = *m1;
                for (a, b) in m.iter_mut().zip(m2) {
                    *a += *b;
                }
                *r.entry(m).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        r.retain(|_, c| !c.is_zero());
        MPoly { terms: r }
    }

    pub fn pow(&self, mut k: u64) -> MPoly {
        let mut acc = MPoly::constant(BigInt::one());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division of every coefficient; None if some coefficient is not a multiple.
    pub fn div_exact(&self, k: &BigInt) -> Option<MPoly> {
        let mut out = HashMap::with_capacity(self.len());
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.insert(*m, q);
        }
        Some(MPoly { terms: out })
    }

    pub fn all_divisible_by(&self, k: &BigInt) -> bool {
        self.terms.values().all(|c| c.is_multiple_of(k))
    }

    /// Evaluate with the given values for the variables.
    pub fn eval<R: CoeffRing>(&self, ring: &R, vals: &[R::Elt]) -> R::Elt {
        ring.eval_poly(self, vals)
    }

    /// Over Q: clear a common denominator, sum in Z, divide once.
    pub fn eval_rational(&self, vals: &[BigRational]) -> BigRational {
        let nv = vals.len();
        let den = vals.iter().fold(BigInt::one(), |d, v| d.lcm(v.denom()));
        let nums: Vec<BigInt> = vals.iter().map(|v| v.numer() * (&den / v.denom())).collect();
        let terms = self.sorted_terms();
        let deg = |m: &Mono| m[..nv].iter().map(|&k| k as usize).sum::<usize>();
        let top = terms.iter().map(|(m, _)| deg(m)).max().unwrap_or(0);
        let mut maxe = [0u16; MAX_VARS];
        for (m, _) in &terms {
            for i in 0..nv {
                maxe[i] = maxe[i].max(m[i]);
            }
        }
        let powers: Vec<Vec<BigInt>> = (0..nv)
            .map(|i| {
                let mut v = vec![BigInt::one()];
                for k in 1..=maxe[i] as usize {
                    let next = &v[k - 1] * &nums[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut den_pows = vec![BigInt::one()];
        for k in 1..=top {
            let next = &den_pows[k - 1] * &den;
            den_pows.push(next);
        }
        let mut acc = BigInt::zero();
        for (m, c) in &terms {
            let mut t = c * &den_pows[top - deg(m)];
            for i in 0..nv {
                if m[i] > 0 {
                    t *= &powers[i][m[i] as usize];
                }
            }
            acc += t;
        }
        BigRational::new(acc, den_pows[top].clone())
    }

    pub fn eval_direct<R: CoeffRing>(&self, ring: &R, vals: &[R::Elt]) -> R::Elt {
        let nv = vals.len();
        let mut maxe = [0u16; MAX_VARS];
        for m in self.terms.keys() {
            for i in 0..nv {
                maxe[i] = maxe[i].max(m[i]);
            }
        }
        let powers: Vec<Vec<R::Elt>> = (0..nv)
            .map(|i| {
                let mut v = Vec::with_capacity(maxe[i] as usize + 1);
                v.push(ring.one());
                for k in 1..=maxe[i] as usize {
                    let next = ring.mul(&v[k - 1], &vals[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = ring.zero();
        for (m, c) in self.sorted_terms() {
            let mut t = ring.from_bigint(&c);
            for i in 0..nv {
                if m[i] > 0 {
                    t = ring.mul(&t, &powers[i][m[i] as usize]);
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }

    /// Terms in a fixed order, for deterministic evaluation and printing.
    pub fn sorted_terms(&self) -> Vec<(Mono, BigInt)> {
        let mut v: Vec<(Mono, BigInt)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v
    }

    /// Plain-text form with the given variable names, e.g. "X0^3*Y1 - 3*X1*Y1".
    pub fn render(&self, names: &[&str]) -> String {
        let mut s = String::new();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{e}", names[i])),
                }
            }
            if factors.is_empty() || !a.is_one() {
                let _ = write!(s, "{a}");
                if !factors.is_empty() {
                    s.push('*');
                }
            }
            s.push_str(&factors.join("*"));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Ghost component w_k = sum_{i<=k} p^i X_{off+i}^(p^(k-i)).
pub fn ghost_poly(p: u64, k: usize, off: usize) -> MPoly {
    let mut r = MPoly::zero();
    for i in 0..=k {
        let mut m = [0u16; MAX_VARS];
        m[off + i] = p.pow((k - i) as u32) as u16;
        r.add_term(m, BigInt::from(p).pow(i as u32));
    }
    r
}

/// Solve w_k(Z) = targets[k] for Z over the integers, k = 0..n-1.
pub fn invert_ghost(p: u64, targets: &[MPoly]) -> Vec<MPoly> {
    let pb = BigInt::from(p);
    let mut z: Vec<MPoly> = Vec::with_capacity(targets.len());
    // powers[i] holds Z_i^(p^(k-i)) for the current k
    let mut powers: Vec<MPoly> = Vec::new();
    for (k, t) in targets.iter().enumerate() {
        for pw in powers.iter_mut() {
            *pw = pw.pow(p);
        }
        let mut rest = t.clone();
        for (i, pw) in powers.iter().enumerate() {
            rest = rest.sub(&pw.scale(&pb.pow(i as u32)));
        }
        let zk = rest
            .div_exact(&pb.pow(k as u32))
            .expect("ghost recursion has integral solutions");
        powers.push(zk.clone());
        z.push(zk);
    }
    z
}
