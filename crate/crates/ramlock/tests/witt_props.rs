use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ramlock::localfield::construct::adjoin_zeta_p;
use ramlock::localfield::towers::cyclotomic_tower;
use ramlock::localfield::{standard_field, LFElement, LocalField};
use ramlock::witt::context::Y_OFF;
use ramlock::witt::poly::MAX_VARS;
use ramlock::witt::{ideal_divide, Integers, MPoly, QuotientIn, Truncated, WittContext, WittVector};

fn ghosts(p: u64, x: &[BigInt]) -> Vec<BigRational> {
    (0..x.len())
        .map(|k| {
            let mut acc = BigInt::from(0);
            for (i, xi) in x.iter().enumerate().take(k + 1) {
                acc += BigInt::from(p).pow(i as u32) * xi.pow(p.pow((k - i) as u32) as u32);
            }
            BigRational::from_integer(acc)
        })
        .collect()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&a| BigInt::from(a)).collect()
}

fn params() -> impl Strategy<Value = (u64, usize)> {
    prop_oneof![
        (Just(2u64), 1usize..=4),
        (Just(3u64), 1usize..=4),
        (Just(5u64), 1usize..=3),
    ]
}

/// (p, n) with carry polynomials available.
fn carry_params() -> impl Strategy<Value = (u64, usize)> {
    prop_oneof![(Just(2u64), 1usize..=4), (Just(3u64), 1usize..=3), (Just(5u64), 1usize..=2)]
}

/// Q_p(zeta_{p^n}) and its root of unity, built once per (p, n).
fn cyclotomic(p: u64, n: u32) -> (LocalField, LFElement) {
    type Entry = ((u64, u32), LocalField, LFElement);
    static CACHE: OnceLock<std::sync::Mutex<Vec<Entry>>> = OnceLock::new();
    let mut c = CACHE.get_or_init(Default::default).lock().unwrap();
    if let Some((_, f, z)) = c.iter().find(|(k, _, _)| *k == (p, n)) {
        return (f.clone(), z.clone());
    }
    // u64 coefficients cap p = 5 at 27 digits
    let k = standard_field(p, 1, if p == 3 { 30 } else { 20 }).unwrap();
    let adj = if n == 1 { adjoin_zeta_p(&k).unwrap() } else { cyclotomic_tower(&k, n).unwrap() };
    c.push(((p, n), adj.field.clone(), adj.root.clone()));
    (adj.field, adj.root)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_operations_match_ghost_oracle(
        (p, n) in params(),
        a in prop::collection::vec(-20i64..20, 4),
        b in prop::collection::vec(-20i64..20, 4),
    ) {
        let ctx = WittContext::new(p, n).unwrap();
        let (xa, xb) = (ints(&a[..n]), ints(&b[..n]));
        let x = WittVector::new(&ctx, &Integers, xa.clone()).unwrap();
        let y = WittVector::new(&ctx, &Integers, xb.clone()).unwrap();
        let (gx, gy) = (ghosts(p, &xa), ghosts(p, &xb));
        let gs = ghosts(p, x.add(&y).unwrap().entries());
        let gm = ghosts(p, x.mul(&y).unwrap().entries());
        let gd = ghosts(p, x.sub(&y).unwrap().entries());
        for k in 0..n {
            prop_assert_eq!(&gs[k], &(&gx[k] + &gy[k]));
            prop_assert_eq!(&gm[k], &(&gx[k] * &gy[k]));
            prop_assert_eq!(&gd[k], &(&gx[k] - &gy[k]));
        }
    }

    #[test]
    fn frobenius_lift_up_to_carries(
        (p, n) in carry_params(),
        a in prop::collection::vec(-9i64..9, 4),
        b in prop::collection::vec(-9i64..9, 4),
    ) {
        let ctx = WittContext::new(p, n).unwrap();
        let carries = ctx.carries().unwrap();
        let x = WittVector::new(&ctx, &Integers, ints(&a[..n])).unwrap();
        let y = WittVector::new(&ctx, &Integers, ints(&b[..n])).unwrap();
        let mut vals = vec![BigInt::from(0); MAX_VARS];
        for i in 0..n {
            vals[i] = BigInt::from(a[i]);
            vals[Y_OFF + i] = BigInt::from(b[i]);
        }
        let times_p = |polys: &[MPoly]| {
            let e = polys.iter().map(|u| u.eval(&Integers, &vals) * BigInt::from(p)).collect();
            WittVector::new(&ctx, &Integers, e).unwrap()
        };
        let (fx, fy) = (x.frobenius_lift(), y.frobenius_lift());
        let sum = x.add(&y).unwrap().frobenius_lift();
        prop_assert_eq!(sum, fx.add(&fy).unwrap().add(&times_p(&carries.add)).unwrap());
        let prod = x.mul(&y).unwrap().frobenius_lift();
        prop_assert_eq!(prod, fx.mul(&fy).unwrap().add(&times_p(&carries.mul)).unwrap());
    }

    #[test]
    fn teichmuller_is_multiplicative((p, n) in params(), a in -50i64..50, b in -50i64..50) {
        let ctx = WittContext::new(p, n).unwrap();
        let t = |v: i64| WittVector::teichmuller(&ctx, &Integers, BigInt::from(v));
        prop_assert_eq!(t(a).mul(&t(b)).unwrap(), t(a * b));
    }

    #[test]
    fn frobenius_is_entrywise_power_mod_p(
        n in 1usize..=3,
        a in prop::collection::vec(0i64..200, 3),
        b in prop::collection::vec(0i64..200, 3),
    ) {
        let (f, _) = cyclotomic(3, 1);
        let ctx = WittContext::new(3, n).unwrap();
        let ring = Truncated::full(&f);
        let elt = |c: i64, d: i64| LFElement::from_coeffs(&f, &ints(&[c, d]), f.cap_digits()).unwrap();
        let x = WittVector::new(&ctx, &ring, (0..n).map(|i| elt(a[i], b[i])).collect()).unwrap();
        let lhs = x.frobenius_lift().truncate(1);
        let rhs: Vec<LFElement> = x.entries().iter().map(|e| e.pow(3).with_prec(1)).collect();
        for (l, r) in lhs.entries().iter().zip(&rhs) {
            prop_assert!(l.equals(r));
        }
    }

    /// W_n(b_F) lies in ([zeta_{p^n}] - 1)^r W_n(m_F) for every r <= p - 2.
    #[test]
    fn deep_vectors_divide_by_zeta_powers(
        (p, n) in prop_oneof![(Just(3u64), 1u32..=2), (Just(5u64), Just(1u32))],
        r in 0u32..4,
        a in prop::collection::vec(0i64..500, 8),
        extra in prop::collection::vec(0u64..3, 2),
    ) {
        prop_assume!((r as u64) + 2 <= p);
        let (f, z) = cyclotomic(p, n);
        let ctx = WittContext::new(p, n as usize).unwrap();
        let ring = Truncated::full(&f);
        let kernel = WittVector::teichmuller(&ctx, &ring, z)
            .sub(&WittVector::one(&ctx, &ring))
            .unwrap()
            .pow(r as u64)
            .unwrap();
        let bound = f.e() * r / (p as u32 - 1) + 1;
        let pi = f.uniformizer();
        let entries: Vec<LFElement> = (0..n as usize)
            .map(|i| {
                let c: Vec<BigInt> = (0..f.degree()).map(|j| BigInt::from(a[(i * 4 + j) % 8])).collect();
                let u = LFElement::from_coeffs(&f, &c, f.cap_digits()).unwrap();
                u.mul(&pi.pow(bound as u64 + extra[i]))
            })
            .collect();
        let w = WittVector::new(&ctx, &ring, entries).unwrap();
        prop_assert!(ideal_divide(&w, &kernel, 20, QuotientIn::MaximalIdeal).is_ok());
    }
}
