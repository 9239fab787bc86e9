//! Polynomials over O_F: evaluation, Taylor shifts, Newton polygons and root search.


use super::element::LFElement;
use super::field::LocalField;
use crate::error::{Error, Result};
use crate::rat::{q, Q};

/// Coefficients from the constant term upward.
pub type Poly = Vec<LFElement>;

pub fn poly_from_ints(field: &LocalField, c: &[i64]) -> Poly {
    c.iter().map(|&x| LFElement::from_int(field, x)).collect()
}

pub fn eval(f: &[LFElement], x: &LFElement) -> LFElement {
    let mut acc = f.last().cloned().unwrap_or_else(|| LFElement::zero(x.field()));
    for c in f.iter().rev().skip(1) {
        acc = acc.mul(x).add(c);
    }
    acc
}

pub fn derivative(f: &[LFElement]) -> Poly {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul_int(i as i64))
        .collect()
}

/// Coefficients of f(a + T).
pub fn taylor_shift(f: &[LFElement], a: &LFElement) -> Poly {
    let mut c: Poly = f.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = c[j + 1].mul(a);
            c[j] = c[j].add(&t);
        }
    }
    c
}

/// Coefficients of f(s T).
pub fn scale_var(f: &[LFElement], s: &LFElement) -> Poly {
    let mut pw = LFElement::one(s.field());
    let mut out = Vec::with_capacity(f.len());
    for c in f {
        out.push(c.mul(&pw));
        pw = pw.mul(s);
    }
    out
}

pub fn mul(f: &[LFElement], g: &[LFElement]) -> Poly {
    let field = f[0].field().clone();
    let mut out = vec![LFElement::zero(&field); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = out[i + j].add(&a.mul(b));
        }
    }
    out
}

pub fn embed_poly(f: &[LFElement], target: &LocalField) -> Result<Poly> {
    f.iter().map(|c| c.embed(target)).collect()
}

/// Lower convex hull of the coefficient valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Hull vertices (index, valuation).
    pub vertices: Vec<(usize, Q)>,
    /// Root valuations with multiplicities, increasing.
    pub slopes: Vec<(Q, usize)>,
    /// Roots at zero (leading zero coefficients of the constant side).
    pub zero_roots: usize,
}

impl NewtonPolygon {
    /// Build from points; None marks an exactly vanishing coefficient.
    pub fn from_points(points: &[Option<Q>]) -> Result<NewtonPolygon> {
        let pts: Vec<(usize, Q)> = points
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.clone().map(|v| (i, v)))
            .collect();
        if pts.is_empty() {
            return Err(Error::Input("zero polynomial".into()));
        }
        let zero_roots = pts[0].0;
        let mut hull: Vec<(usize, Q)> = Vec::new();
        for pt in pts {
            while hull.len() >= 2 {
                let (i1, v1) = &hull[hull.len() - 2];
                let (i2, v2) = &hull[hull.len() - 1];
                // drop the middle point if it lies on or above the chord
                let lhs = (v2 - v1) * Q::from_integer(((pt.0 - i1) as i64).into());
                let rhs = (&pt.1 - v1) * Q::from_integer(((i2 - i1) as i64).into());
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let mut slopes: Vec<(Q, usize)> = Vec::new();
        for w in hull.windows(2) {
            let (i1, v1) = &w[0];
            let (i2, v2) = &w[1];
            let m = i2 - i1;
            let s = (v1 - v2) / Q::from_integer((m as i64).into());
            slopes.push((s, m));
        }
        slopes.reverse();
        Ok(NewtonPolygon {
            vertices: hull,
            slopes,
            zero_roots,
        })
    }

    /// Root valuations listed with multiplicity.
    pub fn root_valuations(&self) -> Vec<Q> {
        let mut out = Vec::new();
        for (s, m) in &self.slopes {
            for _ in 0..*m {
                out.push(s.clone());
            }
        }
        out
    }
}

/// Newton polygon of f in the valuation normalized by `norm_e` digits per unit.
pub fn newton_polygon_scaled(f: &[LFElement], norm: i64) -> Result<NewtonPolygon> {
    let mut pts = Vec::with_capacity(f.len());
    let mut lower_bounds = Vec::new();
    for (i, c) in f.iter().enumerate() {
        match c.val_digits() {
            Some(v) => pts.push(Some(q(v as i64, norm))),
            None => {
                if c.prec() < c.field().cap_digits() {
                    lower_bounds.push((i, q(c.prec() as i64, norm)));
                }
                pts.push(None)
            }
        }
    }
    let np = NewtonPolygon::from_points(&pts)?;
    // an unknown coefficient must not be able to dip below the hull
    for (i, lb) in lower_bounds {
        if i < np.zero_roots {
            return Err(Error::PrecisionLoss(format!(
                "coefficient {i} vanishes only to precision"
            )));
        }
        if let Some(h) = hull_value(&np.vertices, i) {
            if lb < h {
                return Err(Error::PrecisionLoss(format!(
                    "coefficient {i} is indeterminate below the hull"
                )));
            }
        }
    }
    Ok(np)
}

/// Newton polygon with valuations in the field's reporting normalization.
pub fn newton_polygon(f: &[LFElement]) -> Result<NewtonPolygon> {
    let field = f[0].field();
    let scale = field.e() as i64 / field.normalizing_e() as i64;
    let np = newton_polygon_scaled(f, 1)?;
    let div = |x: &Q| x / Q::from_integer(scale.into());
    Ok(NewtonPolygon {
        vertices: np.vertices.iter().map(|(i, v)| (*i, div(v))).collect(),
        slopes: np.slopes.iter().map(|(s, m)| (div(s), *m)).collect(),
        zero_roots: np.zero_roots,
    })
}

fn hull_value(vertices: &[(usize, Q)], i: usize) -> Option<Q> {
    for w in vertices.windows(2) {
        let (i1, v1) = &w[0];
        let (i2, v2) = &w[1];
        if *i1 <= i && i <= *i2 {
            let t = q((i - i1) as i64, (i2 - i1) as i64);
            return Some(v1 + (v2 - v1) * t);
        }
    }
    None
}

/// Number of roots in the ball x + m^k, read off the polygon of f(x + pi^k T).
/// Returns None when the count is indeterminate at the available precision.
fn roots_in_ball(shifted: &[LFElement], k: u32) -> Option<usize> {
    let mut best: Option<u64> = None;
    let mut best_idx = 0usize;
    let mut exact0 = true;
    for (i, c) in shifted.iter().enumerate() {
        let (v, exact) = match c.val_digits() {
            Some(v) => (v as u64, true),
            None => (c.prec() as u64, false),
        };
        if i == 0 {
            exact0 = exact;
        }
        let w = v + k as u64 * i as u64;
        match best {
            Some(b) if w > b => {}
            _ => {
                best = Some(w);
                best_idx = i;
            }
        }
    }
    if best_idx == 0 && !exact0 {
        return None;
    }
    Some(best_idx)
}

/// All roots of f in O_F, refined until f vanishes at the working precision.
pub fn roots(f: &[LFElement]) -> Result<Vec<LFElement>> {
    let field = f[0].field().clone();
    let target = f
        .iter()
        .map(|c| c.prec())
        .min()
        .unwrap_or(field.cap_digits());
    let pi = field.uniformizer();
    let digits = field.residue_representatives();
    let df = derivative(f);
    let mut found: Vec<LFElement> = Vec::new();
    let mut stack: Vec<(LFElement, u32)> = vec![(LFElement::zero(&field), 0)];
    let mut visits = 0u64;
    while let Some((x, k)) = stack.pop() {
        visits += 1;
        if visits > 2_000_000 {
            return Err(Error::TooLarge {
                needed: visits as u128,
                budget: 2_000_000,
            });
        }
        let shifted = taylor_shift(f, &x);
        let cnt = roots_in_ball(&shifted, k);
        if cnt == Some(0) {
            continue;
        }
        if k >= target {
            if !found.iter().any(|r| r.equals(&x)) {
                found.push(x.with_prec(k));
            }
            continue;
        }
        if cnt == Some(1) {
            if let Some(r) = newton(f, &df, &x, target)? {
                if !found.iter().any(|y| y.equals(&r)) {
                    found.push(r);
                }
                continue;
            }
        }
        let pk = pi.pow(k as u64);
        for d in digits.iter().rev() {
            stack.push((x.add(&d.mul(&pk)), k + 1));
        }
    }
    Ok(found)
}

/// Newton iteration from x when the quadratic-convergence condition holds.
fn newton(f: &[LFElement], df: &[LFElement], x: &LFElement, target: u32) -> Result<Option<LFElement>> {
    let mut x = x.as_exact();
    for _ in 0..64 {
        let fx = eval(f, &x);
        let dfx = eval(df, &x);
        let vd = match dfx.val_digits() {
            Some(v) => v,
            None => return Ok(None),
        };
        let vf = match fx.val_digits() {
            Some(v) => v,
            None => {
                let prec = fx.prec().saturating_sub(vd).min(target);
                return Ok(Some(x.with_prec(prec)));
            }
        };
        if vf <= 2 * vd {
            return Ok(None);
        }
        if vf >= target + vd {
            return Ok(Some(x.with_prec(target)));
        }
        let step = fx.div(&dfx)?;
        x = x.sub(&step).as_exact();
    }
    Ok(None)
}

pub fn has_root(f: &[LFElement]) -> Result<bool> {
    Ok(!roots(f)?.is_empty())
}
