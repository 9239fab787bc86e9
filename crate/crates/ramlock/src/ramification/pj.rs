use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::localfield::poly;
use crate::localfield::{LFElement, LocalField};
use crate::rat::{ceil, q, Q};

/// Default number of balls visited by a single search.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Budget from RAMLOCK_BUDGET, falling back to the default.
pub fn budget_from_env() -> u64 {
    std::env::var("RAMLOCK_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PjOutcome {
    /// Some x in O_F with v_N(f(x)) >= j, i.e. an O_N-algebra map O_Q -> O_F / a^j.
    pub hom_exists: bool,
    /// f has a root in F.
    pub embedding_exists: bool,
    pub holds: bool,
    pub visited: u64,
}

/// Largest v_N(f(x)) over x in O_F, capped at `depth` digits of F; ball search.
fn best_value(f: &[LFElement], depth: u32, budget: u64, visited: &mut u64) -> Result<u32> {
    let field = f[0].field().clone();
    let pi = field.uniformizer();
    let digits = field.residue_representatives();
    let mut best = 0u32;
    let mut stack: Vec<(LFElement, u32)> = vec![(LFElement::zero(&field), 0)];
    while let Some((x, k)) = stack.pop() {
        *visited += 1;
        if *visited > budget {
            return Err(Error::TooLarge {
                needed: *visited as u128,
                budget: budget as u128,
            });
        }
        let shifted = poly::taylor_shift(f, &x);
        let v0 = shifted[0].val_or_prec();
        best = best.max(v0.min(depth));
        if best >= depth {
            return Ok(depth);
        }
        // if the constant term dominates every other term on the ball, v(f) is constant there
        let dominated = shifted[1..]
            .iter()
            .enumerate()
            .all(|(i, c)| c.val_or_prec() as u64 + k as u64 * (i as u64 + 1) > v0 as u64);
        if dominated {
            continue;
        }
        let pk = pi.pow(k as u64);
        for d in digits.iter().rev() {
            stack.push((x.add(&d.mul(&pk)), k + 1));
        }
    }
    Ok(best)
}

/// Fontaine's property for Q = N[T]/(f) against one field F over N at level j:
/// a map O_Q -> O_F / a_{F/N}^j forces an embedding Q -> F.
pub fn property_pj_holds(f_over_n: &[LFElement], target: &LocalField, j: &Q, budget: u64) -> Result<PjOutcome> {
    let base = f_over_n[0].field().clone();
    let e_rel = target.e_over(&base)? as i64;
    let depth = ceil(&(j * q(e_rel, 1)))
        .to_u32()
        .ok_or_else(|| Error::Input("level out of range".into()))?;
    let f = poly::embed_poly(f_over_n, target)?;
    let mut visited = 0;
    let reach = best_value(&f, depth, budget, &mut visited)?;
    let hom_exists = reach >= depth;
    let embedding_exists = poly::has_root(&f)?;
    Ok(PjOutcome {
        hom_exists,
        embedding_exists,
        holds: !hom_exists || embedding_exists,
        visited,
    })
}

/// Property (P_j) tested over every candidate field.
pub fn pj_over_candidates(f: &[LFElement], candidates: &[LocalField], j: &Q, budget: u64) -> Result<bool> {
    for c in candidates {
        if !property_pj_holds(f, c, j, budget)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Grid points around the infimum of {j : (P_j) holds over the candidates}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PjBracket {
    /// Largest grid level where the property fails, if any.
    pub fails_at: Option<Q>,
    /// Smallest grid level where it holds.
    pub holds_at: Option<Q>,
}

impl PjBracket {
    pub fn contains(&self, x: &Q) -> bool {
        let lo_ok = self.fails_at.as_ref().is_none_or(|lo| lo <= x);
        let hi_ok = self.holds_at.as_ref().is_none_or(|hi| x <= hi);
        lo_ok && hi_ok
    }
}

/// Bisection over the grid lo, lo + step, .., hi; the property is monotone in j.
pub fn bracket_pj(f: &[LFElement], candidates: &[LocalField], lo: &Q, hi: &Q, step: &Q, budget: u64) -> Result<PjBracket> {
    let count = ((hi - lo) / step).floor().to_integer().to_i64().unwrap_or(0);
    let at = |i: i64| lo + step * q(i, 1);
    let (mut a, mut b) = (0i64, count);
    if pj_over_candidates(f, candidates, &at(a), budget)? {
        return Ok(PjBracket {
            fails_at: None,
            holds_at: Some(at(a)),
        });
    }
    if !pj_over_candidates(f, candidates, &at(b), budget)? {
        return Ok(PjBracket {
            fails_at: Some(at(b)),
            holds_at: None,
        });
    }
    while b - a > 1 {
        let m = (a + b) / 2;
        if pj_over_candidates(f, candidates, &at(m), budget)? {
            b = m;
        } else {
            a = m;
        }
    }
    Ok(PjBracket {
        fails_at: Some(at(a)),
        holds_at: Some(at(b)),
    })
}
