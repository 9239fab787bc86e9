use crate::error::{Error, Result};
use crate::localfield::construct::{adjoin_root, residue_irreducible};
use crate::localfield::poly::{self, newton_polygon_scaled};
use crate::localfield::{LFElement, LocalField};
use crate::rat::{qi, Q};

/// Valuations of the differences between one root of f and the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootProfile {
    /// Sorted increasingly, in the base field's normalization.
    pub diffs: Vec<Q>,
    pub s_f: Q,
    pub alpha_f: Q,
    /// Irreducibility was certified, so every root has the same profile.
    pub independent_of_i: bool,
    /// s_f agrees with the valuation of f'(z).
    pub derivative_ok: bool,
    /// The root generates the ring of integers of N(z) (Eisenstein or unramified step).
    pub monogenic: bool,
    /// All roots of f lie in N(z).
    pub splits: bool,
}

/// Greatest upper break u and different of the extension cut out by f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakDatum {
    pub label: String,
    pub u: Q,
    pub different: Option<Q>,
    /// Only the inequality u_{N'/N} <= u is claimed.
    pub upper_bound_only: bool,
}

fn profile_at(f: &[LFElement], z: &LFElement, base: &LocalField) -> Result<(Vec<Q>, Q)> {
    let field = z.field().clone();
    let scale = field.e_over(base)? as i64;
    let fz = poly::embed_poly(f, &field)?;
    let shifted = poly::taylor_shift(&fz, z);
    let quotient: Vec<LFElement> = shifted[1..].to_vec();
    let np = newton_polygon_scaled(&quotient, scale)?;
    if np.zero_roots > 0 {
        return Err(Error::Input("polynomial is not separable".into()));
    }
    let mut diffs = np.root_valuations();
    diffs.sort();
    let dz = poly::eval(&poly::derivative(&fz), z);
    let vd = dz
        .valuation_over(base)?
        .ok_or_else(|| Error::PrecisionLoss("f'(z) vanishes at precision".into()))?;
    Ok((diffs, vd))
}

/// Whether O_N[z] is the full ring of integers of N(z).
fn generates_integers(f: &[LFElement], z: &LFElement, base: &LocalField) -> Result<bool> {
    let d = f.len() - 1;
    let field = z.field();
    if field.degree_over(base)? != d {
        return Ok(false);
    }
    let e_rel = field.e_over(base)? as usize;
    if e_rel == 1 {
        return residue_irreducible(f);
    }
    if e_rel == d {
        return Ok(base.residue_representatives().iter().any(|a| {
            let a = a.embed(field).expect("ancestor");
            z.sub(&a).val_digits() == Some(1)
        }));
    }
    Ok(false)
}

/// Profile of a monic irreducible f over N, read from f(T + z)/T over N(z).
pub fn root_difference_profile(f: &[LFElement], base: &LocalField) -> Result<RootProfile> {
    let d = f.len() - 1;
    if d <= 1 {
        return Ok(RootProfile {
            diffs: Vec::new(),
            s_f: qi(0),
            alpha_f: qi(0),
            independent_of_i: true,
            derivative_ok: true,
            monogenic: true,
            splits: true,
        });
    }
    let adj = adjoin_root(base, f, None)?;
    let (diffs, vd) = profile_at(f, &adj.root, base)?;
    let s_f: Q = diffs.iter().sum();
    let alpha_f = diffs.iter().max().cloned().unwrap_or_else(|| qi(0));
    let fz = poly::embed_poly(f, &adj.field)?;
    let monogenic = generates_integers(f, &adj.root, base)?;
    let splits = poly::roots(&fz)?.len() == d;
    Ok(RootProfile {
        derivative_ok: vd == s_f,
        diffs,
        s_f,
        alpha_f,
        independent_of_i: true,
        monogenic,
        splits,
    })
}

/// Profiles at every root of f lying in the field of the given root.
pub fn profiles_at_all_roots(f: &[LFElement], base: &LocalField) -> Result<Vec<Vec<Q>>> {
    let adj = adjoin_root(base, f, None)?;
    let fz = poly::embed_poly(f, &adj.field)?;
    poly::roots(&fz)?
        .iter()
        .map(|z| profile_at(f, z, base).map(|(d, _)| d))
        .collect()
}

/// u = s_f + alpha_f, with the different s_f when f defines a monogenic step.
pub fn break_from_polynomial(f: &[LFElement], base: &LocalField) -> Result<BreakDatum> {
    let pr = root_difference_profile(f, base)?;
    Ok(BreakDatum {
        label: "polynomial".into(),
        u: &pr.s_f + &pr.alpha_f,
        different: pr.monogenic.then(|| pr.s_f.clone()),
        upper_bound_only: !pr.monogenic,
    })
}
