//! Example modules shipped with the crate and the candidate fields searched for them.

use num_bigint::BigInt;

use super::module::TorsionPhiModule;
use crate::error::{Error, Result};
use crate::localfield::construct::adjoin_root;
use crate::localfield::towers::{fn_tower, RadicalTower};
use crate::localfield::{LFElement, LocalField};

pub const BUNDLED: &[(&str, &str)] = &[
    ("etale_trivial", include_str!("../../modules/etale_trivial.json")),
    ("etale_twisted", include_str!("../../modules/etale_twisted.json")),
    ("weight_one", include_str!("../../modules/weight_one.json")),
    ("weight_one_split", include_str!("../../modules/weight_one_split.json")),
];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_module(name: &str, e: u32) -> Result<TorsionPhiModule> {
    let (_, text) = BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Input(format!("no bundled module named {name:?}")))?;
    TorsionPhiModule::parse_json(text, e)
}

/// The unramified quadratic extension of F, as F(sqrt(a)) for the first a that works.
pub fn unramified_quadratic(f: &LocalField) -> Result<LocalField> {
    let p = f.p();
    for a in 1..(p as i64).max(3) {
        let poly = vec![
            LFElement::from_bigint(f, &BigInt::from(-a)),
            LFElement::zero(f),
            LFElement::one(f),
        ];
        match adjoin_root(f, &poly, Some(&format!("{}(sqrt {a})", f.name()))) {
            Ok(adj) if adj.field.e() == f.e() => return Ok(adj.field),
            Ok(_) | Err(Error::Reducible(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Reducible("no quadratic non-residue found".into()))
}

/// F_n and its unramified quadratic extension.
pub fn curated_candidates(k: &LocalField, n: u32) -> Result<(RadicalTower, Vec<LocalField>)> {
    let tower = fn_tower(k, n)?;
    let quad = unramified_quadratic(&tower.field)?;
    let list = vec![tower.field.clone(), quad];
    Ok((tower, list))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_modules_parse() {
        for name in bundled_names() {
            let m = bundled_module(name, 1).unwrap();
            assert_eq!(m.name(), Some(name));
            m.check_for_prime(3).unwrap();
        }
        assert!(bundled_module("nope", 1).is_err());
    }
}
