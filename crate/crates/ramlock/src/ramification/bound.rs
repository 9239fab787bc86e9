use crate::error::{Error, Result};
use crate::localfield::LocalField;
use crate::rat::{q, qi, Q};

/// The bound u(K, r, n) for a base with residue characteristic p and absolute index e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamBound {
    pub p: u64,
    pub e: u32,
    pub r: u32,
    pub n: u32,
    pub value: Q,
}

pub fn bound_value(p: u64, e: u32, r: u32, n: u32) -> Result<Q> {
    if p < 2 {
        return Err(Error::Input(format!("{p} is not a prime")));
    }
    if r as u64 >= p - 1 {
        return Err(Error::RangeError(format!("r = {r} must be below p - 1 = {}", p - 1)));
    }
    if r == 0 {
        return Ok(qi(0));
    }
    if n == 0 {
        return Err(Error::RangeError("level n must be at least 1".into()));
    }
    let e = qi(e as i64);
    let tail = &e * (qi(n as i64) + q(r as i64, p as i64 - 1));
    if r == 1 {
        return Ok(qi(1) + tail);
    }
    let pn = num_bigint::BigInt::from(p).pow(n);
    Ok(qi(1) - Q::new(1.into(), pn) + tail)
}

pub fn bound_u(k: &LocalField, r: u32, n: u32) -> Result<RamBound> {
    Ok(RamBound {
        p: k.p(),
        e: k.e(),
        r,
        n,
        value: bound_value(k.p(), k.e(), r, n)?,
    })
}
