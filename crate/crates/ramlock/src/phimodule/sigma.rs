//! Coefficients of module matrices: integer polynomials in u and Y.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::witt::{AbarRing, Truncated, WittVector};

/// A finite sum of terms coef * u^a * Y^b.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SigmaPoly {
    terms: Vec<(BigInt, u32, u32)>,
}

impl SigmaPoly {
    pub fn constant(c: i64) -> SigmaPoly {
        SigmaPoly::from_terms(vec![(BigInt::from(c), 0, 0)])
    }

    pub fn monomial(c: i64, a: u32, b: u32) -> SigmaPoly {
        SigmaPoly::from_terms(vec![(BigInt::from(c), a, b)])
    }

    /// Collects like terms and drops zeros.
    pub fn from_terms(mut terms: Vec<(BigInt, u32, u32)>) -> SigmaPoly {
        terms.sort_by(|x, y| (y.1, y.2).cmp(&(x.1, x.2)));
        let mut out: Vec<(BigInt, u32, u32)> = Vec::new();
        for (c, a, b) in terms {
            match out.last_mut() {
                Some(last) if last.1 == a && last.2 == b => last.0 += c,
                _ => out.push((c, a, b)),
            }
        }
        out.retain(|t| !t.0.is_zero());
        SigmaPoly { terms: out }
    }

    pub fn terms(&self) -> &[(BigInt, u32, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiply by u^k.
    pub fn shift_u(&self, k: u32) -> SigmaPoly {
        SigmaPoly {
            terms: self.terms.iter().map(|(c, a, b)| (c.clone(), a + k, *b)).collect(),
        }
    }

    pub fn add(&self, o: &SigmaPoly) -> SigmaPoly {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        SigmaPoly::from_terms(t)
    }

    pub fn mul(&self, o: &SigmaPoly) -> SigmaPoly {
        let mut t = Vec::new();
        for (c1, a1, b1) in &self.terms {
            for (c2, a2, b2) in &o.terms {
                t.push((c1 * c2, a1 + a2, b1 + b2));
            }
        }
        SigmaPoly::from_terms(t)
    }

    /// Value modulo (u, Y, p) as a residue in 0..p.
    pub fn residue(&self, p: u64) -> u64 {
        let pb = BigInt::from(p);
        self.terms
            .iter()
            .filter(|t| t.1 == 0 && t.2 == 0)
            .map(|t| {
                let r = &t.0 % &pb;
                let r = if r.is_negative() { r + &pb } else { r };
                r.to_string().parse::<u64>().unwrap_or(0)
            })
            .sum::<u64>()
            % p
    }

    pub fn eval(&self, ring: &AbarRing) -> Result<WittVector<Truncated>> {
        ring.eval_sigma(&self.terms)
    }

    pub fn parse(s: &str) -> Result<SigmaPoly> {
        let bad = || Error::Input(format!("cannot parse coefficient {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                pieces.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' {
                neg = true;
            } else if ch != '+' {
                cur.push(ch);
            }
        }
        pieces.push((neg, cur));
        for (neg, body) in pieces {
            if body.is_empty() {
                return Err(bad());
            }
            let mut coef = BigInt::one();
            let (mut a, mut b) = (0u32, 0u32);
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((x, k)) => (x, k.parse::<u32>().map_err(|_| bad())?),
                    None => (factor, 1),
                };
                match base {
                    "u" => a += exp,
                    "Y" => b += exp,
                    num => {
                        let v: BigInt = num.parse().map_err(|_| bad())?;
                        coef *= v.pow(exp);
                    }
                }
            }
            if neg {
                coef = -coef;
            }
            terms.push((coef, a, b));
        }
        Ok(SigmaPoly::from_terms(terms))
    }
}

impl fmt::Display for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, a, b)) in self.terms.iter().enumerate() {
            let mut mono = Vec::new();
            match a {
                0 => {}
                1 => mono.push("u".to_string()),
                _ => mono.push(format!("u^{a}")),
            }
            match b {
                0 => {}
                1 => mono.push("Y".to_string()),
                _ => mono.push(format!("Y^{b}")),
            }
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for SigmaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SigmaPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match v {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s,
            other => {
                return Err(serde::de::Error::custom(format!(
                    "coefficient must be an integer or a string, got {other}"
                )))
            }
        };
        SigmaPoly::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let s = SigmaPoly::parse("1 - 3*u^2*Y + u + 2u").unwrap_err();
        assert!(matches!(s, Error::Input(_)));
        let s = SigmaPoly::parse("1 - 3*u^2*Y + u + 2*u").unwrap();
        assert_eq!(s.to_string(), "-3*u^2*Y + 3*u + 1");
        assert_eq!(SigmaPoly::parse(&s.to_string()).unwrap(), s);
        assert_eq!(SigmaPoly::parse("-1").unwrap(), SigmaPoly::constant(-1));
        assert_eq!(SigmaPoly::parse("u-u").unwrap().to_string(), "0");
    }

    #[test]
    fn residues() {
        assert_eq!(SigmaPoly::parse("-1 + u").unwrap().residue(3), 2);
        assert_eq!(SigmaPoly::parse("3 + Y").unwrap().residue(3), 0);
    }

    #[test]
    fn json_accepts_numbers_and_strings() {
        let v: Vec<SigmaPoly> = serde_json::from_str(r#"[1, "-1", "u*Y"]"#).unwrap();
        assert_eq!(v[0], SigmaPoly::constant(1));
        assert_eq!(v[2], SigmaPoly::monomial(1, 1, 1));
        assert!(serde_json::from_str::<SigmaPoly>("[1]").is_err());
    }
}
