//! Torsion phi-modules given by a generating system and the matrix of phi_r.

use serde::{Deserialize, Serialize};

use super::sigma::SigmaPoly;
use crate::error::{Error, Result};

/// How Fil^r is presented.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Filtration {
    /// Adapted basis: the i-th generator of Fil^r is u^(r_i) times the i-th column of C.
    Exponents(Vec<u32>),
    /// The i-th generator of Fil^r is column i of C times this matrix.
    Matrix(Vec<Vec<SigmaPoly>>),
}

/// JSON form of a module description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub d: usize,
    pub n: usize,
    pub r: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fil_exponents: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fil_matrix: Option<Vec<Vec<SigmaPoly>>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<SigmaPoly>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionPhiModule {
    d: usize,
    n: usize,
    r: u32,
    fil: Filtration,
    c: Vec<Vec<SigmaPoly>>,
    /// Column i holds the coefficients c_{j,i} of the i-th generator of Fil^r.
    relation: Vec<Vec<SigmaPoly>>,
    name: Option<String>,
}

fn check_square(m: &[Vec<SigmaPoly>], d: usize, what: &str) -> Result<()> {
    if m.len() != d || m.iter().any(|row| row.len() != d) {
        return Err(Error::BadShape(format!("{what} must be {d} x {d}")));
    }
    Ok(())
}

fn det_mod_p(m: &[Vec<u64>], p: u64) -> u64 {
    let d = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut det = 1u64;
    for col in 0..d {
        let Some(piv) = (col..d).find(|&r| !a[r][col].is_multiple_of(p)) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = (p - det) % p;
        }
        det = det * a[col][col] % p;
        let inv = crate::localfield::arith::inv_mod(a[col][col] as i64, p as i64).unwrap_or(0) as u64;
        for row in col + 1..d {
            let f = a[row][col] * inv % p;
            for k in col..d {
                a[row][k] = (a[row][k] + p * p - f * a[col][k] % p) % p;
            }
        }
    }
    det
}

impl TorsionPhiModule {
    /// Validate a module. `e` is the absolute ramification index of the base field, used
    /// to bound the filtration exponents by e r.
    pub fn new(
        d: usize,
        n: usize,
        r: u32,
        fil: Filtration,
        c: Vec<Vec<SigmaPoly>>,
        e: u32,
    ) -> Result<TorsionPhiModule> {
        if d == 0 {
            return Err(Error::BadShape("rank must be positive".into()));
        }
        if n == 0 || n > 2 {
            return Err(Error::BadShape(format!("level {n} is not supported, use 1 or 2")));
        }
        check_square(&c, d, "C")?;
        let relation = match &fil {
            Filtration::Exponents(ex) => {
                if ex.len() != d {
                    return Err(Error::BadShape(format!("expected {d} filtration exponents")));
                }
                if let Some(bad) = ex.iter().find(|&&ri| ri > e * r) {
                    return Err(Error::BadExponent(format!(
                        "exponent {bad} exceeds e r = {}",
                        e * r
                    )));
                }
                (0..d)
                    .map(|j| (0..d).map(|i| c[j][i].shift_u(ex[i])).collect())
                    .collect()
            }
            Filtration::Matrix(f) => {
                check_square(f, d, "fil_matrix")?;
                (0..d)
                    .map(|j| {
                        (0..d)
                            .map(|i| {
                                (0..d).fold(SigmaPoly::default(), |acc, k| {
                                    acc.add(&c[j][k].mul(&f[k][i]))
                                })
                            })
                            .collect()
                    })
                    .collect()
            }
        };
        Ok(TorsionPhiModule {
            d,
            n,
            r,
            fil,
            c,
            relation,
            name: None,
        })
    }

    pub fn from_json(j: &ModuleJson, e: u32) -> Result<TorsionPhiModule> {
        let fil = match (&j.fil_exponents, &j.fil_matrix) {
            (Some(ex), None) => Filtration::Exponents(ex.clone()),
            (None, Some(m)) => Filtration::Matrix(m.clone()),
            _ => {
                return Err(Error::BadShape(
                    "give exactly one of fil_exponents and fil_matrix".into(),
                ))
            }
        };
        let mut m = TorsionPhiModule::new(j.d, j.n, j.r, fil, j.c.clone(), e)?;
        m.name = j.name.clone();
        Ok(m)
    }

    pub fn parse_json(text: &str, e: u32) -> Result<TorsionPhiModule> {
        let j: ModuleJson =
            serde_json::from_str(text).map_err(|err| Error::Input(format!("module JSON: {err}")))?;
        TorsionPhiModule::from_json(&j, e)
    }

    pub fn to_json(&self) -> ModuleJson {
        let (fil_exponents, fil_matrix) = match &self.fil {
            Filtration::Exponents(e) => (Some(e.clone()), None),
            Filtration::Matrix(m) => (None, Some(m.clone())),
        };
        ModuleJson {
            d: self.d,
            n: self.n,
            r: self.r,
            fil_exponents,
            fil_matrix,
            c: self.c.clone(),
            name: self.name.clone(),
        }
    }

    /// Checks that need the prime: r < p - 1 and the images of phi_r generating M, which
    /// for this presentation means C is invertible modulo (u, Y, p).
    pub fn check_for_prime(&self, p: u64) -> Result<()> {
        if (self.r as u64) + 1 >= p && !(self.r == 0 && p == 2) {
            return Err(Error::RangeError(format!("r = {} must be below p - 1", self.r)));
        }
        let m: Vec<Vec<u64>> = self
            .c
            .iter()
            .map(|row| row.iter().map(|x| x.residue(p)).collect())
            .collect();
        if det_mod_p(&m, p) == 0 {
            return Err(Error::BadShape(
                "C is singular modulo (u, Y, p): the image of phi_r does not generate".into(),
            ));
        }
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn filtration(&self) -> &Filtration {
        &self.fil
    }
    pub fn c(&self) -> &[Vec<SigmaPoly>] {
        &self.c
    }
    /// Entry (j, i) is the coefficient of x_j in the i-th point equation.
    pub fn relation(&self) -> &[Vec<SigmaPoly>] {
        &self.relation
    }
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c1(v: i64) -> Vec<Vec<SigmaPoly>> {
        vec![vec![SigmaPoly::constant(v)]]
    }

    #[test]
    fn rank_one_examples() {
        let m = TorsionPhiModule::new(1, 1, 1, Filtration::Exponents(vec![1]), c1(1), 1).unwrap();
        assert_eq!(m.relation()[0][0], SigmaPoly::monomial(1, 1, 0));
        let m = TorsionPhiModule::new(1, 1, 0, Filtration::Exponents(vec![0]), c1(1), 1).unwrap();
        m.check_for_prime(3).unwrap();
    }

    #[test]
    fn exponent_and_shape_errors() {
        let err = TorsionPhiModule::new(1, 1, 1, Filtration::Exponents(vec![2]), c1(1), 1).unwrap_err();
        assert!(matches!(err, Error::BadExponent(_)));
        let err = TorsionPhiModule::new(2, 1, 1, Filtration::Exponents(vec![1, 1]), c1(1), 1)
            .unwrap_err();
        assert!(matches!(err, Error::BadShape(_)));
    }

    #[test]
    fn singular_matrix_fails_generation() {
        let c = vec![
            vec![SigmaPoly::constant(1), SigmaPoly::constant(2)],
            vec![SigmaPoly::constant(2), SigmaPoly::parse("4 + u").unwrap()],
        ];
        let m = TorsionPhiModule::new(2, 1, 1, Filtration::Exponents(vec![1, 0]), c, 1).unwrap();
        assert!(matches!(m.check_for_prime(3), Err(Error::BadShape(_))));
    }

    #[test]
    fn json_forms() {
        let m = TorsionPhiModule::parse_json(r#"{"d":1,"n":1,"r":1,"fil_exponents":[1],"C":[[1]]}"#, 1)
            .unwrap();
        assert_eq!(m.d(), 1);
        let back = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(TorsionPhiModule::parse_json(&back, 1).unwrap(), m);
        let m = TorsionPhiModule::parse_json(
            r#"{"d":1,"n":1,"r":1,"fil_matrix":[["u"]],"C":[["-1"]]}"#,
            1,
        )
        .unwrap();
        assert_eq!(m.relation()[0][0], SigmaPoly::monomial(-1, 1, 0));
        assert!(TorsionPhiModule::parse_json(r#"{"d":1,"n":1,"r":1,"C":[[1]]}"#, 1).is_err());
        assert!(TorsionPhiModule::parse_json(r#"{"d":1}"#, 1).is_err());
    }
}
