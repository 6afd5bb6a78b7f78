use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::family::Family;
use super::polynomial::RationalPolynomial;
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub alpha: Vec<u32>,
    pub num: i64,
    pub den: i64,
}

/// JSON form of a polynomial, optionally tagged with the family member it is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<i64>>,
    pub terms: Vec<TermRecord>,
}

impl PolynomialRecord {
    pub fn new(family: Option<Family>, k: Option<Vec<i64>>, p: &RationalPolynomial) -> Result<Self> {
        let terms = p
            .terms()
            .map(|(alpha, c)| {
                let overflow = || Error::Invalid(format!("coefficient {c} does not fit in 64 bits"));
                Ok(TermRecord {
                    alpha: alpha.clone(),
                    num: c.numer().to_i64().ok_or_else(overflow)?,
                    den: c.denom().to_i64().ok_or_else(overflow)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(PolynomialRecord { family, k, terms })
    }

    /// The polynomial in `n` variables; `n` is taken from the terms or `k`
    /// when `None`.
    pub fn polynomial(&self, n: Option<usize>) -> Result<RationalPolynomial> {
        let n = n
            .or_else(|| self.terms.first().map(|t| t.alpha.len()))
            .or_else(|| self.k.as_ref().map(Vec::len))
            .ok_or_else(|| Error::Invalid("cannot infer the number of variables".into()))?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.den == 0 {
                    return Err(Error::Invalid("zero denominator".into()));
                }
                Ok((t.alpha.clone(), Rational::new(t.num.into(), t.den.into())))
            })
            .collect::<Result<Vec<_>>>()?;
        RationalPolynomial::from_terms(n, terms)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
