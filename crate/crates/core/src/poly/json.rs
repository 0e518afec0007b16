//! JSON form of polynomials:
//! `{"ring": {...}, "vars": [...], "terms": [{"exps": [...], "coef": "a/b"}, ...]}`
//! with terms in grlex-descending order.

use serde::{Deserialize, Serialize};

use super::coef::{parse_coef, CoefRing, CoefRingJson};
use super::multi::MultiPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: CoefRingJson,
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl From<&MultiPoly> for PolyJson {
    fn from(p: &MultiPoly) -> Self {
        PolyJson {
            ring: p.ring().into(),
            vars: p.vars().to_vec(),
            terms: p.terms().map(|(m, c)| TermJson { exps: m.exps().to_vec(), coef: c.to_string() }).collect(),
        }
    }
}

impl TryFrom<&PolyJson> for MultiPoly {
    type Error = Error;

    fn try_from(j: &PolyJson) -> Result<Self> {
        let ring = CoefRing::try_from(&j.ring)?;
        let terms = j.terms.iter().map(|t| Ok((t.exps.clone(), parse_coef(&t.coef)?))).collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(ring, &j.vars, terms)
    }
}

impl MultiPoly {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("polynomial JSON is always serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("polynomial JSON is always serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: PolyJson = serde_json::from_str(s)?;
        MultiPoly::try_from(&j)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let j: PolyJson = serde_json::from_value(v.clone())?;
        MultiPoly::try_from(&j)
    }
}
