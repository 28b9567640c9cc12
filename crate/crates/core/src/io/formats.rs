//! JSON input documents for families and Weierstrass models. Coefficients
//! and points are polynomial expressions in strings, so rationals stay exact.

use std::path::Path;

use serde::Deserialize;

use super::parser::{parse_constant, parse_poly};
use crate::algebra::GaussRational;
use crate::error::{Error, Result};
use crate::family::FamilyModel;
use crate::weierstrass::WeierstrassModel;

/// `{"f": "<expr>", "points": [["0", "0"]], "rank": 1}`
#[derive(Clone, PartialEq, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub f: String,
    #[serde(default)]
    pub points: Option<Vec<[String; 2]>>,
    #[serde(default = "default_rank")]
    pub rank: u32,
}

fn default_rank() -> u32 {
    1
}

/// `{"a": ["<a1>", "<a2>", "<a3>", "<a4>", "<a6>"]}`
#[derive(Clone, PartialEq, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeierstrassFile {
    pub a: [String; 5],
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn decode<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        found: e.to_string(),
        expected: vec!["a valid input document".into()],
    })
}

impl FamilyFile {
    pub fn from_json(text: &str) -> Result<Self> {
        decode(text)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read(path)?)
    }

    pub fn to_model(&self) -> Result<FamilyModel<GaussRational>> {
        let f = parse_poly(&self.f)?;
        let points = match &self.points {
            Some(ps) => Some(
                ps.iter()
                    .map(|[x, y]| Ok((parse_constant(x)?, parse_constant(y)?)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        FamilyModel::new(f, points, self.rank)
    }
}

impl WeierstrassFile {
    pub fn from_json(text: &str) -> Result<Self> {
        decode(text)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read(path)?)
    }

    pub fn to_model(&self) -> Result<WeierstrassModel<GaussRational>> {
        let [a1, a2, a3, a4, a6] = &self.a;
        WeierstrassModel::new([parse_poly(a1)?, parse_poly(a2)?, parse_poly(a3)?, parse_poly(a4)?, parse_poly(a6)?])
    }
}
