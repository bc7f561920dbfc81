//! JSON fixtures for elements:
//! `{"p": 5, "N": 20, "level": 1, "coeffs": ["5", "5", "0", "0", "0"]}` for
//! `Lambda_n` and `{"p": 5, "N": 20, "deg": 30, "coeffs": [...]}` for series.
//!
//! Coefficients are residues mod `p^N` in ascending degree, written as
//! decimal strings. On input, bare integers and negative values are also
//! accepted, and a short coefficient list is zero padded.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::{FiniteLevelElt, SeriesElt};
use crate::padic::PAdicRing;
use crate::sprung::LambdaMatrix2x2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub p: u64,
    #[serde(rename = "N")]
    pub precision: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg: Option<usize>,
    pub coeffs: Vec<Coefficient>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Text(String),
    Int(i64),
}

impl Coefficient {
    fn residue(&self, ring: &PAdicRing) -> Result<u64> {
        let v: i128 = match self {
            Coefficient::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?,
            Coefficient::Int(i) => *i as i128,
        };
        Ok(ring.reduce_i128(v))
    }
}

/// A decoded element of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Finite(FiniteLevelElt),
    Series(SeriesElt),
}

impl ElementJson {
    pub fn decode(&self) -> Result<Element> {
        let ring =
            PAdicRing::new(self.p, self.precision).map_err(|e| Error::Parse(e.to_string()))?;
        if self.coeffs.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        let mut residues = self
            .coeffs
            .iter()
            .map(|c| c.residue(&ring))
            .collect::<Result<Vec<_>>>()?;
        match (self.level, self.deg) {
            (Some(level), None) => {
                let dim = (ring.p() as usize)
                    .checked_pow(level)
                    .ok_or_else(|| Error::Parse(format!("level {level} too large")))?;
                if residues.len() > dim {
                    return Err(Error::Parse(format!(
                        "{} coefficients exceed p^level = {dim}",
                        residues.len()
                    )));
                }
                residues.resize(dim, 0);
                Ok(Element::Finite(FiniteLevelElt::new(ring, level, residues)?))
            }
            (None, Some(deg)) => SeriesElt::new(ring, deg, residues)
                .map(Element::Series)
                .map_err(|e| Error::Parse(e.to_string())),
            _ => Err(Error::Parse(
                "exactly one of \"level\" and \"deg\" is required".into(),
            )),
        }
    }
}

fn strings(coeffs: &[u64]) -> Vec<Coefficient> {
    coeffs
        .iter()
        .map(|c| Coefficient::Text(c.to_string()))
        .collect()
}

impl From<&FiniteLevelElt> for ElementJson {
    fn from(x: &FiniteLevelElt) -> Self {
        Self {
            p: x.ring().p(),
            precision: x.ring().precision(),
            level: Some(x.level()),
            deg: None,
            coeffs: strings(x.coeffs()),
        }
    }
}

impl From<&SeriesElt> for ElementJson {
    fn from(s: &SeriesElt) -> Self {
        Self {
            p: s.ring().p(),
            precision: s.ring().precision(),
            level: None,
            deg: Some(s.trunc()),
            coeffs: strings(s.coeffs()),
        }
    }
}

pub fn parse_element(json: &str) -> Result<Element> {
    let raw: ElementJson = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    raw.decode()
}

pub fn encode_finite(x: &FiniteLevelElt) -> String {
    serde_json::to_string(&ElementJson::from(x)).expect("serializable")
}

pub fn encode_series(s: &SeriesElt) -> String {
    serde_json::to_string(&ElementJson::from(s)).expect("serializable")
}

/// `[[a, b], [c, d]]` with each entry an element object.
pub fn encode_matrix(m: &LambdaMatrix2x2) -> serde_json::Value {
    let e = |r, c| serde_json::to_value(ElementJson::from(m.entry(r, c))).expect("serializable");
    serde_json::json!([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_short_level_vectors() {
        let x = parse_element(r#"{"p": 5, "N": 20, "level": 1, "coeffs": ["5", "5"]}"#).unwrap();
        let Element::Finite(x) = x else { panic!() };
        assert_eq!(x.coeffs(), &[5, 5, 0, 0, 0]);
    }

    #[test]
    fn accepts_signed_integers() {
        let x = parse_element(r#"{"p": 3, "N": 2, "deg": 3, "coeffs": [-1, "10"]}"#).unwrap();
        let Element::Series(s) = x else { panic!() };
        assert_eq!(s.coeffs(), &[8, 1, 0, 0]);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            r#"{"p": 5, "N": 20, "level": 1, "coeffs": []}"#,
            r#"{"p": 4, "N": 20, "level": 1, "coeffs": ["1"]}"#,
            r#"{"p": 5, "N": 20, "coeffs": ["1"]}"#,
            r#"{"p": 5, "N": 20, "level": 1, "deg": 3, "coeffs": ["1"]}"#,
            r#"{"p": 5, "N": 20, "level": 0, "coeffs": ["1", "2"]}"#,
            r#"{"p": 5, "N": 20, "level": 1, "coeffs": ["x"]}"#,
            r#"not json"#,
        ] {
            assert!(matches!(parse_element(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn round_trip() {
        let r = PAdicRing::new(5, 20).unwrap();
        let x = FiniteLevelElt::from_polynomial(r, 1, &[1, 2, 3, 4, 99]);
        assert_eq!(
            parse_element(&encode_finite(&x)).unwrap(),
            Element::Finite(x)
        );
        let s = SeriesElt::from_signed(r, 6, &[-3, 0, 7]).unwrap();
        assert_eq!(
            parse_element(&encode_series(&s)).unwrap(),
            Element::Series(s)
        );
    }
}
