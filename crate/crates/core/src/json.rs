//! JSON wire format for curves.

use serde::{Deserialize, Serialize};

use crate::curve::{CurveSpec, Family};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, GaloisField};

/// `{"family":"two_term","field":{"p":7,"h":2},"n":8,"m":4,"a":1,"b":1,"c":null}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub family: Family,
    pub field: FieldSpec,
    pub n: u32,
    pub m: u32,
    pub a: u64,
    pub b: u64,
    #[serde(default)]
    pub c: Option<u64>,
}

impl CurveJson {
    pub fn from_spec(spec: &CurveSpec) -> Self {
        CurveJson {
            family: spec.family,
            field: spec.field.spec(),
            n: spec.n,
            m: spec.m,
            a: spec.a.0 as u64,
            b: spec.b.0 as u64,
            c: spec.c.map(|c| c.0 as u64),
        }
    }

    pub fn to_spec(&self) -> Result<CurveSpec> {
        let f = GaloisField::from_spec(&self.field)?;
        let el = |v: u64| f.elem(v);
        let (a, b) = (el(self.a)?, el(self.b)?);
        Ok(match self.family {
            Family::TwoTerm => {
                if let Some(c) = self.c.filter(|&c| c != 0) {
                    el(c)?;
                    return Err(Error::DegenerateCoefficient(
                        "c is not used by the two-term family",
                    ));
                }
                CurveSpec::two_term(&f, self.n, self.m, a, b)
            }
            Family::ThreeTerm => {
                let c = self
                    .c
                    .ok_or_else(|| Error::Malformed("three_term curve needs c".into()))?;
                CurveSpec::three_term(&f, self.n, self.m, a, b, el(c)?)
            }
        })
    }
}

pub fn parse_curve(text: &str) -> Result<CurveSpec> {
    let raw: CurveJson = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    raw.to_spec()
}

pub fn curve_to_json(spec: &CurveSpec) -> String {
    serde_json::to_string(&CurveJson::from_spec(spec)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fe;

    #[test]
    fn round_trip() {
        let text = r#"{"family":"three_term","field":{"p":7,"h":2,"modulus":[3,6,1]},"n":8,"m":8,"a":1,"b":2,"c":3}"#;
        let spec = parse_curve(text).unwrap();
        assert_eq!(spec.field.modulus(), &[3, 6, 1]);
        assert_eq!(spec.c, Some(Fe(3)));
        let back: CurveJson = serde_json::from_str(&curve_to_json(&spec)).unwrap();
        assert_eq!(back.to_spec().unwrap(), spec);
    }

    #[test]
    fn defaults_and_errors() {
        let spec = parse_curve(
            r#"{"family":"two_term","field":{"p":7,"h":1},"n":3,"m":3,"a":1,"b":1,"c":null}"#,
        )
        .unwrap();
        assert_eq!(spec.c, None);
        assert!(matches!(parse_curve("{"), Err(Error::Malformed(_))));
        assert!(matches!(
            parse_curve(r#"{"family":"two_term","field":{"p":7,"h":1},"n":3,"m":3,"a":9,"b":1}"#),
            Err(Error::InvalidElement { .. })
        ));
        assert!(matches!(
            parse_curve(r#"{"family":"three_term","field":{"p":7,"h":1},"n":3,"m":3,"a":1,"b":1}"#),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            parse_curve(r#"{"family":"two_term","field":{"p":8,"h":1},"n":3,"m":3,"a":1,"b":1}"#),
            Err(Error::NotPrime(8))
        ));
    }
}
