//! JSON form of a truncated series.
//!
//! ```json
//! {"variable": "q", "min_exponent": -1, "truncation": 2,
//!  "coefficients": [["1","1"], ["-240","1"], ["-141444","1"]]}
//! ```
//!
//! Coefficients are decimal numerator/denominator strings (never floats)
//! covering the dense window `[min_exponent, truncation)`. Parsing stores
//! exactly what is given and emission writes exactly what is stored, so
//! both compositions of `to_json`/`from_json` are identities.

use super::LaurentSeries;
use crate::rational::{rational_from_strings, rational_to_strings};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeriesJsonError {
    #[error("not a JSON object")]
    NotAnObject,
    #[error("missing or malformed field {0}")]
    BadField(&'static str),
    #[error("coefficient {index}: {reason}")]
    BadCoefficient { index: usize, reason: String },
    #[error("window length {got} does not match truncation - min_exponent = {want}")]
    WindowLength { got: usize, want: i64 },
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
}

impl LaurentSeries {
    pub fn to_json_value(&self) -> Value {
        let coefficients: Vec<Value> = self
            .window(self.min_exponent(), self.truncation())
            .iter()
            .map(|c| {
                let (n, d) = rational_to_strings(c);
                json!([n, d])
            })
            .collect();
        json!({
            "variable": self.variable(),
            "min_exponent": self.min_exponent(),
            "truncation": self.truncation(),
            "coefficients": coefficients,
        })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &Value) -> Result<Self, SeriesJsonError> {
        let obj = v.as_object().ok_or(SeriesJsonError::NotAnObject)?;
        let variable = obj
            .get("variable")
            .and_then(Value::as_str)
            .ok_or(SeriesJsonError::BadField("variable"))?;
        let min_exponent = obj
            .get("min_exponent")
            .and_then(Value::as_i64)
            .ok_or(SeriesJsonError::BadField("min_exponent"))?;
        let truncation = obj
            .get("truncation")
            .and_then(Value::as_i64)
            .ok_or(SeriesJsonError::BadField("truncation"))?;
        if truncation < min_exponent {
            return Err(SeriesJsonError::BadField("truncation"));
        }
        let raw = obj
            .get("coefficients")
            .and_then(Value::as_array)
            .ok_or(SeriesJsonError::BadField("coefficients"))?;
        let want = truncation - min_exponent;
        if raw.len() as i64 != want {
            return Err(SeriesJsonError::WindowLength { got: raw.len(), want });
        }
        let mut coeffs = Vec::with_capacity(raw.len());
        for (index, entry) in raw.iter().enumerate() {
            let pair = entry
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| SeriesJsonError::BadCoefficient {
                    index,
                    reason: "expected [numerator, denominator]".into(),
                })?;
            let n = pair[0].as_str().ok_or_else(|| SeriesJsonError::BadCoefficient {
                index,
                reason: "numerator must be a decimal string".into(),
            })?;
            let d = pair[1].as_str().ok_or_else(|| SeriesJsonError::BadCoefficient {
                index,
                reason: "denominator must be a decimal string".into(),
            })?;
            coeffs.push(
                rational_from_strings(n, d)
                    .map_err(|reason| SeriesJsonError::BadCoefficient { index, reason })?,
            );
        }
        Ok(LaurentSeries::new(variable, min_exponent, truncation, coeffs))
    }

    pub fn from_json(s: &str) -> Result<Self, SeriesJsonError> {
        Self::from_json_value(&serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn emit_then_parse_is_identity() {
        let s = LaurentSeries::new(
            "q",
            -1,
            3,
            vec![rat(1), rat(-240), ratio(22, 7), rat(0)],
        );
        let round = LaurentSeries::from_json(&s.to_json()).unwrap();
        assert_eq!(round, s);
        assert_eq!(round.min_exponent(), s.min_exponent());
        assert_eq!(round.window(-1, 3), s.window(-1, 3));
    }

    #[test]
    fn parse_then_emit_is_byte_identity() {
        let text = r#"{"coefficients":[["0","1"],["-240","1"],["22","7"]],"min_exponent":-1,"truncation":2,"variable":"q"}"#;
        let s = LaurentSeries::from_json(text).unwrap();
        assert_eq!(s.to_json(), text);
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(LaurentSeries::from_json("[]").is_err());
        assert!(LaurentSeries::from_json(r#"{"variable":"q"}"#).is_err());
        let wrong_len =
            r#"{"variable":"q","min_exponent":0,"truncation":2,"coefficients":[["1","1"]]}"#;
        assert!(LaurentSeries::from_json(wrong_len).is_err());
        let float =
            r#"{"variable":"q","min_exponent":0,"truncation":1,"coefficients":[[1.5,"1"]]}"#;
        assert!(LaurentSeries::from_json(float).is_err());
        let zero_den =
            r#"{"variable":"q","min_exponent":0,"truncation":1,"coefficients":[["1","0"]]}"#;
        assert!(LaurentSeries::from_json(zero_den).is_err());
    }
}
