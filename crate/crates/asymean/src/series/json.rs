//! JSON document form of a series.
//!
//! ```json
//! {
//!   "symbols": ["alpha", "beta", "s", "t", "r", "ap", "bp", "gp"],
//!   "log_coeff": "0",
//!   "exponent": "1",
//!   "coeffs": ["1", "alpha"],
//!   "exact": false
//! }
//! ```
//!
//! Coefficients and the exponent are canonical-text strings in the
//! coefficient grammar; emit → read → emit is byte-identical.

use serde::{Deserialize, Serialize};

use super::{AsymptoticSeries, Exponent};
use crate::coeffield::{parse_coefficient, SymbolTable};
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct SeriesDoc {
    symbols: Vec<String>,
    log_coeff: String,
    exponent: String,
    coeffs: Vec<String>,
    exact: bool,
}

pub fn to_json_string(s: &AsymptoticSeries) -> String {
    let doc = SeriesDoc {
        symbols: s.table().names().to_vec(),
        log_coeff: s.log_coeff().to_string(),
        exponent: s.exponent().to_coefficient(s.table()).to_string(),
        coeffs: s.coeffs().iter().map(|c| c.to_string()).collect(),
        exact: s.exact(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("series serializes");
    out.push('\n');
    out
}

pub fn from_json_str(text: &str) -> Result<AsymptoticSeries> {
    let doc: SeriesDoc = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid series JSON: {e}")))?;
    for (i, name) in doc.symbols.iter().enumerate() {
        if doc.symbols[..i].contains(name) {
            return Err(Error::Parse(format!("duplicate symbol {name:?}")));
        }
        if name.is_empty()
            || !name
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'_')
            || name.as_bytes()[0].is_ascii_digit()
        {
            return Err(Error::Parse(format!("invalid symbol name {name:?}")));
        }
    }
    if doc.coeffs.is_empty() {
        return Err(Error::Parse("series JSON needs at least one coefficient".into()));
    }
    let table = SymbolTable::new(&doc.symbols);
    let log_coeff = parse_coefficient(&doc.log_coeff, &table)?;
    let exp_c = parse_coefficient(&doc.exponent, &table)?;
    let exponent = Exponent::from_coefficient(&exp_c)
        .map_err(|e| Error::Parse(format!("bad exponent: {e}")))?;
    let coeffs = doc
        .coeffs
        .iter()
        .map(|c| parse_coefficient(c, &table))
        .collect::<Result<Vec<_>>>()?;
    Ok(AsymptoticSeries::new(
        &table, log_coeff, exponent, coeffs, doc.exact,
    ))
}

#[cfg(test)]
mod tests {
    use super::super::tests_support::{coeff, ser, table};
    use super::*;
    use crate::series::AsymptoticSeries;

    #[test]
    fn round_trip_bytes() {
        let s = ser(1, &["1", "alpha", "0", "-1/6*beta^2"], false);
        let j1 = to_json_string(&s);
        let back = from_json_str(&j1).unwrap();
        assert_eq!(back, s);
        assert_eq!(to_json_string(&back), j1);
    }

    #[test]
    fn log_and_symbolic_exponent() {
        let t = table();
        let gp = t.id("gp").unwrap();
        let s = AsymptoticSeries::new(
            &t,
            coeff("1/2"),
            Exponent::linear(gp, num::BigRational::from_integer(1.into()), num::BigRational::from_integer((-2).into())),
            vec![coeff("1"), coeff("ap*gp")],
            true,
        );
        let j = to_json_string(&s);
        assert!(j.contains("\"gp - 2\""));
        let back = from_json_str(&j).unwrap();
        assert_eq!(back, s);
        assert_eq!(to_json_string(&back), j);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(from_json_str("{").is_err());
        assert!(from_json_str(r#"{"symbols":[],"log_coeff":"0","exponent":"1","coeffs":[],"exact":false}"#).is_err());
        assert!(from_json_str(r#"{"symbols":["x","x"],"log_coeff":"0","exponent":"1","coeffs":["1"],"exact":false}"#).is_err());
        assert!(from_json_str(r#"{"symbols":["a"],"log_coeff":"0","exponent":"a^2","coeffs":["1"],"exact":false}"#).is_err());
        assert!(from_json_str(r#"{"symbols":["a"],"log_coeff":"0","exponent":"1","coeffs":["b"],"exact":false}"#).is_err());
        assert!(from_json_str(r#"{"symbols":["9a"],"log_coeff":"0","exponent":"1","coeffs":["1"],"exact":false}"#).is_err());
    }

    #[test]
    fn normalizes_on_load() {
        let j = r#"{"symbols":["a"],"log_coeff":"0","exponent":"2","coeffs":["0","a"],"exact":false}"#;
        let s = from_json_str(j).unwrap();
        assert_eq!(s.exponent().as_rational().unwrap().to_string(), "1");
        assert_eq!(s.coeffs().len(), 1);
    }
}
