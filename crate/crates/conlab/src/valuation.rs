//! Valuation files: a JSON object from atom names to booleans.

use std::path::Path;

use conlab_core::modal::Valuation;
use serde_json::Value;

use crate::CliError;

pub fn parse_valuation(text: &str) -> Result<Valuation, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Domain(format!("valuation: {e}")))?;
    let Value::Object(map) = value else {
        return Err(CliError::Domain("valuation: expected an object such as {\"p0\": true}".into()));
    };
    let mut v = Valuation::new();
    for (key, val) in map {
        let atom = key
            .strip_prefix('p')
            .and_then(|n| n.parse::<u32>().ok())
            .filter(|n| key == format!("p{n}"))
            .ok_or_else(|| CliError::Domain(format!("valuation: `{key}` is not an atom name like p0")))?;
        let b = val.as_bool().ok_or_else(|| CliError::Domain(format!("valuation: `{key}` must be true or false")))?;
        v = v.with(atom, b);
    }
    Ok(v)
}

pub fn load_valuation(path: &Path) -> Result<Valuation, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    parse_valuation(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_atoms() {
        let v = parse_valuation(r#"{"p0": true, "p12": false}"#).unwrap();
        assert_eq!((v.get(0), v.get(12), v.get(1)), (Some(true), Some(false), None));
    }

    #[test]
    fn rejects_everything_else() {
        for text in ["", "[]", r#"{"p": true}"#, r#"{"p-1": true}"#, r#"{"p00": true}"#, r#"{"P0": true}"#, r#"{"p0": null}"#] {
            assert!(matches!(parse_valuation(text), Err(CliError::Domain(_))), "{text}");
        }
    }
}
