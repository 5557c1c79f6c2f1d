use std::fs;
use std::io::Read;
use std::path::Path;

use nerve_core::io::SCHEMA_VERSION;
use serde::de::DeserializeOwned;
use serde_json::Value;

/// A failure that ends the run with a given exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable, malformed or invalid input (exit 2).
    Input(String),
    /// A library step failed on valid input (exit 1).
    Failed(nerve_core::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Failed(e) => write!(f, "{e}"),
        }
    }
}

impl From<nerve_core::Error> for CliError {
    fn from(e: nerve_core::Error) -> Self {
        CliError::Failed(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Reads a file, or stdin for `-`.
pub fn read_source(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
    }
}

/// Parses JSON, reporting the exact path of the first offending value.
pub fn parse<T: DeserializeOwned>(name: &str, text: &str) -> CliResult<T> {
    parse_doc(name, text, None)
}

/// Like [`parse`], but also accepts documents written by this tool: an
/// optional `"schema_version": 1`, and the payload nested under `envelope`
/// as in the output of the command that produces it.
pub fn parse_doc<T: DeserializeOwned>(name: &str, text: &str, envelope: Option<&str>) -> CliResult<T> {
    let mut value: Value =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("schema error in {name} at .: {e}")))?;
    let mut prefix = String::new();
    if let Value::Object(obj) = &mut value {
        if let Some(v) = obj.remove("schema_version") {
            if v != SCHEMA_VERSION {
                return Err(CliError::Input(format!(
                    "schema error in {name} at schema_version: expected {SCHEMA_VERSION}, got {v}"
                )));
            }
        }
        if let Some(key) = envelope {
            if let Some(inner) = obj.remove(key) {
                prefix = key.to_string();
                value = inner;
            }
        }
    }
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = match (prefix.is_empty(), e.path().to_string()) {
            (true, p) => p,
            (false, p) if p == "." => prefix.clone(),
            (false, p) => format!("{prefix}.{p}"),
        };
        CliError::Input(format!("schema error in {name} at {path}: {}", e.inner()))
    })
}

pub fn load<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    parse(&path.display().to_string(), &read_source(path)?)
}

pub fn load_doc<T: DeserializeOwned>(path: &Path, envelope: Option<&str>) -> CliResult<T> {
    parse_doc(&path.display().to_string(), &read_source(path)?, envelope)
}

/// Turns a validation error of freshly parsed input into an input error.
pub fn validate<T>(name: &str, r: nerve_core::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Input(format!("invalid {name}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nerve_core::io::CoverJson;

    #[test]
    fn schema_errors_name_the_path() {
        let text =
            r#"{"space":{"maximal_simplices":[["a","b"]]},"working_level":0,"levels":[[{"id":"P","stars":[1]}]]}"#;
        let err = parse::<CoverJson>("cover", text).unwrap_err();
        assert!(err.to_string().contains("levels[0][0].stars[0]"), "{err}");
        assert_eq!(err.code(), 2);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"maximal_simplices":[["a"]],"extra":1}"#;
        let err = parse::<nerve_core::io::ComplexJson>("complex", text).unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
    }

    #[test]
    fn tool_output_is_accepted() {
        let text = r#"{"schema_version":1,"ok":true,"map":{"maximal_simplices":[["a"]]}}"#;
        assert!(parse_doc::<nerve_core::io::ComplexJson>("doc", text, Some("map")).is_ok());
        let text = r#"{"schema_version":2,"maximal_simplices":[["a"]]}"#;
        let err = parse::<nerve_core::io::ComplexJson>("doc", text).unwrap_err();
        assert!(err.to_string().contains("schema_version"), "{err}");
        let text = r#"{"status":"exhausted","refinement":null}"#;
        let err = parse_doc::<nerve_core::io::CRefinementJson>("doc", text, Some("refinement")).unwrap_err();
        assert!(err.to_string().contains("at refinement:"), "{err}");
    }
}
