//! Reading and writing the JSON wire formats.

use std::fs;
use std::path::Path;

use fockcat::algebraic::{MonoidJson, MonoidPresentation};
use fockcat::{MatrixJson, Morphism, SpaceObject};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{ExprError, Result};

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| ExprError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text)
        .map_err(|e| fockcat::Error::Parse(format!("{}: {e}", path.display())).into())
}

/// Loads a `{"rows", "cols", "data"}` matrix. Sides of dimension 1 are typed
/// as the tensor unit and all others as plain `C^n`.
pub fn load_matrix(path: impl AsRef<Path>) -> Result<Morphism> {
    let json: MatrixJson = read_json(path.as_ref())?;
    Ok(Morphism::from_json(&json)?)
}

/// Loads a state and types it as `I -> carrier`.
pub fn load_state(path: impl AsRef<Path>, carrier: &SpaceObject) -> Result<Morphism> {
    let json: MatrixJson = read_json(path.as_ref())?;
    Ok(Morphism::from_json_typed(
        &json,
        SpaceObject::unit(),
        carrier.clone(),
    )?)
}

pub fn load_monoid(path: impl AsRef<Path>) -> Result<MonoidPresentation> {
    let json: MonoidJson = read_json(path.as_ref())?;
    Ok(MonoidPresentation::from_json(&json)?)
}

/// A matrix together with its type, as written by the binary.
#[derive(Debug, Serialize)]
pub struct TypedMatrix {
    pub dom: String,
    pub cod: String,
    #[serde(flatten)]
    pub matrix: MatrixJson,
}

impl From<&Morphism> for TypedMatrix {
    fn from(m: &Morphism) -> Self {
        TypedMatrix {
            dom: m.dom().to_string(),
            cod: m.cod().to_string(),
            matrix: m.to_json(),
        }
    }
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| ExprError::Io {
            path: p.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
