//! Reading input files; every read is recorded with its hash.

use std::path::Path;

use serde_json::Value;
use tpa_core::algebra::{AlgebraFile, LinearMap};
use tpa_core::exact::DerivationSpec;

use crate::report::Input;
use crate::CliError;

pub struct Loader {
    pub inputs: Vec<Input>,
}

impl Loader {
    pub fn new() -> Self {
        Loader { inputs: Vec::new() }
    }

    fn read(&mut self, role: &str, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(Input::new(role, &path.display().to_string(), &bytes));
        Ok(bytes)
    }

    fn json(&mut self, role: &str, path: &Path) -> Result<Value, CliError> {
        let bytes = self.read(role, path)?;
        serde_json::from_slice(&bytes)
            .map_err(|e| CliError::Usage(format!("{} is not valid JSON: {e}", path.display())))
    }

    pub fn algebra(&mut self, role: &str, path: &Path) -> Result<AlgebraFile, CliError> {
        let v = self.json(role, path)?;
        Ok(AlgebraFile::from_json(&v)?)
    }

    /// A bare map (`{"dim", "images"}`) or an algebra file carrying exactly
    /// one map (or one called `D`).
    pub fn map(&mut self, role: &str, path: &Path) -> Result<LinearMap, CliError> {
        let v = self.json(role, path)?;
        if v.get("images").is_some() {
            return Ok(LinearMap::from_json(&v)?);
        }
        let f = AlgebraFile::from_json(&v)?;
        map_in_file(&f).ok_or_else(|| CliError::Usage(format!("{} holds no unambiguous map", path.display())))
    }

    pub fn derivation(&mut self, role: &str, path: &Path) -> Result<DerivationSpec, CliError> {
        let v = self.json(role, path)?;
        Ok(DerivationSpec::from_json(&v)?)
    }
}

pub fn map_in_file(f: &AlgebraFile) -> Option<LinearMap> {
    match f.maps.len() {
        1 => f.maps.values().next().cloned(),
        _ => f.maps.get("D").cloned(),
    }
}
