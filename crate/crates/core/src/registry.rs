//! Named code fixtures loaded from `fixtures/codes/*.spec`, plus enumerator
//! templates from `fixtures/templates/*.tpl`.

use std::path::{Path, PathBuf};

use crate::analysis::{is_self_dual, EnumeratorTemplate};
use crate::codespec::{CodeSpec, Status};
use crate::error::{Error, Result};

/// Fixture directory: `$TBSD_FIXTURES` if set, else the one shipped with the
/// repository.
pub fn default_fixtures_dir() -> PathBuf {
    std::env::var_os("TBSD_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
}

#[derive(Debug, Clone)]
pub struct Registry {
    dir: PathBuf,
    entries: Vec<CodeSpec>,
}

impl Registry {
    /// Loads every `*.spec` under `dir/codes`. Ready entries must be
    /// self-dual; pending ones load as-is.
    pub fn load(dir: impl AsRef<Path>) -> Result<Registry> {
        let dir = dir.as_ref().to_path_buf();
        let codes = dir.join("codes");
        let listing = std::fs::read_dir(&codes).map_err(|e| Error::io(&codes, e))?;
        let mut entries = Vec::new();
        for entry in listing {
            let path = entry.map_err(|e| Error::io(&codes, e))?.path();
            if path.extension().is_some_and(|e| e == "spec") {
                let spec = CodeSpec::load(&path)?;
                if spec.status == Status::Ready && !is_self_dual(&spec.generator()?)? {
                    return Err(Error::Construction(format!(
                        "fixture {} is not self-dual",
                        spec.name
                    )));
                }
                entries.push(spec);
            }
        }
        entries.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(Registry { dir, entries })
    }

    pub fn load_default() -> Result<Registry> {
        Self::load(default_fixtures_dir())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entries(&self) -> &[CodeSpec] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CodeSpec> {
        self.entries.iter().find(|s| s.name == name)
    }

    pub fn template(&self, name: &str) -> Result<EnumeratorTemplate> {
        EnumeratorTemplate::load(self.dir.join("templates").join(format!("{name}.tpl")))
    }
}
