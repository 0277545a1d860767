use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{canonical_key, exact_widths, Widths};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Exact widths keyed by [`canonical_key`], stored as a JSON object.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct WidthCache {
    pub entries: BTreeMap<String, Widths>,
}

impl WidthCache {
    /// Reads the file if it exists; a missing file gives an empty cache.
    pub fn load(path: &Path) -> Result<Self> {
        match fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() }),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::default()),
            Err(e) => Err(Error::Domain(format!("cannot read {}: {e}", path.display()))),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("widths serialize");
        fs::write(path, text).map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))
    }

    pub fn widths(&mut self, g: &Graph) -> Result<Widths> {
        let key = canonical_key(g);
        if let Some(w) = self.entries.get(&key) {
            return Ok(*w);
        }
        let w = exact_widths(g)?;
        self.entries.insert(key, w);
        Ok(w)
    }
}
