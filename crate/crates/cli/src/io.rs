use std::fs;
use std::path::{Path, PathBuf};

use blueprint_core::{builtins, Blueprint};
use blueprint_geom::{load_tileset, PuncturedTileSet};
use blueprint_subshift::PatternSet;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

const PATTERNS: [(&str, &str); 3] = [
    ("hardsquare", include_str!("../../../data/hardsquare.pat")),
    ("wang_mismatch", include_str!("../../../data/wang_mismatch.pat")),
    ("empty", include_str!("../../../data/empty.pat")),
];

const TILES: [(&str, &str); 2] = [
    ("keyed_square", include_str!("../../../data/keyed_square.tiles")),
    ("ab", include_str!("../../../data/ab.tiles")),
];

fn sha(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn stem(arg: &str) -> &str {
    Path::new(arg).file_stem().and_then(|s| s.to_str()).unwrap_or(arg)
}

#[derive(Serialize)]
struct Entry {
    name: String,
    sha256: String,
}

#[derive(Serialize)]
struct ManifestDoc<'a> {
    command: &'a str,
    parameters: &'a [(String, String)],
    inputs: &'a [Entry],
    outputs: &'a [Entry],
}

/// Inputs, parameters and outputs of one run.
pub struct Run {
    pub command: &'static str,
    params: Vec<(String, String)>,
    inputs: Vec<Entry>,
    outputs: Vec<Entry>,
}

impl Run {
    pub fn new(command: &'static str) -> Self {
        Run { command, params: Vec::new(), inputs: Vec::new(), outputs: Vec::new() }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.push((key.to_string(), value.to_string()));
    }

    /// A file's text, or a built-in document when no such file exists.
    fn text(&mut self, arg: &str, builtin: impl Fn(&str) -> Option<String>) -> Result<String> {
        let path = Path::new(arg);
        if path.exists() {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Unreadable { path: arg.to_string(), reason: e.to_string() })?;
            self.inputs.push(Entry { name: arg.to_string(), sha256: sha(text.as_bytes()) });
            return Ok(text);
        }
        match builtin(stem(arg)) {
            Some(text) => {
                self.inputs.push(Entry { name: format!("builtin:{}", stem(arg)), sha256: sha(text.as_bytes()) });
                Ok(text)
            }
            None => Err(CliError::Unreadable { path: arg.to_string(), reason: "no such file or built-in".into() }),
        }
    }

    pub fn blueprint(&mut self, arg: &str) -> Result<Blueprint> {
        let text = self.text(arg, |s| builtins::by_name(&s.to_lowercase()).map(|b| b.to_toml_string()))?;
        Ok(Blueprint::parse(&text)?)
    }

    pub fn patterns(&mut self, arg: &str, b: &Blueprint) -> Result<PatternSet> {
        let text = self.text(arg, |s| PATTERNS.iter().find(|(n, _)| *n == s).map(|(_, t)| t.to_string()))?;
        Ok(PatternSet::parse(&text, b)?)
    }

    pub fn tiles(&mut self, arg: &str) -> Result<PuncturedTileSet> {
        let text = self.text(arg, |s| TILES.iter().find(|(n, _)| *n == s).map(|(_, t)| t.to_string()))?;
        Ok(load_tileset(&text)?)
    }

    /// Writes an artifact to the file, or to stdout without one.
    pub fn emit(&mut self, out: Option<&PathBuf>, content: &str) -> Result<()> {
        match out {
            Some(p) => {
                fs::write(p, content).map_err(|e| CliError::Output { path: p.display().to_string(), reason: e.to_string() })?;
                self.outputs.push(Entry { name: p.display().to_string(), sha256: sha(content.as_bytes()) });
            }
            None => print!("{content}"),
        }
        Ok(())
    }

    /// The machine-readable summary line.
    pub fn summary(&self, fields: &[(&str, String)]) {
        let body: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("bpt {} {}", self.command, body.join(" "));
    }

    pub fn write_manifest(&self, path: &Path) -> Result<()> {
        let doc = ManifestDoc { command: self.command, parameters: &self.params, inputs: &self.inputs, outputs: &self.outputs };
        let text = toml::to_string(&doc).expect("manifest serializes");
        fs::write(path, text).map_err(|e| CliError::Output { path: path.display().to_string(), reason: e.to_string() })
    }
}
