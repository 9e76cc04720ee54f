//! Index of standard-library names used for origin decisions and collision checks.

use std::collections::BTreeSet;
use std::io;
use std::path::Path;

const BUNDLED: &str = include_str!("../../data/stdlib.txt");

/// Environment variable naming a replacement index file.
pub const STDLIB_INDEX_ENV: &str = "VMORPH_STDLIB_INDEX";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StdlibIndex {
    names: BTreeSet<String>,
}

impl StdlibIndex {
    /// One name per line; blank lines and `#` comments are ignored.
    pub fn from_text(text: &str) -> Self {
        let names = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect();
        StdlibIndex { names }
    }

    pub fn bundled() -> Self {
        Self::from_text(BUNDLED)
    }

    pub fn load(path: &Path) -> io::Result<Self> {
        Ok(Self::from_text(&std::fs::read_to_string(path)?))
    }

    /// The index named by `VMORPH_STDLIB_INDEX`, or the bundled one.
    pub fn from_env() -> io::Result<Self> {
        match std::env::var_os(STDLIB_INDEX_ENV) {
            Some(path) => Self::load(Path::new(&path)),
            None => Ok(Self::bundled()),
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.contains(name)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }
}
