use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::RenameError;
use crate::ident::IdentKind;
use crate::syntax::lexer::is_reserved;

/// Name-level mapping from original identifiers to their replacements. The
/// backward map is derived, never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenameDictionary {
    pub forward: BTreeMap<String, String>,
    pub kinds: BTreeMap<String, IdentKind>,
}

impl RenameDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, original: &str, new: &str, kind: IdentKind) {
        self.forward.insert(original.to_string(), new.to_string());
        self.kinds.insert(original.to_string(), kind);
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn get(&self, original: &str) -> Option<&str> {
        self.forward.get(original).map(String::as_str)
    }

    pub fn backward(&self) -> BTreeMap<String, String> {
        self.forward.iter().map(|(k, v)| (v.clone(), k.clone())).collect()
    }

    /// The dictionary that undoes this one.
    pub fn inverse(&self) -> RenameDictionary {
        RenameDictionary {
            forward: self.backward(),
            kinds: self
                .forward
                .iter()
                .filter_map(|(k, v)| Some((v.clone(), *self.kinds.get(k)?)))
                .collect(),
        }
    }

    /// Checks injectivity and that no replacement is a reserved word.
    pub fn validate(&self) -> Result<(), RenameError> {
        let mut seen = BTreeSet::new();
        for (orig, new) in &self.forward {
            if is_reserved(new) {
                return Err(RenameError::InvalidDictionary(format!("{orig} -> {new}: reserved word")));
            }
            if !seen.insert(new) {
                return Err(RenameError::InvalidDictionary(format!(
                    "{new} is the target of more than one name"
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dictionary serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, RenameError> {
        let dict: RenameDictionary = serde_json::from_str(text)?;
        dict.validate()?;
        Ok(dict)
    }

    /// File name after renaming: `Store.java` becomes `Depot.java` when the
    /// class `Store` is renamed.
    pub fn renamed_file_name(&self, file_name: &str) -> String {
        let (stem, ext) = match file_name.rsplit_once('.') {
            Some((s, e)) => (s, Some(e)),
            None => (file_name, None),
        };
        match (self.kinds.get(stem), self.forward.get(stem)) {
            (Some(IdentKind::Class), Some(new)) => match ext {
                Some(e) => format!("{new}.{e}"),
                None => new.clone(),
            },
            _ => file_name.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RenameDictionary {
        let mut d = RenameDictionary::new();
        d.insert("parentPath", "progenitorRoute", IdentKind::Variable);
        d.insert("Store", "Depot", IdentKind::Class);
        d
    }

    #[test]
    fn json_shape_and_round_trip() {
        let d = sample();
        let json = d.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["forward"]["parentPath"], "progenitorRoute");
        assert_eq!(v["kinds"]["Store"], "class");
        assert_eq!(RenameDictionary::from_json(&json).unwrap(), d);
    }

    #[test]
    fn rejects_non_injective_or_reserved() {
        let mut d = sample();
        d.insert("other", "Depot", IdentKind::Variable);
        assert!(d.validate().is_err());
        let mut d = sample();
        d.insert("x", "class", IdentKind::Variable);
        assert!(d.validate().is_err());
    }

    #[test]
    fn inverse_undoes_forward() {
        let d = sample();
        let inv = d.inverse();
        for (k, v) in &d.forward {
            assert_eq!(inv.get(v), Some(k.as_str()));
        }
        assert_eq!(inv.inverse(), d);
    }

    #[test]
    fn renames_class_file_names() {
        let d = sample();
        assert_eq!(d.renamed_file_name("Store.java"), "Depot.java");
        assert_eq!(d.renamed_file_name("parentPath.java"), "parentPath.java");
        assert_eq!(d.renamed_file_name("Other.java"), "Other.java");
    }
}
