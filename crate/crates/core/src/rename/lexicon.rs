use std::collections::BTreeMap;
use std::path::Path;

use super::RenameError;

const BUNDLED: &str = include_str!("../../data/lexicon.tsv");

/// Word-level synonym table, best candidate first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SynonymLexicon {
    words: BTreeMap<String, Vec<String>>,
}

fn is_word(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_lowercase())
        && s.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

impl SynonymLexicon {
    /// Parses `word<TAB>syn,syn,...` lines. Blank lines and `#` comments are
    /// skipped.
    pub fn from_tsv(text: &str) -> Result<Self, RenameError> {
        let mut words = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| RenameError::Lexicon { line: i + 1, message };
            let (word, syns) = line
                .split_once('\t')
                .ok_or_else(|| bad("expected word<TAB>synonyms".into()))?;
            let word = word.trim();
            let syns: Vec<String> = syns
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            if !is_word(word) {
                return Err(bad(format!("{word:?} is not a lowercase word")));
            }
            if let Some(s) = syns.iter().find(|s| !is_word(s)) {
                return Err(bad(format!("synonym {s:?} is not a lowercase word")));
            }
            if syns.is_empty() {
                return Err(bad(format!("{word:?} has no synonyms")));
            }
            if syns[0] == word {
                return Err(bad(format!("{word:?} lists itself as first synonym")));
            }
            if words.insert(word.to_string(), syns).is_some() {
                return Err(bad(format!("{word:?} listed twice")));
            }
        }
        Ok(SynonymLexicon { words })
    }

    pub fn bundled() -> Self {
        Self::from_tsv(BUNDLED).expect("bundled lexicon is valid")
    }

    pub fn load(path: &Path) -> Result<Self, RenameError> {
        let text = std::fs::read_to_string(path).map_err(|e| RenameError::Lexicon {
            line: 0,
            message: format!("{}: {e}", path.display()),
        })?;
        Self::from_tsv(&text)
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a [&'a str])>) -> Self {
        SynonymLexicon {
            words: pairs
                .into_iter()
                .map(|(w, s)| (w.to_string(), s.iter().map(|x| x.to_string()).collect()))
                .collect(),
        }
    }

    pub fn synonyms(&self, word: &str) -> Option<&[String]> {
        self.words.get(word).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// One candidate list per token; unknown tokens yield themselves.
pub fn propose_synonyms<S: AsRef<str>>(tokens: &[S], lexicon: &SynonymLexicon) -> Vec<Vec<String>> {
    tokens
        .iter()
        .map(|t| match lexicon.synonyms(t.as_ref()) {
            Some(syns) => syns.to_vec(),
            None => vec![t.as_ref().to_string()],
        })
        .collect()
}
