//! Splitting identifiers into words and putting them back together.

use serde::{Deserialize, Serialize};

/// Naming convention of an identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `parentPath`
    Camel,
    /// `node_count`
    Snake,
    /// `FileService`
    Pascal,
    /// `MAX_SIZE`
    ScreamingSnake,
}

pub fn convention(name: &str) -> Convention {
    let core = name.trim_matches('_');
    let has_lower = core.chars().any(|c| c.is_lowercase());
    let letters = core.chars().filter(|c| c.is_alphabetic()).count();
    if !has_lower && letters >= 2 {
        Convention::ScreamingSnake
    } else if core.contains('_') {
        Convention::Snake
    } else if core.chars().next().is_some_and(|c| c.is_uppercase()) {
        Convention::Pascal
    } else {
        Convention::Camel
    }
}

/// Lowercase words of an identifier. Camel humps and underscores both split;
/// a run of two or more capitals stays together (`parseXMLHeader` gives
/// `parse`, `xml`, `header`); digits stick to the preceding word.
pub fn tokenize_identifier(name: &str) -> Vec<String> {
    IdentifierShape::of(name)
        .pieces
        .iter()
        .map(|p| p.to_lowercase())
        .collect()
}

/// Join words according to `convention`.
pub fn assemble_identifier<S: AsRef<str>>(tokens: &[S], convention: Convention) -> String {
    match convention {
        Convention::Camel => {
            let mut out = String::new();
            for (i, t) in tokens.iter().enumerate() {
                if i == 0 {
                    out.push_str(&t.as_ref().to_lowercase());
                } else {
                    out.push_str(&title_case(t.as_ref()));
                }
            }
            out
        }
        Convention::Pascal => tokens.iter().map(|t| title_case(t.as_ref())).collect(),
        Convention::Snake => tokens
            .iter()
            .map(|t| t.as_ref().to_lowercase())
            .collect::<Vec<_>>()
            .join("_"),
        Convention::ScreamingSnake => tokens
            .iter()
            .map(|t| t.as_ref().to_uppercase())
            .collect::<Vec<_>>()
            .join("_"),
    }
}

pub fn title_case(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars.flat_map(|c| c.to_lowercase())).collect(),
        None => String::new(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PieceCase {
    Lower,
    Title,
    Upper,
    Mixed,
}

fn piece_case(piece: &str) -> PieceCase {
    let mut chars = piece.chars();
    let first_upper = chars.next().is_some_and(|c| c.is_uppercase());
    let rest_upper = chars.clone().any(|c| c.is_uppercase());
    let any_lower = piece.chars().any(|c| c.is_lowercase());
    let letters = piece.chars().filter(|c| c.is_alphabetic()).count();
    if !first_upper && !rest_upper {
        PieceCase::Lower
    } else if !any_lower && letters >= 2 {
        PieceCase::Upper
    } else if first_upper && !rest_upper {
        PieceCase::Title
    } else {
        PieceCase::Mixed
    }
}

/// The exact layout of an identifier: its word pieces as written plus the
/// underscores around and between them. [`IdentifierShape::restore`] is an
/// exact inverse of tokenization for every identifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentifierShape {
    prefix: String,
    pieces: Vec<String>,
    /// `separators[i]` goes before `pieces[i + 1]`.
    separators: Vec<String>,
    suffix: String,
    convention: Convention,
}

impl IdentifierShape {
    pub fn of(name: &str) -> Self {
        let convention = convention(name);
        let trimmed_start = name.trim_start_matches('_');
        let prefix = name[..name.len() - trimmed_start.len()].to_string();
        let core = trimmed_start.trim_end_matches('_');
        let suffix = trimmed_start[core.len()..].to_string();

        let mut pieces = Vec::new();
        let mut separators = Vec::new();
        let mut pending_sep = String::new();
        let mut rest = core;
        while !rest.is_empty() {
            let seg_len = rest.find('_').unwrap_or(rest.len());
            let segment = &rest[..seg_len];
            for (i, piece) in split_humps(segment).into_iter().enumerate() {
                if !pieces.is_empty() {
                    separators.push(if i == 0 { std::mem::take(&mut pending_sep) } else { String::new() });
                }
                pieces.push(piece.to_string());
            }
            rest = &rest[seg_len..];
            let underscores = rest.len() - rest.trim_start_matches('_').len();
            pending_sep.push_str(&rest[..underscores]);
            rest = &rest[underscores..];
        }
        IdentifierShape {
            prefix,
            pieces,
            separators,
            suffix,
            convention,
        }
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn words(&self) -> Vec<String> {
        self.pieces.iter().map(|p| p.to_lowercase()).collect()
    }

    /// Rebuild an identifier from `words`, keeping this shape's layout.
    /// Words equal to the original (lowercased) piece are restored verbatim,
    /// so `restore(words())` reproduces the original name.
    pub fn restore<S: AsRef<str>>(&self, words: &[S]) -> String {
        if words.len() != self.pieces.len() {
            return format!(
                "{}{}{}",
                self.prefix,
                assemble_identifier(words, self.convention),
                self.suffix
            );
        }
        let mut out = self.prefix.clone();
        for (i, (word, piece)) in words.iter().zip(&self.pieces).enumerate() {
            let word = word.as_ref();
            if i > 0 {
                out.push_str(&self.separators[i - 1]);
            }
            if word == piece.to_lowercase() {
                out.push_str(piece);
                continue;
            }
            let styled = match piece_case(piece) {
                PieceCase::Lower => word.to_lowercase(),
                PieceCase::Title => title_case(word),
                PieceCase::Upper if self.convention == Convention::ScreamingSnake => word.to_uppercase(),
                PieceCase::Upper => title_case(word),
                PieceCase::Mixed if i == 0 => word.to_lowercase(),
                PieceCase::Mixed => title_case(word),
            };
            out.push_str(&styled);
        }
        out.push_str(&self.suffix);
        out
    }
}

fn split_humps(segment: &str) -> Vec<&str> {
    if !segment.chars().any(|c| c.is_lowercase()) {
        return vec![segment];
    }
    let chars: Vec<(usize, char)> = segment.char_indices().collect();
    let mut cuts = vec![0];
    for i in 1..chars.len() {
        let prev = chars[i - 1].1;
        let cur = chars[i].1;
        let next = chars.get(i + 1).map(|c| c.1);
        let lower_to_upper = (prev.is_lowercase() || prev.is_ascii_digit()) && cur.is_uppercase();
        let acronym_end = prev.is_uppercase() && cur.is_uppercase() && next.is_some_and(|n| n.is_lowercase());
        if lower_to_upper || acronym_end {
            cuts.push(chars[i].0);
        }
    }
    cuts.push(segment.len());
    cuts.windows(2).map(|w| &segment[w[0]..w[1]]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn splits_camel_snake_and_acronyms() {
        assert_eq!(tokenize_identifier("parentPath"), ["parent", "path"]);
        assert_eq!(tokenize_identifier("node_count"), ["node", "count"]);
        assert_eq!(tokenize_identifier("parseXMLHeader"), ["parse", "xml", "header"]);
        assert_eq!(tokenize_identifier("MAX_SIZE"), ["max", "size"]);
        assert_eq!(tokenize_identifier("base64Encode"), ["base64", "encode"]);
        assert_eq!(tokenize_identifier("HTTPServer"), ["http", "server"]);
    }

    #[test]
    fn assembles_by_convention() {
        assert_eq!(assemble_identifier(&["progenitor", "route"], Convention::Camel), "progenitorRoute");
        assert_eq!(assemble_identifier(&["node", "tally"], Convention::Snake), "node_tally");
        assert_eq!(assemble_identifier(&["file", "service"], Convention::Pascal), "FileService");
        assert_eq!(assemble_identifier(&["max", "size"], Convention::ScreamingSnake), "MAX_SIZE");
    }

    #[test]
    fn detects_convention() {
        assert_eq!(convention("parentPath"), Convention::Camel);
        assert_eq!(convention("node_count"), Convention::Snake);
        assert_eq!(convention("FileService"), Convention::Pascal);
        assert_eq!(convention("MAX_SIZE"), Convention::ScreamingSnake);
        assert_eq!(convention("i"), Convention::Camel);
    }

    #[test]
    fn restore_styles_replaced_words() {
        let shape = IdentifierShape::of("parseXMLHeader");
        assert_eq!(shape.restore(&["parse", "xml", "header"]), "parseXMLHeader");
        assert_eq!(shape.restore(&["analyze", "markup", "heading"]), "analyzeMarkupHeading");
        let shape = IdentifierShape::of("_MAX_SIZE");
        assert_eq!(shape.restore(&["max", "extent"]), "_MAX_EXTENT");
    }

    fn word() -> impl Strategy<Value = String> {
        // one-letter words make runs of capitals ambiguous
        "[a-z]{2}[a-z0-9]{0,5}".prop_map(|s| s)
    }

    proptest! {
        #[test]
        fn conventional_identifiers_reassemble(words in prop::collection::vec(word(), 1..4), conv in 0..4u8) {
            let conv = [Convention::Camel, Convention::Snake, Convention::Pascal, Convention::ScreamingSnake][conv as usize];
            let name = assemble_identifier(&words, conv);
            let tokens = tokenize_identifier(&name);
            prop_assert_eq!(assemble_identifier(&tokens, convention(&name)), name.clone());
        }

        #[test]
        fn shape_restore_is_exact(name in "[_$]?[A-Za-z][A-Za-z0-9_$]{0,12}") {
            let shape = IdentifierShape::of(&name);
            prop_assert_eq!(shape.restore(&shape.words()), name);
        }
    }
}
