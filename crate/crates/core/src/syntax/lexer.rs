//! Tokenizer for the Java subset.
//!
//! Comments are not tokens: each token carries the comments that appear
//! between it and the previous token, so the parser can attach them to the
//! statement or member that follows.

use std::fmt;
use std::sync::Arc;

use super::ast::Comment;
use super::error::SyntaxError;
use crate::span::Span;

/// Reserved words of the language, including literals and unused keywords.
pub const RESERVED_WORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally", "float",
    "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws", "transient", "try",
    "void", "volatile", "while", "true", "false", "null", "var", "record", "yield", "sealed",
    "permits", "_",
];

/// Words that cannot appear as identifiers in the subset. `var` and the other
/// contextual words are excluded; the parser treats them specially.
pub fn is_keyword(word: &str) -> bool {
    matches!(
        word,
        "abstract" | "assert" | "boolean" | "break" | "byte" | "case" | "catch" | "char"
            | "class" | "const" | "continue" | "default" | "do" | "double" | "else" | "enum"
            | "extends" | "final" | "finally" | "float" | "for" | "goto" | "if" | "implements"
            | "import" | "instanceof" | "int" | "interface" | "long" | "native" | "new"
            | "package" | "private" | "protected" | "public" | "return" | "short" | "static"
            | "strictfp" | "super" | "switch" | "synchronized" | "this" | "throw" | "throws"
            | "transient" | "try" | "void" | "volatile" | "while" | "true" | "false" | "null"
    )
}

pub fn is_reserved(word: &str) -> bool {
    RESERVED_WORDS.contains(&word)
}

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    Ident(String),
    Keyword(&'static str),
    /// Integer literal; `long` is set for an `L` suffix. The value is kept wide
    /// so the parser can range-check it in context.
    Int { value: u64, long: bool },
    Str(String),
    Char,
    Float,
    Punct(&'static str),
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Keyword(k) => write!(f, "`{k}`"),
            TokenKind::Int { value, .. } => write!(f, "integer `{value}`"),
            TokenKind::Str(_) => f.write_str("string literal"),
            TokenKind::Char => f.write_str("character literal"),
            TokenKind::Float => f.write_str("floating-point literal"),
            TokenKind::Punct(p) => write!(f, "`{p}`"),
            TokenKind::Eof => f.write_str("end of file"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
    /// Byte range in the source text.
    pub range: std::ops::Range<usize>,
    pub comments_before: Vec<Comment>,
}

// Longest first so greedy matching works.
const PUNCTUATION: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "(", ")", "{", "}", "[",
    "]", ";", ",", ".", "?", ":", "=", "<", ">", "+", "-", "*", "/", "%", "!", "&", "|", "^",
    "~", "@",
];

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: u32,
    col: u32,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.text[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn position(&self) -> (u32, u32) {
        (self.line, self.col)
    }
}

/// Tokenize `text`. The final token is always `Eof`, carrying any trailing comments.
pub fn tokenize(text: &str, file: &Arc<str>) -> Result<Vec<Token>, SyntaxError> {
    let mut cur = Cursor {
        text,
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut tokens = Vec::new();
    let mut comments = Vec::new();
    let span_from = |start: (u32, u32), end: (u32, u32)| Span::new(file.clone(), start, end);

    loop {
        // whitespace and comments
        loop {
            match cur.peek() {
                Some(c) if c.is_whitespace() => {
                    cur.bump();
                }
                Some('/') if cur.peek_at(1) == Some('/') => {
                    let start = cur.position();
                    let begin = cur.pos;
                    while let Some(c) = cur.peek() {
                        if c == '\n' {
                            break;
                        }
                        cur.bump();
                    }
                    let body = text[begin..cur.pos].trim_end_matches('\r').to_string();
                    comments.push(Comment {
                        text: body,
                        span: span_from(start, cur.position()),
                    });
                }
                Some('/') if cur.peek_at(1) == Some('*') => {
                    let start = cur.position();
                    let begin = cur.pos;
                    cur.bump();
                    cur.bump();
                    loop {
                        if cur.rest().starts_with("*/") {
                            cur.bump();
                            cur.bump();
                            break;
                        }
                        if cur.bump().is_none() {
                            return Err(SyntaxError::new(
                                span_from(start, cur.position()),
                                "unterminated block comment",
                            ));
                        }
                    }
                    comments.push(Comment {
                        text: text[begin..cur.pos].to_string(),
                        span: span_from(start, cur.position()),
                    });
                }
                _ => break,
            }
        }

        let start = cur.position();
        let begin = cur.pos;
        let Some(c) = cur.peek() else {
            tokens.push(Token {
                kind: TokenKind::Eof,
                span: span_from(start, start),
                range: begin..begin,
                comments_before: std::mem::take(&mut comments),
            });
            return Ok(tokens);
        };

        let kind = if c.is_alphabetic() || c == '_' || c == '$' {
            while matches!(cur.peek(), Some(c) if c.is_alphanumeric() || c == '_' || c == '$') {
                cur.bump();
            }
            let word = &text[begin..cur.pos];
            match RESERVED_WORDS.iter().find(|k| **k == word) {
                Some(k) if is_keyword(k) => TokenKind::Keyword(k),
                _ => TokenKind::Ident(word.to_string()),
            }
        } else if c.is_ascii_digit() || (c == '.' && cur.peek_at(1).is_some_and(|d| d.is_ascii_digit())) {
            lex_number(&mut cur, file, start)?
        } else if c == '"' {
            lex_string(&mut cur, file, start)?
        } else if c == '\'' {
            cur.bump();
            loop {
                match cur.bump() {
                    Some('\\') => {
                        cur.bump();
                    }
                    Some('\'') => break,
                    Some('\n') | None => {
                        return Err(SyntaxError::new(
                            span_from(start, cur.position()),
                            "unterminated character literal",
                        ))
                    }
                    Some(_) => {}
                }
            }
            TokenKind::Char
        } else if let Some(p) = PUNCTUATION.iter().find(|p| cur.rest().starts_with(**p)) {
            for _ in 0..p.len() {
                cur.bump();
            }
            TokenKind::Punct(p)
        } else {
            cur.bump();
            return Err(SyntaxError::new(
                span_from(start, cur.position()),
                format!("unexpected character {c:?}"),
            ));
        };

        tokens.push(Token {
            kind,
            span: span_from(start, cur.position()),
            range: begin..cur.pos,
            comments_before: std::mem::take(&mut comments),
        });
    }
}

fn lex_number(cur: &mut Cursor<'_>, file: &Arc<str>, start: (u32, u32)) -> Result<TokenKind, SyntaxError> {
    let begin = cur.pos;
    let err = |cur: &Cursor<'_>, msg: &str| SyntaxError::new(Span::new(file.clone(), start, cur.position()), msg);

    let hex = cur.rest().starts_with("0x") || cur.rest().starts_with("0X");
    if hex {
        cur.bump();
        cur.bump();
        while matches!(cur.peek(), Some(c) if c.is_ascii_hexdigit() || c == '_') {
            cur.bump();
        }
    } else {
        while matches!(cur.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '.') {
            // stop at a method call on a literal, e.g. `1.toString` is not Java anyway
            if cur.peek() == Some('.') && !cur.peek_at(1).is_some_and(|d| d.is_ascii_digit()) {
                break;
            }
            cur.bump();
        }
    }
    let raw = &cur.text[begin..cur.pos];
    let (digits, long) = match raw.strip_suffix(['l', 'L']) {
        Some(d) => (d, true),
        None => (raw, false),
    };
    if !hex && (digits.contains(['.', 'e', 'E']) || raw.ends_with(['f', 'F', 'd', 'D'])) {
        return Ok(TokenKind::Float);
    }
    if digits.contains('_') {
        return Err(err(cur, "underscores in numeric literals are not supported"));
    }
    let value = if hex {
        u64::from_str_radix(&digits[2..], 16).map_err(|_| err(cur, "malformed hexadecimal literal"))?
    } else {
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(err(cur, "octal literals are not supported"));
        }
        digits.parse::<u64>().map_err(|_| err(cur, "malformed integer literal"))?
    };
    Ok(TokenKind::Int { value, long })
}

fn lex_string(cur: &mut Cursor<'_>, file: &Arc<str>, start: (u32, u32)) -> Result<TokenKind, SyntaxError> {
    cur.bump();
    let mut value = String::new();
    loop {
        let Some(c) = cur.bump() else {
            return Err(SyntaxError::new(
                Span::new(file.clone(), start, cur.position()),
                "unterminated string literal",
            ));
        };
        match c {
            '"' => return Ok(TokenKind::Str(value)),
            '\n' => {
                return Err(SyntaxError::new(
                    Span::new(file.clone(), start, cur.position()),
                    "unterminated string literal",
                ))
            }
            '\\' => {
                let esc = cur.bump();
                match esc {
                    Some('n') => value.push('\n'),
                    Some('t') => value.push('\t'),
                    Some('r') => value.push('\r'),
                    Some('b') => value.push('\u{8}'),
                    Some('f') => value.push('\u{c}'),
                    Some('0') => value.push('\0'),
                    Some('"') => value.push('"'),
                    Some('\'') => value.push('\''),
                    Some('\\') => value.push('\\'),
                    Some('u') => {
                        while cur.peek() == Some('u') {
                            cur.bump();
                        }
                        let hex: String = (0..4).filter_map(|_| cur.bump()).collect();
                        let ch = u32::from_str_radix(&hex, 16)
                            .ok()
                            .and_then(char::from_u32)
                            .ok_or_else(|| {
                                SyntaxError::new(
                                    Span::new(file.clone(), start, cur.position()),
                                    "malformed unicode escape",
                                )
                            })?;
                        value.push(ch);
                    }
                    _ => {
                        return Err(SyntaxError::new(
                            Span::new(file.clone(), start, cur.position()),
                            "unknown escape sequence",
                        ))
                    }
                }
            }
            c => value.push(c),
        }
    }
}

/// Byte ranges of identifier tokens in `text`, skipping comments, string and
/// character literals. Never fails: unterminated literals or comments simply
/// run to the end of the text.
pub fn identifier_ranges(text: &str) -> Vec<std::ops::Range<usize>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let rest = &text[i..];
        let c = rest.chars().next().unwrap();
        if rest.starts_with("//") {
            i += rest.find('\n').unwrap_or(rest.len());
        } else if rest.starts_with("/*") {
            i += rest[2..].find("*/").map(|p| p + 4).unwrap_or(rest.len());
        } else if c == '"' || c == '\'' {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j] != c as u8 && bytes[j] != b'\n' {
                if bytes[j] == b'\\' {
                    j += 1;
                }
                j += 1;
            }
            i = (j + 1).min(text.len());
        } else if c.is_alphabetic() || c == '_' || c == '$' {
            let len = rest
                .char_indices()
                .find(|(_, c)| !(c.is_alphanumeric() || *c == '_' || *c == '$'))
                .map(|(p, _)| p)
                .unwrap_or(rest.len());
            if !is_keyword(&rest[..len]) {
                out.push(i..i + len);
            }
            i += len;
        } else if c.is_ascii_digit() {
            let len = rest
                .char_indices()
                .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
                .map(|(p, _)| p)
                .unwrap_or(rest.len());
            i += len;
        } else {
            i += c.len_utf8();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src, &Arc::from("t.java"))
            .unwrap()
            .into_iter()
            .map(|t| t.kind)
            .collect()
    }

    #[test]
    fn greedy_punctuation() {
        assert_eq!(
            kinds("a>=b&&!c"),
            vec![
                TokenKind::Ident("a".into()),
                TokenKind::Punct(">="),
                TokenKind::Ident("b".into()),
                TokenKind::Punct("&&"),
                TokenKind::Punct("!"),
                TokenKind::Ident("c".into()),
                TokenKind::Eof
            ]
        );
    }

    #[test]
    fn comments_ride_on_next_token() {
        let toks = tokenize("a /* x */ // y\n b", &Arc::from("t")).unwrap();
        assert_eq!(toks[1].comments_before.len(), 2);
        assert_eq!(toks[1].comments_before[0].text, "/* x */");
        assert_eq!(toks[1].comments_before[1].text, "// y");
    }

    #[test]
    fn numbers_and_strings() {
        assert_eq!(kinds("0x1F")[0], TokenKind::Int { value: 31, long: false });
        assert_eq!(kinds("7L")[0], TokenKind::Int { value: 7, long: true });
        assert_eq!(kinds("1.5")[0], TokenKind::Float);
        assert_eq!(kinds(r#""a\"b\n""#)[0], TokenKind::Str("a\"b\n".into()));
        assert!(tokenize("\"open", &Arc::from("t")).is_err());
        assert!(tokenize("010", &Arc::from("t")).is_err());
    }

    #[test]
    fn spans_are_one_based() {
        let toks = tokenize("\n  foo", &Arc::from("t")).unwrap();
        assert_eq!(toks[0].span.start(), (2, 3));
        assert_eq!(toks[0].span.end(), (2, 6));
    }

    #[test]
    fn identifier_ranges_skip_literals() {
        let text = r#"a.b("c d") /* e */ // f
g"#;
        let names: Vec<_> = identifier_ranges(text).into_iter().map(|r| &text[r]).collect();
        assert_eq!(names, ["a", "b", "g"]);
    }
}
