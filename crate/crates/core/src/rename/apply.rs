use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{RenameDictionary, RenameError};
use crate::ident::{collect_identifiers, StdlibIndex};
use crate::span::{LineIndex, Span};
use crate::syntax::lexer::identifier_ranges;
use crate::syntax::visit::{walk_file_mut, VisitorMut};
use crate::syntax::{Ident, SourceFile};

/// Every project site to rename, with its new text. Fails if a dictionary key
/// has no project site.
pub fn rename_sites(
    files: &[SourceFile],
    dict: &RenameDictionary,
    stdlib: &StdlibIndex,
) -> Result<HashMap<Span, String>, RenameError> {
    let table = collect_identifiers(files, None, stdlib);
    let mut sites = HashMap::new();
    for (orig, new) in &dict.forward {
        let mut found = false;
        for entry in table.project_entries().filter(|e| &e.name == orig) {
            for site in entry.sites() {
                found = true;
                sites.insert(site.clone(), new.clone());
            }
        }
        if !found {
            return Err(RenameError::StaleDictionary(orig.clone()));
        }
    }
    Ok(sites)
}

struct Renamer<'a> {
    sites: &'a HashMap<Span, String>,
}

impl VisitorMut for Renamer<'_> {
    fn visit_ident(&mut self, ident: &mut Ident) {
        if let Some(new) = self.sites.get(&ident.span) {
            ident.name = new.clone();
        }
    }
}

/// Renames every project-origin site of each dictionary key across the
/// project. Library names are never touched because their sites are not
/// project-origin.
pub fn apply_rename(
    files: &[SourceFile],
    dict: &RenameDictionary,
    stdlib: &StdlibIndex,
) -> Result<Vec<SourceFile>, RenameError> {
    let sites = rename_sites(files, dict, stdlib)?;
    let mut renamer = Renamer { sites: &sites };
    Ok(files
        .iter()
        .map(|f| {
            let mut f = f.clone();
            walk_file_mut(&mut renamer, &mut f);
            f
        })
        .collect())
}

/// Replaces the identifier at each span of `sites` that lies in `text`,
/// leaving all other bytes as they are.
pub fn rename_text(text: &str, file: &Arc<str>, sites: &HashMap<Span, String>) -> String {
    let index = LineIndex::new(text);
    let mut edits: BTreeMap<usize, (usize, &str)> = BTreeMap::new();
    for (span, new) in sites {
        if &span.file != file {
            continue;
        }
        if let Some(r) = index.byte_range(span) {
            edits.insert(r.start, (r.end, new));
        }
    }
    let mut out = String::with_capacity(text.len());
    let mut pos = 0;
    for (start, (end, new)) in edits {
        out.push_str(&text[pos..start]);
        out.push_str(new);
        pos = end;
    }
    out.push_str(&text[pos..]);
    out
}

/// Layout-preserving rename: `texts[i]` is the source `files[i]` was parsed
/// from. Comments and whitespace survive byte for byte.
pub fn apply_rename_text(
    files: &[SourceFile],
    texts: &[&str],
    dict: &RenameDictionary,
    stdlib: &StdlibIndex,
) -> Result<Vec<String>, RenameError> {
    let sites = rename_sites(files, dict, stdlib)?;
    Ok(files
        .iter()
        .zip(texts)
        .map(|(f, t)| rename_text(t, &f.path, &sites))
        .collect())
}

/// Maps renamed identifiers in a patch back to their original names. Only
/// identifier tokens are touched; strings, comments and other text pass
/// through unchanged. The patch does not need to parse.
pub fn recover_patch(patch_text: &str, dict: &RenameDictionary) -> String {
    let backward = dict.backward();
    let mut out = String::with_capacity(patch_text.len());
    let mut pos = 0;
    for r in identifier_ranges(patch_text) {
        if let Some(orig) = backward.get(&patch_text[r.clone()]) {
            out.push_str(&patch_text[pos..r.start]);
            out.push_str(orig);
            pos = r.end;
        }
    }
    out.push_str(&patch_text[pos..]);
    out
}
