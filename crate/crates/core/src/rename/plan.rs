use std::collections::{BTreeMap, BTreeSet};

use super::{propose_synonyms, RenameDictionary, RenameError, SynonymLexicon};
use crate::ident::{IdentKind, IdentifierShape, IdentifierTable, StdlibIndex};
use crate::span::Span;
use crate::syntax::lexer::is_reserved;

/// Outcome of reviewing one proposed rename.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReviewDecision {
    Accept,
    /// Use this name instead. It still goes through collision checks.
    Edit(String),
    /// Leave the identifier as it is.
    Skip,
}

pub trait ReviewHook {
    fn review(&mut self, original: &str, proposed: &str, kind: IdentKind) -> ReviewDecision;
}

impl<F: FnMut(&str, &str, IdentKind) -> ReviewDecision> ReviewHook for F {
    fn review(&mut self, original: &str, proposed: &str, kind: IdentKind) -> ReviewDecision {
        self(original, proposed, kind)
    }
}

/// Names a plan must steer clear of and names it must not touch.
#[derive(Clone, Debug, Default)]
pub struct PlanContext {
    /// A new name may not be any of these (besides the original itself).
    pub taken: BTreeSet<String>,
    /// Project names left untouched.
    pub frozen: BTreeSet<String>,
}

impl PlanContext {
    /// Built from the table of the whole project: every name that occurs in
    /// it and every library name is taken. Project methods that share a
    /// library method's name (likely overrides such as `toString`) and
    /// `main` are frozen.
    pub fn new(project_table: &IdentifierTable, stdlib: &StdlibIndex) -> Self {
        let mut taken: BTreeSet<String> = project_table.iter().map(|e| e.name.clone()).collect();
        taken.extend(stdlib.iter().map(str::to_string));
        let frozen = project_table
            .project_entries()
            .filter(|e| e.kind == IdentKind::Function && (e.name == "main" || stdlib.contains(&e.name)))
            .map(|e| e.name.clone())
            .collect();
        PlanContext { taken, frozen }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_alphabetic() || c == '_' || c == '$')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '$')
}

struct Picker<'a> {
    ctx: &'a PlanContext,
    assigned: BTreeSet<String>,
}

impl Picker<'_> {
    fn free(&self, original: &str, cand: &str) -> bool {
        if cand == original {
            return !self.assigned.contains(cand);
        }
        is_identifier(cand)
            && !is_reserved(cand)
            && !self.ctx.taken.contains(cand)
            && !self.assigned.contains(cand)
    }

    fn with_suffix(&self, original: &str, base: &str) -> Result<String, RenameError> {
        (2..100_000)
            .map(|n| format!("{base}{n}"))
            .find(|c| self.free(original, c))
            .ok_or_else(|| RenameError::ExhaustedCandidates(original.to_string()))
    }

    /// First-ranked synonyms, then the remaining synonyms of the last word,
    /// then a numeric suffix.
    fn pick(&self, original: &str, shape: &IdentifierShape, cands: &[Vec<String>]) -> Result<String, RenameError> {
        let mut words: Vec<String> = cands.iter().map(|c| c[0].clone()).collect();
        let primary = shape.restore(&words);
        if self.free(original, &primary) {
            return Ok(primary);
        }
        if let Some(last) = cands.last() {
            for alt in &last[1..] {
                *words.last_mut().expect("nonempty") = alt.clone();
                let cand = shape.restore(&words);
                if self.free(original, &cand) {
                    return Ok(cand);
                }
            }
        }
        self.with_suffix(original, &primary)
    }
}

/// Gives every project-origin, non-frozen name in `table` a new name built
/// from first-ranked synonyms. Names are processed in order of their first
/// declaration so collision suffixes are deterministic.
pub fn build_rename_plan(
    table: &IdentifierTable,
    lexicon: &SynonymLexicon,
    ctx: &PlanContext,
    mut review: Option<&mut dyn ReviewHook>,
) -> Result<RenameDictionary, RenameError> {
    let mut names: BTreeMap<&str, (Span, IdentKind)> = BTreeMap::new();
    for e in table.project_entries() {
        let first = e.decl_sites.iter().min().expect("project entry has a declaration").clone();
        let slot = names.entry(&e.name).or_insert((first.clone(), e.kind));
        if first < slot.0 {
            *slot = (first, e.kind);
        }
    }
    let mut order: Vec<(&str, Span, IdentKind)> = names.into_iter().map(|(n, (s, k))| (n, s, k)).collect();
    order.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(b.0)));

    let mut picker = Picker {
        ctx,
        assigned: BTreeSet::new(),
    };
    let mut dict = RenameDictionary::new();
    for (name, _, kind) in order {
        if ctx.frozen.contains(name) {
            continue;
        }
        let shape = IdentifierShape::of(name);
        let cands = propose_synonyms(&shape.words(), lexicon);
        let mut new = if cands.is_empty() {
            name.to_string()
        } else {
            picker.pick(name, &shape, &cands)?
        };
        if let Some(hook) = review.as_deref_mut() {
            match hook.review(name, &new, kind) {
                ReviewDecision::Accept => {}
                ReviewDecision::Skip => continue,
                ReviewDecision::Edit(edited) => {
                    new = if picker.free(name, &edited) {
                        edited
                    } else {
                        picker.with_suffix(name, &edited)?
                    };
                }
            }
        }
        picker.assigned.insert(new.clone());
        dict.insert(name, &new, kind);
    }
    Ok(dict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ident::collect_identifiers;
    use crate::syntax::parse;

    fn plan_for(src: &str, lex: &SynonymLexicon) -> RenameDictionary {
        let files = vec![parse(src, "T.java").unwrap()];
        let stdlib = StdlibIndex::bundled();
        let table = collect_identifiers(&files, None, &stdlib);
        let ctx = PlanContext::new(&table, &stdlib);
        build_rename_plan(&table, lex, &ctx, None).unwrap()
    }

    #[test]
    fn first_ranked_synonyms_and_externals_untouched() {
        let lex = SynonymLexicon::from_pairs([("parent", &["progenitor"][..]), ("path", &["route"][..])]);
        let d = plan_for(
            "class T { boolean f(String parentPath) { return parentPath.startsWith(\"/\"); } }",
            &lex,
        );
        assert_eq!(d.get("parentPath"), Some("progenitorRoute"));
        assert_eq!(d.get("startsWith"), None);
        assert_eq!(d.get("String"), None);
    }

    #[test]
    fn collision_falls_back_to_suffix() {
        let lex = SynonymLexicon::from_pairs([("count", &["tally"][..]), ("number", &["tally"][..])]);
        let d = plan_for(
            "class T { int f() { int itemCount = 1; int itemNumber = 2; return itemCount + itemNumber; } }",
            &lex,
        );
        assert_eq!(d.get("itemCount"), Some("itemTally"));
        assert_eq!(d.get("itemNumber"), Some("itemTally2"));
    }

    #[test]
    fn collision_tries_next_synonym_of_last_word_first() {
        let lex = SynonymLexicon::from_pairs([("count", &["tally"][..]), ("number", &["tally", "figure"][..])]);
        let d = plan_for(
            "class T { int f() { int itemCount = 1; int itemNumber = 2; return itemCount + itemNumber; } }",
            &lex,
        );
        assert_eq!(d.get("itemNumber"), Some("itemFigure"));
    }

    #[test]
    fn avoids_existing_names_and_keywords() {
        let lex = SynonymLexicon::from_pairs([("old", &["new", "fresh"][..]), ("a", &["b"][..])]);
        let d = plan_for("class T { int f(int old, int a, int b) { return old + a + b; } }", &lex);
        assert_eq!(d.get("old"), Some("fresh"));
        // `b` already exists in the project
        assert_eq!(d.get("a"), Some("b2"));
        d.validate().unwrap();
    }

    #[test]
    fn overrides_and_main_are_frozen() {
        let lex = SynonymLexicon::bundled();
        let d = plan_for(
            "class T { public String toString() { return \"t\"; } public static void main(String args) { } }",
            &lex,
        );
        assert_eq!(d.get("toString"), None);
        assert_eq!(d.get("main"), None);
        assert!(d.get("args").is_some());
    }

    #[test]
    fn review_hook_can_edit_and_skip() {
        let lex = SynonymLexicon::from_pairs([("parent", &["progenitor"][..]), ("path", &["route"][..])]);
        let files = vec![parse("class T { int f(int parent, int path) { return parent + path; } }", "T.java").unwrap()];
        let stdlib = StdlibIndex::bundled();
        let table = collect_identifiers(&files, None, &stdlib);
        let ctx = PlanContext::new(&table, &stdlib);
        let mut seen = Vec::new();
        let mut hook = |orig: &str, proposed: &str, _kind: IdentKind| {
            seen.push((orig.to_string(), proposed.to_string()));
            match orig {
                "parent" => ReviewDecision::Edit("elder".into()),
                "path" => ReviewDecision::Skip,
                _ => ReviewDecision::Accept,
            }
        };
        let d = build_rename_plan(&table, &lex, &ctx, Some(&mut hook)).unwrap();
        assert_eq!(d.get("parent"), Some("elder"));
        assert_eq!(d.get("path"), None);
        assert!(seen.contains(&("parent".to_string(), "progenitor".to_string())));
    }
}
