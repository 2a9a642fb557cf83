//! The plain-text input format.
//!
//! ```text
//! # comment
//! [group E]
//! degree = 8
//! gen i (1 2 3 4)(5 6 7 8)
//! ```
//!
//! A section is a header `[kind name]` followed by entries. An entry is
//! `key = value` or `key value`; repeatable keys (`gen`, `image`, ...)
//! are printed in the second form.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A message addressed to a 1-based line and column of the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl Diagnostic {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Diagnostic {
        Diagnostic {
            line,
            col,
            msg: msg.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Group,
    Subgroup,
    Extension,
    Hom,
    Module,
    Section,
    Field,
    Aut,
    Curve,
    Datum,
    Braid,
}

impl Kind {
    pub const ALL: [Kind; 11] = [
        Kind::Group,
        Kind::Subgroup,
        Kind::Extension,
        Kind::Hom,
        Kind::Module,
        Kind::Section,
        Kind::Field,
        Kind::Aut,
        Kind::Curve,
        Kind::Datum,
        Kind::Braid,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::Subgroup => "subgroup",
            Kind::Extension => "extension",
            Kind::Hom => "hom",
            Kind::Module => "module",
            Kind::Section => "section",
            Kind::Field => "field",
            Kind::Aut => "aut",
            Kind::Curve => "curve",
            Kind::Datum => "datum",
            Kind::Braid => "braid",
        }
    }

    /// `(key, repeatable)` pairs accepted in a section of this kind.
    fn keys(self) -> &'static [(&'static str, bool)] {
        match self {
            Kind::Group => &[("degree", false), ("gen", true)],
            Kind::Subgroup => &[("parent", false), ("gen", true)],
            Kind::Extension => &[("E", false), ("P", false), ("H", false), ("R", false)],
            Kind::Hom => &[("source", false), ("target", false), ("image", true)],
            Kind::Module => &[("acting", false), ("coefficients", false), ("act", true)],
            Kind::Section => &[("extension", false), ("element", true)],
            Kind::Field => &[("conductor", false), ("kummer", false)],
            Kind::Aut => &[("field", false), ("zeta", false), ("t", false)],
            Kind::Curve => &[
                ("field", false),
                ("a", false),
                ("b", false),
                ("n", false),
                ("q", false),
                ("root", true),
                ("conj", false),
            ],
            Kind::Datum => &[("curve", false), ("group", false), ("map", true)],
            Kind::Braid => &[("strands", false), ("word", false)],
        }
    }

    fn repeatable(self, key: &str) -> Option<bool> {
        self.keys().iter().find(|(k, _)| *k == key).map(|(_, r)| *r)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = ();

    fn from_str(s: &str) -> Result<Kind, ()> {
        Kind::ALL.into_iter().find(|k| k.as_str() == s).ok_or(())
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
    /// Column of the first character of `value`.
    pub col: usize,
}

impl Entry {
    pub fn diag(&self, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::new(self.line, self.col, msg)
    }

    /// Diagnostic at byte offset `offset` of the value (ASCII inputs).
    pub fn diag_at(&self, offset: usize, msg: impl Into<String>) -> Diagnostic {
        let chars = self
            .value
            .get(..offset)
            .map_or(offset, |s| s.chars().count());
        Diagnostic::new(self.line, self.col + chars, msg)
    }
}

#[derive(Clone, Debug)]
pub struct Section {
    pub kind: Kind,
    pub name: String,
    pub line: usize,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.key == key)
    }

    pub fn require(&self, key: &str) -> Result<&Entry, Diagnostic> {
        self.get(key).ok_or_else(|| {
            self.diag(format!(
                "{} {} is missing the key '{key}'",
                self.kind, self.name
            ))
        })
    }

    pub fn diag(&self, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::new(self.line, 1, msg)
    }
}

/// Sections in input order. Equality ignores positions.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub sections: Vec<Section>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Document) -> bool {
        self.sections.len() == other.sections.len()
            && self.sections.iter().zip(&other.sections).all(|(a, b)| {
                a.kind == b.kind
                    && a.name == b.name
                    && a.entries.len() == b.entries.len()
                    && a.entries
                        .iter()
                        .zip(&b.entries)
                        .all(|(x, y)| x.key == y.key && x.value == y.value)
            })
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || "_'".contains(c))
}

fn col_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

impl Document {
    /// Syntax only: headers, keys, duplicate names and keys.
    pub fn parse_syntax(text: &str) -> Result<Document, Diagnostic> {
        let mut doc = Document::default();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = match raw.find('#') {
                Some(k) => &raw[..k],
                None => raw,
            };
            let trimmed = line.trim_start();
            if trimmed.trim_end().is_empty() {
                continue;
            }
            let start = line.len() - trimmed.len();
            if let Some(body) = trimmed.strip_prefix('[') {
                let close = body.find(']').ok_or_else(|| {
                    Diagnostic::new(ln, col_of(line, start), "unclosed section header")
                })?;
                if !body[close + 1..].trim().is_empty() {
                    return Err(Diagnostic::new(
                        ln,
                        col_of(line, start + close + 2),
                        "text after section header",
                    ));
                }
                let inner = &body[..close];
                let mut words = inner.split_whitespace();
                let (Some(kind), Some(name), None) = (words.next(), words.next(), words.next())
                else {
                    return Err(Diagnostic::new(
                        ln,
                        col_of(line, start),
                        "expected [kind name]",
                    ));
                };
                let kind_col = col_of(line, start + 1 + inner.find(kind).unwrap_or(0));
                let kind: Kind = kind.parse().map_err(|_| {
                    let known: Vec<&str> = Kind::ALL.iter().map(|k| k.as_str()).collect();
                    Diagnostic::new(
                        ln,
                        kind_col,
                        format!(
                            "unknown section kind '{kind}' (expected one of {})",
                            known.join(", ")
                        ),
                    )
                })?;
                if !valid_name(name) {
                    return Err(Diagnostic::new(
                        ln,
                        kind_col,
                        format!("invalid section name '{name}'"),
                    ));
                }
                if let Some(prev) = doc.sections.iter().find(|s| s.name == name) {
                    return Err(Diagnostic::new(
                        ln,
                        kind_col,
                        format!(
                            "duplicate name '{name}' (first defined on line {})",
                            prev.line
                        ),
                    ));
                }
                doc.sections.push(Section {
                    kind,
                    name: name.to_string(),
                    line: ln,
                    entries: Vec::new(),
                });
                continue;
            }
            let Some(section) = doc.sections.last_mut() else {
                return Err(Diagnostic::new(
                    ln,
                    col_of(line, start),
                    "entry before the first section header",
                ));
            };
            let key_len = trimmed
                .find(|c: char| c.is_whitespace() || c == '=')
                .unwrap_or(trimmed.len());
            let key = &trimmed[..key_len];
            let key_col = col_of(line, start);
            let Some(repeatable) = section.kind.repeatable(key) else {
                return Err(Diagnostic::new(
                    ln,
                    key_col,
                    format!("unknown key '{key}' in a {} section", section.kind),
                ));
            };
            if !repeatable && section.get(key).is_some() {
                return Err(Diagnostic::new(
                    ln,
                    key_col,
                    format!("key '{key}' given twice"),
                ));
            }
            let mut rest = &trimmed[key_len..];
            let lead = rest.len() - rest.trim_start().len();
            rest = rest.trim_start();
            let mut offset = key_len + lead;
            if let Some(r) = rest.strip_prefix('=') {
                let lead = r.len() - r.trim_start().len();
                offset += 1 + lead;
                rest = r.trim_start();
            }
            let value = rest.trim_end();
            if value.is_empty() {
                return Err(Diagnostic::new(
                    ln,
                    key_col,
                    format!("key '{key}' has no value"),
                ));
            }
            section.entries.push(Entry {
                key: key.to_string(),
                value: value.to_string(),
                line: ln,
                col: col_of(line, start + offset),
            });
        }
        Ok(doc)
    }

    pub fn of_kind(&self, kind: Kind) -> impl Iterator<Item = &Section> {
        self.sections.iter().filter(move |s| s.kind == kind)
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "[{} {}]", s.kind, s.name)?;
            for e in &s.entries {
                if s.kind.repeatable(&e.key) == Some(true) {
                    writeln!(f, "{} {}", e.key, e.value)?;
                } else {
                    writeln!(f, "{} = {}", e.key, e.value)?;
                }
            }
        }
        Ok(())
    }
}
