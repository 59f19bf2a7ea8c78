//! Interned alphabet symbols.
//!
//! A [`Symbol`] is a small copyable handle into a process-wide interner. The
//! textual name of a symbol also encodes its role:
//!
//! * `#1`, `#2`, ... are the reserved table markers, `#` (index 0) is the
//!   separator used for equality languages;
//! * `name@i` is `name` tagged as a letter of factor `i` of a free product;
//! * `name~i` is `name` renamed into the fresh copy alphabet of segment `i`
//!   of a shuffled word.
//!
//! Plain names are runs of ASCII alphanumerics, `_` and `'`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Word over interned symbols. The empty vector is ε.
pub type Word = Vec<Symbol>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u32);

/// Role of a symbol, derived from its name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Plain,
    /// Letter of factor `i` (`name@i`).
    Factor(u8),
    /// Reserved marker `#i`.
    Marker(u8),
    /// Segment copy `name~i` used by the shuffled-language renamings.
    Segment(u8),
}

struct Entry {
    name: Arc<str>,
    tag: Tag,
    base: Option<Symbol>,
}

#[derive(Default)]
struct Interner {
    entries: Vec<Entry>,
    ids: HashMap<Arc<str>, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

fn is_plain_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn classify(name: &str) -> Result<(Tag, Option<&str>)> {
    let bad = || Error::InvalidSymbol(name.to_string());
    if name.is_empty() {
        return Err(bad());
    }
    if let Some(rest) = name.strip_prefix('#') {
        if rest.is_empty() {
            return Ok((Tag::Marker(0), None));
        }
        let idx: u8 = rest.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        return Ok((Tag::Marker(idx), None));
    }
    if let Some(pos) = name.rfind(['@', '~']) {
        let (base, suffix) = name.split_at(pos);
        let idx: u8 = suffix[1..].parse().map_err(|_| bad())?;
        if base.is_empty() || base.starts_with('#') {
            return Err(bad());
        }
        let tag = if suffix.starts_with('@') {
            Tag::Factor(idx)
        } else {
            Tag::Segment(idx)
        };
        return Ok((tag, Some(base)));
    }
    if name.chars().all(is_plain_char) {
        Ok((Tag::Plain, None))
    } else {
        Err(bad())
    }
}

impl Symbol {
    /// Interns `name`, validating its syntax.
    pub fn parse(name: &str) -> Result<Symbol> {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Ok(Symbol(id));
        }
        let (tag, base) = classify(name)?;
        let base = match base {
            Some(b) => Some(Symbol::parse(b)?),
            None => None,
        };
        let mut guard = interner().write().unwrap();
        if let Some(&id) = guard.ids.get(name) {
            return Ok(Symbol(id));
        }
        let id = guard.entries.len() as u32;
        let name: Arc<str> = Arc::from(name);
        guard.entries.push(Entry {
            name: name.clone(),
            tag,
            base,
        });
        guard.ids.insert(name, id);
        Ok(Symbol(id))
    }

    /// Interns a name that is known to be well formed.
    ///
    /// Panics on malformed names; use [`Symbol::parse`] for user input.
    pub fn new(name: &str) -> Symbol {
        Symbol::parse(name).unwrap_or_else(|e| panic!("{e}"))
    }

    /// The reserved marker `#i`; index 0 is the bare separator `#`.
    pub fn marker(i: u8) -> Symbol {
        if i == 0 {
            Symbol::new("#")
        } else {
            Symbol::new(&format!("#{i}"))
        }
    }

    pub fn name(self) -> Arc<str> {
        interner().read().unwrap().entries[self.0 as usize].name.clone()
    }

    pub fn tag(self) -> Tag {
        interner().read().unwrap().entries[self.0 as usize].tag
    }

    pub fn is_marker(self) -> bool {
        matches!(self.tag(), Tag::Marker(_))
    }

    /// The untagged symbol this one was derived from, if any.
    pub fn base(self) -> Option<Symbol> {
        interner().read().unwrap().entries[self.0 as usize].base
    }

    /// Copy of this symbol tagged as a letter of factor `i`.
    pub fn in_factor(self, i: u8) -> Symbol {
        Symbol::new(&format!("{}@{i}", self.name()))
    }

    /// Copy of this symbol in the fresh alphabet of segment `i`.
    pub fn in_segment(self, i: u8) -> Symbol {
        Symbol::new(&format!("{}~{i}", self.name()))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Builds a set of symbols from names.
pub fn alphabet<'a>(names: impl IntoIterator<Item = &'a str>) -> BTreeSet<Symbol> {
    names.into_iter().map(Symbol::new).collect()
}

/// Parses a word written as whitespace-separated symbol names.
///
/// `ε` (or an empty string) denotes the empty word.
pub fn parse_word(text: &str) -> Result<Word> {
    text.split_whitespace()
        .filter(|t| *t != "ε")
        .map(Symbol::parse)
        .collect()
}

/// Parses a word, splitting tokens without whitespace greedily against
/// `alphabet` so that `"bcb"` reads as three letters when `b`, `c` are
/// declared.
pub fn parse_word_in(text: &str, alphabet: &BTreeSet<Symbol>) -> Result<Word> {
    let names: Vec<(Arc<str>, Symbol)> = alphabet.iter().map(|&s| (s.name(), s)).collect();
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        if token == "ε" {
            continue;
        }
        if let Ok(sym) = Symbol::parse(token) {
            if alphabet.contains(&sym) || sym.is_marker() {
                out.push(sym);
                continue;
            }
        }
        let mut rest = token;
        while !rest.is_empty() {
            let best = names
                .iter()
                .filter(|(n, _)| rest.starts_with(&**n))
                .max_by_key(|(n, _)| n.len());
            match best {
                Some((n, s)) => {
                    out.push(*s);
                    rest = &rest[n.len()..];
                }
                None => {
                    if let Some(m) = rest.strip_prefix('#') {
                        let digits = m.chars().take_while(|c| c.is_ascii_digit()).count();
                        out.push(Symbol::parse(&rest[..1 + digits])?);
                        rest = &m[digits..];
                    } else {
                        return Err(Error::UnknownSymbol(rest.to_string()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Formats a word as space-separated names; the empty word prints as `ε`.
pub fn format_word(w: &[Symbol]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    w.iter()
        .map(|s| s.name().to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Reversal of a word.
pub fn reversed(w: &[Symbol]) -> Word {
    w.iter().rev().copied().collect()
}

/// `u #1 v #2 w^rev`, the table word encoding the product `u · v = w`.
pub fn table_word(u: &[Symbol], v: &[Symbol], w: &[Symbol]) -> Word {
    let mut out = Vec::with_capacity(u.len() + v.len() + w.len() + 2);
    out.extend_from_slice(u);
    out.push(Symbol::marker(1));
    out.extend_from_slice(v);
    out.push(Symbol::marker(2));
    out.extend(w.iter().rev());
    out
}

/// Splits a table word `u #1 v #2 w^rev` back into `(u, v, w)`.
pub fn split_table_word(t: &[Symbol]) -> Option<(Word, Word, Word)> {
    let m1 = Symbol::marker(1);
    let m2 = Symbol::marker(2);
    let i = t.iter().position(|&s| s == m1)?;
    let j = t.iter().position(|&s| s == m2)?;
    if j < i
        || t.iter().filter(|&&s| s == m1).count() != 1
        || t.iter().filter(|&&s| s == m2).count() != 1
        || t.iter().any(|s| s.is_marker() && *s != m1 && *s != m2)
    {
        return None;
    }
    Some((t[..i].to_vec(), t[i + 1..j].to_vec(), reversed(&t[j + 1..])))
}
