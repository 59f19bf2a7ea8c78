use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{Grammar, NtId, Sym};
use crate::error::{Error, Result};
use crate::symbol::Symbol;

fn split_rule(line: &str) -> Option<(&str, &str)> {
    line.split_once("->").or_else(|| line.split_once('→'))
}

/// Every token that appears on the left of `->` is a nonterminal; other
/// tokens are terminal symbol names. `ε` is the empty body.
pub(super) fn parse(text: &str, start: Option<&str>) -> Result<Grammar> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with("//"))
        .collect();
    let mut ids: BTreeMap<&str, NtId> = BTreeMap::new();
    let mut order = Vec::new();
    if let Some(s) = start {
        ids.insert(s, 0);
        order.push(s);
    }
    for line in &lines {
        let (lhs, _) = split_rule(line).ok_or_else(|| Error::GrammarSyntax(format!("missing '->' in {line:?}")))?;
        let lhs = lhs.trim();
        if lhs.is_empty() || lhs.contains(char::is_whitespace) {
            return Err(Error::GrammarSyntax(format!("bad left-hand side {lhs:?}")));
        }
        if !ids.contains_key(lhs) {
            ids.insert(lhs, order.len());
            order.push(lhs);
        }
    }
    if order.is_empty() {
        return Err(Error::GrammarSyntax("no productions".into()));
    }
    let mut g = Grammar::new(BTreeSet::new());
    g.names[0] = order[0].to_string();
    for name in &order[1..] {
        g.add_nonterminal(Some(name));
    }
    for line in &lines {
        let (lhs, rhs) = split_rule(line).expect("checked above");
        let lhs = ids[lhs.trim()];
        if rhs.trim().is_empty() {
            continue;
        }
        for alt in rhs.split('|') {
            let mut body = Vec::new();
            for tok in alt.split_whitespace() {
                if tok == "ε" {
                    continue;
                }
                match ids.get(tok) {
                    Some(&n) => body.push(Sym::N(n)),
                    None => body.push(Sym::T(
                        Symbol::parse(tok).map_err(|_| Error::GrammarSyntax(format!("bad terminal {tok:?}")))?,
                    )),
                }
            }
            g.add_production(lhs, body);
        }
    }
    Ok(g)
}

pub(super) fn rendered_names(g: &Grammar) -> Vec<String> {
    let mut taken: HashSet<String> = g.terminals.iter().map(|t| t.name().to_string()).collect();
    taken.extend(["ε", "|", "->"].map(String::from));
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for n in &g.names {
        *counts.entry(n.as_str()).or_default() += 1;
    }
    let mut order: Vec<NtId> = (0..g.names.len()).collect();
    order.swap(0, g.start);
    let mut out = vec![String::new(); g.names.len()];
    for n in order {
        let base = &g.names[n];
        let valid = !base.is_empty() && !base.contains(char::is_whitespace) && !base.contains('|') && !base.contains("->");
        let mut name = if valid { base.clone() } else { format!("N{n}") };
        if counts.get(base.as_str()).copied().unwrap_or(0) > 1 || taken.contains(&name) {
            name = format!("{name}_{n}");
        }
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        out[n] = name;
    }
    out
}

pub(super) fn render(g: &Grammar) -> String {
    let names = rendered_names(g);
    let mut order: Vec<NtId> = (0..g.rules.len()).collect();
    order.swap(0, g.start);
    let mut out = String::new();
    for n in order {
        let alts: Vec<String> = g.rules[n]
            .iter()
            .map(|body| {
                if body.is_empty() {
                    "ε".to_string()
                } else {
                    body.iter()
                        .map(|s| match *s {
                            Sym::T(a) => a.name().to_string(),
                            Sym::N(m) => names[m].clone(),
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect();
        if alts.is_empty() && n != g.start {
            continue;
        }
        out.push_str(&names[n]);
        out.push_str(" ->");
        if !alts.is_empty() {
            out.push(' ');
            out.push_str(&alts.join(" | "));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Grammar::parse("S -> c S c | T\nT -> b T b | #1 #2").unwrap();
        let text = g.to_text();
        let h = Grammar::parse(&text).unwrap();
        assert_eq!(g.enumerate(8), h.enumerate(8));
    }

    #[test]
    fn nonterminal_names_avoid_terminals() {
        let mut g = Grammar::new(BTreeSet::new());
        g.names[0] = "a".into();
        g.add_production(0, vec![Sym::T(Symbol::new("a"))]);
        let text = g.to_text();
        let h = Grammar::parse(&text).unwrap();
        assert_eq!(h.enumerate(2), g.enumerate(2));
    }

    #[test]
    fn empty_language_round_trip() {
        let g = Grammar::parse("S ->").unwrap();
        assert!(g.is_empty());
        assert!(Grammar::parse(&g.to_text()).unwrap().is_empty());
    }

    #[test]
    fn syntax_errors() {
        assert!(Grammar::parse("S a b").is_err());
        assert!(Grammar::parse("").is_err());
        assert!(Grammar::parse("S -> a %").is_err());
    }
}
