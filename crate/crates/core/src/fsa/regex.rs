use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// Regular expression over interned symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegexExpr {
    Epsilon,
    Symbol(Symbol),
    Union(Box<RegexExpr>, Box<RegexExpr>),
    Concat(Box<RegexExpr>, Box<RegexExpr>),
    Star(Box<RegexExpr>),
    Reverse(Box<RegexExpr>),
}

impl RegexExpr {
    pub fn sym(name: &str) -> RegexExpr {
        RegexExpr::Symbol(Symbol::new(name))
    }

    pub fn word(symbols: &[Symbol]) -> RegexExpr {
        symbols
            .iter()
            .map(|&s| RegexExpr::Symbol(s))
            .reduce(RegexExpr::then)
            .unwrap_or(RegexExpr::Epsilon)
    }

    pub fn or(self, other: RegexExpr) -> RegexExpr {
        RegexExpr::Union(Box::new(self), Box::new(other))
    }

    pub fn then(self, other: RegexExpr) -> RegexExpr {
        RegexExpr::Concat(Box::new(self), Box::new(other))
    }

    pub fn star(self) -> RegexExpr {
        RegexExpr::Star(Box::new(self))
    }

    pub fn plus(self) -> RegexExpr {
        self.clone().then(self.star())
    }

    pub fn reverse(self) -> RegexExpr {
        RegexExpr::Reverse(Box::new(self))
    }

    /// Parses the textual syntax: symbol names separated by whitespace,
    /// `|`, postfix `*`, `+`, `?`, parentheses, `ε` (or `()`) and
    /// `rev(...)`.
    ///
    /// ```
    /// use wordhyp_core::fsa::{Nfa, RegexExpr};
    /// use wordhyp_core::symbol::parse_word;
    /// let e = RegexExpr::parse("c* b*").unwrap();
    /// let n = Nfa::from_regex(&e);
    /// assert!(n.accepts(&parse_word("c c b").unwrap()).unwrap());
    /// assert!(!n.accepts(&parse_word("b c").unwrap()).unwrap());
    /// ```
    pub fn parse(text: &str) -> Result<RegexExpr> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.union()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("unexpected token"));
        }
        Ok(e)
    }
}

impl fmt::Display for RegexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegexExpr::Epsilon => write!(f, "ε"),
            RegexExpr::Symbol(s) => write!(f, "{s}"),
            RegexExpr::Union(a, b) => write!(f, "({a} | {b})"),
            RegexExpr::Concat(a, b) => write!(f, "({a} {b})"),
            RegexExpr::Star(a) => write!(f, "({a})*"),
            RegexExpr::Reverse(a) => write!(f, "rev({a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Sym(Symbol),
    Eps,
    Rev,
    Bar,
    Star,
    Plus,
    Opt,
    Open,
    Close,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '#' | '@' | '~')
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        match c {
            c if c.is_whitespace() => {}
            'ε' => out.push((off, Tok::Eps)),
            '|' => out.push((off, Tok::Bar)),
            '*' => out.push((off, Tok::Star)),
            '+' => out.push((off, Tok::Plus)),
            '?' => out.push((off, Tok::Opt)),
            '(' => out.push((off, Tok::Open)),
            ')' => out.push((off, Tok::Close)),
            c if is_name_char(c) => {
                let start = i;
                while i + 1 < chars.len() && is_name_char(chars[i + 1].1) {
                    i += 1;
                }
                let end = chars.get(i + 1).map_or(text.len(), |&(o, _)| o);
                let name = &text[chars[start].0..end];
                let next = chars[i + 1..].iter().find(|(_, c)| !c.is_whitespace());
                if name == "rev" && matches!(next, Some((_, '('))) {
                    out.push((off, Tok::Rev));
                } else {
                    let sym = Symbol::parse(name).map_err(|_| Error::RegexSyntax {
                        offset: off,
                        message: format!("bad symbol {name:?}"),
                    })?;
                    out.push((off, Tok::Sym(sym)));
                }
            }
            other => {
                return Err(Error::RegexSyntax {
                    offset: off,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn error(&self, message: &str) -> Error {
        let offset = self.tokens.get(self.pos).map_or(usize::MAX, |(o, _)| *o);
        Error::RegexSyntax {
            offset,
            message: message.to_string(),
        }
    }

    fn union(&mut self) -> Result<RegexExpr> {
        let mut e = self.concat()?;
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            e = e.or(self.concat()?);
        }
        Ok(e)
    }

    fn concat(&mut self) -> Result<RegexExpr> {
        let mut parts = Vec::new();
        while matches!(
            self.peek(),
            Some(Tok::Sym(_) | Tok::Eps | Tok::Open | Tok::Rev)
        ) {
            parts.push(self.postfix()?);
        }
        Ok(parts
            .into_iter()
            .reduce(RegexExpr::then)
            .unwrap_or(RegexExpr::Epsilon))
    }

    fn postfix(&mut self) -> Result<RegexExpr> {
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => e = e.star(),
                Some(Tok::Plus) => e = e.plus(),
                Some(Tok::Opt) => e = e.or(RegexExpr::Epsilon),
                _ => return Ok(e),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<RegexExpr> {
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Sym(s)) => Ok(RegexExpr::Symbol(s)),
            Some(Tok::Eps) => Ok(RegexExpr::Epsilon),
            Some(Tok::Open) => {
                let e = self.union()?;
                self.expect_close()?;
                Ok(e)
            }
            Some(Tok::Rev) => {
                if self.peek() != Some(&Tok::Open) {
                    return Err(self.error("expected '(' after rev"));
                }
                self.pos += 1;
                let e = self.union()?;
                self.expect_close()?;
                Ok(e.reverse())
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected an expression"))
            }
        }
    }

    fn expect_close(&mut self) -> Result<()> {
        if self.peek() == Some(&Tok::Close) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error("expected ')'"))
        }
    }
}
