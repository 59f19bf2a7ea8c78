use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::{format_word, Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Semigroup,
    Monoid,
    Group,
}

/// Canonical form of an element of a concrete algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalForm {
    /// Identity adjoined to a semigroup; the value of ε in semigroup kind.
    AdjoinedOne,
    /// Element of a finite Cayley table, by index.
    Element(usize),
    /// Freely reduced word (free monoid, free group) or a left-zero letter.
    Word(Word),
    /// `c^c b^b` in the bicyclic monoid.
    Bicyclic { c: usize, b: usize },
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::AdjoinedOne => write!(f, "1"),
            NormalForm::Element(i) => write!(f, "[{i}]"),
            NormalForm::Word(w) => write!(f, "{}", format_word(w)),
            NormalForm::Bicyclic { c, b } => write!(f, "c^{c} b^{b}"),
        }
    }
}

#[derive(Clone, Debug)]
enum Body {
    Cayley {
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        letters: BTreeMap<Symbol, usize>,
        identity: Option<usize>,
    },
    FreeMonoid,
    FreeGroup {
        inverse: BTreeMap<Symbol, Symbol>,
    },
    Bicyclic {
        b: Symbol,
        c: Symbol,
    },
    LeftZero,
    Trivial,
}

/// A semigroup, monoid or group with a decidable word problem, given as an
/// evaluator from words over its generators to normal forms.
#[derive(Clone, Debug)]
pub struct ConcreteAlgebra {
    kind: AlgebraKind,
    alphabet: BTreeSet<Symbol>,
    body: Body,
}

impl ConcreteAlgebra {
    /// Finite algebra from a Cayley table; `letters` maps generators to
    /// element indices. Associativity is checked exhaustively.
    pub fn cayley(
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        letters: BTreeMap<Symbol, usize>,
        kind: AlgebraKind,
    ) -> Result<ConcreteAlgebra> {
        let n = table.len();
        if n == 0 || names.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidAlgebra("Cayley table must be square over its element names".into()));
        }
        if letters.values().any(|&x| x >= n) {
            return Err(Error::InvalidAlgebra("generator mapped outside the table".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            c: names[c].clone(),
                        });
                    }
                }
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x));
        match kind {
            AlgebraKind::Semigroup => {}
            AlgebraKind::Monoid | AlgebraKind::Group => {
                let Some(e) = identity else {
                    return Err(Error::InvalidAlgebra("table has no identity element".into()));
                };
                if kind == AlgebraKind::Group && (0..n).any(|x| !(0..n).any(|y| table[x][y] == e)) {
                    return Err(Error::InvalidAlgebra("some element has no inverse".into()));
                }
            }
        }
        Ok(ConcreteAlgebra {
            kind,
            alphabet: letters.keys().copied().collect(),
            body: Body::Cayley {
                names,
                table,
                letters,
                identity: if kind == AlgebraKind::Semigroup { None } else { identity },
            },
        })
    }

    pub fn free_monoid(alphabet: BTreeSet<Symbol>) -> ConcreteAlgebra {
        ConcreteAlgebra {
            kind: AlgebraKind::Monoid,
            alphabet,
            body: Body::FreeMonoid,
        }
    }

    /// Free group on the first letters of `pairs`, each paired with its
    /// formal inverse letter.
    pub fn free_group(pairs: &[(Symbol, Symbol)]) -> ConcreteAlgebra {
        let mut inverse = BTreeMap::new();
        for &(x, y) in pairs {
            inverse.insert(x, y);
            inverse.insert(y, x);
        }
        ConcreteAlgebra {
            kind: AlgebraKind::Group,
            alphabet: inverse.keys().copied().collect(),
            body: Body::FreeGroup { inverse },
        }
    }

    /// `⟨b, c | bc = 1⟩`.
    pub fn bicyclic(b: Symbol, c: Symbol) -> ConcreteAlgebra {
        ConcreteAlgebra {
            kind: AlgebraKind::Monoid,
            alphabet: BTreeSet::from([b, c]),
            body: Body::Bicyclic { b, c },
        }
    }

    /// Left-zero semigroup on its letters: `uv = u`.
    pub fn left_zero(alphabet: BTreeSet<Symbol>) -> ConcreteAlgebra {
        ConcreteAlgebra {
            kind: AlgebraKind::Semigroup,
            alphabet,
            body: Body::LeftZero,
        }
    }

    /// One-element semigroup (or monoid) with every letter mapping to it.
    pub fn trivial(alphabet: BTreeSet<Symbol>, kind: AlgebraKind) -> ConcreteAlgebra {
        ConcreteAlgebra {
            kind,
            alphabet,
            body: Body::Trivial,
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    /// The same algebra regarded as a semigroup: ε evaluates to an adjoined
    /// identity, distinct from any identity the algebra already has.
    pub fn as_semigroup(&self) -> ConcreteAlgebra {
        let mut a = self.clone();
        a.kind = AlgebraKind::Semigroup;
        a
    }

    /// Identity element, for monoids and groups.
    pub fn identity(&self) -> Option<NormalForm> {
        if self.kind == AlgebraKind::Semigroup {
            return None;
        }
        Some(match &self.body {
            Body::Cayley { identity, .. } => NormalForm::Element(identity.expect("checked at construction")),
            Body::FreeMonoid | Body::FreeGroup { .. } => NormalForm::Word(Vec::new()),
            Body::Bicyclic { .. } => NormalForm::Bicyclic { c: 0, b: 0 },
            Body::LeftZero => return None,
            Body::Trivial => NormalForm::Element(0),
        })
    }

    /// Whether `x` is the identity (the adjoined one counts in semigroup kind).
    pub fn is_identity(&self, x: &NormalForm) -> bool {
        *x == NormalForm::AdjoinedOne || self.identity().as_ref() == Some(x)
    }

    /// Image of a single generator.
    pub fn letter(&self, a: Symbol) -> Result<NormalForm> {
        if !self.alphabet.contains(&a) {
            return Err(Error::RejectedInput {
                symbol: a,
                context: "algebra",
            });
        }
        Ok(match &self.body {
            Body::Cayley { letters, .. } => NormalForm::Element(letters[&a]),
            Body::FreeMonoid | Body::FreeGroup { .. } | Body::LeftZero => NormalForm::Word(vec![a]),
            Body::Bicyclic { b, .. } => {
                if a == *b {
                    NormalForm::Bicyclic { c: 0, b: 1 }
                } else {
                    NormalForm::Bicyclic { c: 1, b: 0 }
                }
            }
            Body::Trivial => NormalForm::Element(0),
        })
    }

    pub fn multiply(&self, x: &NormalForm, y: &NormalForm) -> NormalForm {
        use NormalForm as F;
        match (x, y) {
            (F::AdjoinedOne, _) => return y.clone(),
            (_, F::AdjoinedOne) => return x.clone(),
            _ => {}
        }
        match (&self.body, x, y) {
            (Body::Cayley { table, .. }, F::Element(i), F::Element(j)) => F::Element(table[*i][*j]),
            (Body::FreeMonoid, F::Word(u), F::Word(v)) => F::Word([u.as_slice(), v].concat()),
            (Body::FreeGroup { inverse }, F::Word(u), F::Word(v)) => {
                let mut out = u.clone();
                for &a in v {
                    if out.last() == Some(&inverse[&a]) {
                        out.pop();
                    } else {
                        out.push(a);
                    }
                }
                F::Word(out)
            }
            (Body::Bicyclic { .. }, F::Bicyclic { c: i, b: j }, F::Bicyclic { c: k, b: l }) => {
                if j >= k {
                    F::Bicyclic { c: *i, b: j - k + l }
                } else {
                    F::Bicyclic { c: i + k - j, b: *l }
                }
            }
            (Body::LeftZero, F::Word(_), _) => x.clone(),
            (Body::Trivial, _, _) => F::Element(0),
            _ => panic!("normal forms do not belong to this algebra"),
        }
    }

    /// Value of a word; ε gives the identity, or the adjoined one in
    /// semigroup kind.
    pub fn eval(&self, w: &[Symbol]) -> Result<NormalForm> {
        let mut acc = match self.kind {
            AlgebraKind::Semigroup => NormalForm::AdjoinedOne,
            _ => self.identity().expect("monoid kind has an identity"),
        };
        for &a in w {
            acc = self.multiply(&acc, &self.letter(a)?);
        }
        Ok(acc)
    }

    /// Renames the generators; word normal forms follow the renaming.
    pub fn rename(&self, f: impl Fn(Symbol) -> Symbol) -> ConcreteAlgebra {
        let body = match &self.body {
            Body::Cayley {
                names,
                table,
                letters,
                identity,
            } => Body::Cayley {
                names: names.clone(),
                table: table.clone(),
                letters: letters.iter().map(|(&a, &x)| (f(a), x)).collect(),
                identity: *identity,
            },
            Body::FreeGroup { inverse } => Body::FreeGroup {
                inverse: inverse.iter().map(|(&a, &b)| (f(a), f(b))).collect(),
            },
            Body::Bicyclic { b, c } => Body::Bicyclic { b: f(*b), c: f(*c) },
            other => other.clone(),
        };
        ConcreteAlgebra {
            kind: self.kind,
            alphabet: self.alphabet.iter().map(|&a| f(a)).collect(),
            body,
        }
    }

    /// Human-readable form of an element.
    pub fn describe(&self, x: &NormalForm) -> String {
        match (&self.body, x) {
            (Body::Cayley { names, .. }, NormalForm::Element(i)) => names[*i].clone(),
            _ => x.to_string(),
        }
    }
}
