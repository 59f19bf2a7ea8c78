//! JSON structure files.
//!
//! A file is a set of named sections. Automata, grammars, transducers and
//! oracles are declared once and referenced by name from structures and
//! rewriting systems. The markers `#1`, `#2`, `#3` are reserved and are never
//! declared as letters.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use wordhyp_core::cfg::Grammar;
use wordhyp_core::hyperbolic::{catalog, StabiliserMap};
use wordhyp_core::oracle::{AlgebraKind, ConcreteAlgebra, FreeProductOracle, Oracle};
use wordhyp_core::rewriting::MonadicSystem;
use wordhyp_core::symbol::parse_word;
use wordhyp_core::{Flags, Fst, HypStructure, Kind, Nfa, RegexExpr, Symbol};

use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub alphabets: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub automata: BTreeMap<String, AutomatonDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub grammars: BTreeMap<String, GrammarDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub transducers: BTreeMap<String, TransducerDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub stabilisers: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub systems: BTreeMap<String, SystemDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub oracles: BTreeMap<String, OracleDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub structures: BTreeMap<String, StructureDoc>,
}

/// Either a regular expression or an explicit state list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AutomatonDoc {
    Regex {
        regex: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<Vec<String>>,
    },
    States {
        alphabet: Vec<String>,
        states: usize,
        initial: Vec<usize>,
        #[serde(rename = "final")]
        finals: Vec<usize>,
        /// `[from, letter or null for ε, to]`
        transitions: Vec<(usize, Option<String>, usize)>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrammarDoc {
    #[serde(default)]
    pub terminals: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<String>,
    /// Lines such as `S -> a S b | ε`.
    pub productions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransducerDoc {
    pub input: Vec<String>,
    pub output: Vec<String>,
    pub states: usize,
    pub initial: Vec<usize>,
    #[serde(rename = "final")]
    pub finals: Vec<usize>,
    /// `[from, input or null, output or null, to]`
    pub transitions: Vec<(usize, Option<String>, Option<String>, usize)>,
}

/// Monadic rewriting system: right-hand side letter (or `ε`) to the name of
/// the grammar of its left-hand sides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub alphabet: Vec<String>,
    pub rules: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKindDoc {
    Semigroup,
    Monoid,
    Group,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindDoc {
    Semigroup,
    Monoid,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum OracleDoc {
    Cayley {
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        letters: BTreeMap<String, usize>,
        kind: AlgebraKindDoc,
    },
    FreeMonoid {
        letters: Vec<String>,
    },
    FreeGroup {
        /// `[letter, inverse letter]`
        pairs: Vec<(String, String)>,
    },
    Bicyclic {
        b: String,
        c: String,
    },
    LeftZero {
        letters: Vec<String>,
    },
    Trivial {
        letters: Vec<String>,
        kind: AlgebraKindDoc,
    },
    FreeProduct {
        kind: KindDoc,
        factors: (String, String),
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlagsDoc {
    pub with_uniqueness: bool,
    pub one_uniqueness: bool,
    pub star: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogDoc {
    Finite,
    FreeMonoid,
    FreeGroup,
    BicyclicNormal,
    BicyclicFree,
}

/// Either an assembly of named parts or a catalog entry.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    /// Letter list, or the name of an entry in `alphabets`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<AlphabetRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub combing: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<KindDoc>,
    #[serde(default)]
    pub flags: FlagsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<CatalogDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub letters: Vec<String>,
    /// Ground-truth evaluator used by `verify`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphabetRef {
    Named(String),
    Letters(Vec<String>),
}

fn letter(name: &str) -> Result<Symbol, CliError> {
    let s = Symbol::parse(name).map_err(|e| CliError::Format(e.to_string()))?;
    if s.is_marker() {
        return Err(CliError::Format(format!("marker {name} cannot be declared as a letter")));
    }
    Ok(s)
}

fn letters<'a>(names: impl IntoIterator<Item = &'a String>) -> Result<BTreeSet<Symbol>, CliError> {
    names.into_iter().map(|n| letter(n)).collect()
}

/// Symbols of a serialized part, where markers are allowed.
fn symbol(name: &str) -> Result<Symbol, CliError> {
    Symbol::parse(name).map_err(|e| CliError::Format(e.to_string()))
}

fn names(set: &BTreeSet<Symbol>) -> Vec<String> {
    set.iter().map(|s| s.name().to_string()).collect()
}

impl From<Kind> for KindDoc {
    fn from(k: Kind) -> KindDoc {
        match k {
            Kind::Semigroup => KindDoc::Semigroup,
            Kind::Monoid => KindDoc::Monoid,
        }
    }
}

impl From<KindDoc> for Kind {
    fn from(k: KindDoc) -> Kind {
        match k {
            KindDoc::Semigroup => Kind::Semigroup,
            KindDoc::Monoid => Kind::Monoid,
        }
    }
}

impl From<AlgebraKindDoc> for AlgebraKind {
    fn from(k: AlgebraKindDoc) -> AlgebraKind {
        match k {
            AlgebraKindDoc::Semigroup => AlgebraKind::Semigroup,
            AlgebraKindDoc::Monoid => AlgebraKind::Monoid,
            AlgebraKindDoc::Group => AlgebraKind::Group,
        }
    }
}

impl From<Flags> for FlagsDoc {
    fn from(f: Flags) -> FlagsDoc {
        FlagsDoc {
            with_uniqueness: f.with_uniqueness,
            one_uniqueness: f.one_uniqueness,
            star: f.star,
        }
    }
}

impl From<FlagsDoc> for Flags {
    fn from(f: FlagsDoc) -> Flags {
        Flags {
            with_uniqueness: f.with_uniqueness,
            one_uniqueness: f.one_uniqueness,
            star: f.star,
        }
    }
}

impl AutomatonDoc {
    pub fn from_nfa(n: &Nfa) -> AutomatonDoc {
        AutomatonDoc::States {
            alphabet: names(n.alphabet()),
            states: n.num_states(),
            initial: n.initials().iter().copied().collect(),
            finals: n.finals().iter().copied().collect(),
            transitions: n
                .transitions()
                .iter()
                .map(|&(p, l, q)| (p, l.map(|s| s.name().to_string()), q))
                .collect(),
        }
    }

    pub fn to_nfa(&self) -> Result<Nfa, CliError> {
        match self {
            AutomatonDoc::Regex { regex, alphabet } => {
                let e = RegexExpr::parse(regex).map_err(|e| CliError::Format(e.to_string()))?;
                let mut n = Nfa::from_regex(&e);
                if let Some(a) = alphabet {
                    n.extend_alphabet(a.iter().map(|x| symbol(x)).collect::<Result<Vec<_>, _>>()?);
                }
                Ok(n)
            }
            AutomatonDoc::States {
                alphabet,
                states,
                initial,
                finals,
                transitions,
            } => {
                let in_range = |s: usize| {
                    if s < *states {
                        Ok(s)
                    } else {
                        Err(CliError::Format(format!("state {s} out of range (automaton has {states})")))
                    }
                };
                let mut n = Nfa::empty(alphabet.iter().map(|x| symbol(x)).collect::<Result<_, _>>()?);
                for _ in 0..*states {
                    n.add_state();
                }
                for &s in initial {
                    n.set_initial(in_range(s)?);
                }
                for &s in finals {
                    n.set_final(in_range(s)?);
                }
                for (p, l, q) in transitions {
                    let l = l.as_deref().map(symbol).transpose()?;
                    n.add_transition(in_range(*p)?, l, in_range(*q)?);
                }
                Ok(n)
            }
        }
    }
}

impl GrammarDoc {
    pub fn from_grammar(g: &Grammar) -> GrammarDoc {
        GrammarDoc {
            terminals: names(g.terminals()),
            start: None,
            productions: g.to_text().lines().map(String::from).collect(),
        }
    }

    pub fn to_grammar(&self) -> Result<Grammar, CliError> {
        let text = self.productions.join("\n");
        let parsed = match &self.start {
            Some(s) => Grammar::parse_with_start(&text, s),
            None => Grammar::parse(&text),
        };
        let mut g = parsed.map_err(|e| CliError::Format(e.to_string()))?;
        g.extend_terminals(self.terminals.iter().map(|x| symbol(x)).collect::<Result<Vec<_>, _>>()?);
        Ok(g)
    }
}

impl TransducerDoc {
    pub fn from_fst(t: &Fst) -> TransducerDoc {
        let name = |s: Option<Symbol>| s.map(|s| s.name().to_string());
        TransducerDoc {
            input: names(t.in_alphabet()),
            output: names(t.out_alphabet()),
            states: t.num_states(),
            initial: t.initials().iter().copied().collect(),
            finals: t.finals().iter().copied().collect(),
            transitions: t.transitions().iter().map(|&(p, i, o, q)| (p, name(i), name(o), q)).collect(),
        }
    }

    pub fn to_fst(&self) -> Result<Fst, CliError> {
        let set = |v: &Vec<String>| v.iter().map(|x| symbol(x)).collect::<Result<BTreeSet<_>, _>>();
        let mut t = Fst::new(set(&self.input)?, set(&self.output)?);
        for _ in 0..self.states {
            t.add_state();
        }
        let in_range = |s: usize| {
            if s < self.states {
                Ok(s)
            } else {
                Err(CliError::Format(format!("state {s} out of range (transducer has {})", self.states)))
            }
        };
        for &s in &self.initial {
            t.set_initial(in_range(s)?);
        }
        for &s in &self.finals {
            t.set_final(in_range(s)?);
        }
        for (p, i, o, q) in &self.transitions {
            let i = i.as_deref().map(symbol).transpose()?;
            let o = o.as_deref().map(symbol).transpose()?;
            t.add_transition(in_range(*p)?, i, o, in_range(*q)?);
        }
        Ok(t)
    }
}

impl OracleDoc {
    /// Copy with every letter passed through `f`.
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> OracleDoc {
        let list = |v: &Vec<String>| v.iter().map(|x| f(x)).collect();
        match self {
            OracleDoc::Cayley {
                elements,
                table,
                letters,
                kind,
            } => OracleDoc::Cayley {
                elements: elements.clone(),
                table: table.clone(),
                letters: letters.iter().map(|(k, v)| (f(k), *v)).collect(),
                kind: *kind,
            },
            OracleDoc::FreeMonoid { letters } => OracleDoc::FreeMonoid { letters: list(letters) },
            OracleDoc::FreeGroup { pairs } => OracleDoc::FreeGroup {
                pairs: pairs.iter().map(|(x, y)| (f(x), f(y))).collect(),
            },
            OracleDoc::Bicyclic { b, c } => OracleDoc::Bicyclic { b: f(b), c: f(c) },
            OracleDoc::LeftZero { letters } => OracleDoc::LeftZero { letters: list(letters) },
            OracleDoc::Trivial { letters, kind } => OracleDoc::Trivial {
                letters: list(letters),
                kind: *kind,
            },
            OracleDoc::FreeProduct { .. } => self.clone(),
        }
    }

    fn algebra(&self) -> Result<ConcreteAlgebra, CliError> {
        Ok(match self {
            OracleDoc::Cayley {
                elements,
                table,
                letters: map,
                kind,
            } => {
                let map = map.iter().map(|(k, v)| Ok((letter(k)?, *v))).collect::<Result<_, CliError>>()?;
                ConcreteAlgebra::cayley(elements.clone(), table.clone(), map, (*kind).into())?
            }
            OracleDoc::FreeMonoid { letters: l } => ConcreteAlgebra::free_monoid(letters(l)?),
            OracleDoc::FreeGroup { pairs } => {
                let pairs = pairs.iter().map(|(x, y)| Ok((letter(x)?, letter(y)?))).collect::<Result<Vec<_>, CliError>>()?;
                ConcreteAlgebra::free_group(&pairs)
            }
            OracleDoc::Bicyclic { b, c } => ConcreteAlgebra::bicyclic(letter(b)?, letter(c)?),
            OracleDoc::LeftZero { letters: l } => ConcreteAlgebra::left_zero(letters(l)?),
            OracleDoc::Trivial { letters: l, kind } => ConcreteAlgebra::trivial(letters(l)?, (*kind).into()),
            OracleDoc::FreeProduct { .. } => unreachable!("free products are resolved by name"),
        })
    }
}

/// An oracle with its factors resolved, so it can be copied between files.
#[derive(Clone, Debug, PartialEq)]
pub enum OracleTree {
    Leaf(OracleDoc),
    Product(KindDoc, Box<OracleTree>, Box<OracleTree>),
}

impl OracleTree {
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> OracleTree {
        match self {
            OracleTree::Leaf(d) => OracleTree::Leaf(d.rename(f)),
            OracleTree::Product(k, a, b) => OracleTree::Product(*k, Box::new(a.rename(f)), Box::new(b.rename(f))),
        }
    }

    pub fn build(&self) -> Result<Oracle, CliError> {
        match self {
            OracleTree::Leaf(d) => Ok(Oracle::Algebra(d.algebra()?)),
            OracleTree::Product(kind, a, b) => {
                let factor = |t: &OracleTree| match t.build()? {
                    Oracle::Algebra(alg) => Ok(alg),
                    Oracle::FreeProduct(_) => Err(CliError::Format("free product factors must be algebras".into())),
                };
                Ok(Oracle::FreeProduct(FreeProductOracle::new(factor(a)?, factor(b)?, (*kind).into())?))
            }
        }
    }

    /// Writes this tree into `file` under `name`, factors under `name.1`,
    /// `name.2`.
    pub fn store(&self, file: &mut StructureFile, name: &str) {
        match self {
            OracleTree::Leaf(d) => {
                file.oracles.insert(name.to_string(), d.clone());
            }
            OracleTree::Product(kind, a, b) => {
                let (na, nb) = (format!("{name}.1"), format!("{name}.2"));
                a.store(file, &na);
                b.store(file, &nb);
                file.oracles.insert(
                    name.to_string(),
                    OracleDoc::FreeProduct {
                        kind: *kind,
                        factors: (na, nb),
                    },
                );
            }
        }
    }
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<StructureFile, CliError> {
        let file: StructureFile = serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))?;
        for (name, list) in &file.alphabets {
            letters(list).map_err(|e| CliError::Format(format!("alphabet {name}: {e}")))?;
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Adds every section of `other`, failing on a repeated name.
    pub fn merge(&mut self, other: StructureFile) -> Result<(), CliError> {
        fn into<T>(dst: &mut BTreeMap<String, T>, src: BTreeMap<String, T>, what: &'static str) -> Result<(), CliError> {
            for (k, v) in src {
                if dst.contains_key(&k) {
                    return Err(CliError::Duplicate { what, name: k });
                }
                dst.insert(k, v);
            }
            Ok(())
        }
        into(&mut self.alphabets, other.alphabets, "alphabet")?;
        into(&mut self.automata, other.automata, "automaton")?;
        into(&mut self.grammars, other.grammars, "grammar")?;
        into(&mut self.transducers, other.transducers, "transducer")?;
        into(&mut self.stabilisers, other.stabilisers, "stabiliser map")?;
        into(&mut self.systems, other.systems, "system")?;
        into(&mut self.oracles, other.oracles, "oracle")?;
        into(&mut self.structures, other.structures, "structure")
    }

    fn get<'a, T>(map: &'a BTreeMap<String, T>, what: &'static str, name: &str) -> Result<&'a T, CliError> {
        map.get(name).ok_or_else(|| CliError::Unresolved {
            what,
            name: name.to_string(),
        })
    }

    pub fn automaton(&self, name: &str) -> Result<Nfa, CliError> {
        Self::get(&self.automata, "automaton", name)?.to_nfa()
    }

    pub fn grammar(&self, name: &str) -> Result<Grammar, CliError> {
        Self::get(&self.grammars, "grammar", name)?.to_grammar()
    }

    pub fn transducer(&self, name: &str) -> Result<Fst, CliError> {
        Self::get(&self.transducers, "transducer", name)?.to_fst()
    }

    pub fn stabiliser(&self, name: &str) -> Result<StabiliserMap, CliError> {
        Self::get(&self.stabilisers, "stabiliser map", name)?
            .iter()
            .map(|(k, v)| Ok((letter(k)?, parse_word(v).map_err(|e| CliError::Format(e.to_string()))?)))
            .collect()
    }

    pub fn system(&self, name: &str) -> Result<MonadicSystem, CliError> {
        let doc = Self::get(&self.systems, "system", name)?;
        let mut sys = MonadicSystem::new(letters(&doc.alphabet)?);
        for (rhs, grammar) in &doc.rules {
            let rhs = match rhs.as_str() {
                "ε" | "" => None,
                r => Some(letter(r)?),
            };
            sys.add_rule(rhs, self.grammar(grammar)?)?;
        }
        Ok(sys)
    }

    pub fn oracle_tree(&self, name: &str) -> Result<OracleTree, CliError> {
        self.oracle_tree_at(name, 0)
    }

    fn oracle_tree_at(&self, name: &str, depth: usize) -> Result<OracleTree, CliError> {
        if depth > self.oracles.len() {
            return Err(CliError::Format(format!("oracle {name} refers to itself")));
        }
        Ok(match Self::get(&self.oracles, "oracle", name)? {
            OracleDoc::FreeProduct { kind, factors } => OracleTree::Product(
                *kind,
                Box::new(self.oracle_tree_at(&factors.0, depth + 1)?),
                Box::new(self.oracle_tree_at(&factors.1, depth + 1)?),
            ),
            leaf => OracleTree::Leaf(leaf.clone()),
        })
    }

    pub fn oracle(&self, name: &str) -> Result<Oracle, CliError> {
        self.oracle_tree(name)?.build()
    }

    /// Structure name to use when the caller gave none: the only one in the
    /// file.
    pub fn default_structure(&self) -> Result<&str, CliError> {
        let mut names = self.structures.keys();
        match (names.next(), names.next()) {
            (Some(n), None) => Ok(n),
            (None, _) => Err(CliError::Usage("file declares no structures".into())),
            _ => Err(CliError::Usage("file declares several structures; pick one with --structure".into())),
        }
    }

    pub fn structure(&self, name: &str) -> Result<HypStructure, CliError> {
        let doc = Self::get(&self.structures, "structure", name)?;
        if let Some(cat) = doc.catalog {
            return self.catalog_structure(name, cat, doc);
        }
        let missing = |field: &str| CliError::Format(format!("structure {name} has no {field}"));
        let alphabet = match doc.alphabet.as_ref().ok_or_else(|| missing("alphabet"))? {
            AlphabetRef::Named(a) => letters(Self::get(&self.alphabets, "alphabet", a)?)?,
            AlphabetRef::Letters(l) => letters(l)?,
        };
        let combing = self.automaton(doc.combing.as_deref().ok_or_else(|| missing("combing"))?)?;
        let table = self.grammar(doc.table.as_deref().ok_or_else(|| missing("table"))?)?;
        let kind = doc.kind.ok_or_else(|| missing("kind"))?;
        Ok(HypStructure::new(alphabet, combing, table, kind.into(), doc.flags.into())?)
    }

    fn catalog_structure(&self, name: &str, cat: CatalogDoc, doc: &StructureDoc) -> Result<HypStructure, CliError> {
        let l = doc.letters.iter().map(|x| letter(x)).collect::<Result<Vec<_>, _>>()?;
        let need = |n: usize| {
            if l.len() == n {
                Ok(())
            } else {
                Err(CliError::Format(format!("catalog structure {name} needs {n} letter(s)")))
            }
        };
        Ok(match cat {
            CatalogDoc::Finite => {
                let oracle = doc
                    .oracle
                    .as_deref()
                    .ok_or_else(|| CliError::Format(format!("finite structure {name} needs an oracle")))?;
                match self.oracle(oracle)? {
                    Oracle::Algebra(alg) => catalog::finite(&alg)?,
                    Oracle::FreeProduct(_) => {
                        return Err(CliError::Format(format!("finite structure {name} needs an algebra oracle")))
                    }
                }
            }
            CatalogDoc::FreeMonoid => {
                need(1)?;
                catalog::free_monoid_rank1(l[0])
            }
            CatalogDoc::FreeGroup => {
                need(2)?;
                catalog::free_group_rank1(l[0], l[1])
            }
            CatalogDoc::BicyclicNormal => {
                need(2)?;
                catalog::bicyclic_normal(l[0], l[1])
            }
            CatalogDoc::BicyclicFree => {
                need(2)?;
                catalog::bicyclic_free(l[0], l[1])?
            }
        })
    }

    /// Adds `h` as an assembled structure named `name`, with parts
    /// `name.combing` and `name.table`.
    pub fn insert_structure(&mut self, name: &str, h: &HypStructure, oracle: Option<&OracleTree>) {
        let (combing, table) = (format!("{name}.combing"), format!("{name}.table"));
        self.automata.insert(combing.clone(), AutomatonDoc::from_nfa(h.combing()));
        self.grammars.insert(table.clone(), GrammarDoc::from_grammar(h.table()));
        let oracle_name = oracle.map(|t| {
            let n = format!("{name}.oracle");
            t.store(self, &n);
            n
        });
        self.structures.insert(
            name.to_string(),
            StructureDoc {
                alphabet: Some(AlphabetRef::Letters(names(h.alphabet()))),
                combing: Some(combing),
                table: Some(table),
                kind: Some(h.kind().into()),
                flags: h.flags().into(),
                oracle: oracle_name,
                ..StructureDoc::default()
            },
        );
    }
}
