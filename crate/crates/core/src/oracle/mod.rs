//! Ground truth: concrete algebras, free products of two of them, and
//! brute-force multiplication tables for checking constructed structures.

mod algebra;
mod free_product;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

pub use algebra::{AlgebraKind, ConcreteAlgebra, NormalForm};
pub use free_product::{Case, FpElement, FreeProductOracle};

use crate::error::{Error, Result};
use crate::fsa::Nfa;
use crate::hyperbolic::{HypStructure, Kind};
use crate::symbol::{format_word, table_word, Symbol, Word};

/// Value of a word under an oracle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Single(NormalForm),
    Product(FpElement),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Single(x) => write!(f, "{x}"),
            Value::Product(s) => {
                write!(f, "(")?;
                for (i, (k, x)) in s.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}@{k}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Evaluator used as ground truth.
#[derive(Clone, Debug)]
pub enum Oracle {
    Algebra(ConcreteAlgebra),
    FreeProduct(FreeProductOracle),
}

impl Oracle {
    pub fn alphabet(&self) -> BTreeSet<Symbol> {
        match self {
            Oracle::Algebra(a) => a.alphabet().clone(),
            Oracle::FreeProduct(fp) => fp.alphabet(),
        }
    }

    pub fn eval(&self, w: &[Symbol]) -> Result<Value> {
        Ok(match self {
            Oracle::Algebra(a) => Value::Single(a.eval(w)?),
            Oracle::FreeProduct(fp) => Value::Product(fp.eval(w)?),
        })
    }

    pub fn multiply(&self, x: &Value, y: &Value) -> Value {
        match (self, x, y) {
            (Oracle::Algebra(a), Value::Single(p), Value::Single(q)) => Value::Single(a.multiply(p, q)),
            (Oracle::FreeProduct(fp), Value::Product(p), Value::Product(q)) => Value::Product(fp.multiply(p, q)),
            _ => panic!("value does not belong to this oracle"),
        }
    }

    /// Identity element in monoid kind.
    pub fn identity(&self) -> Option<Value> {
        match self {
            Oracle::Algebra(a) => a.identity().map(Value::Single),
            Oracle::FreeProduct(fp) => (fp.kind() == Kind::Monoid).then(|| Value::Product(Vec::new())),
        }
    }
}

impl From<ConcreteAlgebra> for Oracle {
    fn from(a: ConcreteAlgebra) -> Oracle {
        Oracle::Algebra(a)
    }
}

impl From<FreeProductOracle> for Oracle {
    fn from(fp: FreeProductOracle) -> Oracle {
        Oracle::FreeProduct(fp)
    }
}

/// Combing words up to `max_len` with their values, shortest first.
fn valued_combing(oracle: &Oracle, combing: &Nfa, max_len: usize) -> Result<Vec<(Word, Value)>> {
    let mut words: Vec<Word> = combing.enumerate(max_len).into_iter().collect();
    words.sort_by_key(Vec::len);
    words
        .into_par_iter()
        .map(|w| oracle.eval(&w).map(|v| (w, v)))
        .collect()
}

/// Every `u #1 v #2 w^rev` with `u, v, w` combing words, `|u|+|v|+|w| ≤
/// max_len` and `uv = w` under the oracle.
pub fn brute_table(oracle: &Oracle, combing: &Nfa, max_len: usize) -> Result<BTreeSet<Word>> {
    let valued = valued_combing(oracle, combing, max_len)?;
    let mut by_value: HashMap<&Value, Vec<&Word>> = HashMap::new();
    for (w, v) in &valued {
        by_value.entry(v).or_default().push(w);
    }
    let parts: Vec<Vec<Word>> = valued
        .par_iter()
        .map(|(u, x)| {
            let mut out = Vec::new();
            for (v, y) in &valued {
                if u.len() + v.len() > max_len {
                    break;
                }
                let z = oracle.multiply(x, y);
                if let Some(ws) = by_value.get(&z) {
                    for w in ws {
                        if u.len() + v.len() + w.len() > max_len {
                            break;
                        }
                        out.push(table_word(u, v, w));
                    }
                }
            }
            out
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

/// Differences between a structure's table and the brute-force table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    /// In the table, but false under the oracle (or not a combing triple).
    pub spurious: Vec<Word>,
    /// True under the oracle, but absent from the table.
    pub missing: Vec<Word>,
    /// Generator words whose value no combing word up to the bound reaches.
    pub unrepresented: Vec<Word>,
    /// Size of the reference table.
    pub reference_size: usize,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.spurious.is_empty() && self.missing.is_empty() && self.unrepresented.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reference triples: {}", self.reference_size)?;
        writeln!(f, "spurious: {}", self.spurious.len())?;
        for w in &self.spurious {
            writeln!(f, "  spurious {}", format_word(w))?;
        }
        writeln!(f, "missing: {}", self.missing.len())?;
        for w in &self.missing {
            writeln!(f, "  missing {}", format_word(w))?;
        }
        writeln!(f, "unrepresented: {}", self.unrepresented.len())?;
        for w in &self.unrepresented {
            writeln!(f, "  unrepresented {}", format_word(w))?;
        }
        Ok(())
    }
}

fn check_alphabet(h: &HypStructure, oracle: &Oracle) -> Result<()> {
    if oracle.alphabet() != *h.alphabet() {
        return Err(Error::Precondition(format!(
            "oracle alphabet {:?} differs from structure alphabet {:?}",
            oracle.alphabet(),
            h.alphabet()
        )));
    }
    Ok(())
}

/// Compares the table of `h` against [`brute_table`] for all triples of
/// total length at most `max_len`, and checks that combing words reach every
/// value of a generator word up to that length.
pub fn verify_structure(h: &HypStructure, oracle: &Oracle, max_len: usize) -> Result<VerifyReport> {
    check_alphabet(h, oracle)?;
    let reference = brute_table(oracle, h.combing(), max_len)?;
    let table = h.table().enumerate(max_len + 2);
    // table words of length ≤ max_len + 2 are exactly the triples in range
    let spurious: Vec<Word> = table.difference(&reference).cloned().collect();
    let missing: Vec<Word> = reference.difference(&table).cloned().collect();

    let reps: HashSet<Value> = valued_combing(oracle, h.combing(), max_len)?
        .into_iter()
        .map(|(_, v)| v)
        .collect();
    let mut generators: Vec<Word> = Nfa::universal(h.alphabet()).enumerate(max_len).into_iter().collect();
    if oracle.identity().is_none() {
        generators.retain(|w| !w.is_empty());
    }
    let unrepresented: Vec<Word> = generators
        .into_par_iter()
        .filter(|w| oracle.eval(w).map_or(true, |v| !reps.contains(&v)))
        .collect::<Vec<_>>();
    // one witness per missing value keeps reports short
    let mut seen = HashSet::new();
    let mut unrepresented_short = Vec::new();
    let mut sorted = unrepresented;
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for w in sorted {
        if let Ok(v) = oracle.eval(&w) {
            if seen.insert(v) {
                unrepresented_short.push(w);
            }
        }
    }
    Ok(VerifyReport {
        spurious,
        missing,
        unrepresented: unrepresented_short,
        reference_size: reference.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OneUniqueness {
    HoldsToBound,
    Violated(Word),
}

/// Looks for a nonempty combing word of length at most `max_len` that
/// represents the identity.
pub fn check_one_uniqueness(h: &HypStructure, oracle: &Oracle, max_len: usize) -> Result<OneUniqueness> {
    if h.kind() != Kind::Monoid {
        return Err(Error::Precondition("1-uniqueness is defined for monoid structures".into()));
    }
    check_alphabet(h, oracle)?;
    let id = oracle
        .identity()
        .ok_or_else(|| Error::Precondition("oracle has no identity".into()))?;
    let valued = valued_combing(oracle, h.combing(), max_len)?;
    Ok(valued
        .into_iter()
        .find(|(w, v)| !w.is_empty() && *v == id)
        .map_or(OneUniqueness::HoldsToBound, |(w, _)| OneUniqueness::Violated(w)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uniqueness {
    HoldsToBound,
    Violated(Word, Word),
}

/// Looks for two distinct combing words of length at most `max_len` with the
/// same value.
pub fn check_uniqueness(h: &HypStructure, oracle: &Oracle, max_len: usize) -> Result<Uniqueness> {
    check_alphabet(h, oracle)?;
    let valued = valued_combing(oracle, h.combing(), max_len)?;
    let mut first: HashMap<Value, Word> = HashMap::new();
    for (w, v) in valued {
        if let Some(other) = first.get(&v) {
            return Ok(Uniqueness::Violated(other.clone(), w));
        }
        first.insert(v, w);
    }
    Ok(Uniqueness::HoldsToBound)
}

/// Checks words against the shape `#1 (x1 #1 y1)...(xn #1 yn) #2 (z1...zn)^rev`
/// where each `xi, yi, zi` lies in one extended factor combing and
/// `xi yi = zi` there.
#[derive(Clone, Debug)]
pub struct AncestorFormChecker {
    /// Extended combing (containing ε) and semigroup-kind evaluator per factor.
    factors: Vec<(Nfa, ConcreteAlgebra)>,
}

impl AncestorFormChecker {
    pub fn new(factors: Vec<(Nfa, ConcreteAlgebra)>) -> AncestorFormChecker {
        let factors = factors.into_iter().map(|(n, a)| (n, a.as_semigroup())).collect();
        AncestorFormChecker { factors }
    }

    pub fn matches(&self, w: &[Symbol]) -> bool {
        let (m1, m2) = (Symbol::marker(1), Symbol::marker(2));
        if w.first() != Some(&m1) || w.iter().filter(|&&s| s == m2).count() != 1 {
            return false;
        }
        let j = w.iter().position(|&s| s == m2).unwrap();
        let left = &w[1..j];
        if w[j + 1..].iter().any(|s| s.is_marker()) || left.iter().any(|s| s.is_marker() && *s != m1) {
            return false;
        }
        let pieces: Vec<&[Symbol]> = left.split(|&s| s == m1).collect();
        let n = pieces.len() - 1;
        let zs: Word = w[j + 1..].iter().rev().copied().collect();
        if n == 0 {
            return pieces[0].is_empty() && zs.is_empty();
        }
        self.search(&pieces, 0, pieces[0], &zs, n)
    }

    /// Triple `i` uses `x` (already split off) and a prefix of `pieces[i+1]`
    /// as `y`; the rest of that piece is the next `x`.
    fn search(&self, pieces: &[&[Symbol]], i: usize, x: &[Symbol], zs: &[Symbol], n: usize) -> bool {
        let piece = pieces[i + 1];
        let splits: Vec<usize> = if i + 1 == n { vec![piece.len()] } else { (0..=piece.len()).collect() };
        for cut in splits {
            let (y, next_x) = piece.split_at(cut);
            let z_lens: Vec<usize> = if i + 1 == n { vec![zs.len()] } else { (0..=zs.len()).collect() };
            for zl in z_lens {
                let (z, rest) = zs.split_at(zl);
                if self.triple_ok(x, y, z) && (i + 1 == n || self.search(pieces, i + 1, next_x, rest, n)) {
                    return true;
                }
            }
        }
        false
    }

    fn triple_ok(&self, x: &[Symbol], y: &[Symbol], z: &[Symbol]) -> bool {
        self.factors.iter().any(|(combing, alg)| {
            let inside = |u: &[Symbol]| u.iter().all(|s| combing.alphabet().contains(s)) && combing.accepts(u).unwrap_or(false);
            inside(x)
                && inside(y)
                && inside(z)
                && match (alg.eval(x), alg.eval(y), alg.eval(z)) {
                    (Ok(a), Ok(b), Ok(c)) => alg.multiply(&a, &b) == c,
                    _ => false,
                }
        })
    }
}
