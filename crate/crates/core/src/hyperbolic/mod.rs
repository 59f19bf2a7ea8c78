//! Word-hyperbolic structures (a regular combing together with a
//! context-free multiplication table) and constructions on them: alternating
//! combings, adjoining an identity, and free products of semigroups and
//! monoids.

pub mod catalog;

use std::collections::{BTreeMap, BTreeSet};

use crate::cfg::Grammar;
use crate::error::{Error, Result};
use crate::fsa::Nfa;
use crate::fst::Fst;
use crate::rewriting::{ancestors_grammar, polypartisan_ancestors, MonadicSystem};
use crate::symbol::{table_word, Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Semigroup,
    Monoid,
}

/// Properties asserted of a structure. They are never inferred; the oracle
/// module can check them up to a length bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    /// Distinct combing words represent distinct elements.
    pub with_uniqueness: bool,
    /// ε is the only combing word representing the identity.
    pub one_uniqueness: bool,
    /// The combing is closed under concatenation (`R* = R`).
    pub star: bool,
}

/// Regular combing `R` plus table `{u #1 v #2 w^rev : u, v, w ∈ R, uv = w}`.
#[derive(Clone, Debug)]
pub struct HypStructure {
    alphabet: BTreeSet<Symbol>,
    combing: Nfa,
    table: Grammar,
    kind: Kind,
    flags: Flags,
}

/// Right stabiliser per letter: `a ↦ a'` with `a · a' = a`.
pub type StabiliserMap = BTreeMap<Symbol, Word>;

fn markers() -> [Symbol; 2] {
    [Symbol::marker(1), Symbol::marker(2)]
}

fn with_markers(alphabet: &BTreeSet<Symbol>) -> BTreeSet<Symbol> {
    let mut out = alphabet.clone();
    out.extend(markers());
    out
}

/// `R #1 R #2 R^rev`.
pub fn triple_language(combing: &Nfa) -> Nfa {
    let [m1, m2] = markers();
    combing
        .concat(&Nfa::word(&[m1]))
        .concat(combing)
        .concat(&Nfa::word(&[m2]))
        .concat(&combing.reverse())
        .trim()
}

impl HypStructure {
    /// Validates and assembles a structure. The table must lie inside
    /// `R #1 R #2 R^rev`; this is decided exactly.
    pub fn new(alphabet: BTreeSet<Symbol>, combing: Nfa, table: Grammar, kind: Kind, flags: Flags) -> Result<HypStructure> {
        if let Some(&m) = alphabet.iter().find(|s| s.is_marker()) {
            return Err(Error::MarkerInWord(m));
        }
        if let Some(&a) = combing.alphabet().iter().find(|a| !alphabet.contains(a)) {
            return Err(Error::RejectedInput {
                symbol: a,
                context: "structure",
            });
        }
        let sigma = with_markers(&alphabet);
        if let Some(&a) = table.terminals().iter().find(|a| !sigma.contains(a)) {
            return Err(Error::RejectedInput {
                symbol: a,
                context: "structure",
            });
        }
        let mut combing = combing;
        combing.extend_alphabet(alphabet.iter().copied());
        let h = HypStructure::assemble(alphabet, combing, table, kind, flags);
        h.check_invariants()?;
        Ok(h)
    }

    fn assemble(alphabet: BTreeSet<Symbol>, combing: Nfa, table: Grammar, kind: Kind, flags: Flags) -> HypStructure {
        let mut table = table;
        table.extend_terminals(with_markers(&alphabet));
        HypStructure {
            alphabet,
            combing,
            table,
            kind,
            flags,
        }
    }

    /// Checks the kind and flag invariants and the table shape.
    pub fn check_invariants(&self) -> Result<()> {
        if self.kind == Kind::Monoid && !self.combing.accepts_epsilon() {
            return Err(Error::Precondition("monoid combing lacks ε".into()));
        }
        if self.flags.star && !self.combing.star().equivalent(&self.combing) {
            return Err(Error::Precondition("star flag set but the combing is not closed under concatenation".into()));
        }
        let outside = triple_language(&self.combing).complement(&with_markers(&self.alphabet));
        if !self.table.intersect_regular(&outside).is_empty() {
            return Err(Error::Precondition("table has words outside R #1 R #2 R^rev".into()));
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    pub fn combing(&self) -> &Nfa {
        &self.combing
    }

    pub fn table(&self) -> &Grammar {
        &self.table
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    /// Same structure with another table, unchecked.
    pub fn with_table(&self, table: Grammar) -> HypStructure {
        HypStructure::assemble(self.alphabet.clone(), self.combing.clone(), table, self.kind, self.flags)
    }

    pub fn with_flags(&self, flags: Flags) -> HypStructure {
        HypStructure { flags, ..self.clone() }
    }

    fn as_semigroup(&self) -> HypStructure {
        HypStructure {
            kind: Kind::Semigroup,
            ..self.clone()
        }
    }

    /// Renames letters; markers are left alone.
    pub fn rename(&self, f: impl Fn(Symbol) -> Symbol + Copy) -> HypStructure {
        let g = move |a: Symbol| if a.is_marker() { a } else { f(a) };
        HypStructure {
            alphabet: self.alphabet.iter().map(|&a| f(a)).collect(),
            combing: self.combing.map_symbols(g),
            table: self.table.map_terminals(g),
            kind: self.kind,
            flags: self.flags,
        }
    }

    /// Whether `u · v = w` according to the table.
    pub fn lookup(&self, u: &[Symbol], v: &[Symbol], w: &[Symbol]) -> Result<bool> {
        table_lookup(self, u, v, w)
    }
}

/// Whether `u #1 v #2 w^rev` is in the table of `h`.
pub fn table_lookup(h: &HypStructure, u: &[Symbol], v: &[Symbol], w: &[Symbol]) -> Result<bool> {
    for &a in u.iter().chain(v).chain(w) {
        if a.is_marker() {
            return Err(Error::MarkerInWord(a));
        }
        if !h.alphabet.contains(&a) {
            return Err(Error::RejectedInput {
                symbol: a,
                context: "structure",
            });
        }
    }
    h.table.accepts(&table_word(u, v, w))
}

fn check_disjoint(a: &BTreeSet<Symbol>, b: &BTreeSet<Symbol>) -> Result<()> {
    match a.intersection(b).next() {
        Some(&s) => Err(Error::AlphabetOverlap(s)),
        None => Ok(()),
    }
}

/// Alternating words: nonempty blocks taken alternately from `L(r1)` and
/// `L(r2)`. ε belongs to the result unless `plus` is set.
pub fn alt_combing(r1: &Nfa, r2: &Nfa, plus: bool) -> Result<Nfa> {
    check_disjoint(r1.alphabet(), r2.alphabet())?;
    let b1 = r1.without_epsilon();
    let b2 = r2.without_epsilon();
    let (b12, b21) = (b1.concat(&b2), b2.concat(&b1));
    let alt = b12
        .star()
        .union(&b21.star())
        .union(&b12.star().concat(&b1))
        .union(&b21.star().concat(&b2));
    let mut alt = if plus { alt.without_epsilon() } else { alt };
    alt.extend_alphabet(r1.alphabet().iter().chain(r2.alphabet()).copied());
    Ok(alt.trim())
}

/// Result of [`one_extend`].
#[derive(Clone, Debug)]
pub struct Extension {
    /// The structure over `R ∪ {ε}` with ε standing for the adjoined one.
    pub structure: HypStructure,
    /// Equality language `{u # v^rev : u, v ∈ R, u = v}`.
    pub equalities: Grammar,
}

/// Adjoins an identity represented by ε, using right stabilisers to read
/// the equality relation of the combing off the table.
pub fn one_extend(h: &HypStructure, stab: &StabiliserMap) -> Result<Extension> {
    if h.kind != Kind::Semigroup {
        return Err(Error::Precondition("adjoining an identity needs a semigroup structure".into()));
    }
    if h.combing.accepts_epsilon() {
        return Err(Error::Precondition("combing already contains ε".into()));
    }
    for &a in &h.alphabet {
        let w = stab.get(&a).ok_or(Error::MissingStabiliser(a))?;
        if w.iter().any(|s| !h.alphabet.contains(s)) || !h.combing.accepts(w)? {
            return Err(Error::StabiliserNotInCombing { letter: a, word: w.clone() });
        }
    }
    let [m1, m2] = markers();
    let sharp = Symbol::marker(0);
    let any = Nfa::universal(&h.alphabet);

    let mut equalities = Grammar::empty_language(h.alphabet.iter().copied().chain([sharp]).collect());
    let reversed = h.combing.reverse();
    for &a in &h.alphabet {
        let stab_a = &stab[&a];
        let ends_in_a = h.combing.intersect(&any.concat(&Nfa::word(&[a])));
        // L_a: the table restricted to u #1 a' #2 v^rev with u ending in a
        let slice = ends_in_a
            .concat(&Nfa::word(&[m1]))
            .concat(&Nfa::word(stab_a))
            .concat(&Nfa::word(&[m2]))
            .concat(&reversed);
        let la = h.table.intersect_regular(&slice);
        let qa = la.apply_fst(&Fst::rho(&h.alphabet, stab_a, sharp))?;
        equalities = equalities.union(&qa);
    }
    let equalities = equalities.trim();

    let q_alphabet = equalities.terminals().clone();
    let right_unit = equalities.apply_fst(&Fst::replace_symbol(&q_alphabet, sharp, &[m1, m2]))?;
    let left_unit = Grammar::word(&[m1]).concat(&equalities.apply_fst(&Fst::replace_symbol(&q_alphabet, sharp, &[m2]))?);
    let table = Grammar::union_all([&Grammar::word(&[m1, m2]), &right_unit, &left_unit, &h.table]).trim();

    let combing = h.combing.union(&Nfa::epsilon()).trim();
    let mut combing = combing;
    combing.extend_alphabet(h.alphabet.iter().copied());
    let structure = HypStructure::assemble(h.alphabet.clone(), combing, table, Kind::Semigroup, h.flags);
    Ok(Extension { structure, equalities })
}

fn check_extended(h: &HypStructure) -> Result<()> {
    if h.kind != Kind::Semigroup {
        return Err(Error::Precondition("semigroup free product needs semigroup structures".into()));
    }
    if !h.combing.accepts_epsilon() {
        return Err(Error::Precondition("combing lacks ε; adjoin an identity first".into()));
    }
    Ok(())
}

/// Rules `t → #2` for every table word `t` of either factor.
pub fn merge_system(h1: &HypStructure, h2: &HypStructure) -> Result<MonadicSystem> {
    check_disjoint(&h1.alphabet, &h2.alphabet)?;
    let letters: BTreeSet<Symbol> = h1.alphabet.union(&h2.alphabet).copied().collect();
    let mut sys = MonadicSystem::new(with_markers(&letters));
    sys.add_rule(Some(Symbol::marker(2)), h1.table.clone())?;
    sys.add_rule(Some(Symbol::marker(2)), h2.table.clone())?;
    Ok(sys)
}

/// `τ0(anc(#1 #2))`: the free-product table before restricting to a combing.
fn merged_table(h1: &HypStructure, h2: &HypStructure) -> Result<Grammar> {
    let sys = merge_system(h1, h2)?;
    let anc = ancestors_grammar(&sys, &Grammar::word(&markers()))?;
    anc.apply_fst(&Fst::tau0(sys.alphabet())?)
}

/// Free product of two semigroups from structures over `R_i ∪ {ε}` in
/// which ε stands for an adjoined identity. The combing is `Alt⁺(R1, R2)`.
pub fn sgp_free_product(h1: &HypStructure, h2: &HypStructure) -> Result<HypStructure> {
    check_extended(h1)?;
    check_extended(h2)?;
    let combing = alt_combing(&h1.combing, &h2.combing, true)?;
    let table = merged_table(h1, h2)?.intersect_regular(&triple_language(&combing));
    let alphabet = h1.alphabet.union(&h2.alphabet).copied().collect();
    let flags = Flags {
        with_uniqueness: h1.flags.with_uniqueness && h2.flags.with_uniqueness,
        ..Flags::default()
    };
    Ok(HypStructure::assemble(alphabet, combing, table, Kind::Semigroup, flags))
}

/// Which monoid free-product construction to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonoidMode {
    /// Factors are 1-unique; the result is 1-unique over `Alt(R1, R2)`.
    OneUnique,
    /// Factor combings satisfy `R* = R`; the result is over `(R1 ∪ R2)*`.
    Star,
}

/// The table of the monoid seen with ε as an adjoined identity: drops
/// `u #1 v #2` with `uv` nonempty.
pub fn detach_identity(h: &HypStructure) -> Grammar {
    let [m1, m2] = markers();
    let a = Nfa::letters(&h.alphabet);
    let any = Nfa::universal(&h.alphabet);
    let (s1, s2) = (Nfa::word(&[m1]), Nfa::word(&[m2]));
    let keep = Nfa::word(&[m1, m2])
        .union(&a.plus().concat(&s1).concat(&any).concat(&s2).concat(&a.plus()))
        .union(&s1.concat(&a.plus()).concat(&s2).concat(&a.plus()));
    h.table.intersect_regular(&keep)
}

/// Rules `u #1 v → #1` for combing words with `uv = 1`.
pub fn cancellation_system(h: &HypStructure) -> Result<MonadicSystem> {
    let mut sys = MonadicSystem::new(with_markers(&h.alphabet));
    let lhs = h.table.right_quotient(&Nfa::word(&[Symbol::marker(2)]));
    let [m1, m2] = markers();
    let shape = Nfa::universal(&h.alphabet)
        .concat(&Nfa::word(&[m1]))
        .concat(&Nfa::universal(&h.alphabet));
    let mut lhs = lhs.intersect_regular(&shape);
    lhs.extend_terminals([m1, m2]);
    sys.add_rule(Some(m1), lhs)?;
    Ok(sys)
}

/// Rules `w → ε` for combing words with `w = 1`.
pub fn identity_system(h: &HypStructure) -> Result<MonadicSystem> {
    let [m1, m2] = markers();
    let mut sys = MonadicSystem::new(h.alphabet.clone());
    let lhs = h
        .table
        .right_quotient(&Nfa::word(&[m1, m2]))
        .intersect_regular(&Nfa::universal(&h.alphabet))
        .tight();
    sys.add_rule(None, lhs)?;
    Ok(sys)
}

fn check_monoid(h: &HypStructure, mode: MonoidMode) -> Result<()> {
    if h.kind != Kind::Monoid {
        return Err(Error::Precondition("monoid free product needs monoid structures".into()));
    }
    match mode {
        MonoidMode::OneUnique if !h.flags.one_uniqueness => {
            Err(Error::Precondition("one_uniqueness flag not set on an input".into()))
        }
        MonoidMode::Star if !h.flags.star => Err(Error::Precondition("star flag not set on an input".into())),
        MonoidMode::Star if !h.combing.star().equivalent(&h.combing) => {
            Err(Error::Precondition("star flag set but R* differs from R".into()))
        }
        _ => Ok(()),
    }
}

/// Free product of two monoids.
pub fn mon_free_product(h1: &HypStructure, h2: &HypStructure, mode: MonoidMode) -> Result<HypStructure> {
    check_monoid(h1, mode)?;
    check_monoid(h2, mode)?;
    let alt = alt_combing(&h1.combing, &h2.combing, false)?;
    let alphabet: BTreeSet<Symbol> = h1.alphabet.union(&h2.alphabet).copied().collect();

    // the semigroup free product with ε as the adjoined identity of each
    // factor, then cancellation of u #1 v with uv = 1 inside a factor
    let d1 = h1.with_table(detach_identity(h1)).as_semigroup();
    let d2 = h2.with_table(detach_identity(h2)).as_semigroup();
    let merged = merged_table(&d1, &d2)?.intersect_regular(&triple_language(&alt));
    let cancel = cancellation_system(h1)?.union(&cancellation_system(h2)?);
    let shape = triple_language(&alt);
    let l1 = ancestors_grammar(&cancel, &merged)?.intersect_regular(&shape);

    let both = |f: fn(&Flags) -> bool| f(&h1.flags) && f(&h2.flags);
    match mode {
        MonoidMode::OneUnique => {
            let flags = Flags {
                with_uniqueness: both(|f| f.with_uniqueness),
                one_uniqueness: true,
                star: false,
            };
            Ok(HypStructure::assemble(alphabet, alt, l1, Kind::Monoid, flags))
        }
        MonoidMode::Star => {
            let mut combing = h1.combing.union(&h2.combing).star().trim();
            combing.extend_alphabet(alphabet.iter().copied());
            let erase = identity_system(h1)?.union(&identity_system(h2)?);
            let systems = [erase.clone(), erase.clone(), erase.reversed()];
            let l2 = polypartisan_ancestors(&systems, &l1)?.intersect_regular(&triple_language(&combing));
            let flags = Flags {
                with_uniqueness: both(|f| f.with_uniqueness),
                one_uniqueness: both(|f| f.one_uniqueness),
                star: true,
            };
            Ok(HypStructure::assemble(alphabet, combing, l2, Kind::Monoid, flags))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{alphabet, parse_word};
    use crate::RegexExpr;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn re(s: &str) -> Nfa {
        Nfa::from_regex(&RegexExpr::parse(s).unwrap())
    }

    #[test]
    fn alt_combing_examples() {
        let alt = alt_combing(&re("a"), &re("b"), false).unwrap();
        for (word, ok) in [("a b a", true), ("b a b", true), ("", true), ("a a b", false)] {
            assert_eq!(alt.accepts(&w(word)).unwrap(), ok, "{word}");
        }
        let plus = alt_combing(&re("a"), &re("b"), true).unwrap();
        assert!(!plus.accepts(&[]).unwrap());
        let bc = alt_combing(&re("c1* b1*"), &re("c2* b2*"), false).unwrap();
        assert!(bc.accepts(&w("c1 b1 c2 b2")).unwrap());
        assert!(matches!(alt_combing(&re("a"), &re("a b"), false), Err(Error::AlphabetOverlap(_))));
    }

    #[test]
    fn lookup_rejects_markers() {
        let h = catalog::bicyclic_normal(Symbol::new("b"), Symbol::new("c"));
        assert!(h.lookup(&w("b"), &w("c"), &[]).unwrap());
        assert!(h.lookup(&w("c b"), &w("c"), &w("c")).unwrap());
        assert!(!h.lookup(&w("b"), &w("c"), &w("b")).unwrap());
        assert!(matches!(h.lookup(&w("#1"), &[], &[]), Err(Error::MarkerInWord(_))));
    }

    #[test]
    fn new_checks_shape() {
        let t = Grammar::from_words([&w("e #1 e #2 e")]);
        assert!(HypStructure::new(alphabet(["e"]), re("e"), t, Kind::Semigroup, Flags::default()).is_ok());
        let bad = Grammar::from_words([&w("e #2 e #1 e")]);
        assert!(HypStructure::new(alphabet(["e"]), re("e"), bad, Kind::Semigroup, Flags::default()).is_err());
        let t = Grammar::from_words([&w("e #1 e #2 e")]);
        assert!(HypStructure::new(alphabet(["e"]), re("e"), t, Kind::Monoid, Flags::default()).is_err());
    }

    #[test]
    fn extension_of_trivial_semigroup() {
        let h = catalog::finite(&crate::oracle::ConcreteAlgebra::trivial(
            alphabet(["e"]),
            crate::oracle::AlgebraKind::Semigroup,
        ))
        .unwrap();
        let stab = StabiliserMap::from([(Symbol::new("e"), w("e"))]);
        let ext = one_extend(&h, &stab).unwrap();
        assert_eq!(ext.equalities.enumerate(5), BTreeSet::from([w("e # e")]));
        let expect: BTreeSet<Word> = ["#1 #2", "e #1 #2 e", "#1 e #2 e", "e #1 e #2 e"].iter().map(|s| w(s)).collect();
        assert_eq!(ext.structure.table().enumerate(6), expect);
        assert!(matches!(one_extend(&h, &StabiliserMap::new()), Err(Error::MissingStabiliser(_))));
    }
}
