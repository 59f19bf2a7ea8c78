//! Rational transductions realised by finite-state transducers.
//!
//! Every transition reads at most one symbol and writes at most one symbol;
//! longer outputs are compiled into chains of states by [`Fst::add_path`].

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::fsa::{Nfa, StateId};
use crate::symbol::{Symbol, Tag, Word};

/// A transition `(from, input, output, to)`; `None` is ε.
pub type Edge = (StateId, Option<Symbol>, Option<Symbol>, StateId);

#[derive(Clone, Debug, Default)]
pub struct Fst {
    in_alphabet: BTreeSet<Symbol>,
    out_alphabet: BTreeSet<Symbol>,
    num_states: usize,
    transitions: Vec<Edge>,
    initials: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
}

impl Fst {
    pub fn new(in_alphabet: BTreeSet<Symbol>, out_alphabet: BTreeSet<Symbol>) -> Fst {
        Fst {
            in_alphabet,
            out_alphabet,
            ..Fst::default()
        }
    }

    pub fn add_state(&mut self) -> StateId {
        self.num_states += 1;
        self.num_states - 1
    }

    pub fn add_transition(&mut self, from: StateId, input: Option<Symbol>, output: Option<Symbol>, to: StateId) {
        assert!(from < self.num_states && to < self.num_states, "state out of range");
        self.in_alphabet.extend(input);
        self.out_alphabet.extend(output);
        self.transitions.push((from, input, output, to));
    }

    /// Reads `input` and writes `output`, using intermediate states when the
    /// output is longer than one symbol.
    pub fn add_path(&mut self, from: StateId, input: Option<Symbol>, output: &[Symbol], to: StateId) {
        match output {
            [] => self.add_transition(from, input, None, to),
            [o] => self.add_transition(from, input, Some(*o), to),
            [first, rest @ ..] => {
                let mid = self.add_state();
                self.add_transition(from, input, Some(*first), mid);
                self.add_path(mid, None, rest, to);
            }
        }
    }

    pub fn set_initial(&mut self, s: StateId) {
        self.initials.insert(s);
    }

    pub fn set_final(&mut self, s: StateId) {
        self.finals.insert(s);
    }

    pub fn in_alphabet(&self) -> &BTreeSet<Symbol> {
        &self.in_alphabet
    }

    pub fn out_alphabet(&self) -> &BTreeSet<Symbol> {
        &self.out_alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn transitions(&self) -> &[Edge] {
        &self.transitions
    }

    pub fn initials(&self) -> &BTreeSet<StateId> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    /// Identity relation on `alphabet*`.
    pub fn identity(alphabet: &BTreeSet<Symbol>) -> Fst {
        let mut t = Fst::new(alphabet.clone(), alphabet.clone());
        let s = t.add_state();
        t.set_initial(s);
        t.set_final(s);
        for &a in alphabet {
            t.add_transition(s, Some(a), Some(a), s);
        }
        t
    }

    /// Identity relation restricted to `L(n)`.
    pub fn restriction(n: &Nfa) -> Fst {
        let mut t = Fst::new(n.alphabet().clone(), n.alphabet().clone());
        for _ in 0..n.num_states() {
            t.add_state();
        }
        for &(p, l, q) in n.transitions() {
            t.add_transition(p, l, l, q);
        }
        t.initials = n.initials().clone();
        t.finals = n.finals().clone();
        t
    }

    /// Letter-to-word homomorphism; letters of `alphabet` without an image
    /// are copied.
    pub fn homomorphism(alphabet: &BTreeSet<Symbol>, image: impl Fn(Symbol) -> Option<Word>) -> Fst {
        let mut t = Fst::new(alphabet.clone(), BTreeSet::new());
        let s = t.add_state();
        t.set_initial(s);
        t.set_final(s);
        for &a in alphabet {
            let out = image(a).unwrap_or_else(|| vec![a]);
            t.add_path(s, Some(a), &out, s);
        }
        t
    }

    /// Erases any subset of the `#1` occurrences and copies everything else.
    pub fn tau0(alphabet: &BTreeSet<Symbol>) -> Result<Fst> {
        let (m1, m2) = (Symbol::marker(1), Symbol::marker(2));
        for m in [m1, m2] {
            if !alphabet.contains(&m) {
                return Err(Error::MissingMarker(m));
            }
        }
        let mut t = Fst::identity(alphabet);
        t.add_transition(0, Some(m1), None, 0);
        Ok(t)
    }

    /// Renames segment `i` of `u0 #1 u1 ... #k uk` into the fresh alphabet
    /// `name~i`, keeping the markers. Words outside the k-shuffled language
    /// have no image.
    pub fn mu_k(alphabet: &BTreeSet<Symbol>, k: usize) -> Result<Fst> {
        if k == 0 || k > u8::MAX as usize {
            return Err(Error::Precondition(format!("shuffle degree {k} out of range")));
        }
        let letters = segment_letters(alphabet, k);
        let mut t = Fst::new(BTreeSet::new(), BTreeSet::new());
        for _ in 0..=k {
            t.add_state();
        }
        t.set_initial(0);
        t.set_final(k);
        for i in 0..=k {
            for &a in &letters {
                t.add_transition(i, Some(a), Some(a.in_segment(i as u8)), i);
            }
            if i < k {
                let m = Symbol::marker(i as u8 + 1);
                t.add_transition(i, Some(m), Some(m), i + 1);
            }
        }
        Ok(t)
    }

    /// Relates `u #1 a' #2 v` to `u # v` for `u`, `v` over `alphabet`.
    pub fn rho(alphabet: &BTreeSet<Symbol>, a_prime: &[Symbol], sharp: Symbol) -> Fst {
        let letters: BTreeSet<Symbol> = alphabet.iter().copied().filter(|s| !s.is_marker()).collect();
        let mut t = Fst::new(letters.clone(), letters.clone());
        let before = t.add_state();
        let after = t.add_state();
        t.set_initial(before);
        t.set_final(after);
        for &a in &letters {
            t.add_transition(before, Some(a), Some(a), before);
            t.add_transition(after, Some(a), Some(a), after);
        }
        let mut cur = t.add_state();
        t.add_transition(before, Some(Symbol::marker(1)), None, cur);
        for &s in a_prime {
            let next = t.add_state();
            t.add_transition(cur, Some(s), None, next);
            cur = next;
        }
        t.add_transition(cur, Some(Symbol::marker(2)), Some(sharp), after);
        t
    }

    /// Replaces every occurrence of `from` by `to`, copying other letters of
    /// `alphabet`.
    pub fn replace_symbol(alphabet: &BTreeSet<Symbol>, from: Symbol, to: &[Symbol]) -> Fst {
        let mut all = alphabet.clone();
        all.insert(from);
        Fst::homomorphism(&all, |a| (a == from).then(|| to.to_vec()))
    }

    /// Checks that no ε-input cycle writes output.
    pub fn check_bounded(&self) -> Result<()> {
        let mut eps_adj = vec![Vec::new(); self.num_states];
        for &(p, i, _, q) in &self.transitions {
            if i.is_none() {
                eps_adj[p].push(q);
            }
        }
        for &(p, i, o, q) in &self.transitions {
            if i.is_none() && o.is_some() {
                let mut seen = vec![false; self.num_states];
                let mut stack = vec![q];
                seen[q] = true;
                while let Some(s) = stack.pop() {
                    if s == p {
                        return Err(Error::UnboundedTransducer { state: p });
                    }
                    for &r in &eps_adj[s] {
                        if !seen[r] {
                            seen[r] = true;
                            stack.push(r);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The relation with input and output exchanged.
    pub fn invert(&self) -> Result<Fst> {
        let t = Fst {
            in_alphabet: self.out_alphabet.clone(),
            out_alphabet: self.in_alphabet.clone(),
            num_states: self.num_states,
            transitions: self.transitions.iter().map(|&(p, i, o, q)| (p, o, i, q)).collect(),
            initials: self.initials.clone(),
            finals: self.finals.clone(),
        };
        t.check_bounded()?;
        Ok(t)
    }

    /// All outputs for input `w`.
    pub fn apply_word(&self, w: &[Symbol]) -> Result<BTreeSet<Word>> {
        if let Some(&s) = w.iter().find(|s| !self.in_alphabet.contains(s)) {
            return Err(Error::RejectedInput {
                symbol: s,
                context: "transducer",
            });
        }
        self.check_bounded()?;
        let mut adj = vec![Vec::new(); self.num_states];
        for &(p, i, o, q) in &self.transitions {
            adj[p].push((i, o, q));
        }
        let mut out = BTreeSet::new();
        let mut seen: HashSet<(StateId, usize, Word)> = HashSet::new();
        let mut queue: VecDeque<(StateId, usize, Word)> = VecDeque::new();
        for &s in &self.initials {
            if seen.insert((s, 0, Vec::new())) {
                queue.push_back((s, 0, Vec::new()));
            }
        }
        while let Some((s, pos, written)) = queue.pop_front() {
            if pos == w.len() && self.finals.contains(&s) {
                out.insert(written.clone());
            }
            for &(i, o, q) in &adj[s] {
                let next_pos = match i {
                    None => pos,
                    Some(a) if pos < w.len() && w[pos] == a => pos + 1,
                    Some(_) => continue,
                };
                let mut next = written.clone();
                next.extend(o);
                let key = (q, next_pos, next);
                if !seen.contains(&key) {
                    seen.insert(key.clone());
                    queue.push_back(key);
                }
            }
        }
        Ok(out)
    }
}

/// Non-marker letters of `alphabet`, excluding markers `#1..#k`.
fn segment_letters(alphabet: &BTreeSet<Symbol>, k: usize) -> BTreeSet<Symbol> {
    alphabet
        .iter()
        .copied()
        .filter(|s| !matches!(s.tag(), Tag::Marker(i) if i >= 1 && (i as usize) <= k))
        .collect()
}

/// The regular language `A* #1 A* ... #k A*` of k-shuffled words.
pub fn shuffle_language(alphabet: &BTreeSet<Symbol>, k: usize) -> Nfa {
    let letters = segment_letters(alphabet, k);
    let mut n = Nfa::empty(letters.clone());
    let states: Vec<StateId> = (0..=k).map(|_| n.add_state()).collect();
    n.set_initial(states[0]);
    n.set_final(states[k]);
    for i in 0..=k {
        for &a in &letters {
            n.add_transition(states[i], Some(a), states[i]);
        }
        if i < k {
            n.add_transition(states[i], Some(Symbol::marker(i as u8 + 1)), states[i + 1]);
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{alphabet, format_word, parse_word};

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn ws(items: &[&str]) -> BTreeSet<Word> {
        items.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn tau0_erases_subsets() {
        let t = Fst::tau0(&alphabet(["a", "#1", "#2"])).unwrap();
        assert_eq!(
            t.apply_word(&w("#1 a #1 #2")).unwrap(),
            ws(&["#1 a #1 #2", "a #1 #2", "#1 a #2", "a #2"])
        );
        assert_eq!(t.apply_word(&w("a #2")).unwrap(), ws(&["a #2"]));
        assert_eq!(t.apply_word(&w("#1 #1")).unwrap(), ws(&["#1 #1", "#1", ""]));
        assert!(Fst::tau0(&alphabet(["a", "#1"])).is_err());
    }

    #[test]
    fn identity_and_inverse() {
        let t = Fst::identity(&alphabet(["a", "b", "c"]));
        assert_eq!(t.apply_word(&w("a b c")).unwrap(), ws(&["a b c"]));
        let inv = t.invert().unwrap();
        assert_eq!(inv.apply_word(&w("c a")).unwrap(), ws(&["c a"]));
        assert!(t.apply_word(&w("z")).is_err());
    }

    #[test]
    fn tau0_inverse_is_unbounded() {
        let t = Fst::tau0(&alphabet(["a", "#1", "#2"])).unwrap();
        assert!(matches!(t.invert(), Err(Error::UnboundedTransducer { .. })));
    }

    #[test]
    fn mu_k_renames_segments() {
        let sigma = alphabet(["a", "b"]);
        let mu1 = Fst::mu_k(&sigma, 1).unwrap();
        let out = mu1.apply_word(&w("a b #1 b a")).unwrap();
        assert_eq!(out, ws(&["a~0 b~0 #1 b~1 a~1"]));
        let mu2 = Fst::mu_k(&sigma, 2).unwrap();
        assert_eq!(mu2.apply_word(&w("a #1 #2 b")).unwrap(), ws(&["a~0 #1 #2 b~2"]));
        assert_eq!(mu2.apply_word(&w("#1 #2")).unwrap(), ws(&["#1 #2"]));
        assert!(mu2.apply_word(&w("a #2 #1")).unwrap().is_empty());
        assert_ne!(
            mu1.apply_word(&w("a #1 b")).unwrap(),
            mu1.apply_word(&w("b #1 a")).unwrap()
        );
        let back = mu2.invert().unwrap();
        assert_eq!(back.apply_word(&w("a~0 #1 #2 b~2")).unwrap(), ws(&["a #1 #2 b"]));
    }

    #[test]
    fn rho_replaces_infix() {
        let sigma = alphabet(["x", "y", "e"]);
        let sharp = Symbol::marker(0);
        let t = Fst::rho(&sigma, &w("e"), sharp);
        let out = t.apply_word(&w("x #1 e #2 y")).unwrap();
        assert_eq!(out.iter().map(|v| format_word(v)).collect::<Vec<_>>(), ["x # y"]);
        assert!(t.apply_word(&w("x #1 x #2 y")).unwrap().is_empty());
        let t = Fst::rho(&sigma, &[], sharp);
        assert_eq!(t.apply_word(&w("x #1 #2 y")).unwrap(), ws(&["x # y"]));
    }

    #[test]
    fn long_outputs_use_chains() {
        let sigma = alphabet(["a", "b"]);
        let h = Fst::homomorphism(&sigma, |s| (s == Symbol::new("a")).then(|| w("b b b")));
        assert_eq!(h.apply_word(&w("a b")).unwrap(), ws(&["b b b b"]));
        h.check_bounded().unwrap();
    }

    #[test]
    fn shuffle_language_shape() {
        let n = shuffle_language(&alphabet(["a"]), 2);
        assert!(n.accepts(&w("a #1 #2 a a")).unwrap());
        assert!(!n.accepts(&w("a #2 #1")).unwrap());
    }
}
