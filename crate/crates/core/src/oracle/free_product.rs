use std::collections::{BTreeMap, BTreeSet};

use super::algebra::{ConcreteAlgebra, NormalForm};
use crate::error::{Error, Result};
use crate::hyperbolic::Kind;
use crate::symbol::{Symbol, Word};

/// Alternating sequence of factor elements, tagged with the factor index
/// (0 or 1). The empty sequence is the identity in monoid kind.
pub type FpElement = Vec<(u8, NormalForm)>;

/// Multiplication of a triple `u · v = x` in terms of alternating factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// Boundary blocks come from different factors; factors are concatenated.
    Concatenation,
    /// Boundary blocks share a factor and multiply to a non-identity.
    Merge,
    /// Boundary blocks share a factor and cancel to the identity.
    Cancellation,
}

/// Semigroup or monoid free product of two concrete algebras over disjoint
/// alphabets.
#[derive(Clone, Debug)]
pub struct FreeProductOracle {
    factors: [ConcreteAlgebra; 2],
    kind: Kind,
    owner: BTreeMap<Symbol, u8>,
}

impl FreeProductOracle {
    pub fn new(first: ConcreteAlgebra, second: ConcreteAlgebra, kind: Kind) -> Result<FreeProductOracle> {
        if let Some(&a) = first.alphabet().intersection(second.alphabet()).next() {
            return Err(Error::AlphabetOverlap(a));
        }
        if kind == Kind::Monoid && (first.identity().is_none() || second.identity().is_none()) {
            return Err(Error::Precondition("monoid free product needs monoid factors".into()));
        }
        let owner = first
            .alphabet()
            .iter()
            .map(|&a| (a, 0))
            .chain(second.alphabet().iter().map(|&a| (a, 1)))
            .collect();
        Ok(FreeProductOracle {
            factors: [first, second],
            kind,
            owner,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn factor(&self, i: u8) -> &ConcreteAlgebra {
        &self.factors[i as usize]
    }

    pub fn alphabet(&self) -> BTreeSet<Symbol> {
        self.owner.keys().copied().collect()
    }

    pub fn factor_of(&self, a: Symbol) -> Option<u8> {
        self.owner.get(&a).copied()
    }

    fn is_factor_identity(&self, i: u8, x: &NormalForm) -> bool {
        self.kind == Kind::Monoid && self.factors[i as usize].identity().as_ref() == Some(x)
    }

    /// Product of two alternating sequences.
    pub fn multiply(&self, s: &FpElement, t: &FpElement) -> FpElement {
        let mut left = s.clone();
        let mut right = t.iter().cloned().peekable();
        loop {
            match (left.last(), right.peek()) {
                (Some((i, x)), Some((j, y))) if i == j => {
                    let p = self.factors[*i as usize].multiply(x, y);
                    let i = *i;
                    right.next();
                    left.pop();
                    if !self.is_factor_identity(i, &p) {
                        left.push((i, p));
                        break;
                    }
                }
                _ => break,
            }
        }
        left.extend(right);
        left
    }

    /// Value of a word, letter by letter.
    pub fn eval(&self, w: &[Symbol]) -> Result<FpElement> {
        let mut acc = Vec::new();
        for &a in w {
            let i = self.factor_of(a).ok_or(Error::RejectedInput {
                symbol: a,
                context: "free product",
            })?;
            let x = self.factors[i as usize].letter(a)?;
            let single = if self.is_factor_identity(i, &x) { Vec::new() } else { vec![(i, x)] };
            acc = self.multiply(&acc, &single);
        }
        Ok(acc)
    }

    /// Maximal blocks of letters from one factor.
    pub fn factorize(&self, w: &[Symbol]) -> Vec<(u8, Word)> {
        let mut out: Vec<(u8, Word)> = Vec::new();
        for &a in w {
            let i = self.factor_of(a).expect("letter of the free product");
            match out.last_mut() {
                Some((j, block)) if *j == i => block.push(a),
                _ => out.push((i, vec![a])),
            }
        }
        out
    }

    fn block_values(&self, w: &[Symbol]) -> Vec<(u8, NormalForm)> {
        self.factorize(w)
            .into_iter()
            .map(|(i, b)| {
                let v = self.factors[i as usize].as_semigroup().eval(&b).expect("letters checked");
                (i, v)
            })
            .collect()
    }

    /// Whether every block of `w` is a non-identity element (always true in
    /// semigroup kind).
    pub fn is_reduced(&self, w: &[Symbol]) -> bool {
        self.block_values(w).iter().all(|(i, x)| !self.is_factor_identity(*i, x))
    }

    /// Which of the multiplication cases describe `u · v = x`, for reduced
    /// alternating words. `None` if some word is not reduced.
    pub fn cases(&self, u: &[Symbol], v: &[Symbol], x: &[Symbol]) -> Option<Vec<Case>> {
        if !(self.is_reduced(u) && self.is_reduced(v) && self.is_reduced(x)) {
            return None;
        }
        let (bu, bv, bx) = (self.block_values(u), self.block_values(v), self.block_values(x));
        let mut out = Vec::new();

        let concat: Vec<(u8, NormalForm)> = bu.iter().chain(&bv).cloned().collect();
        if concat == bx {
            out.push(Case::Concatenation);
        }
        if let (Some((i, p)), Some((j, q))) = (bu.last(), bv.first()) {
            if i == j {
                let prod = self.factors[*i as usize].multiply(p, q);
                if self.is_factor_identity(*i, &prod) {
                    let fu = self.factorize(u);
                    let fv = self.factorize(v);
                    let u2: Word = fu[..fu.len() - 1].iter().flat_map(|(_, b)| b.clone()).collect();
                    let v2: Word = fv[1..].iter().flat_map(|(_, b)| b.clone()).collect();
                    let lhs = self.multiply(&self.eval(&u2).ok()?, &self.eval(&v2).ok()?);
                    if lhs == self.eval(x).ok()? {
                        out.push(Case::Cancellation);
                    }
                } else {
                    let mut merged: Vec<(u8, NormalForm)> = bu[..bu.len() - 1].to_vec();
                    merged.push((*i, prod));
                    merged.extend(bv[1..].iter().cloned());
                    if merged == bx {
                        out.push(Case::Merge);
                    }
                }
            }
        }
        Some(out)
    }
}
