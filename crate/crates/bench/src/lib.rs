//! Inputs shared by the benchmarks in `benches/`.

use wordhyp_core::hyperbolic::{catalog, one_extend, StabiliserMap};
use wordhyp_core::oracle::{AlgebraKind, ConcreteAlgebra};
use wordhyp_core::symbol::alphabet;
use wordhyp_core::{HypStructure, Symbol};

/// One-letter trivial semigroup with an identity adjoined.
pub fn extended_trivial(letter: &str) -> HypStructure {
    let alg = ConcreteAlgebra::trivial(alphabet([letter]), AlgebraKind::Semigroup);
    let h = catalog::finite(&alg).expect("finite table");
    let a = Symbol::new(letter);
    one_extend(&h, &StabiliserMap::from([(a, vec![a])])).expect("stabiliser in combing").structure
}

pub fn free_groups() -> (HypStructure, HypStructure) {
    let s = Symbol::new;
    (catalog::free_group_rank1(s("x"), s("X")), catalog::free_group_rank1(s("y"), s("Y")))
}

pub fn bicyclics() -> (HypStructure, HypStructure) {
    let s = Symbol::new;
    (
        catalog::bicyclic_free(s("b1"), s("c1")).expect("bicyclic table"),
        catalog::bicyclic_free(s("b2"), s("c2")).expect("bicyclic table"),
    )
}
