mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use wordhyp_core::hyperbolic::{catalog, mon_free_product, MonoidMode};
use wordhyp_core::oracle::{brute_table, AlgebraKind, Case, ConcreteAlgebra, FreeProductOracle};
use wordhyp_core::symbol::{alphabet, split_table_word};
use wordhyp_core::{Kind, Symbol, Word};

fn s(n: &str) -> Symbol {
    Symbol::new(n)
}

fn free_groups(kind: Kind) -> FreeProductOracle {
    let gx = ConcreteAlgebra::free_group(&[(s("x"), s("X"))]);
    let gy = ConcreteAlgebra::free_group(&[(s("y"), s("Y"))]);
    FreeProductOracle::new(gx, gy, kind).unwrap()
}

fn bicyclics(kind: Kind) -> FreeProductOracle {
    let b1 = ConcreteAlgebra::bicyclic(s("b1"), s("c1"));
    let b2 = ConcreteAlgebra::bicyclic(s("b2"), s("c2"));
    FreeProductOracle::new(b1, b2, kind).unwrap()
}

fn mixed_semigroup() -> FreeProductOracle {
    FreeProductOracle::new(
        ConcreteAlgebra::left_zero(alphabet(["l", "m"])),
        catalog::cyclic2(s("i"), s("g")),
        Kind::Semigroup,
    )
    .unwrap()
}

fn word_over(letters: &'static [&'static str], max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(letters), 0..=max_len)
        .prop_map(|names| names.into_iter().map(Symbol::new).collect())
}

fn nonempty_over(letters: &'static [&'static str], max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(letters), 1..=max_len)
        .prop_map(|names| names.into_iter().map(Symbol::new).collect())
}

const GROUP_LETTERS: &[&str] = &["x", "X", "y", "Y"];
const BICYCLIC_LETTERS: &[&str] = &["b1", "c1", "b2", "c2"];
const MIXED_LETTERS: &[&str] = &["l", "m", "i", "g"];

fn check_associative(fp: &FreeProductOracle, u: &Word, v: &Word, x: &Word) -> Result<(), TestCaseError> {
    let (pu, pv, px) = (fp.eval(u).unwrap(), fp.eval(v).unwrap(), fp.eval(x).unwrap());
    prop_assert_eq!(fp.multiply(&fp.multiply(&pu, &pv), &px), fp.multiply(&pu, &fp.multiply(&pv, &px)));
    prop_assert_eq!(fp.eval(&[u.as_slice(), v].concat()).unwrap(), fp.multiply(&pu, &pv));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn monoid_products_are_associative(
        u in word_over(GROUP_LETTERS, 4), v in word_over(GROUP_LETTERS, 4), x in word_over(GROUP_LETTERS, 4),
        p in word_over(BICYCLIC_LETTERS, 4), q in word_over(BICYCLIC_LETTERS, 4), r in word_over(BICYCLIC_LETTERS, 4),
    ) {
        check_associative(&free_groups(Kind::Monoid), &u, &v, &x)?;
        check_associative(&bicyclics(Kind::Monoid), &p, &q, &r)?;
    }

    #[test]
    fn semigroup_products_are_associative(
        u in nonempty_over(MIXED_LETTERS, 4), v in nonempty_over(MIXED_LETTERS, 4), x in nonempty_over(MIXED_LETTERS, 4),
        p in nonempty_over(GROUP_LETTERS, 4), q in nonempty_over(GROUP_LETTERS, 4), r in nonempty_over(GROUP_LETTERS, 4),
    ) {
        check_associative(&mixed_semigroup(), &u, &v, &x)?;
        check_associative(&free_groups(Kind::Semigroup), &p, &q, &r)?;
    }

    #[test]
    fn kinds_agree_without_boundary_cancellation(u in nonempty_over(BICYCLIC_LETTERS, 4), v in nonempty_over(BICYCLIC_LETTERS, 4)) {
        let (mon, sgp) = (bicyclics(Kind::Monoid), bicyclics(Kind::Semigroup));
        prop_assume!(mon.is_reduced(&u) && mon.is_reduced(&v));
        let cases = mon.cases(&u, &v, &[u.as_slice(), &v].concat());
        let uv = [u.as_slice(), &v].concat();
        let cancels = mon.factor_of(*u.last().unwrap()) == mon.factor_of(v[0]) && {
            let i = mon.factor_of(v[0]).unwrap();
            let blocks_u = mon.factorize(&u);
            let blocks_v = mon.factorize(&v);
            let alg = mon.factor(i);
            let prod = alg.multiply(&alg.eval(&blocks_u.last().unwrap().1).unwrap(), &alg.eval(&blocks_v[0].1).unwrap());
            alg.is_identity(&prod)
        };
        prop_assume!(!cancels);
        prop_assert!(cases.is_some());
        prop_assert_eq!(mon.eval(&uv).unwrap(), sgp.eval(&uv).unwrap());
    }
}

/// Every oracle-true triple of reduced words falls in exactly one case.
#[test]
fn case_split_is_a_partition() {
    const BOUND: usize = 8;
    let mut skipped = 0usize;
    let mut counts = [0usize; 3];
    for (fp, h) in [
        (
            free_groups(Kind::Monoid),
            mon_free_product(
                &catalog::free_group_rank1(s("x"), s("X")),
                &catalog::free_group_rank1(s("y"), s("Y")),
                MonoidMode::OneUnique,
            )
            .unwrap(),
        ),
        (
            bicyclics(Kind::Monoid),
            mon_free_product(
                &catalog::bicyclic_free(s("b1"), s("c1")).unwrap(),
                &catalog::bicyclic_free(s("b2"), s("c2")).unwrap(),
                MonoidMode::Star,
            )
            .unwrap(),
        ),
    ] {
        let oracle = fp.clone().into();
        // the star combing is much larger, so it gets a shorter bound
        let bound = if h.flags().star { 6 } else { BOUND };
        for t in brute_table(&oracle, h.combing(), bound).unwrap() {
            let (u, v, x) = split_table_word(&t).unwrap();
            match fp.cases(&u, &v, &x) {
                None => skipped += 1,
                Some(cases) => {
                    assert_eq!(cases.len(), 1, "{t:?} {cases:?}");
                    let slot = match cases[0] {
                        Case::Concatenation => 0,
                        Case::Merge => 1,
                        Case::Cancellation => 2,
                    };
                    counts[slot] += 1;
                }
            }
        }
    }
    assert!(counts.iter().all(|&c| c > 0), "{counts:?}");
    assert!(skipped > 0);
}

fn check_homomorphism(alg: &ConcreteAlgebra, max_len: usize) {
    let words = all_words(alg.alphabet(), max_len);
    for u in &words {
        for v in &words {
            if alg.kind() == AlgebraKind::Semigroup && (u.is_empty() || v.is_empty()) {
                continue;
            }
            let lhs = alg.eval(&[u.as_slice(), v].concat()).unwrap();
            let rhs = alg.multiply(&alg.eval(u).unwrap(), &alg.eval(v).unwrap());
            assert_eq!(lhs, rhs, "{u:?} {v:?}");
        }
    }
}

#[test]
fn evaluation_is_a_homomorphism() {
    check_homomorphism(&ConcreteAlgebra::bicyclic(s("b"), s("c")), 4);
    check_homomorphism(&ConcreteAlgebra::free_group(&[(s("x"), s("X"))]), 4);
    check_homomorphism(&ConcreteAlgebra::free_monoid(alphabet(["a", "b"])), 4);
    check_homomorphism(&ConcreteAlgebra::left_zero(alphabet(["l", "m"])), 4);
    check_homomorphism(&catalog::cyclic2(s("i"), s("g")), 4);
    check_homomorphism(&catalog::semilattice2(s("j"), s("z")), 4);
}

#[test]
fn spec_examples() {
    let bic = ConcreteAlgebra::bicyclic(s("b"), s("c"));
    assert!(bic.is_identity(&bic.eval(&w("b c")).unwrap()));
    assert!(!bic.is_identity(&bic.eval(&w("c b")).unwrap()));
    assert_eq!(bic.eval(&w("c b b c")).unwrap(), bic.eval(&w("c b")).unwrap());

    let fg = free_groups(Kind::Monoid);
    assert_eq!(fg.eval(&w("x y Y X")).unwrap(), Vec::new());
    assert_eq!(fg.cases(&w("x y"), &w("Y X"), &[]), Some(vec![Case::Cancellation]));
    assert_eq!(fg.cases(&w("x"), &w("y"), &w("x y")), Some(vec![Case::Concatenation]));
    assert_eq!(fg.cases(&w("x"), &w("x"), &w("x x")), Some(vec![Case::Merge]));
    assert_eq!(fg.cases(&w("x X"), &w("y"), &w("y")), None);

    let bad = ConcreteAlgebra::cayley(
        vec!["p".into(), "q".into()],
        vec![vec![1, 0], vec![1, 1]],
        [(s("p"), 0)].into_iter().collect(),
        AlgebraKind::Semigroup,
    );
    assert!(bad.is_err());

    let overlap = FreeProductOracle::new(bic.clone(), bic, Kind::Monoid);
    assert!(overlap.is_err());
    let no_identity = FreeProductOracle::new(
        ConcreteAlgebra::left_zero(alphabet(["l"])),
        ConcreteAlgebra::free_monoid(alphabet(["a"])),
        Kind::Monoid,
    );
    assert!(no_identity.is_err());
    let letters: BTreeSet<Symbol> = mixed_semigroup().alphabet();
    assert_eq!(letters.len(), 4);
}
