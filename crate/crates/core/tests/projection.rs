mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{ex, example_alphabet, example_plant, spell};
use desobs::projection::{inverse_project, lookalike, project};
use desobs::supremal::is_normal;
use desobs::{Alphabet, Fsa, Lang, Word};
use proptest::prelude::*;

fn mixed() -> Arc<Alphabet> {
    Arc::new(
        Alphabet::from_flags([("a", true, true), ("u", false, false), ("b", true, false)]).unwrap(),
    )
}

fn arb_lang() -> impl Strategy<Value = Lang> {
    (1..=4usize).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec((0..n, 0..3usize, 0..n), 0..=3 * n),
        )
            .prop_map(move |(marked, trans)| {
                let marked = (0..n).filter(|&q| marked[q]);
                Fsa::new(mixed(), n, 0, marked, trans).unwrap().to_lang()
            })
    })
}

fn erase(alphabet: &Alphabet, w: &[usize]) -> Vec<String> {
    w.iter()
        .filter(|&&e| alphabet.is_observable(e))
        .map(|&e| alphabet.event(e).name().to_string())
        .collect()
}

fn names(l: &Lang, max_len: usize) -> BTreeSet<Vec<String>> {
    l.enumerate_strings(max_len)
        .iter()
        .map(|w| {
            w.iter()
                .map(|&e| l.alphabet().event(e).name().to_string())
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn projection_matches_string_erasure(
        words in proptest::collection::vec(proptest::collection::vec(0..3usize, 0..=5), 0..8)
    ) {
        let x = Lang::from_words(mixed(), words.iter().map(|w| w.as_slice())).unwrap();
        let erased: BTreeSet<Vec<String>> = words.iter().map(|w| erase(&mixed(), w)).collect();
        let px = project(&x);
        prop_assert!(px.is_finite());
        prop_assert_eq!(names(&px, 5), erased);
    }

    #[test]
    fn lookalike_is_a_closure_operator(x in arb_lang(), y in arb_lang()) {
        let lx = lookalike(&x);
        prop_assert!(x.is_subset(&lx).unwrap());
        prop_assert_eq!(lookalike(&lx), lx.clone());
        let xy = x.union(&y).unwrap();
        prop_assert!(lx.is_subset(&lookalike(&xy)).unwrap());
    }

    #[test]
    fn projection_is_monotone_and_union_preserving(x in arb_lang(), y in arb_lang()) {
        let xy = x.union(&y).unwrap();
        prop_assert!(project(&x).is_subset(&project(&xy)).unwrap());
        prop_assert_eq!(project(&xy), project(&x).union(&project(&y)).unwrap());
    }

    #[test]
    fn inverse_then_project_is_identity(x in arb_lang()) {
        let lo = project(&x);
        let back = inverse_project(&lo, x.alphabet()).unwrap();
        prop_assert_eq!(project(&back), lo);
        prop_assert!(x.is_subset(&back).unwrap());
    }

    #[test]
    fn lookalike_intersection_matches_normality(k in arb_lang(), h in arb_lang()) {
        let k = k.intersect(&h).unwrap();
        let exact = lookalike(&k).intersect(&h).unwrap() == k;
        prop_assert_eq!(is_normal(&k, &h).unwrap(), exact);
    }
}

#[test]
fn projection_examples() {
    let p = project(&ex(&["β2αβ5σ"]));
    let obs = p.alphabet().clone();
    assert_eq!(obs.len(), 3);
    assert_eq!(p, Lang::from_strs(obs.clone(), ["alpha sigma"]).unwrap());
    assert!(project(&Lang::empty(example_alphabet())).is_empty());

    let all_obs = Arc::new(Alphabet::from_flags([("a", true, false), ("b", true, true)]).unwrap());
    let l = Lang::from_strs(all_obs.clone(), ["a b", "b", "b b a"]).unwrap();
    assert_eq!(project(&l), l);
}

#[test]
fn projection_keeps_controllability_flags() {
    let p = project(&example_plant());
    for e in p.alphabet().events() {
        let original = example_alphabet().id(e.name()).unwrap();
        assert_eq!(e, example_alphabet().event(original));
    }
}

#[test]
fn projection_of_plant_against_string_erasure() {
    let m = example_plant();
    let a = m.alphabet().clone();
    let erased: BTreeSet<Vec<String>> = m
        .enumerate_strings(4)
        .iter()
        .map(|w| erase(&a, w))
        .collect();
    assert_eq!(names(&project(&m), 4), erased);
}

#[test]
fn inverse_projection_examples() {
    let a = example_alphabet();
    let obs = Arc::new(a.observable_subalphabet());
    let eps = Lang::from_strs(obs.clone(), ["eps"]).unwrap();
    let hidden = inverse_project(&eps, &a).unwrap();
    let hidden_ids: BTreeSet<usize> = a.ids().filter(|&e| !a.is_observable(e)).collect();
    for w in hidden.enumerate_strings(3) {
        assert!(w.iter().all(|e| hidden_ids.contains(e)));
    }
    assert_eq!(hidden.enumerate_strings(2).len(), 1 + 5 + 25);

    let ao = Lang::from_strs(obs.clone(), ["alpha sigma"]).unwrap();
    let inv = inverse_project(&ao, &a).unwrap();
    assert!(inv.contains_str(&spell("β2αβ5σ")).unwrap());
    assert!(inv.contains_str(&spell("β1ασ")).unwrap());
    assert_eq!(project(&inv), ao);
    assert!(inverse_project(&ao, &mixed()).is_err());
}

#[test]
fn lookalike_examples() {
    assert!(lookalike(&Lang::empty(example_alphabet())).is_empty());
    let cell = lookalike(&ex(&["β2αβ5σ"]));
    assert!(cell.contains_str(&spell("ασ")).unwrap());
    assert!(cell.contains_str(&spell("β1ασ")).unwrap());
    assert!(!cell.contains_str(&spell("γσ")).unwrap());
}

#[test]
fn empty_observable_alphabet_projects_to_epsilon() {
    let a = Arc::new(Alphabet::from_flags([("u", false, true), ("v", false, false)]).unwrap());
    let l = Lang::from_strs(a.clone(), ["u v", "v"]).unwrap();
    let p = project(&l);
    assert!(p.alphabet().is_empty());
    assert!(p.contains(&Word::new()).unwrap());
    assert_eq!(p.enumerate_strings(3), vec![Word::new()]);
    assert!(project(&Lang::empty(a.clone())).is_empty());
    assert_eq!(lookalike(&l), Lang::universal(a));
}
