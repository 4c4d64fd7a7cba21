//! Shared fixtures: the eight-event worked example and random finite problems.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use desobs::model::parse_model;
use desobs::oracle::{finite_to_lang, random_instance, FiniteLang, Instance};
use desobs::{Alphabet, Lang, Problem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn load(name: &str) -> Lang {
    let text = std::fs::read_to_string(data_path(name)).expect("fixture exists");
    parse_model(&text).expect("fixture parses").to_lang()
}

/// Plant of the worked example: α, γ, σ observable, β1..β5 hidden.
pub fn example_plant() -> Lang {
    load("example_plant.lang")
}

/// Specification: the plant without β4αβ5 and β4γβ5.
pub fn example_spec() -> Lang {
    load("example_spec.lang")
        .remap(example_plant().alphabet().clone())
        .unwrap()
}

pub fn example_problem() -> Problem {
    Problem::new(example_plant(), example_spec()).unwrap()
}

pub fn example_alphabet() -> Arc<Alphabet> {
    example_plant().alphabet().clone()
}

/// Writes the example's Greek names in the file's ASCII spelling.
pub fn spell(s: &str) -> String {
    if s == "ε" {
        return "eps".into();
    }
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        let name = match c {
            'α' => "alpha".to_string(),
            'γ' => "gamma".to_string(),
            'σ' => "sigma".to_string(),
            'β' => format!("beta{}", chars.next().expect("β carries an index")),
            other => panic!("unexpected symbol {other}"),
        };
        out.push(name);
    }
    out.join(" ")
}

/// Language over the example alphabet, written with Greek symbols.
pub fn ex(words: &[&str]) -> Lang {
    Lang::from_strs(example_alphabet(), words.iter().map(|w| spell(w))).unwrap()
}

pub fn ex_finite(words: &[&str]) -> FiniteLang {
    FiniteLang::from_strs(example_alphabet(), words.iter().map(|w| spell(w))).unwrap()
}

/// A random finite problem together with its automaton form.
pub struct RandomCase {
    pub seed: u64,
    pub instance: Instance,
    pub problem: Problem,
}

pub fn random_case(seed: u64) -> RandomCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instance = random_instance(&mut rng);
    let problem = Problem::new(
        finite_to_lang(&instance.plant),
        finite_to_lang(&instance.spec),
    )
    .unwrap();
    RandomCase {
        seed,
        instance,
        problem,
    }
}

/// All subsets of `base` when small, otherwise a seeded sample of them,
/// always including ∅ and `base`.
pub fn sublanguages(base: &FiniteLang, seed: u64, sample: usize) -> Vec<FiniteLang> {
    use rand::Rng;
    let items: Vec<_> = base.strings().iter().cloned().collect();
    let n = items.len();
    let pick = |mask: u64| {
        FiniteLang::new(
            base.alphabet().clone(),
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, w)| w.clone()),
        )
        .unwrap()
    };
    if n <= 8 {
        return (0..1u64 << n).map(pick).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let full = (1u64 << n) - 1;
    let mut out = vec![pick(0), pick(full)];
    out.extend((0..sample).map(|_| pick(rng.gen_range(0..=full))));
    out
}
