//! Brute-force ground truth on explicit finite languages.
//!
//! Everything here works on sets of strings and evaluates the textbook
//! definitions directly (string-by-string projection, prefix sets, subset
//! enumeration). Nothing is shared with the automaton-based path except the
//! alphabet types and the two conversion functions at the bottom.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::alphabet::{Alphabet, Event, EventId, Word};
use crate::error::{Error, Result};
use crate::lang::Lang;

/// Subset enumeration is `2^n`; larger inputs are refused.
pub const MAX_ENUMERATION: usize = 20;

/// An explicit finite set of strings over an alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLang {
    alphabet: Arc<Alphabet>,
    strings: BTreeSet<Word>,
}

impl std::fmt::Debug for FiniteLang {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.to_strings()).finish()
    }
}

impl FiniteLang {
    pub fn new(
        alphabet: impl Into<Arc<Alphabet>>,
        strings: impl IntoIterator<Item = Word>,
    ) -> Result<Self> {
        let alphabet = alphabet.into();
        let strings: BTreeSet<Word> = strings.into_iter().collect();
        if let Some(&e) = strings.iter().flatten().find(|&&e| e >= alphabet.len()) {
            return Err(Error::UnknownEvent(format!("#{e}")));
        }
        Ok(Self { alphabet, strings })
    }

    pub fn from_strs<S: AsRef<str>>(
        alphabet: impl Into<Arc<Alphabet>>,
        words: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let alphabet = alphabet.into();
        let strings = words
            .into_iter()
            .map(|w| alphabet.parse_word(w.as_ref()))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Self { alphabet, strings })
    }

    fn with(&self, strings: BTreeSet<Word>) -> Self {
        Self {
            alphabet: self.alphabet.clone(),
            strings,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn strings(&self) -> &BTreeSet<Word> {
        &self.strings
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn contains(&self, word: &[EventId]) -> bool {
        self.strings.contains(word)
    }

    /// Members rendered with event names, in length-lexicographic order.
    pub fn to_strings(&self) -> Vec<String> {
        let mut words: Vec<&Word> = self.strings.iter().collect();
        words.sort_by(|a, b| self.alphabet.cmp_words(a, b));
        words
            .into_iter()
            .map(|w| self.alphabet.format_word(w))
            .collect()
    }

    pub fn closure(&self) -> Self {
        let mut out = BTreeSet::new();
        for w in &self.strings {
            for i in 0..=w.len() {
                out.insert(w[..i].to_vec());
            }
        }
        self.with(out)
    }

    pub fn is_subset(&self, other: &FiniteLang) -> bool {
        self.strings.is_subset(&other.strings)
    }

    pub fn intersect(&self, other: &FiniteLang) -> Self {
        self.with(self.strings.intersection(&other.strings).cloned().collect())
    }

    pub fn union(&self, other: &FiniteLang) -> Self {
        self.with(self.strings.union(&other.strings).cloned().collect())
    }

    pub fn difference(&self, other: &FiniteLang) -> Self {
        self.with(self.strings.difference(&other.strings).cloned().collect())
    }

    /// Natural projection of one string: drop unobservable events.
    pub fn project_word(&self, word: &[EventId]) -> Word {
        word.iter()
            .copied()
            .filter(|&e| self.alphabet.event(e).is_observable())
            .collect()
    }

    fn by_projection(&self) -> HashMap<Word, Vec<&Word>> {
        let mut groups: HashMap<Word, Vec<&Word>> = HashMap::new();
        for w in &self.strings {
            groups.entry(self.project_word(w)).or_default().push(w);
        }
        groups
    }
}

fn require_subset(a: &FiniteLang, b: &FiniteLang, what: &'static str) -> Result<()> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    if a.is_subset(b) {
        Ok(())
    } else {
        Err(Error::NotSubset(what))
    }
}

/// Relative observability by its string-level definition:
///
/// (i) `sσ ∈ K̄, s' ∈ C̄, s'σ ∈ M̄, P(s) = P(s')  ⇒  s'σ ∈ K̄`
///
/// (ii) `s ∈ K, s' ∈ C̄ ∩ M, P(s) = P(s')  ⇒  s' ∈ K`
pub fn check_relobs_definition(k: &FiniteLang, c: &FiniteLang, m: &FiniteLang) -> Result<bool> {
    require_subset(k, c, "candidate")?;
    require_subset(c, m, "specification")?;
    let kbar = k.closure();
    let cbar = c.closure();
    let mbar = m.closure();
    let cbar_groups = cbar.by_projection();

    for t in kbar.strings() {
        let Some((&sigma, s)) = t.split_last() else {
            continue;
        };
        let Some(lookalikes) = cbar_groups.get(&k.project_word(s)) else {
            continue;
        };
        for s2 in lookalikes {
            let mut ext = (*s2).clone();
            ext.push(sigma);
            if mbar.contains(&ext) && !kbar.contains(&ext) {
                return Ok(false);
            }
        }
    }

    let ambient = cbar.intersect(m);
    let ambient_groups = ambient.by_projection();
    for s in k.strings() {
        if let Some(lookalikes) = ambient_groups.get(&k.project_word(s)) {
            if lookalikes.iter().any(|s2| !k.contains(s2)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `[K'] ∩ h = K'` for `K' ⊆ h`.
pub fn is_normal_definition(k: &FiniteLang, h: &FiniteLang) -> bool {
    let groups = h.by_projection();
    k.strings().iter().all(|s| {
        groups
            .get(&k.project_word(s))
            .is_none_or(|ws| ws.iter().all(|w| k.contains(w)))
    })
}

pub fn is_closed_definition(l: &FiniteLang) -> bool {
    l.strings()
        .iter()
        .all(|w| (0..w.len()).all(|i| l.contains(&w[..i])))
}

/// `K̄Σ_u ∩ M̄ ⊆ K̄`.
pub fn is_controllable_definition(k: &FiniteLang, m: &FiniteLang) -> bool {
    let kbar = k.closure();
    let mbar = m.closure();
    let uncontrollable: Vec<EventId> = k.alphabet.uncontrollable_ids().collect();
    kbar.strings().iter().all(|s| {
        uncontrollable.iter().all(|&u| {
            let mut ext = s.clone();
            ext.push(u);
            !mbar.contains(&ext) || kbar.contains(&ext)
        })
    })
}

/// `F(K) = {s ∈ K̄ | D(s̄) ∩ M̄ ⊆ K̄}` string by string: a prefix `uσ` of `s`
/// puts into `D(s̄) ∩ M̄` every `tσ ∈ M̄` with `t ∈ C̄` and `P(t) = P(u)`.
pub fn f_operator_definition(k: &FiniteLang, c: &FiniteLang, m: &FiniteLang) -> Result<FiniteLang> {
    require_subset(k, c, "candidate")?;
    require_subset(c, m, "specification")?;
    let kbar = k.closure();
    let mbar = m.closure();
    let cbar = c.closure();
    let cbar_groups = cbar.by_projection();
    let keep = kbar
        .strings()
        .iter()
        .filter(|s| {
            (1..=s.len()).all(|i| {
                let (u, sigma) = (&s[..i - 1], s[i - 1]);
                cbar_groups.get(&k.project_word(u)).is_none_or(|ts| {
                    ts.iter().all(|t| {
                        let mut ext = (*t).clone();
                        ext.push(sigma);
                        !mbar.contains(&ext) || kbar.contains(&ext)
                    })
                })
            })
        })
        .cloned()
        .collect();
    Ok(kbar.with(keep))
}

/// Union of all subsets of `base` satisfying `holds`. Each property checked
/// here is closed under union, so the union is the supremal member.
fn union_of_satisfying(
    base: &FiniteLang,
    holds: impl Fn(&FiniteLang) -> bool,
) -> Result<FiniteLang> {
    let items: Vec<&Word> = base.strings().iter().collect();
    if items.len() > MAX_ENUMERATION {
        return Err(Error::SizeCap {
            size: items.len(),
            cap: MAX_ENUMERATION,
        });
    }
    let mut acc = BTreeSet::new();
    for mask in 0u32..(1u32 << items.len()) {
        // subsets of what is already collected cannot add anything new
        let subset: BTreeSet<Word> = items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, w)| (*w).clone())
            .collect();
        if subset.is_subset(&acc) {
            continue;
        }
        let candidate = base.with(subset);
        if holds(&candidate) {
            acc.extend(candidate.strings);
        }
    }
    Ok(base.with(acc))
}

pub fn brute_sup_relobs(c: &FiniteLang, m: &FiniteLang) -> Result<FiniteLang> {
    require_subset(c, m, "specification")?;
    union_of_satisfying(c, |k| check_relobs_definition(k, c, m).expect("k ⊆ c ⊆ m"))
}

pub fn brute_sup_normal(k: &FiniteLang, h: &FiniteLang) -> Result<FiniteLang> {
    require_subset(k, h, "normality operand")?;
    union_of_satisfying(k, |x| is_normal_definition(x, h))
}

pub fn brute_sup_closed(l: &FiniteLang) -> Result<FiniteLang> {
    union_of_satisfying(l, is_closed_definition)
}

pub fn brute_sup_controllable(k: &FiniteLang, m: &FiniteLang) -> Result<FiniteLang> {
    require_subset(k, m, "controllability operand")?;
    union_of_satisfying(k, |x| is_controllable_definition(x, m))
}

pub fn brute_sup_ctrl_relobs(c: &FiniteLang, m: &FiniteLang) -> Result<FiniteLang> {
    require_subset(c, m, "specification")?;
    union_of_satisfying(c, |k| {
        is_controllable_definition(k, m) && check_relobs_definition(k, c, m).expect("k ⊆ c ⊆ m")
    })
}

/// Bridge: the canonical recognizer of a finite set of strings.
pub fn finite_to_lang(f: &FiniteLang) -> Lang {
    Lang::from_words(f.alphabet.clone(), f.strings.iter().map(|w| w.as_slice()))
        .expect("members are over the alphabet")
}

/// Members of `l` up to `max_len`, and whether longer members were cut off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounded {
    pub lang: FiniteLang,
    pub truncated: bool,
}

pub fn lang_to_finite(l: &Lang, max_len: usize) -> Bounded {
    let words = l.enumerate_strings(max_len);
    let truncated = l.longest_member_len().is_none_or(|n| n > max_len);
    Bounded {
        lang: FiniteLang {
            alphabet: l.alphabet().clone(),
            strings: words.into_iter().collect(),
        },
        truncated,
    }
}

/// Exact conversion; fails if `l` has a member longer than `max_len`.
pub fn lang_to_finite_exact(l: &Lang, max_len: usize) -> Result<FiniteLang> {
    let bounded = lang_to_finite(l, max_len);
    if bounded.truncated {
        return Err(Error::NotFinite(max_len));
    }
    Ok(bounded.lang)
}

/// A random finite problem: plant `M` and specification `C ⊆ M`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub alphabet: Arc<Alphabet>,
    pub plant: FiniteLang,
    pub spec: FiniteLang,
}

/// Alphabet of 2–4 events with random flags; `M` has at most 10 strings of
/// length at most 4; `C` is a random subset of `M`.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R) -> Instance {
    let size = rng.gen_range(2..=4);
    let events: Vec<Event> = (0..size)
        .map(|i| {
            Event::new(format!("e{i}"), rng.gen_bool(0.6), rng.gen_bool(0.6))
                .expect("generated names are valid")
        })
        .collect();
    let alphabet = Arc::new(Alphabet::new(events).expect("nonempty, unique"));

    let target = rng.gen_range(1..=10);
    let mut plant = BTreeSet::new();
    for _ in 0..target {
        let len = rng.gen_range(0..=4);
        let word: Word = (0..len).map(|_| rng.gen_range(0..size)).collect();
        // bias towards shared prefixes so lookalikes actually occur
        if rng.gen_bool(0.5) {
            if let Some(base) = plant.iter().cloned().collect::<Vec<Word>>().choose(rng) {
                let mut w = base.clone();
                w.truncate(rng.gen_range(0..=base.len()));
                while w.len() < 4 && rng.gen_bool(0.6) {
                    w.push(rng.gen_range(0..size));
                }
                plant.insert(w);
                continue;
            }
        }
        plant.insert(word);
    }
    let spec: BTreeSet<Word> = plant
        .iter()
        .filter(|_| rng.gen_bool(0.7))
        .cloned()
        .collect();
    Instance {
        plant: FiniteLang {
            alphabet: alphabet.clone(),
            strings: plant,
        },
        spec: FiniteLang {
            alphabet: alphabet.clone(),
            strings: spec,
        },
        alphabet,
    }
}
