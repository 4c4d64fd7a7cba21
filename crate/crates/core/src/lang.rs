//! Canonical regular-language values.
//!
//! A [`Lang`] is stored as the minimal complete DFA of its marked language,
//! states numbered breadth-first from the initial state in alphabet order.
//! Equal languages over the same alphabet therefore have identical tables, and
//! the state count is the Nerode index `||L||` (dump state included).

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, EventId, Word};
use crate::error::{Error, Result};
use crate::fsa::{subset_construction, Fsa, Nfa, RawDfa};

#[derive(Clone, PartialEq, Eq)]
pub struct Lang {
    alphabet: Arc<Alphabet>,
    dfa: RawDfa,
}

impl fmt::Debug for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Lang");
        d.field("states", &self.num_states());
        match self.finite_members(64) {
            Some(words) => d.field(
                "members",
                &words
                    .iter()
                    .map(|w| self.alphabet.format_word(w))
                    .collect::<Vec<_>>(),
            ),
            None => d.field("members", &"<infinite or large>"),
        };
        d.finish()
    }
}

impl Lang {
    pub(crate) fn from_raw(alphabet: Arc<Alphabet>, raw: &RawDfa) -> Self {
        debug_assert_eq!(raw.k, alphabet.len());
        Self {
            alphabet,
            dfa: raw.canonical(),
        }
    }

    pub(crate) fn raw(&self) -> &RawDfa {
        &self.dfa
    }

    pub fn from_fsa(fsa: &Fsa) -> Self {
        let raw = subset_construction(&fsa.to_nfa());
        Self::from_raw(fsa.alphabet().clone(), &raw)
    }

    /// The empty language ∅.
    pub fn empty(alphabet: impl Into<Arc<Alphabet>>) -> Self {
        let alphabet = alphabet.into();
        let k = alphabet.len();
        Self {
            alphabet,
            dfa: RawDfa {
                k,
                initial: 0,
                delta: vec![0; k],
                marked: vec![false],
            },
        }
    }

    /// Σ*.
    pub fn universal(alphabet: impl Into<Arc<Alphabet>>) -> Self {
        Self::empty(alphabet).complement()
    }

    /// The finite language listing exactly `words` (built as a trie).
    pub fn from_words<'a>(
        alphabet: impl Into<Arc<Alphabet>>,
        words: impl IntoIterator<Item = &'a [EventId]>,
    ) -> Result<Self> {
        let alphabet = alphabet.into();
        let k = alphabet.len();
        // state 0 is the dump, state 1 the root
        let mut delta = vec![0; 2 * k];
        let mut marked = vec![false, false];
        for word in words {
            let mut q = 1;
            for &e in word {
                if e >= k {
                    return Err(Error::UnknownEvent(format!("#{e}")));
                }
                let t = delta[q * k + e];
                q = if t == 0 {
                    let fresh = marked.len();
                    marked.push(false);
                    delta.extend(std::iter::repeat_n(0, k));
                    delta[q * k + e] = fresh;
                    fresh
                } else {
                    t
                };
            }
            marked[q] = true;
        }
        let raw = RawDfa {
            k,
            initial: 1,
            delta,
            marked,
        };
        Ok(Self::from_raw(alphabet, &raw))
    }

    /// Parses each item as a whitespace-separated word (`eps` for ε).
    pub fn from_strs<S: AsRef<str>>(
        alphabet: impl Into<Arc<Alphabet>>,
        words: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let alphabet = alphabet.into();
        let parsed = words
            .into_iter()
            .map(|w| alphabet.parse_word(w.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_words(alphabet, parsed.iter().map(|w| w.as_slice()))
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// `||L||`: states of the minimal complete recognizer.
    pub fn num_states(&self) -> usize {
        self.dfa.num_states()
    }

    /// The canonical recognizer as an automaton.
    pub fn recognizer(&self) -> Fsa {
        self.dfa.clone().into_fsa(self.alphabet.clone())
    }

    fn same_alphabet(&self, other: &Lang) -> Result<()> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    fn product(&self, other: &Lang, keep: impl Fn(bool, bool) -> bool) -> Result<Lang> {
        self.same_alphabet(other)?;
        let k = self.alphabet.len();
        let (a, b) = (&self.dfa, &other.dfa);
        let nb = b.num_states();
        let mut index = vec![usize::MAX; a.num_states() * nb];
        let mut pairs = vec![(a.initial, b.initial)];
        index[a.initial * nb + b.initial] = 0;
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for e in 0..k {
                let (p2, q2) = (a.next(p, e), b.next(q, e));
                let slot = p2 * nb + q2;
                if index[slot] == usize::MAX {
                    index[slot] = pairs.len();
                    pairs.push((p2, q2));
                }
                delta.push(index[slot]);
            }
            i += 1;
        }
        let marked = pairs
            .iter()
            .map(|&(p, q)| keep(a.marked[p], b.marked[q]))
            .collect();
        let raw = RawDfa {
            k,
            initial: 0,
            delta,
            marked,
        };
        Ok(Lang::from_raw(self.alphabet.clone(), &raw))
    }

    pub fn intersect(&self, other: &Lang) -> Result<Lang> {
        self.product(other, |x, y| x && y)
    }

    pub fn union(&self, other: &Lang) -> Result<Lang> {
        self.product(other, |x, y| x || y)
    }

    pub fn difference(&self, other: &Lang) -> Result<Lang> {
        self.product(other, |x, y| x && !y)
    }

    /// `Σ* − L`. Flipping the marking of a minimal complete DFA keeps it minimal.
    pub fn complement(&self) -> Lang {
        let mut dfa = self.dfa.clone();
        for m in dfa.marked.iter_mut() {
            *m = !*m;
        }
        Lang {
            alphabet: self.alphabet.clone(),
            dfa,
        }
    }

    /// `L̄`: every state on a path to marking becomes marked.
    pub fn prefix_closure(&self) -> Lang {
        let mut dfa = self.dfa.clone();
        dfa.marked = dfa.coreachable();
        Lang::from_raw(self.alphabet.clone(), &dfa)
    }

    pub fn is_closed(&self) -> bool {
        self.dfa.coreachable() == self.dfa.marked
    }

    /// `L̄.σ = {sσ | s ∈ L̄}`: a fresh state `q*` receives a σ-transition from
    /// every state of the closure recognizer and is the only marked state; the
    /// resulting nondeterministic automaton goes through subset construction.
    pub fn append_event(&self, sigma: EventId) -> Result<Lang> {
        if sigma >= self.alphabet.len() {
            return Err(Error::UnknownEvent(format!("#{sigma}")));
        }
        let k = self.alphabet.len();
        let closure = self.prefix_closure();
        let dfa = &closure.dfa;
        let n = dfa.num_states();
        let star = n;
        let mut nfa = Nfa::new(k, n + 1);
        nfa.initial = vec![dfa.initial];
        nfa.marked[star] = true;
        for q in 0..n {
            for e in 0..k {
                nfa.succ[q].push((e, dfa.next(q, e)));
            }
            // states outside L̄ (the dump) are excluded
            if dfa.marked[q] {
                nfa.succ[q].push((sigma, star));
            }
        }
        Ok(Lang::from_raw(
            self.alphabet.clone(),
            &subset_construction(&nfa),
        ))
    }

    pub fn is_empty(&self) -> bool {
        !self.dfa.marked.iter().any(|&m| m)
    }

    pub fn is_subset(&self, other: &Lang) -> Result<bool> {
        Ok(self.difference_witness(other)?.is_none())
    }

    /// Shortest string in `self − other` (ties broken by alphabet order).
    pub fn difference_witness(&self, other: &Lang) -> Result<Option<Word>> {
        self.same_alphabet(other)?;
        let k = self.alphabet.len();
        let (a, b) = (&self.dfa, &other.dfa);
        let nb = b.num_states();
        let mut parent: Vec<Option<(usize, EventId)>> = vec![None; a.num_states() * nb];
        let mut seen = vec![false; a.num_states() * nb];
        let root = a.initial * nb + b.initial;
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(slot) = queue.pop_front() {
            let (p, q) = (slot / nb, slot % nb);
            if a.marked[p] && !b.marked[q] {
                let mut word = Vec::new();
                let mut cur = slot;
                while let Some((prev, e)) = parent[cur] {
                    word.push(e);
                    cur = prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            for e in 0..k {
                let next = a.next(p, e) * nb + b.next(q, e);
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = Some((slot, e));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    /// Language equality: canonical recognizers are identical.
    pub fn is_equal(&self, other: &Lang) -> Result<bool> {
        self.same_alphabet(other)?;
        Ok(self.dfa == other.dfa)
    }

    pub fn contains(&self, word: &[EventId]) -> Result<bool> {
        let mut q = self.dfa.initial;
        for &e in word {
            if e >= self.alphabet.len() {
                return Err(Error::UnknownEvent(format!("#{e}")));
            }
            q = self.dfa.next(q, e);
        }
        Ok(self.dfa.marked[q])
    }

    /// Membership of a whitespace-separated word given by event names.
    pub fn contains_str(&self, word: &str) -> Result<bool> {
        self.contains(&self.alphabet.parse_word(word)?)
    }

    pub fn shortest_member(&self) -> Option<Word> {
        self.difference_witness(&Lang::empty(self.alphabet.clone()))
            .expect("same alphabet")
    }

    /// All members of length at most `max_len`, in length-lexicographic order
    /// of event names.
    pub fn enumerate_strings(&self, max_len: usize) -> Vec<Word> {
        let co = self.dfa.coreachable();
        let mut out = Vec::new();
        let mut level: Vec<(Word, usize)> = Vec::new();
        if co[self.dfa.initial] {
            level.push((Vec::new(), self.dfa.initial));
        }
        for len in 0..=max_len {
            for (w, q) in &level {
                if self.dfa.marked[*q] {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &level {
                for e in self.alphabet.ids() {
                    let t = self.dfa.next(*q, e);
                    if co[t] {
                        let mut w2 = w.clone();
                        w2.push(e);
                        next.push((w2, t));
                    }
                }
            }
            level = next;
        }
        out.sort_by(|a, b| self.alphabet.cmp_words(a, b));
        out
    }

    /// Length of the longest member, or `None` if the language is infinite.
    /// The empty language has longest length `Some(0)` by convention.
    pub fn longest_member_len(&self) -> Option<usize> {
        let co = self.dfa.coreachable();
        let n = self.num_states();
        // longest path in the trim part; a cycle there means infinite
        let mut depth: Vec<Option<usize>> = vec![None; n];
        let mut on_stack = vec![false; n];
        fn visit(
            q: usize,
            dfa: &RawDfa,
            co: &[bool],
            depth: &mut [Option<usize>],
            on_stack: &mut [bool],
        ) -> Option<usize> {
            if let Some(d) = depth[q] {
                return Some(d);
            }
            if on_stack[q] {
                return None;
            }
            on_stack[q] = true;
            let mut best = 0;
            for e in 0..dfa.k {
                let t = dfa.next(q, e);
                if co[t] {
                    best = best.max(visit(t, dfa, co, depth, on_stack)? + 1);
                }
            }
            on_stack[q] = false;
            depth[q] = Some(best);
            Some(best)
        }
        if !co[self.dfa.initial] {
            return Some(0);
        }
        visit(self.dfa.initial, &self.dfa, &co, &mut depth, &mut on_stack)
    }

    pub fn is_finite(&self) -> bool {
        self.longest_member_len().is_some()
    }

    /// All members if the language is finite with at most `limit` members.
    pub fn finite_members(&self, limit: usize) -> Option<Vec<Word>> {
        let len = self.longest_member_len()?;
        let words = self.enumerate_strings(len);
        (words.len() <= limit).then_some(words)
    }

    pub fn format_members(&self, words: &[Word]) -> Vec<String> {
        words.iter().map(|w| self.alphabet.format_word(w)).collect()
    }

    /// Same language over a different alphabet with identical events in
    /// possibly different order, or a superset of events.
    pub fn remap(&self, target: impl Into<Arc<Alphabet>>) -> Result<Lang> {
        let target = target.into();
        let mut map = vec![None; target.len()];
        for (id, event) in self.alphabet.events().iter().enumerate() {
            let t = target.id(event.name())?;
            if target.event(t) != event {
                return Err(Error::FlagConflict {
                    name: event.name().to_string(),
                    detail: format!("declared as `{}` and `{}`", event, target.event(t)),
                });
            }
            map[t] = Some(id);
        }
        let k = target.len();
        let n = self.num_states();
        // events absent from the source alphabet lead to a fresh dump state
        let dump = n;
        let mut delta = Vec::with_capacity((n + 1) * k);
        for q in 0..n {
            delta.extend(
                map.iter()
                    .map(|m| m.map_or(dump, |src| self.dfa.next(q, src))),
            );
        }
        delta.extend(std::iter::repeat_n(dump, k));
        let mut marked = self.dfa.marked.clone();
        marked.push(false);
        let raw = RawDfa {
            k,
            initial: self.dfa.initial,
            delta,
            marked,
        };
        Ok(Lang::from_raw(target, &raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> Arc<Alphabet> {
        Arc::new(Alphabet::from_flags([("a", true, true), ("b", true, true)]).unwrap())
    }

    fn lang(words: &[&str]) -> Lang {
        Lang::from_strs(alpha(), words).unwrap()
    }

    #[test]
    fn canonical_empty_and_universal() {
        let e = Lang::empty(alpha());
        assert_eq!(e.num_states(), 1);
        assert!(e.is_empty());
        let u = e.complement();
        assert!(u.contains_str("a b b a").unwrap());
        assert!(Lang::from_strs(alpha(), Vec::<&str>::new())
            .unwrap()
            .is_equal(&e)
            .unwrap());
    }

    #[test]
    fn trie_construction_is_canonical() {
        let x = lang(&["a b", "b", "eps"]);
        let y = lang(&["b", "eps", "a b", "b"]);
        assert_eq!(x, y);
        assert_eq!(x.enumerate_strings(5).len(), 3);
        assert_eq!(x.longest_member_len(), Some(2));
    }

    #[test]
    fn closure_of_single_word() {
        let c = lang(&["a b"]).prefix_closure();
        assert_eq!(c, lang(&["eps", "a", "a b"]));
        assert!(c.is_closed());
        assert!(Lang::empty(alpha()).prefix_closure().is_empty());
    }

    #[test]
    fn append_event_basics() {
        let b = alpha().id("b").unwrap();
        assert!(Lang::empty(alpha()).append_event(b).unwrap().is_empty());
        assert_eq!(lang(&["eps"]).append_event(b).unwrap(), lang(&["b"]));
        assert_eq!(
            lang(&["a a"]).append_event(b).unwrap(),
            lang(&["b", "a b", "a a b"])
        );
        assert!(lang(&["a"]).append_event(7).is_err());
    }

    #[test]
    fn subset_and_witness() {
        let x = lang(&["a", "a b"]);
        let y = lang(&["a"]);
        assert!(y.is_subset(&x).unwrap());
        assert!(!x.is_subset(&y).unwrap());
        assert_eq!(x.difference_witness(&y).unwrap(), Some(vec![0, 1]));
        assert!(Lang::empty(alpha()).is_subset(&y).unwrap());
    }

    #[test]
    fn mismatched_alphabets_are_rejected() {
        let other = Arc::new(Alphabet::from_flags([("a", true, true)]).unwrap());
        let z = Lang::universal(other);
        assert_eq!(lang(&["a"]).intersect(&z), Err(Error::AlphabetMismatch));
        assert!(lang(&["a"]).contains(&[9]).is_err());
    }

    #[test]
    fn infinite_languages() {
        let u = Lang::universal(alpha());
        assert!(!u.is_finite());
        assert_eq!(u.finite_members(10), None);
        let words = u.enumerate_strings(2);
        assert_eq!(words.len(), 7);
        assert_eq!(words[0], Vec::<usize>::new());
    }

    #[test]
    fn remap_reorders_and_extends() {
        let target = Arc::new(
            Alphabet::from_flags([("c", true, true), ("b", true, true), ("a", true, true)])
                .unwrap(),
        );
        let x = lang(&["a b"]).remap(target.clone()).unwrap();
        assert!(x.contains_str("a b").unwrap());
        assert!(!x.contains_str("c").unwrap());
        let bad = Arc::new(Alphabet::from_flags([("a", false, true), ("b", true, true)]).unwrap());
        assert!(matches!(
            lang(&["a"]).remap(bad),
            Err(Error::FlagConflict { .. })
        ));
    }
}
