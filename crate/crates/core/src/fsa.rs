//! Finite-state automata: construction, subset construction and minimization.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use crate::alphabet::{Alphabet, EventId};
use crate::error::{Error, Result};
use crate::lang::Lang;

/// A finite-state automaton `(Q, Σ, δ, q0, Qm)` with states `0..num_states`.
///
/// May be nondeterministic and partial. Its marked language is the set of
/// strings along which some run from the initial state ends in a marked state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fsa {
    alphabet: Arc<Alphabet>,
    num_states: usize,
    initial: usize,
    marked: BTreeSet<usize>,
    transitions: BTreeSet<(usize, EventId, usize)>,
}

impl Fsa {
    pub fn new(
        alphabet: impl Into<Arc<Alphabet>>,
        num_states: usize,
        initial: usize,
        marked: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, EventId, usize)>,
    ) -> Result<Self> {
        let alphabet = alphabet.into();
        let check = |state: usize| {
            if state < num_states {
                Ok(state)
            } else {
                Err(Error::InvalidState { state, num_states })
            }
        };
        check(initial)?;
        let marked = marked
            .into_iter()
            .map(check)
            .collect::<Result<BTreeSet<_>>>()?;
        let transitions = transitions
            .into_iter()
            .map(|(src, e, dst)| {
                if e >= alphabet.len() {
                    return Err(Error::UnknownEvent(format!("#{e}")));
                }
                Ok((check(src)?, e, check(dst)?))
            })
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Self {
            alphabet,
            num_states,
            initial,
            marked,
            transitions,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn marked(&self) -> &BTreeSet<usize> {
        &self.marked
    }

    pub fn transitions(&self) -> &BTreeSet<(usize, EventId, usize)> {
        &self.transitions
    }

    /// At most one target per `(state, event)`.
    pub fn is_deterministic(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.transitions
            .iter()
            .all(|&(s, e, _)| seen.insert((s, e)))
    }

    /// At least one target per `(state, event)`.
    pub fn is_complete(&self) -> bool {
        let defined: BTreeSet<(usize, EventId)> =
            self.transitions.iter().map(|&(s, e, _)| (s, e)).collect();
        defined.len() == self.num_states * self.alphabet.len()
    }

    /// Membership by simulating all runs.
    pub fn accepts(&self, word: &[EventId]) -> bool {
        let nfa = self.to_nfa();
        let mut current: BTreeSet<usize> = [self.initial].into();
        for &e in word {
            current = current
                .iter()
                .flat_map(|&q| nfa.succ[q].iter().filter(move |&&(f, _)| f == e))
                .map(|&(_, t)| t)
                .collect();
        }
        current.iter().any(|q| self.marked.contains(q))
    }

    /// Subset construction. The result is deterministic and complete; a
    /// subset state is marked iff it contains a marked state. States are
    /// numbered in breadth-first discovery order following the alphabet order,
    /// and the empty subset (if reached) is the dump state.
    pub fn determinize(&self) -> Fsa {
        let raw = subset_construction(&self.to_nfa());
        raw.into_fsa(self.alphabet.clone())
    }

    /// Minimal complete DFA for the same marked language, unreachable states
    /// removed. The state count equals the Nerode index of the language.
    pub fn minimize(&self) -> Result<Fsa> {
        if !self.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        if !self.is_complete() {
            return Err(Error::NotComplete);
        }
        let k = self.alphabet.len();
        let mut delta = vec![0; self.num_states * k];
        for &(s, e, t) in &self.transitions {
            delta[s * k + e] = t;
        }
        let marked = (0..self.num_states)
            .map(|q| self.marked.contains(&q))
            .collect();
        let raw = RawDfa {
            k,
            initial: self.initial,
            delta,
            marked,
        };
        Ok(raw.canonical().into_fsa(self.alphabet.clone()))
    }

    /// The canonical language value of this automaton's marked language.
    pub fn to_lang(&self) -> Lang {
        Lang::from_fsa(self)
    }

    pub(crate) fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.len(), self.num_states);
        nfa.initial = vec![self.initial];
        for &q in &self.marked {
            nfa.marked[q] = true;
        }
        for &(s, e, t) in &self.transitions {
            nfa.succ[s].push((e, t));
        }
        nfa
    }
}

/// Nondeterministic automaton with silent moves, used internally for the
/// subset construction.
#[derive(Debug, Clone)]
pub(crate) struct Nfa {
    pub k: usize,
    pub initial: Vec<usize>,
    pub marked: Vec<bool>,
    pub succ: Vec<Vec<(EventId, usize)>>,
    pub silent: Vec<Vec<usize>>,
}

impl Nfa {
    pub fn new(k: usize, n: usize) -> Self {
        Self {
            k,
            initial: Vec::new(),
            marked: vec![false; n],
            succ: vec![Vec::new(); n],
            silent: vec![Vec::new(); n],
        }
    }

    fn closure(&self, set: &mut Vec<usize>) {
        let mut stack = set.clone();
        while let Some(q) = stack.pop() {
            for &t in &self.silent[q] {
                if !set.contains(&t) {
                    set.push(t);
                    stack.push(t);
                }
            }
        }
        set.sort_unstable();
        set.dedup();
    }
}

pub(crate) fn subset_construction(nfa: &Nfa) -> RawDfa {
    let k = nfa.k;
    let mut start = nfa.initial.clone();
    nfa.closure(&mut start);

    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    ids.insert(start.clone(), 0);
    subsets.push(start);
    queue.push_back(0);

    let mut delta: Vec<usize> = Vec::new();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); k];
    while let Some(id) = queue.pop_front() {
        for b in buckets.iter_mut() {
            b.clear();
        }
        for &q in &subsets[id] {
            for &(e, t) in &nfa.succ[q] {
                buckets[e].push(t);
            }
        }
        // ids are assigned in BFS order, so row `id` is appended in order
        debug_assert_eq!(delta.len(), id * k);
        for bucket in buckets.iter_mut() {
            bucket.sort_unstable();
            bucket.dedup();
            let mut target = std::mem::take(bucket);
            nfa.closure(&mut target);
            let next = match ids.get(&target) {
                Some(&t) => t,
                None => {
                    let t = subsets.len();
                    ids.insert(target.clone(), t);
                    subsets.push(target);
                    queue.push_back(t);
                    t
                }
            };
            delta.push(next);
        }
    }
    let marked = subsets
        .iter()
        .map(|s| s.iter().any(|&q| nfa.marked[q]))
        .collect();
    RawDfa {
        k,
        initial: 0,
        delta,
        marked,
    }
}

/// Deterministic complete transition table, row-major by state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawDfa {
    pub k: usize,
    pub initial: usize,
    pub delta: Vec<usize>,
    pub marked: Vec<bool>,
}

impl RawDfa {
    pub fn num_states(&self) -> usize {
        self.marked.len()
    }

    #[inline]
    pub fn next(&self, q: usize, e: EventId) -> usize {
        self.delta[q * self.k + e]
    }

    /// Reachable part, renumbered breadth-first from the initial state.
    fn reachable(&self) -> RawDfa {
        let n = self.num_states();
        let mut order = vec![usize::MAX; n];
        let mut visit = vec![self.initial];
        order[self.initial] = 0;
        let mut i = 0;
        while i < visit.len() {
            let q = visit[i];
            for e in 0..self.k {
                let t = self.next(q, e);
                if order[t] == usize::MAX {
                    order[t] = visit.len();
                    visit.push(t);
                }
            }
            i += 1;
        }
        let mut delta = Vec::with_capacity(visit.len() * self.k);
        for &q in &visit {
            for e in 0..self.k {
                delta.push(order[self.next(q, e)]);
            }
        }
        RawDfa {
            k: self.k,
            initial: 0,
            delta,
            marked: visit.iter().map(|&q| self.marked[q]).collect(),
        }
    }

    /// Reachable, minimized and renumbered breadth-first in alphabet order.
    /// Two tables for the same language come out identical.
    pub fn canonical(&self) -> RawDfa {
        let reach = self.reachable();
        let class = hopcroft(&reach);
        let classes = class.iter().copied().max().map_or(0, |m| m + 1);
        let mut delta = vec![0; classes * reach.k];
        let mut marked = vec![false; classes];
        for q in 0..reach.num_states() {
            let c = class[q];
            marked[c] = reach.marked[q];
            for e in 0..reach.k {
                delta[c * reach.k + e] = class[reach.next(q, e)];
            }
        }
        RawDfa {
            k: reach.k,
            initial: class[reach.initial],
            delta,
            marked,
        }
        .reachable()
    }

    /// States from which a marked state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for e in 0..self.k {
                pred[self.next(q, e)].push(q);
            }
        }
        let mut co = self.marked.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| co[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &pred[q] {
                if !co[p] {
                    co[p] = true;
                    stack.push(p);
                }
            }
        }
        co
    }

    pub fn into_fsa(self, alphabet: Arc<Alphabet>) -> Fsa {
        let k = self.k;
        let n = self.num_states();
        Fsa {
            alphabet,
            num_states: n,
            initial: self.initial,
            marked: (0..n).filter(|&q| self.marked[q]).collect(),
            transitions: (0..n)
                .flat_map(|q| (0..k).map(move |e| (q, e)))
                .map(|(q, e)| (q, e, self.delta[q * k + e]))
                .collect(),
        }
    }
}

/// Hopcroft partition refinement on a complete DFA; returns the class of
/// each state (classes numbered `0..c`).
fn hopcroft(dfa: &RawDfa) -> Vec<usize> {
    let n = dfa.num_states();
    let k = dfa.k;

    // inverse transitions in CSR form, indexed by (event, target)
    let mut count = vec![0usize; k * n + 1];
    for q in 0..n {
        for e in 0..k {
            count[e * n + dfa.next(q, e) + 1] += 1;
        }
    }
    for i in 1..count.len() {
        count[i] += count[i - 1];
    }
    let mut fill = count.clone();
    let mut sources = vec![0usize; n * k];
    for q in 0..n {
        for e in 0..k {
            let slot = e * n + dfa.next(q, e);
            sources[fill[slot]] = q;
            fill[slot] += 1;
        }
    }

    let mut elems: Vec<usize> = (0..n).filter(|&q| dfa.marked[q]).collect();
    let split_at = elems.len();
    elems.extend((0..n).filter(|&q| !dfa.marked[q]));
    let mut loc = vec![0; n];
    for (i, &q) in elems.iter().enumerate() {
        loc[q] = i;
    }
    let mut start = Vec::new();
    let mut end = Vec::new();
    let mut block = vec![0; n];
    for (lo, hi) in [(0, split_at), (split_at, n)] {
        if lo < hi {
            for &q in &elems[lo..hi] {
                block[q] = start.len();
            }
            start.push(lo);
            end.push(hi);
        }
    }
    let mut mid = start.clone();
    let mut in_work = vec![true; start.len()];
    let mut work: Vec<usize> = (0..start.len()).collect();
    let mut touched = Vec::new();

    while let Some(splitter) = work.pop() {
        in_work[splitter] = false;
        let members: Vec<usize> = elems[start[splitter]..end[splitter]].to_vec();
        for e in 0..k {
            for &t in &members {
                let slot = e * n + t;
                for &p in &sources[count[slot]..count[slot + 1]] {
                    let b = block[p];
                    let i = loc[p];
                    if i < mid[b] {
                        continue;
                    }
                    if mid[b] == start[b] {
                        touched.push(b);
                    }
                    let j = mid[b];
                    let other = elems[j];
                    elems.swap(i, j);
                    loc[other] = i;
                    loc[p] = j;
                    mid[b] += 1;
                }
            }
            for b in touched.drain(..) {
                if mid[b] == end[b] {
                    mid[b] = start[b];
                    continue;
                }
                let nb = start.len();
                start.push(start[b]);
                end.push(mid[b]);
                let split = mid[b];
                start[b] = split;
                mid[b] = split;
                mid.push(start[nb]);
                for &q in &elems[start[nb]..end[nb]] {
                    block[q] = nb;
                }
                if in_work[b] {
                    in_work.push(true);
                    work.push(nb);
                } else {
                    let smaller = if end[nb] - start[nb] <= end[b] - start[b] {
                        nb
                    } else {
                        b
                    };
                    in_work.push(false);
                    in_work[smaller] = true;
                    work.push(smaller);
                }
            }
        }
    }
    block
}
