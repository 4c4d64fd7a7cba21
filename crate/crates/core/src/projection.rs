//! Natural projection `P`, its inverse image `P⁻¹`, and lookalike sets
//! `[N] = P⁻¹P(N)`.

use std::sync::Arc;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::fsa::{subset_construction, Nfa, RawDfa};
use crate::lang::Lang;

/// `P(L)` over the observable sub-alphabet. Unobservable transitions become
/// silent moves before subset construction.
///
/// With no observable events the result is over an empty alphabet and is
/// `{ε}` exactly when `l` is nonempty.
pub fn project(l: &Lang) -> Lang {
    let alphabet = l.alphabet();
    let observed = Arc::new(alphabet.observable_subalphabet());
    let mut obs_index = vec![None; alphabet.len()];
    for (i, e) in alphabet.observable_ids().enumerate() {
        obs_index[e] = Some(i);
    }
    let dfa = l.raw();
    let n = dfa.num_states();
    let mut nfa = Nfa::new(observed.len(), n);
    nfa.initial = vec![dfa.initial];
    nfa.marked = dfa.marked.clone();
    for q in 0..n {
        for e in alphabet.ids() {
            let t = dfa.next(q, e);
            match obs_index[e] {
                Some(o) => nfa.succ[q].push((o, t)),
                None if t != q => nfa.silent[q].push(t),
                None => {}
            }
        }
    }
    Lang::from_raw(observed, &subset_construction(&nfa))
}

/// `P⁻¹(lo)` over `target`, whose observable sub-alphabet must equal the
/// alphabet of `lo`: every unobservable event self-loops at every state.
pub fn inverse_project(lo: &Lang, target: &Arc<Alphabet>) -> Result<Lang> {
    if target.observable_subalphabet() != **lo.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let src = lo.raw();
    let k = target.len();
    let mut obs_index = vec![None; k];
    for (i, e) in target.observable_ids().enumerate() {
        obs_index[e] = Some(i);
    }
    let n = src.num_states();
    let mut delta = Vec::with_capacity(n * k);
    for q in 0..n {
        delta.extend(obs_index.iter().map(|o| o.map_or(q, |o| src.next(q, o))));
    }
    let raw = RawDfa {
        k,
        initial: src.initial,
        delta,
        marked: src.marked.clone(),
    };
    Ok(Lang::from_raw(target.clone(), &raw))
}

/// `[L] = P⁻¹P(L)`: every string that looks like some member of `l`.
pub fn lookalike(l: &Lang) -> Lang {
    inverse_project(&project(l), l.alphabet()).expect("projection alphabet is the observable part")
}
