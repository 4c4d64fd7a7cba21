//! Supremal sublanguage operators for normality, prefix-closedness and
//! controllability.

use crate::error::{Error, Result};
use crate::fsa::RawDfa;
use crate::lang::Lang;
use crate::projection::lookalike;

/// `sup N(k, h)`: the largest `K' ⊆ k` with `[K'] ∩ h = K'`, computed as
/// `k − [h − k]`. Requires `k ⊆ h`.
pub fn sup_normal(k: &Lang, h: &Lang) -> Result<Lang> {
    if !k.is_subset(h)? {
        return Err(Error::NotSubset("normality operand"));
    }
    k.difference(&lookalike(&h.difference(k)?))
}

/// Supremal normal sublanguage with ambient `Σ*`: the union of all full
/// lookalike classes inside `l`, i.e. `{s | [s] ⊆ l} = l − [lᶜ]`.
pub fn sup_normal_unrestricted(l: &Lang) -> Lang {
    l.difference(&lookalike(&l.complement()))
        .expect("same alphabet")
}

/// `[k] ∩ h = k`.
pub fn is_normal(k: &Lang, h: &Lang) -> Result<bool> {
    lookalike(k).intersect(h)?.is_equal(k)
}

/// A member of `([k] ∩ h) △ k`, preferring strings of `[k] ∩ h` outside `k`.
pub fn normality_witness(k: &Lang, h: &Lang) -> Result<Option<Vec<usize>>> {
    let closed = lookalike(k).intersect(h)?;
    match closed.difference_witness(k)? {
        Some(w) => Ok(Some(w)),
        None => k.difference_witness(&closed),
    }
}

/// `sup F(l)`: the largest prefix-closed sublanguage, `{s ∈ l | s̄ ⊆ l}`.
/// Transitions into unmarked states are redirected to a dump.
pub fn sup_closed(l: &Lang) -> Lang {
    let src = l.raw();
    let k = src.k;
    let n = src.num_states();
    let dump = n;
    let mut delta = Vec::with_capacity((n + 1) * k);
    for q in 0..n {
        for e in 0..k {
            let t = src.next(q, e);
            delta.push(if src.marked[t] { t } else { dump });
        }
    }
    delta.extend(std::iter::repeat_n(dump, k));
    let mut marked = src.marked.clone();
    marked.push(false);
    let initial = if src.marked[src.initial] {
        src.initial
    } else {
        dump
    };
    let raw = RawDfa {
        k,
        initial,
        delta,
        marked,
    };
    Lang::from_raw(l.alphabet().clone(), &raw)
}

/// `sup C(k)` with respect to plant `m`: the largest `K' ⊆ k` with
/// `K̄'Σ_u ∩ M̄ ⊆ K̄'`. Requires `k ⊆ m`.
///
/// Works on the synchronous product of the two recognizers: states where the
/// plant closure enables an uncontrollable event the candidate does not keep
/// are deleted, together with states that become unreachable or can no longer
/// reach a marked state, until nothing changes.
pub fn sup_controllable(k: &Lang, m: &Lang) -> Result<Lang> {
    if !k.is_subset(m)? {
        return Err(Error::NotSubset("controllability operand"));
    }
    let alphabet = k.alphabet().clone();
    let events = alphabet.len();
    let uncontrollable: Vec<usize> = alphabet.uncontrollable_ids().collect();
    let (kd, md) = (k.raw(), m.raw());
    let (k_co, m_co) = (kd.coreachable(), md.coreachable());
    if !k_co[kd.initial] {
        return Ok(Lang::empty(alphabet));
    }

    // product restricted to the closure of k; NONE marks "left K̄"
    const NONE: usize = usize::MAX;
    let nm = md.num_states();
    let mut index = vec![NONE; kd.num_states() * nm];
    let mut pairs = vec![(kd.initial, md.initial)];
    index[kd.initial * nm + md.initial] = 0;
    let mut succ: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for e in 0..events {
            let (p2, q2) = (kd.next(p, e), md.next(q, e));
            if !k_co[p2] {
                succ.push(NONE);
                continue;
            }
            let slot = p2 * nm + q2;
            if index[slot] == NONE {
                index[slot] = pairs.len();
                pairs.push((p2, q2));
            }
            succ.push(index[slot]);
        }
        i += 1;
    }
    let n = pairs.len();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (slot, &t) in succ.iter().enumerate() {
        if t != NONE {
            pred[t].push(slot / events);
        }
    }
    let mut good = vec![true; n];

    loop {
        let mut changed = false;
        for s in 0..n {
            if !good[s] {
                continue;
            }
            let q = pairs[s].1;
            let violates = uncontrollable.iter().any(|&u| {
                m_co[md.next(q, u)] && {
                    let t = succ[s * events + u];
                    t == NONE || !good[t]
                }
            });
            if violates {
                good[s] = false;
                changed = true;
            }
        }
        // trim: reachable from the initial pair and coreachable to marking
        let mut reach = vec![false; n];
        if good[0] {
            let mut stack = vec![0];
            reach[0] = true;
            while let Some(s) = stack.pop() {
                for e in 0..events {
                    let t = succ[s * events + e];
                    if t != NONE && good[t] && !reach[t] {
                        reach[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        let mut co: Vec<bool> = (0..n).map(|s| reach[s] && kd.marked[pairs[s].0]).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&s| co[s]).collect();
        while let Some(t) = stack.pop() {
            for &s in &pred[t] {
                if reach[s] && !co[s] {
                    co[s] = true;
                    stack.push(s);
                }
            }
        }
        for s in 0..n {
            if good[s] && !co[s] {
                good[s] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    if !good[0] {
        return Ok(Lang::empty(alphabet));
    }
    let dump = n;
    let mut delta = Vec::with_capacity((n + 1) * events);
    for s in 0..n {
        for e in 0..events {
            let t = succ[s * events + e];
            delta.push(if t != NONE && good[t] { t } else { dump });
        }
    }
    delta.extend(std::iter::repeat_n(dump, events));
    let mut marked: Vec<bool> = (0..n).map(|s| good[s] && kd.marked[pairs[s].0]).collect();
    marked.push(false);
    let raw = RawDfa {
        k: events,
        initial: 0,
        delta,
        marked,
    };
    Ok(Lang::from_raw(alphabet, &raw))
}

/// `K̄σ_u ∩ M̄ ⊆ K̄` for every uncontrollable `σ_u`.
pub fn is_controllable(k: &Lang, m: &Lang) -> Result<bool> {
    Ok(controllability_witness(k, m)?.is_none())
}

/// A string `sσ_u ∈ M̄ − K̄` with `s ∈ K̄`, if one exists.
pub fn controllability_witness(k: &Lang, m: &Lang) -> Result<Option<Vec<usize>>> {
    let kbar = k.prefix_closure();
    let mbar = m.prefix_closure();
    let mut best: Option<Vec<usize>> = None;
    for u in k.alphabet().uncontrollable_ids() {
        let escapes = kbar.append_event(u)?.intersect(&mbar)?;
        if let Some(w) = escapes.difference_witness(&kbar)? {
            if best.as_ref().is_none_or(|b| w.len() < b.len()) {
                best = Some(w);
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use std::sync::Arc;

    fn sigma() -> Arc<Alphabet> {
        Arc::new(
            Alphabet::from_flags([("a", true, true), ("u", false, false), ("b", true, true)])
                .unwrap(),
        )
    }

    fn lang(words: &[&str]) -> Lang {
        Lang::from_strs(sigma(), words).unwrap()
    }

    #[test]
    fn sup_closed_cases() {
        assert_eq!(
            sup_closed(&lang(&["eps", "a", "a b", "b a"])),
            lang(&["eps", "a", "a b"])
        );
        assert!(sup_closed(&lang(&["a", "a b"])).is_empty());
        let closed = lang(&["eps", "a", "a u"]);
        assert_eq!(sup_closed(&closed), closed);
    }

    #[test]
    fn sup_normal_requires_subset() {
        assert_eq!(
            sup_normal(&lang(&["a"]), &lang(&["b"])),
            Err(Error::NotSubset("normality operand"))
        );
    }

    #[test]
    fn sup_normal_removes_lookalike_classes() {
        // h = {a, u a}; k = {a}: u a is lookalike to a and lies in h − k
        let h = lang(&["a", "u a", "b"]);
        let k = lang(&["a", "b"]);
        assert_eq!(sup_normal(&k, &h).unwrap(), lang(&["b"]));
        assert!(!is_normal(&k, &h).unwrap());
        assert!(is_normal(&lang(&["b"]), &h).unwrap());
        assert!(is_normal(&Lang::empty(sigma()), &h).unwrap());
        assert_eq!(normality_witness(&k, &h).unwrap(), Some(vec![1, 0]));
    }

    #[test]
    fn sup_normal_unrestricted_keeps_full_classes() {
        let l = lang(&["a"]);
        assert!(sup_normal_unrestricted(&l).is_empty());
        let u = Lang::universal(sigma());
        assert_eq!(sup_normal_unrestricted(&u), u);
    }

    #[test]
    fn controllability_examples() {
        let m = lang(&["eps", "u", "u a"]);
        let k = lang(&["eps", "u a"]);
        assert!(is_controllable(&k, &m).unwrap());
        assert_eq!(sup_controllable(&k, &m).unwrap(), k);
        assert!(is_controllable(&Lang::empty(sigma()), &m).unwrap());
        assert!(is_controllable(&m, &m).unwrap());

        // {ε, a}: u is enabled after ε by the plant and not kept
        let k2 = lang(&["eps", "a"]);
        let m2 = lang(&["eps", "a", "u"]);
        assert!(!is_controllable(&k2, &m2).unwrap());
        assert_eq!(controllability_witness(&k2, &m2).unwrap(), Some(vec![1]));
        assert!(sup_controllable(&k2, &m2).unwrap().is_empty());
    }

    #[test]
    fn sup_controllable_is_identity_without_uncontrollable_events() {
        let all_c =
            Arc::new(Alphabet::from_flags([("a", true, true), ("b", false, true)]).unwrap());
        let m = Lang::from_strs(all_c.clone(), ["eps", "a", "a b", "b"]).unwrap();
        let k = Lang::from_strs(all_c, ["a b"]).unwrap();
        assert_eq!(sup_controllable(&k, &m).unwrap(), k);
    }
}
