//! Relative observability: the `D`, `F` and `Ω` operators, the fixpoint
//! iteration computing the supremal relatively observable sublanguage, and a
//! checker based on the language-level characterization.
//!
//! Throughout, `M` is the plant's marked behavior and `C ⊆ M` the
//! specification. A language `K ⊆ C` is relatively observable (C-observable)
//! iff
//!
//! * `D(K̄) ∩ M̄ ⊆ K̄`, and
//! * `[K] ∩ (C̄ ∩ M) = K`,
//!
//! where `D(K̄) = ⋃_σ [K̄ ∩ C̄.σ] ∩ C̄.σ`.

use crate::alphabet::{EventId, Word};
use crate::error::{Error, Result};
use crate::lang::Lang;
use crate::projection::lookalike;
use crate::supremal::{
    is_normal, normality_witness, sup_closed, sup_normal, sup_normal_unrestricted,
};
use crate::trace::{Phase, SynthesisTrace, TraceRecord};

pub const DEFAULT_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthesisOptions {
    /// Safety cap on operator applications per fixpoint loop.
    pub max_iter: usize,
    /// Attach the inner Ω records to each Γ step.
    pub nested_trace: bool,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self {
            max_iter: DEFAULT_MAX_ITER,
            nested_trace: false,
        }
    }
}

/// A plant `M` and a specification `C ⊆ M` over a shared alphabet, with the
/// derived languages every operator needs.
#[derive(Debug, Clone)]
pub struct Problem {
    plant: Lang,
    spec: Lang,
    plant_closure: Lang,
    spec_closure: Lang,
    /// `C̄ ∩ M`
    ambient: Lang,
    /// `C̄.σ` per event
    spec_sigma: Vec<Lang>,
    /// `(M̄ ∩ C̄.σ)ᶜ` per event
    escape_sigma_c: Vec<Lang>,
    /// `(C̄.σ)ᶜ` per event
    spec_sigma_c: Vec<Lang>,
}

impl Problem {
    /// Rejects `spec ⊄ plant`.
    pub fn new(plant: Lang, spec: Lang) -> Result<Self> {
        if !spec.is_subset(&plant)? {
            return Err(Error::NotSubset("specification"));
        }
        Ok(Self::build(plant, spec))
    }

    /// Replaces the specification with `spec ∩ plant`.
    pub fn with_spec_trim(plant: Lang, spec: Lang) -> Result<Self> {
        let spec = spec.intersect(&plant)?;
        Ok(Self::build(plant, spec))
    }

    fn build(plant: Lang, spec: Lang) -> Self {
        let plant_closure = plant.prefix_closure();
        let spec_closure = spec.prefix_closure();
        let ambient = spec_closure.intersect(&plant).expect("same alphabet");
        let spec_sigma: Vec<Lang> = spec
            .alphabet()
            .ids()
            .map(|e| spec_closure.append_event(e).expect("event in alphabet"))
            .collect();
        let escape_sigma_c = spec_sigma
            .iter()
            .map(|cs| {
                plant_closure
                    .intersect(cs)
                    .expect("same alphabet")
                    .complement()
            })
            .collect();
        let spec_sigma_c = spec_sigma.iter().map(Lang::complement).collect();
        Self {
            plant,
            spec,
            plant_closure,
            spec_closure,
            ambient,
            spec_sigma,
            escape_sigma_c,
            spec_sigma_c,
        }
    }

    pub fn plant(&self) -> &Lang {
        &self.plant
    }

    pub fn spec(&self) -> &Lang {
        &self.spec
    }

    pub fn plant_closure(&self) -> &Lang {
        &self.plant_closure
    }

    pub fn spec_closure(&self) -> &Lang {
        &self.spec_closure
    }

    /// `C̄ ∩ M`, the ambient language for normality.
    pub fn ambient(&self) -> &Lang {
        &self.ambient
    }

    fn require_in_spec(&self, k: &Lang) -> Result<()> {
        if k.is_subset(&self.spec)? {
            Ok(())
        } else {
            Err(Error::NotSubset("candidate"))
        }
    }
}

/// `C̄.σ = {sσ | s ∈ C̄}`.
pub fn c_sigma(p: &Problem, sigma: EventId) -> Result<Lang> {
    p.spec_sigma
        .get(sigma)
        .cloned()
        .ok_or_else(|| Error::UnknownEvent(format!("#{sigma}")))
}

/// `D(K̄) = ⋃_σ [K̄ ∩ C̄.σ] ∩ C̄.σ`. The argument must be prefix-closed.
pub fn d_operator(kbar: &Lang, p: &Problem) -> Result<Lang> {
    if !kbar.is_closed() {
        return Err(Error::NotClosed);
    }
    let mut d = Lang::empty(kbar.alphabet().clone());
    for cs in &p.spec_sigma {
        let hit = kbar.intersect(cs)?;
        if hit.is_empty() {
            continue;
        }
        d = d.union(&lookalike(&hit).intersect(cs)?)?;
    }
    Ok(d)
}

/// `F(K) = {s ∈ K̄ | D(s̄) ∩ M̄ ⊆ K̄}`, evaluated as
/// `K̄ ∩ sup F(⋂_σ sup N(K̄ ∪ (M̄ ∩ C̄.σ)ᶜ) ∪ (C̄.σ)ᶜ)` where the inner
/// `sup N` has ambient `Σ*`. Requires `k ⊆ C`. The result is prefix-closed.
pub fn f_operator(k: &Lang, p: &Problem) -> Result<Lang> {
    p.require_in_spec(k)?;
    f_unchecked(k, p)
}

fn f_unchecked(k: &Lang, p: &Problem) -> Result<Lang> {
    let kbar = k.prefix_closure();
    let mut meet = Lang::universal(k.alphabet().clone());
    for (escape_c, cs_c) in p.escape_sigma_c.iter().zip(&p.spec_sigma_c) {
        let allowed = sup_normal_unrestricted(&kbar.union(escape_c)?).union(cs_c)?;
        meet = meet.intersect(&allowed)?;
    }
    kbar.intersect(&sup_closed(&meet))
}

/// `Ω(K) = sup N(K ∩ F(K), C̄ ∩ M)`. Requires `k ⊆ C`; the result is `⊆ k`.
pub fn omega(k: &Lang, p: &Problem) -> Result<Lang> {
    p.require_in_spec(k)?;
    let f = f_unchecked(k, p)?;
    omega_with(k, &f, p)
}

fn omega_with(k: &Lang, f: &Lang, p: &Problem) -> Result<Lang> {
    sup_normal(&k.intersect(f)?, &p.ambient)
}

/// Iterates `K_j = Ω(K_{j-1})` from `K_0 = C` until two successive iterates
/// are equal; the limit is the supremal relatively observable sublanguage.
pub fn sup_relobs(p: &Problem, opts: &SynthesisOptions) -> Result<(Lang, SynthesisTrace)> {
    sup_relobs_from(p.spec(), p, opts)
}

/// The Ω-iteration started from an arbitrary `start ⊆ C` (ambient still `C`).
/// Its limit is the largest C-observable sublanguage of `start`.
pub fn sup_relobs_from(
    start: &Lang,
    p: &Problem,
    opts: &SynthesisOptions,
) -> Result<(Lang, SynthesisTrace)> {
    p.require_in_spec(start)?;
    let mut trace = SynthesisTrace::default();
    let mut k = start.clone();
    for j in 1..=opts.max_iter {
        let f = f_unchecked(&k, p)?;
        trace.push(TraceRecord::new(j, Phase::F, &f));
        let next = omega_with(&k, &f, p)?;
        let converged = next.is_equal(&k)?;
        let mut record = TraceRecord::new(j, Phase::Omega, &next);
        record.converged = Some(converged);
        trace.push(record);
        if converged {
            return Ok((next, trace));
        }
        k = next;
    }
    Err(Error::IterationCap(opts.max_iter))
}

/// Relative observability of `k ⊆ C` via `D(K̄) ∩ M̄ ⊆ K̄` and
/// `[K] ∩ (C̄ ∩ M) = K`.
pub fn check_relobs(k: &Lang, p: &Problem) -> Result<bool> {
    Ok(relobs_witness(k, p)?.is_none())
}

/// A string violating one of the two conditions, if any.
pub fn relobs_witness(k: &Lang, p: &Problem) -> Result<Option<Word>> {
    p.require_in_spec(k)?;
    let kbar = k.prefix_closure();
    let reach = d_operator(&kbar, p)?.intersect(&p.plant_closure)?;
    if let Some(w) = reach.difference_witness(&kbar)? {
        return Ok(Some(w));
    }
    if is_normal(k, &p.ambient)? {
        Ok(None)
    } else {
        normality_witness(k, &p.ambient)
    }
}

/// Upper bound `||M||·||C||·2^(||M||·||C||) + 1` on the Nerode index of the
/// supremal sublanguages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NerodeBound {
    Finite(u128),
    /// Not representable in 128 bits.
    Saturated,
}

impl NerodeBound {
    pub fn admits(&self, size: usize) -> bool {
        match self {
            NerodeBound::Finite(b) => (size as u128) <= *b,
            NerodeBound::Saturated => true,
        }
    }
}

pub fn nerode_bound(p: &Problem) -> NerodeBound {
    bound_for(p.plant.num_states(), p.spec.num_states())
}

pub fn bound_for(plant_states: usize, spec_states: usize) -> NerodeBound {
    let product = (plant_states as u128).checked_mul(spec_states as u128);
    let value = product.and_then(|mc| {
        let exp = u32::try_from(mc).ok()?;
        let pow = 1u128.checked_shl(exp)?;
        mc.checked_mul(pow)?.checked_add(1)
    });
    value.map_or(NerodeBound::Saturated, NerodeBound::Finite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use std::sync::Arc;

    fn sigma() -> Arc<Alphabet> {
        Arc::new(
            Alphabet::from_flags([("a", true, true), ("u", false, true), ("b", true, true)])
                .unwrap(),
        )
    }

    fn lang(words: &[&str]) -> Lang {
        Lang::from_strs(sigma(), words).unwrap()
    }

    #[test]
    fn bound_values() {
        assert_eq!(bound_for(1, 1), NerodeBound::Finite(3));
        assert_eq!(bound_for(2, 2), NerodeBound::Finite(65));
        assert_eq!(bound_for(20, 20), NerodeBound::Saturated);
        assert_eq!(
            bound_for(11, 11),
            NerodeBound::Finite(121 * (1u128 << 121) + 1)
        );
        assert!(NerodeBound::Saturated.admits(usize::MAX));
    }

    #[test]
    fn problem_requires_spec_in_plant() {
        let m = lang(&["a"]);
        let c = lang(&["b"]);
        assert_eq!(
            Problem::new(m.clone(), c.clone()).unwrap_err(),
            Error::NotSubset("specification")
        );
        let p = Problem::with_spec_trim(m, c).unwrap();
        assert!(p.spec().is_empty());
    }

    #[test]
    fn empty_spec_degenerates() {
        let p = Problem::new(lang(&["a", "u b"]), Lang::empty(sigma())).unwrap();
        let empty = Lang::empty(sigma());
        assert!(c_sigma(&p, 0).unwrap().is_empty());
        assert!(d_operator(&empty, &p).unwrap().is_empty());
        assert!(omega(&empty, &p).unwrap().is_empty());
        assert!(check_relobs(&empty, &p).unwrap());
        let (r, trace) = sup_relobs(&p, &SynthesisOptions::default()).unwrap();
        assert!(r.is_empty());
        assert_eq!(trace.applications(), 1);
    }

    #[test]
    fn validation_errors() {
        let p = Problem::new(lang(&["a", "b"]), lang(&["a"])).unwrap();
        assert_eq!(
            f_operator(&lang(&["b"]), &p),
            Err(Error::NotSubset("candidate"))
        );
        assert_eq!(d_operator(&lang(&["a"]), &p), Err(Error::NotClosed));
        assert!(c_sigma(&p, 3).is_err());
    }

    #[test]
    fn unobservable_lookalike_forces_removal() {
        // a and u a look alike; after a, b is possible in M but only u a b is in C
        let m = lang(&["a", "u a", "a b", "u a b"]);
        let c = lang(&["a", "u a", "u a b"]);
        let p = Problem::new(m, c.clone()).unwrap();
        assert!(!check_relobs(&c, &p).unwrap());
        let (r, _) = sup_relobs(&p, &SynthesisOptions::default()).unwrap();
        assert!(check_relobs(&r, &p).unwrap());
        assert!(r.is_subset(&c).unwrap());
        assert_eq!(omega(&r, &p).unwrap(), r);
    }

    #[test]
    fn iteration_cap_is_reported() {
        let m = lang(&["a", "u a", "a b", "u a b"]);
        let c = lang(&["a", "u a", "u a b"]);
        let p = Problem::new(m, c).unwrap();
        let opts = SynthesisOptions {
            max_iter: 1,
            ..Default::default()
        };
        assert_eq!(sup_relobs(&p, &opts).unwrap_err(), Error::IterationCap(1));
    }
}
