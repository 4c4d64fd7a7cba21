//! Combined controllability and relative observability: the `Γ` operator and
//! its fixpoint iteration.

use crate::error::{Error, Result};
use crate::lang::Lang;
use crate::relobs::{check_relobs, sup_relobs_from, Problem, SynthesisOptions};
use crate::supremal::{is_controllable, sup_controllable};
use crate::trace::{Phase, SynthesisTrace, TraceRecord};

/// `Γ(K) = sup O(sup C(K))`, where the inner `sup O` runs the Ω-iteration
/// with ambient `C` starting from `sup C(K)`. Requires `k ⊆ C`.
pub fn gamma(k: &Lang, p: &Problem) -> Result<Lang> {
    gamma_step(
        k,
        p,
        &SynthesisOptions::default(),
        0,
        &mut SynthesisTrace::default(),
    )
}

fn gamma_step(
    k: &Lang,
    p: &Problem,
    opts: &SynthesisOptions,
    outer: usize,
    trace: &mut SynthesisTrace,
) -> Result<Lang> {
    if !k.is_subset(p.spec())? {
        return Err(Error::NotSubset("candidate"));
    }
    let controllable = sup_controllable(k, p.plant())?;
    trace.push(TraceRecord::new(outer, Phase::SupC, &controllable));
    let (observable, inner) = sup_relobs_from(&controllable, p, opts)?;
    if opts.nested_trace {
        trace.records.extend(inner.records.into_iter().map(|mut r| {
            r.outer = Some(outer);
            r
        }));
    }
    Ok(observable)
}

/// Iterates `K_j = Γ(K_{j-1})` from `K_0 = C` until two successive iterates
/// are equal; the limit is the supremal controllable and relatively
/// observable sublanguage.
pub fn sup_ctrl_relobs(p: &Problem, opts: &SynthesisOptions) -> Result<(Lang, SynthesisTrace)> {
    let mut trace = SynthesisTrace::default();
    let mut k = p.spec().clone();
    for j in 1..=opts.max_iter {
        let next = gamma_step(&k, p, opts, j, &mut trace)?;
        let converged = next.is_equal(&k)?;
        let mut record = TraceRecord::new(j, Phase::Gamma, &next);
        record.converged = Some(converged);
        trace.push(record);
        if converged {
            return Ok((next, trace));
        }
        k = next;
    }
    Err(Error::IterationCap(opts.max_iter))
}

/// Controllable with respect to `M` and relatively observable.
pub fn check_ctrl_relobs(k: &Lang, p: &Problem) -> Result<bool> {
    Ok(check_relobs(k, p)? && is_controllable(k, p.plant())?)
}
