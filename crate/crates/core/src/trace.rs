//! Per-iteration records of the fixpoint computations.

use serde::{Deserialize, Serialize};

use crate::lang::Lang;

/// Finite languages with at most this many members are listed in full.
pub const TRACE_ENUMERATION_LIMIT: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    /// `F(K_{j-1})`
    #[serde(rename = "F")]
    F,
    /// `K_j = Ω(K_{j-1})`
    #[serde(rename = "omega")]
    Omega,
    /// `sup C(K_{j-1})`
    #[serde(rename = "supC")]
    SupC,
    /// `K_j = Γ(K_{j-1})`
    #[serde(rename = "gamma")]
    Gamma,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iter: usize,
    pub phase: Phase,
    pub states: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strings: Option<Vec<String>>,
    /// Set on `omega`/`gamma` records: whether `K_j = K_{j-1}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    /// Outer Γ iteration, for Ω records nested inside a Γ step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<usize>,
}

impl TraceRecord {
    pub fn new(iter: usize, phase: Phase, lang: &Lang) -> Self {
        Self {
            iter,
            phase,
            states: lang.num_states(),
            strings: lang
                .finite_members(TRACE_ENUMERATION_LIMIT)
                .map(|w| lang.format_members(&w)),
            converged: None,
            outer: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynthesisTrace {
    pub records: Vec<TraceRecord>,
}

impl SynthesisTrace {
    pub fn push(&mut self, record: TraceRecord) {
        self.records.push(record);
    }

    /// Top-level records of the given phase.
    pub fn phase(&self, phase: Phase) -> impl Iterator<Item = &TraceRecord> {
        self.records
            .iter()
            .filter(move |r| r.phase == phase && r.outer.is_none())
    }

    /// Number of top-level operator applications (Ω or Γ steps).
    pub fn applications(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.outer.is_none() && matches!(r.phase, Phase::Omega | Phase::Gamma))
            .count()
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("trace records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_json_lines(text: &str) -> serde_json::Result<Self> {
        let records = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<serde_json::Result<Vec<_>>>()?;
        Ok(Self { records })
    }
}
