//! Supervisory control under partial observation: finite-automaton language
//! algebra, natural projections, supremal sublanguages and the synthesis of
//! supremal relatively observable (and controllable) sublanguages.

pub mod alphabet;
pub mod cli;
pub mod ctrlobs;
pub mod error;
pub mod fsa;
pub mod lang;
pub mod model;
pub mod oracle;
pub mod projection;
pub mod relobs;
pub mod supremal;
pub mod trace;

pub use alphabet::{Alphabet, Event, EventId, Word};
pub use error::{Error, Result};
pub use fsa::Fsa;
pub use lang::Lang;
pub use relobs::{Problem, SynthesisOptions};
pub use trace::{Phase, SynthesisTrace, TraceRecord};
