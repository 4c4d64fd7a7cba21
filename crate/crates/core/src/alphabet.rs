//! Events and alphabets.
//!
//! An [`Alphabet`] is an ordered set of [`Event`]s, each carrying an
//! observable and a controllable flag. Events are referred to by their index
//! in the alphabet ([`EventId`]); a string of events is a [`Word`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of an event inside its [`Alphabet`].
pub type EventId = usize;

/// A string of events.
pub type Word = Vec<EventId>;

/// Token used in text formats for the empty string.
pub const EPSILON_TOKEN: &str = "eps";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Event {
    name: String,
    observable: bool,
    controllable: bool,
}

impl Event {
    pub fn new(name: impl Into<String>, observable: bool, controllable: bool) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(Error::InvalidEventName(name));
        }
        Ok(Self {
            name,
            observable,
            controllable,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_observable(&self) -> bool {
        self.observable
    }

    pub fn is_controllable(&self) -> bool {
        self.controllable
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} o={} c={}",
            self.name, self.observable as u8, self.controllable as u8
        )
    }
}

#[derive(Clone)]
pub struct Alphabet {
    events: Vec<Event>,
    index: HashMap<String, EventId>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.events == other.events
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.events.iter().map(|e| e.to_string()))
            .finish()
    }
}

impl Alphabet {
    /// Builds an alphabet; rejects an empty event list and duplicate names.
    pub fn new(events: impl IntoIterator<Item = Event>) -> Result<Self> {
        let alphabet = Self::with_events(events.into_iter().collect())?;
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(alphabet)
    }

    /// Shorthand for tests and examples: `(name, observable, controllable)`.
    pub fn from_flags<'a>(events: impl IntoIterator<Item = (&'a str, bool, bool)>) -> Result<Self> {
        Self::new(
            events
                .into_iter()
                .map(|(n, o, c)| Event::new(n, o, c))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    // Sub-alphabets produced by projection may be empty.
    fn with_events(events: Vec<Event>) -> Result<Self> {
        let mut index = HashMap::with_capacity(events.len());
        for (id, event) in events.iter().enumerate() {
            if index.insert(event.name.clone(), id).is_some() {
                return Err(Error::DuplicateEvent(event.name.clone()));
            }
        }
        Ok(Self { events, index })
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn event(&self, id: EventId) -> &Event {
        &self.events[id]
    }

    pub fn ids(&self) -> std::ops::Range<EventId> {
        0..self.events.len()
    }

    pub fn id(&self, name: &str) -> Result<EventId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEvent(name.to_string()))
    }

    pub fn is_observable(&self, id: EventId) -> bool {
        self.events[id].observable
    }

    pub fn is_controllable(&self, id: EventId) -> bool {
        self.events[id].controllable
    }

    pub fn observable_ids(&self) -> impl Iterator<Item = EventId> + '_ {
        self.ids().filter(move |&e| self.is_observable(e))
    }

    pub fn uncontrollable_ids(&self) -> impl Iterator<Item = EventId> + '_ {
        self.ids().filter(move |&e| !self.is_controllable(e))
    }

    /// The sub-alphabet Σ_o of observable events, flags unchanged. May be empty.
    pub fn observable_subalphabet(&self) -> Alphabet {
        Self::with_events(
            self.events
                .iter()
                .filter(|e| e.observable)
                .cloned()
                .collect(),
        )
        .expect("subset of a valid alphabet has unique names")
    }

    /// Parses a whitespace-separated list of event names; `eps` alone is ε.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == [EPSILON_TOKEN] || tokens.is_empty() {
            return Ok(Vec::new());
        }
        tokens.into_iter().map(|t| self.id(t)).collect()
    }

    pub fn format_word(&self, word: &[EventId]) -> String {
        if word.is_empty() {
            return EPSILON_TOKEN.to_string();
        }
        word.iter()
            .map(|&e| self.events[e].name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Length-lexicographic order on words, comparing events by name.
    pub fn cmp_words(&self, a: &[EventId], b: &[EventId]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            a.iter()
                .map(|&e| self.events[e].name.as_str())
                .cmp(b.iter().map(|&e| self.events[e].name.as_str()))
        })
    }
}
