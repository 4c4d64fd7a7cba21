//! Text model files.
//!
//! Automaton files (`.fsa`):
//!
//! ```text
//! # comment
//! alphabet:
//!   a o=1 c=1
//!   u o=0 c=0
//! states: 2
//! initial: 0
//! marked: 1
//! trans:
//!   0 a 1
//!   1 u 1
//! ```
//!
//! Finite-language files (`.lang`): a header line declaring the alphabet,
//! then one string per line, events separated by whitespace, `eps` for ε.
//!
//! ```text
//! alphabet: a o=1 c=1, u o=0 c=0
//! eps
//! u a
//! ```

use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Event};
use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::lang::Lang;
use crate::oracle::{finite_to_lang, lang_to_finite_exact, FiniteLang};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Automaton(Fsa),
    Finite(FiniteLang),
}

impl Model {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Model::Automaton(a) => a.alphabet(),
            Model::Finite(f) => f.alphabet(),
        }
    }

    pub fn to_lang(&self) -> Lang {
        match self {
            Model::Automaton(a) => a.to_lang(),
            Model::Finite(f) => finite_to_lang(f),
        }
    }

    /// Explicit string set; automata must recognize a finite language.
    pub fn to_finite(&self) -> Result<FiniteLang> {
        match self {
            Model::Finite(f) => Ok(f.clone()),
            Model::Automaton(a) => {
                let l = a.to_lang();
                // a finite language has no member longer than ||L|| - 1
                lang_to_finite_exact(&l, l.num_states())
            }
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_flag(token: Option<&str>, key: &str, name: &str, line: usize) -> Result<bool> {
    let token =
        token.ok_or_else(|| parse_err(line, format!("event `{name}`: missing `{key}=` flag")))?;
    match token.strip_prefix(key).and_then(|t| t.strip_prefix('=')) {
        Some("1") => Ok(true),
        Some("0") => Ok(false),
        _ => Err(parse_err(
            line,
            format!("event `{name}`: expected `{key}=0` or `{key}=1`, found `{token}`"),
        )),
    }
}

fn parse_event(spec: &str, line: usize) -> Result<Event> {
    let mut tokens = spec.split_whitespace();
    let name = tokens
        .next()
        .ok_or_else(|| parse_err(line, "empty event declaration"))?;
    let observable = parse_flag(tokens.next(), "o", name, line)?;
    let controllable = parse_flag(tokens.next(), "c", name, line)?;
    if let Some(extra) = tokens.next() {
        return Err(parse_err(
            line,
            format!("unexpected `{extra}` after event `{name}`"),
        ));
    }
    Event::new(name, observable, controllable).map_err(|e| parse_err(line, e.to_string()))
}

fn build_alphabet(events: Vec<Event>, line: usize) -> Result<Alphabet> {
    Alphabet::new(events).map_err(|e| parse_err(line, e.to_string()))
}

/// Parses either file kind; the kind is recognized from the `alphabet:` line
/// (a block header for automata, an inline list for finite languages).
pub fn parse_model(text: &str) -> Result<Model> {
    let first = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .find(|(_, l)| !l.is_empty());
    match first {
        Some((_, "alphabet:")) => parse_fsa(text).map(Model::Automaton),
        Some((_, l)) if l.starts_with("alphabet:") => parse_finite(text).map(Model::Finite),
        Some((n, _)) => Err(parse_err(n, "expected `alphabet:`")),
        None => Err(parse_err(0, "empty model file")),
    }
}

#[derive(PartialEq)]
enum Section {
    None,
    Alphabet,
    Trans,
}

pub fn parse_fsa(text: &str) -> Result<Fsa> {
    let mut section = Section::None;
    let mut events = Vec::new();
    let mut alphabet: Option<Alphabet> = None;
    let mut alphabet_line = 0;
    let mut states = None;
    let mut initial = None;
    let mut marked = None;
    let mut raw_trans: Vec<(usize, String, String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some((key, rest)) = line.split_once(':') {
            let rest = rest.trim();
            let key = key.trim();
            if section == Section::Alphabet {
                alphabet = Some(build_alphabet(std::mem::take(&mut events), alphabet_line)?);
            }
            section = Section::None;
            match key {
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(parse_err(n, "duplicate `alphabet:` block"));
                    }
                    if !rest.is_empty() {
                        return Err(parse_err(n, "events go on the lines after `alphabet:`"));
                    }
                    section = Section::Alphabet;
                    alphabet_line = n;
                }
                "states" => states = Some(parse_count(rest, n)?),
                "initial" => initial = Some(parse_count(rest, n)?),
                "marked" => {
                    marked = Some(
                        rest.split_whitespace()
                            .map(|t| parse_count(t, n))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                "trans" => {
                    if !rest.is_empty() {
                        return Err(parse_err(n, "transitions go on the lines after `trans:`"));
                    }
                    section = Section::Trans;
                }
                other => return Err(parse_err(n, format!("unknown section `{other}`"))),
            }
            continue;
        }
        match section {
            Section::Alphabet => events.push(parse_event(line, n)?),
            Section::Trans => {
                let t: Vec<&str> = line.split_whitespace().collect();
                if t.len() != 3 {
                    return Err(parse_err(n, "transition must be `<src> <event> <dst>`"));
                }
                raw_trans.push((n, t[0].into(), t[1].into(), t[2].into()));
            }
            Section::None => return Err(parse_err(n, format!("unexpected line `{line}`"))),
        }
    }
    if section == Section::Alphabet {
        alphabet = Some(build_alphabet(events, alphabet_line)?);
    }

    let alphabet = alphabet.ok_or_else(|| parse_err(0, "missing `alphabet:` block"))?;
    let states = states.ok_or_else(|| parse_err(0, "missing `states:`"))?;
    let initial = initial.ok_or_else(|| parse_err(0, "missing `initial:`"))?;
    let marked = marked.unwrap_or_default();
    let mut transitions = Vec::with_capacity(raw_trans.len());
    for (n, src, ev, dst) in raw_trans {
        let e = alphabet.id(&ev).map_err(|e| parse_err(n, e.to_string()))?;
        transitions.push((parse_count(&src, n)?, e, parse_count(&dst, n)?));
    }
    Fsa::new(alphabet, states, initial, marked, transitions)
        .map_err(|e| parse_err(0, e.to_string()))
}

fn parse_count(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| {
        parse_err(
            line,
            format!("expected a non-negative integer, found `{token}`"),
        )
    })
}

pub fn parse_finite(text: &str) -> Result<FiniteLang> {
    let mut alphabet: Option<Alphabet> = None;
    let mut words = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        match &alphabet {
            None => {
                let rest = line
                    .strip_prefix("alphabet:")
                    .ok_or_else(|| parse_err(n, "expected `alphabet:` header"))?;
                let events = rest
                    .split(',')
                    .map(|s| parse_event(s.trim(), n))
                    .collect::<Result<Vec<_>>>()?;
                alphabet = Some(build_alphabet(events, n)?);
            }
            Some(a) => words.push(
                a.parse_word(line)
                    .map_err(|e| parse_err(n, e.to_string()))?,
            ),
        }
    }
    let alphabet = alphabet.ok_or_else(|| parse_err(0, "missing `alphabet:` header"))?;
    FiniteLang::new(alphabet, words)
}

fn write_alphabet_block(out: &mut String, alphabet: &Alphabet) {
    out.push_str("alphabet:\n");
    for e in alphabet.events() {
        let _ = writeln!(out, "  {e}");
    }
}

/// Canonical complete recognizer; transitions sorted by source then event.
pub fn write_lang(l: &Lang) -> String {
    write_fsa(&l.recognizer())
}

pub fn write_fsa(a: &Fsa) -> String {
    let mut out = String::new();
    write_alphabet_block(&mut out, a.alphabet());
    let _ = writeln!(out, "states: {}", a.num_states());
    let _ = writeln!(out, "initial: {}", a.initial());
    let marked: Vec<String> = a.marked().iter().map(|q| q.to_string()).collect();
    let _ = writeln!(out, "marked: {}", marked.join(" "));
    out.push_str("trans:\n");
    for &(s, e, t) in a.transitions() {
        let _ = writeln!(out, "  {s} {} {t}", a.alphabet().event(e).name());
    }
    out
}

pub fn write_finite(f: &FiniteLang) -> String {
    let header: Vec<String> = f
        .alphabet()
        .events()
        .iter()
        .map(|e| e.to_string())
        .collect();
    let mut out = format!("alphabet: {}\n", header.join(", "));
    for w in f.to_strings() {
        out.push_str(&w);
        out.push('\n');
    }
    out
}
