//! Aldebaran `.aut` format.
//!
//! ```text
//! des (0, 2, 3)
//! (0, "a", 1)
//! (1, "tau", 2)
//! ```
//!
//! States are normally decimal indices `0..n`. As an extension, a file may
//! use bare identifiers (`A`, `x1'`) for every state instead; identifiers are
//! numbered by first appearance, starting with the initial state. Mixing the
//! two styles in one file is an error.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use super::{Lts, Transition, DEFAULT_TAU_LABEL, TAU_ALIAS};
use crate::error::ParseError;
use crate::paths::{Action, Label, StateId};

#[derive(Clone, Debug)]
pub struct AutOptions {
    pub tau_label: String,
}

impl Default for AutOptions {
    fn default() -> Self {
        AutOptions {
            tau_label: DEFAULT_TAU_LABEL.to_string(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Style {
    Numeric,
    Named,
}

struct StateTable {
    declared: usize,
    style: Option<Style>,
    names: Vec<String>,
    index: HashMap<String, StateId>,
}

impl StateTable {
    fn resolve(&mut self, token: &str, line: usize) -> Result<StateId, ParseError> {
        if token.is_empty() {
            return Err(ParseError::new(line, "empty state"));
        }
        let style = if token.bytes().all(|b| b.is_ascii_digit()) {
            Style::Numeric
        } else {
            Style::Named
        };
        match self.style {
            None => self.style = Some(style),
            Some(s) if s != style => {
                return Err(ParseError::new(
                    line,
                    format!("state `{token}` mixes numeric and named state styles"),
                ))
            }
            _ => {}
        }
        match style {
            Style::Numeric => {
                let s: StateId = token
                    .parse()
                    .map_err(|_| ParseError::new(line, format!("bad state `{token}`")))?;
                if s >= self.declared {
                    return Err(ParseError::new(
                        line,
                        format!("state {s} out of range (declared {})", self.declared),
                    ));
                }
                Ok(s)
            }
            Style::Named => {
                if let Some(&s) = self.index.get(token) {
                    return Ok(s);
                }
                if self.names.len() >= self.declared {
                    return Err(ParseError::new(
                        line,
                        format!(
                            "state `{token}` exceeds the declared {} states",
                            self.declared
                        ),
                    ));
                }
                self.names.push(token.to_string());
                self.index.insert(token.to_string(), self.names.len() - 1);
                Ok(self.names.len() - 1)
            }
        }
    }

    fn into_names(self) -> Vec<String> {
        match self.style {
            Some(Style::Named) => {
                let mut names = self.names;
                let mut k = names.len();
                while names.len() < self.declared {
                    let candidate = format!("_{k}");
                    k += 1;
                    if !self.index.contains_key(&candidate) {
                        names.push(candidate);
                    }
                }
                names
            }
            _ => (0..self.declared).map(|s| s.to_string()).collect(),
        }
    }
}

fn strip_parens(text: &str, line: usize) -> Result<&str, ParseError> {
    text.trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| ParseError::new(line, "expected a parenthesised tuple"))
}

fn parse_header(text: &str, line: usize) -> Result<(String, usize, usize), ParseError> {
    let rest = text
        .trim()
        .strip_prefix("des")
        .ok_or_else(|| ParseError::new(line, "missing `des (init, m, n)` header"))?;
    let inner = strip_parens(rest, line)?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(ParseError::new(line, "header must have three fields"));
    }
    let m = parts[1]
        .parse()
        .map_err(|_| ParseError::new(line, format!("bad transition count `{}`", parts[1])))?;
    let n = parts[2]
        .parse()
        .map_err(|_| ParseError::new(line, format!("bad state count `{}`", parts[2])))?;
    Ok((parts[0].to_string(), m, n))
}

fn parse_edge(text: &str, line: usize) -> Result<(&str, &str, &str), ParseError> {
    let inner = strip_parens(text, line)?;
    let (src, rest) = inner
        .split_once(',')
        .ok_or_else(|| ParseError::new(line, "expected (src, label, dst)"))?;
    let rest = rest.trim_start();
    let (label, rest) = if let Some(quoted) = rest.strip_prefix('"') {
        let end = quoted
            .find('"')
            .ok_or_else(|| ParseError::new(line, "unterminated label"))?;
        let after = quoted[end + 1..].trim_start();
        let after = after
            .strip_prefix(',')
            .ok_or_else(|| ParseError::new(line, "expected `,` after label"))?;
        (&quoted[..end], after)
    } else {
        rest.rsplit_once(',')
            .map(|(l, d)| (l.trim(), d))
            .ok_or_else(|| ParseError::new(line, "expected (src, label, dst)"))?
    };
    Ok((src.trim(), label, rest.trim()))
}

pub fn parse_aut(text: &str, options: &AutOptions) -> Result<Lts, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty input"))?;
    let (init, m, n) = parse_header(header, header_line)?;
    if n == 0 {
        return Err(ParseError::new(
            header_line,
            "an LTS needs at least one state",
        ));
    }
    let mut table = StateTable {
        declared: n,
        style: None,
        names: Vec::new(),
        index: HashMap::new(),
    };
    let initial = table.resolve(&init, header_line)?;

    let mut labels: Vec<String> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut transitions = Vec::new();
    for (line, text) in lines {
        let (src, label, dst) = parse_edge(text, line)?;
        let source = table.resolve(src, line)?;
        let target = table.resolve(dst, line)?;
        let action = if label == options.tau_label || label == TAU_ALIAS {
            Action::Tau
        } else {
            let l = match labels.iter().position(|x| x == label) {
                Some(l) => l,
                None => {
                    labels.push(label.to_string());
                    labels.len() - 1
                }
            };
            Action::Visible(l as Label)
        };
        let t = Transition {
            source,
            action,
            target,
        };
        if !seen.insert(t) {
            return Err(ParseError::new(
                line,
                format!("duplicate transition `{}`", text.trim()),
            ));
        }
        transitions.push(t);
    }
    if transitions.len() != m {
        return Err(ParseError::new(
            header_line,
            format!(
                "header declares {m} transitions, found {}",
                transitions.len()
            ),
        ));
    }
    let lts = Lts::new(table.into_names(), labels, initial, transitions)
        .map_err(|e| ParseError::new(header_line, e.to_string()))?;
    Ok(lts.with_tau_label(options.tau_label.clone()))
}

pub fn write_aut(lts: &Lts) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "des ({}, {}, {})",
        lts.state_name(lts.initial()),
        lts.transitions().len(),
        lts.num_states()
    );
    // Named files number states by first appearance; ordering lines by their
    // largest endpoint keeps that numbering stable across a round trip.
    let mut order: Vec<&Transition> = lts.transitions().iter().collect();
    order.sort_by_key(|t| (t.source.max(t.target), t.source, t.target, t.action));
    for t in order {
        let _ = writeln!(
            out,
            "({}, \"{}\", {})",
            lts.state_name(t.source),
            lts.action_name(t.action),
            lts.state_name(t.target)
        );
    }
    out
}
