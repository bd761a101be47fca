//! Labelled transition systems and the four silent-step bisimulations.

mod alpha;
pub mod aut;
mod classical;
mod refine;
mod signature;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{Action, Label, Path, StateId};

pub use alpha::{alpha, default_depth, executions};
pub use classical::classical_partition;
pub use refine::{equivalent, minimize, refine, refine_rounds};
pub use signature::{signature_automaton, SigSymbol, SignatureAutomaton};

pub const DEFAULT_TAU_LABEL: &str = "tau";

/// Alternative spelling of the silent action accepted on input.
pub const TAU_ALIAS: &str = "i";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub source: StateId,
    pub action: Action,
    pub target: StateId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Branching,
    Weak,
    Eta,
    Delay,
}

impl Semantics {
    pub const ALL: [Semantics; 4] = [
        Semantics::Branching,
        Semantics::Weak,
        Semantics::Eta,
        Semantics::Delay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Semantics::Branching => "branching",
            Semantics::Weak => "weak",
            Semantics::Eta => "eta",
            Semantics::Delay => "delay",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "branching" => Ok(Semantics::Branching),
            "weak" => Ok(Semantics::Weak),
            "eta" | "η" => Ok(Semantics::Eta),
            "delay" => Ok(Semantics::Delay),
            other => Err(format!("unknown semantics `{other}`")),
        }
    }
}

/// A finite labelled transition system with named states and actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lts {
    state_names: Vec<String>,
    labels: Vec<String>,
    tau_label: String,
    initial: StateId,
    transitions: Vec<Transition>,
    outgoing: Vec<Vec<(Action, StateId)>>,
}

impl Lts {
    /// Validates endpoints and rejects duplicate triples.
    pub fn new(
        state_names: Vec<String>,
        labels: Vec<String>,
        initial: StateId,
        mut transitions: Vec<Transition>,
    ) -> Result<Self> {
        let n = state_names.len();
        if n == 0 {
            return Err(Error::InvalidSystem(
                "an LTS needs at least one state".into(),
            ));
        }
        if initial >= n {
            return Err(Error::InvalidSystem(format!(
                "initial state {initial} out of range"
            )));
        }
        for t in &transitions {
            if t.source >= n || t.target >= n {
                return Err(Error::InvalidSystem(format!(
                    "transition ({}, {:?}, {}) has an undeclared endpoint",
                    t.source, t.action, t.target
                )));
            }
            if let Action::Visible(l) = t.action {
                if l as usize >= labels.len() {
                    return Err(Error::InvalidSystem(format!("undeclared action label {l}")));
                }
            }
        }
        transitions.sort();
        if let Some(w) = transitions.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSystem(format!(
                "duplicate transition ({}, {:?}, {})",
                w[0].source, w[0].action, w[0].target
            )));
        }
        let mut outgoing = vec![Vec::new(); n];
        for t in &transitions {
            outgoing[t.source].push((t.action, t.target));
        }
        Ok(Lts {
            state_names,
            labels,
            tau_label: DEFAULT_TAU_LABEL.to_string(),
            initial,
            transitions,
            outgoing,
        })
    }

    pub fn with_tau_label(mut self, label: impl Into<String>) -> Self {
        self.tau_label = label.into();
        self
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn outgoing(&self, s: StateId) -> &[(Action, StateId)] {
        &self.outgoing[s]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn visible_actions(&self) -> impl Iterator<Item = Action> {
        (0..self.labels.len() as Label).map(Action::Visible)
    }

    pub fn tau_label(&self) -> &str {
        &self.tau_label
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.state_names[s]
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.state_names.iter().position(|n| n == name)
    }

    pub fn resolve(&self, name: &str) -> Result<StateId> {
        self.state_index(name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn action_name(&self, a: Action) -> &str {
        match a {
            Action::Tau => &self.tau_label,
            Action::Visible(l) => &self.labels[l as usize],
        }
    }

    pub fn has_transition(&self, source: StateId, action: Action, target: StateId) -> bool {
        self.outgoing[source].contains(&(action, target))
    }

    /// Whether every step of `p` is a transition of this system.
    pub fn is_execution(&self, p: &Path) -> bool {
        p.start() < self.num_states()
            && (0..p.len()).all(|i| {
                let (a, t) = p.steps()[i];
                self.has_transition(p.state_at(i), a, t)
            })
    }

    /// Tuple-style rendering `(A,b,A,τ,D)` using this system's names.
    pub fn format_path(&self, p: &Path) -> String {
        p.display_with(
            |s| self.state_names[s].clone(),
            |a| self.action_name(a).to_string(),
        )
        .to_string()
    }

    /// Reflexive-transitive closure of the τ-steps.
    pub fn weak_closure(&self) -> TauClosure {
        TauClosure::new(self.num_states(), |s| {
            self.outgoing[s]
                .iter()
                .filter(|(a, _)| a.is_tau())
                .map(|&(_, t)| t)
        })
    }

    /// Equality up to renumbering of states and labels: compares named
    /// states, the named initial state and named transitions.
    pub fn same_named_system(&self, other: &Lts) -> bool {
        fn named(lts: &Lts) -> NamedView<'_> {
            let states: BTreeSet<&str> = lts.state_names.iter().map(String::as_str).collect();
            let edges: BTreeSet<(&str, Option<&str>, &str)> = lts
                .transitions
                .iter()
                .map(|t| {
                    let label = match t.action {
                        Action::Tau => None,
                        Action::Visible(_) => Some(lts.action_name(t.action)),
                    };
                    (lts.state_name(t.source), label, lts.state_name(t.target))
                })
                .collect();
            (states, lts.state_name(lts.initial), edges)
        }
        named(self) == named(other)
    }

    /// Whether the τ-step graph has no cycles (τ self-loops count as cycles).
    pub fn tau_acyclic(&self) -> bool {
        let closure = self.weak_closure();
        self.transitions
            .iter()
            .filter(|t| t.action.is_tau())
            .all(|t| !closure.contains(t.target, t.source))
    }
}

type NamedView<'a> = (
    BTreeSet<&'a str>,
    &'a str,
    BTreeSet<(&'a str, Option<&'a str>, &'a str)>,
);

/// The relation `x ⇒ε y` as sorted successor lists plus a boolean matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauClosure {
    reach: Vec<Vec<StateId>>,
    matrix: Vec<Vec<bool>>,
}

impl TauClosure {
    fn new<F, I>(n: usize, succ: F) -> Self
    where
        F: Fn(StateId) -> I,
        I: Iterator<Item = StateId>,
    {
        let mut matrix = vec![vec![false; n]; n];
        let mut reach = Vec::with_capacity(n);
        for s in 0..n {
            let row = &mut matrix[s];
            let mut stack = vec![s];
            row[s] = true;
            while let Some(u) = stack.pop() {
                for v in succ(u) {
                    if !row[v] {
                        row[v] = true;
                        stack.push(v);
                    }
                }
            }
            reach.push((0..n).filter(|&t| row[t]).collect());
        }
        TauClosure { reach, matrix }
    }

    pub fn reachable(&self, s: StateId) -> &[StateId] {
        &self.reach[s]
    }

    pub fn contains(&self, from: StateId, to: StateId) -> bool {
        self.matrix[from][to]
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.matrix
    }
}

/// Convenience constructor interning states and labels by first use.
/// The label `tau` (or `i`) is the silent action.
#[derive(Debug, Default)]
pub struct LtsBuilder {
    states: Vec<String>,
    labels: Vec<String>,
    transitions: BTreeSet<Transition>,
    index: HashMap<String, StateId>,
}

impl LtsBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(mut self, name: &str) -> Self {
        self.intern(name);
        self
    }

    pub fn transition(mut self, source: &str, label: &str, target: &str) -> Self {
        let source = self.intern(source);
        let target = self.intern(target);
        let action = if label == DEFAULT_TAU_LABEL || label == TAU_ALIAS {
            Action::Tau
        } else {
            let l = match self.labels.iter().position(|x| x == label) {
                Some(l) => l,
                None => {
                    self.labels.push(label.to_string());
                    self.labels.len() - 1
                }
            };
            Action::Visible(l as Label)
        };
        self.transitions.insert(Transition {
            source,
            action,
            target,
        });
        self
    }

    pub fn build(self) -> Lts {
        Lts::new(
            self.states,
            self.labels,
            0,
            self.transitions.into_iter().collect(),
        )
        .expect("builder output is well formed")
    }

    fn intern(&mut self, name: &str) -> StateId {
        if let Some(&s) = self.index.get(name) {
            return s;
        }
        self.states.push(name.to_string());
        self.index.insert(name.to_string(), self.states.len() - 1);
        self.states.len() - 1
    }
}
