//! Finite paths over a carrier of interned states, stutter bases and
//! stutter-invariant canonical forms.
//!
//! A path is stored as a start state followed by `(action, state)` steps.
//! This is in bijection with the prefix-domain view of a path: the empty
//! word maps to `start`, and the word `a1 … ai` maps to the state reached
//! after the `i`-th step. Prefix closure of the domain is automatic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DomainError;

/// Interned state identifier. Names live in the owning system's symbol table.
pub type StateId = usize;

/// Interned visible-action identifier.
pub type Label = u32;

/// An element of the alphabet `A ⊎ {τ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    Tau,
    Visible(Label),
}

impl Action {
    pub fn is_tau(self) -> bool {
        matches!(self, Action::Tau)
    }
}

/// A finite word over the action alphabet, ordered by sequence prefix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Action>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prefix_leq(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// All prefixes of the word, shortest first, including the empty word.
    pub fn history(&self) -> Vec<Word> {
        (0..=self.0.len())
            .map(|i| Word(self.0[..i].to_vec()))
            .collect()
    }
}

/// A finite path: start state plus alternating action/state steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    start: StateId,
    steps: Vec<(Action, StateId)>,
}

impl Path {
    /// The empty path `ε_x`.
    pub fn empty(start: StateId) -> Self {
        Path {
            start,
            steps: Vec::new(),
        }
    }

    pub fn new(start: StateId, steps: Vec<(Action, StateId)>) -> Self {
        Path { start, steps }
    }

    /// Builder-style extension by one step.
    pub fn then(mut self, action: Action, target: StateId) -> Self {
        self.steps.push((action, target));
        self
    }

    pub fn push(&mut self, action: Action, target: StateId) {
        self.steps.push((action, target));
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn steps(&self) -> &[(Action, StateId)] {
        &self.steps
    }

    /// Number of steps (length of the trace).
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// State after `i` steps; `state_at(0)` is the start state.
    pub fn state_at(&self, i: usize) -> StateId {
        if i == 0 {
            self.start
        } else {
            self.steps[i - 1].1
        }
    }

    /// All visited states, in order, starting with the start state.
    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        std::iter::once(self.start).chain(self.steps.iter().map(|&(_, s)| s))
    }

    pub fn trace(&self) -> Word {
        Word(self.steps.iter().map(|&(a, _)| a).collect())
    }

    pub fn last(&self) -> StateId {
        self.steps.last().map_or(self.start, |&(_, s)| s)
    }

    /// Restriction to the first `n` steps.
    pub fn prefix(&self, n: usize) -> Path {
        Path {
            start: self.start,
            steps: self.steps[..n.min(self.steps.len())].to_vec(),
        }
    }

    /// Whether step `i` (zero based) is a τ-step that does not move.
    pub fn is_tau_self_step(&self, i: usize) -> bool {
        let (a, target) = self.steps[i];
        a.is_tau() && target == self.state_at(i)
    }

    pub fn stutter_basis(&self) -> StutterBasis {
        let mut idx = Vec::with_capacity(self.steps.len() + 1);
        idx.push(0);
        let mut cur = 0;
        for i in 0..self.steps.len() {
            if !self.is_tau_self_step(i) {
                cur += 1;
            }
            idx.push(cur);
        }
        StutterBasis { idx }
    }

    /// The stutter-invariant path `p̂`: drops exactly the τ self-steps.
    pub fn stutter_invariant(&self) -> Path {
        let steps = (0..self.steps.len())
            .filter(|&i| !self.is_tau_self_step(i))
            .map(|i| self.steps[i])
            .collect();
        Path {
            start: self.start,
            steps,
        }
    }

    pub fn is_stutter_invariant(&self) -> bool {
        (0..self.steps.len()).all(|i| !self.is_tau_self_step(i))
    }

    pub fn stutter_equiv(&self, other: &Path) -> bool {
        self.stutter_invariant() == other.stutter_invariant()
    }

    /// Prefix order: same start and `self`'s steps are a prefix of `other`'s.
    pub fn prefix_leq(&self, other: &Path) -> bool {
        self.start == other.start && other.steps.starts_with(&self.steps)
    }

    pub fn comparable(&self, other: &Path) -> bool {
        self.prefix_leq(other) || other.prefix_leq(self)
    }

    /// `Path(f)`: apply a state map pointwise. Fails if `f` is undefined on
    /// some visited state.
    pub fn map_states<F>(&self, mut f: F) -> Result<Path, DomainError>
    where
        F: FnMut(StateId) -> Option<StateId>,
    {
        let mut apply = |s: StateId| f(s).ok_or(DomainError { state: s });
        let start = apply(self.start)?;
        let steps = self
            .steps
            .iter()
            .map(|&(a, s)| apply(s).map(|t| (a, t)))
            .collect::<Result<_, _>>()?;
        Ok(Path { start, steps })
    }

    /// `Path(f)` for a total map given as a lookup table.
    pub fn map_by(&self, table: &[StateId]) -> Result<Path, DomainError> {
        self.map_states(|s| table.get(s).copied())
    }

    pub fn class(&self) -> StutterClass {
        StutterClass {
            canonical: self.stutter_invariant(),
        }
    }

    /// Render in the tuple style `(A,b,A,τ,D)`.
    pub fn display_with<'a, S, L>(&'a self, state_name: S, action_name: L) -> PathDisplay<'a, S, L>
    where
        S: Fn(StateId) -> String,
        L: Fn(Action) -> String,
    {
        PathDisplay {
            path: self,
            state_name,
            action_name,
        }
    }
}

pub struct PathDisplay<'a, S, L> {
    path: &'a Path,
    state_name: S,
    action_name: L,
}

impl<S, L> fmt::Display for PathDisplay<'_, S, L>
where
    S: Fn(StateId) -> String,
    L: Fn(Action) -> String,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", (self.state_name)(self.path.start))?;
        for &(a, s) in &self.path.steps {
            write!(f, ",{},{}", (self.action_name)(a), (self.state_name)(s))?;
        }
        write!(f, ")")
    }
}

/// The unique stutter basis of a path, stored as the index vector
/// `idx[0..=n]`: step prefix `i` of the path maps to step prefix `idx[i]` of
/// the stutter-invariant path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StutterBasis {
    idx: Vec<usize>,
}

impl StutterBasis {
    pub fn image_index(&self) -> &[usize] {
        &self.idx
    }

    /// The word `φ(σ)` for the prefix of `path`'s trace of length `i`.
    pub fn image_word(&self, path: &Path, i: usize) -> Word {
        Word(
            (0..i)
                .filter(|&j| self.idx[j + 1] != self.idx[j])
                .map(|j| path.steps[j].0)
                .collect(),
        )
    }
}

/// A stutter-equivalence class `[p]_∼`, keyed by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StutterClass {
    canonical: Path,
}

impl StutterClass {
    pub fn of(path: &Path) -> Self {
        path.class()
    }

    /// `[ε_x]`.
    pub fn empty(start: StateId) -> Self {
        StutterClass {
            canonical: Path::empty(start),
        }
    }

    pub fn canonical(&self) -> &Path {
        &self.canonical
    }

    pub fn start(&self) -> StateId {
        self.canonical.start
    }

    pub fn contains(&self, path: &Path) -> bool {
        path.stutter_invariant() == self.canonical
    }

    /// Class order: `[p] ⪯ [q]` iff `p̂ ⪯ q̂`.
    pub fn leq(&self, other: &StutterClass) -> bool {
        self.canonical.prefix_leq(&other.canonical)
    }

    pub fn comparable(&self, other: &StutterClass) -> bool {
        self.leq(other) || other.leq(self)
    }

    /// `Path_∼(f)`: class of `f ∘ p̂`.
    pub fn map_states<F>(&self, f: F) -> Result<StutterClass, DomainError>
    where
        F: FnMut(StateId) -> Option<StateId>,
    {
        Ok(self.canonical.map_states(f)?.class())
    }

    pub fn map_by(&self, table: &[StateId]) -> Result<StutterClass, DomainError> {
        self.map_states(|s| table.get(s).copied())
    }
}
