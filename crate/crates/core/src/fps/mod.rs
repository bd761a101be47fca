//! Fully probabilistic systems with exact rational weights.
//!
//! Every state's outgoing probabilities sum to exactly 0 (a stop state) or
//! exactly 1.

mod delay;
pub mod format;
mod linear;
mod reach;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{Action, Label, Path, StateId};
use crate::rational::{one, parse_rational, zero, Rational};

pub use delay::{
    brute_force_delay, delay_refine, delay_refine_rounds, is_delay_bisimulation, minimize_fps,
    prob_signatures, ProbSignature, BRUTE_FORCE_LIMIT,
};
pub use reach::{executions, first_hit_set, hit_set, prob_reach, reach_vector};

pub const DEFAULT_TAU_LABEL: &str = "tau";

/// `ε` or a visible action: the last letter of the trace languages `τ*â`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Hat {
    Epsilon,
    Visible(Label),
}

impl Hat {
    /// `τ` becomes `ε`.
    pub fn of(action: Action) -> Hat {
        match action {
            Action::Tau => Hat::Epsilon,
            Action::Visible(l) => Hat::Visible(l),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProbTransition {
    pub source: StateId,
    pub action: Action,
    pub target: StateId,
    pub prob: Rational,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Fps {
    state_names: Vec<String>,
    labels: Vec<String>,
    tau_label: String,
    transitions: Vec<ProbTransition>,
    outgoing: Vec<Vec<(Action, StateId, Rational)>>,
}

impl fmt::Debug for Fps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::write_fps(self))
    }
}

impl Fps {
    /// Validates probabilities, duplicates and row sums.
    pub fn new(
        state_names: Vec<String>,
        labels: Vec<String>,
        mut transitions: Vec<ProbTransition>,
    ) -> Result<Self> {
        let n = state_names.len();
        if n == 0 {
            return Err(Error::InvalidSystem(
                "a system needs at least one state".into(),
            ));
        }
        let mut seen = HashMap::new();
        for (i, name) in state_names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::InvalidSystem(format!(
                    "duplicate state name `{name}`"
                )));
            }
        }
        transitions.sort();
        let mut outgoing = vec![Vec::new(); n];
        for (i, t) in transitions.iter().enumerate() {
            if t.source >= n || t.target >= n {
                return Err(Error::InvalidSystem(format!(
                    "transition {} -> {} refers to a missing state",
                    t.source, t.target
                )));
            }
            if let Action::Visible(l) = t.action {
                if l as usize >= labels.len() {
                    return Err(Error::InvalidSystem(format!("undeclared action {l}")));
                }
            }
            if t.prob <= zero() || t.prob > one() {
                return Err(Error::InvalidSystem(format!(
                    "probability {} of a transition from `{}` is outside (0,1]",
                    t.prob, state_names[t.source]
                )));
            }
            if i > 0 {
                let p = &transitions[i - 1];
                if (p.source, p.action, p.target) == (t.source, t.action, t.target) {
                    return Err(Error::InvalidSystem(format!(
                        "duplicate transition from `{}`",
                        state_names[t.source]
                    )));
                }
            }
            outgoing[t.source].push((t.action, t.target, t.prob.clone()));
        }
        for (s, row) in outgoing.iter().enumerate() {
            let sum: Rational = row.iter().map(|(_, _, p)| p).sum();
            if sum != zero() && sum != one() {
                return Err(Error::RowSum {
                    state: state_names[s].clone(),
                    sum,
                });
            }
        }
        Ok(Fps {
            state_names,
            labels,
            tau_label: DEFAULT_TAU_LABEL.to_string(),
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

    pub fn transitions(&self) -> &[ProbTransition] {
        &self.transitions
    }

    /// Sorted by action, then target.
    pub fn outgoing(&self, s: StateId) -> &[(Action, StateId, Rational)] {
        &self.outgoing[s]
    }

    pub fn is_stop(&self, s: StateId) -> bool {
        self.outgoing[s].is_empty()
    }

    /// `P(source, action, target)`, zero when absent or out of range.
    pub fn prob(&self, source: StateId, action: Action, target: StateId) -> Rational {
        self.outgoing
            .get(source)
            .and_then(|row| {
                row.binary_search_by(|(a, t, _)| (*a, *t).cmp(&(action, target)))
                    .ok()
                    .map(|i| row[i].2.clone())
            })
            .unwrap_or_else(zero)
    }

    /// Probability of the τ self-loop at `s`.
    pub fn tau_loop(&self, s: StateId) -> Rational {
        self.prob(s, Action::Tau, s)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn visible_actions(&self) -> impl Iterator<Item = Action> {
        (0..self.labels.len() as Label).map(Action::Visible)
    }

    /// `ε` followed by every visible action.
    pub fn hats(&self) -> Vec<Hat> {
        std::iter::once(Hat::Epsilon)
            .chain((0..self.labels.len() as Label).map(Hat::Visible))
            .collect()
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

    /// Looks up a visible action by name; `None` for τ or unknown names.
    pub fn visible_action(&self, name: &str) -> Option<Action> {
        self.labels
            .iter()
            .position(|l| l == name)
            .map(|i| Action::Visible(i as Label))
    }

    pub fn hat_name(&self, hat: Hat) -> &str {
        match hat {
            Hat::Epsilon => "ε",
            Hat::Visible(l) => &self.labels[l as usize],
        }
    }

    pub fn format_path(&self, p: &Path) -> String {
        p.display_with(
            |s| self.state_name(s).to_string(),
            |a| self.action_name(a).to_string(),
        )
        .to_string()
    }

    /// Whether no state has a τ self-loop.
    pub fn tau_loop_free(&self) -> bool {
        (0..self.num_states()).all(|s| self.tau_loop(s) == zero())
    }

    /// Whether the τ-transitions form no cycle.
    pub fn tau_acyclic(&self) -> bool {
        // Kahn's algorithm on the τ-graph
        let n = self.num_states();
        let mut indegree = vec![0usize; n];
        for t in &self.transitions {
            if t.action.is_tau() {
                indegree[t.target] += 1;
            }
        }
        let mut stack: Vec<StateId> = (0..n).filter(|&s| indegree[s] == 0).collect();
        let mut removed = 0;
        while let Some(s) = stack.pop() {
            removed += 1;
            for &(a, t, _) in &self.outgoing[s] {
                if a.is_tau() {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        removed == n
    }

    /// Equality up to the numbering of states and labels.
    pub fn same_named_system(&self, other: &Fps) -> bool {
        fn named(fps: &Fps) -> BTreeMap<(&str, Option<&str>, &str), Rational> {
            fps.transitions
                .iter()
                .map(|t| {
                    let a = match t.action {
                        Action::Tau => None,
                        Action::Visible(l) => Some(fps.labels[l as usize].as_str()),
                    };
                    (
                        (fps.state_name(t.source), a, fps.state_name(t.target)),
                        t.prob.clone(),
                    )
                })
                .collect()
        }
        let mut mine: Vec<&str> = self.state_names.iter().map(String::as_str).collect();
        let mut theirs: Vec<&str> = other.state_names.iter().map(String::as_str).collect();
        mine.sort_unstable();
        theirs.sort_unstable();
        mine == theirs && named(self) == named(other)
    }
}

/// `μ_P(p)`: product of the step probabilities, 0 if some step is absent.
pub fn mu_p(fps: &Fps, p: &Path) -> Rational {
    let mut acc = one();
    let mut here = p.start();
    if here >= fps.num_states() {
        return zero();
    }
    for &(a, t) in p.steps() {
        let step = fps.prob(here, a, t);
        if step == zero() {
            return zero();
        }
        acc *= step;
        here = t;
    }
    acc
}

/// Incremental construction by names; `"tau"` is silent. States are numbered
/// in order of first mention, labels alphabetically.
#[derive(Default)]
pub struct FpsBuilder {
    names: Vec<String>,
    lines: Vec<(StateId, Option<String>, String, StateId)>,
}

impl FpsBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, name: &str) -> StateId {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }

    pub fn state(mut self, name: &str) -> Self {
        self.intern(name);
        self
    }

    /// `prob` is a fraction `p/q`, an integer or a finite decimal.
    pub fn transition(mut self, source: &str, label: &str, prob: &str, target: &str) -> Self {
        let s = self.intern(source);
        let t = self.intern(target);
        let label = (label != DEFAULT_TAU_LABEL).then(|| label.to_string());
        self.lines.push((s, label, prob.to_string(), t));
        self
    }

    pub fn build(self) -> Result<Fps> {
        let mut labels: Vec<String> = self.lines.iter().filter_map(|l| l.1.clone()).collect();
        labels.sort();
        labels.dedup();
        let mut transitions = Vec::new();
        for (s, label, prob, t) in self.lines {
            let prob = parse_rational(&prob)
                .ok_or_else(|| Error::InvalidSystem(format!("bad probability `{prob}`")))?;
            let action = match label {
                None => Action::Tau,
                Some(l) => Action::Visible(labels.binary_search(&l).expect("collected") as Label),
            };
            transitions.push(ProbTransition {
                source: s,
                action,
                target: t,
                prob,
            });
        }
        Fps::new(self.names, labels, transitions)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Loop-on-τ system, its loop-free variant and the target system.
    pub fn tau_loop() -> Fps {
        FpsBuilder::new()
            .transition("x1", "tau", "1/3", "x1")
            .transition("x1", "tau", "1/3", "x2")
            .transition("x1", "a", "1/3", "x3")
            .transition("x2", "b", "1", "x4")
            .transition("x1'", "tau", "1/2", "x2'")
            .transition("x1'", "a", "1/2", "x3'")
            .transition("x2'", "b", "1", "x4'")
            .transition("y1", "tau", "1/2", "y2")
            .transition("y1", "a", "1/2", "y3")
            .transition("y2", "b", "1", "y4")
            .build()
            .unwrap()
    }

    pub fn split_tau() -> Fps {
        FpsBuilder::new()
            .transition("x0", "tau", "1/2", "x1")
            .transition("x0", "tau", "1/2", "x2")
            .transition("x1", "tau", "1/2", "x1''")
            .transition("x1", "tau", "1/2", "x1'")
            .build()
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn mu_p_products() {
        let fps = tau_loop();
        let x = |n: &str| fps.resolve(n).unwrap();
        let a = fps.visible_action("a").unwrap();
        let b = fps.visible_action("b").unwrap();
        let p = Path::empty(x("x1"))
            .then(Action::Tau, x("x1"))
            .then(Action::Tau, x("x2"))
            .then(b, x("x4"));
        assert_eq!(mu_p(&fps, &p), ratio(1, 9));
        assert_eq!(mu_p(&fps, &Path::empty(x("x1"))), one());
        assert_eq!(mu_p(&fps, &Path::empty(x("x1")).then(b, x("x4"))), zero());
        assert_eq!(
            mu_p(&fps, &Path::empty(x("x1")).then(a, x("x3"))),
            ratio(1, 3)
        );
    }

    #[test]
    fn row_sums_are_checked() {
        let err = FpsBuilder::new()
            .transition("x", "a", "1/2", "y")
            .build()
            .unwrap_err();
        match err {
            Error::RowSum { state, sum } => {
                assert_eq!(state, "x");
                assert_eq!(sum, ratio(1, 2));
            }
            other => panic!("unexpected {other}"),
        }
        let stop = FpsBuilder::new().state("x").build().unwrap();
        assert!(stop.is_stop(0));
    }

    #[test]
    fn probability_range_and_duplicates() {
        assert!(FpsBuilder::new()
            .transition("x", "a", "3/2", "y")
            .build()
            .is_err());
        assert!(FpsBuilder::new()
            .transition("x", "a", "1/2", "y")
            .transition("x", "a", "1/2", "y")
            .build()
            .is_err());
        assert!(FpsBuilder::new()
            .transition("x", "a", "0", "y")
            .build()
            .is_err());
    }

    #[test]
    fn structure_queries() {
        let fps = tau_loop();
        assert!(!fps.tau_loop_free());
        assert!(!fps.tau_acyclic());
        assert_eq!(fps.tau_loop(fps.resolve("x1").unwrap()), ratio(1, 3));
        assert_eq!(fps.hats().len(), 3);
        assert!(split_tau().tau_acyclic());
        assert_eq!(fps.num_states(), 12);
    }
}
