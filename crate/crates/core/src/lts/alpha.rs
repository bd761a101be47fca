//! Bounded enumeration of the path sets `α(x)` for each semantics.
//!
//! This is the test and debug surface; refinement works on the exact
//! regular signatures in [`super::signature`] and never truncates.

use std::collections::BTreeSet;

use super::{Lts, Semantics};
use crate::error::{Error, Result};
use crate::paths::{Path, StateId, StutterClass};

/// Default enumeration depth: `|states| · (|blocks| + 1)`.
pub fn default_depth(lts: &Lts, blocks: usize) -> usize {
    lts.num_states() * (blocks + 1)
}

/// All executions from `x` with at most `depth` steps, shortest first.
pub fn executions(lts: &Lts, x: StateId, depth: usize) -> Vec<Path> {
    let mut out = vec![Path::empty(x)];
    let mut frontier = vec![Path::empty(x)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &frontier {
            for &(a, t) in lts.outgoing(p.last()) {
                next.push(p.clone().then(a, t));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Stutter classes of the semantics' α-paths whose underlying executions
/// have at most `depth` steps.
pub fn alpha(
    lts: &Lts,
    x: StateId,
    sem: Semantics,
    depth: usize,
) -> Result<BTreeSet<StutterClass>> {
    if x >= lts.num_states() {
        return Err(Error::UnknownState(x.to_string()));
    }
    let mut out = BTreeSet::new();
    out.insert(StutterClass::empty(x));
    match sem {
        Semantics::Branching => branching(lts, Path::empty(x), depth, &mut out),
        _ => saturated(lts, sem, Path::empty(x), None, depth, &mut out),
    }
    Ok(out)
}

/// Executions with trace in `τ* ∪ τ*·A`.
fn branching(lts: &Lts, p: Path, depth: usize, out: &mut BTreeSet<StutterClass>) {
    out.insert(p.class());
    if p.len() == depth {
        return;
    }
    for &(a, t) in lts.outgoing(p.last()) {
        let q = p.clone().then(a, t);
        if a.is_tau() {
            branching(lts, q, depth, out);
        } else {
            out.insert(q.class());
        }
    }
}

/// Executions of shape `τⁿ a τᵐ` (`a` may be τ), reshaped per semantics.
/// `pivot` is the index of the `a`-step once it has been chosen.
fn saturated(
    lts: &Lts,
    sem: Semantics,
    p: Path,
    pivot: Option<usize>,
    depth: usize,
    out: &mut BTreeSet<StutterClass>,
) {
    if let Some(n) = pivot {
        out.insert(reshape(sem, &p, n).class());
    }
    if p.len() == depth {
        return;
    }
    for &(a, t) in lts.outgoing(p.last()) {
        let q = p.clone().then(a, t);
        match pivot {
            Some(_) => {
                if a.is_tau() {
                    saturated(lts, sem, q, pivot, depth, out);
                }
            }
            None => {
                // this step is the pivot
                saturated(lts, sem, q.clone(), Some(p.len()), depth, out);
                // or a leading τ
                if a.is_tau() {
                    saturated(lts, sem, q, None, depth, out);
                }
            }
        }
    }
}

fn reshape(sem: Semantics, p: &Path, n: usize) -> Path {
    let (a, _) = p.steps()[n];
    match sem {
        Semantics::Weak => Path::empty(p.start()).then(a, p.last()),
        Semantics::Eta => p.prefix(n).then(a, p.last()),
        Semantics::Delay => {
            let mut q = Path::empty(p.start()).then(a, p.state_at(n + 1));
            for &(b, t) in &p.steps()[n + 1..] {
                q.push(b, t);
            }
            q
        }
        Semantics::Branching => unreachable!("branching is not saturated"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lts::fixtures::abcde;

    fn rendered(lts: &Lts, x: &str, sem: Semantics, depth: usize) -> BTreeSet<String> {
        alpha(lts, lts.resolve(x).unwrap(), sem, depth)
            .unwrap()
            .iter()
            .map(|c| lts.format_path(c.canonical()).replace("tau", "τ"))
            .collect()
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn weak_rows() {
        let lts = abcde();
        assert_eq!(
            rendered(&lts, "A", Semantics::Weak, 3),
            set(&["(A)", "(A,b,A)", "(A,b,D)", "(A,b,E)", "(A,τ,D)", "(A,τ,E)", "(A,a,D)"])
        );
        assert_eq!(
            rendered(&lts, "B", Semantics::Weak, 3),
            set(&["(B)", "(B,b,B)", "(B,b,D)", "(B,b,E)", "(B,τ,D)", "(B,τ,E)", "(B,a,D)"])
        );
        assert_eq!(rendered(&lts, "D", Semantics::Weak, 3), set(&["(D)"]));
    }

    #[test]
    fn eta_rows() {
        let lts = abcde();
        assert_eq!(
            rendered(&lts, "B", Semantics::Eta, 3),
            set(&[
                "(B)",
                "(B,τ,D)",
                "(B,τ,E)",
                "(B,τ,E,a,D)",
                "(B,b,B)",
                "(B,b,D)",
                "(B,b,E)"
            ])
        );
        assert_eq!(
            rendered(&lts, "C", Semantics::Eta, 3),
            set(&[
                "(C)",
                "(C,τ,D)",
                "(C,τ,E)",
                "(C,τ,E,a,D)",
                "(C,b,C)",
                "(C,b,D)",
                "(C,b,E)",
                "(C,a,D)"
            ])
        );
    }

    #[test]
    fn delay_rows() {
        let lts = abcde();
        assert_eq!(
            rendered(&lts, "E", Semantics::Delay, 1),
            set(&["(E)", "(E,a,D)"])
        );
        assert_eq!(
            rendered(&lts, "C", Semantics::Delay, 3),
            set(&[
                "(C)",
                "(C,τ,D)",
                "(C,τ,E)",
                "(C,a,D)",
                "(C,b,C)",
                "(C,b,C,τ,D)",
                "(C,b,C,τ,E)",
                "(C,b,D)"
            ])
        );
    }

    #[test]
    fn branching_rows() {
        let lts = abcde();
        assert_eq!(rendered(&lts, "D", Semantics::Branching, 5), set(&["(D)"]));
        assert_eq!(
            rendered(&lts, "E", Semantics::Branching, 5),
            set(&["(E)", "(E,a,D)"])
        );
        // only τ*·A and τ* traces: no trailing τ after a visible step
        assert_eq!(
            rendered(&lts, "A", Semantics::Branching, 5),
            set(&[
                "(A)",
                "(A,b,A)",
                "(A,a,D)",
                "(A,τ,D)",
                "(A,τ,E)",
                "(A,τ,E,a,D)"
            ])
        );
    }

    #[test]
    fn unknown_state_is_an_error() {
        assert!(alpha(&abcde(), 9, Semantics::Weak, 2).is_err());
    }

    #[test]
    fn execution_enumeration() {
        let lts = abcde();
        let execs = executions(&lts, lts.resolve("E").unwrap(), 3);
        assert_eq!(execs.len(), 2);
        assert!(execs.iter().all(|p| lts.is_execution(p)));
    }
}
