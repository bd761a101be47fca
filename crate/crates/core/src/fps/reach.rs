use super::linear::least_fixpoint;
use super::{Fps, Hat};
use crate::paths::{Action, Path, StateId};
use crate::rational::{one, zero, Rational};

/// `P(s, τ*â, Y)` for every state `s`, with `Y` given as a membership mask.
pub fn reach_vector(fps: &Fps, hat: Hat, targets: &[bool]) -> Vec<Rational> {
    let n = fps.num_states();
    let mut edges = vec![Vec::new(); n];
    let mut c = vec![zero(); n];
    for s in 0..n {
        if hat == Hat::Epsilon && targets[s] {
            continue;
        }
        for (a, t, p) in fps.outgoing(s) {
            match (hat, *a) {
                (Hat::Epsilon, Action::Tau) if targets[*t] => c[s] += p,
                (_, Action::Tau) => edges[s].push((*t, p.clone())),
                (Hat::Visible(l), Action::Visible(m)) if l == m && targets[*t] => c[s] += p,
                _ => {}
            }
        }
    }
    let mut u = least_fixpoint(&edges, &c);
    if hat == Hat::Epsilon {
        for (s, v) in u.iter_mut().enumerate() {
            if targets[s] {
                *v = one();
            }
        }
    }
    u
}

/// `P(x, τ*â, Y)`: total weight of the first-hit executions.
pub fn prob_reach(fps: &Fps, x: StateId, hat: Hat, targets: &[StateId]) -> Rational {
    let mut mask = vec![false; fps.num_states()];
    for &y in targets {
        mask[y] = true;
    }
    reach_vector(fps, hat, &mask).swap_remove(x)
}

/// All executions from `x` with at most `depth` steps, shortest first.
pub fn executions(fps: &Fps, x: StateId, depth: usize) -> Vec<Path> {
    let mut out = vec![Path::empty(x)];
    let mut frontier = out.clone();
    for _ in 0..depth {
        frontier = frontier
            .iter()
            .flat_map(|p| {
                fps.outgoing(p.last())
                    .iter()
                    .map(move |(a, t, _)| p.clone().then(*a, *t))
            })
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

/// Executions from `x` of at most `depth` steps with trace in `τ*â` that end
/// in `Y` and have no shorter prefix with that property.
pub fn first_hit_set(
    fps: &Fps,
    x: StateId,
    hat: Hat,
    targets: &[StateId],
    depth: usize,
) -> Vec<Path> {
    collect_hits(fps, x, hat, targets, depth, true)
}

/// Like [`first_hit_set`] without the first-hit restriction.
pub fn hit_set(fps: &Fps, x: StateId, hat: Hat, targets: &[StateId], depth: usize) -> Vec<Path> {
    collect_hits(fps, x, hat, targets, depth, false)
}

fn collect_hits(
    fps: &Fps,
    x: StateId,
    hat: Hat,
    targets: &[StateId],
    depth: usize,
    first_only: bool,
) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = vec![Path::empty(x)];
    while let Some(p) = stack.pop() {
        let here = p.last();
        if hat == Hat::Epsilon && targets.contains(&here) {
            out.push(p.clone());
            if first_only {
                continue;
            }
        }
        if p.len() == depth {
            continue;
        }
        for &(a, t, _) in fps.outgoing(here) {
            match (hat, a) {
                (_, Action::Tau) => stack.push(p.clone().then(a, t)),
                (Hat::Visible(l), Action::Visible(m)) if l == m && targets.contains(&t) => {
                    out.push(p.clone().then(a, t))
                }
                _ => {}
            }
        }
    }
    out.sort();
    out
}
