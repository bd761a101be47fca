use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::linear::least_fixpoint;
use super::reach::reach_vector;
use super::{Fps, Hat, ProbTransition};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::paths::{Action, StateId};
use crate::rational::{zero, Rational};

/// Largest system the exhaustive oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// The nonzero values `P(x, τ*â, C)` keyed by `(â, block of C)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ProbSignature(pub BTreeMap<(Hat, usize), Rational>);

impl ProbSignature {
    pub fn get(&self, hat: Hat, block: usize) -> Rational {
        self.0.get(&(hat, block)).cloned().unwrap_or_else(zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Hat, usize), &Rational)> {
        self.0.iter()
    }
}

/// Signatures of every state against `part`.
pub fn prob_signatures(fps: &Fps, part: &Partition) -> Vec<ProbSignature> {
    let keys: Vec<(Hat, usize)> = fps
        .hats()
        .into_iter()
        .flat_map(|h| (0..part.num_blocks()).map(move |b| (h, b)))
        .collect();
    let columns: Vec<Vec<Rational>> = keys
        .par_iter()
        .map(|&(hat, b)| {
            let mut mask = vec![false; fps.num_states()];
            for &s in part.block(b) {
                mask[s] = true;
            }
            reach_vector(fps, hat, &mask)
        })
        .collect();
    (0..fps.num_states())
        .map(|s| {
            ProbSignature(
                keys.iter()
                    .zip(&columns)
                    .filter(|(_, col)| !col[s].is_zero())
                    .map(|(&k, col)| (k, col[s].clone()))
                    .collect(),
            )
        })
        .collect()
}

/// Whether states sharing a block of `part` have equal signatures against it.
pub fn is_delay_bisimulation(fps: &Fps, part: &Partition) -> bool {
    let sigs = prob_signatures(fps, part);
    part.blocks()
        .iter()
        .all(|b| b.iter().all(|&s| sigs[s] == sigs[b[0]]))
}

/// Partitions from one block down to the fixed point; each refines the last.
pub fn delay_refine_rounds(fps: &Fps) -> Vec<Partition> {
    let mut rounds = vec![Partition::trivial(fps.num_states())];
    loop {
        let current = rounds.last().expect("non-empty");
        let sigs = prob_signatures(fps, current);
        let keys: Vec<(usize, &ProbSignature)> = sigs
            .iter()
            .enumerate()
            .map(|(s, sig)| (current.block_of(s), sig))
            .collect();
        let next = Partition::from_keys(&keys);
        if next.num_blocks() == current.num_blocks() {
            return rounds;
        }
        rounds.push(next);
    }
}

/// Coarsest partition stable under its own signatures.
pub fn delay_refine(fps: &Fps) -> Partition {
    delay_refine_rounds(fps).pop().expect("non-empty")
}

/// Exhaustive search over all set partitions; the join of every valid one,
/// checked to be valid itself.
pub fn brute_force_delay(fps: &Fps) -> Result<Partition> {
    let n = fps.num_states();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            states: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut candidates = Vec::new();
    let mut rgs = vec![0usize; n];
    set_partitions(&mut rgs, 0, 0, &mut candidates);
    let valid: Vec<Partition> = candidates
        .into_par_iter()
        .map(|labels| Partition::from_block_of(&labels))
        .filter(|p| is_delay_bisimulation(fps, p))
        .collect();
    let join = valid
        .iter()
        .fold(Partition::discrete(n), |acc, p| acc.join(p));
    if is_delay_bisimulation(fps, &join) {
        Ok(join)
    } else {
        Err(Error::NoCoarsest)
    }
}

/// Restricted growth strings of length `labels.len()`.
fn set_partitions(labels: &mut Vec<usize>, i: usize, used: usize, out: &mut Vec<Vec<usize>>) {
    if i == labels.len() {
        out.push(labels.clone());
        return;
    }
    for b in 0..=used {
        labels[i] = b;
        set_partitions(labels, i + 1, used.max(b + 1), out);
    }
}

/// How a state leaves its block: for each `(a, C)` with `a` visible or
/// `C` another block, the probability of τ-steps inside the block followed by
/// an `a`-step into `C`.
fn exit_distributions(
    fps: &Fps,
    part: &Partition,
    block: usize,
) -> Vec<BTreeMap<(Action, usize), Rational>> {
    let members = part.block(block);
    let local = |s: StateId| members.binary_search(&s).ok();
    let mut keys: Vec<(Action, usize)> = members
        .iter()
        .flat_map(|&s| {
            fps.outgoing(s)
                .iter()
                .map(|(a, t, _)| (*a, part.block_of(*t)))
        })
        .filter(|&(a, c)| !(a.is_tau() && c == block))
        .collect();
    keys.sort();
    keys.dedup();
    let edges: Vec<Vec<(usize, Rational)>> = members
        .iter()
        .map(|&s| {
            fps.outgoing(s)
                .iter()
                .filter(|(a, _, _)| a.is_tau())
                .filter_map(|(_, t, p)| local(*t).map(|j| (j, p.clone())))
                .collect()
        })
        .collect();
    let mut out = vec![BTreeMap::new(); members.len()];
    for (a, c) in keys {
        let direct: Vec<Rational> = members
            .iter()
            .map(|&s| {
                fps.outgoing(s)
                    .iter()
                    .filter(|(b, t, _)| *b == a && part.block_of(*t) == c)
                    .map(|(_, _, p)| p)
                    .sum()
            })
            .collect();
        for (i, v) in least_fixpoint(&edges, &direct).into_iter().enumerate() {
            if !v.is_zero() {
                out[i].insert((a, c), v);
            }
        }
    }
    out
}

/// Quotient by [`delay_refine`]. Each block becomes one state whose
/// transitions are the common exit distribution of its members. The result
/// is checked to reproduce every block's signature.
pub fn minimize_fps(fps: &Fps) -> Result<(Fps, Partition)> {
    let part = delay_refine(fps);
    let mut transitions = Vec::new();
    for b in 0..part.num_blocks() {
        let exits = exit_distributions(fps, &part, b);
        if exits.iter().any(|e| *e != exits[0]) {
            return Err(Error::Quotient(format!(
                "members of the block of `{}` leave it with different distributions",
                fps.state_name(part.block(b)[0])
            )));
        }
        for ((a, c), prob) in &exits[0] {
            transitions.push(ProbTransition {
                source: b,
                action: *a,
                target: *c,
                prob: prob.clone(),
            });
        }
    }
    let names = part
        .blocks()
        .iter()
        .map(|m| fps.state_name(m[0]).to_string())
        .collect();
    let quotient = Fps::new(names, fps.labels().to_vec(), transitions)
        .map_err(|e| Error::Quotient(e.to_string()))?
        .with_tau_label(fps.tau_label());
    let original = prob_signatures(fps, &part);
    let reduced = prob_signatures(&quotient, &Partition::discrete(part.num_blocks()));
    for (b, members) in part.blocks().iter().enumerate() {
        if reduced[b] != original[members[0]] {
            return Err(Error::Quotient(format!(
                "quotient state `{}` changes the reachability probabilities",
                quotient.state_name(b)
            )));
        }
    }
    Ok((quotient, part))
}
