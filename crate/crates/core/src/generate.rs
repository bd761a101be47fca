//! Seeded random systems for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::fps::{Fps, ProbTransition};
use crate::lts::{Lts, Transition};
use crate::paths::{Action, Label, Path, StateId};
use crate::rational::ratio;

/// Shape of a random system.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_states: usize,
    pub labels: usize,
    /// Chance that a drawn action is τ.
    pub tau_bias: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_states: 8,
            labels: 2,
            tau_bias: 0.4,
        }
    }
}

fn label_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

fn draw_action<R: Rng>(rng: &mut R, shape: &Shape) -> Action {
    if shape.labels == 0 || rng.gen_bool(shape.tau_bias) {
        Action::Tau
    } else {
        Action::Visible(rng.gen_range(0..shape.labels) as Label)
    }
}

/// An LTS with `1..=max_states` numeric states and up to `2n` transitions.
pub fn random_lts<R: Rng>(rng: &mut R, shape: &Shape) -> Lts {
    let n = rng.gen_range(1..=shape.max_states);
    let count = rng.gen_range(0..=2 * n);
    let mut transitions: Vec<Transition> = (0..count)
        .map(|_| Transition {
            source: rng.gen_range(0..n),
            action: draw_action(rng, shape),
            target: rng.gen_range(0..n),
        })
        .collect();
    transitions.sort();
    transitions.dedup();
    let names = (0..n).map(|i| i.to_string()).collect();
    Lts::new(names, label_names(shape.labels), 0, transitions).expect("generated system is valid")
}

/// An FPS with `1..=max_states` states named `s0, s1, …`. Each state is a
/// stop state with probability 1/5; otherwise its mass is split into
/// multiples of `1/d` for a random `d ≤ max_denominator`.
pub fn random_fps<R: Rng>(rng: &mut R, shape: &Shape, max_denominator: u32) -> Fps {
    let n = rng.gen_range(1..=shape.max_states);
    let mut transitions = Vec::new();
    for s in 0..n {
        if rng.gen_bool(0.2) {
            continue;
        }
        let d = rng.gen_range(1..=max_denominator.max(1)) as i64;
        let parts = rng.gen_range(1..=d.min(3));
        let mut cuts: Vec<i64> = (1..d).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<i64> = cuts.into_iter().take(parts as usize - 1).collect();
        cuts.push(0);
        cuts.push(d);
        cuts.sort();
        let mut used: Vec<(Action, StateId)> = Vec::new();
        for w in cuts.windows(2) {
            let weight = w[1] - w[0];
            let key = loop {
                let key = (draw_action(rng, shape), rng.gen_range(0..n));
                if !used.contains(&key) {
                    break key;
                }
            };
            used.push(key);
            transitions.push(ProbTransition {
                source: s,
                action: key.0,
                target: key.1,
                prob: ratio(weight, d),
            });
        }
    }
    let names = (0..n).map(|i| format!("s{i}")).collect();
    Fps::new(names, label_names(shape.labels), transitions).expect("generated system is valid")
}

/// An arbitrary path over `states` states with up to `max_len` steps; τ
/// self-steps are frequent so that stuttering is exercised.
pub fn random_path<R: Rng>(rng: &mut R, states: usize, labels: usize, max_len: usize) -> Path {
    let mut p = Path::empty(rng.gen_range(0..states));
    for _ in 0..rng.gen_range(0..=max_len) {
        let here = p.last();
        if rng.gen_bool(0.4) {
            p.push(Action::Tau, here);
        } else {
            let a = if labels == 0 || rng.gen_bool(0.3) {
                Action::Tau
            } else {
                Action::Visible(rng.gen_range(0..labels) as Label)
            };
            p.push(a, rng.gen_range(0..states));
        }
    }
    p
}
