use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{is_antichain, separation_closure, valuation, UpperSet};
use crate::fps::{mu_p, Fps};
use crate::paths::{Path, StateId};
use crate::rational::{format_fraction, one, zero};

/// Audited laws, in report order.
pub const LAWS: [&str; 9] = [
    "strictness",
    "monotonicity",
    "modularity",
    "closure-idempotence",
    "hereditarity",
    "upward-closure-invariance",
    "separated-sum-bound",
    "weight-order-reversal",
    "empty-path-weight",
];

const DEPTH_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationReport {
    pub law: String,
    pub trials: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// One execution drawn by simulation from `start`, at most `DEPTH_CAP` steps.
fn simulate<R: Rng>(fps: &Fps, start: StateId, rng: &mut R) -> Path {
    let mut p = Path::empty(start);
    let len = rng.gen_range(0..=DEPTH_CAP);
    for _ in 0..len {
        let row = fps.outgoing(p.last());
        if row.is_empty() {
            break;
        }
        let weights: Vec<f64> = row
            .iter()
            .map(|(_, _, q)| q.to_f64().unwrap_or(0.0))
            .collect();
        let (a, t, _) = &row[WeightedIndex::new(&weights)
            .expect("positive row")
            .sample(rng)];
        p.push(*a, *t);
    }
    p
}

/// Deduplicated simulated executions, all from one random start state.
fn random_set<R: Rng>(fps: &Fps, rng: &mut R) -> BTreeSet<Path> {
    let start = rng.gen_range(0..fps.num_states());
    let count = rng.gen_range(0..=5);
    (0..count).map(|_| simulate(fps, start, rng)).collect()
}

/// Extensions of members of `set` by further simulation.
fn extensions<R: Rng>(fps: &Fps, set: &BTreeSet<Path>, rng: &mut R) -> BTreeSet<Path> {
    let mut out = BTreeSet::new();
    for p in set {
        for _ in 0..rng.gen_range(0..=2) {
            let tail = simulate(fps, p.last(), rng);
            let mut q = p.clone();
            for &(a, t) in tail.steps() {
                q.push(a, t);
            }
            out.insert(q);
        }
    }
    out
}

fn render(fps: &Fps, set: &BTreeSet<Path>) -> String {
    let items: Vec<String> = set.iter().map(|p| fps.format_path(p)).collect();
    format!("{{{}}}", items.join(", "))
}

/// Checks one law on one random instance; `Err` carries a witness.
fn check<R: Rng>(fps: &Fps, law: &str, rng: &mut R) -> Result<(), String> {
    match law {
        "strictness" => {
            let v = valuation(fps, &UpperSet::empty());
            if v == zero() {
                Ok(())
            } else {
                Err(format!("μ(∅) = {}", format_fraction(&v)))
            }
        }
        "monotonicity" => {
            let g = random_set(fps, rng);
            let mut h: BTreeSet<Path> = random_set(fps, rng);
            // shorten some generators of G, so ↑G ⊆ ↑H
            for p in &g {
                let cut = rng.gen_range(0..=p.len());
                h.insert(p.prefix(cut));
            }
            let (gu, hu) = (
                UpperSet::generated_by(g.clone()),
                UpperSet::generated_by(h.clone()),
            );
            if !gu.is_subset(&hu) {
                return Err(format!(
                    "construction failed: {} ⊄ {}",
                    render(fps, &g),
                    render(fps, &h)
                ));
            }
            let (vg, vh) = (valuation(fps, &gu), valuation(fps, &hu));
            if vg <= vh {
                Ok(())
            } else {
                Err(format!(
                    "μ(↑{}) = {} > μ(↑{}) = {}",
                    render(fps, &g),
                    format_fraction(&vg),
                    render(fps, &h),
                    format_fraction(&vh)
                ))
            }
        }
        "modularity" => {
            let (g, h) = (random_set(fps, rng), random_set(fps, rng));
            let (u, v) = (
                UpperSet::generated_by(g.clone()),
                UpperSet::generated_by(h.clone()),
            );
            let lhs = valuation(fps, &u) + valuation(fps, &v);
            let rhs = valuation(fps, &u.union(&v)) + valuation(fps, &u.intersect(&v));
            if lhs == rhs {
                Ok(())
            } else {
                Err(format!(
                    "U = ↑{}, V = ↑{}: {} ≠ {}",
                    render(fps, &g),
                    render(fps, &h),
                    format_fraction(&lhs),
                    format_fraction(&rhs)
                ))
            }
        }
        "closure-idempotence" => {
            let mut u = random_set(fps, rng);
            u.extend(extensions(fps, &u, rng));
            let star = separation_closure(&u);
            if separation_closure(&star) == star {
                Ok(())
            } else {
                Err(format!("U = {}", render(fps, &u)))
            }
        }
        "hereditarity" => {
            let mut u = random_set(fps, rng);
            u.extend(extensions(fps, &u, rng));
            let star = separation_closure(&u);
            let k = rng.gen_range(0..=star.len());
            let sub: BTreeSet<Path> = star
                .iter()
                .cloned()
                .choose_multiple(rng, k)
                .into_iter()
                .collect();
            if is_antichain(&star) && is_antichain(&sub) {
                Ok(())
            } else {
                Err(format!(
                    "U⋆ = {}, subset {}",
                    render(fps, &star),
                    render(fps, &sub)
                ))
            }
        }
        "upward-closure-invariance" => {
            let u = random_set(fps, rng);
            let mut up = u.clone();
            up.extend(extensions(fps, &u, rng));
            if separation_closure(&up) == separation_closure(&u) {
                Ok(())
            } else {
                Err(format!(
                    "U = {}, extended {}",
                    render(fps, &u),
                    render(fps, &up)
                ))
            }
        }
        "separated-sum-bound" => {
            let start = rng.gen_range(0..fps.num_states());
            let p = simulate(fps, start, rng);
            let ext = extensions(fps, &BTreeSet::from([p.clone()]), rng);
            let sep = separation_closure(&ext);
            let total = sep.iter().map(|q| mu_p(fps, q)).sum();
            let bound = mu_p(fps, &p);
            if total <= bound {
                Ok(())
            } else {
                Err(format!(
                    "p = {}, U = {}: {} > {}",
                    fps.format_path(&p),
                    render(fps, &sep),
                    format_fraction(&total),
                    format_fraction(&bound)
                ))
            }
        }
        "weight-order-reversal" => {
            let start = rng.gen_range(0..fps.num_states());
            let q = simulate(fps, start, rng);
            let p = q.prefix(rng.gen_range(0..=q.len()));
            if mu_p(fps, &q) <= mu_p(fps, &p) {
                Ok(())
            } else {
                Err(format!("{} ⪯ {}", fps.format_path(&p), fps.format_path(&q)))
            }
        }
        "empty-path-weight" => {
            let x = rng.gen_range(0..fps.num_states());
            if mu_p(fps, &Path::empty(x)) == one() {
                Ok(())
            } else {
                Err(format!("state {}", fps.state_name(x)))
            }
        }
        other => unreachable!("unknown law {other}"),
    }
}

/// Runs every law `trials` times on random executions of `fps`. Trial `i`
/// of law `k` draws from its own ChaCha stream, so reports do not depend on
/// scheduling. The witness is the shortest one found.
pub fn audit_valuation(fps: &Fps, seed: u64, trials: usize) -> Vec<ValuationReport> {
    LAWS.iter()
        .enumerate()
        .map(|(k, law)| {
            let witnesses: Vec<String> = (0..trials)
                .into_par_iter()
                .filter_map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream((k * trials + i) as u64);
                    check(fps, law, &mut rng).err()
                })
                .collect();
            ValuationReport {
                law: law.to_string(),
                trials,
                failures: witnesses.len(),
                witness: witnesses.into_iter().min_by_key(|w| (w.len(), w.clone())),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fps::fixtures::tau_loop;

    #[test]
    fn tau_loop_passes_every_law() {
        let reports = audit_valuation(&tau_loop(), 42, 200);
        assert_eq!(reports.len(), LAWS.len());
        for r in &reports {
            assert_eq!(r.failures, 0, "{r:?}");
            assert_eq!(r.trials, 200);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let fps = tau_loop();
        assert_eq!(audit_valuation(&fps, 7, 20), audit_valuation(&fps, 7, 20));
    }

    #[test]
    fn report_json_omits_missing_witness() {
        let r = ValuationReport {
            law: "strictness".into(),
            trials: 3,
            failures: 0,
            witness: None,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"law":"strictness","trials":3,"failures":0}"#
        );
    }

    #[test]
    fn bound_instance() {
        let fps = tau_loop();
        let x = |n: &str| fps.resolve(n).unwrap();
        let b = fps.visible_action("b").unwrap();
        let p = Path::empty(x("x1")).then(crate::paths::Action::Tau, x("x2"));
        let q = p.clone().then(b, x("x4"));
        assert_eq!(mu_p(&fps, &q), mu_p(&fps, &p));
    }
}
