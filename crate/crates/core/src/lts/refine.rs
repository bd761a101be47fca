use rayon::prelude::*;

use super::signature::SignatureBuilder;
use super::{Lts, Semantics, Transition};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::paths::StateId;

/// The whole final chain: `rounds[0]` is the one-block partition and the
/// last entry is the fixed point. Every entry refines its predecessor.
pub fn refine_rounds(lts: &Lts, sem: Semantics) -> Vec<Partition> {
    let builder = SignatureBuilder::new(lts, sem);
    let mut rounds = vec![Partition::trivial(lts.num_states())];
    loop {
        let current = rounds.last().expect("non-empty");
        let signatures: Vec<_> = (0..lts.num_states())
            .into_par_iter()
            .map(|x| builder.build(current, x))
            .collect();
        // signatures start with the current block, so this only ever splits
        let next = Partition::from_keys(&signatures);
        if next.num_blocks() == current.num_blocks() {
            return rounds;
        }
        rounds.push(next);
    }
}

/// Coarsest partition whose blocks have equal path signatures.
pub fn refine(lts: &Lts, sem: Semantics) -> Partition {
    refine_rounds(lts, sem).pop().expect("non-empty")
}

/// Whether `x` and `y` are equivalent under `sem`.
pub fn equivalent(lts: &Lts, x: StateId, y: StateId, sem: Semantics) -> Result<bool> {
    for s in [x, y] {
        if s >= lts.num_states() {
            return Err(Error::UnknownState(s.to_string()));
        }
    }
    let part = refine(lts, sem);
    #[cfg(debug_assertions)]
    if lts.num_states() <= 64 {
        debug_assert_eq!(
            part,
            super::classical_partition(lts, sem),
            "refinement disagrees with the relational oracle"
        );
    }
    Ok(part.same_block(x, y))
}

/// Quotient by `refine(lts, sem)`. Block transitions are member transitions
/// mapped through the block map; τ-steps inside a block vanish.
pub fn minimize(lts: &Lts, sem: Semantics) -> (Lts, Partition) {
    let part = refine(lts, sem);
    let numeric = lts
        .state_names()
        .iter()
        .enumerate()
        .all(|(i, n)| *n == i.to_string());
    let names = part
        .blocks()
        .iter()
        .enumerate()
        .map(|(b, members)| {
            if numeric {
                b.to_string()
            } else {
                lts.state_name(members[0]).to_string()
            }
        })
        .collect();
    let mut transitions: Vec<Transition> = lts
        .transitions()
        .iter()
        .map(|t| Transition {
            source: part.block_of(t.source),
            action: t.action,
            target: part.block_of(t.target),
        })
        .filter(|t| !(t.action.is_tau() && t.source == t.target))
        .collect();
    transitions.sort();
    transitions.dedup();
    let quotient = Lts::new(
        names,
        lts.labels().to_vec(),
        part.block_of(lts.initial()),
        transitions,
    )
    .expect("quotient of a valid system is valid")
    .with_tau_label(lts.tau_label());
    (quotient, part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lts::fixtures::{abcde, inert_tau, weak_only};
    use crate::lts::LtsBuilder;

    fn named_blocks(lts: &Lts, part: &Partition) -> Vec<Vec<String>> {
        part.blocks()
            .iter()
            .map(|b| b.iter().map(|&s| lts.state_name(s).to_string()).collect())
            .collect()
    }

    #[test]
    fn abcde_spectrum() {
        let lts = abcde();
        let check = |sem, expected: &[&[&str]]| {
            let got = named_blocks(&lts, &refine(&lts, sem));
            let want: Vec<Vec<String>> = expected
                .iter()
                .map(|b| b.iter().map(|s| s.to_string()).collect())
                .collect();
            assert_eq!(got, want, "{sem}");
        };
        check(Semantics::Weak, &[&["A", "B", "C"], &["D"], &["E"]]);
        check(Semantics::Eta, &[&["A", "C"], &["B"], &["D"], &["E"]]);
        check(Semantics::Delay, &[&["A", "B"], &["C"], &["D"], &["E"]]);
        check(
            Semantics::Branching,
            &[&["A"], &["B"], &["C"], &["D"], &["E"]],
        );
    }

    #[test]
    fn rounds_are_monotone_and_bounded() {
        let lts = abcde();
        for sem in Semantics::ALL {
            let rounds = refine_rounds(&lts, sem);
            assert!(rounds.len() <= lts.num_states());
            for w in rounds.windows(2) {
                assert!(w[1].refines(&w[0]));
                assert!(w[1].num_blocks() > w[0].num_blocks());
            }
        }
    }

    #[test]
    fn inert_tau_steps_are_absorbed() {
        let lts = inert_tau();
        let x = |n: &str| lts.resolve(n).unwrap();
        assert!(equivalent(&lts, x("x1"), x("x1'"), Semantics::Branching).unwrap());
        assert!(equivalent(&lts, x("x1"), x("y1"), Semantics::Branching).unwrap());
        assert!(equivalent(&lts, x("x2"), x("y1"), Semantics::Branching).unwrap());
        assert!(!equivalent(&lts, x("x1"), x("x5"), Semantics::Branching).unwrap());
    }

    #[test]
    fn weak_only_weak_not_branching() {
        let lts = weak_only();
        let (x1, y1) = (lts.resolve("x1").unwrap(), lts.resolve("y1").unwrap());
        assert!(equivalent(&lts, x1, y1, Semantics::Weak).unwrap());
        assert!(!equivalent(&lts, x1, y1, Semantics::Branching).unwrap());
    }

    #[test]
    fn reflexive_and_unknown() {
        let lts = abcde();
        for sem in Semantics::ALL {
            for s in 0..5 {
                assert!(equivalent(&lts, s, s, sem).unwrap());
            }
        }
        assert!(matches!(
            equivalent(&lts, 0, 7, Semantics::Weak),
            Err(Error::UnknownState(_))
        ));
    }

    #[test]
    fn minimize_abcde_weak() {
        let (q, part) = minimize(&abcde(), Semantics::Weak);
        assert_eq!(q.num_states(), 3);
        assert_eq!(part.num_blocks(), 3);
        assert_eq!(refine(&q, Semantics::Weak).num_blocks(), 3);
    }

    #[test]
    fn minimize_single_state() {
        let lts = crate::lts::aut::parse_aut("des (0,0,1)", &Default::default()).unwrap();
        for sem in Semantics::ALL {
            let (q, _) = minimize(&lts, sem);
            assert_eq!(q, lts);
        }
    }

    #[test]
    fn minimize_merges_across_inert_tau() {
        let lts = LtsBuilder::new()
            .transition("x1", "tau", "x2")
            .transition("x1", "a", "x3")
            .transition("x2", "a", "x4")
            .transition("x2", "b", "x5")
            .build();
        let (q, part) = minimize(&lts, Semantics::Branching);
        let x1 = lts.resolve("x1").unwrap();
        // x1 is branching-equivalent to x2 (inert τ), so they share a block
        let b = part.block_of(x1);
        assert!(part.block(b).contains(&lts.resolve("x2").unwrap()));
        assert_eq!(part.block(b).len(), 2);
        assert_eq!(q.num_states(), 2);
    }
}
