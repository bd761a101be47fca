//! Greatest-fixpoint relation refinement using the classical transfer
//! properties. Independent of the path signatures; used as the oracle.

use super::{Lts, Semantics, TauClosure};
use crate::partition::Partition;
use crate::paths::{Action, StateId};

/// Can `y` answer the step `x -a-> x2` while `rel` holds?
fn answers(
    lts: &Lts,
    closure: &TauClosure,
    rel: &[Vec<bool>],
    sem: Semantics,
    (x, a, x2): (StateId, Action, StateId),
    y: StateId,
) -> bool {
    if a.is_tau() && rel[x2][y] {
        return true;
    }
    closure.reachable(y).iter().any(|&y1| {
        let pre_ok = match sem {
            Semantics::Branching | Semantics::Eta => rel[x][y1],
            Semantics::Weak | Semantics::Delay => true,
        };
        pre_ok
            && lts.outgoing(y1).iter().any(|&(b, y2)| {
                b == a
                    && match sem {
                        Semantics::Branching | Semantics::Delay => rel[x2][y2],
                        Semantics::Weak | Semantics::Eta => {
                            closure.reachable(y2).iter().any(|&y3| rel[x2][y3])
                        }
                    }
            })
    })
}

/// Largest bisimulation of the given kind, as a partition.
pub fn classical_partition(lts: &Lts, sem: Semantics) -> Partition {
    let n = lts.num_states();
    let closure = lts.weak_closure();
    let mut rel = vec![vec![true; n]; n];
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            for y in 0..n {
                if x == y || !rel[x][y] {
                    continue;
                }
                let ok = lts
                    .outgoing(x)
                    .iter()
                    .all(|&(a, x2)| answers(lts, &closure, &rel, sem, (x, a, x2), y));
                if !ok {
                    rel[x][y] = false;
                    rel[y][x] = false;
                    changed = true;
                }
            }
        }
    }
    let part = Partition::from_keys(&rel);
    debug_assert!(
        (0..n).all(|x| (0..n).all(|y| rel[x][y] == part.same_block(x, y))),
        "largest bisimulation is not an equivalence"
    );
    part
}
