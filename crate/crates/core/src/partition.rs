use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::paths::StateId;

/// A partition of `0..n` into blocks. Block ids are dense and numbered by
/// smallest member, so equal partitions have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<StateId>>,
}

impl Partition {
    /// Group states by equal keys.
    pub fn from_keys<K: Eq + Hash>(keys: &[K]) -> Self {
        let mut ids: HashMap<&K, usize> = HashMap::with_capacity(keys.len());
        let mut block_of = Vec::with_capacity(keys.len());
        let mut blocks: Vec<Vec<StateId>> = Vec::new();
        for (state, key) in keys.iter().enumerate() {
            let id = *ids.entry(key).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[id].push(state);
            block_of.push(id);
        }
        Partition { block_of, blocks }
    }

    /// Re-number an arbitrary labelling into canonical form.
    pub fn from_block_of(labels: &[usize]) -> Self {
        Self::from_keys(labels)
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_keys(&vec![(); n])
    }

    pub fn discrete(n: usize) -> Self {
        Partition {
            block_of: (0..n).collect(),
            blocks: (0..n).map(|s| vec![s]).collect(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, state: StateId) -> usize {
        self.block_of[state]
    }

    /// The state-to-block map as a lookup table.
    pub fn block_map(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block(&self, id: usize) -> &[StateId] {
        &self.blocks[id]
    }

    pub fn blocks(&self) -> &[Vec<StateId>] {
        &self.blocks
    }

    pub fn same_block(&self, x: StateId, y: StateId) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.num_states() == coarser.num_states()
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&s| coarser.same_block(s, b[0])))
    }

    /// The finest partition coarser than both (transitive closure of the union).
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.num_states();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for p in [self, other] {
            for block in &p.blocks {
                for &s in &block[1..] {
                    let (a, b) = (find(&mut parent, block[0]), find(&mut parent, s));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|s| find(&mut parent, s)).collect();
        Partition::from_keys(&roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_follow_smallest_member() {
        let p = Partition::from_keys(&["z", "a", "z", "q"]);
        assert_eq!(p.block_map(), &[0, 1, 0, 2]);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1], vec![3]]);
        assert_eq!(
            Partition::from_block_of(&[7, 7, 3]),
            Partition::from_keys(&[1, 1, 0])
        );
    }

    #[test]
    fn refinement_and_join() {
        let fine = Partition::from_block_of(&[0, 1, 1, 2]);
        let coarse = Partition::from_block_of(&[0, 1, 1, 1]);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(Partition::discrete(4).refines(&fine));
        assert!(fine.refines(&Partition::trivial(4)));
        let other = Partition::from_block_of(&[0, 0, 1, 2]);
        assert_eq!(fine.join(&other), Partition::from_block_of(&[0, 0, 0, 1]));
    }
}
