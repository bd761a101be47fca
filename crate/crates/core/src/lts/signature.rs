//! Finite signatures for path-set refinement.
//!
//! The image of `α(x)` under a block map, taken up to stuttering, is a set
//! of words `B₀ (a₁,B₁) (a₂,B₂) …`. When τ-cycles cross blocks that set is
//! infinite, but it is always regular. We build an ε-NFA over
//! configurations `(state, phase)`, determinize, minimize, and number the
//! states canonically so that equal languages give identical automata.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{Lts, Semantics, TauClosure};
use crate::partition::Partition;
use crate::paths::{Action, StateId};

/// One letter of a signature word: the initial block, or an action followed
/// by the block it lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigSymbol {
    Start(usize),
    Step(Action, usize),
}

/// Minimal deterministic automaton with every state accepting. States are
/// numbered breadth-first from the initial state (`0`) following edges in
/// symbol order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignatureAutomaton {
    edges: Vec<Vec<(SigSymbol, u32)>>,
    hash: u64,
}

impl SignatureAutomaton {
    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self, q: usize) -> &[(SigSymbol, u32)] {
        &self.edges[q]
    }

    /// Stable FNV-1a hash of the canonical encoding.
    pub fn canonical_hash(&self) -> u64 {
        self.hash
    }

    fn step(&self, q: usize, sym: SigSymbol) -> Option<usize> {
        self.edges[q]
            .binary_search_by(|(s, _)| s.cmp(&sym))
            .ok()
            .map(|i| self.edges[q][i].1 as usize)
    }

    pub fn accepts(&self, word: &[SigSymbol]) -> bool {
        word.iter()
            .try_fold(0usize, |q, &sym| self.step(q, sym))
            .is_some()
    }

    /// The nonempty words of the (prefix-closed) language, or `None` if it
    /// is infinite.
    pub fn words(&self) -> Option<BTreeSet<Vec<SigSymbol>>> {
        let mut out = BTreeSet::new();
        let mut on_stack = vec![false; self.edges.len()];
        let mut word = Vec::new();
        self.collect(0, &mut word, &mut on_stack, &mut out)
            .then_some(out)
    }

    fn collect(
        &self,
        q: usize,
        word: &mut Vec<SigSymbol>,
        on_stack: &mut [bool],
        out: &mut BTreeSet<Vec<SigSymbol>>,
    ) -> bool {
        if on_stack[q] {
            return false;
        }
        if !word.is_empty() {
            out.insert(word.clone());
        }
        on_stack[q] = true;
        for &(sym, t) in &self.edges[q] {
            word.push(sym);
            let finite = self.collect(t as usize, word, on_stack, out);
            word.pop();
            if !finite {
                return false;
            }
        }
        on_stack[q] = false;
        true
    }

    /// A shortest word accepted by exactly one of the two automata.
    pub fn distinguishing_word(&self, other: &SignatureAutomaton) -> Option<Vec<SigSymbol>> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        queue.push_back((Some(0usize), Some(0usize), Vec::new()));
        seen.insert((Some(0usize), Some(0usize)));
        while let Some((p, q, word)) = queue.pop_front() {
            if p.is_none() != q.is_none() {
                return Some(word);
            }
            let mut symbols: BTreeSet<SigSymbol> = BTreeSet::new();
            if let Some(p) = p {
                symbols.extend(self.edges[p].iter().map(|e| e.0));
            }
            if let Some(q) = q {
                symbols.extend(other.edges[q].iter().map(|e| e.0));
            }
            for sym in symbols {
                let next = (
                    p.and_then(|p| self.step(p, sym)),
                    q.and_then(|q| other.step(q, sym)),
                );
                if seen.insert(next) {
                    let mut w = word.clone();
                    w.push(sym);
                    queue.push_back((next.0, next.1, w));
                }
            }
        }
        None
    }
}

const ROOT: u32 = 0;
const DONE: u32 = 1;

/// Reusable signature construction for one system and semantics.
pub(crate) struct SignatureBuilder<'a> {
    lts: &'a Lts,
    closure: TauClosure,
    sem: Semantics,
}

struct Moves {
    eps: Vec<u32>,
    labelled: Vec<(SigSymbol, u32)>,
}

impl<'a> SignatureBuilder<'a> {
    pub(crate) fn new(lts: &'a Lts, sem: Semantics) -> Self {
        SignatureBuilder {
            lts,
            closure: lts.weak_closure(),
            sem,
        }
    }

    fn node(&self, phase: usize, s: StateId) -> u32 {
        (2 + phase * self.lts.num_states() + s) as u32
    }

    fn decode(&self, node: u32) -> (usize, StateId) {
        let i = node as usize - 2;
        (i / self.lts.num_states(), i % self.lts.num_states())
    }

    /// Outgoing NFA moves of `node` for the signature rooted at `x`.
    fn moves(&self, part: &Partition, x: StateId, node: u32) -> Moves {
        let block = |s: StateId| part.block_of(s);
        let mut eps = Vec::new();
        let mut labelled = Vec::new();
        if node == ROOT {
            labelled.push((SigSymbol::Start(block(x)), self.node(0, x)));
            return Moves { eps, labelled };
        }
        if node == DONE {
            return Moves { eps, labelled };
        }
        let (phase, s) = self.decode(node);
        let lts = self.lts;
        // τ-step within the current phase: silent when it stays in the block
        let tau_walk = |eps: &mut Vec<u32>, labelled: &mut Vec<(SigSymbol, u32)>, phase| {
            for &(a, t) in lts.outgoing(s) {
                if a.is_tau() {
                    let target = self.node(phase, t);
                    if block(t) == block(s) {
                        eps.push(target);
                    } else {
                        labelled.push((SigSymbol::Step(Action::Tau, block(t)), target));
                    }
                }
            }
        };
        match (self.sem, phase) {
            (Semantics::Branching, _) => {
                tau_walk(&mut eps, &mut labelled, 0);
                for &(a, t) in lts.outgoing(s) {
                    if !a.is_tau() {
                        labelled.push((SigSymbol::Step(a, block(t)), DONE));
                    }
                }
            }
            (Semantics::Weak, _) => {
                for &u in self.closure.reachable(s) {
                    for &(a, t) in lts.outgoing(u) {
                        for &v in self.closure.reachable(t) {
                            if !(a.is_tau() && block(v) == block(s)) {
                                labelled.push((SigSymbol::Step(a, block(v)), DONE));
                            }
                        }
                    }
                }
            }
            (Semantics::Eta, _) => {
                tau_walk(&mut eps, &mut labelled, 0);
                for &(a, t) in lts.outgoing(s) {
                    for &v in self.closure.reachable(t) {
                        if !(a.is_tau() && block(v) == block(s)) {
                            labelled.push((SigSymbol::Step(a, block(v)), DONE));
                        }
                    }
                }
            }
            (Semantics::Delay, 0) => {
                for &u in self.closure.reachable(s) {
                    for &(a, t) in lts.outgoing(u) {
                        let target = self.node(1, t);
                        if a.is_tau() && block(t) == block(s) {
                            eps.push(target);
                        } else {
                            labelled.push((SigSymbol::Step(a, block(t)), target));
                        }
                    }
                }
            }
            (Semantics::Delay, _) => tau_walk(&mut eps, &mut labelled, 1),
        }
        Moves { eps, labelled }
    }

    pub(crate) fn build(&self, part: &Partition, x: StateId) -> SignatureAutomaton {
        // explore the reachable part of the NFA once
        let mut nfa: HashMap<u32, Moves> = HashMap::new();
        let mut stack = vec![ROOT];
        while let Some(node) = stack.pop() {
            if nfa.contains_key(&node) {
                continue;
            }
            let m = self.moves(part, x, node);
            stack.extend(m.eps.iter().copied());
            stack.extend(m.labelled.iter().map(|&(_, t)| t));
            nfa.insert(node, m);
        }
        let close = |mut set: BTreeSet<u32>| -> Vec<u32> {
            let mut stack: Vec<u32> = set.iter().copied().collect();
            while let Some(n) = stack.pop() {
                for &m in &nfa[&n].eps {
                    if set.insert(m) {
                        stack.push(m);
                    }
                }
            }
            set.into_iter().collect()
        };

        // subset construction
        let start = close(BTreeSet::from([ROOT]));
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut sets = vec![start];
        let mut dfa: Vec<Vec<(SigSymbol, usize)>> = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut by_symbol: BTreeMap<SigSymbol, BTreeSet<u32>> = BTreeMap::new();
            for n in &sets[i] {
                for &(sym, t) in &nfa[n].labelled {
                    by_symbol.entry(sym).or_default().insert(t);
                }
            }
            let mut row = Vec::with_capacity(by_symbol.len());
            for (sym, targets) in by_symbol {
                let target = close(targets);
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        sets.push(target.clone());
                        index.insert(target, sets.len() - 1);
                        sets.len() - 1
                    }
                };
                row.push((sym, id));
            }
            dfa.push(row);
            i += 1;
        }
        canonical_minimal(&dfa)
    }
}

/// Moore-style minimization of a partial DFA whose states all accept,
/// followed by breadth-first canonical renumbering.
fn canonical_minimal(dfa: &[Vec<(SigSymbol, usize)>]) -> SignatureAutomaton {
    let mut class = Partition::trivial(dfa.len());
    loop {
        let keys: Vec<(usize, Vec<(SigSymbol, usize)>)> = dfa
            .iter()
            .enumerate()
            .map(|(q, row)| {
                (
                    class.block_of(q),
                    row.iter().map(|&(s, t)| (s, class.block_of(t))).collect(),
                )
            })
            .collect();
        let next = Partition::from_keys(&keys);
        let stable = next.num_blocks() == class.num_blocks();
        class = next;
        if stable {
            break;
        }
    }

    let mut number = vec![u32::MAX; class.num_blocks()];
    let mut order = Vec::with_capacity(class.num_blocks());
    let root = class.block_of(0);
    number[root] = 0;
    order.push(root);
    let mut edges = Vec::with_capacity(class.num_blocks());
    let mut i = 0;
    while i < order.len() {
        let representative = class.block(order[i])[0];
        let mut row = Vec::with_capacity(dfa[representative].len());
        for &(sym, t) in &dfa[representative] {
            let c = class.block_of(t);
            if number[c] == u32::MAX {
                number[c] = order.len() as u32;
                order.push(c);
            }
            row.push((sym, number[c]));
        }
        edges.push(row);
        i += 1;
    }
    let hash = fnv1a(&edges);
    SignatureAutomaton { edges, hash }
}

fn fnv1a(edges: &[Vec<(SigSymbol, u32)>]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut feed = |v: u64| {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    feed(edges.len() as u64);
    for row in edges {
        feed(row.len() as u64);
        for &(sym, t) in row {
            match sym {
                SigSymbol::Start(b) => {
                    feed(0);
                    feed(b as u64);
                }
                SigSymbol::Step(Action::Tau, b) => {
                    feed(1);
                    feed(b as u64);
                }
                SigSymbol::Step(Action::Visible(l), b) => {
                    feed(2);
                    feed(l as u64);
                    feed(b as u64);
                }
            }
            feed(t as u64);
        }
    }
    h
}

/// Signature of `x` with respect to `part`: the canonical minimal automaton
/// of the stutter-collapsed block images of `α(x)`.
pub fn signature_automaton(
    lts: &Lts,
    part: &Partition,
    x: StateId,
    sem: Semantics,
) -> SignatureAutomaton {
    SignatureBuilder::new(lts, sem).build(part, x)
}
