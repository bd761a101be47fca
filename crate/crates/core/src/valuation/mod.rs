//! Finitely generated upper sets of paths or stutter classes, the path
//! valuation `μ̃(U) = Σ μ(U⋆)` and the measure it induces on stutter classes.

mod audit;
mod measure;

use std::collections::BTreeSet;

use crate::fps::{mu_p, Fps};
use crate::paths::{Path, StutterClass};
use crate::rational::Rational;

pub use audit::{audit_valuation, ValuationReport, LAWS};
pub use measure::{
    alpha_measure, class_future_measure, class_future_tail_bound, class_future_truncated,
};

/// A set with a prefix order: every principal down-set is a chain.
pub trait PrefixOrdered: Ord + Clone {
    fn prefix_leq(&self, other: &Self) -> bool;

    fn comparable(&self, other: &Self) -> bool {
        self.prefix_leq(other) || other.prefix_leq(self)
    }
}

impl PrefixOrdered for Path {
    fn prefix_leq(&self, other: &Self) -> bool {
        Path::prefix_leq(self, other)
    }
}

impl PrefixOrdered for StutterClass {
    fn prefix_leq(&self, other: &Self) -> bool {
        self.leq(other)
    }
}

/// `U⋆`: the members of `set` with no strictly smaller member.
pub fn separation_closure<T: PrefixOrdered>(set: &BTreeSet<T>) -> BTreeSet<T> {
    set.iter()
        .filter(|x| !set.iter().any(|y| y != *x && y.prefix_leq(x)))
        .cloned()
        .collect()
}

pub fn is_antichain<T: PrefixOrdered>(set: &BTreeSet<T>) -> bool {
    set.iter()
        .all(|x| set.iter().all(|y| x == y || !x.prefix_leq(y)))
}

/// `↑G` for a finite antichain `G` of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpperSet<T> {
    generators: BTreeSet<T>,
}

pub type PathUpperSet = UpperSet<Path>;
pub type ClassUpperSet = UpperSet<StutterClass>;

impl<T: PrefixOrdered> UpperSet<T> {
    pub fn empty() -> Self {
        UpperSet {
            generators: BTreeSet::new(),
        }
    }

    pub fn principal(g: T) -> Self {
        UpperSet {
            generators: BTreeSet::from([g]),
        }
    }

    pub fn generated_by(gens: impl IntoIterator<Item = T>) -> Self {
        upset_normalize(&gens.into_iter().collect())
    }

    pub fn generators(&self) -> &BTreeSet<T> {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.generators.iter().any(|g| g.prefix_leq(x))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn union(&self, other: &Self) -> Self {
        upset_union(self, other)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        upset_intersect(self, other)
    }
}

pub fn upset_normalize<T: PrefixOrdered>(gens: &BTreeSet<T>) -> UpperSet<T> {
    UpperSet {
        generators: separation_closure(gens),
    }
}

pub fn upset_union<T: PrefixOrdered>(u: &UpperSet<T>, v: &UpperSet<T>) -> UpperSet<T> {
    upset_normalize(&u.generators.union(&v.generators).cloned().collect())
}

/// In a prefix order two principal upper sets meet only if their generators
/// are comparable, and then in the larger one.
pub fn upset_intersect<T: PrefixOrdered>(u: &UpperSet<T>, v: &UpperSet<T>) -> UpperSet<T> {
    let mut meet = BTreeSet::new();
    for g in &u.generators {
        for h in &v.generators {
            if g.prefix_leq(h) {
                meet.insert(h.clone());
            } else if h.prefix_leq(g) {
                meet.insert(g.clone());
            }
        }
    }
    upset_normalize(&meet)
}

/// `μ̃(U) = Σ_{g ∈ U⋆} μ(g)`.
pub fn valuation(fps: &Fps, u: &PathUpperSet) -> Rational {
    u.generators.iter().map(|g| mu_p(fps, g)).sum()
}
