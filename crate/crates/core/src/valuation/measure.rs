use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ClassUpperSet;
use crate::fps::{mu_p, Fps};
use crate::paths::{Path, StateId, StutterClass};
use crate::rational::{one, zero, Rational};

/// τ-loop probabilities at the non-final states of the canonical path.
fn loop_weights(fps: &Fps, canonical: &Path) -> Vec<Rational> {
    (0..canonical.len())
        .map(|i| fps.tau_loop(canonical.state_at(i)))
        .collect()
}

/// Measure of the executions from the class's start state whose stutter
/// class extends `c`.
///
/// The minimal such executions are the canonical path with any number of τ
/// self-loops inserted before each non-final step, so the total is
/// `μ(p̂) · Π 1/(1 − ℓᵢ)`.
pub fn class_future_measure(fps: &Fps, c: &StutterClass) -> Rational {
    let p = c.canonical();
    let base = mu_p(fps, p);
    if base.is_zero() {
        return base;
    }
    loop_weights(fps, p)
        .into_iter()
        .fold(base, |acc, l| acc / (one() - l))
}

/// The same quantity summed directly over the minimal executions of at most
/// `depth` steps.
pub fn class_future_truncated(fps: &Fps, c: &StutterClass, depth: usize) -> Rational {
    let target = c.canonical();
    if target.start() >= fps.num_states() {
        return zero();
    }
    let mut total = zero();
    let mut stack = vec![Path::empty(target.start())];
    while let Some(q) = stack.pop() {
        let inv = q.stutter_invariant();
        if inv == *target {
            let trailing_loop = !q.is_empty() && q.is_tau_self_step(q.len() - 1);
            if !trailing_loop {
                total += mu_p(fps, &q);
            }
            continue;
        }
        if q.len() == depth {
            continue;
        }
        for (a, t, _) in fps.outgoing(q.last()) {
            let next = q.clone().then(*a, *t);
            if next.stutter_invariant().prefix_leq(target) {
                stack.push(next);
            }
        }
    }
    total
}

/// Upper bound on `closed form − truncated` at `depth`. With `L` the largest
/// relevant τ-loop probability and `n` canonical steps, the omitted
/// executions carry at most `μ(p̂) · Σ_{m > depth − n} C(m+n−1, n−1) Lᵐ`.
pub fn class_future_tail_bound(fps: &Fps, c: &StutterClass, depth: usize) -> Rational {
    let p = c.canonical();
    let n = p.len();
    let base = mu_p(fps, p);
    if n == 0 || base.is_zero() {
        return zero();
    }
    let l = loop_weights(fps, p).into_iter().max().unwrap_or_else(zero);
    if l.is_zero() {
        return if depth >= n { zero() } else { base };
    }
    let whole = (0..n).fold(one(), |acc, _| acc / (one() - &l));
    if depth < n {
        return base * whole;
    }
    let budget = depth - n;
    // Σ_{m ≤ budget} C(m+n−1, n−1) Lᵐ
    let mut head = zero();
    let mut binom = BigInt::one();
    let mut power = one();
    for m in 0..=budget {
        if m > 0 {
            binom = binom * BigInt::from(m + n - 1) / BigInt::from(m);
            power *= &l;
        }
        head += Rational::from_integer(binom.clone()) * &power;
    }
    base * (whole - head)
}

/// `α(x)(↑U)`: the sum over the generators starting at `x`.
pub fn alpha_measure(fps: &Fps, x: StateId, u: &ClassUpperSet) -> Rational {
    u.generators()
        .iter()
        .filter(|c| c.start() == x)
        .map(|c| class_future_measure(fps, c))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fps::fixtures::tau_loop;
    use crate::fps::{first_hit_set, prob_reach, Hat};
    use crate::paths::Action;
    use crate::rational::ratio;
    use crate::valuation::UpperSet;

    #[test]
    fn class_measure_absorbs_tau_loop() {
        let fps = tau_loop();
        let x = |n: &str| fps.resolve(n).unwrap();
        let b = fps.visible_action("b").unwrap();
        let c = Path::empty(x("x1"))
            .then(Action::Tau, x("x2"))
            .then(b, x("x4"))
            .class();
        assert_eq!(class_future_measure(&fps, &c), ratio(1, 2));
        let c2 = Path::empty(x("x1'"))
            .then(Action::Tau, x("x2'"))
            .then(b, x("x4'"))
            .class();
        assert_eq!(class_future_measure(&fps, &c2), ratio(1, 2));
        assert_eq!(
            class_future_measure(&fps, &StutterClass::empty(x("x1"))),
            one()
        );
        assert_eq!(class_future_truncated(&fps, &c2, 12), ratio(1, 2));
        assert_eq!(class_future_tail_bound(&fps, &c2, 12), zero());
    }

    #[test]
    fn truncation_within_tail_bound() {
        let fps = tau_loop();
        let x = |n: &str| fps.resolve(n).unwrap();
        let b = fps.visible_action("b").unwrap();
        let c = Path::empty(x("x1"))
            .then(Action::Tau, x("x2"))
            .then(b, x("x4"))
            .class();
        for depth in [0, 1, 2, 5, 12] {
            let exact = class_future_measure(&fps, &c);
            let approx = class_future_truncated(&fps, &c, depth);
            let bound = class_future_tail_bound(&fps, &c, depth);
            assert!(approx <= exact);
            assert!(exact.clone() - approx <= bound, "depth {depth}");
        }
        // at depth 12 the loop at x1 may be taken up to 10 times
        let approx = class_future_truncated(&fps, &c, 12);
        assert_eq!(
            ratio(1, 2) - approx,
            ratio(1, 2) * num_traits::pow(ratio(1, 3), 11)
        );
    }

    #[test]
    fn alpha_measure_equals_reachability() {
        let fps = tau_loop();
        let x = |n: &str| fps.resolve(n).unwrap();
        let b = fps.visible_action("b").unwrap();
        let targets = [x("x4"), x("x4'"), x("y4")];
        let hits = first_hit_set(&fps, x("x1"), Hat::of(b), &targets, 6);
        let u: ClassUpperSet = UpperSet::generated_by(hits.iter().map(Path::class));
        assert_eq!(alpha_measure(&fps, x("x1"), &u), ratio(1, 2));
        assert_eq!(prob_reach(&fps, x("x1"), Hat::of(b), &targets), ratio(1, 2));
        assert_eq!(alpha_measure(&fps, x("x1"), &UpperSet::empty()), zero());
        assert_eq!(
            alpha_measure(
                &fps,
                x("x1"),
                &UpperSet::principal(StutterClass::empty(x("x1")))
            ),
            one()
        );
        assert_eq!(alpha_measure(&fps, x("y1"), &u), zero());
    }
}
