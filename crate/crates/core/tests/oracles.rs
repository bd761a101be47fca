//! Signature refinement against the relational and exhaustive oracles.

use pathbisim::fps::{brute_force_delay, delay_refine, is_delay_bisimulation};
use pathbisim::generate::{random_fps, random_lts, Shape};
use pathbisim::lts::{classical_partition, refine, Semantics};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn refine_matches_classical_on_random_systems() {
    let shape = Shape::default();
    for seed in 0..300 {
        let lts = random_lts(&mut ChaCha8Rng::seed_from_u64(seed), &shape);
        for sem in Semantics::ALL {
            assert_eq!(
                refine(&lts, sem),
                classical_partition(&lts, sem),
                "seed {seed} {sem}"
            );
        }
    }
}

#[test]
fn delay_refine_matches_brute_force() {
    let shape = Shape {
        max_states: 6,
        ..Shape::default()
    };
    for seed in 0..150 {
        let fps = random_fps(&mut ChaCha8Rng::seed_from_u64(seed), &shape, 4);
        let part = delay_refine(&fps);
        assert!(is_delay_bisimulation(&fps, &part));
        assert_eq!(
            part,
            brute_force_delay(&fps).unwrap(),
            "seed {seed}\n{fps:?}"
        );
    }
}

#[test]
fn minimize_fps_succeeds_on_random_systems() {
    use pathbisim::fps::minimize_fps;
    let shape = Shape {
        max_states: 7,
        ..Shape::default()
    };
    for seed in 0..300 {
        let fps = random_fps(&mut ChaCha8Rng::seed_from_u64(seed), &shape, 4);
        let (q, part) = minimize_fps(&fps).unwrap_or_else(|e| panic!("seed {seed}: {e}\n{fps:?}"));
        assert_eq!(q.num_states(), part.num_blocks());
        assert_eq!(delay_refine(&q).num_blocks(), q.num_states(), "seed {seed}");
    }
}
