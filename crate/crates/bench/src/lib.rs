//! Seeded workloads shared by the benchmarks.

use pathbisim::fps::Fps;
use pathbisim::generate::{random_fps, random_lts, Shape};
use pathbisim::lts::Lts;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn lts_batch(max_states: usize, count: u64) -> Vec<Lts> {
    let shape = Shape {
        max_states,
        ..Shape::default()
    };
    (0..count)
        .map(|seed| random_lts(&mut ChaCha8Rng::seed_from_u64(seed), &shape))
        .collect()
}

pub fn fps_batch(max_states: usize, count: u64) -> Vec<Fps> {
    let shape = Shape {
        max_states,
        ..Shape::default()
    };
    (0..count)
        .map(|seed| random_fps(&mut ChaCha8Rng::seed_from_u64(seed), &shape, 4))
        .collect()
}
