//! Shared fixtures for the benchmarks.

use kmm_core::gen::random_matrix;
use kmm_core::la::{Environment, IntMatrix};
use kmm_core::{min_cover, BoolMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SOLVER_SIDES: [usize; 4] = [4, 8, 12, 16];
pub const ORACLE_SIDES: [usize; 3] = [6, 8, 10];

pub fn seeded_matrix(n: usize, density: f64, seed: u64) -> BoolMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_matrix(&mut rng, n, density).expect("density in range")
}

/// `A` bound to a random matrix and `Alpha` to the 2 x n flag encoding of
/// one of its minimum covers.
pub fn cover_env(n: usize, seed: u64) -> Environment {
    let a = seeded_matrix(n, 0.5, seed);
    let cover = min_cover(&a).expect("square input");
    Environment::new().with_bool_matrix("A", &a).with_bool_matrix("Alpha", &cover.to_alpha())
}

pub fn int_matrix(n: usize, seed: u64) -> IntMatrix {
    let a = seeded_matrix(n, 0.5, seed);
    IntMatrix::from_fn(n, n, |i, j| i64::from(a.get(i, j)))
}
