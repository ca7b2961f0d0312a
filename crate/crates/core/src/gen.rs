//! Seeded random instances. Every generator is a pure function of the RNG
//! state, so a fixed seed reproduces the same instance.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;
use crate::menger::{build_a_double_prime, TerminalGraph};
use crate::order::{Poset, SetSystem};

fn check_density(density: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Precondition(format!("density {density} is outside [0, 1]")));
    }
    Ok(())
}

/// Each entry is 1 with probability `density`, row by row.
pub fn random_rect_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    density: f64,
) -> Result<BoolMatrix> {
    check_density(density)?;
    Ok(BoolMatrix::from_fn(rows, cols, |_, _| rng.gen_bool(density)))
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Result<BoolMatrix> {
    random_rect_matrix(rng, n, n, density)
}

pub fn random_set_system<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Result<SetSystem> {
    SetSystem::new(random_matrix(rng, n, density)?)
}

/// The transitive closure of a random DAG. Arcs `a -> b` with `a < b` in a
/// random labelling are kept with probability `density`.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Result<Poset> {
    check_density(density)?;
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut arcs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                arcs.push((label[a], label[b]));
            }
        }
    }
    Poset::from_relations(n, arcs)
}

/// A simple graph on `n >= 2` vertices with random distinct terminals.
pub fn random_terminal_graph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    density: f64,
) -> Result<TerminalGraph> {
    check_density(density)?;
    if n < 2 {
        return Err(Error::Precondition(format!("a graph with terminals needs 2 vertices, got {n}")));
    }
    let mut adjacency = BoolMatrix::zeros(n, n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                adjacency.set(u, v, true);
                adjacency.set(v, u, true);
            }
        }
    }
    let x = rng.gen_range(0..n);
    let y = (x + rng.gen_range(1..n)) % n;
    adjacency.set(x, y, false);
    adjacency.set(y, x, false);
    TerminalGraph::new(adjacency, x, y)
}

/// A random `n x n` matrix together with its bipartite graph with terminals.
pub fn random_bipartite_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    density: f64,
) -> Result<(BoolMatrix, TerminalGraph)> {
    let a = random_matrix(rng, n, density)?;
    let g = build_a_double_prime(&a)?;
    Ok((a, g))
}
