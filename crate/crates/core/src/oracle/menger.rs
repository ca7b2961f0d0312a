use serde::{Deserialize, Serialize};

use super::OracleBudget;
use crate::error::{Error, Result};
use crate::menger::{EdgeCut, PathCollection, TerminalGraph};

/// Hard cap on the number of x,y-paths materialized by the enumerator.
pub const MAX_ENUMERATED_PATHS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MengerOracle {
    /// Most pairwise internally disjoint x,y-paths.
    pub lambda: usize,
    /// Fewest edges whose removal separates x from y.
    pub kappa: usize,
    pub paths: PathCollection,
    pub cut: EdgeCut,
}

fn check_graph(g: &TerminalGraph, budget: &OracleBudget) -> Result<()> {
    budget.validate()?;
    let limit = budget.max_dimension + 2;
    if g.n() > limit {
        return Err(Error::BudgetExceeded {
            what: "vertex count",
            got: g.n(),
            limit,
        });
    }
    let m = g.edges().len();
    if m > budget.max_edges {
        return Err(Error::BudgetExceeded {
            what: "edge count",
            got: m,
            limit: budget.max_edges,
        });
    }
    Ok(())
}

/// Every simple x,y-path, found by depth-first search that tries neighbors
/// in increasing order. The output order is that discovery order.
pub fn enumerate_paths(g: &TerminalGraph, budget: &OracleBudget) -> Result<Vec<Vec<usize>>> {
    check_graph(g, budget)?;
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|u| g.neighbors(u).collect()).collect();
    let mut out = Vec::new();
    let mut stack = vec![g.x()];
    let mut on_path = vec![false; g.n()];
    on_path[g.x()] = true;
    walk(&adj, g.y(), &mut stack, &mut on_path, &mut out)?;
    Ok(out)
}

fn walk(
    adj: &[Vec<usize>],
    y: usize,
    stack: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let u = *stack.last().expect("stack starts with x");
    if u == y {
        if out.len() == MAX_ENUMERATED_PATHS {
            return Err(Error::BudgetExceeded {
                what: "x,y-path count",
                got: MAX_ENUMERATED_PATHS + 1,
                limit: MAX_ENUMERATED_PATHS,
            });
        }
        out.push(stack.clone());
        return Ok(());
    }
    for &v in &adj[u] {
        if on_path[v] {
            continue;
        }
        on_path[v] = true;
        stack.push(v);
        walk(adj, y, stack, on_path, out)?;
        stack.pop();
        on_path[v] = false;
    }
    Ok(())
}

/// Exhaustive `λ` and `κ` with witnesses.
///
/// `λ`: collections of sizes 1, 2, ... are searched in turn (paths in
/// enumeration order, each collection built in increasing index order)
/// until a size has no collection; the witness is the first collection of
/// the largest size. `κ`: edge subsets of sizes 0, 1, ... in lexicographic
/// order; the first one that separates `x` from `y` is returned.
pub fn oracle_menger(g: &TerminalGraph, budget: &OracleBudget) -> Result<MengerOracle> {
    let paths = enumerate_paths(g, budget)?;
    let (lambda, chosen) = max_disjoint(g, &paths);
    let (kappa, cut) = min_cut(g);
    Ok(MengerOracle {
        lambda,
        kappa,
        paths: PathCollection::new(chosen),
        cut,
    })
}

fn max_disjoint(g: &TerminalGraph, paths: &[Vec<usize>]) -> (usize, Vec<Vec<usize>>) {
    // Disjointness only sees internal vertex sets; keep the first path per set.
    let mut masks: Vec<u64> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for (k, p) in paths.iter().enumerate() {
        let m = p[1..p.len() - 1].iter().fold(0u64, |acc, &v| acc | 1 << v);
        if !masks.contains(&m) {
            masks.push(m);
            reps.push(k);
        }
    }
    let cap = g.degree(g.x()).min(g.degree(g.y()));
    let mut best: Vec<usize> = Vec::new();
    for k in 1..=cap {
        let mut chosen = Vec::with_capacity(k);
        if !find_collection(&masks, k, 0, 0, &mut chosen) {
            break;
        }
        best = chosen;
    }
    let witness = best.iter().map(|&i| paths[reps[i]].clone()).collect();
    (best.len(), witness)
}

fn find_collection(masks: &[u64], k: usize, start: usize, used: u64, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == k {
        return true;
    }
    for i in start..masks.len() {
        if masks.len() - i < k - chosen.len() {
            return false;
        }
        if masks[i] & used == 0 {
            chosen.push(i);
            if find_collection(masks, k, i + 1, used | masks[i], chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn min_cut(g: &TerminalGraph) -> (usize, EdgeCut) {
    let edges = g.edges();
    let adj: Vec<u64> = (0..g.n())
        .map(|u| g.neighbors(u).fold(0u64, |acc, v| acc | 1 << v))
        .collect();
    let separates = |chosen: &[usize]| {
        let mut a = adj.clone();
        for &k in chosen {
            let (u, v) = edges[k].endpoints();
            a[u] &= !(1 << v);
            a[v] &= !(1 << u);
        }
        let mut seen = 1u64 << g.x();
        let mut frontier = seen;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = a[u] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen >> g.y() & 1 == 0
    };
    for k in 0..=edges.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if separates(&idx) {
                return (k, EdgeCut::new(idx.iter().map(|&i| edges[i])));
            }
            if !next_combination(&mut idx, edges.len()) {
                break;
            }
        }
    }
    unreachable!("removing every edge separates x from y")
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(pos) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[pos] += 1;
    for i in pos + 1..k {
        idx[i] = idx[i - 1] + 1;
    }
    true
}
