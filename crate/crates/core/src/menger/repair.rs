//! The paths-by-cut-edges incidence matrix and the exchange procedure that
//! turns it into a permutation matrix.

use serde::{Deserialize, Serialize};

use super::{is_cut, is_restricted_pair, path_edges, Edge, EdgeCut, PathCollection, TerminalGraph};
use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;
use crate::oracle::{enumerate_paths, oracle_menger, OracleBudget};

/// Entry `(i, j)` is 1 iff cut edge `col_labels[j]` lies on path `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathsCutIncidence {
    pub matrix: BoolMatrix,
    pub row_labels: Vec<usize>,
    pub col_labels: Vec<(usize, usize)>,
}

impl PathsCutIncidence {
    /// Exactly one 1 in every row and every column.
    pub fn is_permutation(&self) -> bool {
        let m = &self.matrix;
        m.rows() == m.cols()
            && (0..m.rows()).all(|i| m.row(i).iter().filter(|&&b| b).count() == 1)
            && (0..m.cols()).all(|j| (0..m.rows()).filter(|&i| m.get(i, j)).count() == 1)
    }

    fn empty_column(&self) -> Option<usize> {
        (0..self.matrix.cols()).find(|&j| (0..self.matrix.rows()).all(|i| !self.matrix.get(i, j)))
    }
}

pub fn paths_cut_incidence(
    g: &TerminalGraph,
    paths: &PathCollection,
    cut: &EdgeCut,
) -> Result<PathsCutIncidence> {
    paths.validate(g)?;
    if !is_cut(g, cut) {
        return Err(Error::InvalidCertificate("edge set is not an x,y-cut".into()));
    }
    let cols: Vec<Edge> = cut.edges().collect();
    let matrix = BoolMatrix::from_fn(paths.len(), cols.len(), |i, j| {
        path_edges(&paths.paths()[i]).any(|e| e == cols[j])
    });
    if let Some(i) = (0..matrix.rows()).find(|&i| matrix.row(i).iter().all(|&b| !b)) {
        return Err(Error::InvalidCertificate(format!(
            "path {} avoids every cut edge",
            i + 1
        )));
    }
    Ok(PathsCutIncidence {
        matrix,
        row_labels: (0..paths.len()).collect(),
        col_labels: cols.iter().map(|e| e.endpoints()).collect(),
    })
}

/// Exchanges cut edges lying on no collection path for edges shared with a
/// collection path, until every cut edge lies on exactly one path.
///
/// Requires a restricted pair, a maximum collection and a minimum cut; all
/// three are checked with the exhaustive oracle. Each exchange replaces a
/// cut edge `e` on no path by an edge `e'` of some path `ρ` through `e` that
/// avoids the rest of the cut, where `e'` also lies on a collection path and
/// the result is still a cut. At most `|E|` exchanges are made.
pub fn repair_beta_gamma(
    g: &TerminalGraph,
    paths: &PathCollection,
    cut: &EdgeCut,
    budget: &OracleBudget,
) -> Result<(PathCollection, EdgeCut)> {
    paths.validate(g)?;
    if !is_cut(g, cut) {
        return Err(Error::InvalidCertificate("edge set is not an x,y-cut".into()));
    }
    if !is_restricted_pair(g, budget)? {
        return Err(Error::Precondition("x,y is not a restricted pair".into()));
    }
    let best = oracle_menger(g, budget)?;
    if paths.len() != best.lambda {
        return Err(Error::Precondition(format!(
            "collection has {} paths, maximum is {}",
            paths.len(),
            best.lambda
        )));
    }
    if cut.len() != best.kappa {
        return Err(Error::Precondition(format!(
            "cut has {} edges, minimum is {}",
            cut.len(),
            best.kappa
        )));
    }

    let all_paths = enumerate_paths(g, budget)?;
    let mut gamma = cut.clone();
    let pass_cap = g.edges().len();
    for _ in 0..=pass_cap {
        let inc = paths_cut_incidence(g, paths, &gamma)?;
        let Some(col) = inc.empty_column() else {
            if inc.is_permutation() {
                return Ok((paths.clone(), gamma));
            }
            return Err(Error::RepairFailed(format!(
                "incidence is {}x{} with every column used but is not a permutation",
                inc.matrix.rows(),
                inc.matrix.cols()
            )));
        };
        let (u, v) = inc.col_labels[col];
        let e = Edge::new(u, v);
        gamma = exchange(g, paths, &gamma, e, &all_paths).ok_or_else(|| {
            Error::RepairFailed(format!(
                "no exchange found for cut edge ({}, {})",
                u + 1,
                v + 1
            ))
        })?;
    }
    Err(Error::RepairFailed(format!("no fixpoint after {pass_cap} exchanges")))
}

fn exchange(
    g: &TerminalGraph,
    paths: &PathCollection,
    gamma: &EdgeCut,
    e: Edge,
    all_paths: &[Vec<usize>],
) -> Option<EdgeCut> {
    let cut_only_at_e = |p: &Vec<usize>| {
        path_edges(p).any(|f| f == e) && path_edges(p).all(|f| f == e || !gamma.contains(f))
    };
    for rho in all_paths.iter().filter(|p| cut_only_at_e(p)) {
        for e2 in path_edges(rho) {
            if e2 == e || gamma.contains(e2) || !paths.contains_edge(e2) {
                continue;
            }
            let mut next = gamma.clone();
            next.remove(e);
            next.insert(e2);
            if is_cut(g, &next) {
                return Some(next);
            }
        }
    }
    None
}
