//! The bordered matrix `A′` and the bipartite terminal graph `A″`.
//!
//! For an `n x n` matrix the graph has `2(n+1)` vertices. Row-side vertex
//! `u_i` is `i` for `i <= n` and column-side vertex `v_j` is `n + 1 + j`.
//! The terminals are `x = u_n` (adjacent to every `v_j`, `j < n`) and
//! `y = v_n` (adjacent to every `u_i`, `i < n`).

use super::{is_cut, Edge, EdgeCut, PathCollection, TerminalGraph};
use crate::error::{Error, Result};
use crate::matrix::{is_cover, is_selection, BoolMatrix, Cover, Selection};

pub fn row_vertex(n: usize, i: usize) -> usize {
    debug_assert!(i <= n);
    i
}

pub fn column_vertex(n: usize, j: usize) -> usize {
    debug_assert!(j <= n);
    n + 1 + j
}

/// `A` bordered by a row and column of 1s, with a 0 in the new corner.
pub fn build_a_prime(a: &BoolMatrix) -> Result<BoolMatrix> {
    let n = a.square_dim()?;
    Ok(BoolMatrix::from_fn(n + 1, n + 1, |i, j| match (i == n, j == n) {
        (false, false) => a.get(i, j),
        (true, true) => false,
        _ => true,
    }))
}

/// The graph with adjacency `[[0, A′], [A′ᵀ, 0]]`.
pub fn build_a_double_prime(a: &BoolMatrix) -> Result<TerminalGraph> {
    let n = a.square_dim()?;
    let ap = build_a_prime(a)?;
    let k = n + 1;
    let adjacency = BoolMatrix::from_fn(2 * k, 2 * k, |p, q| match (p < k, q < k) {
        (true, false) => ap.get(p, q - k),
        (false, true) => ap.get(q, p - k),
        _ => false,
    });
    TerminalGraph::new(adjacency, row_vertex(n, n), column_vertex(n, n))
}

/// Horizontal line `i` becomes the edge `(u_i, y)`, vertical line `j` the
/// edge `(x, v_j)`. The image is checked to separate `x` from `y`.
pub fn cover_to_cut(a: &BoolMatrix, alpha: &Cover) -> Result<EdgeCut> {
    if !is_cover(a, alpha)? {
        return Err(Error::InvalidCover("input does not cover every 1".into()));
    }
    let n = a.rows();
    let g = build_a_double_prime(a)?;
    let cut = EdgeCut::new(
        alpha
            .flagged_rows()
            .into_iter()
            .map(|i| Edge::new(row_vertex(n, i), g.y()))
            .chain(
                alpha
                    .flagged_cols()
                    .into_iter()
                    .map(|j| Edge::new(g.x(), column_vertex(n, j))),
            ),
    );
    if !is_cut(&g, &cut) {
        return Err(Error::InvalidCertificate(
            "image of the cover leaves an x,y-path in the graph".into(),
        ));
    }
    Ok(cut)
}

/// Reads a cover off a cut: `(u_i, y)` and `(u_i, v_j)` give row `i`,
/// `(x, v_j)` gives column `j`. Every length-3 path `x, v_j, u_i, y` loses
/// an edge, so the image covers `A` with at most `|γ|` lines.
pub fn cut_to_cover(a: &BoolMatrix, gamma: &EdgeCut) -> Result<Cover> {
    let n = a.square_dim()?;
    let g = build_a_double_prime(a)?;
    if !is_cut(&g, gamma) {
        return Err(Error::InvalidCertificate("edge set is not an x,y-cut".into()));
    }
    let k = n + 1;
    let mut cover = Cover::empty(n);
    for e in gamma.edges() {
        // Edges always join a row-side vertex (< k) to a column-side one.
        let (u, v) = e.endpoints();
        let (i, j) = (u, v - k);
        match (i == n, j == n) {
            (true, _) => cover.set_col(j),
            (false, _) => cover.set_row(i),
        }
    }
    debug_assert!(is_cover(a, &cover)?);
    Ok(cover)
}

/// Pick `(i, j)` becomes the path `x, v_j, u_i, y`.
pub fn selection_to_paths(a: &BoolMatrix, beta: &Selection) -> Result<PathCollection> {
    if !is_selection(a, beta)? {
        return Err(Error::InvalidSelection("a pick is not on a 1".into()));
    }
    let n = a.rows();
    let g = build_a_double_prime(a)?;
    let paths = beta
        .picks()
        .map(|(i, j)| vec![g.x(), column_vertex(n, j), row_vertex(n, i), g.y()])
        .collect();
    PathCollection::checked(&g, paths)
}

/// Each path leaves `x` to some `v_j` and continues to some `u_i` with
/// `A(i, j) = 1`; that first inner edge is the pick. Internally disjoint
/// paths give line-disjoint picks.
pub fn paths_to_selection(a: &BoolMatrix, paths: &PathCollection) -> Result<Selection> {
    let n = a.square_dim()?;
    let g = build_a_double_prime(a)?;
    paths.validate(&g)?;
    let picks = paths.paths().iter().map(|p| {
        let (v, u) = (p[1], p[2]);
        (u, v - (n + 1))
    });
    let sel = Selection::new(n, picks)?;
    if !is_selection(a, &sel)? {
        return Err(Error::Internal("path does not start with an edge of A".into()));
    }
    Ok(sel)
}
