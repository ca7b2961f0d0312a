//! Exhaustive ground-truth solvers.
//!
//! Everything here is exponential and guarded by an [`OracleBudget`]. Going
//! over a cap is an error, never a silent approximation. Enumeration orders
//! are fixed so witnesses are reproducible: the first optimal witness in the
//! documented order wins.

mod dilworth;
mod hall;
mod menger;

pub use dilworth::{oracle_dilworth, DilworthOracle};
pub use hall::{oracle_hall, HallOracle};
pub use menger::{enumerate_paths, oracle_menger, MengerOracle};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{BoolMatrix, Cover, Selection};

/// Size caps for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    /// Largest matrix side for cover/selection searches. Graph searches allow
    /// `max_dimension + 2` vertices.
    pub max_dimension: usize,
    /// Largest edge count for cut enumeration.
    pub max_edges: usize,
    /// Largest ground set for posets and set systems.
    pub max_elements: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_dimension: 10,
            max_edges: 32,
            max_elements: 8,
        }
    }
}

impl OracleBudget {
    pub fn with_max_dimension(mut self, n: usize) -> Self {
        self.max_dimension = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_dimension == 0 || self.max_edges == 0 || self.max_elements == 0 {
            return Err(Error::Precondition("oracle budget caps must be positive".into()));
        }
        // Row subsets, vertex sets and edge sets are held in fixed-width masks.
        if self.max_dimension > 24 || self.max_edges > 128 || self.max_elements > 20 {
            return Err(Error::Precondition(
                "oracle caps above max_dimension 24, max_edges 128 or max_elements 20 are not supported"
                    .into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn check_dimension(&self, n: usize) -> Result<()> {
        self.validate()?;
        if n > self.max_dimension {
            return Err(Error::BudgetExceeded {
                what: "matrix dimension",
                got: n,
                limit: self.max_dimension,
            });
        }
        Ok(())
    }

    pub(crate) fn check_elements(&self, n: usize) -> Result<()> {
        self.validate()?;
        if n > self.max_elements {
            return Err(Error::BudgetExceeded {
                what: "element count",
                got: n,
                limit: self.max_elements,
            });
        }
        Ok(())
    }
}

/// A minimum cover.
///
/// Searches every set of horizontal lines `H` (as a bitmask, in increasing
/// numeric order). For each `H` the vertical lines are forced: exactly the
/// columns holding a 1 in some row outside `H`. Any cover contains such a
/// pair, so the smallest `|H| + |V(H)|` is `l_A`. Ties keep the first `H`.
pub fn oracle_min_cover(a: &BoolMatrix, budget: &OracleBudget) -> Result<Cover> {
    let n = a.square_dim()?;
    budget.check_dimension(n)?;
    let masks: Vec<u64> = (0..n).map(|i| a.row_bits(i)).collect();
    let mut best: Option<(usize, u64, u64)> = None;
    for rows in 0u64..(1u64 << n) {
        let rows_size = rows.count_ones() as usize;
        if best.is_some_and(|(s, _, _)| rows_size >= s) {
            continue;
        }
        let cols = masks
            .iter()
            .enumerate()
            .filter(|(i, _)| rows >> i & 1 == 0)
            .fold(0u64, |acc, (_, &m)| acc | m);
        let size = rows_size + cols.count_ones() as usize;
        if best.is_none_or(|(s, _, _)| size < s) {
            best = Some((size, rows, cols));
        }
    }
    let (_, rows, cols) = best.expect("at least the empty row set is tried");
    Ok(Cover::new(
        (0..n).map(|i| rows >> i & 1 == 1).collect(),
        (0..n).map(|j| cols >> j & 1 == 1).collect(),
    )
    .expect("flag vectors have equal length"))
}

/// A maximum selection by depth-first search over partial permutations.
///
/// Row `i` either takes an unused column holding a 1 (columns ascending) or
/// is skipped. A branch is cut when even giving every remaining row a pick
/// could not beat the best found so far.
pub fn oracle_max_selection(a: &BoolMatrix, budget: &OracleBudget) -> Result<Selection> {
    let n = a.square_dim()?;
    budget.check_dimension(n)?;
    let masks: Vec<u64> = (0..n).map(|i| a.row_bits(i)).collect();
    let mut search = SelectionSearch {
        masks: &masks,
        current: Vec::with_capacity(n),
        best: Vec::new(),
        ceiling: 0,
    };
    // No selection can exceed the number of nonzero rows.
    search.ceiling = masks.iter().filter(|&&m| m != 0).count();
    search.run(0, 0);
    Ok(Selection::new(n, search.best).expect("search only emits line-disjoint picks"))
}

struct SelectionSearch<'a> {
    masks: &'a [u64],
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
    ceiling: usize,
}

impl SelectionSearch<'_> {
    /// Returns true once the global ceiling is reached.
    fn run(&mut self, row: usize, used: u64) -> bool {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
            if self.best.len() == self.ceiling {
                return true;
            }
        }
        if row == self.masks.len() {
            return false;
        }
        let reachable = self.masks[row..]
            .iter()
            .filter(|&&m| m & !used != 0)
            .count();
        if self.current.len() + reachable <= self.best.len() {
            return false;
        }
        let mut free = self.masks[row] & !used;
        while free != 0 {
            let j = free.trailing_zeros() as usize;
            free &= free - 1;
            self.current.push((row, j));
            if self.run(row + 1, used | 1 << j) {
                return true;
            }
            self.current.pop();
        }
        self.run(row + 1, used)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{is_cover, is_selection};

    /// Literal search over all 2^(2n) line sets in order of size.
    fn min_cover_size_by_line_sets(a: &BoolMatrix) -> usize {
        let n = a.rows();
        let mut best = usize::MAX;
        for lines in 0u64..(1u64 << (2 * n)) {
            let size = lines.count_ones() as usize;
            if size >= best {
                continue;
            }
            let ok = a
                .ones_iter()
                .all(|(i, j)| lines >> i & 1 == 1 || lines >> (n + j) & 1 == 1);
            if ok {
                best = size;
            }
        }
        best
    }

    /// Literal search over every subset of 1-entries.
    fn max_selection_size_by_subsets(a: &BoolMatrix) -> usize {
        let ones: Vec<(usize, usize)> = a.ones_iter().collect();
        assert!(ones.len() <= 20);
        let mut best = 0;
        for set in 0u32..(1u32 << ones.len()) {
            let picked: Vec<_> = (0..ones.len()).filter(|&k| set >> k & 1 == 1).map(|k| ones[k]).collect();
            let disjoint = picked.iter().enumerate().all(|(x, &(i, j))| {
                picked[x + 1..].iter().all(|&(k, l)| k != i && l != j)
            });
            if disjoint {
                best = best.max(picked.len());
            }
        }
        best
    }

    #[test]
    fn examples() {
        let b = OracleBudget::default();
        assert_eq!(oracle_min_cover(&BoolMatrix::zeros(4, 4), &b).unwrap().size(), 0);
        for n in 1..=4 {
            assert_eq!(oracle_min_cover(&BoolMatrix::ones(n, n), &b).unwrap().size(), n);
            assert_eq!(oracle_max_selection(&BoolMatrix::ones(n, n), &b).unwrap().size(), n);
            assert_eq!(oracle_max_selection(&BoolMatrix::identity(n), &b).unwrap().size(), n);
        }
        let a = BoolMatrix::from_rows(&[[1, 1], [1, 0]]).unwrap();
        assert_eq!(oracle_min_cover(&a, &b).unwrap().size(), 2);
        assert_eq!(oracle_max_selection(&a, &b).unwrap().size(), 2);
        assert_eq!(min_cover_size_by_line_sets(&a), 2);
    }

    #[test]
    fn empty_matrix() {
        let b = OracleBudget::default();
        let z = BoolMatrix::zeros(0, 0);
        assert_eq!(oracle_min_cover(&z, &b).unwrap().size(), 0);
        assert_eq!(oracle_max_selection(&z, &b).unwrap().size(), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let b = OracleBudget::default().with_max_dimension(3);
        let a = BoolMatrix::zeros(4, 4);
        assert!(matches!(
            oracle_min_cover(&a, &b),
            Err(Error::BudgetExceeded { got: 4, limit: 3, .. })
        ));
        assert!(oracle_max_selection(&a, &b).unwrap_err().is_resource());
        let zero = OracleBudget { max_edges: 0, ..OracleBudget::default() };
        assert!(oracle_min_cover(&BoolMatrix::zeros(1, 1), &zero).is_err());
    }

    #[test]
    fn agrees_with_literal_enumeration_up_to_three() {
        let b = OracleBudget::default();
        for n in 0..=3usize {
            for bits in 0u64..(1u64 << (n * n)) {
                let a = BoolMatrix::from_bits(n, n, bits);
                let c = oracle_min_cover(&a, &b).unwrap();
                let s = oracle_max_selection(&a, &b).unwrap();
                assert!(is_cover(&a, &c).unwrap());
                assert!(is_selection(&a, &s).unwrap());
                assert_eq!(c.size(), min_cover_size_by_line_sets(&a));
                assert_eq!(s.size(), max_selection_size_by_subsets(&a));
                assert_eq!(c.size(), s.size());
            }
        }
    }

    #[test]
    fn deterministic_witnesses() {
        let b = OracleBudget::default();
        let a = BoolMatrix::from_rows(&[[1, 1, 0], [1, 0, 1], [0, 1, 1]]).unwrap();
        assert_eq!(oracle_min_cover(&a, &b).unwrap(), oracle_min_cover(&a, &b).unwrap());
        let s = oracle_max_selection(&a, &b).unwrap();
        assert_eq!(s, oracle_max_selection(&a, &b).unwrap());
        // Row 1 takes column 1 first, then the search completes greedily.
        assert_eq!(s, Selection::new(3, [(0, 0), (1, 2), (2, 1)]).unwrap());
    }
}
