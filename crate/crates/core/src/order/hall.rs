use serde::{Deserialize, Serialize};

use super::{SdrAssignment, SetSystem};
use crate::error::{Error, Result};
use crate::matrix::{is_cover, BoolMatrix, Cover};
use crate::oracle::{oracle_min_cover, OracleBudget};
use crate::solver::max_selection;

/// Every `k` of the sets jointly hold at least `k` elements. All `2^n - 1`
/// nonempty index sets are checked.
pub fn union_property(s: &SetSystem, budget: &OracleBudget) -> Result<bool> {
    rows_have_union_property(s.incidence(), budget)
}

/// [`union_property`] for the rows of a rectangular matrix, each row read as
/// a subset of the column indices. A matrix with no rows passes.
pub fn rows_have_union_property(m: &BoolMatrix, budget: &OracleBudget) -> Result<bool> {
    budget.check_elements(m.rows())?;
    if m.cols() > 64 {
        return Err(Error::BudgetExceeded {
            what: "ground set size",
            got: m.cols(),
            limit: 64,
        });
    }
    let masks: Vec<u64> = (0..m.rows()).map(|i| m.row_bits(i)).collect();
    Ok((1u64..1u64 << masks.len()).all(|k| {
        let union = masks
            .iter()
            .enumerate()
            .filter(|(i, _)| k >> i & 1 == 1)
            .fold(0u64, |acc, (_, &m)| acc | m);
        union.count_ones() >= k.count_ones()
    }))
}

/// Reads an SDR off a full selection of the incidence matrix: set `i` is
/// represented by the column of the pick in row `i`.
pub fn sdr_from_selection(s: &SetSystem) -> Result<SdrAssignment> {
    let n = s.n();
    let sel = max_selection(s.incidence())?;
    if sel.size() < n {
        return Err(Error::Precondition(format!(
            "incidence matrix has term rank {} < {n}, so the union property fails",
            sel.size()
        )));
    }
    let assignment = (0..n)
        .map(|i| sel.pick_in_row(i).expect("a full selection meets every row"))
        .collect();
    SdrAssignment::new(s, assignment)
}

/// `A` with the cover's lines moved to the front:
///
/// ```text
/// A1 (e x f) | A2 (e x n-f)
/// -----------+-------------
/// A3         | A4
/// ```
///
/// `e` and `f` count horizontal and vertical lines. `A4` is zero whenever
/// the lines cover `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallBlocks {
    pub e: usize,
    pub f: usize,
    pub a1: BoolMatrix,
    pub a2: BoolMatrix,
    pub a3: BoolMatrix,
    pub a4: BoolMatrix,
    /// Original row indices in their new order.
    pub row_order: Vec<usize>,
    /// Original column indices in their new order.
    pub col_order: Vec<usize>,
}

/// Splits `A` along any cover. Lines keep their relative order.
pub fn split_blocks(a: &BoolMatrix, alpha: &Cover) -> Result<HallBlocks> {
    if !is_cover(a, alpha)? {
        return Err(Error::InvalidCover("lines miss a 1 of the matrix".into()));
    }
    let n = a.rows();
    let (fr, fc) = (alpha.flagged_rows(), alpha.flagged_cols());
    let (e, f) = (fr.len(), fc.len());
    let rest_r: Vec<usize> = (0..n).filter(|&i| !alpha.has_row(i)).collect();
    let rest_c: Vec<usize> = (0..n).filter(|&j| !alpha.has_col(j)).collect();
    let blocks = HallBlocks {
        e,
        f,
        a1: a.submatrix(&fr, &fc),
        a2: a.submatrix(&fr, &rest_c),
        a3: a.submatrix(&rest_r, &fc),
        a4: a.submatrix(&rest_r, &rest_c),
        row_order: fr.into_iter().chain(rest_r).collect(),
        col_order: fc.into_iter().chain(rest_c).collect(),
    };
    debug_assert!(blocks.a4.is_zero());
    Ok(blocks)
}

/// [`split_blocks`] for minimum covers only; minimality is checked with the
/// exhaustive oracle.
pub fn hall_block_decomposition(
    a: &BoolMatrix,
    alpha: &Cover,
    budget: &OracleBudget,
) -> Result<HallBlocks> {
    let blocks = split_blocks(a, alpha)?;
    let best = oracle_min_cover(a, budget)?.size();
    if alpha.size() != best {
        return Err(Error::InvalidCover(format!(
            "cover has {} lines, minimum is {best}",
            alpha.size()
        )));
    }
    Ok(blocks)
}

/// Union property of the rows of `A2` and of the columns of `A3`.
pub fn union_property_of_blocks(a2: &BoolMatrix, a3: &BoolMatrix, budget: &OracleBudget) -> Result<bool> {
    Ok(rows_have_union_property(a2, budget)? && rows_have_union_property(&a3.transpose(), budget)?)
}
