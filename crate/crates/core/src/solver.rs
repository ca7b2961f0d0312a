//! Recursive minimum cover and maximum selection built on the diagonal form.
//!
//! Both algorithms diagonalize `A` into `B = P·A·Q`, split `B` as
//!
//! ```text
//! a | R
//! --+--
//! S | M
//! ```
//!
//! recurse on `M`, and lift the result. The cover side decides between
//! `l_M`, `l_M + 1` and `l_M + 2` with two feasibility tests on `M` with the
//! lines under `R` (resp. `S`) deleted. The selection side mirrors the same
//! case split and repairs collisions between lifted and added picks.

use serde::{Deserialize, Serialize};

use crate::diagonal::diagonalize;
use crate::error::{Error, Result};
use crate::matrix::{
    is_cover, is_selection, unpermute_cover, unpermute_selection, BoolMatrix, Cover, Selection,
};
use crate::oracle::{oracle_max_selection, OracleBudget};

pub const DEFAULT_RECURSION_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Largest accepted matrix side.
    pub recursion_cap: usize,
    /// Budget for the brute-force fallback in the selection repair.
    pub fallback_budget: OracleBudget,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            recursion_cap: DEFAULT_RECURSION_CAP,
            fallback_budget: OracleBudget::default(),
        }
    }
}

/// How often each branch of the selection recursion fired.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionStats {
    /// `a = 0`, so the whole first layer is empty.
    pub empty_layer: usize,
    /// `a = 1` and `l_M = n - 1`.
    pub full_minor: usize,
    /// `a = 1` and some minimum cover of `M` covers all of `R` or all of `S`.
    pub one_sided: usize,
    /// `a = 1`, neither side can be covered: two picks are added.
    pub two_sided: usize,
    /// Two-sided steps whose added picks collided with lifted ones.
    pub collisions: usize,
    /// Collisions resolved by single swaps.
    pub swap_repairs: usize,
    /// Collisions handed to the brute-force search.
    pub fallbacks: usize,
}

/// Result of running both algorithms on one matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KmmReport {
    pub cover: Cover,
    pub selection: Selection,
    pub l: usize,
    pub o: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Solver {
    config: SolverConfig,
}

pub fn min_cover(a: &BoolMatrix) -> Result<Cover> {
    Solver::default().min_cover(a)
}

pub fn max_selection(a: &BoolMatrix) -> Result<Selection> {
    Solver::default().max_selection(a)
}

pub fn kmm_check(a: &BoolMatrix) -> Result<KmmReport> {
    Solver::default().kmm_check(a)
}

impl Solver {
    pub fn new(config: SolverConfig) -> Self {
        Solver { config }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    fn check_input(&self, a: &BoolMatrix) -> Result<usize> {
        let n = a.square_dim()?;
        if n > self.config.recursion_cap {
            return Err(Error::RecursionCap {
                n,
                cap: self.config.recursion_cap,
            });
        }
        Ok(n)
    }

    pub fn min_cover(&self, a: &BoolMatrix) -> Result<Cover> {
        self.check_input(a)?;
        let cover = cover_rec(a)?;
        if !is_cover(a, &cover)? {
            return Err(Error::Internal("recursive cover misses a 1".into()));
        }
        Ok(cover)
    }

    pub fn max_selection(&self, a: &BoolMatrix) -> Result<Selection> {
        self.max_selection_with_stats(a).map(|(s, _)| s)
    }

    pub fn max_selection_with_stats(&self, a: &BoolMatrix) -> Result<(Selection, SelectionStats)> {
        self.check_input(a)?;
        let mut stats = SelectionStats::default();
        let (selection, cover) = self.select_rec(a, &mut stats)?;
        if !is_selection(a, &selection)? || !is_cover(a, &cover)? {
            return Err(Error::Internal("recursive selection certificate invalid".into()));
        }
        if selection.size() != cover.size() {
            return Err(Error::Internal(format!(
                "selection of size {} paired with cover of size {}",
                selection.size(),
                cover.size()
            )));
        }
        Ok((selection, stats))
    }

    pub fn kmm_check(&self, a: &BoolMatrix) -> Result<KmmReport> {
        let cover = self.min_cover(a)?;
        let selection = self.max_selection(a)?;
        let (l, o) = (cover.size(), selection.size());
        Ok(KmmReport {
            cover,
            selection,
            l,
            o,
            equal: l == o,
        })
    }

    /// Returns a maximum selection together with a cover of the same size,
    /// which certifies optimality of both.
    fn select_rec(&self, a: &BoolMatrix, stats: &mut SelectionStats) -> Result<(Selection, Cover)> {
        let n = a.rows();
        if n == 0 {
            return Ok((Selection::empty(0), Cover::empty(0)));
        }
        let d = diagonalize(a)?;
        let b = &d.transformed;
        let m = b.principal_minor();
        let (sel_m, cover_m) = self.select_rec(&m, stats)?;
        let l_m = cover_m.size();
        let lifted = sel_m.extend();

        let (sel_b, cover_b) = if !b.get(0, 0) {
            stats.empty_layer += 1;
            (lifted, cover_m.extend())
        } else if l_m == n - 1 {
            stats.full_minor += 1;
            (with_pick(lifted, 0, 0)?, Cover::all_rows(n))
        } else if let Some(cover) = one_sided_cover(b, &m, l_m)? {
            stats.one_sided += 1;
            (with_pick(lifted, 0, 0)?, cover)
        } else {
            stats.two_sided += 1;
            let mut cover = cover_m.extend();
            cover.set_row(0);
            cover.set_col(0);
            let sel = self.two_sided_selection(b, &lifted, &cover_m.extend(), stats)?;
            (sel, cover)
        };
        Ok((
            unpermute_selection(&sel_b, &d.p, &d.q)?,
            unpermute_cover(&cover_b, &d.p, &d.q)?,
        ))
    }

    /// Adds an uncovered 1 of `R` and one of `S` to the lifted selection.
    fn two_sided_selection(
        &self,
        b: &BoolMatrix,
        lifted: &Selection,
        cover: &Cover,
        stats: &mut SelectionStats,
    ) -> Result<Selection> {
        let n = b.rows();
        let r_picks: Vec<usize> = (1..n).filter(|&j| b.get(0, j) && !cover.has_col(j)).collect();
        let s_picks: Vec<usize> = (1..n).filter(|&i| b.get(i, 0) && !cover.has_row(i)).collect();
        if r_picks.is_empty() || s_picks.is_empty() {
            return Err(Error::Internal(
                "two-sided step without uncovered 1s in R and S".into(),
            ));
        }
        for &j in &r_picks {
            for &i in &s_picks {
                if lifted.pick_in_col(j).is_none() && lifted.pick_in_row(i).is_none() {
                    let mut sel = lifted.clone();
                    sel.insert(0, j)?;
                    sel.insert(i, 0)?;
                    return Ok(sel);
                }
            }
        }
        stats.collisions += 1;
        for &j in &r_picks {
            for &i in &s_picks {
                if let Some(sel) = swap_repair(b, lifted, cover, i, j) {
                    stats.swap_repairs += 1;
                    return Ok(sel);
                }
            }
        }
        stats.fallbacks += 1;
        let sel = oracle_max_selection(b, &self.config.fallback_budget)?;
        if sel.size() != lifted.size() + 2 {
            return Err(Error::Internal(format!(
                "fallback selection has size {}, expected {}",
                sel.size(),
                lifted.size() + 2
            )));
        }
        Ok(sel)
    }
}

fn with_pick(mut s: Selection, i: usize, j: usize) -> Result<Selection> {
    s.insert(i, j)?;
    Ok(s)
}

/// Tries to move each lifted pick that collides with `(0, j)` or `(i, 0)`
/// to another free 1 on the cover line it sits on.
fn swap_repair(
    b: &BoolMatrix,
    lifted: &Selection,
    cover: &Cover,
    i: usize,
    j: usize,
) -> Option<Selection> {
    let n = b.rows();
    let mut sel = lifted.clone();
    let mut used_rows: Vec<bool> = (0..n).map(|r| sel.pick_in_row(r).is_some()).collect();
    let mut used_cols: Vec<bool> = (0..n).map(|c| sel.pick_in_col(c).is_some()).collect();
    used_rows[0] = true;
    used_cols[0] = true;
    used_rows[i] = true;
    used_cols[j] = true;
    // Column j is not a cover line, so a pick there sits on a cover row.
    if let Some(r) = lifted.pick_in_col(j) {
        let c = (1..n).find(|&c| !used_cols[c] && b.get(r, c))?;
        sel.remove(r, j);
        sel.insert(r, c).ok()?;
        used_cols[c] = true;
    }
    // Row i is not a cover line, so a pick there sits on a cover column.
    if let Some(c) = lifted.pick_in_row(i) {
        let r = (1..n).find(|&r| !used_rows[r] && b.get(r, c))?;
        sel.remove(i, c);
        sel.insert(r, c).ok()?;
    }
    debug_assert!(cover.n() == n);
    sel.insert(0, j).ok()?;
    sel.insert(i, 0).ok()?;
    Some(sel)
}

/// `M` with the columns under the 1s of `R` cleared. Clearing keeps the
/// matrix square; cleared columns need no line.
fn minor_without_r(b: &BoolMatrix, m: &BoolMatrix) -> BoolMatrix {
    BoolMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j) && !b.get(0, j + 1))
}

fn minor_without_s(b: &BoolMatrix, m: &BoolMatrix) -> BoolMatrix {
    BoolMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j) && !b.get(i + 1, 0))
}

/// For `a = 1`: a cover of `B` of size `l_M + 1`, if one exists.
///
/// Such a cover exists iff some minimum cover of `M` takes every column
/// under `R` (then add column 1) or every row beside `S` (then add row 1).
fn one_sided_cover(b: &BoolMatrix, m: &BoolMatrix, l_m: usize) -> Result<Option<Cover>> {
    let n = b.rows();
    let r_sum = b.first_row_tail().iter().filter(|&&x| x).count();
    if l_m >= r_sum {
        let cover_r = cover_rec(&minor_without_r(b, m))?;
        if cover_r.size() == l_m - r_sum {
            let mut c = cover_r.extend();
            (1..n).filter(|&j| b.get(0, j)).for_each(|j| c.set_col(j));
            c.set_col(0);
            return Ok(Some(c));
        }
    }
    let s_sum = b.first_col_tail().iter().filter(|&&x| x).count();
    if l_m >= s_sum {
        let cover_s = cover_rec(&minor_without_s(b, m))?;
        if cover_s.size() == l_m - s_sum {
            let mut c = cover_s.extend();
            (1..n).filter(|&i| b.get(i, 0)).for_each(|i| c.set_row(i));
            c.set_row(0);
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn cover_rec(a: &BoolMatrix) -> Result<Cover> {
    let n = a.rows();
    if n == 0 || a.is_zero() {
        return Ok(Cover::empty(n));
    }
    let d = diagonalize(a)?;
    let b = &d.transformed;
    let m = b.principal_minor();
    let cover_m = cover_rec(&m)?;
    let cover_b = if !b.get(0, 0) {
        cover_m.extend()
    } else if let Some(c) = one_sided_cover(b, &m, cover_m.size())? {
        c
    } else {
        let mut c = cover_m.extend();
        c.set_row(0);
        c.set_col(0);
        c
    };
    unpermute_cover(&cover_b, &d.p, &d.q)
}
