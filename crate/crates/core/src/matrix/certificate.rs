use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BoolMatrix, PermutationMatrix};
use crate::error::{Error, Result};

/// A set of lines: horizontal lines in `row_flags`, vertical in `col_flags`.
///
/// Serializes to the two flag vectors; [`Cover::to_alpha`] gives the `2 x n`
/// matrix form whose first row holds the horizontal lines.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cover {
    row_flags: Vec<bool>,
    col_flags: Vec<bool>,
}

impl Cover {
    pub fn new(row_flags: Vec<bool>, col_flags: Vec<bool>) -> Result<Self> {
        if row_flags.len() != col_flags.len() {
            return Err(Error::InvalidCover(format!(
                "{} row flags but {} column flags",
                row_flags.len(),
                col_flags.len()
            )));
        }
        Ok(Cover {
            row_flags,
            col_flags,
        })
    }

    pub fn empty(n: usize) -> Self {
        Cover {
            row_flags: vec![false; n],
            col_flags: vec![false; n],
        }
    }

    /// Every row of an `n x n` matrix.
    pub fn all_rows(n: usize) -> Self {
        Cover {
            row_flags: vec![true; n],
            col_flags: vec![false; n],
        }
    }

    pub fn from_lines(n: usize, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let mut c = Cover::empty(n);
        for &i in rows {
            if i >= n {
                return Err(Error::InvalidCover(format!("row {} out of range", i + 1)));
            }
            c.row_flags[i] = true;
        }
        for &j in cols {
            if j >= n {
                return Err(Error::InvalidCover(format!("column {} out of range", j + 1)));
            }
            c.col_flags[j] = true;
        }
        Ok(c)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.row_flags.len()
    }

    pub fn row_flags(&self) -> &[bool] {
        &self.row_flags
    }

    pub fn col_flags(&self) -> &[bool] {
        &self.col_flags
    }

    pub fn has_row(&self, i: usize) -> bool {
        self.row_flags[i]
    }

    pub fn has_col(&self, j: usize) -> bool {
        self.col_flags[j]
    }

    pub(crate) fn set_row(&mut self, i: usize) {
        self.row_flags[i] = true;
    }

    pub(crate) fn set_col(&mut self, j: usize) {
        self.col_flags[j] = true;
    }

    pub fn flagged_rows(&self) -> Vec<usize> {
        flagged(&self.row_flags)
    }

    pub fn flagged_cols(&self) -> Vec<usize> {
        flagged(&self.col_flags)
    }

    /// Number of lines, `Σα`.
    pub fn size(&self) -> usize {
        self.row_flags.iter().filter(|&&b| b).count() + self.col_flags.iter().filter(|&&b| b).count()
    }

    /// Whether the line set touches entry `(i, j)`.
    #[inline]
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.row_flags[i] || self.col_flags[j]
    }

    /// Re-indexes a cover of the principal submatrix into the enclosing
    /// matrix, shifting every line by one. The first row and column are
    /// left unflagged.
    pub fn extend(&self) -> Cover {
        let mut row_flags = Vec::with_capacity(self.n() + 1);
        row_flags.push(false);
        row_flags.extend_from_slice(&self.row_flags);
        let mut col_flags = Vec::with_capacity(self.n() + 1);
        col_flags.push(false);
        col_flags.extend_from_slice(&self.col_flags);
        Cover {
            row_flags,
            col_flags,
        }
    }

    /// The `2 x n` matrix form: row 1 horizontal lines, row 2 vertical lines.
    pub fn to_alpha(&self) -> BoolMatrix {
        BoolMatrix::from_fn(2, self.n(), |r, j| {
            if r == 0 {
                self.row_flags[j]
            } else {
                self.col_flags[j]
            }
        })
    }

    pub fn from_alpha(alpha: &BoolMatrix) -> Result<Self> {
        if alpha.rows() != 2 {
            return Err(Error::InvalidCover(format!(
                "alpha must have 2 rows, got {}",
                alpha.rows()
            )));
        }
        Ok(Cover {
            row_flags: alpha.row(0).to_vec(),
            col_flags: alpha.row(1).to_vec(),
        })
    }
}

fn flagged(flags: &[bool]) -> Vec<usize> {
    flags
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

/// 1-entries of an `n x n` matrix, no two on a common line.
///
/// The only way to build one is through a checked constructor, so every
/// `Selection` value is line-disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Selection {
    n: usize,
    picks: BTreeSet<(usize, usize)>,
}

impl Selection {
    pub fn empty(n: usize) -> Self {
        Selection {
            n,
            picks: BTreeSet::new(),
        }
    }

    pub fn new(n: usize, picks: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut s = Selection::empty(n);
        for (i, j) in picks {
            s.insert(i, j)?;
        }
        Ok(s)
    }

    /// Reads a partial permutation matrix.
    pub fn from_matrix(beta: &BoolMatrix) -> Result<Self> {
        let n = beta.square_dim()?;
        Selection::new(n, beta.ones_iter())
    }

    /// Adds a pick, rejecting out-of-range entries and shared lines.
    pub fn insert(&mut self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::InvalidSelection(format!(
                "pick ({}, {}) outside {}x{}",
                i + 1,
                j + 1,
                self.n,
                self.n
            )));
        }
        if let Some(&(a, b)) = self.picks.iter().find(|&&(a, b)| a == i || b == j) {
            return Err(Error::InvalidSelection(format!(
                "picks ({}, {}) and ({}, {}) share a line",
                a + 1,
                b + 1,
                i + 1,
                j + 1
            )));
        }
        self.picks.insert((i, j));
        Ok(())
    }

    pub(crate) fn remove(&mut self, i: usize, j: usize) -> bool {
        self.picks.remove(&(i, j))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `Σβ`.
    pub fn size(&self) -> usize {
        self.picks.len()
    }

    pub fn picks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.picks.iter().copied()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.picks.contains(&(i, j))
    }

    pub fn pick_in_row(&self, i: usize) -> Option<usize> {
        self.picks.iter().find(|&&(a, _)| a == i).map(|&(_, b)| b)
    }

    pub fn pick_in_col(&self, j: usize) -> Option<usize> {
        self.picks.iter().find(|&&(_, b)| b == j).map(|&(a, _)| a)
    }

    /// Shifts every pick by one into the enclosing matrix.
    pub fn extend(&self) -> Selection {
        Selection {
            n: self.n + 1,
            picks: self.picks.iter().map(|&(i, j)| (i + 1, j + 1)).collect(),
        }
    }

    pub fn to_matrix(&self) -> BoolMatrix {
        let mut m = BoolMatrix::zeros(self.n, self.n);
        for &(i, j) in &self.picks {
            m.set(i, j, true);
        }
        m
    }
}

fn check_square(a: &BoolMatrix, n: usize, what: &str) -> Result<()> {
    let dim = a.square_dim()?;
    if dim != n {
        return Err(Error::DimensionMismatch(format!(
            "{what} is for n = {n} but the matrix is {dim}x{dim}"
        )));
    }
    Ok(())
}

/// True iff every 1 of `a` lies on a line of `alpha`.
pub fn is_cover(a: &BoolMatrix, alpha: &Cover) -> Result<bool> {
    check_square(a, alpha.n(), "cover")?;
    Ok(a.ones_iter().all(|(i, j)| alpha.covers(i, j)))
}

/// True iff every pick of `beta` sits on a 1 of `a`. Line-disjointness is
/// guaranteed by construction of [`Selection`].
pub fn is_selection(a: &BoolMatrix, beta: &Selection) -> Result<bool> {
    check_square(a, beta.n(), "selection")?;
    Ok(beta.picks().all(|(i, j)| a.get(i, j)))
}

fn check_perm_sizes(n: usize, p: &PermutationMatrix, q: &PermutationMatrix) -> Result<()> {
    if p.size() != n || q.size() != n {
        return Err(Error::DimensionMismatch(format!(
            "certificate is for n = {n}, permutations have sizes {} and {}",
            p.size(),
            q.size()
        )));
    }
    Ok(())
}

/// Relabels a cover of `A` into a cover of `P·A·Q`.
pub fn permute_cover(alpha: &Cover, p: &PermutationMatrix, q: &PermutationMatrix) -> Result<Cover> {
    let n = alpha.n();
    check_perm_sizes(n, p, q)?;
    let mut row_flags = vec![false; n];
    for (i, &f) in alpha.row_flags.iter().enumerate() {
        row_flags[p.apply(i)] = f;
    }
    let col_flags = (0..n).map(|c| alpha.col_flags[q.apply(c)]).collect();
    Ok(Cover {
        row_flags,
        col_flags,
    })
}

/// Relabels a selection of `A` into a selection of `P·A·Q`.
pub fn permute_selection(
    beta: &Selection,
    p: &PermutationMatrix,
    q: &PermutationMatrix,
) -> Result<Selection> {
    check_perm_sizes(beta.n(), p, q)?;
    let q_inv = q.inverse();
    Ok(Selection {
        n: beta.n,
        picks: beta
            .picks
            .iter()
            .map(|&(i, j)| (p.apply(i), q_inv.apply(j)))
            .collect(),
    })
}

/// Inverse of [`permute_cover`]: maps a cover of `P·A·Q` back to `A`.
pub fn unpermute_cover(
    alpha: &Cover,
    p: &PermutationMatrix,
    q: &PermutationMatrix,
) -> Result<Cover> {
    permute_cover(alpha, &p.inverse(), &q.inverse())
}

/// Inverse of [`permute_selection`].
pub fn unpermute_selection(
    beta: &Selection,
    p: &PermutationMatrix,
    q: &PermutationMatrix,
) -> Result<Selection> {
    permute_selection(beta, &p.inverse(), &q.inverse())
}

#[derive(Serialize, Deserialize)]
struct CoverRepr {
    row_flags: Vec<u8>,
    col_flags: Vec<u8>,
}

fn flags_from_u8<E: serde::de::Error>(v: &[u8], name: &str) -> std::result::Result<Vec<bool>, E> {
    v.iter()
        .map(|&x| match x {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(E::custom(format!("{name} entries must be 0 or 1"))),
        })
        .collect()
}

impl Serialize for Cover {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CoverRepr {
            row_flags: self.row_flags.iter().map(|&b| b as u8).collect(),
            col_flags: self.col_flags.iter().map(|&b| b as u8).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cover {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CoverRepr::deserialize(deserializer)?;
        let rows = flags_from_u8(&repr.row_flags, "row_flags")?;
        let cols = flags_from_u8(&repr.col_flags, "col_flags")?;
        Cover::new(rows, cols).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SelectionRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    picks: Vec<[usize; 2]>,
}

impl Serialize for Selection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SelectionRepr {
            n: Some(self.n),
            picks: self.picks.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Selection {
    /// `n` may be omitted, in which case the largest index used is taken.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SelectionRepr::deserialize(deserializer)?;
        if repr.picks.iter().flatten().any(|&k| k == 0) {
            return Err(serde::de::Error::custom("selection picks are 1-based"));
        }
        let n = repr
            .n
            .unwrap_or_else(|| repr.picks.iter().flatten().copied().max().unwrap_or(0));
        Selection::new(n, repr.picks.iter().map(|&[i, j]| (i - 1, j - 1)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::apply_permutations;
    use proptest::prelude::*;

    fn m(rows: &[&[u8]]) -> BoolMatrix {
        BoolMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn cover_examples() {
        let one = m(&[&[1]]);
        assert!(is_cover(&one, &Cover::from_lines(1, &[0], &[]).unwrap()).unwrap());
        assert!(!is_cover(&one, &Cover::empty(1)).unwrap());
        let a = m(&[&[1, 1], &[1, 0]]);
        assert!(is_cover(&a, &Cover::from_lines(2, &[0], &[0]).unwrap()).unwrap());
    }

    #[test]
    fn cover_needs_matching_square() {
        let a = BoolMatrix::zeros(2, 3);
        assert!(matches!(is_cover(&a, &Cover::empty(2)), Err(Error::NotSquare { .. })));
        let b = BoolMatrix::zeros(3, 3);
        assert!(matches!(
            is_cover(&b, &Cover::empty(2)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn selection_examples() {
        let id = BoolMatrix::identity(2);
        assert!(is_selection(&id, &Selection::new(2, [(0, 0), (1, 1)]).unwrap()).unwrap());
        assert!(!is_selection(&id, &Selection::new(2, [(0, 1)]).unwrap()).unwrap());
        let a = m(&[&[1, 1], &[1, 0]]);
        assert!(is_selection(&a, &Selection::new(2, [(0, 1), (1, 0)]).unwrap()).unwrap());
    }

    #[test]
    fn selection_constructor_rejects_shared_lines() {
        assert!(Selection::new(2, [(0, 0), (0, 1)]).is_err());
        assert!(Selection::new(2, [(0, 0), (1, 0)]).is_err());
        assert!(Selection::new(2, [(2, 0)]).is_err());
        assert!(Selection::from_matrix(&BoolMatrix::ones(2, 2)).is_err());
    }

    /// Enumerates all partial permutations of a 2x2 matrix supported on its 1s.
    #[test]
    fn selection_example_against_enumeration() {
        let a = m(&[&[1, 1], &[1, 0]]);
        let mut valid = Vec::new();
        for bits in 0u64..16 {
            let beta = BoolMatrix::from_bits(2, 2, bits);
            let partial_perm = (0..2).all(|i| (0..2).filter(|&j| beta.get(i, j)).count() <= 1)
                && (0..2).all(|j| (0..2).filter(|&i| beta.get(i, j)).count() <= 1);
            let supported = beta.ones_iter().all(|(i, j)| a.get(i, j));
            if partial_perm && supported {
                valid.push(bits);
            }
            if let Ok(s) = Selection::from_matrix(&beta) {
                assert_eq!(is_selection(&a, &s).unwrap(), supported);
            } else {
                assert!(!partial_perm);
            }
        }
        // {(1,2),(2,1)} is bits 0b0110.
        assert!(valid.contains(&0b0110));
    }

    #[test]
    fn permute_examples() {
        let id2 = PermutationMatrix::identity(2);
        let swap = PermutationMatrix::transposition(2, 0, 1);
        let alpha = Cover::from_lines(2, &[0], &[]).unwrap();
        assert_eq!(permute_cover(&alpha, &id2, &id2).unwrap(), alpha);
        assert_eq!(
            permute_cover(&alpha, &swap, &id2).unwrap(),
            Cover::from_lines(2, &[1], &[]).unwrap()
        );
        let beta = Selection::new(2, [(0, 0)]).unwrap();
        assert_eq!(permute_selection(&beta, &id2, &id2).unwrap(), beta);
        assert_eq!(
            permute_selection(&beta, &swap, &id2).unwrap(),
            Selection::new(2, [(1, 0)]).unwrap()
        );
        assert!(permute_cover(&alpha, &PermutationMatrix::identity(3), &id2).is_err());
    }

    #[test]
    fn alpha_round_trip() {
        let c = Cover::from_lines(3, &[0, 2], &[1]).unwrap();
        let alpha = c.to_alpha();
        assert_eq!(alpha.to_rows(), vec![vec![1, 0, 1], vec![0, 1, 0]]);
        assert_eq!(Cover::from_alpha(&alpha).unwrap(), c);
    }

    #[test]
    fn json_forms() {
        let c = Cover::from_lines(2, &[0], &[1]).unwrap();
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"row_flags":[1,0],"col_flags":[0,1]}"#
        );
        let s = Selection::new(3, [(0, 2), (2, 0)]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"n":3,"picks":[[1,3],[3,1]]}"#);
        assert_eq!(serde_json::from_str::<Selection>(&text).unwrap(), s);
        let inferred: Selection = serde_json::from_str(r#"{"picks":[[1,2]]}"#).unwrap();
        assert_eq!(inferred.n(), 2);
        assert!(serde_json::from_str::<Selection>(r#"{"picks":[[1,2],[1,1]]}"#).is_err());
    }

    fn perm(n: usize) -> impl Strategy<Value = PermutationMatrix> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| PermutationMatrix::from_mapping(v).unwrap())
    }

    proptest! {
        #[test]
        fn cover_validity_is_permutation_invariant(
            (p, q, bits, rows, cols) in (1usize..7).prop_flat_map(|n| (
                perm(n), perm(n), any::<u64>(),
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), n)))
        ) {
            let n = p.size();
            let a = BoolMatrix::from_bits(n, n, bits);
            let alpha = Cover::new(rows, cols).unwrap();
            let pa = apply_permutations(&a, &p, &q).unwrap();
            let alpha2 = permute_cover(&alpha, &p, &q).unwrap();
            prop_assert_eq!(is_cover(&a, &alpha).unwrap(), is_cover(&pa, &alpha2).unwrap());
            prop_assert_eq!(alpha.size(), alpha2.size());
            prop_assert_eq!(unpermute_cover(&alpha2, &p, &q).unwrap(), alpha);
        }

        #[test]
        fn selection_validity_is_permutation_invariant(
            (p, q, bits, sigma) in (1usize..7).prop_flat_map(|n| (
                perm(n), perm(n), any::<u64>(), perm(n)))
        ) {
            let n = p.size();
            let a = BoolMatrix::from_bits(n, n, bits);
            // Take the part of a random full permutation lying on 1s of A.
            let beta = Selection::new(n, (0..n).map(|i| (i, sigma.apply(i))).filter(|&(i, j)| a.get(i, j))).unwrap();
            let pa = apply_permutations(&a, &p, &q).unwrap();
            let beta2 = permute_selection(&beta, &p, &q).unwrap();
            prop_assert!(is_selection(&pa, &beta2).unwrap());
            prop_assert_eq!(beta.size(), beta2.size());
            prop_assert_eq!(unpermute_selection(&beta2, &p, &q).unwrap(), beta);
        }
    }
}
