use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::BoolMatrix;
use crate::error::{Error, Result};

/// A permutation of `{0..n}` viewed as an `n x n` permutation matrix.
///
/// `mapping[k] = j` means the matrix has its 1 of column `k` in row `j`.
/// Multiplying on the left, `P·A` moves row `k` of `A` to row `mapping[k]`.
/// Multiplying on the right, column `c` of `A·Q` is column `mapping[c]` of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermutationMatrix {
    mapping: Vec<usize>,
}

impl PermutationMatrix {
    pub fn identity(n: usize) -> Self {
        PermutationMatrix {
            mapping: (0..n).collect(),
        }
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.mapping.swap(a, b);
        p
    }

    pub fn from_mapping(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &j in &mapping {
            if j >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range for size {}",
                    j + 1,
                    n
                )));
            }
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image {} appears twice",
                    j + 1
                )));
            }
        }
        Ok(PermutationMatrix { mapping })
    }

    /// Reads a permutation matrix, checking exactly one 1 per row and column.
    pub fn from_matrix(m: &BoolMatrix) -> Result<Self> {
        let n = m.square_dim()?;
        let mut mapping = Vec::with_capacity(n);
        for k in 0..n {
            let ones: Vec<usize> = (0..n).filter(|&j| m.get(j, k)).collect();
            match ones.as_slice() {
                [j] => mapping.push(*j),
                _ => {
                    return Err(Error::InvalidPermutation(format!(
                        "column {} has {} ones",
                        k + 1,
                        ones.len()
                    )))
                }
            }
        }
        Self::from_mapping(mapping)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.mapping.len()
    }

    #[inline]
    pub fn apply(&self, k: usize) -> usize {
        self.mapping[k]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (k, &j) in self.mapping.iter().enumerate() {
            inv[j] = k;
        }
        PermutationMatrix { mapping: inv }
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size());
        PermutationMatrix {
            mapping: other.mapping.iter().map(|&k| self.mapping[k]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(k, &j)| k == j)
    }

    /// Replaces `self` with `T·self`, `T` the transposition of `a` and `b`.
    pub(crate) fn swap_left(&mut self, a: usize, b: usize) {
        for j in self.mapping.iter_mut() {
            if *j == a {
                *j = b;
            } else if *j == b {
                *j = a;
            }
        }
    }

    /// Replaces `self` with `self·T`.
    pub(crate) fn swap_right(&mut self, a: usize, b: usize) {
        self.mapping.swap(a, b);
    }

    pub fn to_matrix(&self) -> BoolMatrix {
        let mut m = BoolMatrix::zeros(self.size(), self.size());
        for (k, &j) in self.mapping.iter().enumerate() {
            m.set(j, k, true);
        }
        m
    }
}

/// Computes `P·A·Q`.
pub fn apply_permutations(
    a: &BoolMatrix,
    p: &PermutationMatrix,
    q: &PermutationMatrix,
) -> Result<BoolMatrix> {
    if p.size() != a.rows() || q.size() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "P is {0}x{0}, A is {1}x{2}, Q is {3}x{3}",
            p.size(),
            a.rows(),
            a.cols(),
            q.size()
        )));
    }
    let p_inv = p.inverse();
    Ok(BoolMatrix::from_fn(a.rows(), a.cols(), |r, c| {
        a.get(p_inv.apply(r), q.apply(c))
    }))
}

#[derive(Serialize, Deserialize)]
struct PermutationRepr {
    mapping: Vec<usize>,
}

impl Serialize for PermutationMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PermutationRepr {
            mapping: self.mapping.iter().map(|j| j + 1).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PermutationMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PermutationRepr::deserialize(deserializer)?;
        let mapping = repr
            .mapping
            .iter()
            .map(|&j| {
                j.checked_sub(1)
                    .ok_or_else(|| serde::de::Error::custom("permutation entries are 1-based"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        PermutationMatrix::from_mapping(mapping).map_err(serde::de::Error::custom)
    }
}
