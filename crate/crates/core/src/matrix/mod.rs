//! Dense 0-1 matrices, permutation matrices, and the cover/selection
//! certificates that the rest of the crate is built around.
//!
//! Indices are 0-based in the Rust API. Every external format (JSON, CLI)
//! is 1-based.

mod certificate;
mod permutation;

pub use certificate::{
    is_cover, is_selection, permute_cover, permute_selection, unpermute_cover,
    unpermute_selection, Cover, Selection,
};
pub use permutation::{apply_permutations, PermutationMatrix};

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A dense, row-major 0-1 matrix. Rectangular shapes (including empty ones)
/// are allowed; the certificate layer requires squares.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BoolMatrix {
            rows,
            cols,
            data: vec![false; rows * cols],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        BoolMatrix {
            rows,
            cols,
            data: vec![true; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i == j)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        BoolMatrix { rows, cols, data }
    }

    /// Builds a matrix from integer rows. Every row must have the same length
    /// and every entry must be 0 or 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    cols
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => data.push(false),
                    1 => data.push(true),
                    _ => {
                        return Err(Error::NonBinaryEntry {
                            row: i + 1,
                            col: j + 1,
                            value: v as i64,
                        })
                    }
                }
            }
        }
        Ok(BoolMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Decodes the low `rows * cols` bits of `bits`, row-major, bit 0 first.
    pub fn from_bits(rows: usize, cols: usize, bits: u64) -> Self {
        assert!(rows * cols <= 64, "from_bits holds at most 64 entries");
        Self::from_fn(rows, cols, |i, j| bits >> (i * cols + j) & 1 == 1)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix, or `NotSquare`.
    pub fn square_dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Row `i` as a bitmask over columns. Requires `cols <= 64`.
    pub fn row_bits(&self, i: usize) -> u64 {
        debug_assert!(self.cols <= 64);
        self.row(i)
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &b)| acc | (b as u64) << j)
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(k, _)| (k / cols, k % cols))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// The submatrix picking the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Entries `(i, j)` with `i, j >= 1`: the principal submatrix `M` left
    /// after removing the first row and column.
    pub fn principal_minor(&self) -> Self {
        Self::from_fn(
            self.rows.saturating_sub(1),
            self.cols.saturating_sub(1),
            |i, j| self.get(i + 1, j + 1),
        )
    }

    /// First row without its leading entry (the `R` block).
    pub fn first_row_tail(&self) -> Vec<bool> {
        if self.rows == 0 {
            return Vec::new();
        }
        (1..self.cols).map(|j| self.get(0, j)).collect()
    }

    /// First column without its leading entry (the `S` block).
    pub fn first_col_tail(&self) -> Vec<bool> {
        if self.cols == 0 {
            return Vec::new();
        }
        (1..self.rows).map(|i| self.get(i, 0)).collect()
    }

    /// Embeds the matrix in the top-left corner of a `k x k` zero matrix,
    /// `k = max(rows, cols)`. Zero lines change neither `l` nor `o`.
    pub fn pad_to_square(&self) -> Self {
        let k = self.rows.max(self.cols);
        Self::from_fn(k, k, |i, j| i < self.rows && j < self.cols && self.get(i, j))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Rows as 0/1 integer vectors.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&b| b as u8).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        !self.data.iter().any(|&b| b)
    }
}

/// Number of 1s in `a` (the `Σ` of the matrix over ℤ). Empty matrices sum to 0.
pub fn sum_entries(a: &BoolMatrix) -> usize {
    a.data.iter().filter(|&&b| b).count()
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolMatrix({}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str(if i == 0 { " [" } else { ", " })?;
            for &b in self.row(i) {
                f.write_str(if b { "1" } else { "0" })?;
            }
            if i + 1 == self.rows {
                f.write_str("]")?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<&str> = self.row(i).iter().map(|&b| if b { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u8>>,
}

impl Serialize for BoolMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            data: self.to_rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BoolMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.data.len() != repr.rows {
            return Err(serde::de::Error::custom(format!(
                "\"rows\" is {} but \"data\" has {} rows",
                repr.rows,
                repr.data.len()
            )));
        }
        if repr.rows == 0 {
            return Ok(BoolMatrix::zeros(0, repr.cols));
        }
        let m = BoolMatrix::from_rows(&repr.data).map_err(serde::de::Error::custom)?;
        if m.cols != repr.cols {
            return Err(serde::de::Error::custom(format!(
                "\"cols\" is {} but rows have {} entries",
                repr.cols, m.cols
            )));
        }
        Ok(m)
    }
}
