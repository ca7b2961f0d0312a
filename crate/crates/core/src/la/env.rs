use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ast::Sort;
use super::LaError;
use crate::matrix::BoolMatrix;

/// A matrix over the ring of integers. Indices are 0-based here; the
/// language's `e(A, i, j)` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self, LaError> {
        if rows.checked_mul(cols) != Some(data.len()) {
            return Err(LaError::Environment(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows.saturating_mul(cols),
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LaError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(LaError::Environment("ragged matrix rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) outside {}x{}", self.rows, self.cols);
        self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    /// The 0-1 matrix with the same entries, if every entry is 0 or 1.
    pub fn to_bool(&self) -> Option<BoolMatrix> {
        if self.data.iter().any(|&v| v != 0 && v != 1) {
            return None;
        }
        Some(BoolMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) == 1))
    }
}

impl From<&BoolMatrix> for IntMatrix {
    fn from(m: &BoolMatrix) -> Self {
        IntMatrix::from_fn(m.rows(), m.cols(), |i, j| i64::from(m.get(i, j)))
    }
}

#[derive(Serialize, Deserialize)]
struct IntMatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<Vec<i64>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        IntMatrixRepr { rows: self.rows, cols: self.cols, data: self.to_rows() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = IntMatrixRepr::deserialize(deserializer)?;
        if repr.data.len() != repr.rows || repr.data.iter().any(|r| r.len() != repr.cols) {
            return Err(serde::de::Error::custom(format!(
                "data does not have the declared shape {}x{}",
                repr.rows, repr.cols
            )));
        }
        Ok(IntMatrix { rows: repr.rows, cols: repr.cols, data: repr.data.concat() })
    }
}

/// A value of one of the four sorts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Index(u64),
    Ring(i64),
    Matrix(Arc<IntMatrix>),
    Bool(bool),
}

impl Value {
    pub fn sort(&self) -> Sort {
        match self {
            Value::Index(_) => Sort::Index,
            Value::Ring(_) => Sort::Ring,
            Value::Matrix(_) => Sort::Matrix,
            Value::Bool(_) => Sort::Formula,
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("sort", &self.sort())?;
        match self {
            Value::Index(v) => map.serialize_entry("value", v)?,
            Value::Ring(v) => map.serialize_entry("value", v)?,
            Value::Matrix(m) => map.serialize_entry("value", m.as_ref())?,
            Value::Bool(b) => map.serialize_entry("value", b)?,
        }
        map.end()
    }
}

/// Values for free variables, one map per sort. A name may appear in at
/// most one map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Environment {
    #[serde(default)]
    pub index: BTreeMap<String, u64>,
    #[serde(default)]
    pub ring: BTreeMap<String, i64>,
    #[serde(default)]
    pub matrix: BTreeMap<String, IntMatrix>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_index(mut self, name: &str, v: u64) -> Self {
        self.index.insert(name.into(), v);
        self
    }

    pub fn with_ring(mut self, name: &str, v: i64) -> Self {
        self.ring.insert(name.into(), v);
        self
    }

    pub fn with_matrix(mut self, name: &str, m: IntMatrix) -> Self {
        self.matrix.insert(name.into(), m);
        self
    }

    pub fn with_bool_matrix(self, name: &str, m: &BoolMatrix) -> Self {
        self.with_matrix(name, m.into())
    }

    pub fn validate(&self) -> Result<(), LaError> {
        let mut seen = BTreeSet::new();
        let names = self.index.keys().chain(self.ring.keys()).chain(self.matrix.keys());
        for name in names {
            if !seen.insert(name) {
                return Err(LaError::Environment(format!("`{name}` is bound in two sorts")));
            }
            let ok = name.starts_with(|c: char| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
            if !ok {
                return Err(LaError::Environment(format!("`{name}` is not a variable name")));
            }
        }
        Ok(())
    }

    pub fn sort_of(&self, name: &str) -> Option<Sort> {
        if self.index.contains_key(name) {
            Some(Sort::Index)
        } else if self.ring.contains_key(name) {
            Some(Sort::Ring)
        } else if self.matrix.contains_key(name) {
            Some(Sort::Matrix)
        } else {
            None
        }
    }

    /// Declared sorts of all bound names.
    pub fn sorts(&self) -> BTreeMap<String, Sort> {
        let index = self.index.keys().map(|k| (k.clone(), Sort::Index));
        let ring = self.ring.keys().map(|k| (k.clone(), Sort::Ring));
        let matrix = self.matrix.keys().map(|k| (k.clone(), Sort::Matrix));
        index.chain(ring).chain(matrix).collect()
    }

    /// All bindings as values, with matrices shared.
    pub(crate) fn values(&self) -> HashMap<String, Value> {
        let index = self.index.iter().map(|(k, &v)| (k.clone(), Value::Index(v)));
        let ring = self.ring.iter().map(|(k, &v)| (k.clone(), Value::Ring(v)));
        let matrix = self.matrix.iter().map(|(k, m)| (k.clone(), Value::Matrix(Arc::new(m.clone()))));
        index.chain(ring).chain(matrix).collect()
    }
}
