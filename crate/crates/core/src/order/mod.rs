//! Set systems and posets, with the constructions that move between them and
//! 0-1 matrices.

mod dilworth;
mod hall;

pub use dilworth::{
    antichain_from_selection, antichain_transversal, chains_element_incidence,
    poset_from_set_system, sdr_from_chain_partition,
};
pub use hall::{
    hall_block_decomposition, rows_have_union_property, sdr_from_selection, split_blocks,
    union_property, union_property_of_blocks, HallBlocks,
};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::BoolMatrix;

/// `n` subsets of `{0..n}`; `incidence(i, j)` says whether `j ∈ S_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetSystem {
    incidence: BoolMatrix,
}

impl SetSystem {
    pub fn new(incidence: BoolMatrix) -> Result<Self> {
        incidence.square_dim()?;
        Ok(SetSystem { incidence })
    }

    /// Builds `S_i` from element lists. Elements must be below the number
    /// of sets.
    pub fn from_sets<S: AsRef<[usize]>>(sets: &[S]) -> Result<Self> {
        let n = sets.len();
        let mut incidence = BoolMatrix::zeros(n, n);
        for (i, s) in sets.iter().enumerate() {
            for &j in s.as_ref() {
                if j >= n {
                    return Err(Error::DimensionMismatch(format!(
                        "element {} in a system of {n} sets",
                        j + 1
                    )));
                }
                incidence.set(i, j, true);
            }
        }
        Ok(SetSystem { incidence })
    }

    pub fn n(&self) -> usize {
        self.incidence.rows()
    }

    pub fn incidence(&self) -> &BoolMatrix {
        &self.incidence
    }

    pub fn contains(&self, set: usize, element: usize) -> bool {
        self.incidence.get(set, element)
    }

    pub fn sets(&self) -> Vec<Vec<usize>> {
        (0..self.n())
            .map(|i| (0..self.n()).filter(|&j| self.incidence.get(i, j)).collect())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SetSystemRepr {
    sets: Vec<Vec<usize>>,
}

impl Serialize for SetSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SetSystemRepr {
            sets: self
                .sets()
                .into_iter()
                .map(|s| s.into_iter().map(|j| j + 1).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SetSystemRepr::deserialize(deserializer)?;
        let sets = repr
            .sets
            .into_iter()
            .map(|s| {
                s.into_iter()
                    .map(|j| j.checked_sub(1).ok_or_else(|| D::Error::custom("elements are 1-based")))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        SetSystem::from_sets(&sets).map_err(D::Error::custom)
    }
}

/// Representatives `a_i ∈ S_i`, pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SdrAssignment {
    assignment: Vec<usize>,
}

impl SdrAssignment {
    /// Checks the assignment against `s`.
    pub fn new(s: &SetSystem, assignment: Vec<usize>) -> Result<Self> {
        let n = s.n();
        if assignment.len() != n {
            return Err(Error::InvalidCertificate(format!(
                "{} representatives for {n} sets",
                assignment.len()
            )));
        }
        let mut used = vec![false; n];
        for (i, &a) in assignment.iter().enumerate() {
            if a >= n || !s.contains(i, a) {
                return Err(Error::InvalidCertificate(format!(
                    "representative {} is not in set {}",
                    a + 1,
                    i + 1
                )));
            }
            if std::mem::replace(&mut used[a], true) {
                return Err(Error::InvalidCertificate(format!(
                    "element {} represents two sets",
                    a + 1
                )));
            }
        }
        Ok(SdrAssignment { assignment })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }
}

impl Serialize for SdrAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<usize> = self.assignment.iter().map(|a| a + 1).collect();
        v.serialize(serializer)
    }
}

/// A strict partial order on `{0..n}`: `lt(i, j)` iff `x_i < x_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    lt: BoolMatrix,
}

impl Poset {
    /// Validates irreflexivity, antisymmetry and transitivity.
    pub fn new(lt: BoolMatrix) -> Result<Self> {
        let n = lt.square_dim()?;
        for i in 0..n {
            if lt.get(i, i) {
                return Err(Error::InvalidPoset(format!("x{0} < x{0}", i + 1)));
            }
            for j in 0..n {
                if lt.get(i, j) && lt.get(j, i) {
                    return Err(Error::InvalidPoset(format!(
                        "x{0} < x{1} and x{1} < x{0}",
                        i + 1,
                        j + 1
                    )));
                }
                if !lt.get(i, j) {
                    continue;
                }
                if let Some(k) = (0..n).find(|&k| lt.get(j, k) && !lt.get(i, k)) {
                    return Err(Error::InvalidPoset(format!(
                        "x{} < x{} < x{} but not x{} < x{}",
                        i + 1,
                        j + 1,
                        k + 1,
                        i + 1,
                        k + 1
                    )));
                }
            }
        }
        Ok(Poset { lt })
    }

    /// The transitive closure of the given relations. Cycles are rejected.
    pub fn from_relations(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut lt = BoolMatrix::zeros(n, n);
        for (i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidPoset(format!(
                    "relation ({}, {}) outside {n} elements",
                    i + 1,
                    j + 1
                )));
            }
            lt.set(i, j, true);
        }
        for k in 0..n {
            for i in 0..n {
                if lt.get(i, k) {
                    for j in 0..n {
                        if lt.get(k, j) {
                            lt.set(i, j, true);
                        }
                    }
                }
            }
        }
        Self::new(lt)
    }

    pub fn n(&self) -> usize {
        self.lt.rows()
    }

    pub fn lt(&self) -> &BoolMatrix {
        &self.lt
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.lt.get(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        i == j || self.lt.get(i, j) || self.lt.get(j, i)
    }

    pub fn is_chain(&self, elements: &[usize]) -> bool {
        elements
            .iter()
            .enumerate()
            .all(|(k, &a)| elements[k + 1..].iter().all(|&b| a != b && self.comparable(a, b)))
    }

    pub fn is_antichain(&self, elements: &[usize]) -> bool {
        elements
            .iter()
            .enumerate()
            .all(|(k, &a)| elements[k + 1..].iter().all(|&b| a != b && !self.comparable(a, b)))
    }
}

#[derive(Serialize, Deserialize)]
struct PosetRepr {
    n: usize,
    lt: Vec<[usize; 2]>,
}

impl Serialize for Poset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PosetRepr {
            n: self.n(),
            lt: self.lt.ones_iter().map(|(i, j)| [i + 1, j + 1]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PosetRepr::deserialize(deserializer)?;
        let mut lt = BoolMatrix::zeros(repr.n, repr.n);
        for [i, j] in repr.lt {
            if i == 0 || j == 0 || i > repr.n || j > repr.n {
                return Err(D::Error::custom("relation indices are 1-based and within n"));
            }
            lt.set(i - 1, j - 1, true);
        }
        Poset::new(lt).map_err(D::Error::custom)
    }
}

/// Disjoint chains covering every element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainPartition {
    chains: Vec<Vec<usize>>,
}

impl ChainPartition {
    pub fn new(p: &Poset, chains: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; p.n()];
        for (k, c) in chains.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidCertificate(format!("chain {} is empty", k + 1)));
            }
            for &e in c {
                if e >= p.n() || std::mem::replace(&mut seen[e], true) {
                    return Err(Error::InvalidCertificate(format!(
                        "element {} is repeated or out of range",
                        e + 1
                    )));
                }
            }
            if !p.is_chain(c) {
                return Err(Error::InvalidCertificate(format!(
                    "chain {} has incomparable elements",
                    k + 1
                )));
            }
        }
        if let Some(e) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidCertificate(format!("element {} is in no chain", e + 1)));
        }
        Ok(ChainPartition { chains })
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }
}

impl Serialize for ChainPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Vec<usize>> = self
            .chains
            .iter()
            .map(|c| c.iter().map(|e| e + 1).collect())
            .collect();
        v.serialize(serializer)
    }
}

/// Pairwise incomparable elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AntiChain {
    elements: Vec<usize>,
}

impl AntiChain {
    pub fn new(p: &Poset, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        if elements.iter().any(|&e| e >= p.n()) || !p.is_antichain(&elements) {
            return Err(Error::InvalidCertificate(
                "elements are repeated, out of range, or comparable".into(),
            ));
        }
        Ok(AntiChain { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl Serialize for AntiChain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<usize> = self.elements.iter().map(|e| e + 1).collect();
        v.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_system_json() {
        let s = SetSystem::from_sets(&[vec![0, 1], vec![0]]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"sets":[[1,2],[1]]}"#);
        assert_eq!(serde_json::from_str::<SetSystem>(&j).unwrap(), s);
        assert!(serde_json::from_str::<SetSystem>(r#"{"sets":[[3],[1]]}"#).is_err());
        assert!(serde_json::from_str::<SetSystem>(r#"{"sets":[[0]]}"#).is_err());
    }

    #[test]
    fn sdr_validation() {
        let s = SetSystem::from_sets(&[vec![0, 1], vec![0]]).unwrap();
        assert!(SdrAssignment::new(&s, vec![1, 0]).is_ok());
        assert!(SdrAssignment::new(&s, vec![0, 0]).is_err());
        assert!(SdrAssignment::new(&s, vec![1, 1]).is_err());
        assert!(SdrAssignment::new(&s, vec![1]).is_err());
    }

    #[test]
    fn poset_validation() {
        assert!(Poset::new(BoolMatrix::identity(2)).is_err());
        assert!(Poset::new(BoolMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap()).is_err());
        let not_transitive = BoolMatrix::from_rows(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]]).unwrap();
        assert!(Poset::new(not_transitive).is_err());
        let p = Poset::from_relations(3, [(0, 1), (1, 2)]).unwrap();
        assert!(p.less(0, 2));
        assert!(p.is_chain(&[0, 1, 2]));
        assert!(Poset::from_relations(2, [(0, 1), (1, 0)]).is_err());
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"n":3,"lt":[[1,2],[1,3],[2,3]]}"#);
        assert_eq!(serde_json::from_str::<Poset>(&j).unwrap(), p);
    }

    #[test]
    fn chains_and_antichains() {
        let p = Poset::from_relations(3, [(0, 1)]).unwrap();
        assert!(ChainPartition::new(&p, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(ChainPartition::new(&p, vec![vec![0, 2], vec![1]]).is_err());
        assert!(ChainPartition::new(&p, vec![vec![0, 1]]).is_err());
        assert!(ChainPartition::new(&p, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(AntiChain::new(&p, vec![0, 2]).is_ok());
        assert!(AntiChain::new(&p, vec![0, 1]).is_err());
        assert!(AntiChain::new(&p, vec![2, 2]).is_err());
    }
}
