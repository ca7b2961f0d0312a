use super::{union_property, AntiChain, ChainPartition, Poset, SdrAssignment, SetSystem};
use crate::error::{Error, Result};
use crate::matrix::{is_selection, BoolMatrix, Selection};
use crate::oracle::OracleBudget;

/// The `k x n` matrix with a 1 at `(i, j)` iff chain `i` holds element `j`.
/// Every column has exactly one 1.
pub fn chains_element_incidence(p: &Poset, chains: &ChainPartition) -> Result<BoolMatrix> {
    let chains = ChainPartition::new(p, chains.chains().to_vec())?;
    Ok(BoolMatrix::from_fn(chains.len(), p.n(), |i, j| {
        chains.chains()[i].contains(&j)
    }))
}

/// The elements picked by a selection of the padded chain incidence matrix.
///
/// `beta` lives on the `n x n` matrix obtained by adding zero rows below the
/// `k x n` incidence. It must meet every chain, and the picked elements must
/// be pairwise incomparable; neither is implied by maximality alone.
pub fn antichain_from_selection(
    p: &Poset,
    chains: &ChainPartition,
    beta: &Selection,
) -> Result<AntiChain> {
    let padded = chains_element_incidence(p, chains)?.pad_to_square();
    if !is_selection(&padded, beta)? {
        return Err(Error::InvalidSelection("a pick is not on a chain element".into()));
    }
    if beta.size() != chains.len() {
        return Err(Error::Precondition(format!(
            "selection meets {} of {} chains",
            beta.size(),
            chains.len()
        )));
    }
    let elements: Vec<usize> = beta.picks().map(|(_, j)| j).collect();
    for (k, &a) in elements.iter().enumerate() {
        if let Some(&b) = elements[k + 1..].iter().find(|&&b| p.comparable(a, b)) {
            return Err(Error::InvalidCertificate(format!(
                "selected elements {} and {} are comparable",
                a + 1,
                b + 1
            )));
        }
    }
    AntiChain::new(p, elements)
}

/// An antichain with exactly one element from each chain, if one exists.
/// Chains are visited in order and their elements in increasing order.
pub fn antichain_transversal(
    p: &Poset,
    chains: &ChainPartition,
    budget: &OracleBudget,
) -> Result<Option<AntiChain>> {
    budget.check_elements(p.n())?;
    let mut sorted: Vec<Vec<usize>> = chains.chains().to_vec();
    sorted.iter_mut().for_each(|c| c.sort_unstable());
    let mut picked = Vec::with_capacity(sorted.len());
    if transversal(p, &sorted, &mut picked) {
        return AntiChain::new(p, picked).map(Some);
    }
    Ok(None)
}

fn transversal(p: &Poset, chains: &[Vec<usize>], picked: &mut Vec<usize>) -> bool {
    let Some(chain) = chains.get(picked.len()) else {
        return true;
    };
    for &e in chain {
        if picked.iter().all(|&q| !p.comparable(q, e)) {
            picked.push(e);
            if transversal(p, chains, picked) {
                return true;
            }
            picked.pop();
        }
    }
    false
}

/// The height-two poset on `x_0..x_{n-1}` (elements `0..n`) and
/// `S_0..S_{n-1}` (elements `n..2n`) with `x_i < S_j` iff `i ∈ S_j`.
pub fn poset_from_set_system(s: &SetSystem) -> Poset {
    let n = s.n();
    let lt = BoolMatrix::from_fn(2 * n, 2 * n, |a, b| a < n && b >= n && s.contains(b - n, a));
    Poset::new(lt).expect("a bipartite relation of height two is a strict order")
}

/// Reads an SDR off a partition of `poset_from_set_system(s)` into `n`
/// chains. Each chain must be a pair `{x_i, S_j}`, which sets `a_j = i`.
pub fn sdr_from_chain_partition(
    s: &SetSystem,
    chains: &ChainPartition,
    budget: &OracleBudget,
) -> Result<SdrAssignment> {
    let n = s.n();
    if !union_property(s, budget)? {
        return Err(Error::Precondition("set system lacks the union property".into()));
    }
    let p = poset_from_set_system(s);
    let chains = ChainPartition::new(&p, chains.chains().to_vec())?;
    if chains.len() != n {
        return Err(Error::Precondition(format!(
            "partition has {} chains, expected {n}",
            chains.len()
        )));
    }
    let mut assignment = vec![usize::MAX; n];
    for c in chains.chains() {
        let (x, set) = match c[..] {
            [a, b] if a < n && b >= n => (a, b - n),
            [a, b] if b < n && a >= n => (b, a - n),
            _ => {
                return Err(Error::Precondition(format!(
                    "chain of {} elements is not a pair {{x_i, S_j}}",
                    c.len()
                )))
            }
        };
        assignment[set] = x;
    }
    SdrAssignment::new(s, assignment)
}
