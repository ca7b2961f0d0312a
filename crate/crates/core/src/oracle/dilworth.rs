use serde::Serialize;

use super::OracleBudget;
use crate::error::Result;
use crate::order::{AntiChain, ChainPartition, Poset};

/// Ground truth for a poset: the largest antichain and the fewest chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DilworthOracle {
    pub lambda: usize,
    pub kappa: usize,
    pub antichain: AntiChain,
    pub chains: ChainPartition,
}

/// The maximum antichain is the first largest one among element subsets in
/// increasing bitmask order. The minimum chain partition is the first one in
/// the order that puts each element, in turn, into an earlier chain before
/// opening a new one.
pub fn oracle_dilworth(p: &Poset, budget: &OracleBudget) -> Result<DilworthOracle> {
    let n = p.n();
    budget.check_elements(n)?;

    let mut best_anti = 0u32;
    for mask in 0u32..1 << n {
        if mask.count_ones() <= best_anti.count_ones() {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if p.is_antichain(&members) {
            best_anti = mask;
        }
    }
    let antichain = AntiChain::new(p, (0..n).filter(|&i| best_anti >> i & 1 == 1).collect())?;

    let mut search = PartitionSearch {
        p,
        current: Vec::new(),
        best: None,
    };
    search.run(0);
    let chains = ChainPartition::new(p, search.best.expect("singletons always partition"))?;

    Ok(DilworthOracle {
        lambda: antichain.len(),
        kappa: chains.len(),
        antichain,
        chains,
    })
}

struct PartitionSearch<'a> {
    p: &'a Poset,
    current: Vec<Vec<usize>>,
    best: Option<Vec<Vec<usize>>>,
}

impl PartitionSearch<'_> {
    fn run(&mut self, e: usize) {
        if self.best.as_ref().is_some_and(|b| self.current.len() >= b.len()) {
            return;
        }
        if e == self.p.n() {
            self.best = Some(self.current.clone());
            return;
        }
        for c in 0..self.current.len() {
            if self.current[c].iter().all(|&q| self.p.comparable(q, e)) {
                self.current[c].push(e);
                self.run(e + 1);
                self.current[c].pop();
            }
        }
        self.current.push(vec![e]);
        self.run(e + 1);
        self.current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::matrix::BoolMatrix;

    #[test]
    fn examples() {
        let b = OracleBudget::default();
        let anti = Poset::from_relations(3, []).unwrap();
        let r = oracle_dilworth(&anti, &b).unwrap();
        assert_eq!((r.lambda, r.kappa), (3, 3));
        let total = Poset::from_relations(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = oracle_dilworth(&total, &b).unwrap();
        assert_eq!((r.lambda, r.kappa), (1, 1));
        assert_eq!(r.chains.chains(), &[vec![0, 1, 2, 3]]);
        // Two chains 0<1, 2<3 plus 0<3.
        let p = Poset::from_relations(4, [(0, 1), (2, 3), (0, 3)]).unwrap();
        let r = oracle_dilworth(&p, &b).unwrap();
        assert_eq!((r.lambda, r.kappa), (2, 2));
        assert_eq!(r.antichain.elements(), &[0, 2]);
        let empty = Poset::new(BoolMatrix::zeros(0, 0)).unwrap();
        let r = oracle_dilworth(&empty, &b).unwrap();
        assert_eq!((r.lambda, r.kappa), (0, 0));
    }

    /// Brute-force both sides independently of the search order for every
    /// strict order on three labelled elements.
    #[test]
    fn width_equals_cover_number_small() {
        let b = OracleBudget::default();
        let pairs: Vec<(usize, usize)> =
            (0..3).flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        for bits in 0u32..1 << pairs.len() {
            let rel: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &p)| p).collect();
            let Ok(p) = Poset::from_relations(3, rel) else { continue };
            let r = oracle_dilworth(&p, &b).unwrap();
            assert_eq!(r.lambda, r.kappa);
            assert!(p.is_antichain(r.antichain.elements()));
            assert!(r.chains.chains().iter().all(|c| p.is_chain(c)));
        }
    }

    #[test]
    fn budget() {
        let b = OracleBudget { max_elements: 2, ..OracleBudget::default() };
        let p = Poset::from_relations(3, []).unwrap();
        assert!(matches!(oracle_dilworth(&p, &b), Err(Error::BudgetExceeded { .. })));
    }
}
