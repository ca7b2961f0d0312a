use serde::Serialize;

use super::OracleBudget;
use crate::error::Result;
use crate::order::{SdrAssignment, SetSystem};

/// Ground truth for a set system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallOracle {
    pub union_prop: bool,
    pub sdr: Option<SdrAssignment>,
}

/// Checks the union property over every nonempty family of sets and searches
/// for an SDR by backtracking: sets in order, elements in increasing order.
/// The first SDR found is returned.
pub fn oracle_hall(s: &SetSystem, budget: &OracleBudget) -> Result<HallOracle> {
    let n = s.n();
    budget.check_elements(n)?;
    let sets = s.sets();
    let union_prop = (1usize..1 << n).all(|family| {
        let mut union = vec![false; n];
        for (i, set) in sets.iter().enumerate().filter(|(i, _)| family >> i & 1 == 1) {
            debug_assert!(i < n);
            set.iter().for_each(|&x| union[x] = true);
        }
        union.iter().filter(|&&b| b).count() >= family.count_ones() as usize
    });
    let mut chosen = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let sdr = if search(&sets, &mut chosen, &mut used) {
        Some(SdrAssignment::new(s, chosen)?)
    } else {
        None
    };
    Ok(HallOracle { union_prop, sdr })
}

fn search(sets: &[Vec<usize>], chosen: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let Some(set) = sets.get(chosen.len()) else {
        return true;
    };
    for &x in set {
        if used[x] {
            continue;
        }
        used[x] = true;
        chosen.push(x);
        if search(sets, chosen, used) {
            return true;
        }
        chosen.pop();
        used[x] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn sys(sets: &[&[usize]]) -> SetSystem {
        SetSystem::from_sets(sets).unwrap()
    }

    #[test]
    fn examples() {
        let b = OracleBudget::default();
        let r = oracle_hall(&sys(&[&[0, 1], &[0]]), &b).unwrap();
        assert!(r.union_prop);
        assert_eq!(r.sdr.unwrap().assignment(), &[1, 0]);
        let r = oracle_hall(&sys(&[&[0], &[0]]), &b).unwrap();
        assert_eq!(r, HallOracle { union_prop: false, sdr: None });
        let r = oracle_hall(&sys(&[]), &b).unwrap();
        assert!(r.union_prop && r.sdr.is_some());
    }

    #[test]
    fn union_property_iff_sdr_small() {
        let b = OracleBudget::default();
        for n in 1..=3 {
            for bits in 0u64..1 << (n * n) {
                let s = SetSystem::new(crate::matrix::BoolMatrix::from_bits(n, n, bits)).unwrap();
                let r = oracle_hall(&s, &b).unwrap();
                assert_eq!(r.union_prop, r.sdr.is_some());
            }
        }
    }

    #[test]
    fn budget() {
        let b = OracleBudget { max_elements: 2, ..OracleBudget::default() };
        let s = sys(&[&[0], &[1], &[2]]);
        assert!(matches!(oracle_hall(&s, &b), Err(Error::BudgetExceeded { .. })));
    }
}
