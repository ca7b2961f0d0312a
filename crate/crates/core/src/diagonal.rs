//! The diagonal property and the layer-by-layer procedure that establishes it.
//!
//! Layer `i` of a square matrix is the row segment `(i, i..n)` together with
//! the column segment `(i+1..n, i)`. A matrix has the diagonal property when
//! every diagonal entry is 1 or heads an all-zero layer.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::{BoolMatrix, PermutationMatrix};

/// Output of [`diagonalize`]: `transformed == P·A·Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalizationResult {
    pub p: PermutationMatrix,
    pub q: PermutationMatrix,
    pub transformed: BoolMatrix,
}

fn layer_is_zero(a: &BoolMatrix, i: usize) -> bool {
    let n = a.rows();
    (i..n).all(|j| !a.get(i, j)) && (i + 1..n).all(|j| !a.get(j, i))
}

pub fn has_diagonal_property(a: &BoolMatrix) -> Result<bool> {
    let n = a.square_dim()?;
    Ok((0..n).all(|i| a.get(i, i) || layer_is_zero(a, i)))
}

/// Permutes rows and columns until the diagonal property holds.
///
/// Layers are processed in order. Within a layer the row segment is scanned
/// left to right first, then the column segment top to bottom; the first 1
/// found is moved onto the diagonal by a single column or row swap. Swaps
/// only touch lines `>= i`, so earlier layers keep their state.
pub fn diagonalize(a: &BoolMatrix) -> Result<DiagonalizationResult> {
    let n = a.square_dim()?;
    let mut b = a.clone();
    let mut p = PermutationMatrix::identity(n);
    let mut q = PermutationMatrix::identity(n);
    for i in 0..n {
        if b.get(i, i) {
            continue;
        }
        if let Some(j) = (i + 1..n).find(|&j| b.get(i, j)) {
            b.swap_cols(i, j);
            q.swap_right(i, j);
        } else if let Some(j) = (i + 1..n).find(|&j| b.get(j, i)) {
            b.swap_rows(i, j);
            p.swap_left(i, j);
        }
        debug_assert!(b.get(i, i) || layer_is_zero(&b, i));
    }
    Ok(DiagonalizationResult {
        p,
        q,
        transformed: b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::matrix::{apply_permutations, sum_entries};
    use proptest::prelude::*;

    #[test]
    fn property_examples() {
        assert!(has_diagonal_property(&BoolMatrix::identity(4)).unwrap());
        assert!(has_diagonal_property(&BoolMatrix::zeros(4, 4)).unwrap());
        let anti = BoolMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert!(!has_diagonal_property(&anti).unwrap());
        assert!(has_diagonal_property(&BoolMatrix::zeros(0, 0)).unwrap());
        assert!(matches!(
            has_diagonal_property(&BoolMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn identity_needs_no_swaps() {
        let r = diagonalize(&BoolMatrix::identity(5)).unwrap();
        assert!(r.p.is_identity() && r.q.is_identity());
        assert_eq!(r.transformed, BoolMatrix::identity(5));
    }

    #[test]
    fn single_off_diagonal_one() {
        let a = BoolMatrix::from_rows(&[[0, 1], [0, 0]]).unwrap();
        let r = diagonalize(&a).unwrap();
        assert!(r.p.is_identity());
        assert_eq!(r.q, PermutationMatrix::transposition(2, 0, 1));
        assert_eq!(r.transformed, BoolMatrix::from_rows(&[[1, 0], [0, 0]]).unwrap());
    }

    /// Every 2x2 matrix admits some permutation pair reaching the property;
    /// the procedure must find one.
    #[test]
    fn exhaustive_two_by_two() {
        let perms = [
            PermutationMatrix::identity(2),
            PermutationMatrix::transposition(2, 0, 1),
        ];
        for bits in 0u64..16 {
            let a = BoolMatrix::from_bits(2, 2, bits);
            let witness_exists = perms.iter().any(|p| {
                perms.iter().any(|q| {
                    has_diagonal_property(&apply_permutations(&a, p, q).unwrap()).unwrap()
                })
            });
            assert!(witness_exists);
            let r = diagonalize(&a).unwrap();
            assert!(has_diagonal_property(&r.transformed).unwrap());
        }
    }

    #[test]
    fn exhaustive_three_by_three() {
        for bits in 0u64..512 {
            let a = BoolMatrix::from_bits(3, 3, bits);
            let r = diagonalize(&a).unwrap();
            assert_eq!(r.transformed, apply_permutations(&a, &r.p, &r.q).unwrap());
            assert!(has_diagonal_property(&r.transformed).unwrap());
        }
    }

    proptest! {
        #[test]
        fn postcondition_holds(n in 0usize..9, bits in any::<u64>()) {
            let a = BoolMatrix::from_bits(n, n, bits);
            let r = diagonalize(&a).unwrap();
            prop_assert_eq!(&r.transformed, &apply_permutations(&a, &r.p, &r.q).unwrap());
            prop_assert!(has_diagonal_property(&r.transformed).unwrap());
            prop_assert_eq!(sum_entries(&r.transformed), sum_entries(&a));
        }

        /// After layer i is handled, no later swap disturbs layers <= i.
        #[test]
        fn layers_are_monotone(n in 1usize..9, bits in any::<u64>()) {
            let a = BoolMatrix::from_bits(n, n, bits);
            let r = diagonalize(&a).unwrap();
            let t = &r.transformed;
            // Replay the procedure one layer at a time and check every
            // finished layer after each step.
            let mut b = a.clone();
            for i in 0..n {
                if !b.get(i, i) {
                    if let Some(j) = (i + 1..n).find(|&j| b.get(i, j)) {
                        b.swap_cols(i, j);
                    } else if let Some(j) = (i + 1..n).find(|&j| b.get(j, i)) {
                        b.swap_rows(i, j);
                    }
                }
                for k in 0..=i {
                    prop_assert!(b.get(k, k) || layer_is_zero(&b, k));
                }
            }
            prop_assert_eq!(&b, t);
        }
    }
}
