mod common;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use divclass::linalg::{
    cokernel_invariants, hermite_basis, integer_kernel_basis, smith_normal_form, solve_integer, IntMatrix,
};

use common::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-bound..=bound, c), r))
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

proptest! {
    #[test]
    fn smith_form_is_a_valid_diagonalization(a in matrix(5, 9)) {
        let m = to_bigint_matrix(&a);
        let snf = smith_normal_form(&m);
        let uav = snf.left.checked_mul(&m).unwrap().checked_mul(&snf.right).unwrap();
        prop_assert_eq!(&uav, &snf.diagonal);
        prop_assert!(is_unit(&snf.left.determinant().unwrap()));
        prop_assert!(is_unit(&snf.right.determinant().unwrap()));
        let nz = nonzero(&snf.diagonal_entries());
        for w in nz.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        let minors: Vec<BigInt> = invariant_factors_by_minors(&a).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(minors, nz);
    }

    #[test]
    fn smith_form_of_transpose_has_same_invariants(a in matrix(4, 9)) {
        let m = to_bigint_matrix(&a);
        let d1 = nonzero(&smith_normal_form(&m).diagonal_entries());
        let d2 = nonzero(&smith_normal_form(&m.transpose()).diagonal_entries());
        prop_assert_eq!(d1, d2);
    }

    #[test]
    fn kernel_basis_is_saturated(a in matrix(4, 5)) {
        let m = to_bigint_matrix(&a);
        let k = integer_kernel_basis(&m);
        prop_assert_eq!(k.rows(), m.cols());
        prop_assert_eq!(k.cols(), m.cols() - m.rank());
        if k.cols() > 0 {
            prop_assert!(m.checked_mul(&k).unwrap().is_zero());
            let coker = cokernel_invariants(&k);
            prop_assert!(coker.invariant_factors.is_empty());
        }
    }

    #[test]
    fn solve_recovers_a_preimage(a in matrix(4, 6), seed in prop::collection::vec(-5i64..=5, 4)) {
        let m = to_bigint_matrix(&a);
        let x = big(&seed[..m.cols()]);
        let b = m.mul_vec(&x).unwrap();
        let y = solve_integer(&m, &b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn hermite_basis_spans_the_same_lattice(a in matrix(4, 6)) {
        let m = to_bigint_matrix(&a);
        let h = hermite_basis(&m);
        prop_assert_eq!(h.cols(), m.rank());
        prop_assert_eq!(hermite_basis(&h), h.clone());
        for c in 0..m.cols() {
            prop_assert!(solve_integer(&h, &m.column(c)).is_some());
        }
        for c in 0..h.cols() {
            prop_assert!(solve_integer(&m, &h.column(c)).is_some());
        }
    }

    #[test]
    fn determinant_matches_cofactor_expansion(n in 1usize..=5, entries in prop::collection::vec(-9i64..=9, 25)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|r| entries[r * n..(r + 1) * n].to_vec()).collect();
        let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let det = to_bigint_matrix(&rows).determinant().unwrap();
        prop_assert_eq!(det, BigInt::from(det_i128(&wide)));
    }
}

#[test]
fn classic_cokernels() {
    let m = IntMatrix::from_rows(2, &[[2, 4], [6, 8]]);
    let c = cokernel_invariants(&m);
    assert_eq!(c.free_rank, 0);
    assert_eq!(c.invariant_factors, big(&[2, 4]));

    let m = IntMatrix::from_rows(3, &[[2, 0, 0], [0, 3, 0]]);
    let c = cokernel_invariants(&m);
    assert_eq!(c.free_rank, 0);
    assert_eq!(c.invariant_factors, big(&[6]));

    let m = IntMatrix::from_rows(1, &[[0], [5]]);
    let c = cokernel_invariants(&m);
    assert_eq!(c.free_rank, 1);
    assert_eq!(c.invariant_factors, big(&[5]));
}

#[test]
fn brute_force_oracle_agrees_on_known_groups() {
    assert_eq!(brute_force_cokernel_order(&[vec![2, 0], vec![0, 3]], 1000), Some(6));
    assert_eq!(brute_force_cokernel_order(&[vec![4, 2], vec![2, 4]], 1000), Some(12));
    assert_eq!(brute_force_cokernel_order(&[vec![1, 2, 3]], 1000), Some(1));
    assert_eq!(brute_force_cokernel_order(&[vec![1, 1], vec![1, 1]], 1000), None);
}
