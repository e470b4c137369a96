use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use stp_core::homalg::{
    betti_mod_p, homology, is_quasi_iso, mapping_cone, smith_normal_form, sparse_invariants, universal_coefficients, AbGroup,
    ChainComplex, ChainMap, IntMatrix, SparseMatrix,
};

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::from_entries(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

/// `C_2 -> C_1 -> C_0` with `d_1 = a` and `d_2 = k b` for an integer kernel
/// basis `k` of `a`, so `d_1 d_2 = 0` by construction.
fn complex() -> impl Strategy<Value = ChainComplex> {
    (matrix(4, 5, 4), 1..4usize, -3i64..=3).prop_map(|(a, extra, scale)| {
        let k = stp_core::homalg::integer_kernel(&a);
        let cols: Vec<BigInt> = (0..k.cols() * extra)
            .map(|i| BigInt::from((i as i64 % 3 - 1) * scale + (i as i64 % 2)))
            .collect();
        let b = IntMatrix::from_entries(k.cols(), extra, cols);
        let d2 = k.mul(&b);
        ChainComplex::new(vec![a.rows(), a.cols(), extra], vec![a.to_sparse(), d2.to_sparse()], AbGroup::integers()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariant_factors_divide(m in matrix(6, 6, 9)) {
        let d = smith_normal_form(&m).diagonal();
        for w in d.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]), "{:?}", d);
        }
        prop_assert!(d.iter().all(|x| !x.is_zero()));
    }

    #[test]
    fn transpose_has_the_same_invariants(m in matrix(5, 5, 9)) {
        let abs = |v: Vec<BigInt>| v.into_iter().map(|x| x.abs()).collect::<Vec<_>>();
        prop_assert_eq!(abs(smith_normal_form(&m).diagonal()), abs(smith_normal_form(&m.transpose()).diagonal()));
    }

    #[test]
    fn sparse_elimination_matches_dense(m in matrix(6, 6, 50)) {
        let dense: Vec<BigInt> = smith_normal_form(&m).diagonal().into_iter().map(|x| x.abs()).filter(|x| !x.is_one()).collect();
        let sparse = sparse_invariants(&m.to_sparse());
        prop_assert_eq!(sparse.rank, smith_normal_form(&m).rank());
        prop_assert_eq!(sparse.torsion, dense);
    }

    #[test]
    fn complexes_satisfy_uct(c in complex(), p in prop::sample::select(vec![2u64, 3, 5])) {
        c.check_square_zero().unwrap();
        let integral = c.integral_homology(1).unwrap();
        let direct = betti_mod_p(&c, p, 1).unwrap();
        let via_uct: Vec<usize> = universal_coefficients(&integral, &AbGroup::cyclic(p)).iter().map(|g| g.torsion().len()).collect();
        prop_assert_eq!(direct, via_uct);
        let euler: i64 = integral.iter().enumerate().map(|(i, g)| (-1i64).pow(i as u32) * g.rank() as i64).sum();
        // the top group is read off a complex cut at degree 2
        let h2 = c.clone().padded(3).integral_homology(2).unwrap()[2].rank() as i64;
        prop_assert_eq!(euler + h2, c.euler_characteristic(2));
    }

    #[test]
    fn identity_is_a_quasi_iso_and_zero_detects_homology(c in complex()) {
        let c = c.padded(3);
        prop_assert!(is_quasi_iso(&ChainMap::identity(&c), &c, &c, 2).unwrap().is_quasi_iso);
        let zero = ChainMap::zero(&c, &c);
        let acyclic = c.integral_homology(2).unwrap().iter().all(AbGroup::is_zero);
        prop_assert_eq!(is_quasi_iso(&zero, &c, &c, 2).unwrap().is_quasi_iso, acyclic);
        let cone = mapping_cone(&ChainMap::identity(&c), &c, &c).unwrap();
        prop_assert!(cone.integral_homology(2).unwrap().iter().all(AbGroup::is_zero));
    }
}

#[test]
fn coefficients_by_direct_sum() {
    // integral homology Z, Z/3
    let mut d1 = SparseMatrix::zeros(1, 0);
    d1.push_column(vec![]);
    let d2 = IntMatrix::from_rows(&[[3]]).to_sparse();
    let c = ChainComplex::new(vec![1, 1, 1], vec![d1, d2], AbGroup::integers()).unwrap();
    let z3 = AbGroup::cyclic(3);
    let sum = AbGroup::integers().direct_sum(&AbGroup::cyclic(2));
    assert_eq!(homology(&c, &z3, 1).unwrap(), vec![z3.clone(), z3.clone()]);
    assert_eq!(homology(&c, &sum, 1).unwrap(), vec![sum.clone(), z3.clone()]);
    assert_eq!(homology(&c, &AbGroup::cyclic(2), 1).unwrap(), vec![AbGroup::cyclic(2), AbGroup::zero()]);
}
