use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use stp_core::complexes::{library, product, quotient_by_group, to_simplicial_set, SimplicialAutomorphism, SimplicialSet};
use stp_core::homalg::AbGroup;
use stp_core::symprod::{normalize, pushforward, stabilization_map, symmetric_power, Configuration, PointedMap, PointedSet, SymGroup};

/// `X^3` as `(X x X) x X` with the six coordinate permutations.
fn cube_with_permutations(x: &SimplicialSet, bound: usize) -> (SimplicialSet, Vec<SimplicialAutomorphism>) {
    let cube = product(&product(x, x, bound).unwrap(), x, bound).unwrap();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let group = perms
        .iter()
        .map(|p| {
            let levels = (0..=bound)
                .map(|k| {
                    let n = x.count(k);
                    (0..n * n * n)
                        .map(|i| {
                            let t = [i / (n * n), (i / n) % n, i % n];
                            ((t[p[0]] * n + t[p[1]]) * n + t[p[2]]) as u32
                        })
                        .collect()
                })
                .collect();
            SimplicialAutomorphism::new(levels, &cube).unwrap()
        })
        .collect();
    (cube, group)
}

#[test]
fn cube_power_is_the_orbit_quotient() {
    for (name, bound) in [("circle3", 3), ("sphere_min", 2)] {
        let x = to_simplicial_set(&library::by_name(name).unwrap(), bound);
        let (cube, group) = cube_with_permutations(&x, bound);
        let quotient = quotient_by_group(&cube, &group, bound).unwrap();
        let sp = symmetric_power(&x, 3, bound).unwrap();
        // least representatives are the sorted triples, so the sets coincide
        assert_eq!(quotient, *sp.set(), "{name}");
    }
}

#[test]
fn stabilization_maps_compose() {
    let x = to_simplicial_set(&library::circle3(), 2);
    let powers: Vec<_> = (1..=3).map(|d| symmetric_power(&x, d, 2).unwrap()).collect();
    let one_two = stabilization_map(&x, &powers[0], &powers[1]).unwrap();
    let two_three = stabilization_map(&x, &powers[1], &powers[2]).unwrap();
    assert_eq!(one_two.then(&two_three), stabilization_map(&x, &powers[0], &powers[2]).unwrap());
}

fn coefficients() -> impl Strategy<Value = AbGroup> {
    prop::sample::select(vec![AbGroup::cyclic(2), AbGroup::cyclic(3), AbGroup::cyclic(4), AbGroup::integers()])
}

fn configuration(carrier: PointedSet, a: AbGroup) -> impl Strategy<Value = Configuration> {
    proptest::collection::vec(-5i64..=5, carrier.size).prop_map(move |v| {
        let support: BTreeSet<usize> = (0..carrier.size).collect();
        let labels: BTreeMap<usize, Vec<i64>> = v.into_iter().enumerate().map(|(p, x)| (p, vec![x])).collect();
        normalize(carrier, &support, &labels, &a).unwrap()
    })
}

/// A pointed map between `I_+` sets.
fn pointed_map(source: usize, target: usize) -> impl Strategy<Value = PointedMap> {
    proptest::collection::vec(0..=target, source).prop_map(move |images| {
        let map = std::iter::once(0).chain(images).collect();
        PointedMap::new(PointedSet::plus(source), PointedSet::plus(target), map).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pushforward_is_a_functor_of_groups(
        (a, c, d, f, g) in coefficients().prop_flat_map(|a| {
            let s = PointedSet::plus(4);
            (Just(a.clone()), configuration(s, a.clone()), configuration(s, a), pointed_map(4, 3), pointed_map(3, 2))
        })
    ) {
        let group = SymGroup::new(PointedSet::plus(4), a.clone());
        let target = SymGroup::new(PointedSet::plus(3), a.clone());
        let push = |m: &PointedMap, x: &Configuration| pushforward(m, x, &a).unwrap();
        prop_assert_eq!(push(&f, &group.add(&c, &d)), target.add(&push(&f, &c), &push(&f, &d)));
        prop_assert_eq!(push(&f, &group.negate(&c)), target.negate(&push(&f, &c)));
        prop_assert_eq!(push(&f.then(&g), &c), push(&g, &push(&f, &c)));
        prop_assert_eq!(push(&PointedMap::identity(PointedSet::plus(4)), &c), c.clone());
        // the support only shrinks along the map
        let image: BTreeSet<usize> = c.support().iter().map(|&p| f.map[p]).collect();
        prop_assert!(push(&f, &c).support().is_subset(&image));
    }
}
