use proptest::prelude::*;

use stp_core::complexes::{library, reduced_chains, Simplex, SimplicialComplex};
use stp_core::hocolim::{
    disk_poset, h0_diagram, kan_extension_check, restriction_invariance, simplicial_replacement, space_hocolim_chains,
    svk_check, FiniteCategory, SpaceDiagram,
};
use stp_core::homalg::{homology, AbGroup};

fn reduced(k: &SimplicialComplex, a: &AbGroup, max_degree: usize) -> Vec<AbGroup> {
    let top = max_degree + 1;
    homology(&reduced_chains(k).padded(top).truncated(top), a, max_degree).unwrap()
}

/// Distinct subcomplexes of `ambient`, each generated by a random choice
/// of maximal simplices plus the basepoint, ordered by inclusion.
fn inclusion_diagram(ambient: &SimplicialComplex, choices: &[Vec<bool>], with_whole: bool) -> SpaceDiagram {
    let maximal = ambient.maximal_simplices();
    let mut values: Vec<SimplicialComplex> = Vec::new();
    for choice in choices {
        let gens = maximal
            .iter()
            .zip(choice)
            .filter(|(_, &keep)| keep)
            .map(|(s, _)| s.clone())
            .chain([Simplex::vertex(ambient.basepoint())]);
        let u = ambient.subcomplex(gens).unwrap();
        if !values.contains(&u) {
            values.push(u);
        }
    }
    if with_whole && !values.contains(ambient) {
        values.push(ambient.clone());
    }
    let names = (0..values.len()).map(|i| format!("U{i}")).collect();
    let shape = FiniteCategory::poset(names, |a, b| values[a].is_subcomplex_of(&values[b])).unwrap();
    SpaceDiagram::new(ambient.clone(), shape, values).unwrap()
}

fn choices(ambient: &SimplicialComplex) -> impl Strategy<Value = Vec<Vec<bool>>> {
    let n = ambient.maximal_simplices().len();
    proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn terminal_object_computes_the_colimit(c in choices(&library::circle6())) {
        let ambient = library::circle6();
        let d = inclusion_diagram(&ambient, &c, true);
        prop_assert!(d.shape().terminal_object().is_some());
        let z = AbGroup::integers();
        let h = homology(&space_hocolim_chains(&d, &z, 2).unwrap(), &z, 2).unwrap();
        prop_assert_eq!(h, reduced(&ambient, &z, 2));
    }

    #[test]
    fn truncation_does_not_change_lower_degrees(c in choices(&library::wedge_circles(2))) {
        let d = inclusion_diagram(&library::wedge_circles(2), &c, false);
        let a = AbGroup::cyclic(2);
        let low = homology(&space_hocolim_chains(&d, &a, 1).unwrap(), &a, 1).unwrap();
        let high = homology(&space_hocolim_chains(&d, &a, 2).unwrap(), &a, 2).unwrap();
        prop_assert_eq!(&low[..], &high[..2]);
    }

    #[test]
    fn certified_covers_compute_the_union(c in choices(&library::circle6())) {
        // a certified cover of its own union computes the union
        let ambient = library::circle6();
        let d = inclusion_diagram(&ambient, &c, false);
        let union = ambient.subcomplex(d.values().iter().flat_map(|u| u.iter().cloned()).collect::<Vec<_>>()).unwrap();
        let restricted = SpaceDiagram::new(union.clone(), d.shape().clone(), d.values().to_vec()).unwrap();
        if svk_check(&restricted).all_certified() {
            let z = AbGroup::integers();
            let h = homology(&space_hocolim_chains(&restricted, &z, 2).unwrap(), &z, 2).unwrap();
            prop_assert_eq!(h, reduced(&union, &z, 2));
        }
    }
}

#[test]
fn library_disk_covers_are_certified_and_sound() {
    for name in ["circle3", "circle6", "wedge_circles(2)"] {
        let m = library::by_name(name).unwrap();
        let poset = disk_poset(&m, 2).unwrap();
        let report = svk_check(&poset.diagram);
        assert!(report.all_certified(), "{name}: {:?}", report.first_refuted());
        for a in [AbGroup::integers(), AbGroup::cyclic(3)] {
            let expected = reduced(&m, &a, 1);
            let space = homology(&space_hocolim_chains(&poset.diagram, &a, 1).unwrap(), &a, 1).unwrap();
            let h0 = homology(&simplicial_replacement(&h0_diagram(&poset.diagram, &a).unwrap(), 1).unwrap(), &a, 1).unwrap();
            assert_eq!(space, expected, "{name} with {a}");
            assert_eq!(h0, expected, "{name} with {a}");
        }
    }
}

#[test]
fn two_arcs_are_not_a_good_cover() {
    // two arcs of the hexagon meeting in two separate vertices
    let m = library::circle6();
    let d = inclusion_diagram(&m, &[vec![true, true, true, false, false, false], vec![false, false, false, true, true, true]], false);
    let report = svk_check(&d);
    assert!(report.refuted > 0);
    // without the intersection the loop is lost
    let z = AbGroup::integers();
    let h = homology(&space_hocolim_chains(&d, &z, 1).unwrap(), &z, 1).unwrap();
    assert_ne!(h, reduced(&m, &z, 1));
}

#[test]
fn kan_extension_with_odd_torsion() {
    let r = kan_extension_check(3, &AbGroup::cyclic(3), 2).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.star_homology[0], AbGroup::cyclic(3).power(2));
}

#[test]
fn restriction_on_a_wedge() {
    let r = restriction_invariance(&library::wedge_circles(2), &AbGroup::integers(), &[2, 3], 1).unwrap();
    assert!(r.agree, "{r:?}");
    assert_eq!(r.levels[0].homology, vec![AbGroup::zero(), AbGroup::free(2)]);
}

#[test]
fn three_pipelines_agree_on_library_spaces() {
    for (name, a) in [("circle6", AbGroup::integers()), ("rp2_6", AbGroup::cyclic(2)), ("wedge_circles(2)", AbGroup::cyclic(3))] {
        let m = library::by_name(name).unwrap();
        let r = stp_core::hocolim::dold_thom_verify(&m, &a, 2).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.agreements);
        assert_eq!(r.homology, reduced(&m, &a, 2));
    }
}
