use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use nerve_core::cover::{delta_subcomplex, refinement_map};
use nerve_core::exec::Strategy;
use nerve_core::fixtures::{self, random};
use nerve_core::selection::{
    build_canonical, canonical_violation, cone_extend, extract_c_refinement, is_canonical, is_selection,
    selection_violation, selection_violation_with, skeleton_violation, transfer_selection, vertex_selection,
    vertex_selection_violation, CanonicalMap, CarrierMappingSequence,
};
use nerve_core::{CoverSequence, Error, Label, NerveKind, NerveVertex, SimplicialComplex};

fn l(s: &str) -> Label {
    Label::new(s)
}

fn complex(raw: &[&[&str]]) -> SimplicialComplex<Label> {
    SimplicialComplex::validate(raw.iter().map(|s| s.iter().map(|v| l(v)))).unwrap()
}

#[test]
fn f_rem_canonical_maps() {
    let cs = fixtures::f_rem();
    let f = build_canonical(&cs, 2, NerveKind::FullNerve).unwrap();
    assert!(is_canonical(&f, &cs, 2).unwrap());
    assert!(is_selection(&f, &cs, 2).unwrap());
    // Every stage vertex goes to the smallest (level, id) element holding it.
    assert_eq!(f.map.apply(&l("a")), Some(&NerveVertex::new("P", 0)));
    assert_eq!(f.map.apply(&l("b")), Some(&NerveVertex::new("Q'", 0)));
    // P and Q' share the open edge [[a,b],b], so no level is disjoint.
    assert!(matches!(build_canonical(&cs, 1, NerveKind::Delta), Err(Error::NotPairwiseDisjoint { .. })));
}

#[test]
fn corrupted_vertex_is_reported_both_ways() {
    let cs = fixtures::f_tri_stars();
    let f = build_canonical(&cs, 1, NerveKind::FullNerve).unwrap();
    let mut images = f.map.images().clone();
    images.insert(l("a"), NerveVertex::new("b", 0));
    let bad = CanonicalMap::new(&cs, 1, f.map.target().clone(), NerveKind::FullNerve, images).unwrap();
    assert_eq!(canonical_violation(&bad, &cs, 1).unwrap(), Some(NerveVertex::new("b", 0)));
    let tau = selection_violation(&bad, &cs, 1).unwrap().unwrap();
    assert!(tau.contains(&l("a")));
    assert!(matches!(extract_c_refinement(&bad, &cs, 1), Err(Error::NotCanonical(_))));
}

#[test]
fn non_simplicial_maps_rejected() {
    let cs = fixtures::f_rem();
    let f = build_canonical(&cs, 2, NerveKind::FullNerve).unwrap();
    let mut images = f.map.images().clone();
    // P' and Q' do not meet, so the edge {a,[a,b]} cannot go to both.
    images.insert(l("a"), NerveVertex::new("P'", 1));
    images.insert(l("[a,b]"), NerveVertex::new("Q'", 0));
    let err = CanonicalMap::new(&cs, 1, f.map.target().clone(), NerveKind::FullNerve, images).unwrap_err();
    assert!(matches!(err, Error::NotSimplicial(_)));
}

#[test]
fn carrier_tables_validate_and_extend() {
    let space = fixtures::f_edge();
    let target = Arc::new(complex(&[&["y1", "y2", "q"]]));
    let phi = CarrierMappingSequence::constant_cones(
        space.clone(),
        1,
        target.clone(),
        &complex(&[&["y1"], &["q"]]),
        l("q"),
        2,
    )
    .unwrap();
    assert_eq!(phi.len(), 2);
    let longer = phi.extended_by_cone().unwrap();
    assert_eq!(longer.len(), 3);
    let tau = nerve_core::Simplex::vertex(l("a"));
    assert!(longer.value(2, &tau).unwrap().contains(&nerve_core::Simplex::new([l("y1"), l("q")]).unwrap()));
    let sel = vertex_selection(&phi).unwrap();
    assert_eq!(vertex_selection_violation(&sel, &phi).unwrap(), None);
    assert!(matches!(
        CarrierMappingSequence::new(space, 1, target, vec![BTreeMap::new()], None),
        Err(Error::InvalidTable(_))
    ));
}

#[test]
fn cone_extend_on_a_triangle_boundary() {
    // g collapses the boundary of a triangle onto an edge; the cone fills it.
    let sigma = Arc::new(complex(&[&["a", "b"], &["b", "c"], &["a", "c"]]));
    let t = complex(&[&["y1", "y2", "q"]]);
    let images = BTreeMap::from([(l("a"), l("y1")), (l("b"), l("y2")), (l("c"), l("y1"))]);
    let g = nerve_core::SimplicialMap::new(sigma, Arc::new(t.clone()), images).unwrap();
    let s0 = complex(&[&["y1"], &["y2"], &["q"]]);
    let s1 = complex(&[&["y1", "y2"], &["y1", "q"], &["y2", "q"]]);
    let chain = [s0, s1, t];
    let h = cone_extend(&g, l("v"), l("q"), &chain).unwrap();
    assert_eq!(h.source().f_vector(), vec![4, 6, 3]);
    assert_eq!(skeleton_violation(&h, &chain), None);
    assert!(matches!(cone_extend(&g, l("a"), l("q"), &chain), Err(Error::VertexClash(_))));
    assert!(matches!(cone_extend(&g, l("v"), l("q"), &chain[..1]), Err(Error::ArityError(_))));
}

fn random_cs(seed: u64, which: usize) -> CoverSequence {
    let (_, space) = fixtures::spaces().swap_remove(which);
    random::cover_sequence(&mut random::rng(seed), &space, 1, 3, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn built_maps_are_canonical_selections(seed in any::<u64>(), which in 0usize..3, k in 1usize..=3) {
        let cs = random_cs(seed, which);
        let f = build_canonical(&cs, k, NerveKind::FullNerve).unwrap();
        prop_assert!(is_canonical(&f, &cs, k).unwrap());
        prop_assert!(is_selection(&f, &cs, k).unwrap());
        let r = extract_c_refinement(&f, &cs, k).unwrap();
        prop_assert!(r.kappa() <= k);
        // Extracted elements are the preimages: each lies in its source element.
        for (n, fam) in r.families().iter().enumerate() {
            for e in fam {
                prop_assert!(e.star.core().is_subset(cs.core(&NerveVertex::new(e.id.clone(), n)).unwrap()));
            }
        }
    }

    #[test]
    fn predicates_agree_under_corruption(seed in any::<u64>(), which in 0usize..3, corrupt in 0u8..4) {
        let cs = random_cs(seed, which);
        let mut rng = random::rng(seed);
        if let Some(f) = random::nerve_map(&mut rng, &cs, 3, f64::from(corrupt) / 5.0, 20) {
            prop_assert_eq!(is_canonical(&f, &cs, 3).unwrap(), is_selection(&f, &cs, 3).unwrap());
            prop_assert_eq!(
                selection_violation_with(&f, &cs, 3, Strategy::Sequential).unwrap(),
                selection_violation_with(&f, &cs, 3, Strategy::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn transfer_along_a_disjoint_refinement(seed in any::<u64>(), which in 0usize..3) {
        // The disjoint sequence refines the whole cover level by level.
        let (_, space) = fixtures::spaces().swap_remove(which);
        let mut rng = random::rng(seed);
        let fine = random::disjoint_sequence(&mut rng, &space, 1, 3);
        let coarse = fixtures::whole_cover(&space, fine.num_levels());
        let k = fine.num_levels();
        let h = build_canonical(&fine, k, NerveKind::Delta).unwrap();
        let r = refinement_map(&fine, &coarse, k, NerveKind::Delta).unwrap();
        let f = transfer_selection(&h, &r).unwrap();
        prop_assert!(is_canonical(&f, &coarse, k).unwrap());
        prop_assert_eq!(f.map.target(), &delta_subcomplex(&coarse, k).unwrap().complex);
    }

    #[test]
    fn cone_extension_properties(seed in any::<u64>(), n in 1usize..3) {
        let inst = random::cone_instance(&mut random::rng(seed), n);
        let h = cone_extend(&inst.g, inst.apex.clone(), inst.q.clone(), &inst.chain).unwrap();
        let restricted = h.restrict(inst.g.source().clone()).unwrap();
        prop_assert_eq!(restricted.images(), inst.g.images());
        prop_assert_eq!(skeleton_violation(&h, &inst.chain), None);
        prop_assert_eq!(h.source().len(), 2 * inst.g.source().len() + 1);
        // Without q in S_0 the witness fails.
        let mut chain = inst.chain.clone();
        chain[0] = chain[0].delete_vertex(&inst.q);
        if !chain[0].is_empty() && inst.g.images().values().all(|y| *y != inst.q) {
            prop_assert!(matches!(cone_extend(&inst.g, inst.apex.clone(), inst.q.clone(), &chain), Err(Error::WitnessFailure(_))));
        }
    }
}
