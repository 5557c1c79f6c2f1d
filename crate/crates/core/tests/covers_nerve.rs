use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::Rng;

use nerve_core::cover::{
    delta_at_carrier, delta_subcomplex, delta_subcomplex_with, is_one_per_level, kernel_query, nerve, nerve_at_carrier,
    nerve_with, refinement_assignment, refinement_map,
};
use nerve_core::exec::Strategy;
use nerve_core::fixtures::{self, random};
use nerve_core::{CoverElement, CoverSequence, Error, Kappa, NerveKind, NerveVertex, StarSet};

fn nv(id: &str, level: usize) -> NerveVertex {
    NerveVertex::new(id, level)
}

fn sequence(seed: u64, which: usize, level: usize, levels: usize) -> CoverSequence {
    let (_, space) = fixtures::spaces().swap_remove(which);
    random::cover_sequence(&mut random::rng(seed), &space, level, levels, 3)
}

/// Splits every coarse element into the singleton stars of its core
/// vertices. Later levels drop some vertices; the first keeps them all so
/// the sequence still covers.
fn singleton_refinement(cs: &CoverSequence, rng: &mut impl Rng) -> CoverSequence {
    let level = cs.working_level();
    let levels = cs
        .levels()
        .iter()
        .enumerate()
        .map(|(n, fam)| {
            let verts: BTreeSet<_> = fam.iter().flat_map(|e| e.star.core().iter().cloned()).collect();
            verts
                .into_iter()
                .filter(|_| n == 0 || rng.random_bool(0.8))
                .enumerate()
                .map(|(i, v)| CoverElement::new(format!("F{n}_{i}"), StarSet::new(level, [v]).unwrap()))
                .collect::<Vec<_>>()
        })
        .map(|fam| if fam.is_empty() { vec![cs.levels()[0][0].clone()] } else { fam })
        .collect();
    CoverSequence::at_working_level(cs.space().clone(), level, levels).unwrap()
}

#[test]
fn f_rem_nerves() {
    let cs = fixtures::f_rem();
    let d = delta_subcomplex(&cs, 2).unwrap();
    assert_eq!(d.complex.f_vector(), vec![4, 3]);
    assert!(d.complex.contains(&nerve_core::Simplex::new([nv("P", 0), nv("Q", 1)]).unwrap()));
    // P' and Q' are disjoint single stars, so they never share a simplex.
    let full = nerve(&cs, Kappa::Omega).unwrap();
    assert!(!full.complex.contains(&nerve_core::Simplex::new([nv("P'", 1), nv("Q'", 0)]).unwrap()));
    assert_eq!(full.kappa, 3);
}

#[test]
fn prefix_errors() {
    let cs = fixtures::f_rem();
    assert_eq!(nerve(&cs, 0).unwrap_err(), Error::EmptyPrefix);
    assert_eq!(delta_subcomplex(&cs, 4).unwrap_err(), Error::TooFewLevels { kappa: 4, levels: 3 });
    let foreign = nerve_core::Simplex::new([nerve_core::Label::new("zz")]).unwrap();
    assert!(matches!(delta_at_carrier(&cs, 1, &foreign), Err(Error::UnknownCarrier(_))));
}

#[test]
fn kernel_query_witness() {
    let cs = fixtures::f_rem();
    let w = kernel_query(&cs, &[nv("P", 0), nv("Q", 1)]).unwrap().unwrap();
    assert!(w.contains(&nerve_core::Label::new("[a,b]")));
    assert_eq!(kernel_query(&cs, &[nv("P'", 1), nv("Q'", 0)]).unwrap(), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn delta_is_the_one_per_level_part_of_the_nerve(seed in any::<u64>(), which in 0usize..3, level in 0usize..2) {
        let cs = sequence(seed, which, level, 3);
        for k in 1..=3 {
            let n = nerve(&cs, k).unwrap();
            let d = delta_subcomplex(&cs, k).unwrap();
            prop_assert!(n.complex.is_face_closed());
            prop_assert!(is_one_per_level(&d.complex));
            let expected: BTreeSet<_> = n
                .complex
                .iter()
                .filter(|s| s.iter().map(|v| v.level).collect::<BTreeSet<_>>().len() == s.card())
                .cloned()
                .collect();
            prop_assert_eq!(d.complex.simplices(), &expected);
            if k > 1 {
                prop_assert!(nerve(&cs, k - 1).unwrap().complex.is_subcomplex_of(&n.complex));
                prop_assert!(delta_subcomplex(&cs, k - 1).unwrap().complex.is_subcomplex_of(&d.complex));
            }
            for s in n.complex.iter() {
                let w = kernel_query(&cs, s.vertices()).unwrap();
                prop_assert!(w.is_some());
                let w = w.unwrap();
                prop_assert!(s.iter().all(|v| w.meets(cs.core(v).unwrap())));
            }
        }
    }

    #[test]
    fn strategies_agree(seed in any::<u64>(), which in 0usize..3) {
        let cs = sequence(seed, which, 1, 3);
        prop_assert_eq!(
            nerve_with(&cs, 3, Strategy::Sequential).unwrap(),
            nerve_with(&cs, 3, Strategy::Parallel).unwrap()
        );
        prop_assert_eq!(
            delta_subcomplex_with(&cs, 3, Strategy::Sequential).unwrap(),
            delta_subcomplex_with(&cs, 3, Strategy::Parallel).unwrap()
        );
    }

    #[test]
    fn carrier_complexes_sit_in_the_nerves(seed in any::<u64>(), which in 0usize..3) {
        let cs = sequence(seed, which, 1, 2);
        let d = delta_subcomplex(&cs, 2).unwrap();
        let n = nerve(&cs, 2).unwrap();
        for tau in cs.stage().complex().iter() {
            let dc = delta_at_carrier(&cs, 2, tau).unwrap();
            let nc = nerve_at_carrier(&cs, 2, tau).unwrap();
            prop_assert!(dc.is_subcomplex_of(&d.complex));
            prop_assert!(nc.is_subcomplex_of(&n.complex));
            prop_assert!(dc.is_subcomplex_of(&nc));
            // Every point has somewhere to go: each level covers.
            prop_assert!(!dc.is_empty());
        }
    }

    #[test]
    fn refinement_maps_are_simplicial_and_level_preserving(seed in any::<u64>(), which in 0usize..3) {
        let cs = sequence(seed, which, 1, 2);
        let mut rng = random::rng(seed ^ 0x5eed);
        let fine = singleton_refinement(&cs, &mut rng);
        let assign = refinement_assignment(&fine, &cs, 2).unwrap();
        for (v, u) in &assign {
            prop_assert_eq!(v.level, u.level);
            prop_assert!(fine.core(v).unwrap().is_subset(cs.core(u).unwrap()));
        }
        for kind in [NerveKind::Delta, NerveKind::FullNerve] {
            let r = refinement_map(&fine, &cs, 2, kind).unwrap();
            prop_assert!(r.check().unwrap());
        }
        // The other direction is not a refinement unless cores are singletons.
        if cs.levels().iter().flatten().any(|e| e.star.core().len() > 1) {
            prop_assert!(refinement_assignment(&cs, &fine, 2).is_err());
        }
    }
}
