use proptest::prelude::*;

use nerve_core::dimension::{
    dim_oracle, mu_driver, mu_driver_with, ostrand_refine, round_trip, search_c_refinement, search_c_refinement_with,
    verify_c_refinement, CRefinement, CViolation, Method, MuMode, SearchOutcome,
};
use nerve_core::exec::Strategy;
use nerve_core::fixtures::{self, random};
use nerve_core::{CoverElement, CoverSequence, Error};

fn random_cs(seed: u64, which: usize, level: usize) -> CoverSequence {
    let (_, space) = fixtures::spaces().swap_remove(which);
    random::cover_sequence(&mut random::rng(seed), &space, level, 3, 3)
}

#[test]
fn dimension_too_low() {
    let cs = fixtures::f_tri_stars();
    assert_eq!(dim_oracle(cs.space()), 2);
    assert_eq!(ostrand_refine(&cs, 1).unwrap_err(), Error::DimensionTooLow { n: 1, dim: 2 });
}

#[test]
fn one_family_never_suffices_on_an_edge() {
    let out = search_c_refinement(&fixtures::f_edge_stars(), 1, 2).unwrap();
    let SearchOutcome::Exhausted { max_level, audits } = &out else { panic!("found {out:?}") };
    assert_eq!(*max_level, 2);
    assert_eq!(audits.len(), 2);
    assert!(audits.iter().all(|a| a.fully_accounted() && !a.found));
}

#[test]
fn two_families_found_on_an_edge() {
    let cs = fixtures::f_edge_stars();
    let seq = search_c_refinement_with(&cs, 2, 2, Strategy::Sequential).unwrap();
    let par = search_c_refinement_with(&cs, 2, 2, Strategy::Parallel).unwrap();
    assert_eq!(seq, par);
    let SearchOutcome::Found { refinement, level, audits } = seq else { panic!("exhausted") };
    assert_eq!(level, 1);
    assert_eq!(audits.last().map(|a| a.found), Some(true));
    assert_eq!(verify_c_refinement(&refinement).unwrap(), None);
    assert!(round_trip(&cs, &refinement).unwrap().holds());
}

#[test]
fn verifier_reports_each_violation() {
    let cs = fixtures::f_edge_stars();
    let good = ostrand_refine(&cs, 1).unwrap();
    let mut families = good.families().to_vec();

    // Both level-2 neighbours of `a` in one family overlap.
    let merged: Vec<CoverElement> = families.concat();
    let r = CRefinement::new(vec![merged, Vec::new()], good.source().clone());
    assert!(matches!(verify_c_refinement(&r).unwrap(), Some(CViolation::Overlap { family: 0, .. })));

    families[0].pop();
    let r = CRefinement::new(families.clone(), good.source().clone());
    assert!(matches!(verify_c_refinement(&r).unwrap(), Some(CViolation::Uncovered { .. })));

    let whole = fixtures::whole_cover(cs.space(), 1).levels()[0].clone();
    let r = CRefinement::new(vec![whole, Vec::new()], good.source().clone());
    assert!(matches!(verify_c_refinement(&r).unwrap(), Some(CViolation::NotRefining { family: 0, .. })));

    let mut three = good.families().to_vec();
    three.push(good.families()[0].clone());
    let r = CRefinement::new(three, good.source().prefix(2).unwrap());
    assert!(matches!(verify_c_refinement(&r).unwrap(), Some(CViolation::MissingSourceLevel { family: 2, .. })));
}

#[test]
fn driver_modes() {
    let cs = fixtures::f_edge_stars();
    for mode in ["c", "finite-c", "dim:1", "dim:3"] {
        let mode: MuMode = mode.parse().unwrap();
        assert_eq!(mode.to_string().parse::<MuMode>(), Ok(mode));
        let report = mu_driver(&cs, mode, 2);
        assert!(report.success(), "{mode}: {report:?}");
        assert_eq!(report.round_trip.as_ref().map(|t| t.kappa), Some(2));
    }
    let report = mu_driver_with(&cs, MuMode::NPlusOne(0), 2, Strategy::Sequential);
    assert!(!report.success());
    assert!(report.round_trip.is_none());
    assert!(report.attempts.iter().all(|a| a.method == Method::Search && a.found_level.is_none()));
    assert!("dim:x".parse::<MuMode>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn colouring_verifies(seed in any::<u64>(), which in 0usize..3, level in 0usize..2, extra in 0usize..2) {
        let cs = random_cs(seed, which, level);
        let dim = dim_oracle(cs.space());
        let r = ostrand_refine(&cs, dim + extra).unwrap();
        prop_assert_eq!(r.kappa(), dim + extra + 1);
        prop_assert_eq!(verify_c_refinement(&r).unwrap(), None);
        // One family per barycenter dimension, one element per simplex.
        let f = cs.stage().complex().f_vector();
        prop_assert_eq!(&r.shape()[..f.len()], &f[..]);
        prop_assert!(r.shape()[f.len()..].iter().all(|n| *n == 0));
        // Padding with an empty family keeps every invariant.
        let padded = CRefinement::new(r.with_empty_family().families().to_vec(), cs.padded_to(r.kappa() + 1).unwrap());
        prop_assert_eq!(verify_c_refinement(&padded).unwrap(), None);
    }

    #[test]
    fn colouring_round_trips(seed in any::<u64>(), which in 0usize..3) {
        let cs = random_cs(seed, which, 0);
        let r = ostrand_refine(&cs, dim_oracle(cs.space())).unwrap();
        let t = round_trip(&cs, &r).unwrap();
        prop_assert!(t.holds());
        prop_assert_eq!(t.extracted.kappa(), r.kappa());
    }

    #[test]
    fn search_audits_are_complete(seed in any::<u64>(), which in prop::sample::select(vec![0usize, 2]), kappa in 1usize..3) {
        // Only the one-dimensional spaces keep the search small.
        let cs = random_cs(seed, which, 0);
        let seq = search_c_refinement_with(&cs, kappa, 1, Strategy::Sequential).unwrap();
        let par = search_c_refinement_with(&cs, kappa, 1, Strategy::Parallel).unwrap();
        prop_assert_eq!(&seq, &par);
        match &seq {
            SearchOutcome::Found { refinement, .. } => {
                prop_assert_eq!(verify_c_refinement(refinement).unwrap(), None);
            }
            SearchOutcome::Exhausted { audits, .. } => {
                prop_assert!(audits.iter().all(|a| a.fully_accounted()));
                prop_assert_eq!(kappa, 1);
            }
        }
    }
}
