//! The fixture corpus run as a table of named checks. Each row counts the
//! cases it ran and how many passed.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use nerve_core::cover::{delta_at_carrier, delta_subcomplex, nerve, unindexed_delta};
use nerve_core::dimension::{
    mu_driver, ostrand_refine, search_c_refinement, verify_c_refinement, MuMode, SearchOutcome,
};
use nerve_core::fixtures::{self, random};
use nerve_core::selection::{
    build_canonical, cone_extend, extend_skeletal_selection, is_canonical, is_selection, is_skeletal_selection,
    level_selection_violation, lift_vertex_selection, skeleton_violation, vertex_selection, vertex_selection_violation,
    CarrierMappingSequence,
};
use nerve_core::{Label, NerveKind, Simplex, SimplicialComplex};

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub check: &'static str,
    pub cases: usize,
    pub passed: usize,
}

impl Row {
    pub fn ok(&self) -> bool {
        self.cases > 0 && self.passed == self.cases
    }
}

struct Tally {
    check: &'static str,
    cases: usize,
    passed: usize,
}

impl Tally {
    fn new(check: &'static str) -> Self {
        Tally { check, cases: 0, passed: 0 }
    }

    /// Errors count as failures.
    fn record(&mut self, outcome: nerve_core::Result<bool>) {
        self.cases += 1;
        if matches!(outcome, Ok(true)) {
            self.passed += 1;
        }
    }

    fn row(self) -> Row {
        Row { check: self.check, cases: self.cases, passed: self.passed }
    }
}

fn l(s: &str) -> Label {
    Label::new(s)
}

fn disjoint_levels_nerve() -> Row {
    let mut t = Tally::new("one-per-level nerve equals the nerve for disjoint levels");
    let mut rng = random::rng(11);
    for (_, space) in fixtures::spaces() {
        for i in 0..10 {
            let cs = random::disjoint_sequence(&mut rng, &space, i % 3, 3);
            t.record((|| {
                let k = cs.num_levels();
                Ok(delta_subcomplex(&cs, k)?.complex == nerve(&cs, k)?.complex)
            })());
        }
    }
    t.row()
}

fn carrier_cones() -> Row {
    let mut t = Tally::new("carrier deltas grow by cones on new elements");
    let mut rng = random::rng(12);
    for (_, space) in fixtures::spaces() {
        for _ in 0..5 {
            let cs = random::cover_sequence(&mut rng, &space, 1, 3, 3);
            for tau in cs.stage().complex().iter() {
                for n in 0..cs.num_levels() - 1 {
                    t.record((|| {
                        let small = delta_at_carrier(&cs, n + 1, tau)?;
                        let big = delta_at_carrier(&cs, n + 2, tau)?;
                        Ok(cs
                            .meeting(n + 2, tau)
                            .into_iter()
                            .filter(|u| u.level == n + 1)
                            .all(|u| small.join_vertex(u).is_subcomplex_of(&big)))
                    })());
                }
            }
        }
    }
    t.row()
}

fn indexing_matters() -> Row {
    let mut t = Tally::new("indexed prefixes nest, unindexed ones do not");
    let cs = fixtures::f_rem();
    t.record((|| Ok(delta_subcomplex(&cs, 2)?.complex.is_subcomplex_of(&delta_subcomplex(&cs, 3)?.complex)))());
    t.record((|| {
        let pq = Simplex::new([l("P"), l("Q")]).expect("nonempty");
        Ok(unindexed_delta(&cs, 2)?.contains(&pq) && !unindexed_delta(&cs, 3)?.contains(&pq))
    })());
    t.row()
}

fn canonical_iff_selection() -> Row {
    let mut t = Tally::new("canonical maps are exactly the selections");
    let mut rng = random::rng(13);
    for (_, space) in fixtures::spaces() {
        for i in 0..20 {
            let cs = random::cover_sequence(&mut rng, &space, 1, 2, 3);
            let corrupt = if i % 2 == 0 { 0.0 } else { 0.3 };
            if let Some(f) = random::nerve_map(&mut rng, &cs, 2, corrupt, 20) {
                t.record((|| Ok(is_canonical(&f, &cs, 2)? == is_selection(&f, &cs, 2)?))());
            }
        }
        let cs = fixtures::vertex_star_sequence(&space, 2, 1);
        t.record((|| {
            let f = build_canonical(&cs, 2, NerveKind::FullNerve)?;
            Ok(is_canonical(&f, &cs, 2)? && is_selection(&f, &cs, 2)?)
        })());
    }
    t.row()
}

fn cone_extension() -> Row {
    let mut t = Tally::new("cone extension restricts to g and respects the chain");
    let mut rng = random::rng(14);
    for i in 0..30 {
        let inst = random::cone_instance(&mut rng, 1 + i % 2);
        t.record((|| {
            let h = cone_extend(&inst.g, inst.apex.clone(), inst.q.clone(), &inst.chain)?;
            let restricted = h.restrict(inst.g.source().clone())?;
            Ok(restricted.images() == inst.g.images() && skeleton_violation(&h, &inst.chain).is_none())
        })());
    }
    t.row()
}

fn skeletal_steps() -> Row {
    let mut t = Tally::new("vertex selection and three skeletal extension steps");
    for space in [fixtures::f_edge(), fixtures::f_tri()] {
        t.record((|| {
            let base = SimplicialComplex::validate([vec![l("y1")], vec![l("y2")], vec![l("q")]])?;
            let target = Arc::new(SimplicialComplex::validate([vec![l("y1"), l("y2"), l("q")]])?.join_vertex(l("z")));
            let mut phi = CarrierMappingSequence::constant_cones(space.clone(), 1, target, &base, l("q"), 1)?;
            for _ in 0..3 {
                phi = phi.extended_by_cone()?;
            }
            let sel = vertex_selection(&phi)?;
            if vertex_selection_violation(&sel, &phi)?.is_some() {
                return Ok(false);
            }
            let (mut cs, mut f) = lift_vertex_selection(&sel, &phi)?;
            let mut ok = is_skeletal_selection(&f, &cs, &phi)?;
            for _ in 0..3 {
                (cs, f) = extend_skeletal_selection(&f, &cs, &phi)?;
                ok &= is_skeletal_selection(&f, &cs, &phi)?;
            }
            for n in 0..cs.num_levels() {
                ok &= level_selection_violation(&f, &cs, &phi, n)?.is_none();
            }
            Ok(ok)
        })());
    }
    t.row()
}

fn colouring() -> Row {
    let mut t = Tally::new("barycentric colouring is a C-refinement");
    let mut rng = random::rng(15);
    for (_, space) in fixtures::spaces() {
        for _ in 0..5 {
            let cs = random::cover_sequence(&mut rng, &space, 1, 3, 3);
            t.record(ostrand_refine(&cs, space.dim()).and_then(|r| Ok(verify_c_refinement(&r)?.is_none())));
        }
    }
    t.row()
}

fn round_trip() -> Row {
    let mut t = Tally::new("round trip through a canonical map");
    for (cs, mode) in [
        (fixtures::f_tri_stars(), MuMode::NPlusOne(2)),
        (fixtures::f_rem(), MuMode::OmegaPlusOne),
        (fixtures::f_edge_stars(), MuMode::Omega),
    ] {
        t.record(Ok(mu_driver(&cs, mode, 2).success()));
    }
    t.row()
}

fn separation() -> Row {
    let mut t = Tally::new("two families fail on the triangle, three succeed");
    let tri = fixtures::f_tri_stars();
    t.record(search_c_refinement(&tri, 2, 2).map(|out| {
        matches!(&out, SearchOutcome::Exhausted { .. }) && out.audits().iter().all(|a| a.fully_accounted())
    }));
    t.record(search_c_refinement(&tri, 3, 2).map(|out| out.refinement().is_some()));
    t.record(
        search_c_refinement(&fixtures::f_edge_stars(), 2, 2)
            .map(|out| matches!(out, SearchOutcome::Found { level: 1, .. })),
    );
    t.row()
}

pub fn run() -> Vec<Row> {
    vec![
        disjoint_levels_nerve(),
        carrier_cones(),
        indexing_matters(),
        canonical_iff_selection(),
        cone_extension(),
        skeletal_steps(),
        colouring(),
        round_trip(),
        separation(),
    ]
}

pub fn table(rows: &[Row]) -> String {
    let width = rows.iter().map(|r| r.check.len()).max().unwrap_or(0);
    let mut out = format!("{:<width$}  {:>6}  {:>6}  result\n", "check", "cases", "passed");
    let mut counts = BTreeMap::new();
    for r in rows {
        let verdict = if r.ok() { "PASS" } else { "FAIL" };
        *counts.entry(verdict).or_insert(0) += 1;
        out.push_str(&format!("{:<width$}  {:>6}  {:>6}  {verdict}\n", r.check, r.cases, r.passed));
    }
    out.push_str(&format!(
        "{} passed, {} failed\n",
        counts.get("PASS").copied().unwrap_or(0),
        counts.get("FAIL").copied().unwrap_or(0)
    ));
    out
}
