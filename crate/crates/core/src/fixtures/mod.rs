//! The named fixture corpus and seeded random generators shared by the test
//! suites, the benches and the CLI `selftest`.
//!
//! - `F-EDGE`: the closed edge `{a,b}`.
//! - `F-TRI`: the full triangle on `{a,b,c}`.
//! - boundary of `F-TRI`: its three edges.
//! - `F-REM`: `F-EDGE` at level 1 with `P = stars{a,[a,b]}`,
//!   `Q = stars{[a,b],b}`, `P' = stars{a}`, `Q' = stars{b}` and levels
//!   `{P,Q'}`, `{P',Q}`, `{P,Q}`.

pub mod random;

use crate::complex::{PolyhedralSpace, SimplicialComplex};
use crate::cover::{CoverElement, CoverSequence};
use crate::label::Label;
use crate::realization::StarSet;

fn space(raw: &[&[&str]]) -> PolyhedralSpace {
    let c = SimplicialComplex::validate(raw.iter().map(|s| s.iter().map(Label::new))).expect("fixture complex");
    PolyhedralSpace::new(c).expect("fixture space")
}

pub fn f_edge() -> PolyhedralSpace {
    space(&[&["a", "b"]])
}

pub fn f_tri() -> PolyhedralSpace {
    space(&[&["a", "b", "c"]])
}

pub fn f_tri_boundary() -> PolyhedralSpace {
    space(&[&["a", "b"], &["a", "c"], &["b", "c"]])
}

fn stars(level: usize, core: &[&str]) -> StarSet {
    StarSet::new(level, core.iter().map(Label::new)).expect("fixture star-set")
}

pub fn f_rem() -> CoverSequence {
    let p = || CoverElement::new("P", stars(1, &["a", "[a,b]"]));
    let q = || CoverElement::new("Q", stars(1, &["[a,b]", "b"]));
    let p1 = CoverElement::new("P'", stars(1, &["a"]));
    let q1 = CoverElement::new("Q'", stars(1, &["b"]));
    CoverSequence::new(f_edge(), vec![vec![p(), q1], vec![p1, q()], vec![p(), q()]]).expect("F-REM fixture")
}

/// The open-star cover `{st(v) : v a base vertex}`, element `v` named `v`,
/// expressed at `level`.
pub fn vertex_star_family(space: &PolyhedralSpace, level: usize) -> Vec<CoverElement> {
    space
        .base()
        .vertices()
        .iter()
        .map(|v| {
            let st = StarSet::new(0, [v.clone()]).expect("nonempty");
            CoverElement::new(v.clone(), st.push(space, level).expect("within budget"))
        })
        .collect()
}

/// `copies` identical levels of the base vertex-star cover at `level`.
pub fn vertex_star_sequence(space: &PolyhedralSpace, copies: usize, level: usize) -> CoverSequence {
    let family = vertex_star_family(space, level);
    CoverSequence::new(space.clone(), vec![family; copies]).expect("star cover")
}

/// `F-TRI` with three copies of `{st(a),st(b),st(c)}`, stated at level 1.
pub fn f_tri_stars() -> CoverSequence {
    vertex_star_sequence(&f_tri(), 3, 1)
}

/// `F-EDGE` with two copies of `{st(a),st(b)}`, stated at level 1.
pub fn f_edge_stars() -> CoverSequence {
    vertex_star_sequence(&f_edge(), 2, 1)
}

/// The single-element cover `{whole}` repeated `copies` times.
pub fn whole_cover(space: &PolyhedralSpace, copies: usize) -> CoverSequence {
    let whole = CoverElement::new("whole", StarSet::whole(space, 0).expect("level 0"));
    CoverSequence::new(space.clone(), vec![vec![whole]; copies]).expect("whole cover")
}

/// Every fixture space, by name.
pub fn spaces() -> Vec<(&'static str, PolyhedralSpace)> {
    vec![("F-EDGE", f_edge()), ("F-TRI", f_tri()), ("boundary F-TRI", f_tri_boundary())]
}
