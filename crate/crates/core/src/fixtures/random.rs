//! Seeded generators for randomized suites. All generators are deterministic
//! given the RNG state.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::sync::Arc;

use crate::complex::{PolyhedralSpace, Simplex, SimplicialComplex, SimplicialMap};
use crate::cover::{nerve, CoverElement, CoverSequence, NerveKind, NerveVertex};
use crate::label::Label;
use crate::realization::StarSet;
use crate::selection::CanonicalMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected components of the subgraph of the stage 1-skeleton induced by
/// `verts`.
pub fn components(space: &PolyhedralSpace, level: usize, verts: &BTreeSet<Label>) -> Vec<BTreeSet<Label>> {
    let stage = space.stage(level).expect("within budget");
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in verts {
        if seen.contains(start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![start.clone()];
        while let Some(v) = stack.pop() {
            if !seen.insert(v.clone()) {
                continue;
            }
            comp.insert(v.clone());
            for w in stage.neighbors(&v).into_iter().flatten() {
                if verts.contains(w) && !seen.contains(w) {
                    stack.push(w.clone());
                }
            }
        }
        out.push(comp);
    }
    out
}

/// A cover sequence whose levels are each pairwise-disjoint and which covers
/// jointly: every stage vertex is dealt to one level, each level's vertices
/// split into connected components, and random components are merged.
pub fn disjoint_sequence(
    rng: &mut impl Rng,
    space: &PolyhedralSpace,
    level: usize,
    max_levels: usize,
) -> CoverSequence {
    let stage = space.stage(level).expect("within budget");
    let n_levels = rng.random_range(1..=max_levels);
    let mut dealt: Vec<BTreeSet<Label>> = vec![BTreeSet::new(); n_levels];
    for v in stage.complex().vertices() {
        dealt[rng.random_range(0..n_levels)].insert(v.clone());
    }
    let levels = dealt
        .iter()
        .enumerate()
        .map(|(n, verts)| {
            let mut comps = components(space, level, verts);
            // Merging components keeps the family pairwise-disjoint.
            while comps.len() > 1 && rng.random_bool(0.3) {
                let last = comps.pop().expect("nonempty");
                let i = rng.random_range(0..comps.len());
                comps[i].extend(last);
            }
            comps
                .into_iter()
                .enumerate()
                .map(|(i, core)| CoverElement::new(format!("E{n}_{i}"), StarSet::new(level, core).expect("nonempty")))
                .collect()
        })
        .collect();
    CoverSequence::new(space.clone(), levels).expect("generated sequence covers")
}

/// A random cover of the stage at `level` with up to `max_elements`
/// elements; every vertex lies in at least one element.
pub fn random_family(
    rng: &mut impl Rng,
    space: &PolyhedralSpace,
    level: usize,
    max_elements: usize,
    prefix: &str,
) -> Vec<CoverElement> {
    let stage = space.stage(level).expect("within budget");
    let verts: Vec<&Label> = stage.complex().vertices().iter().collect();
    let k = rng.random_range(1..=max_elements);
    let mut cores: Vec<BTreeSet<Label>> =
        (0..k).map(|_| verts.iter().filter(|_| rng.random_bool(0.35)).map(|v| (*v).clone()).collect()).collect();
    for v in &verts {
        if !cores.iter().any(|c| c.contains(*v)) {
            let i = rng.random_range(0..k);
            cores[i].insert((*v).clone());
        }
    }
    cores.retain(|c| !c.is_empty());
    cores
        .into_iter()
        .enumerate()
        .map(|(i, core)| CoverElement::new(format!("{prefix}{i}"), StarSet::new(level, core).expect("nonempty")))
        .collect()
}

/// `n_levels` independent random covers at `level`.
pub fn cover_sequence(
    rng: &mut impl Rng,
    space: &PolyhedralSpace,
    level: usize,
    n_levels: usize,
    max_elements: usize,
) -> CoverSequence {
    let levels = (0..n_levels).map(|n| random_family(rng, space, level, max_elements, &format!("U{n}_"))).collect();
    CoverSequence::new(space.clone(), levels).expect("each level covers")
}

/// A random carrier-monotone table over the stage at `level`: each vertex `v`
/// gets a random nonempty subcomplex `A_v` of `target`, and
/// `table(τ) = closure(⋃_{v∈τ} A_v ∪ extra(τ))` where `extra(τ)` holds random
/// simplices inherited by every coface of `τ`.
pub fn monotone_table(
    rng: &mut impl Rng,
    space: &PolyhedralSpace,
    level: usize,
    target: &SimplicialComplex<Label>,
) -> BTreeMap<Simplex<Label>, SimplicialComplex<Label>> {
    let stage = space.stage(level).expect("within budget");
    let target_simplices: Vec<&Simplex<Label>> = target.iter().collect();
    let mut extra: BTreeMap<&Simplex<Label>, Vec<Simplex<Label>>> = BTreeMap::new();
    for tau in stage.complex().iter() {
        let mut picks = Vec::new();
        if tau.card() == 1 || rng.random_bool(0.3) {
            picks.push((*target_simplices.choose(rng).expect("nonempty target")).clone());
        }
        extra.insert(tau, picks);
    }
    stage
        .complex()
        .iter()
        .map(|tau| {
            let gens: Vec<&Simplex<Label>> = stage
                .complex()
                .iter()
                .filter(|face| face.is_face_of(tau))
                .flat_map(|face| extra[face].iter())
                .collect();
            (tau.clone(), SimplicialComplex::closure(gens))
        })
        .collect()
}

/// A random simplicial map from the working stage into the nerve of the
/// first `kappa` levels. Each vertex goes to an element containing it with
/// probability `1 - corrupt`, otherwise to any nerve vertex; draws that are
/// not simplicial are retried up to `tries` times.
pub fn nerve_map(
    rng: &mut impl Rng,
    cs: &CoverSequence,
    kappa: usize,
    corrupt: f64,
    tries: usize,
) -> Option<CanonicalMap> {
    let target = nerve(cs, kappa).expect("kappa within the sequence").complex;
    let all: Vec<NerveVertex> = cs.nerve_vertices(kappa);
    let stage = cs.stage();
    for _ in 0..tries {
        let images: BTreeMap<Label, NerveVertex> = stage
            .complex()
            .vertices()
            .iter()
            .map(|v| {
                let owners: Vec<&NerveVertex> =
                    all.iter().filter(|u| cs.core(u).expect("own vertex").contains(v)).collect();
                let u = if owners.is_empty() || rng.random_bool(corrupt) {
                    all.choose(rng).expect("nonempty nerve")
                } else {
                    *owners.choose(rng).expect("nonempty")
                };
                (v.clone(), u.clone())
            })
            .collect();
        if let Ok(f) = CanonicalMap::new(cs, cs.working_level(), target.clone(), NerveKind::FullNerve, images) {
            return Some(f);
        }
    }
    None
}

/// Input of a cone extension: `g: Σ → T`, the chain `S_0 ⊆ … ⊆ S_{n+1} = T`
/// with witness `q`, and a fresh apex.
#[derive(Debug, Clone)]
pub struct ConeInstance {
    pub g: SimplicialMap<Label, Label>,
    pub apex: Label,
    pub q: Label,
    pub chain: Vec<SimplicialComplex<Label>>,
}

fn random_simplices(rng: &mut impl Rng, verts: &[Label], count: usize, max_card: usize) -> Vec<Simplex<Label>> {
    (0..count)
        .map(|_| {
            let card = rng.random_range(1..=max_card.min(verts.len()));
            Simplex::new(verts.choose_multiple(rng, card).cloned()).expect("nonempty")
        })
        .collect()
}

/// A chain with `q ∈ S_0` and `S_k ∗ q ⊆ S_{k+1}`, a random `Σ` of dimension
/// at most `n` on `x0, x1, …`, and `g` mapping `Σ^k` into `S_k`.
pub fn cone_instance(rng: &mut impl Rng, n: usize) -> ConeInstance {
    let q = Label::new("q");
    let ys: Vec<Label> = (0..4).map(|i| Label::new(format!("y{i}"))).collect();
    let mut s =
        SimplicialComplex::closure(random_simplices(rng, &ys, 2, 2).iter().chain([&Simplex::vertex(q.clone())]));
    let mut chain = vec![s.clone()];
    for _ in 0..=n {
        let extra = random_simplices(rng, &ys, 2, 3);
        s = s.join_vertex(q.clone()).union(&SimplicialComplex::closure(extra.iter()));
        chain.push(s.clone());
    }
    let target = Arc::new(s);
    let s0: Vec<Label> = chain[0].vertices().iter().cloned().collect();
    let xs: Vec<Label> = (0..rng.random_range(1..=5)).map(|i| Label::new(format!("x{i}"))).collect();
    let images: BTreeMap<Label, Label> = xs.iter().map(|x| (x.clone(), s0.choose(rng).expect("q").clone())).collect();
    let fits = |sigma: &Simplex<Label>| {
        sigma.faces().all(|face| {
            let img = Simplex::new(face.iter().map(|x| images[x].clone())).expect("nonempty");
            chain[face.dim()].contains(&img)
        })
    };
    let mut accepted: Vec<Simplex<Label>> = xs.iter().map(|x| Simplex::vertex(x.clone())).collect();
    for sigma in random_simplices(rng, &xs, 6, n + 1) {
        if fits(&sigma) {
            accepted.push(sigma);
        }
    }
    let source = Arc::new(SimplicialComplex::closure(accepted.iter()));
    let g = SimplicialMap::new(source, target, images).expect("images lie in the chain");
    ConeInstance { g, apex: Label::new("v"), q, chain }
}
