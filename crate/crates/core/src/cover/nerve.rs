use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{CoverSequence, Kappa, NerveVertex};
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::label::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NerveKind {
    /// `𝒩(𝒰_{<κ})`: every kernel-nonempty vertex set.
    FullNerve,
    /// `Δ(𝒰_{<κ})`: kernel-nonempty with at most one vertex per level.
    Delta,
}

/// The nerve of a prefix of a cover sequence, or its `Δ` subcomplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedNerve {
    pub complex: Arc<SimplicialComplex<NerveVertex>>,
    pub kind: NerveKind,
    pub kappa: usize,
}

/// A working-stage simplex meeting every element of `sigma`, if the kernel is
/// nonempty. The witness is the first such simplex in simplex order.
pub fn kernel_query(cs: &CoverSequence, sigma: &[NerveVertex]) -> Result<Option<Simplex<Label>>> {
    let cores: Vec<&BTreeSet<Label>> = sigma.iter().map(|v| cs.core(v)).collect::<Result<_>>()?;
    Ok(cs.stage().complex().iter().find(|tau| cores.iter().all(|c| tau.meets(c))).cloned())
}

fn one_per_level(s: &[NerveVertex]) -> bool {
    s.windows(2).all(|w| w[0].level != w[1].level)
}

/// All nonempty subsets of `verts` (sorted by level) with at most one vertex
/// per level.
fn transversal_faces(verts: &[NerveVertex]) -> Vec<Simplex<NerveVertex>> {
    let mut by_level: BTreeMap<usize, Vec<&NerveVertex>> = BTreeMap::new();
    for v in verts {
        by_level.entry(v.level).or_default().push(v);
    }
    // Choose one element or nothing from each level.
    let mut partial: Vec<Vec<NerveVertex>> = vec![Vec::new()];
    for options in by_level.values() {
        let mut next = Vec::with_capacity(partial.len() * (options.len() + 1));
        for p in &partial {
            next.push(p.clone());
            for v in options {
                let mut q = p.clone();
                q.push((*v).clone());
                next.push(q);
            }
        }
        partial = next;
    }
    partial.into_iter().filter_map(Simplex::new).collect()
}

fn assemble(cs: &CoverSequence, kappa: usize, kind: NerveKind, strategy: Strategy) -> SimplicialComplex<NerveVertex> {
    let facets = cs.stage().complex().facets();
    let per_facet: Vec<Vec<Simplex<NerveVertex>>> = strategy.map(&facets, |tau| {
        let meeting = cs.meeting(kappa, tau);
        match kind {
            NerveKind::FullNerve => Simplex::new(meeting).into_iter().collect(),
            NerveKind::Delta => {
                // Maximal transversals suffice; closure adds the rest.
                let mut by_level: BTreeMap<usize, usize> = BTreeMap::new();
                for v in &meeting {
                    *by_level.entry(v.level).or_default() += 1;
                }
                transversal_faces(&meeting).into_iter().filter(|s| s.card() == by_level.len()).collect()
            }
        }
    });
    let mut out = SimplicialComplex::empty();
    for s in per_facet.iter().flatten() {
        out.insert_closed(s);
    }
    out
}

/// `𝒩(𝒰_{<κ})`: the closure of the element sets meeting each facet of the
/// working stage.
pub fn nerve(cs: &CoverSequence, kappa: impl Into<Kappa>) -> Result<IndexedNerve> {
    nerve_with(cs, kappa, Strategy::default())
}

pub fn nerve_with(cs: &CoverSequence, kappa: impl Into<Kappa>, strategy: Strategy) -> Result<IndexedNerve> {
    let k = kappa.into().resolve(cs.num_levels())?;
    Ok(IndexedNerve {
        complex: Arc::new(assemble(cs, k, NerveKind::FullNerve, strategy)),
        kind: NerveKind::FullNerve,
        kappa: k,
    })
}

/// `Δ(𝒰_{<κ})`: nerve simplices with at most one vertex per level.
pub fn delta_subcomplex(cs: &CoverSequence, kappa: impl Into<Kappa>) -> Result<IndexedNerve> {
    delta_subcomplex_with(cs, kappa, Strategy::default())
}

pub fn delta_subcomplex_with(cs: &CoverSequence, kappa: impl Into<Kappa>, strategy: Strategy) -> Result<IndexedNerve> {
    let k = kappa.into().resolve(cs.num_levels())?;
    Ok(IndexedNerve {
        complex: Arc::new(assemble(cs, k, NerveKind::Delta, strategy)),
        kind: NerveKind::Delta,
        kappa: k,
    })
}

fn check_carrier(cs: &CoverSequence, tau: &Simplex<Label>) -> Result<()> {
    if cs.stage().complex().contains(tau) {
        Ok(())
    } else {
        Err(Error::UnknownCarrier(tau.to_string()))
    }
}

/// `Δ_[𝒰_{<κ}](p)` for every point `p` with carrier `tau`: the simplices of
/// `Δ(𝒰_{<κ})` all of whose elements contain `⟨tau⟩`.
pub fn delta_at_carrier(
    cs: &CoverSequence,
    kappa: impl Into<Kappa>,
    tau: &Simplex<Label>,
) -> Result<SimplicialComplex<NerveVertex>> {
    let k = kappa.into().resolve(cs.num_levels())?;
    check_carrier(cs, tau)?;
    let meeting = cs.meeting(k, tau);
    Ok(SimplicialComplex::closure(transversal_faces(&meeting).iter()))
}

/// `Σ_𝒜(p)` for points with carrier `tau`: every subset of the elements
/// containing `⟨tau⟩`.
pub fn nerve_at_carrier(
    cs: &CoverSequence,
    kappa: impl Into<Kappa>,
    tau: &Simplex<Label>,
) -> Result<SimplicialComplex<NerveVertex>> {
    let k = kappa.into().resolve(cs.num_levels())?;
    check_carrier(cs, tau)?;
    let meeting = Simplex::new(cs.meeting(k, tau));
    Ok(SimplicialComplex::closure(meeting.iter()))
}

/// The one-per-level complex built from the *unindexed* union of the levels:
/// equal point sets in different levels collapse to one vertex, and a simplex
/// is admitted when it is kernel-nonempty and meets each level's set of point
/// sets at most once.
///
/// A vertex is named by the id of the first `(level, id)` occurrence of its
/// point set; a later distinct set reusing a taken id is named `id@level`.
pub fn unindexed_delta(cs: &CoverSequence, kappa: impl Into<Kappa>) -> Result<SimplicialComplex<Label>> {
    let k = kappa.into().resolve(cs.num_levels())?;
    let mut names: BTreeMap<&BTreeSet<Label>, Label> = BTreeMap::new();
    let mut taken: BTreeSet<Label> = BTreeSet::new();
    let mut members: Vec<BTreeSet<Label>> = vec![BTreeSet::new(); k];
    for (n, level) in cs.levels().iter().take(k).enumerate() {
        for e in level {
            let name = names
                .entry(e.star.core())
                .or_insert_with(|| {
                    let candidate =
                        if taken.contains(&e.id) { Label::new(format!("{}@{n}", e.id)) } else { e.id.clone() };
                    taken.insert(candidate.clone());
                    candidate
                })
                .clone();
            members[n].insert(name);
        }
    }
    let sets: Vec<(&BTreeSet<Label>, &Label)> = names.iter().map(|(c, l)| (*c, l)).collect();
    let mut out = SimplicialComplex::empty();
    for tau in cs.stage().complex().facets() {
        let here: Vec<&Label> = sets.iter().filter(|(c, _)| tau.meets(c)).map(|(_, l)| *l).collect();
        assert!(here.len() < usize::BITS as usize);
        for mask in 1usize..(1usize << here.len()) {
            let chosen: Vec<Label> = (0..here.len()).filter(|i| mask >> i & 1 == 1).map(|i| here[i].clone()).collect();
            let ok = members.iter().all(|m| chosen.iter().filter(|l| m.contains(*l)).count() <= 1);
            if ok {
                out.insert_closed(&Simplex::new(chosen).expect("nonempty"));
            }
        }
    }
    Ok(out)
}

/// Whether every simplex of a complex over nerve vertices has at most one
/// vertex per level.
pub fn is_one_per_level(c: &SimplicialComplex<NerveVertex>) -> bool {
    c.iter().all(|s| one_per_level(s.vertices()))
}
