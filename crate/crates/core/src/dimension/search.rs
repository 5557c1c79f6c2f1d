use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::cover::{CoverElement, CoverSequence, Kappa};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::label::Label;
use crate::realization::StarSet;

use super::CRefinement;

fn as_decimal<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// Counters for one subdivision level of the search.
///
/// The search space is every assignment of a (family, source element) label
/// to each vertex with the vertex in the element's core: the product of the
/// initial domain sizes. A trial assigns one label to one vertex. A
/// discarded child at depth `d` (label already excluded, or excluded for a
/// neighbour by the assignment) drops every completion, the product of the
/// domain sizes of the vertices after `d`, and these are summed in
/// `pruned_leaves`. On an exhausted level `pruned_leaves + leaves` equals
/// the search space, so every assignment is accounted for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelAudit {
    pub level: usize,
    pub vertices: usize,
    pub kappa: usize,
    #[serde(serialize_with = "as_decimal")]
    pub search_space: BigUint,
    pub trials: u64,
    pub pruned: u64,
    #[serde(serialize_with = "as_decimal")]
    pub pruned_leaves: BigUint,
    pub leaves: u64,
    pub found: bool,
}

impl LevelAudit {
    /// Every leaf of the assignment tree is either reached or pruned.
    pub fn fully_accounted(&self) -> bool {
        &self.pruned_leaves + BigUint::from(self.leaves) == self.search_space
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { refinement: CRefinement, level: usize, audits: Vec<LevelAudit> },
    Exhausted { max_level: usize, audits: Vec<LevelAudit> },
}

impl SearchOutcome {
    pub fn audits(&self) -> &[LevelAudit] {
        match self {
            SearchOutcome::Found { audits, .. } | SearchOutcome::Exhausted { audits, .. } => audits,
        }
    }

    pub fn refinement(&self) -> Option<&CRefinement> {
        match self {
            SearchOutcome::Found { refinement, .. } => Some(refinement),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

/// The search state: partial assignment and the current label domains.
#[derive(Clone)]
struct State {
    assign: Vec<usize>,
    /// `words` 64-bit words of label bits per vertex.
    domains: Vec<u64>,
    /// Product of the initial domain sizes of the unassigned vertices: the
    /// number of leaves below this state.
    leaves_below: BigUint,
}

const UNASSIGNED: usize = usize::MAX;

/// One level of the search. Vertices are renumbered in breadth-first order;
/// the next vertex branched on is an unassigned one with fewest remaining
/// labels, ties to the lowest number. A label is a pair (family `n`, element `U` of
/// source level `n`); vertex `v` may take it iff `v` lies in the core of `U`.
/// Adjacent vertices with the same family must carry the same element, so
/// the components of a family are exactly unions of equally labelled
/// vertices and each fits inside its element.
struct Problem {
    kappa: usize,
    vertices: Vec<Label>,
    adj: Vec<Vec<usize>>,
    family_of: Vec<usize>,
    words: usize,
    /// Per label: the other labels of its family, to be removed from
    /// neighbouring domains.
    conflicts: Vec<Vec<u64>>,
    initial: State,
    /// Per vertex: its initial domain in trial order.
    order: Vec<Vec<usize>>,
}

#[derive(Default, Clone)]
struct Counters {
    trials: u64,
    pruned: u64,
    pruned_leaves: BigUint,
    leaves: u64,
}

impl Counters {
    fn absorb(&mut self, other: &Counters) {
        self.trials += other.trials;
        self.pruned += other.pruned;
        self.pruned_leaves += &other.pruned_leaves;
        self.leaves += other.leaves;
    }

    fn discard(&mut self, leaves: &BigUint) {
        self.pruned += 1;
        self.pruned_leaves += leaves;
    }
}

impl Problem {
    fn new(cs: &CoverSequence, kappa: usize) -> Self {
        let stage = cs.stage();
        let verts = stage.complex().vertices();
        let mut vertices: Vec<Label> = Vec::with_capacity(verts.len());
        let mut seen: BTreeSet<&Label> = BTreeSet::new();
        for start in verts {
            if !seen.insert(start) {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                vertices.push(v.clone());
                for w in stage.neighbors(v).into_iter().flatten() {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        let n = vertices.len();
        let index: BTreeMap<&Label, usize> = vertices.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let adj =
            vertices.iter().map(|v| stage.neighbors(v).into_iter().flatten().map(|w| index[w]).collect()).collect();

        let mut family_of = Vec::new();
        let mut cores: Vec<&BTreeSet<Label>> = Vec::new();
        for (f, level) in cs.levels()[..kappa].iter().enumerate() {
            for e in level {
                family_of.push(f);
                cores.push(e.star.core());
            }
        }
        let words = family_of.len().div_ceil(64).max(1);
        let bit = |l: usize| (l / 64, 1u64 << (l % 64));
        let conflicts = (0..family_of.len())
            .map(|l| {
                let mut mask = vec![0u64; words];
                for (m, &f) in family_of.iter().enumerate() {
                    if f == family_of[l] && m != l {
                        let (w, b) = bit(m);
                        mask[w] |= b;
                    }
                }
                mask
            })
            .collect();

        let mut domains = vec![0u64; n * words];
        let mut order = Vec::with_capacity(n);
        for (i, v) in vertices.iter().enumerate() {
            let preferred = stage.barycenter_dim(v);
            let allowed: Vec<usize> = (0..family_of.len()).filter(|&l| cores[l].contains(v)).collect();
            // Labels of the family matching the barycenter dimension first:
            // the colouring by dimension is tried before anything else.
            let mut ordered: Vec<usize> = allowed.iter().copied().filter(|&l| family_of[l] == preferred).collect();
            ordered.extend(allowed.iter().copied().filter(|&l| family_of[l] != preferred));
            for &l in &ordered {
                let (w, b) = bit(l);
                domains[i * words + w] |= b;
            }
            order.push(ordered);
        }
        let leaves_below = order.iter().map(|o| BigUint::from(o.len())).product();
        Problem {
            kappa,
            vertices,
            adj,
            family_of,
            words,
            conflicts,
            initial: State { assign: vec![UNASSIGNED; n], domains, leaves_below },
            order,
        }
    }

    fn n(&self) -> usize {
        self.vertices.len()
    }

    fn has(&self, st: &State, v: usize, l: usize) -> bool {
        st.domains[v * self.words + l / 64] >> (l % 64) & 1 == 1
    }

    fn remaining(&self, st: &State, v: usize) -> u32 {
        st.domains[v * self.words..(v + 1) * self.words].iter().map(|w| w.count_ones()).sum()
    }

    /// Unassigned vertex with fewest remaining labels.
    fn next_vertex(&self, st: &State) -> Option<usize> {
        (0..self.n()).filter(|&v| st.assign[v] == UNASSIGNED).min_by_key(|&v| (self.remaining(st, v), v))
    }

    /// Assigns `l` to `v` and removes the other labels of its family from
    /// every unassigned neighbour. `None` when a neighbour runs out of
    /// labels: domains only shrink, so no completion exists.
    fn assign(&self, st: &State, v: usize, l: usize) -> Option<State> {
        let mut next = st.clone();
        next.assign[v] = l;
        let w = self.words;
        for &u in &self.adj[v] {
            if next.assign[u] != UNASSIGNED {
                continue;
            }
            let dom = &mut next.domains[u * w..(u + 1) * w];
            let mut empty = true;
            for (d, c) in dom.iter_mut().zip(&self.conflicts[l]) {
                *d &= !c;
                empty &= *d == 0;
            }
            if empty {
                return None;
            }
        }
        Some(next)
    }

    /// Children of the node branching on `v`, each either discarded
    /// (counted with the leaves below it) or passed to `visit`. Stops early
    /// when `visit` returns `true`.
    fn expand(
        &self,
        st: &State,
        v: usize,
        counters: &mut Counters,
        mut visit: impl FnMut(State, &mut Counters) -> bool,
    ) -> bool {
        let below = &st.leaves_below / BigUint::from(self.order[v].len());
        for &l in &self.order[v] {
            if !self.has(st, v, l) {
                counters.discard(&below);
                continue;
            }
            counters.trials += 1;
            match self.assign(st, v, l) {
                None => counters.discard(&below),
                Some(mut next) => {
                    next.leaves_below = below.clone();
                    if visit(next, counters) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Depth-first search below `st`; returns a complete assignment.
    fn dfs(&self, st: &State, counters: &mut Counters, stop: &dyn Fn() -> bool) -> Option<Vec<usize>> {
        let Some(v) = self.next_vertex(st) else {
            counters.leaves += 1;
            return Some(st.assign.clone());
        };
        if stop() {
            return None;
        }
        let mut found = None;
        self.expand(st, v, counters, |next, c| {
            found = self.dfs(&next, c, stop);
            found.is_some()
        });
        found
    }

    /// All surviving states after `depth` more assignments (or complete
    /// ones), in search order.
    fn prefixes(&self, st: &State, depth: usize, counters: &mut Counters, out: &mut Vec<State>) {
        let v = match self.next_vertex(st) {
            Some(v) if depth > 0 => v,
            _ => {
                out.push(st.clone());
                return;
            }
        };
        self.expand(st, v, counters, |next, c| {
            self.prefixes(&next, depth - 1, c, out);
            false
        });
    }

    fn audit(&self, level: usize, counters: &Counters, found: bool) -> LevelAudit {
        LevelAudit {
            level,
            vertices: self.n(),
            kappa: self.kappa,
            search_space: self.initial.leaves_below.clone(),
            trials: counters.trials,
            pruned: counters.pruned,
            pruned_leaves: counters.pruned_leaves.clone(),
            leaves: counters.leaves,
            found,
        }
    }

    /// Components of each family, named by their least vertex label.
    fn certificate(&self, assign: &[usize], level: usize) -> Result<Vec<Vec<CoverElement>>> {
        let family = |v: usize| self.family_of[assign[v]];
        let mut families: Vec<Vec<CoverElement>> = vec![Vec::new(); self.kappa];
        let mut seen = vec![false; self.n()];
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let f = family(start);
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.insert(self.vertices[v].clone());
                for &w in &self.adj[v] {
                    if !seen[w] && family(w) == f {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            let id = comp.first().expect("nonempty").clone();
            families[f].push(CoverElement::new(id, StarSet::new(level, comp)?));
        }
        for f in &mut families {
            f.sort_by(|a, b| a.id.cmp(&b.id));
        }
        Ok(families)
    }

    /// Deterministic search of one level: branches are the surviving states
    /// after a short prefix, searched independently; the first branch (in
    /// search order) holding a certificate wins. Counters cover the prefix
    /// enumeration and every branch up to the winning one.
    fn solve(&self, level: usize, strategy: Strategy) -> (Option<Vec<usize>>, LevelAudit) {
        let depth = 6.min(self.n());
        let mut counters = Counters::default();
        let mut prefixes = Vec::new();
        self.prefixes(&self.initial, depth, &mut counters, &mut prefixes);
        let best = AtomicUsize::new(usize::MAX);
        let branches: Vec<usize> = (0..prefixes.len()).collect();
        let runs: Vec<(Option<Vec<usize>>, Counters)> = strategy.map(&branches, |&j| {
            let mut local = Counters::default();
            if best.load(Ordering::Relaxed) < j {
                return (None, local);
            }
            let stop = || best.load(Ordering::Relaxed) < j;
            let found = self.dfs(&prefixes[j], &mut local, &stop);
            if found.is_some() {
                best.fetch_min(j, Ordering::Relaxed);
            }
            (found, local)
        });
        let winner = runs.iter().position(|(a, _)| a.is_some());
        let upto = winner.map_or(runs.len(), |w| w + 1);
        for (_, c) in &runs[..upto] {
            counters.absorb(c);
        }
        let found = winner.and_then(|w| runs[w].0.clone());
        let audit = self.audit(level, &counters, found.is_some());
        (found, audit)
    }
}

/// Bounded exhaustive search for a C-refinement of the first `kappa` levels
/// by star-set families, trying working levels `W ..= max_level` in turn.
///
/// Every stage vertex is assigned one family; each family's elements are the
/// connected components of its vertices, so elements of one family never
/// span a common simplex, and each component must fit inside an element of
/// the matching source level. Equivalently every vertex carries a (family,
/// element) label and adjacent vertices of one family carry the same
/// element; the search runs over these labels. Exhaustion is relative to this model and to
/// `max_level`. A sequence with fewer than `kappa` levels is padded by
/// repeating its last level.
pub fn search_c_refinement_with(
    cs: &CoverSequence,
    kappa: usize,
    max_level: usize,
    strategy: Strategy,
) -> Result<SearchOutcome> {
    let k = Kappa::Finite(kappa).resolve(kappa)?;
    let source = cs.padded_to(k)?;
    let start = source.working_level();
    if max_level < start {
        return Err(Error::LevelMismatch { expected: start, found: max_level });
    }
    let mut audits = Vec::new();
    for level in start..=max_level {
        let at = source.refined_to(level)?;
        let problem = Problem::new(&at, k);
        let (found, audit) = problem.solve(level, strategy);
        audits.push(audit);
        if let Some(assign) = found {
            let families = problem.certificate(&assign, level)?;
            let refinement = CRefinement::new(families, source.prefix(k)?);
            return Ok(SearchOutcome::Found { refinement, level, audits });
        }
    }
    Ok(SearchOutcome::Exhausted { max_level, audits })
}

pub fn search_c_refinement(cs: &CoverSequence, kappa: usize, max_level: usize) -> Result<SearchOutcome> {
    search_c_refinement_with(cs, kappa, max_level, Strategy::default())
}
