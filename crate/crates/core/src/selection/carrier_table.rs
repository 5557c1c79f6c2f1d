use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{PolyhedralSpace, Simplex, SimplicialComplex, SubdivisionStage};
use crate::error::{Error, Result};
use crate::label::Label;

use super::check_cone_witness;

pub type CarrierTable = BTreeMap<Simplex<Label>, SimplicialComplex<Label>>;

/// A sequence of set-valued maps `φ_k: |K| → 2^{|T|}` given carrier by
/// carrier: every point with carrier `τ` (at the table's stage) is sent to
/// `|table_k(τ)|`.
///
/// Values are nonempty subcomplexes of `T` and grow with the carrier, which
/// is the combinatorial form of lower local constancy: points near `⟨τ⟩`
/// have carriers containing `τ`. An optional cone witness `q` certifies
/// `table_k(τ) ∗ q ⊆ table_{k+1}(τ)` and `q ∈ table_0(τ)` for every `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarrierMappingSequence {
    space: PolyhedralSpace,
    stage: Arc<SubdivisionStage>,
    target: Arc<SimplicialComplex<Label>>,
    tables: Vec<CarrierTable>,
    cone_witness: Option<Label>,
}

impl CarrierMappingSequence {
    pub fn new(
        space: PolyhedralSpace,
        level: usize,
        target: Arc<SimplicialComplex<Label>>,
        tables: Vec<CarrierTable>,
        cone_witness: Option<Label>,
    ) -> Result<Self> {
        let stage = space.stage(level)?;
        if tables.is_empty() {
            return Err(Error::InvalidTable("at least one table is required".into()));
        }
        for (k, table) in tables.iter().enumerate() {
            if let Some(extra) = table.keys().find(|tau| !stage.complex().contains(tau)) {
                return Err(Error::UnknownCarrier(format!("{extra} in table {k}")));
            }
            if let Some(tau) = stage.complex().iter().find(|tau| !table.contains_key(tau)) {
                return Err(Error::InvalidTable(format!("table {k} has no value for {tau}")));
            }
            for (tau, value) in table {
                if value.is_empty() {
                    return Err(Error::EmptyValue(format!("{tau} in table {k}")));
                }
                if let Some(s) = value.first_missing_from(&target) {
                    return Err(Error::InvalidTable(format!(
                        "table {k} at {tau} contains {s}, which is not in the target"
                    )));
                }
                // Monotonicity along codimension-one faces gives it for all faces.
                if tau.card() > 1 {
                    for v in tau.iter() {
                        let face = Simplex::new(tau.iter().filter(|w| *w != v).cloned()).expect("nonempty");
                        if !table[&face].is_subcomplex_of(value) {
                            return Err(Error::NotMonotone {
                                smaller: format!("{face} in table {k}"),
                                larger: tau.to_string(),
                            });
                        }
                    }
                }
            }
        }
        if let Some(q) = &cone_witness {
            if !target.contains_vertex(q) {
                return Err(Error::WitnessFailure(format!("{q} is not a vertex of the target")));
            }
            for tau in stage.complex().iter() {
                let chain: Vec<SimplicialComplex<Label>> = tables.iter().map(|t| t[tau].clone()).collect();
                check_cone_witness(&chain, q).map_err(|e| match e {
                    Error::WitnessFailure(m) => Error::WitnessFailure(format!("at carrier {tau}: {m}")),
                    other => other,
                })?;
            }
        }
        Ok(CarrierMappingSequence { space, stage, target, tables, cone_witness })
    }

    pub fn space(&self) -> &PolyhedralSpace {
        &self.space
    }

    pub fn level(&self) -> usize {
        self.stage.level()
    }

    pub fn stage(&self) -> &Arc<SubdivisionStage> {
        &self.stage
    }

    pub fn target(&self) -> &Arc<SimplicialComplex<Label>> {
        &self.target
    }

    pub fn tables(&self) -> &[CarrierTable] {
        &self.tables
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn cone_witness(&self) -> Option<&Label> {
        self.cone_witness.as_ref()
    }

    /// `table_k(τ)`.
    pub fn value(&self, k: usize, tau: &Simplex<Label>) -> Result<&SimplicialComplex<Label>> {
        let table = self
            .tables
            .get(k)
            .ok_or_else(|| Error::ArityError(format!("no table {k}; the sequence has {}", self.tables.len())))?;
        table.get(tau).ok_or_else(|| Error::UnknownCarrier(tau.to_string()))
    }

    /// Appends `table_{last} ∗ q` as a new table; the witness still holds.
    pub fn extended_by_cone(&self) -> Result<CarrierMappingSequence> {
        let q = self.cone_witness.clone().ok_or(Error::NoConeWitness)?;
        let last = self.tables.last().expect("nonempty");
        let next: CarrierTable = last.iter().map(|(tau, v)| (tau.clone(), v.join_vertex(q.clone()))).collect();
        let mut tables = self.tables.clone();
        tables.push(next);
        CarrierMappingSequence::new(self.space.clone(), self.level(), self.target.clone(), tables, Some(q))
    }

    /// The sequence `table_k(τ) = base ∗ q ∗ … ∗ q` (`k` cones) with every
    /// carrier sent to the same complex.
    pub fn constant_cones(
        space: PolyhedralSpace,
        level: usize,
        target: Arc<SimplicialComplex<Label>>,
        base: &SimplicialComplex<Label>,
        q: Label,
        len: usize,
    ) -> Result<Self> {
        let stage = space.stage(level)?;
        let mut tables = Vec::with_capacity(len);
        let mut value = base.clone();
        for _ in 0..len {
            tables.push(stage.complex().iter().map(|tau| (tau.clone(), value.clone())).collect());
            value = value.join_vertex(q.clone());
        }
        CarrierMappingSequence::new(space, level, target, tables, Some(q))
    }
}
