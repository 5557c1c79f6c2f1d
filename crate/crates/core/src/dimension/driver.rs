use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cover::{refinement_map, CoverSequence, NerveKind};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::selection::{
    build_canonical, extract_c_refinement, is_canonical, is_selection, transfer_selection, CanonicalMap,
};

use super::{
    dim_oracle, ostrand_refine, search_c_refinement_with, verify_c_refinement, CRefinement, CViolation, LevelAudit,
    SearchOutcome,
};

/// The bound `μ` on the number of families: `κ < μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MuMode {
    /// `μ = ω + 1`: any number of families up to `ω`.
    OmegaPlusOne,
    /// `μ = ω`: finitely many families.
    Omega,
    /// `μ = n + 1`: at most `n + 1` families.
    NPlusOne(usize),
}

impl MuMode {
    /// Largest `κ` the driver tries. For the unbounded modes a finite
    /// polyhedron never needs more than `dim + 1` families.
    pub fn kappa_limit(self, dim: usize) -> usize {
        match self {
            MuMode::OmegaPlusOne | MuMode::Omega => dim + 1,
            MuMode::NPlusOne(n) => n + 1,
        }
    }
}

impl fmt::Display for MuMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuMode::OmegaPlusOne => f.write_str("c"),
            MuMode::Omega => f.write_str("finite-c"),
            MuMode::NPlusOne(n) => write!(f, "dim:{n}"),
        }
    }
}

impl FromStr for MuMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "c" => Ok(MuMode::OmegaPlusOne),
            "finite-c" => Ok(MuMode::Omega),
            _ => s
                .strip_prefix("dim:")
                .and_then(|n| n.parse().ok())
                .map(MuMode::NPlusOne)
                .ok_or_else(|| format!("unknown mode {s:?}: expected c, finite-c or dim:<n>")),
        }
    }
}

impl Serialize for MuMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Constructor,
    Search,
}

/// One value of `κ` tried by the driver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaAttempt {
    pub kappa: usize,
    pub method: Method,
    pub found_level: Option<usize>,
    pub audits: Vec<LevelAudit>,
}

/// Both directions of the equivalence for the found refinement: a canonical
/// map into `Δ(𝒰_{<κ})` built through it, and the families extracted back
/// from that map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    pub kappa: usize,
    pub refinement: CRefinement,
    pub refinement_violation: Option<CViolation>,
    pub canonical: CanonicalMap,
    pub is_canonical: bool,
    pub is_selection: bool,
    pub extracted: CRefinement,
    pub extracted_violation: Option<CViolation>,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.refinement_violation.is_none()
            && self.is_canonical
            && self.is_selection
            && self.extracted_violation.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuReport {
    pub mode: MuMode,
    pub dim: usize,
    pub max_level: usize,
    pub attempts: Vec<KappaAttempt>,
    pub round_trip: Option<RoundTrip>,
    /// Set when a step stopped the driver early, e.g. an exhausted level
    /// budget. The attempts so far are kept.
    pub error: Option<Error>,
}

impl MuReport {
    pub fn success(&self) -> bool {
        self.error.is_none() && self.round_trip.as_ref().is_some_and(RoundTrip::holds)
    }
}

/// Takes a C-refinement of `cs` with `κ` families back and forth through a
/// canonical map into `Δ(𝒰_{<κ})`.
pub fn round_trip(cs: &CoverSequence, r: &CRefinement) -> Result<RoundTrip> {
    let kappa = r.kappa();
    let refinement_violation = verify_c_refinement(r)?;
    let source = r.source();
    let fine = r.as_cover()?;
    let h = build_canonical(&fine, kappa, NerveKind::Delta)?;
    let rmap = refinement_map(&fine, source, kappa, NerveKind::Delta)?;
    let f = transfer_selection(&h, &rmap)?;
    let canonical = is_canonical(&f, source, kappa)?;
    let selection = is_selection(&f, source, kappa)?;
    let extracted =
        if canonical { extract_c_refinement(&f, source, kappa)? } else { CRefinement::new(Vec::new(), cs.clone()) };
    let extracted_violation = verify_c_refinement(&extracted)?;
    Ok(RoundTrip {
        kappa,
        refinement: r.clone(),
        refinement_violation,
        canonical: f,
        is_canonical: canonical,
        is_selection: selection,
        extracted,
        extracted_violation,
    })
}

/// Tries `κ = 1, 2, …` up to the mode's limit: the barycentric colouring when
/// `κ - 1 ≥ dim`, bounded search below that. The first refinement found is
/// taken through [`round_trip`].
pub fn mu_driver_with(cs: &CoverSequence, mode: MuMode, max_level: usize, strategy: Strategy) -> MuReport {
    let dim = dim_oracle(cs.space());
    let mut report = MuReport { mode, dim, max_level, attempts: Vec::new(), round_trip: None, error: None };
    for kappa in 1..=mode.kappa_limit(dim) {
        let step = if kappa > dim {
            ostrand_refine(cs, kappa - 1).map(|r| {
                let level = r.level();
                (
                    KappaAttempt { kappa, method: Method::Constructor, found_level: Some(level), audits: Vec::new() },
                    Some(r),
                )
            })
        } else {
            search_c_refinement_with(cs, kappa, max_level, strategy).map(|out| {
                let audits = out.audits().to_vec();
                match out {
                    SearchOutcome::Found { refinement, level, .. } => (
                        KappaAttempt { kappa, method: Method::Search, found_level: Some(level), audits },
                        Some(refinement),
                    ),
                    SearchOutcome::Exhausted { .. } => {
                        (KappaAttempt { kappa, method: Method::Search, found_level: None, audits }, None)
                    }
                }
            })
        };
        match step {
            Err(e) => {
                report.error = Some(e);
                return report;
            }
            Ok((attempt, found)) => {
                report.attempts.push(attempt);
                if let Some(r) = found {
                    match round_trip(cs, &r) {
                        Ok(rt) => report.round_trip = Some(rt),
                        Err(e) => report.error = Some(e),
                    }
                    return report;
                }
            }
        }
    }
    report
}

pub fn mu_driver(cs: &CoverSequence, mode: MuMode, max_level: usize) -> MuReport {
    mu_driver_with(cs, mode, max_level, Strategy::default())
}
