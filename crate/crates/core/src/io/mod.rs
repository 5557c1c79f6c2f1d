//! JSON interchange types and DOT export.
//!
//! Every document written by [`to_json`] carries `"schema_version": 1`.
//! Nerve vertices are written as `["P", 0]` pairs and carrier simplices as
//! tokens joining their vertex labels with `|`, e.g. `"a|[a,b]"`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use itertools::Itertools;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::complex::{PolyhedralSpace, Simplex, SimplicialComplex, Vertex};
use crate::cover::{CoverElement, CoverSequence, IndexedNerve, NerveKind, NerveVertex};
use crate::dimension::CRefinement;
use crate::error::{Error, Result};
use crate::label::Label;
use crate::realization::{BarycentricPoint, StarSet};
use crate::selection::{CanonicalMap, CarrierMappingSequence, CarrierTable};

pub const SCHEMA_VERSION: u32 = 1;

/// Wraps a payload with the schema version.
#[derive(Debug, Serialize)]
pub struct Versioned<T> {
    pub schema_version: u32,
    #[serde(flatten)]
    pub payload: T,
}

/// Deterministic pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(payload: T) -> String {
    let mut s = serde_json::to_string_pretty(&Versioned { schema_version: SCHEMA_VERSION, payload })
        .expect("serializable payload");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub maximal_simplices: Vec<Vec<String>>,
}

impl ComplexJson {
    pub fn from_complex(c: &SimplicialComplex<Label>) -> Self {
        ComplexJson {
            maximal_simplices: c.facets().iter().map(|s| s.iter().map(|v| v.to_string()).collect()).collect(),
        }
    }

    /// Any label may appear in a target complex.
    pub fn to_complex(&self) -> Result<SimplicialComplex<Label>> {
        SimplicialComplex::validate(self.maximal_simplices.iter().map(|s| s.iter().map(Label::new)))
    }

    /// A base complex: labels must be base labels.
    pub fn to_space(&self) -> Result<PolyhedralSpace> {
        let raw: Vec<Vec<Label>> = self
            .maximal_simplices
            .iter()
            .map(|s| s.iter().map(Label::base).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        PolyhedralSpace::new(SimplicialComplex::validate(raw)?)
    }
}

/// Summary of a complex: f-vector, dimension and every simplex.
#[derive(Debug, Clone, Serialize)]
pub struct ComplexReport {
    pub level: usize,
    pub dim: Option<usize>,
    pub f_vector: Vec<usize>,
    pub maximal_simplices: Vec<Vec<String>>,
    pub simplices: Vec<Vec<String>>,
}

impl ComplexReport {
    pub fn new(level: usize, c: &SimplicialComplex<Label>) -> Self {
        ComplexReport {
            level,
            dim: c.dim(),
            f_vector: c.f_vector(),
            maximal_simplices: ComplexJson::from_complex(c).maximal_simplices,
            simplices: c.iter().map(|s| s.iter().map(|v| v.to_string()).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub level: usize,
    /// Exact rationals written as `"p/q"` or integers.
    pub coords: BTreeMap<String, String>,
}

impl PointJson {
    pub fn to_point(&self) -> Result<BarycentricPoint> {
        let coords = self
            .coords
            .iter()
            .map(|(v, c)| {
                let q: BigRational = c.parse().map_err(|_| Error::InvalidPoint(format!("{c:?} is not a rational")))?;
                Ok((Label::new(v), q))
            })
            .collect::<Result<Vec<_>>>()?;
        BarycentricPoint::new(self.level, coords)
    }

    pub fn from_point(p: &BarycentricPoint) -> Self {
        PointJson {
            level: p.level,
            coords: p.point.coords().iter().map(|(v, c)| (v.to_string(), c.to_string())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarSetJson {
    pub level: usize,
    pub stars: Vec<String>,
}

impl StarSetJson {
    pub fn to_star_set(&self) -> Result<StarSet> {
        StarSet::new(self.level, self.stars.iter().map(Label::new))
    }

    pub fn from_star_set(s: &StarSet) -> Self {
        StarSetJson { level: s.level(), stars: s.core().iter().map(|v| v.to_string()).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub id: String,
    pub stars: Vec<String>,
}

fn element_json(e: &CoverElement) -> ElementJson {
    ElementJson { id: e.id.to_string(), stars: e.star.core().iter().map(|v| v.to_string()).collect() }
}

impl From<&CoverElement> for ElementJson {
    fn from(e: &CoverElement) -> Self {
        element_json(e)
    }
}

/// Element ids may be generated names such as `[a,b]`, but are never empty
/// and contain no whitespace.
fn element_id(id: &str) -> Result<Label> {
    if id.is_empty() || id.chars().any(char::is_whitespace) {
        return Err(Error::InvalidLabel(id.to_string()));
    }
    Ok(Label::new(id))
}

fn elements(level: usize, raw: &[Vec<ElementJson>]) -> Result<Vec<Vec<CoverElement>>> {
    raw.iter()
        .map(|l| {
            l.iter()
                .map(|e| {
                    Ok(CoverElement::new(element_id(&e.id)?, StarSet::new(level, e.stars.iter().map(Label::new))?))
                })
                .collect()
        })
        .collect()
}

/// A cover sequence: every element's `stars` are vertices of the stage at
/// `working_level`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverJson {
    pub space: ComplexJson,
    pub working_level: usize,
    pub levels: Vec<Vec<ElementJson>>,
}

impl CoverJson {
    pub fn to_cover(&self) -> Result<CoverSequence> {
        let space = self.space.to_space()?;
        CoverSequence::at_working_level(space, self.working_level, elements(self.working_level, &self.levels)?)
    }

    pub fn from_cover(cs: &CoverSequence) -> Self {
        CoverJson {
            space: ComplexJson::from_complex(cs.space().base()),
            working_level: cs.working_level(),
            levels: cs.levels().iter().map(|l| l.iter().map(element_json).collect()).collect(),
        }
    }
}

/// A nerve vertex as the pair `[id, level]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NerveVertexJson(pub String, pub usize);

impl From<&NerveVertex> for NerveVertexJson {
    fn from(v: &NerveVertex) -> Self {
        NerveVertexJson(v.element.to_string(), v.level)
    }
}

impl From<&NerveVertexJson> for NerveVertex {
    fn from(v: &NerveVertexJson) -> Self {
        NerveVertex::new(Label::new(&v.0), v.1)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NerveJson {
    pub kind: &'static str,
    pub kappa: usize,
    pub f_vector: Vec<usize>,
    pub vertices: Vec<NerveVertexJson>,
    pub maximal_simplices: Vec<Vec<NerveVertexJson>>,
    pub simplices: Vec<Vec<NerveVertexJson>>,
}

pub fn kind_name(kind: NerveKind) -> &'static str {
    match kind {
        NerveKind::FullNerve => "nerve",
        NerveKind::Delta => "delta",
    }
}

fn nerve_simplex(s: &Simplex<NerveVertex>) -> Vec<NerveVertexJson> {
    s.iter().map(NerveVertexJson::from).collect()
}

impl NerveJson {
    pub fn new(n: &IndexedNerve) -> Self {
        NerveJson {
            kind: kind_name(n.kind),
            kappa: n.kappa,
            f_vector: n.complex.f_vector(),
            vertices: n.complex.vertices().iter().map(NerveVertexJson::from).collect(),
            maximal_simplices: n.complex.facets().iter().map(nerve_simplex).collect(),
            simplices: n.complex.iter().map(nerve_simplex).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalMapJson {
    pub subdivision_level: usize,
    pub vertex_images: BTreeMap<String, NerveVertexJson>,
}

impl CanonicalMapJson {
    pub fn from_map(f: &CanonicalMap) -> Self {
        CanonicalMapJson {
            subdivision_level: f.subdivision_level,
            vertex_images: f.map.images().iter().map(|(v, u)| (v.to_string(), u.into())).collect(),
        }
    }

    /// Validates the map against the prefix nerve (or `Δ`) of `cs`.
    pub fn to_map(&self, cs: &CoverSequence, kappa: usize, kind: NerveKind) -> Result<CanonicalMap> {
        let target = match kind {
            NerveKind::FullNerve => crate::cover::nerve(cs, kappa)?,
            NerveKind::Delta => crate::cover::delta_subcomplex(cs, kappa)?,
        };
        let images = self.vertex_images.iter().map(|(v, u)| (Label::new(v), u.into())).collect();
        CanonicalMap::new(cs, self.subdivision_level, target.complex, kind, images)
    }
}

/// `a|[a,b]` for the simplex `{a,[a,b]}`.
pub fn carrier_token(s: &Simplex<Label>) -> String {
    s.iter().join("|")
}

pub fn parse_carrier_token(token: &str) -> Result<Simplex<Label>> {
    Simplex::new(token.split('|').filter(|t| !t.is_empty()).map(Label::new))
        .ok_or_else(|| Error::UnknownCarrier(format!("{token:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierMappingJson {
    pub space: ComplexJson,
    pub level: usize,
    pub target: ComplexJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_witness: Option<String>,
    /// `tables[k]["a|[a,b]"]` is `table_k({a,[a,b]})`.
    pub tables: Vec<BTreeMap<String, ComplexJson>>,
}

impl CarrierMappingJson {
    pub fn to_sequence(&self) -> Result<CarrierMappingSequence> {
        let space = self.space.to_space()?;
        let target = Arc::new(self.target.to_complex()?);
        let tables = self
            .tables
            .iter()
            .map(|t| {
                t.iter()
                    .map(|(tok, c)| Ok((parse_carrier_token(tok)?, c.to_complex()?)))
                    .collect::<Result<CarrierTable>>()
            })
            .collect::<Result<Vec<_>>>()?;
        CarrierMappingSequence::new(space, self.level, target, tables, self.cone_witness.as_deref().map(Label::new))
    }

    pub fn from_sequence(phi: &CarrierMappingSequence) -> Self {
        CarrierMappingJson {
            space: ComplexJson::from_complex(phi.space().base()),
            level: phi.level(),
            target: ComplexJson::from_complex(phi.target()),
            cone_witness: phi.cone_witness().map(|q| q.to_string()),
            tables: phi
                .tables()
                .iter()
                .map(|t| t.iter().map(|(tau, c)| (carrier_token(tau), ComplexJson::from_complex(c))).collect())
                .collect(),
        }
    }
}

/// A C-refinement: per family, elements `{id, stars}` at `level`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CRefinementJson {
    pub kappa: usize,
    pub level: usize,
    pub families: Vec<Vec<ElementJson>>,
}

impl CRefinementJson {
    /// Elements are re-expressed at the common level.
    pub fn from_refinement(r: &CRefinement) -> Result<Self> {
        let level = r.level();
        let space = r.source().space();
        let families = r
            .families()
            .iter()
            .map(|f| {
                f.iter()
                    .map(|e| Ok(element_json(&CoverElement::new(e.id.clone(), e.star.push(space, level)?))))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        Ok(CRefinementJson { kappa: r.kappa(), level, families })
    }

    pub fn to_refinement(&self, source: &CoverSequence) -> Result<CRefinement> {
        if self.kappa != self.families.len() {
            return Err(Error::ArityError(format!(
                "kappa is {} but {} families are listed",
                self.kappa,
                self.families.len()
            )));
        }
        let families = self
            .families
            .iter()
            .map(|l| {
                l.iter()
                    .map(|e| {
                        Ok(CoverElement::new(
                            element_id(&e.id)?,
                            StarSet::new(self.level, e.stars.iter().map(Label::new))?,
                        ))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(CRefinement::new(families, source.clone()))
    }
}

/// Input of `cone-extend`: `g: Σ → T` and the chain `S_0 ⊆ … ⊆ S_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeExtendJson {
    pub source: ComplexJson,
    pub target: ComplexJson,
    pub map: BTreeMap<String, String>,
    pub apex: String,
    pub witness: String,
    pub chain: Vec<ComplexJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicialMapJson {
    pub source: ComplexJson,
    pub target: ComplexJson,
    pub map: BTreeMap<String, String>,
}

impl SimplicialMapJson {
    pub fn new(m: &crate::complex::SimplicialMap<Label, Label>) -> Self {
        SimplicialMapJson {
            source: ComplexJson::from_complex(m.source()),
            target: ComplexJson::from_complex(m.target()),
            map: m.images().iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        }
    }
}

/// A map from a nerve complex to a target complex, as `(vertex, image)`
/// entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkeletalMapJson {
    pub images: Vec<SkeletalImageJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkeletalImageJson {
    pub vertex: NerveVertexJson,
    pub image: String,
}

impl SkeletalMapJson {
    pub fn from_map(f: &crate::complex::SimplicialMap<NerveVertex, Label>) -> Self {
        SkeletalMapJson {
            images: f
                .images()
                .iter()
                .map(|(v, y)| SkeletalImageJson { vertex: v.into(), image: y.to_string() })
                .collect(),
        }
    }

    /// Validates against `Δ` of all levels of `cs` and the tables' target.
    pub fn to_map(
        &self,
        cs: &CoverSequence,
        phi: &CarrierMappingSequence,
    ) -> Result<crate::complex::SimplicialMap<NerveVertex, Label>> {
        let delta = crate::cover::delta_subcomplex(cs, cs.num_levels())?;
        let images = self.images.iter().map(|e| ((&e.vertex).into(), Label::new(&e.image))).collect();
        crate::complex::SimplicialMap::new(delta.complex, phi.target().clone(), images)
    }
}

/// DOT rendering of the 1-skeleton, annotated with the f-vector.
pub fn to_dot<V: Vertex>(name: &str, c: &SimplicialComplex<V>) -> String {
    let quote = |s: String| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(name.to_string())).unwrap();
    writeln!(out, "  label={};", quote(format!("f-vector: {:?}", c.f_vector()))).unwrap();
    for v in c.vertices() {
        writeln!(out, "  {};", quote(v.to_string())).unwrap();
    }
    for e in c.simplices_of_dim(1) {
        writeln!(out, "  {} -- {};", quote(e.vertices()[0].to_string()), quote(e.vertices()[1].to_string())).unwrap();
    }
    out.push_str("}\n");
    out
}
