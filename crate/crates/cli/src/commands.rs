use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use nerve_core::cover::{delta_subcomplex, nerve, unindexed_delta};
use nerve_core::dimension::{
    dim_oracle, mu_driver, ostrand_refine, search_c_refinement, verify_c_refinement, CRefinement, MuReport, RoundTrip,
    SearchOutcome,
};
use nerve_core::io::{
    to_dot, to_json, CRefinementJson, CanonicalMapJson, CarrierMappingJson, ComplexJson, ComplexReport, ConeExtendJson,
    CoverJson, ElementJson, NerveJson, NerveVertexJson, SimplicialMapJson, SkeletalMapJson,
};
use nerve_core::selection::{
    build_canonical, canonical_violation, cone_extend, extend_skeletal_selection, extract_c_refinement,
    is_skeletal_selection, selection_violation, skeletal_violation, vertex_selection, vertex_selection_violation,
    CanonicalMap, CarrierMappingSequence, SkeletalWitness,
};
use nerve_core::{CoverSequence, Kappa, Label, NerveKind, NerveVertex, SimplicialMap};

use crate::input::{load, load_doc, validate, CliError, CliResult};
use crate::{CanonicalCmd, Cli, Command, CrefineCmd, Format, KindArg, SelectionCmd};

/// What the search results are relative to, stated in every search report.
const MODEL: &str =
    "open sets restricted to star-sets of barycentric subdivisions; levels searched up to max_level only";

/// `--kappa`: a positive number of levels or `omega`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KappaArg(pub Kappa);

impl FromStr for KappaArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "omega" {
            return Ok(KappaArg(Kappa::Omega));
        }
        s.parse::<usize>()
            .map(|k| KappaArg(Kappa::Finite(k)))
            .map_err(|_| format!("expected a number of levels or `omega`, got {s:?}"))
    }
}

impl KappaArg {
    fn resolve(self, cs: &CoverSequence) -> CliResult<usize> {
        validate("--kappa", self.0.resolve(cs.num_levels()))
    }
}

fn load_cover(path: &Path) -> CliResult<CoverSequence> {
    let raw: CoverJson = load_doc(path, Some("cover"))?;
    validate(&path.display().to_string(), raw.to_cover())
}

fn load_phi(path: &Path) -> CliResult<CarrierMappingSequence> {
    let raw: CarrierMappingJson = load(path)?;
    validate(&path.display().to_string(), raw.to_sequence())
}

fn load_canonical(path: &Path, cs: &CoverSequence, kappa: usize, kind: NerveKind) -> CliResult<CanonicalMap> {
    let raw: CanonicalMapJson = load_doc(path, Some("map"))?;
    validate(&path.display().to_string(), raw.to_map(cs, kappa, kind))
}

fn write(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_only(cli: &Cli, command: &str) -> CliResult<()> {
    match cli.format {
        Some(Format::Dot) => Err(CliError::Input(format!("`{command}` has no DOT output; use --format json"))),
        _ => Ok(()),
    }
}

fn emit<T: Serialize>(cli: &Cli, payload: T) -> CliResult<()> {
    write(cli, &to_json(payload))
}

/// A predicate result: `{"ok": .., "witness": ..}` plus details; exit 1 when
/// the predicate fails.
fn emit_check(cli: &Cli, ok: bool, witness: Value, mut extra: serde_json::Map<String, Value>) -> CliResult<u8> {
    extra.insert("ok".into(), Value::Bool(ok));
    extra.insert("witness".into(), witness);
    emit(cli, extra)?;
    Ok(if ok { 0 } else { 1 })
}

fn labels(s: &nerve_core::Simplex<Label>) -> Vec<String> {
    s.iter().map(|v| v.to_string()).collect()
}

fn nerve_simplex(vs: &[NerveVertex]) -> Vec<NerveVertexJson> {
    vs.iter().map(NerveVertexJson::from).collect()
}

fn skeletal_witness(w: &SkeletalWitness) -> Value {
    json!({
        "table": w.table,
        "carrier": w.carrier,
        "simplex": nerve_simplex(&w.simplex),
        "image": w.image,
    })
}

fn families(r: &CRefinement) -> CliResult<CRefinementJson> {
    Ok(CRefinementJson::from_refinement(r)?)
}

pub fn run(cli: &Cli) -> CliResult<u8> {
    match &cli.command {
        Command::Complex { space, level } => {
            let raw: ComplexJson = load(space.path()?)?;
            let space = validate("complex", raw.to_space())?;
            let stage = space.stage(*level)?;
            match cli.format {
                Some(Format::Dot) => write(cli, &to_dot(&format!("level {level}"), stage.complex()))?,
                _ => emit(cli, ComplexReport::new(*level, stage.complex()))?,
            }
            Ok(0)
        }
        Command::Nerve { cover, kappa } => {
            let cs = load_cover(cover.path()?)?;
            let k = kappa.resolve(&cs)?;
            let n = nerve(&cs, k)?;
            match cli.format {
                Some(Format::Dot) => write(cli, &to_dot(&format!("nerve kappa={k}"), &n.complex))?,
                _ => emit(cli, NerveJson::new(&n))?,
            }
            Ok(0)
        }
        Command::Delta { cover, kappa, unindexed } => {
            let cs = load_cover(cover.path()?)?;
            let k = kappa.resolve(&cs)?;
            if *unindexed {
                let c = unindexed_delta(&cs, k)?;
                match cli.format {
                    Some(Format::Dot) => write(cli, &to_dot(&format!("unindexed delta kappa={k}"), &c))?,
                    _ => emit(
                        cli,
                        json!({ "kind": "unindexed_delta", "kappa": k, "complex": ComplexReport::new(cs.working_level(), &c) }),
                    )?,
                }
            } else {
                let d = delta_subcomplex(&cs, k)?;
                match cli.format {
                    Some(Format::Dot) => write(cli, &to_dot(&format!("delta kappa={k}"), &d.complex))?,
                    _ => emit(cli, NerveJson::new(&d))?,
                }
            }
            Ok(0)
        }
        Command::Canonical(cmd) => {
            json_only(cli, "canonical")?;
            canonical(cli, cmd)
        }
        Command::Selection(cmd) => {
            json_only(cli, "selection")?;
            selection(cli, cmd)
        }
        Command::Crefine(cmd) => {
            json_only(cli, "crefine")?;
            crefine(cli, cmd)
        }
        Command::Dim { space } => {
            json_only(cli, "dim")?;
            let raw: ComplexJson = load(space.path()?)?;
            let space = validate("complex", raw.to_space())?;
            emit(cli, json!({ "dim": dim_oracle(&space) }))?;
            Ok(0)
        }
        Command::ConeExtend { input } => {
            json_only(cli, "cone-extend")?;
            let path = input.path()?;
            let raw: ConeExtendJson = load(path)?;
            let name = path.display().to_string();
            let source = validate(&name, raw.source.to_complex())?;
            let target = validate(&name, raw.target.to_complex())?;
            let images = raw.map.iter().map(|(a, b)| (Label::new(a), Label::new(b))).collect();
            let g = validate(&name, SimplicialMap::new(source.into(), target.into(), images))?;
            let chain = raw.chain.iter().map(|c| validate(&name, c.to_complex())).collect::<CliResult<Vec<_>>>()?;
            let h = cone_extend(&g, Label::new(&raw.apex), Label::new(&raw.witness), &chain)?;
            emit(cli, SimplicialMapJson::new(&h))?;
            Ok(0)
        }
        Command::MuDriver { cover, mode, max_level } => {
            json_only(cli, "mu-driver")?;
            let cs = load_cover(cover.path()?)?;
            let report = mu_driver(&cs, *mode, *max_level);
            emit(cli, mu_report(&report)?)?;
            Ok(if report.success() {
                0
            } else if report.error.is_none() {
                3
            } else {
                1
            })
        }
        Command::Selftest => {
            let rows = crate::selftest::run();
            let ok = rows.iter().all(|r| r.ok());
            match cli.format {
                Some(Format::Json) => emit(cli, json!({ "ok": ok, "checks": rows }))?,
                Some(Format::Dot) => return Err(CliError::Input("`selftest` has no DOT output".into())),
                None => write(cli, &crate::selftest::table(&rows))?,
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn canonical(cli: &Cli, cmd: &CanonicalCmd) -> CliResult<u8> {
    match cmd {
        CanonicalCmd::Build { cover, kappa, kind } => {
            let cs = load_cover(cover.path()?)?;
            let k = kappa.resolve(&cs)?;
            let f = build_canonical(&cs, k, (*kind).into())?;
            emit(cli, json!({ "kappa": k, "kind": kind_str(*kind), "map": CanonicalMapJson::from_map(&f) }))?;
            Ok(0)
        }
        CanonicalCmd::Check { cover, map, kappa, kind } => {
            let cs = load_cover(cover.path()?)?;
            let k = kappa.resolve(&cs)?;
            let f = load_canonical(map, &cs, k, (*kind).into())?;
            let witness = match canonical_violation(&f, &cs, k)? {
                Some(v) => json!({
                    "vertex": NerveVertexJson::from(&v),
                    "preimage_star": f.preimage_star(&v).map(|s| s.core().iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                    "element": cs.core(&v)?.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }),
                None => Value::Null,
            };
            let extra = details([("kappa", json!(k)), ("kind", json!(kind_str(*kind)))]);
            emit_check(cli, witness.is_null(), witness, extra)
        }
    }
}

fn kind_str(kind: KindArg) -> &'static str {
    nerve_core::io::kind_name(kind.into())
}

fn details<const N: usize>(items: [(&str, Value); N]) -> serde_json::Map<String, Value> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn selection(cli: &Cli, cmd: &SelectionCmd) -> CliResult<u8> {
    match cmd {
        SelectionCmd::Check { cover, map, kappa, kind } => {
            let cs = load_cover(cover.path()?)?;
            let k = kappa.resolve(&cs)?;
            let f = load_canonical(map, &cs, k, (*kind).into())?;
            let witness = match selection_violation(&f, &cs, k)? {
                Some(tau) => json!({
                    "simplex": labels(&tau),
                    "image": nerve_simplex(f.map.image(&tau).vertices()),
                }),
                None => Value::Null,
            };
            let extra = details([("kappa", json!(k)), ("kind", json!(kind_str(*kind)))]);
            emit_check(cli, witness.is_null(), witness, extra)
        }
        SelectionCmd::Vertex { phi } => {
            let phi = load_phi(phi.path()?)?;
            let sel = vertex_selection(&phi)?;
            let witness = match vertex_selection_violation(&sel, &phi)? {
                Some((id, tau)) => json!({ "element": id, "carrier": labels(&tau) }),
                None => Value::Null,
            };
            let extra = details([
                ("level", json!(sel.level)),
                ("cover", json!(sel.cover.iter().map(ElementJson::from).collect::<Vec<_>>())),
                ("vertex_map", json!(sel.vertex_map)),
            ]);
            emit_check(cli, witness.is_null(), witness, extra)
        }
        SelectionCmd::Skeletal { cover, phi, map } => {
            let cs = load_cover(cover.path()?)?;
            let phi = load_phi(phi)?;
            let f = load_skeletal(map, &cs, &phi)?;
            let witness = skeletal_violation(&f, &cs, &phi)?.map_or(Value::Null, |w| skeletal_witness(&w));
            emit_check(cli, witness.is_null(), witness, details([("levels", json!(cs.num_levels()))]))
        }
        SelectionCmd::Extend { cover, phi, map } => {
            let cs = load_cover(cover.path()?)?;
            let phi = load_phi(phi)?;
            let f = load_skeletal(map, &cs, &phi)?;
            let (next_cs, next_f) = extend_skeletal_selection(&f, &cs, &phi)?;
            let ok = is_skeletal_selection(&next_f, &next_cs, &phi)?;
            emit(
                cli,
                json!({
                    "ok": ok,
                    "cover": CoverJson::from_cover(&next_cs),
                    "map": SkeletalMapJson::from_map(&next_f),
                }),
            )?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn load_skeletal(
    path: &Path,
    cs: &CoverSequence,
    phi: &CarrierMappingSequence,
) -> CliResult<SimplicialMap<NerveVertex, Label>> {
    let raw: SkeletalMapJson = load_doc(path, Some("map"))?;
    validate(&path.display().to_string(), raw.to_map(cs, phi))
}

fn crefine(cli: &Cli, cmd: &CrefineCmd) -> CliResult<u8> {
    match cmd {
        CrefineCmd::Construct { cover, n } => {
            let cs = load_cover(cover.path()?)?;
            let r = ostrand_refine(&cs, *n)?;
            emit(cli, json!({ "refinement": families(&r)?, "shape": r.shape() }))?;
            Ok(0)
        }
        CrefineCmd::Search { cover, kappa, max_level } => {
            let cs = load_cover(cover.path()?)?;
            let out = search_c_refinement(&cs, *kappa, *max_level)?;
            let (status, level, refinement, code) = match &out {
                SearchOutcome::Found { refinement, level, .. } => {
                    ("found", Some(*level), Some(families(refinement)?), 0)
                }
                SearchOutcome::Exhausted { .. } => ("exhausted", None, None, 3),
            };
            emit(
                cli,
                json!({
                    "status": status,
                    "kappa": kappa,
                    "max_level": max_level,
                    "model": MODEL,
                    "found_level": level,
                    "refinement": refinement,
                    "audits": out.audits(),
                    "fully_accounted": out.audits().iter().filter(|a| !a.found).all(|a| a.fully_accounted()),
                }),
            )?;
            Ok(code)
        }
        CrefineCmd::Verify { cover, refinement } => {
            let cs = load_cover(cover.path()?)?;
            let raw: CRefinementJson = load_doc(refinement, Some("refinement"))?;
            let r = validate(&refinement.display().to_string(), raw.to_refinement(&cs))?;
            let witness = verify_c_refinement(&r)?.map_or(Value::Null, |v| json!(v));
            emit_check(cli, witness.is_null(), witness, details([("kappa", json!(r.kappa()))]))
        }
        CrefineCmd::Extract { cover, map, kappa, kind } => {
            let cs = load_cover(cover.path()?)?;
            let k = kappa.resolve(&cs)?;
            let f = load_canonical(map, &cs, k, (*kind).into())?;
            let r = extract_c_refinement(&f, &cs, k)?;
            let violation = verify_c_refinement(&r)?;
            let ok = violation.is_none();
            emit(cli, json!({ "ok": ok, "witness": violation, "refinement": families(&r)? }))?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn round_trip_json(rt: &RoundTrip) -> CliResult<Value> {
    Ok(json!({
        "kappa": rt.kappa,
        "refinement": families(&rt.refinement)?,
        "refinement_violation": rt.refinement_violation,
        "canonical_map": CanonicalMapJson::from_map(&rt.canonical),
        "is_canonical": rt.is_canonical,
        "is_selection": rt.is_selection,
        "extracted": families(&rt.extracted)?,
        "extracted_violation": rt.extracted_violation,
        "holds": rt.holds(),
    }))
}

fn mu_report(report: &MuReport) -> CliResult<Value> {
    let status = if report.success() {
        "success"
    } else if report.error.is_some() {
        "error"
    } else {
        "exhausted"
    };
    let attempts: Vec<Value> = report
        .attempts
        .iter()
        .map(|a| {
            json!({
                "kappa": a.kappa,
                "method": a.method,
                "found_level": a.found_level,
                "audits": a.audits,
                "fully_accounted": a.audits.iter().filter(|x| !x.found).all(|x| x.fully_accounted()),
            })
        })
        .collect();
    let mut out = BTreeMap::new();
    out.insert("status", json!(status));
    out.insert("mode", json!(report.mode));
    out.insert("dim", json!(report.dim));
    out.insert("max_level", json!(report.max_level));
    out.insert("model", json!(MODEL));
    out.insert("attempts", json!(attempts));
    out.insert(
        "round_trip",
        match &report.round_trip {
            Some(rt) => round_trip_json(rt)?,
            None => Value::Null,
        },
    );
    out.insert("error", report.error.as_ref().map_or(Value::Null, |e| json!(e.to_string())));
    Ok(json!(out))
}
