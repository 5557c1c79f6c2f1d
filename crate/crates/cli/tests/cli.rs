use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::sync::Arc;

use serde_json::Value;

use nerve_core::cover::delta_subcomplex;
use nerve_core::fixtures;
use nerve_core::io::{CarrierMappingJson, CoverJson, SkeletalMapJson};
use nerve_core::selection::{lift_vertex_selection, vertex_selection, CarrierMappingSequence};
use nerve_core::{Label, SimplicialComplex};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn nervelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nervelab")).args(args).output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nervelab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path
}

#[test]
fn delta_dot_on_f_rem_matches_the_library() {
    let out = nervelab(&["delta", "--cover", p(&data("f-rem.json")), "--kappa", "2", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let dot = String::from_utf8(out.stdout).unwrap();
    let delta = delta_subcomplex(&fixtures::f_rem(), 2).unwrap();
    let edges = dot.lines().filter(|l| l.contains(" -- ")).count();
    assert_eq!(edges, delta.complex.simplices_of_dim(1).count());
    assert!(dot.contains(&format!("f-vector: {:?}", delta.complex.f_vector())));
    assert!(dot.contains("\"(P,0)\" -- \"(Q,1)\""));
}

#[test]
fn data_files_match_fixtures() {
    let raw: CoverJson = serde_json::from_str(&std::fs::read_to_string(data("f-rem.json")).unwrap()).unwrap();
    assert_eq!(raw.to_cover().unwrap(), fixtures::f_rem());
    let raw: CoverJson = serde_json::from_str(&std::fs::read_to_string(data("f-tri-stars.json")).unwrap()).unwrap();
    assert_eq!(raw.to_cover().unwrap(), fixtures::f_tri_stars());
}

#[test]
fn nerve_json_has_schema_version_and_is_deterministic() {
    let cover = data("f-rem.json");
    let args = ["nerve", p(&cover), "--kappa", "omega"];
    let a = nervelab(&args);
    let b = nervelab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["kind"], "nerve");
}

#[test]
fn selftest_passes_every_row() {
    let out = nervelab(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("9 passed, 0 failed"), "{text}");
    let out = nervelab(&["selftest", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["ok"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|r| r["cases"].as_u64().unwrap() > 0));
}

#[test]
fn mu_driver_dim_one_exhausts_with_exit_three() {
    let out = nervelab(&["mu-driver", "--mode", "dim:1", "--max-level", "2", p(&data("f-tri-stars.json"))]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["status"], "exhausted");
    assert!(v["model"].as_str().unwrap().contains("star-sets"));
    let attempts = v["attempts"].as_array().unwrap();
    assert_eq!(attempts.len(), 2);
    assert!(attempts.iter().all(|a| a["found_level"].is_null() && a["fully_accounted"] == true));
}

#[test]
fn mu_driver_dim_two_succeeds() {
    let out = nervelab(&["mu-driver", "--mode", "dim:2", "--max-level", "2", p(&data("f-tri-stars.json"))]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["round_trip"]["kappa"], 3);
    assert_eq!(v["round_trip"]["holds"], true);
}

#[test]
fn schema_errors_exit_two_with_a_path() {
    let bad = r#"{"space":{"maximal_simplices":[["a","b"]]},"working_level":0,"levels":[[{"id":"P","stars":[1]}]]}"#;
    let out = with_stdin(&["nerve", "-"], bad);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("levels[0][0].stars[0]"), "{}", stderr(&out));
    let out = nervelab(&["nerve", p(&data("f-rem.json")), "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let out = nervelab(&["nerve", p(&data("f-rem.json")), "--kappa", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stdin_and_out_flag() {
    let text = std::fs::read_to_string(data("f-rem.json")).unwrap();
    let from_stdin = with_stdin(&["delta", "--cover", "-", "--kappa", "2"], &text);
    assert_eq!(from_stdin.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("delta.json");
    let out = nervelab(&["delta", p(&data("f-rem.json")), "--kappa", "2", "--out", p(&target)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&target).unwrap(), from_stdin.stdout);
}

#[test]
fn unindexed_delta_drops_the_cross_level_edge() {
    let cover = data("f-rem.json");
    let small = json(&nervelab(&["delta", p(&cover), "--kappa", "2", "--unindexed"]));
    let big = json(&nervelab(&["delta", p(&cover), "--kappa", "3", "--unindexed"]));
    let pq = serde_json::json!(["P", "Q"]);
    assert!(small["complex"]["simplices"].as_array().unwrap().contains(&pq));
    assert!(!big["complex"]["simplices"].as_array().unwrap().contains(&pq));
}

#[test]
fn canonical_build_then_check_and_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    let cover = data("f-tri-stars.json");
    let built = json(&nervelab(&["canonical", "build", p(&cover), "--kappa", "2"]));
    let map = write(dir.path(), "map.json", &built["map"]);
    let out = nervelab(&["canonical", "check", p(&cover), "--map", p(&map), "--kappa", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ok"], true);
    let out = nervelab(&["selection", "check", p(&cover), "--map", p(&map), "--kappa", "2"]);
    assert_eq!(out.status.code(), Some(0));

    // `a` to the star of `b` is still simplicial (the two stars meet) but
    // not canonical.
    let mut bad = built["map"].clone();
    bad["vertex_images"]["a"] = serde_json::json!(["b", 0]);
    let map = write(dir.path(), "bad.json", &bad);
    let out = nervelab(&["canonical", "check", p(&cover), "--map", p(&map), "--kappa", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["ok"], false);
    assert_eq!(v["witness"]["vertex"], serde_json::json!(["b", 0]));
    let out = nervelab(&["selection", "check", p(&cover), "--map", p(&map), "--kappa", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let witness = json(&out)["witness"]["simplex"].clone();
    assert!(witness.as_array().unwrap().contains(&serde_json::json!("a")), "{witness}");
}

#[test]
fn crefine_construct_verify_and_search() {
    let dir = tempfile::tempdir().unwrap();
    let cover = data("f-tri-stars.json");
    let built = json(&nervelab(&["crefine", "construct", p(&cover), "--n", "2"]));
    assert_eq!(built["shape"], serde_json::json!([7, 12, 6]));
    let r = write(dir.path(), "r.json", &built["refinement"]);
    let out = nervelab(&["crefine", "verify", "--cover", p(&cover), "--refinement", p(&r)]);
    assert_eq!(out.status.code(), Some(0));

    let mut broken = built["refinement"].clone();
    broken["families"][0] = serde_json::json!([]);
    let r = write(dir.path(), "broken.json", &broken);
    let out = nervelab(&["crefine", "verify", "--cover", p(&cover), "--refinement", p(&r)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness"]["violation"], "uncovered");

    let out = nervelab(&["crefine", "search", p(&cover), "--kappa", "2", "--max-level", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["fully_accounted"], true);
    let out = nervelab(&["crefine", "search", p(&data("f-edge-stars.json")), "--kappa", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["found_level"], 1);
    let out = nervelab(&["crefine", "construct", p(&cover), "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dim_and_complex() {
    assert_eq!(json(&nervelab(&["dim", "--space", p(&data("f-tri.json"))]))["dim"], 2);
    let v = json(&nervelab(&["complex", p(&data("f-tri.json")), "--level", "1"]));
    assert_eq!(v["f_vector"], serde_json::json!([7, 12, 6]));
    let out = nervelab(&["dim", p(&data("f-tri.json")), "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cone_extend_command() {
    let dir = tempfile::tempdir().unwrap();
    let input = serde_json::json!({
        "source": {"maximal_simplices": [["a"], ["b"]]},
        "target": {"maximal_simplices": [["y_a", "y_b", "q"]]},
        "map": {"a": "y_a", "b": "y_b"},
        "apex": "v",
        "witness": "q",
        "chain": [
            {"maximal_simplices": [["y_a"], ["y_b"], ["q"]]},
            {"maximal_simplices": [["y_a", "y_b", "q"]]}
        ]
    });
    let path = write(dir.path(), "cone.json", &input);
    let out = nervelab(&["cone-extend", "--input", p(&path)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["map"]["v"], "q");
    assert_eq!(v["source"]["maximal_simplices"], serde_json::json!([["a", "v"], ["b", "v"]]));

    let mut literal = input.clone();
    literal["chain"][0] = serde_json::json!({"maximal_simplices": [["y_a"], ["y_b"]]});
    let path = write(dir.path(), "literal.json", &literal);
    let out = nervelab(&["cone-extend", p(&path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cone witness"), "{}", stderr(&out));
}

fn cone_phi() -> CarrierMappingSequence {
    let l = Label::new;
    let base = SimplicialComplex::validate([vec![l("y1")], vec![l("y2")], vec![l("q")]]).unwrap();
    let target = Arc::new(SimplicialComplex::validate([vec![l("y1"), l("y2"), l("q")]]).unwrap());
    CarrierMappingSequence::constant_cones(fixtures::f_edge(), 1, target, &base, l("q"), 3).unwrap()
}

#[test]
fn selection_vertex_skeletal_extend() {
    let dir = tempfile::tempdir().unwrap();
    let phi = cone_phi();
    let phi_path =
        write(dir.path(), "phi.json", &serde_json::to_value(CarrierMappingJson::from_sequence(&phi)).unwrap());
    let out = nervelab(&["selection", "vertex", "--phi", p(&phi_path)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["ok"], true);

    let sel = vertex_selection(&phi).unwrap();
    let (cs, f) = lift_vertex_selection(&sel, &phi).unwrap();
    let cover = write(dir.path(), "cover.json", &serde_json::to_value(CoverJson::from_cover(&cs)).unwrap());
    let map = write(dir.path(), "map.json", &serde_json::to_value(SkeletalMapJson::from_map(&f)).unwrap());
    let out = nervelab(&["selection", "skeletal", p(&cover), "--phi", p(&phi_path), "--map", p(&map)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let mut cover_path = cover;
    let mut map_path = map;
    for step in 0..2 {
        let out = nervelab(&["selection", "extend", p(&cover_path), "--phi", p(&phi_path), "--map", p(&map_path)]);
        assert_eq!(out.status.code(), Some(0), "step {step}: {}", stderr(&out));
        let v = json(&out);
        cover_path = write(dir.path(), &format!("cover{step}.json"), &v["cover"]);
        map_path = write(dir.path(), &format!("map{step}.json"), &v["map"]);
        let out = nervelab(&["selection", "skeletal", p(&cover_path), "--phi", p(&phi_path), "--map", p(&map_path)]);
        assert_eq!(out.status.code(), Some(0), "step {step}: {}", stderr(&out));
        assert_eq!(json(&out)["levels"], step + 2);
    }
}

#[test]
fn outputs_feed_back_as_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let cover = data("f-tri-stars.json");
    let save = |name: &str, out: Output| {
        let path = dir.path().join(name);
        std::fs::write(&path, &out.stdout).unwrap();
        path
    };
    let r = save("r.json", nervelab(&["crefine", "construct", p(&cover), "--n", "2"]));
    let out = nervelab(&["crefine", "verify", p(&cover), "--refinement", p(&r)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let m = save("m.json", nervelab(&["canonical", "build", p(&cover), "--kappa", "3"]));
    let out = nervelab(&["canonical", "check", p(&cover), "--map", p(&m), "--kappa", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    // An exhausted search has no refinement to verify.
    let s = save("s.json", nervelab(&["crefine", "search", p(&cover), "--kappa", "2"]));
    let out = nervelab(&["crefine", "verify", p(&cover), "--refinement", p(&s)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("at refinement:"), "{}", stderr(&out));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&r).unwrap()).unwrap();
    v["schema_version"] = serde_json::json!(2);
    let r2 = write(dir.path(), "r2.json", &v);
    let out = nervelab(&["crefine", "verify", p(&cover), "--refinement", p(&r2)]);
    assert_eq!(out.status.code(), Some(2));
}
