use std::path::{Path, PathBuf};
use std::process::Command;

use qform::cli::execute;
use qform::cli::json::{to_value, FormDoc, IsoDoc, QfDoc, SubgroupDoc};
use qform::lmonoid::zero_formation;
use qform::samples::{rng, MetabolicSample};
use qform::{AbGroup, EQForm, SubgroupRep};
use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

struct Scratch {
    dir: tempfile::TempDir,
}

impl Scratch {
    fn new() -> Self {
        Scratch { dir: tempfile::tempdir().unwrap() }
    }

    fn put(&self, name: &str, v: &Value) -> String {
        let p = self.dir.path().join(name);
        std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
        p.display().to_string()
    }
}

fn run(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["qform"];
    argv.extend_from_slice(args);
    let o = execute(argv);
    assert!(o.output.ends_with('\n'));
    (o.code, serde_json::from_str(&o.output).unwrap())
}

fn ok(args: &[&str]) -> Value {
    let (code, v) = run(args);
    assert_eq!(code, 0, "{v}");
    v
}

fn validates(s: &Scratch, v: &Value) -> Value {
    let p = s.put("result.json", v);
    ok(&["validate", "--input", &p])
}

fn sample(seed: u64, target: &AbGroup, v: &[u8], planes: usize) -> MetabolicSample {
    MetabolicSample::random(&mut rng(seed), target, v, planes).unwrap()
}

#[test]
fn si_and_stable_class_examples() {
    let v = ok(&["si", "--a", "1", "--b", "6"]);
    assert_eq!(v, json!({"size": 2, "reps": [[1, 6], [2, 3]]}));
    let o = execute(["qform", "si", "--a", "1", "--b", "6"]);
    assert_eq!(o.output, "{\"reps\":[[1,6],[2,3]],\"size\":2}\n");
    assert_eq!(ok(&["stable-class", "--rkq", "0"])["Sst"], json!(1));
    assert_eq!(ok(&["stable-class", "--rkq", "1", "--a", "1", "--b", "30"])["Sst"], json!(4));
    assert_eq!(ok(&["oracle-si", "--a", "-2", "--b", "3"]), ok(&["si", "--a", "-2", "--b", "3"]));
}

#[test]
fn validate_hyperbolic_plane() {
    let v = ok(&["validate", "--input", data("h2.json").to_str().unwrap()]);
    let d = &v["documents"][0];
    for flag in ["free", "nonsingular", "even", "geometric"] {
        assert_eq!(d[flag], json!(true), "{flag}");
    }
    assert_eq!(d["full"], json!(false));
    let inv = ok(&["invariants", "--input", data("h2.json").to_str().unwrap()]);
    assert_eq!(inv["rank"], json!(2));
}

#[test]
fn roundtrip_golden_files() {
    let canonical = std::fs::read_to_string(data("h2.json")).unwrap();
    assert_eq!(execute(["qform", "roundtrip", "--input", data("h2.json").to_str().unwrap()]).output, canonical);
    assert_eq!(execute(["qform", "roundtrip", "--input", data("h2_unsorted.json").to_str().unwrap()]).output, canonical);
    let golden = std::fs::read_to_string(data("torsion_qf.canonical.json")).unwrap();
    assert_eq!(execute(["qform", "roundtrip", "--input", data("torsion_qf.json").to_str().unwrap()]).output, golden);
    assert_eq!(execute(["qform", "roundtrip", "--input", data("torsion_qf.canonical.json").to_str().unwrap()]).output, golden);
}

#[test]
fn large_integers_are_strings() {
    let s = Scratch::new();
    let big = "123456789012345678901234567890";
    let doc = json!({"group": {"free_rank": 1, "torsion": []}, "lambda": [[big]], "mu": [], "target": {"free_rank": 0, "torsion": []}});
    let p = s.put("big.json", &doc);
    let out = execute(["qform", "roundtrip", "--input", &p]).output;
    assert!(out.contains(&format!("\"{big}\"")));
    let doc = json!({"group": {"free_rank": 1, "torsion": []}, "lambda": [[9007199254740993i64]], "mu": [], "target": {"free_rank": 0, "torsion": []}});
    let p = s.put("edge.json", &doc);
    assert!(execute(["qform", "roundtrip", "--input", &p]).output.contains("\"9007199254740993\""));
    let doc = json!({"group": {"free_rank": 1, "torsion": []}, "lambda": [[9007199254740991i64]], "mu": [], "target": {"free_rank": 0, "torsion": []}});
    let p = s.put("safe.json", &doc);
    assert!(execute(["qform", "roundtrip", "--input", &p]).output.contains("[[9007199254740991]]"));
}

#[test]
fn malformed_input_reports_path() {
    let s = Scratch::new();
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(data("torsion_qf.json")).unwrap()).unwrap();
    doc["form"]["lambda"][1][0] = json!(1.5);
    let p = s.put("bad.json", &doc);
    let (code, v) = run(&["validate", "--input", &p]);
    assert_eq!(code, 2);
    assert_eq!(v["path"], json!("form.lambda[1][0]"));

    doc["form"]["lambda"][1][0] = json!(1);
    doc["form"]["group"]["free_rank"] = json!("two");
    let p = s.put("bad2.json", &doc);
    let (code, v) = run(&["validate", "--input", &p]);
    assert_eq!(code, 2);
    assert_eq!(v["path"], json!("form.group.free_rank"));

    let p = s.dir.path().join("broken.json");
    std::fs::write(&p, "{\"group\": [1, 2").unwrap();
    let (code, v) = run(&["invariants", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("parse error"));

    let asym = json!({"group": {"free_rank": 2, "torsion": []}, "lambda": [[0, 1], [2, 0]], "mu": [[0, 0]], "target": {"free_rank": 1, "torsion": []}});
    let p = s.put("asym.json", &asym);
    let (code, v) = run(&["invariants", "--input", &p]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("symmetric"));
}

#[test]
fn exit_codes() {
    let s = Scratch::new();
    let h2 = data("h2.json");
    let (code, v) = run(&["oracle-lagrangians", "--input", h2.to_str().unwrap(), "--node-limit", "1"]);
    assert_eq!(code, 3);
    assert!(v["error"].as_str().unwrap().contains("budget"));
    let odd = json!({"group": {"free_rank": 1, "torsion": []}, "lambda": [[1]], "mu": [[0]], "target": {"free_rank": 1, "torsion": []}});
    let p = s.put("odd.json", &json!({"form": odd, "L": {"generators": [[1]]}}));
    let (code, v) = run(&["metabolic-basis", "--input", &p]);
    assert_eq!(code, 4);
    assert!(v["error"].as_str().unwrap().starts_with("hypothesis violated"));
    let (code, _) = run(&["stable-class", "--rkq", "1", "--a", "2", "--b", "4"]);
    assert_eq!(code, 4);
    let (code, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn binary_exit_codes_and_env_budget() {
    let bin = env!("CARGO_BIN_EXE_qform");
    let h2 = data("h2.json");
    let out = Command::new(bin).args(["validate", "--input", h2.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin).args(["oracle-lagrangians", "--input", h2.to_str().unwrap()]).env("QFORM_NODE_LIMIT", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(bin).args(["si", "--a", "1", "--b", "6"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"reps\":[[1,6],[2,3]],\"size\":2}\n");
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.json");
    let out = Command::new(bin).args(["si", "--a", "2", "--b", "3", "--output", target.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(target).unwrap(), "{\"reps\":[[1,6],[2,3]],\"size\":2}\n");
}

#[test]
fn perp_and_classify() {
    let s = Scratch::new();
    let h2: Value = serde_json::from_str(&std::fs::read_to_string(data("h2.json")).unwrap()).unwrap();
    let p = s.put("in.json", &json!({"form": h2, "subgroup": {"generators": [[1, 0]]}}));
    assert_eq!(ok(&["perp", "--input", &p])["perp"], json!({"generators": [[1, 0]]}));
    let c = ok(&["classify", "--input", &p]);
    assert_eq!(c["free_lagrangian"], json!(true));
    assert_eq!(c["t_lagrangian"], json!(true));
}

#[test]
fn metabolic_basis_and_stable_iso_witnesses() {
    let s = Scratch::new();
    let z = AbGroup::free(1);
    let a = sample(11, &z, &[1], 1);
    let b = sample(12, &z, &[1], 2);
    let side = |m: &MetabolicSample| json!({"form": to_value(&FormDoc::new(&m.form)), "L": to_value(&SubgroupDoc::new(&m.lagrangian))});
    let p = s.put("mb.json", &side(&a));
    let mb = ok(&["metabolic-basis", "--input", &p]);
    assert_eq!(mb["e"].as_array().unwrap().len(), 2);
    validates(&s, &mb);

    let p = s.put("si.json", &json!({"source": side(&a), "target": side(&b)}));
    let st = ok(&["stable-iso", "--input", &p]);
    assert_eq!(st["k"].as_u64().unwrap() * 2 + 4, st["l"].as_u64().unwrap() * 2 + 6);
    let checked = validates(&s, &st);
    assert_eq!(checked["documents"][0]["kind"], json!("stable-iso"));

    let mut tampered = st.clone();
    let m = &mut tampered["witness"]["iso"]["matrix"];
    m[0][0] = json!(m[0][0].as_i64().unwrap() + 1);
    let p = s.put("t.json", &tampered);
    assert_eq!(run(&["validate", "--input", &p]).0, 2);
}

#[test]
fn ru_wall_witness_validates() {
    let s = Scratch::new();
    let m = sample(5, &AbGroup::trivial(), &[], 2);
    let phi = m.random_automorphism(&mut rng(6), 4).unwrap();
    let p = s.put(
        "rw.json",
        &json!({"form": to_value(&FormDoc::new(&m.form)), "L": to_value(&SubgroupDoc::new(&m.lagrangian)), "phi": to_value(&IsoDoc::new(&phi))["matrix"]}),
    );
    let out = ok(&["ru-wall", "--input", &p]);
    let v = validates(&s, &out);
    assert_eq!(v["documents"][0]["kind"], json!("ru-wall"));
}

#[test]
fn formation_commands() {
    let s = Scratch::new();
    let p = s.put("z.json", &json!({"target": {"free_rank": 1, "torsion": []}, "v": [0]}));
    let zf = ok(&["zero-form", "--input", &p]);
    assert_eq!(zf["formation"], to_value(&QfDoc::new(&zero_formation(&AbGroup::free(1), &[0]).unwrap())));

    let q = zero_formation(&AbGroup::free(1), &[0]).unwrap();
    let p = s.put("q.json", &to_value(&QfDoc::new(&q)));
    let e = ok(&["elementary", "--input", &p]);
    assert_eq!(e["elementary"], json!(false));
    assert_eq!(e["l_element"], json!(true));
    let lt = ok(&["ltriv", "--input", &p]);
    let v = validates(&s, &lt);
    assert!(v["documents"].as_array().unwrap().iter().any(|d| d["kind"] == json!("move-sequence")));

    let tq = data("torsion_qf.json");
    let bar = ok(&["bar", "--input", tq.to_str().unwrap()]);
    assert_eq!(bar["torsion"], json!({"free_rank": 0, "torsion": [2]}));
    validates(&s, &bar);
}

#[test]
fn jacobi_sequence_validates() {
    let s = Scratch::new();
    let h = EQForm::hyperbolic(1, &AbGroup::trivial()).with_v(Some(vec![])).unwrap();
    let sub = |x: [i64; 2]| SubgroupRep::new(h.group(), &[vec![x[0].into(), x[1].into()]]).unwrap();
    let doc = json!({
        "form": to_value(&FormDoc::new(&h)),
        "K": to_value(&SubgroupDoc::new(&sub([1, 0]))),
        "L": to_value(&SubgroupDoc::new(&sub([0, 1]))),
        "V": to_value(&SubgroupDoc::new(&sub([1, 1]))),
    });
    let p = s.put("j.json", &doc);
    let out = ok(&["jacobi", "--input", &p]);
    let v = validates(&s, &out);
    assert!(v["documents"].as_array().unwrap().iter().any(|d| d["kind"] == json!("move-sequence")));
}

#[test]
fn kappa_and_oracle_iso() {
    let s = Scratch::new();
    let k = ok(&["kappa", "--a", "2", "--b", "3"]);
    assert_eq!(k["kappa"]["lambda"], json!([[12]]));
    validates(&s, &k);
    let e = to_value(&FormDoc::new(&qform::stableclass::e_ab(&6.into(), &1.into())));
    let f = to_value(&FormDoc::new(&qform::stableclass::e_ab(&1.into(), &6.into())));
    let p = s.put("e.json", &e);
    assert_eq!(ok(&["kappa", "--input", &p])["kappa"]["lambda"], json!([[12]]));
    let p = s.put("iso.json", &json!({"source": e, "target": f}));
    let r = ok(&["oracle-iso", "--input", &p]);
    assert_eq!(r["result"], json!("found"));
    validates(&s, &r);
    let g = to_value(&FormDoc::new(&qform::stableclass::e_ab(&2.into(), &3.into())));
    let p = s.put("iso2.json", &json!({"source": f, "target": g}));
    assert_eq!(ok(&["oracle-iso", "--input", &p])["result"], json!("exhaustively-none"));
    let r = ok(&["oracle-iso", "--input", &p, "--max-stab", "1", "--entry-bound", "9"]);
    assert_eq!(r["result"], json!("found"));
    assert_eq!((r["k"].clone(), r["l"].clone()), (json!(1), json!(1)));
}

#[test]
fn si_from_a_form() {
    let s = Scratch::new();
    let e = to_value(&FormDoc::new(&qform::stableclass::e_ab(&2.into(), &15.into())));
    let p = s.put("e.json", &e);
    let r = ok(&["si", "--input", &p]);
    assert_eq!(r["size"], json!(4));
    assert_eq!(r["representatives"].as_array().unwrap().len(), 4);
}
