use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use liepool::lie::{close, default_max_dim};
use liepool::model::{target_support, ModelSystem};
use liepool::sim::bitstring;
use liepool::PauliSum;
use serde_json::Value;
use tempfile::TempDir;

const MODEL_GENERATORS: &str = "\
# double, beta single, alpha single
layout: 2
1 2^ 3^ 0 1
-1 1^ 0^ 3 2
---
1 3^ 1
-1 1^ 3
---
1 2^ 0
-1 0^ 2
";

fn liepool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liepool"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_ok(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn basis(v: &Value) -> Vec<PauliSum> {
    v["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| {
            let lines: Vec<&str> = b["terms"]
                .as_array()
                .unwrap()
                .iter()
                .map(|l| l.as_str().unwrap())
                .collect();
            PauliSum::parse(&lines.join("\n")).unwrap()
        })
        .collect()
}

#[test]
fn closure_of_the_model_generators() {
    let dir = TempDir::new().unwrap();
    let gen = write(&dir, "model.gen", MODEL_GENERATORS);
    let v = json_ok(&liepool(&["closure", "--input", s(&gen)]));
    assert_eq!(v["dimension"], 8);
    assert_eq!(v["center"]["dimension"], 2);
    assert_eq!(v["generators"], 3);
    assert_eq!(v["abelian"], false);

    // Operator strings re-parse to exactly the library's basis.
    let lib = close(&ModelSystem::new().generators(), default_max_dim(4)).unwrap();
    let parsed = basis(&v);
    assert_eq!(parsed.len(), lib.dim());
    for (a, b) in parsed.iter().zip(lib.basis()) {
        assert_eq!(a, b);
    }
}

#[test]
fn small_closures() {
    let dir = TempDir::new().unwrap();
    let xy = write(&dir, "xy.gen", "1 X\n---\n1 Y\n");
    assert_eq!(
        json_ok(&liepool(&["closure", "--input", s(&xy)]))["dimension"],
        3
    );
    let comm = write(&dir, "zz.gen", "1 ZI\n---\n1 IZ\n---\n1 ZZ\n");
    let v = json_ok(&liepool(&["closure", "--input", s(&comm)]));
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["abelian"], true);
    assert_eq!(v["center"]["dimension"], 3);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let gen = write(&dir, "model.gen", MODEL_GENERATORS);
    assert_eq!(
        liepool(&["closure", "--input", s(&gen), "--max-dim", "5"])
            .status
            .code(),
        Some(3)
    );
    let bad = write(&dir, "bad.gen", "1 Q\n");
    assert_eq!(
        liepool(&["closure", "--input", s(&bad)]).status.code(),
        Some(2)
    );
    let missing = dir.path().join("missing.gen");
    assert_eq!(
        liepool(&["closure", "--input", s(&missing)]).status.code(),
        Some(1)
    );
    assert_eq!(
        liepool(&["closure", "--input", s(&gen), "--max-dim", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        liepool(&["closure", "--input", s(&gen), "--qubits", "6"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn symmetrize_model_and_anticommuting_sets() {
    let dir = TempDir::new().unwrap();
    let gen = write(&dir, "model.gen", MODEL_GENERATORS);
    // Literal Ne, Sz, S^2 keeps C1 - C2 as well; the singlet condition removes it.
    let literal = json_ok(&liepool(&["symmetrize", "--input", s(&gen)]));
    assert_eq!(literal["dimension"], 5);
    assert_eq!(literal["input_dimension"], 8);
    let singlet = json_ok(&liepool(&[
        "symmetrize",
        "--input",
        s(&gen),
        "--symmetries",
        "singlet",
    ]));
    assert_eq!(singlet["dimension"], 4);
    assert_eq!(singlet["center"]["dimension"], 1);
    assert_eq!(singlet["empty"], false);
    let sys = ModelSystem::new();
    let span = liepool::Subalgebra::span_of(&basis(&singlet)).unwrap();
    for a in sys.adapted_elements() {
        assert!(span.residual_norm(&a) <= 1e-9);
    }

    let anti = write(&dir, "anti.gen", "1 YIII\n---\n1 XYII\n---\n1 XXYI\n");
    let v = json_ok(&liepool(&["symmetrize", "--input", s(&anti)]));
    assert_eq!(v["input_dimension"], 6);
    assert_eq!(v["dimension"], 0);
    assert_eq!(v["empty"], true);
}

#[test]
fn symmetrize_accepts_a_closure_report() {
    let dir = TempDir::new().unwrap();
    let gen = write(&dir, "model.gen", MODEL_GENERATORS);
    let report = dir.path().join("closure.json");
    assert!(
        liepool(&["closure", "--input", s(&gen), "--output", s(&report)])
            .status
            .success()
    );
    let v = json_ok(&liepool(&[
        "symmetrize",
        "--input",
        s(&report),
        "--symmetries",
        "none",
    ]));
    assert_eq!(v["dimension"], 8);
    assert_eq!(v["symmetries"], Value::Array(vec![]));
    let closure: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let a = liepool::Subalgebra::span_of(&basis(&closure)).unwrap();
    let b = liepool::Subalgebra::span_of(&basis(&v)).unwrap();
    assert!(a.same_span(&b));
}

#[test]
fn dis_tables() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.ham", "1.0 X\n");
    let v = json_ok(&liepool(&["dis", "--input", s(&x), "--ref-bitstring", "0"]));
    assert_eq!(v["n_classes"], 1);
    assert_eq!(v["classes"][0]["members"], serde_json::json!(["Y"]));
    assert_eq!(v["classes"][0]["magnitude"].as_f64(), Some(2.0));

    let diag = write(&dir, "diag.ham", "0.5 ZI\n-0.3 ZZ\n1 II\n");
    assert_eq!(
        json_ok(&liepool(&[
            "dis",
            "--input",
            s(&diag),
            "--ref-bitstring",
            "10"
        ]))["n_classes"],
        0
    );

    let big = write(&dir, "big.ham", "1 XIIIIIIII\n");
    let out = liepool(&["dis", "--input", s(&big), "--ref-bitstring", "000000000"]);
    assert_eq!(out.status.code(), Some(3));
    let out = liepool(&["dis", "--input", s(&x), "--ref-bitstring", "0a"]);
    assert_eq!(out.status.code(), Some(2));
}

fn ansatz_json(reference: &str, gens: &[PauliSum]) -> String {
    let factors: Vec<Value> = gens
        .iter()
        .map(|g| serde_json::json!({"generator": g.to_lines(), "amplitude": 0.0}))
        .collect();
    serde_json::json!({"reference": reference, "factors": factors}).to_string()
}

fn target_file(dir: &TempDir) -> PathBuf {
    let sys = ModelSystem::new();
    let lines: String = target_support(&sys)
        .into_iter()
        .map(|(k, a)| format!("{} {}{:+}i\n", bitstring(k, 4), a.re, a.im))
        .collect();
    write(dir, "target.state", &lines)
}

#[test]
fn orderscan_verdicts() {
    let dir = TempDir::new().unwrap();
    let sys = ModelSystem::new();
    let target = target_file(&dir);
    let objective = format!("fidelity:{}", s(&target));

    let adapted: Vec<PauliSum> = sys
        .adapted_factors()
        .iter()
        .map(|f| f.generator().clone())
        .collect();
    let a = write(&dir, "adapted.json", &ansatz_json("1100", &adapted));
    let v = json_ok(&liepool(&[
        "orderscan",
        "--input",
        s(&a),
        "--objective",
        &objective,
    ]));
    assert_eq!(v["verdict"], "order-invariant");
    assert_eq!(v["permutations"].as_array().unwrap().len(), 6);
    assert!(v["worst"].as_f64().unwrap() >= 1.0 - 1e-8);

    let f = write(
        &dir,
        "fermionic.json",
        &ansatz_json("1100", &sys.generators()),
    );
    let v = json_ok(&liepool(&[
        "orderscan",
        "--input",
        s(&f),
        "--objective",
        &objective,
    ]));
    assert_eq!(v["verdict"], "order-dependent");
    assert!(v["spread"].as_f64().unwrap() > 1e-3);

    let one = write(
        &dir,
        "one.json",
        &ansatz_json("1100", &sys.generators()[..1]),
    );
    let v = json_ok(&liepool(&[
        "orderscan",
        "--input",
        s(&one),
        "--objective",
        &objective,
    ]));
    assert_eq!(v["verdict"], "order-invariant");
}

#[test]
fn orderscan_energy_and_limits() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "z.ham", "1 Z\n");
    let a = write(
        &dir,
        "y.json",
        r#"{"factors": [{"generator": ["1 Y"], "amplitude": 0.1}]}"#,
    );
    let objective = format!("energy:{}", s(&h));
    let v = json_ok(&liepool(&[
        "orderscan",
        "--input",
        s(&a),
        "--objective",
        &objective,
        "--ref-bitstring",
        "0",
        "--seed-schedule",
        "7:32",
    ]));
    assert_eq!(v["objective"], "energy");
    assert!((v["best"].as_f64().unwrap() + 1.0).abs() < 1e-9);
    assert_eq!(v["seed_schedule"]["base"], 7);

    // no reference anywhere
    assert_eq!(
        liepool(&["orderscan", "--input", s(&a), "--objective", &objective])
            .status
            .code(),
        Some(2)
    );
    // too few starts
    let out = liepool(&[
        "orderscan",
        "--input",
        s(&a),
        "--objective",
        &objective,
        "--ref-bitstring",
        "0",
        "--seed-schedule",
        "7:4",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let nine: Vec<String> = (0..9)
        .map(|_| r#"{"generator": ["1 Y"]}"#.to_string())
        .collect();
    let many = write(
        &dir,
        "many.json",
        &format!(r#"{{"factors": [{}]}}"#, nine.join(",")),
    );
    let out = liepool(&[
        "orderscan",
        "--input",
        s(&many),
        "--objective",
        &objective,
        "--ref-bitstring",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn model_runs_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let p1 = dir.path().join("a.json");
    let p2 = dir.path().join("b.json");
    for p in [&p1, &p2] {
        let out = liepool(&["model", "--fermionic-211", "--output", s(p)]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let (a, b) = (fs::read(&p1).unwrap(), fs::read(&p2).unwrap());
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["failed_stage"], Value::Null);
    assert_eq!(v["closure"]["dimension"], 8);
    assert_eq!(v["adapted"]["dimension"], 4);
    let fermionic = v["stages"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["name"] == "fermionic_order")
        .unwrap();
    assert_eq!(
        fermionic["expected_failure"],
        "expected failure (2-1-1 ordering cannot reach target)"
    );
    assert!(fermionic["values"]["fidelity_211"].as_f64().unwrap() < 1.0 - 1e-3);
    assert_eq!(v["scans"]["adapted"]["verdict"], "order-invariant");
}

#[test]
fn model_without_symmetry() {
    let v = json_ok(&liepool(&["model", "--no-symmetry"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["adapted"], Value::Null);
    assert_eq!(
        v["scans"]["blocks"]["permutations"]
            .as_array()
            .unwrap()
            .len(),
        720
    );
    assert!(v["scans"]["blocks"]["worst"].as_f64().unwrap() >= 1.0 - 1e-8);
}

#[test]
fn thread_variable() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_liepool"))
            .args(["model"])
            .env("LIEPOOL_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("0").status.code(), Some(2));
}
