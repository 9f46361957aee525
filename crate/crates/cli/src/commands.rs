use std::fs;
use std::io::Write;
use std::path::Path;

use liepool::lie::{close, default_max_dim};
use liepool::model::{run_model, ModelOptions, ModelReport, Stage};
use liepool::sim::{
    bitstring, classes_are_disjoint, dis_classes, orderscan as scan_orders, OrderScan,
};
use liepool::{PauliSum, Provenance, SeedSchedule, Subalgebra};
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::input;
use crate::report::{self, num};
use crate::Common;

fn emit(value: &Value, common: &Common) -> CliResult<()> {
    let text = report::to_string(value);
    match &common.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn provenance(p: &Provenance) -> String {
    match p {
        Provenance::Generator(k) => format!("generator {k}"),
        Provenance::Commutator(i, j) => format!("commutator {i} {j}"),
        Provenance::Combination => "combination".to_string(),
    }
}

fn basis_json(alg: &Subalgebra) -> Value {
    let items: Vec<Value> = alg
        .basis()
        .iter()
        .zip(alg.provenance())
        .map(|(b, p)| json!({"provenance": provenance(p), "terms": report::operator(b)}))
        .collect();
    Value::Array(items)
}

fn schedule(spec: Option<&str>) -> CliResult<SeedSchedule> {
    match spec {
        None => Ok(SeedSchedule::default()),
        Some(s) => s
            .parse()
            .map_err(|e| CliError::context("--seed-schedule", e)),
    }
}

/// Dimension, basis, structure constants, center.
fn algebra_report(alg: &Subalgebra) -> CliResult<Map<String, Value>> {
    let sc = alg.structure_constants()?;
    let constants: Vec<Value> = sc
        .triples()
        .filter(|&(i, j, _, _)| i < j)
        .map(|(i, j, k, v)| json!([i, j, k, num(v)]))
        .collect();
    let center = alg.center();
    let mut m = Map::new();
    m.insert("n_qubits".into(), json!(alg.n_qubits()));
    m.insert("dimension".into(), json!(alg.dim()));
    m.insert("basis".into(), basis_json(alg));
    m.insert("structure_constants".into(), Value::Array(constants));
    m.insert("abelian".into(), json!(sc.is_zero()));
    m.insert(
        "center".into(),
        json!({"dimension": center.dim(), "basis": basis_json(&center)}),
    );
    Ok(m)
}

fn closed(generators: &[PauliSum], max_dim: Option<u64>) -> CliResult<(Subalgebra, usize)> {
    let n = generators[0].n_qubits();
    let cap = match max_dim {
        Some(d) => usize::try_from(d).unwrap_or(usize::MAX),
        None => default_max_dim(n),
    };
    Ok((close(generators, cap)?, cap))
}

pub fn closure(path: &Path, max_dim: Option<u64>, common: &Common) -> CliResult<()> {
    let generators = input::parse_generators(&input::read(path)?, common.qubits)?;
    let (alg, cap) = closed(&generators, max_dim)?;
    let mut m = algebra_report(&alg)?;
    m.insert("command".into(), json!("closure"));
    m.insert("generators".into(), json!(generators.len()));
    m.insert("max_dim".into(), json!(cap));
    emit(&Value::Object(m), common)
}

pub fn symmetrize(
    path: &Path,
    symmetries: &str,
    max_dim: Option<u64>,
    common: &Common,
) -> CliResult<()> {
    let generators = input::parse_generators_or_report(&input::read(path)?, common.qubits)?;
    let kinds = input::parse_symmetries(symmetries)?;
    let (alg, cap) = closed(&generators, max_dim)?;
    let ops = input::symmetry_operators(&kinds, alg.n_qubits())?;
    let adapted = alg.symmetry_adapt(&ops)?;
    let mut m = algebra_report(&adapted)?;
    m.insert("command".into(), json!("symmetrize"));
    m.insert("input_dimension".into(), json!(alg.dim()));
    m.insert("max_dim".into(), json!(cap));
    m.insert(
        "symmetries".into(),
        json!(kinds.iter().map(|k| k.name()).collect::<Vec<_>>()),
    );
    m.insert("empty".into(), json!(adapted.is_empty()));
    emit(&Value::Object(m), common)
}

pub fn dis(path: &Path, bits: &str, common: &Common) -> CliResult<()> {
    let h = PauliSum::parse(&input::read(path)?)
        .map_err(|e| CliError::context("Hamiltonian file", e))?;
    let reference = input::reference(bits)?;
    let classes = dis_classes(&h, &reference)?;
    if !classes_are_disjoint(&classes) {
        return Err(CliError::Other("DIS classes overlap".into()));
    }
    let table: Vec<Value> = classes
        .iter()
        .enumerate()
        .map(|(rank, c)| {
            json!({
                "rank": rank,
                "magnitude": num(c.magnitude),
                "representative": c.representative.label(),
                "members": c.members.iter().map(|m| m.label()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let v = json!({
        "command": "dis",
        "n_qubits": h.n_qubits(),
        "reference": bitstring(reference.basis_index().expect("basis state"), h.n_qubits()),
        "n_classes": classes.len(),
        "classes": table,
    });
    emit(&v, common)
}

fn scan_json(scan: &OrderScan) -> Value {
    let perms: Vec<Value> = scan
        .permutations
        .iter()
        .map(|p| {
            json!({
                "order": p.order,
                "value": num(p.result.value),
                "amplitudes": p.result.amplitudes.iter().map(|&a| num(a)).collect::<Vec<_>>(),
                "start": p.result.start,
                "starts_run": p.result.starts_run,
            })
        })
        .collect();
    json!({
        "objective": scan.objective,
        "permutations": perms,
        "best": num(scan.best()),
        "worst": num(scan.worst()),
        "spread": num(scan.spread),
        "verdict": if scan.invariant { "order-invariant" } else { "order-dependent" },
    })
}

pub fn orderscan(
    path: &Path,
    objective: &str,
    bits: Option<&str>,
    seeds: Option<&str>,
    common: &Common,
) -> CliResult<()> {
    let ansatz = input::parse_ansatz(&input::read(path)?, common.qubits)?;
    let bits = bits
        .map(str::to_string)
        .or(ansatz.reference)
        .ok_or_else(|| {
            CliError::input("no reference: pass --ref-bitstring or set \"reference\"")
        })?;
    let reference = input::reference(&bits)?;
    let objective = input::objective(objective)?;
    let schedule = schedule(seeds)?;
    let scan = scan_orders(&ansatz.factors, &reference, &objective, schedule)?;
    let mut v = scan_json(&scan);
    let m = v.as_object_mut().expect("object");
    m.insert("command".into(), json!("orderscan"));
    m.insert("n_factors".into(), json!(ansatz.factors.len()));
    m.insert("reference".into(), json!(bits));
    m.insert(
        "seed_schedule".into(),
        json!({"base": schedule.base, "starts": schedule.starts}),
    );
    emit(&v, common)
}

fn stage_json(s: &Stage) -> Value {
    let values: Map<String, Value> = s
        .values
        .iter()
        .map(|(k, &v)| (k.to_string(), num(v)))
        .collect();
    json!({
        "name": s.name,
        "passed": s.passed,
        "expected_failure": s.expected_failure,
        "values": values,
        "message": s.message,
    })
}

fn model_json(r: &ModelReport) -> Value {
    let scans: Map<String, Value> = r
        .scans
        .iter()
        .map(|(name, s)| (name.to_string(), scan_json(s)))
        .collect();
    json!({
        "command": "model",
        "options": {
            "symmetry": r.options.symmetry,
            "fermionic_211": r.options.fermionic_211,
            "seed_schedule": {"base": r.options.schedule.base, "starts": r.options.schedule.starts},
        },
        "passed": r.passed(),
        "failed_stage": r.first_failure().map(|s| s.name),
        "stages": r.stages.iter().map(stage_json).collect::<Vec<_>>(),
        "scans": scans,
        "closure": {"dimension": r.closure.dim(), "basis": basis_json(&r.closure)},
        "center": {"dimension": r.center.dim(), "basis": basis_json(&r.center)},
        "adapted": r.adapted.as_ref().map(|a| json!({"dimension": a.dim(), "basis": basis_json(a)})),
    })
}

pub fn model(
    symmetry: bool,
    fermionic_211: bool,
    seeds: Option<&str>,
    common: &Common,
) -> CliResult<()> {
    let options = ModelOptions {
        symmetry,
        fermionic_211,
        schedule: schedule(seeds)?,
    };
    let r = run_model(options)?;
    emit(&model_json(&r), common)?;
    match r.first_failure() {
        Some(s) => Err(CliError::Stage(s.name.to_string())),
        None => Ok(()),
    }
}
