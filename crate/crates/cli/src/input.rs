//! Input files.
//!
//! A generator file holds one operator per block, blocks separated by a
//! line `---`. Each block is either Pauli text (`<coeff> <label>` lines) or
//! fermion text (`<coeff> <mode>[^] ...` lines), detected from its first
//! term. Fermion blocks are Jordan-Wigner mapped. A `modes: K` or
//! `layout: K` line anywhere sets the spatial-orbital count (`2K` modes) for
//! every fermion block. Hermitian blocks are multiplied by `i`,
//! anti-Hermitian blocks are used as given.
//!
//! An ansatz file is JSON:
//!
//! ```json
//! {"reference": "1100",
//!  "factors": [{"generator": ["1 2^ 0", "-1 0^ 2"], "amplitude": 0.1}]}
//! ```
//!
//! where each `generator` is a list of lines in the block format above.

use std::fs;
use std::path::Path;

use liepool::fermion::{jordan_wigner, symmetry_operator, SpinOrbitalLayout, SymmetryKind};
use liepool::sim::parse_bitstring;
use liepool::{AnsatzFactor, FermionOperator, Objective, PauliSum, StateVector};
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn is_pauli_label(tok: &str) -> bool {
    !tok.is_empty() && tok.chars().all(|c| matches!(c, 'I' | 'X' | 'Y' | 'Z'))
}

/// Spatial-orbital count from a `modes:` or `layout:` line.
fn layout_header(text: &str) -> CliResult<Option<usize>> {
    let mut found = None;
    for line in text.lines().map(strip) {
        if let Some(rest) = line
            .strip_prefix("modes:")
            .or_else(|| line.strip_prefix("layout:"))
        {
            let k: usize = rest
                .trim()
                .parse()
                .map_err(|_| CliError::input(format!("bad layout header {line:?}")))?;
            if found.is_some_and(|f| f != k) {
                return Err(CliError::input("conflicting layout headers"));
            }
            found = Some(k);
        }
    }
    Ok(found)
}

/// One block as an anti-Hermitian Pauli sum.
fn block_operator(
    block: &str,
    spatial: Option<usize>,
    qubits: Option<usize>,
) -> CliResult<PauliSum> {
    let first = block
        .lines()
        .map(strip)
        .find(|l| !l.is_empty() && !l.starts_with("modes:") && !l.starts_with("layout:"));
    let Some(first) = first else {
        return Err(CliError::input("empty operator block"));
    };
    let pauli = first.split_whitespace().nth(1).is_some_and(is_pauli_label);
    let op = if pauli {
        PauliSum::parse(block).map_err(|e| CliError::context("Pauli block", e))?
    } else {
        let modes = spatial.map(|k| 2 * k).or(qubits);
        let body: String = block
            .lines()
            .filter(|l| {
                let l = strip(l);
                !l.starts_with("modes:") && !l.starts_with("layout:")
            })
            .map(|l| format!("{l}\n"))
            .collect();
        jordan_wigner(
            &FermionOperator::parse(&body, modes)
                .map_err(|e| CliError::context("fermion block", e))?,
        )
    };
    if let Some(n) = qubits {
        if op.n_qubits() != n {
            return Err(CliError::input(format!(
                "operator acts on {} qubits, --qubits says {n}",
                op.n_qubits()
            )));
        }
    }
    if op.is_antihermitian() {
        Ok(op)
    } else if op.is_hermitian() {
        Ok(op.scale(Complex64::new(0.0, 1.0)))
    } else {
        Err(CliError::input(
            "operator is neither Hermitian nor anti-Hermitian",
        ))
    }
}

pub fn parse_generators(text: &str, qubits: Option<usize>) -> CliResult<Vec<PauliSum>> {
    let spatial = layout_header(text)?;
    let mut blocks = vec![String::new()];
    for line in text.lines() {
        if line.trim() == "---" {
            blocks.push(String::new());
        } else {
            let b = blocks.last_mut().expect("non-empty");
            b.push_str(line);
            b.push('\n');
        }
    }
    let ops = blocks
        .iter()
        .filter(|b| {
            b.lines()
                .map(strip)
                .any(|l| !l.is_empty() && !l.starts_with("modes:") && !l.starts_with("layout:"))
        })
        .map(|b| block_operator(b, spatial, qubits))
        .collect::<CliResult<Vec<_>>>()?;
    let Some(n) = ops.first().map(|o| o.n_qubits()) else {
        return Err(CliError::input("no operators in generator file"));
    };
    if let Some(bad) = ops.iter().find(|o| o.n_qubits() != n) {
        return Err(CliError::input(format!(
            "operators act on {n} and {} qubits",
            bad.n_qubits()
        )));
    }
    Ok(ops)
}

/// Generators from either a generator file or a JSON report with a `basis`.
pub fn parse_generators_or_report(text: &str, qubits: Option<usize>) -> CliResult<Vec<PauliSum>> {
    if !text.trim_start().starts_with('{') {
        return parse_generators(text, qubits);
    }
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::input(format!("report: {e}")))?;
    let basis = v
        .get("basis")
        .and_then(|b| b.as_array())
        .ok_or_else(|| CliError::input("report has no basis array"))?;
    let blocks: Vec<String> = basis
        .iter()
        .map(|b| {
            let lines = b.get("terms").unwrap_or(b);
            lines
                .as_array()
                .and_then(|ls| {
                    ls.iter()
                        .map(|l| l.as_str().map(|s| format!("{s}\n")))
                        .collect()
                })
                .ok_or_else(|| CliError::input("basis entries must be lists of term lines"))
        })
        .collect::<CliResult<_>>()?;
    if blocks.is_empty() {
        return Err(CliError::input("report basis is empty"));
    }
    parse_generators(&blocks.join("---\n"), qubits)
}

pub fn parse_symmetries(spec: &str) -> CliResult<Vec<SymmetryKind>> {
    let mut out: Vec<SymmetryKind> = Vec::new();
    for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let kinds = match tok.to_ascii_lowercase().as_str() {
            "none" => vec![],
            "singlet" => vec![
                SymmetryKind::Ne,
                SymmetryKind::Sz,
                SymmetryKind::S2,
                SymmetryKind::Splus,
                SymmetryKind::Sminus,
            ],
            other => vec![other
                .parse::<SymmetryKind>()
                .map_err(|e| CliError::context("--symmetries", e))?],
        };
        for k in kinds {
            if !out.contains(&k) {
                out.push(k);
            }
        }
    }
    Ok(out)
}

pub fn symmetry_operators(kinds: &[SymmetryKind], n_qubits: usize) -> CliResult<Vec<PauliSum>> {
    if kinds.is_empty() {
        return Ok(Vec::new());
    }
    let layout =
        SpinOrbitalLayout::for_qubits(n_qubits).map_err(|e| CliError::context("symmetries", e))?;
    Ok(kinds
        .iter()
        .map(|&k| symmetry_operator(k, layout))
        .collect())
}

pub fn reference(bits: &str) -> CliResult<StateVector> {
    parse_bitstring(bits).map_err(|e| CliError::context("reference bitstring", e))?;
    Ok(StateVector::from_bitstring(bits)?)
}

/// `fidelity:<statefile>` or `energy:<hamfile>`.
pub fn objective(spec: &str) -> CliResult<Objective> {
    let (kind, path) = spec
        .split_once(':')
        .ok_or_else(|| CliError::input("--objective must be fidelity:<file> or energy:<file>"))?;
    let text = read(Path::new(path))?;
    match kind {
        "fidelity" => Ok(Objective::MaxFidelity(
            StateVector::parse(&text).map_err(|e| CliError::context("state file", e))?,
        )),
        "energy" => {
            let h = PauliSum::parse(&text).map_err(|e| CliError::context("Hamiltonian file", e))?;
            if !h.is_hermitian() {
                return Err(CliError::input("Hamiltonian is not Hermitian"));
            }
            Ok(Objective::MinEnergy(h))
        }
        other => Err(CliError::input(format!("unknown objective {other:?}"))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AnsatzFile {
    #[serde(default)]
    reference: Option<String>,
    #[serde(default)]
    qubits: Option<usize>,
    factors: Vec<FactorSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorSpec {
    generator: Vec<String>,
    #[serde(default)]
    amplitude: f64,
}

pub struct Ansatz {
    pub reference: Option<String>,
    pub factors: Vec<AnsatzFactor>,
}

pub fn parse_ansatz(text: &str, qubits: Option<usize>) -> CliResult<Ansatz> {
    let file: AnsatzFile =
        serde_json::from_str(text).map_err(|e| CliError::input(format!("ansatz: {e}")))?;
    let qubits = qubits.or(file.qubits);
    if file.factors.is_empty() {
        return Err(CliError::input("ansatz has no factors"));
    }
    let mut factors = Vec::new();
    for spec in &file.factors {
        let text: String = spec.generator.iter().map(|l| format!("{l}\n")).collect();
        let ops = parse_generators(&text, qubits)?;
        if ops.len() != 1 {
            return Err(CliError::input(
                "each ansatz generator must be a single block",
            ));
        }
        factors.push(AnsatzFactor::new(ops[0].clone(), spec.amplitude)?);
    }
    let n = factors[0].n_qubits();
    if factors.iter().any(|f| f.n_qubits() != n) {
        return Err(CliError::input(
            "ansatz factors act on different qubit counts",
        ));
    }
    Ok(Ansatz {
        reference: file.reference,
        factors,
    })
}
