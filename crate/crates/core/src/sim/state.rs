use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{format_complex, parse_complex, strip_comment, PauliSum};

/// Largest register a statevector may hold.
pub const MAX_STATE_QUBITS: usize = 24;

const NORM_TOL: f64 = 1e-10;

/// Dense state of `n` qubits; amplitude index bit j = qubit j.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

fn check_size(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_STATE_QUBITS {
        return Err(Error::QubitCount(n_qubits));
    }
    Ok(())
}

impl StateVector {
    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Config(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Basis state from a bitstring, character j = qubit j.
    pub fn from_bitstring(bits: &str) -> Result<Self> {
        let index = parse_bitstring(bits)?;
        Self::basis(bits.len(), index)
    }

    /// Wraps amplitudes that are already normalized to within `1e-10`.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        let s = Self::unnormalized(n_qubits, amps)?;
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(s)
    }

    /// Rescales nonzero amplitudes to unit norm.
    pub fn normalized(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        let mut s = Self::unnormalized(n_qubits, amps)?;
        let norm = s.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        s.amps.iter_mut().for_each(|a| *a /= norm);
        Ok(s)
    }

    fn unnormalized(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n_qubits)?;
        if amps.len() != 1usize << n_qubits {
            return Err(Error::Config(format!(
                "{} amplitudes do not fit {n_qubits} qubits",
                amps.len()
            )));
        }
        Ok(Self { n_qubits, amps })
    }

    pub(crate) fn from_raw(n_qubits: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1usize << n_qubits);
        Self { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Index of the single occupied basis state, if this is one.
    pub fn basis_index(&self) -> Option<usize> {
        let mut found = None;
        for (k, a) in self.amps.iter().enumerate() {
            let m = a.norm();
            if m > 1e-12 {
                if found.is_some() || (m - 1.0).abs() > NORM_TOL {
                    return None;
                }
                found = Some(k);
            }
        }
        found
    }

    /// `op |self>` without renormalization.
    pub fn apply_operator(&self, op: &PauliSum) -> Result<Vec<Complex64>> {
        if op.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch {
                left: op.n_qubits(),
                right: self.n_qubits,
            });
        }
        Ok(op.apply(&self.amps))
    }

    /// Distance `|| self - other ||`.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Parses lines of `<bitstring> <complex amplitude>`; the result is
    /// renormalized. Repeated bitstrings accumulate.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let bits = parts.next().unwrap_or_default();
            let amp = parts
                .next()
                .ok_or_else(|| Error::parse(line_no, "missing amplitude"))?;
            if parts.next().is_some() {
                return Err(Error::parse(line_no, "trailing tokens"));
            }
            let index = parse_bitstring(bits).map_err(|e| Error::parse(line_no, e.to_string()))?;
            match n {
                None => n = Some(bits.len()),
                Some(m) if m != bits.len() => {
                    return Err(Error::parse(
                        line_no,
                        "bitstring length differs from earlier lines",
                    ))
                }
                _ => {}
            }
            let amp = parse_complex(amp).map_err(|e| Error::parse(line_no, e.to_string()))?;
            entries.push((index, amp));
        }
        let n = n.ok_or_else(|| Error::parse(0, "empty state file"))?;
        check_size(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (i, a) in entries {
            amps[i] += a;
        }
        Self::normalized(n, amps)
    }

    /// Nonzero amplitudes in the state-file format.
    pub fn to_lines(&self) -> Vec<String> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 1e-15)
            .map(|(k, a)| format!("{} {}", bitstring(k, self.n_qubits), format_complex(*a)))
            .collect()
    }

    /// Rotates the global phase so the largest amplitude is real and positive.
    pub fn phase_fixed(&self) -> StateVector {
        let pivot = self
            .amps
            .iter()
            .copied()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap_or_default();
        if pivot.norm() == 0.0 {
            return self.clone();
        }
        let rot = pivot.conj() / pivot.norm();
        Self::from_raw(self.n_qubits, self.amps.iter().map(|a| a * rot).collect())
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.to_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// `|<a|b>|`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm().min(1.0))
}

/// Parses `0101`-style strings, character j = qubit j.
pub fn parse_bitstring(bits: &str) -> Result<usize> {
    if bits.is_empty() || bits.len() > MAX_STATE_QUBITS {
        return Err(Error::QubitCount(bits.len()));
    }
    bits.chars()
        .enumerate()
        .try_fold(0usize, |acc, (j, c)| match c {
            '0' => Ok(acc),
            '1' => Ok(acc | (1 << j)),
            other => Err(Error::Config(format!("invalid bit '{other}'"))),
        })
}

pub fn bitstring(index: usize, n_qubits: usize) -> String {
    (0..n_qubits)
        .map(|j| if (index >> j) & 1 == 1 { '1' } else { '0' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitstrings_put_qubit_zero_first() {
        assert_eq!(parse_bitstring("1100").unwrap(), 3);
        assert_eq!(bitstring(3, 4), "1100");
        assert!(parse_bitstring("10a").is_err());
        assert_eq!(
            StateVector::from_bitstring("01").unwrap().basis_index(),
            Some(2)
        );
    }

    #[test]
    fn state_file_round_trip() {
        let s = StateVector::parse("# psi\n0110 0.5\n1001 -0.5\n").unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!((s.amplitude(6).re - 0.5f64.sqrt()).abs() < 1e-15);
        let again = StateVector::parse(&s.to_string()).unwrap();
        assert!(s.distance(&again).unwrap() < 1e-15);
        assert!(StateVector::parse("01 1\n011 1\n").is_err());
        assert!(StateVector::parse("").is_err());
        assert!(StateVector::parse("01 0\n").is_err());
    }

    #[test]
    fn fidelity_basics() {
        let a = StateVector::basis(2, 1).unwrap();
        let b = StateVector::basis(2, 2).unwrap();
        assert_eq!(fidelity(&a, &a).unwrap(), 1.0);
        assert_eq!(fidelity(&a, &b).unwrap(), 0.0);
        assert!(fidelity(&a, &StateVector::basis(1, 0).unwrap()).is_err());
        assert!(StateVector::from_amplitudes(1, vec![Complex64::new(1.0, 0.0); 2]).is_err());
    }
}
