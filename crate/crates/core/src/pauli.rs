//! Pauli products in binary-symplectic form.
//!
//! A term over `N` qubits is a pair of bit masks plus a complex coefficient:
//!
//! - `x` mask: bit j set if qubit j carries X or Y
//! - `z` mask: bit j set if qubit j carries Z or Y
//!
//! A qubit with both bits set is the Hermitian Y, so a mask pair with unit
//! coefficient is always Hermitian and squares to the identity. Qubit 0 is
//! the least significant bit. Products track phases exactly as powers of i.
//!
//! Text format: one term per line, `<coeff> <string>`, where the string has
//! one character from `IXYZ` per qubit (character j is qubit j) and the
//! coefficient is written `a+bi`, `a`, or `bi`. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::EPS_COEFF;

pub const MAX_QUBITS: usize = 64;

/// `i^k` for any integer `k`.
pub fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Exponent k such that P(x1,z1) P(x2,z2) = i^k P(x1^x2, z1^z2).
fn product_phase(x1: u64, z1: u64, x2: u64, z2: u64) -> u32 {
    let (xa, ya, za) = (x1 & !z1, x1 & z1, !x1 & z1);
    let (xb, yb, zb) = (x2 & !z2, x2 & z2, !x2 & z2);
    // XY = iZ, YZ = iX, ZX = iY and the reversed products pick up -i.
    let plus = (xa & yb) | (ya & zb) | (za & xb);
    let minus = (ya & xb) | (za & yb) | (xa & zb);
    (plus.count_ones() + 3 * minus.count_ones()) % 4
}

fn check_qubits(left: usize, right: usize) -> Result<()> {
    if left != right {
        Err(Error::QubitMismatch { left, right })
    } else {
        Ok(())
    }
}

/// One N-qubit Pauli product with a complex coefficient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliTerm {
    n_qubits: usize,
    x: u64,
    z: u64,
    coeff: Complex64,
}

impl PauliTerm {
    pub fn new(n_qubits: usize, x: u64, z: u64, coeff: Complex64) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        let mask = full_mask(n_qubits);
        if x & !mask != 0 || z & !mask != 0 {
            return Err(Error::QubitCount(n_qubits));
        }
        Ok(Self {
            n_qubits,
            x,
            z,
            coeff,
        })
    }

    /// Unit-coefficient term from masks.
    pub fn from_masks(n_qubits: usize, x: u64, z: u64) -> Result<Self> {
        Self::new(n_qubits, x, z, Complex64::new(1.0, 0.0))
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::from_masks(n_qubits, 0, 0)
    }

    /// Parses a label such as `XIZY` (character j acts on qubit j).
    pub fn from_label(label: &str) -> Result<Self> {
        let mut x = 0u64;
        let mut z = 0u64;
        let mut n = 0;
        for (j, ch) in label.chars().enumerate() {
            if j >= MAX_QUBITS {
                return Err(Error::QubitCount(j + 1));
            }
            match ch {
                'I' => {}
                'X' => x |= 1 << j,
                'Y' => {
                    x |= 1 << j;
                    z |= 1 << j;
                }
                'Z' => z |= 1 << j,
                other => return Err(Error::parse(0, format!("bad Pauli character {other:?}"))),
            }
            n = j + 1;
        }
        Self::from_masks(n, x, z)
    }

    /// Single-qubit Pauli `op` (one of `X`, `Y`, `Z`) on `qubit`.
    pub fn single(n_qubits: usize, qubit: usize, op: char) -> Result<Self> {
        if qubit >= n_qubits {
            return Err(Error::QubitCount(qubit + 1));
        }
        let bit = 1u64 << qubit;
        let (x, z) = match op {
            'X' => (bit, 0),
            'Y' => (bit, bit),
            'Z' => (0, bit),
            'I' => (0, 0),
            other => return Err(Error::parse(0, format!("bad Pauli character {other:?}"))),
        };
        Self::from_masks(n_qubits, x, z)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn masks(&self) -> (u64, u64) {
        (self.x, self.z)
    }

    pub fn coeff(&self) -> Complex64 {
        self.coeff
    }

    pub fn with_coeff(mut self, coeff: Complex64) -> Self {
        self.coeff = coeff;
        self
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of non-identity positions.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn has_unit_coeff(&self) -> bool {
        (self.coeff - Complex64::new(1.0, 0.0)).norm() <= EPS_COEFF
    }

    /// The operator product `self * other`, with the phase tracked exactly.
    pub fn mul(&self, other: &PauliTerm) -> Result<PauliTerm> {
        check_qubits(self.n_qubits, other.n_qubits)?;
        let k = product_phase(self.x, self.z, other.x, other.z);
        Ok(PauliTerm {
            n_qubits: self.n_qubits,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            coeff: self.coeff * other.coeff * i_pow(k),
        })
    }

    /// True iff the two products commute (even symplectic inner product).
    pub fn commutes(&self, other: &PauliTerm) -> Result<bool> {
        check_qubits(self.n_qubits, other.n_qubits)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &PauliTerm) -> bool {
        ((self.x & other.z) ^ (self.z & other.x))
            .count_ones()
            .is_multiple_of(2)
    }

    /// Image of computational basis state `|b>`: returns `(b', c)` with
    /// `P|b> = c |b'>`.
    pub fn apply_basis(&self, b: usize) -> (usize, Complex64) {
        let b64 = b as u64;
        let k = (self.x & self.z).count_ones() + 2 * (self.z & b64).count_ones();
        ((b64 ^ self.x) as usize, self.coeff * i_pow(k))
    }

    /// Label in `IXYZ` form, character j = qubit j.
    pub fn label(&self) -> String {
        (0..self.n_qubits)
            .map(|j| {
                let xb = (self.x >> j) & 1 == 1;
                let zb = (self.z >> j) & 1 == 1;
                match (xb, zb) {
                    (false, false) => 'I',
                    (true, false) => 'X',
                    (true, true) => 'Y',
                    (false, true) => 'Z',
                }
            })
            .collect()
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", format_complex(self.coeff), self.label())
    }
}

/// Operator product of two terms.
pub fn pauli_mul(a: &PauliTerm, b: &PauliTerm) -> Result<PauliTerm> {
    a.mul(b)
}

pub fn commutes(a: &PauliTerm, b: &PauliTerm) -> Result<bool> {
    a.commutes(b)
}

/// Linear combination of Pauli products, kept in canonical form: one entry
/// per mask pair, no coefficient below [`EPS_COEFF`], ordered by
/// `(x_mask, z_mask)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<(u64, u64), Complex64>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_qubits: usize, coeff: Complex64) -> Self {
        let mut s = Self::zero(n_qubits);
        s.accumulate(0, 0, coeff);
        s.prune();
        s
    }

    pub fn from_term(term: PauliTerm) -> Self {
        let mut s = Self::zero(term.n_qubits);
        s.accumulate(term.x, term.z, term.coeff);
        s.prune();
        s
    }

    /// Merges like terms and drops negligible coefficients.
    pub fn from_terms<I>(n_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = PauliTerm>,
    {
        let mut s = Self::zero(n_qubits);
        for t in terms {
            check_qubits(n_qubits, t.n_qubits)?;
            s.accumulate(t.x, t.z, t.coeff);
        }
        s.prune();
        Ok(s)
    }

    /// Builds a sum from `(coeff, label)` pairs.
    pub fn from_labels<'a, I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, &'a str)>,
    {
        let mut n = None;
        let mut out = Vec::new();
        for (c, label) in terms {
            let t = PauliTerm::from_label(label)?.with_coeff(c);
            match n {
                None => n = Some(t.n_qubits),
                Some(m) => check_qubits(m, t.n_qubits)?,
            }
            out.push(t);
        }
        let n = n.ok_or_else(|| Error::parse(0, "empty Pauli sum"))?;
        Self::from_terms(n, out)
    }

    fn accumulate(&mut self, x: u64, z: u64, c: Complex64) {
        *self.terms.entry((x, z)).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= EPS_COEFF);
    }

    /// Re-applies the canonical drop threshold.
    pub fn canonicalize(&self) -> Self {
        let mut s = self.clone();
        s.prune();
        s
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: u64, z: u64) -> Complex64 {
        self.terms
            .get(&(x, z))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = PauliTerm> + '_ {
        self.terms.iter().map(move |(&(x, z), &c)| PauliTerm {
            n_qubits: self.n_qubits,
            x,
            z,
            coeff: c,
        })
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<(u64, u64), Complex64> {
        &self.terms
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut s = self.clone();
        for v in s.terms.values_mut() {
            *v *= c;
        }
        s.prune();
        s
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn try_add(&self, other: &PauliSum) -> Result<Self> {
        check_qubits(self.n_qubits, other.n_qubits)?;
        let mut s = self.clone();
        for (&(x, z), &c) in &other.terms {
            s.accumulate(x, z, c);
        }
        s.prune();
        Ok(s)
    }

    pub fn try_sub(&self, other: &PauliSum) -> Result<Self> {
        self.try_add(&other.scale_real(-1.0))
    }

    /// Operator product `self * other`.
    pub fn try_mul(&self, other: &PauliSum) -> Result<Self> {
        check_qubits(self.n_qubits, other.n_qubits)?;
        let mut s = Self::zero(self.n_qubits);
        for (&(x1, z1), &c1) in &self.terms {
            for (&(x2, z2), &c2) in &other.terms {
                let k = product_phase(x1, z1, x2, z2);
                s.accumulate(x1 ^ x2, z1 ^ z2, c1 * c2 * i_pow(k));
            }
        }
        s.prune();
        Ok(s)
    }

    /// `[self, other] = self*other - other*self`.
    ///
    /// Only anticommuting term pairs contribute, each with twice its product.
    pub fn commutator(&self, other: &PauliSum) -> Result<Self> {
        check_qubits(self.n_qubits, other.n_qubits)?;
        let mut s = Self::zero(self.n_qubits);
        for (&(x1, z1), &c1) in &self.terms {
            for (&(x2, z2), &c2) in &other.terms {
                if ((x1 & z2) ^ (z1 & x2)).count_ones() % 2 == 1 {
                    let k = product_phase(x1, z1, x2, z2);
                    s.accumulate(x1 ^ x2, z1 ^ z2, 2.0 * c1 * c2 * i_pow(k));
                }
            }
        }
        s.prune();
        Ok(s)
    }

    /// `{self, other} = self*other + other*self`.
    pub fn anticommutator(&self, other: &PauliSum) -> Result<Self> {
        check_qubits(self.n_qubits, other.n_qubits)?;
        let mut s = Self::zero(self.n_qubits);
        for (&(x1, z1), &c1) in &self.terms {
            for (&(x2, z2), &c2) in &other.terms {
                if ((x1 & z2) ^ (z1 & x2)).count_ones() % 2 == 0 {
                    let k = product_phase(x1, z1, x2, z2);
                    s.accumulate(x1 ^ x2, z1 ^ z2, 2.0 * c1 * c2 * i_pow(k));
                }
            }
        }
        s.prune();
        Ok(s)
    }

    pub fn adjoint(&self) -> Self {
        let mut s = self.clone();
        for v in s.terms.values_mut() {
            *v = v.conj();
        }
        s
    }

    /// True iff every coefficient is purely imaginary.
    pub fn is_antihermitian(&self) -> bool {
        self.terms.values().all(|c| c.re.abs() < EPS_COEFF)
    }

    /// True iff every coefficient is real.
    pub fn is_hermitian(&self) -> bool {
        self.terms.values().all(|c| c.im.abs() < EPS_COEFF)
    }

    /// True iff all terms pairwise commute.
    pub fn terms_commute(&self) -> bool {
        let ts: Vec<PauliTerm> = self.terms().collect();
        ts.iter()
            .enumerate()
            .all(|(a, ta)| ts[a + 1..].iter().all(|tb| ta.commutes_unchecked(tb)))
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        (self.terms.values().map(|c| c.norm_sqr()).sum::<f64>() + 0.0).sqrt()
    }

    /// Largest coefficient magnitude, zero for the empty sum.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Sum of coefficient magnitudes; bounds the operator norm.
    pub fn one_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum::<f64>() + 0.0
    }

    /// Dense `2^N x 2^N` matrix, row/column index bit j = qubit j.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for t in self.terms() {
            for b in 0..dim {
                let (row, c) = t.apply_basis(b);
                m[(row, b)] += c;
            }
        }
        m
    }

    /// Applies the operator to a dense amplitude vector.
    pub fn apply(&self, amps: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
        for t in self.terms() {
            for (b, &a) in amps.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let (row, c) = t.apply_basis(b);
                out[row] += c * a;
            }
        }
        out
    }

    /// Parses the Pauli text format. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let term = parse_term_line(line).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(idx + 1, msg),
                other => other,
            })?;
            match n {
                None => n = Some(term.n_qubits),
                Some(m) if m != term.n_qubits => {
                    return Err(Error::parse(
                        idx + 1,
                        format!("term has {} qubits, expected {m}", term.n_qubits),
                    ))
                }
                _ => {}
            }
            terms.push(term);
        }
        let n = n.ok_or_else(|| Error::parse(0, "no terms"))?;
        Self::from_terms(n, terms)
    }

    /// Term lines in the text format.
    pub fn to_lines(&self) -> Vec<String> {
        self.terms().map(|t| t.to_string()).collect()
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.to_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl From<PauliTerm> for PauliSum {
    fn from(t: PauliTerm) -> Self {
        PauliSum::from_term(t)
    }
}

// Operator overloads panic on qubit mismatch; use the `try_*` methods when
// the operands come from untrusted input.
impl Add for &PauliSum {
    type Output = PauliSum;
    fn add(self, rhs: &PauliSum) -> PauliSum {
        self.try_add(rhs).expect("qubit count mismatch")
    }
}

impl Sub for &PauliSum {
    type Output = PauliSum;
    fn sub(self, rhs: &PauliSum) -> PauliSum {
        self.try_sub(rhs).expect("qubit count mismatch")
    }
}

impl Mul for &PauliSum {
    type Output = PauliSum;
    fn mul(self, rhs: &PauliSum) -> PauliSum {
        self.try_mul(rhs).expect("qubit count mismatch")
    }
}

impl Mul<Complex64> for &PauliSum {
    type Output = PauliSum;
    fn mul(self, rhs: Complex64) -> PauliSum {
        self.scale(rhs)
    }
}

impl Mul<f64> for &PauliSum {
    type Output = PauliSum;
    fn mul(self, rhs: f64) -> PauliSum {
        self.scale_real(rhs)
    }
}

impl Neg for &PauliSum {
    type Output = PauliSum;
    fn neg(self) -> PauliSum {
        self.scale_real(-1.0)
    }
}

/// `[a, b]` for Pauli sums.
pub fn commutator(a: &PauliSum, b: &PauliSum) -> Result<PauliSum> {
    a.commutator(b)
}

pub fn canonicalize(s: &PauliSum) -> PauliSum {
    s.canonicalize()
}

pub fn is_antihermitian(s: &PauliSum) -> bool {
    s.is_antihermitian()
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}

fn parse_term_line(line: &str) -> Result<PauliTerm> {
    let mut parts = line.split_whitespace();
    let coeff = parts
        .next()
        .ok_or_else(|| Error::parse(0, "missing coefficient"))?;
    let label = parts
        .next()
        .ok_or_else(|| Error::parse(0, "missing Pauli string"))?;
    if parts.next().is_some() {
        return Err(Error::parse(0, "trailing tokens"));
    }
    let c = parse_complex(coeff)?;
    Ok(PauliTerm::from_label(label)?.with_coeff(c))
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` (also `i`, `-i`, exponents allowed).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::parse(0, format!("bad complex number {s:?}"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_str, im_str) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

/// Writes `a+bi` with shortest round-trip float formatting.
pub fn format_complex(c: Complex64) -> String {
    // Adding 0.0 turns -0.0 into 0.0.
    format!("{}{:+}i", c.re + 0.0, c.im + 0.0)
}
