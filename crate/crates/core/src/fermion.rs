//! Second-quantized operators and their Jordan-Wigner images.
//!
//! Spin-orbitals are interleaved: mode `2p` is spatial orbital `p` with
//! alpha spin, mode `2p + 1` the same orbital with beta spin.
//!
//! Operators are stored normal ordered: creation operators left of
//! annihilators, mode indices descending inside each block, signs from
//! the canonical anticommutation relations.
//!
//! Text format: an optional `modes: <n_spatial>` header (a later
//! `layout: <n_spatial>` line overrides it), then one term per line as
//! `<coeff> <token>...` where `p^` creates and `p` annihilates mode `p`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{format_complex, parse_complex, strip_comment, PauliSum, PauliTerm};
use crate::EPS_COEFF;

/// A single creation (`dagger`) or annihilation operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ladder {
    pub mode: usize,
    pub dagger: bool,
}

impl Ladder {
    pub fn create(mode: usize) -> Self {
        Ladder { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Ladder {
            mode,
            dagger: false,
        }
    }

    pub fn adjoint(self) -> Self {
        Ladder {
            mode: self.mode,
            dagger: !self.dagger,
        }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dagger {
            write!(f, "{}^", self.mode)
        } else {
            write!(f, "{}", self.mode)
        }
    }
}

/// Interleaved spin-orbital layout over `n_spatial` spatial orbitals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpinOrbitalLayout {
    n_spatial: usize,
}

impl SpinOrbitalLayout {
    pub fn new(n_spatial: usize) -> Result<Self> {
        if n_spatial == 0 || 2 * n_spatial > crate::pauli::MAX_QUBITS {
            return Err(Error::QubitCount(2 * n_spatial));
        }
        Ok(Self { n_spatial })
    }

    /// Layout for an even qubit count.
    pub fn for_qubits(n_qubits: usize) -> Result<Self> {
        if !n_qubits.is_multiple_of(2) {
            return Err(Error::QubitCount(n_qubits));
        }
        Self::new(n_qubits / 2)
    }

    pub fn n_spatial(&self) -> usize {
        self.n_spatial
    }

    pub fn n_modes(&self) -> usize {
        2 * self.n_spatial
    }

    pub fn alpha(&self, p: usize) -> usize {
        2 * p
    }

    pub fn beta(&self, p: usize) -> usize {
        2 * p + 1
    }

    fn check_spatial(&self, p: usize) -> Result<()> {
        if p >= self.n_spatial {
            Err(Error::InvalidIndices(format!(
                "spatial orbital {p} out of range for {} orbitals",
                self.n_spatial
            )))
        } else {
            Ok(())
        }
    }
}

/// Sum of normal-ordered ladder-operator strings.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionOperator {
    n_modes: usize,
    terms: BTreeMap<Vec<Ladder>, Complex64>,
}

impl FermionOperator {
    pub fn zero(n_modes: usize) -> Self {
        Self {
            n_modes,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_modes: usize) -> Self {
        let mut f = Self::zero(n_modes);
        f.terms.insert(Vec::new(), Complex64::new(1.0, 0.0));
        f
    }

    /// Builds `coeff * ops[0] ops[1] ...`, normal ordering the product.
    pub fn from_string(n_modes: usize, coeff: Complex64, ops: &[Ladder]) -> Result<Self> {
        Self::from_strings(n_modes, [(coeff, ops.to_vec())])
    }

    pub fn from_strings<I>(n_modes: usize, strings: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, Vec<Ladder>)>,
    {
        let mut f = Self::zero(n_modes);
        for (c, ops) in strings {
            if let Some(bad) = ops.iter().find(|l| l.mode >= n_modes) {
                return Err(Error::InvalidIndices(format!(
                    "mode {} out of range for {n_modes} modes",
                    bad.mode
                )));
            }
            let mut out = Vec::new();
            normal_order(c, ops, &mut out);
            for (c, ops) in out {
                f.accumulate(ops, c);
            }
        }
        f.prune();
        Ok(f)
    }

    /// Number operator `a_p^ a_p`.
    pub fn number(n_modes: usize, p: usize) -> Result<Self> {
        Self::from_string(
            n_modes,
            Complex64::new(1.0, 0.0),
            &[Ladder::create(p), Ladder::annihilate(p)],
        )
    }

    fn accumulate(&mut self, ops: Vec<Ladder>, c: Complex64) {
        *self.terms.entry(ops).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= EPS_COEFF);
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Ladder], Complex64)> {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    fn check(&self, other: &FermionOperator) -> Result<()> {
        if self.n_modes != other.n_modes {
            Err(Error::QubitMismatch {
                left: self.n_modes,
                right: other.n_modes,
            })
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut f = self.clone();
        for v in f.terms.values_mut() {
            *v *= c;
        }
        f.prune();
        f
    }

    pub fn add(&self, other: &FermionOperator) -> Result<Self> {
        self.check(other)?;
        let mut f = self.clone();
        for (k, &c) in &other.terms {
            f.accumulate(k.clone(), c);
        }
        f.prune();
        Ok(f)
    }

    pub fn sub(&self, other: &FermionOperator) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Operator product, re-normal-ordered.
    pub fn mul(&self, other: &FermionOperator) -> Result<Self> {
        self.check(other)?;
        let mut strings = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ka, &ca) in &self.terms {
            for (kb, &cb) in &other.terms {
                let mut ops = ka.clone();
                ops.extend_from_slice(kb);
                strings.push((ca * cb, ops));
            }
        }
        Self::from_strings(self.n_modes, strings)
    }

    pub fn commutator(&self, other: &FermionOperator) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn adjoint(&self) -> Self {
        let strings = self.terms.iter().map(|(k, c)| {
            let ops: Vec<Ladder> = k.iter().rev().map(|l| l.adjoint()).collect();
            (c.conj(), ops)
        });
        Self::from_strings(self.n_modes, strings).expect("modes already validated")
    }

    /// Parses the fermion text format. Without a `modes:` header the mode
    /// count is taken from `default_modes`, or else rounded up from the
    /// largest index to a whole number of spatial orbitals.
    pub fn parse(text: &str, default_modes: Option<usize>) -> Result<Self> {
        let mut n_spatial: Option<usize> = None;
        let mut strings = Vec::new();
        let mut max_mode = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line
                .strip_prefix("modes:")
                .or_else(|| line.strip_prefix("layout:"))
            {
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(idx + 1, "bad spatial orbital count"))?;
                n_spatial = Some(n);
                continue;
            }
            let mut tokens = line.split_whitespace();
            let coeff = parse_complex(tokens.next().unwrap_or_default())
                .map_err(|_| Error::parse(idx + 1, "bad coefficient"))?;
            let mut ops = Vec::new();
            for tok in tokens {
                let (num, dagger) = match tok.strip_suffix('^') {
                    Some(n) => (n, true),
                    None => (tok, false),
                };
                let mode: usize = num
                    .parse()
                    .map_err(|_| Error::parse(idx + 1, format!("bad ladder token {tok:?}")))?;
                max_mode = max_mode.max(mode);
                ops.push(Ladder { mode, dagger });
            }
            strings.push((coeff, ops));
        }
        if strings.is_empty() {
            return Err(Error::parse(0, "no terms"));
        }
        let n_modes = match (n_spatial, default_modes) {
            (Some(n), _) => 2 * n,
            (None, Some(m)) => m,
            (None, None) => 2 * (max_mode / 2 + 1),
        };
        Self::from_strings(n_modes, strings)
    }

    pub fn to_lines(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut line = format_complex(*c);
                for l in k {
                    line.push(' ');
                    line.push_str(&l.to_string());
                }
                line
            })
            .collect()
    }
}

impl fmt::Display for FermionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.to_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Insertion sort into canonical order, emitting contraction terms from
/// `a_p a_p^ = 1 - a_p^ a_p`.
fn normal_order(coeff: Complex64, mut ops: Vec<Ladder>, out: &mut Vec<(Complex64, Vec<Ladder>)>) {
    let mut coeff = coeff;
    for i in 1..ops.len() {
        for j in (1..=i).rev() {
            let left = ops[j - 1];
            let right = ops[j];
            if right.dagger && !left.dagger {
                ops.swap(j - 1, j);
                coeff = -coeff;
                if right.mode == left.mode {
                    let mut reduced = ops.clone();
                    reduced.drain(j - 1..=j);
                    normal_order(-coeff, reduced, out);
                }
            } else if right.dagger == left.dagger {
                if right.mode == left.mode {
                    return;
                }
                if right.mode > left.mode {
                    ops.swap(j - 1, j);
                    coeff = -coeff;
                }
            }
        }
    }
    out.push((coeff, ops));
}

fn jw_ladder(l: Ladder, n_qubits: usize) -> PauliSum {
    let below = (1u64 << l.mode) - 1;
    let bit = 1u64 << l.mode;
    let half = Complex64::new(0.5, 0.0);
    let y_coeff = if l.dagger {
        Complex64::new(0.0, -0.5)
    } else {
        Complex64::new(0.0, 0.5)
    };
    let terms = [
        PauliTerm::new(n_qubits, bit, below, half).expect("mode in range"),
        PauliTerm::new(n_qubits, bit, below | bit, y_coeff).expect("mode in range"),
    ];
    PauliSum::from_terms(n_qubits, terms).expect("same qubit count")
}

/// Jordan-Wigner image: `a_p -> (X_p + iY_p)/2 Z_0 ... Z_{p-1}`.
pub fn jordan_wigner(f: &FermionOperator) -> PauliSum {
    let n = f.n_modes;
    let mut cache: HashMap<Ladder, PauliSum> = HashMap::new();
    let mut total = PauliSum::zero(n);
    for (ops, c) in f.terms() {
        let mut acc = PauliSum::identity(n, c);
        for &l in ops {
            let img = cache.entry(l).or_insert_with(|| jw_ladder(l, n));
            acc = &acc * &*img;
        }
        total = &total + &acc;
    }
    total
}

fn check_indices(n_modes: usize, groups: &[&[usize]]) -> Result<()> {
    let mut seen = Vec::new();
    for g in groups {
        for &p in *g {
            if p >= n_modes {
                return Err(Error::InvalidIndices(format!(
                    "mode {p} out of range for {n_modes} modes"
                )));
            }
            if seen.contains(&p) {
                return Err(Error::InvalidIndices(format!("mode {p} repeated")));
            }
            seen.push(p);
        }
    }
    Ok(())
}

/// Anti-Hermitized excitation `a_v1^ a_v2^ ... a_o1 a_o2 ... - h.c.`.
///
/// `make_kappa(n, &[i], &[a])` is `a_a^ a_i - a_i^ a_a`; for doubles the
/// excitation string is `a_a^ a_b^ a_i a_j`.
pub fn make_kappa(
    n_modes: usize,
    occupied: &[usize],
    virtuals: &[usize],
) -> Result<FermionOperator> {
    if occupied.is_empty() || occupied.len() != virtuals.len() {
        return Err(Error::InvalidIndices(
            "occupied and virtual lists must be non-empty and of equal length".into(),
        ));
    }
    check_indices(n_modes, &[occupied, virtuals])?;
    let mut ops: Vec<Ladder> = virtuals.iter().map(|&a| Ladder::create(a)).collect();
    ops.extend(occupied.iter().map(|&i| Ladder::annihilate(i)));
    let excitation = FermionOperator::from_string(n_modes, Complex64::new(1.0, 0.0), &ops)?;
    excitation.sub(&excitation.adjoint())
}

fn ladder_string_term(
    n_qubits: usize,
    positions: [(usize, char); 4],
    z_ranges: [(usize, usize); 2],
) -> PauliTerm {
    let mut zmask = 0u64;
    for (lo, hi) in z_ranges {
        for k in lo + 1..hi {
            zmask |= 1 << k;
        }
    }
    let zs = PauliTerm::from_masks(n_qubits, 0, zmask).expect("in range");
    let mut ops = PauliTerm::identity(n_qubits).expect("in range");
    for (q, ch) in positions {
        let single = PauliTerm::single(n_qubits, q, ch).expect("in range");
        ops = ops.mul(&single).expect("same qubit count");
    }
    zs.mul(&ops).expect("same qubit count")
}

/// The two four-term halves of a double excitation's Pauli expansion that
/// separately commute with the electron number.
///
/// Returns `(xi, pi)`, each `i/4 * Z(i..j) Z(a..b) * (four products)`.
pub fn make_xi_pi(
    n_qubits: usize,
    i: usize,
    j: usize,
    a: usize,
    b: usize,
) -> Result<(PauliSum, PauliSum)> {
    check_indices(n_qubits, &[&[i, j, a, b]])?;
    if i >= j || a >= b {
        return Err(Error::InvalidIndices("require i < j and a < b".into()));
    }
    type Pattern = ([char; 4], f64);
    let xi: [Pattern; 4] = [
        (['X', 'X', 'Y', 'X'], 1.0),
        (['Y', 'X', 'Y', 'Y'], 1.0),
        (['X', 'Y', 'X', 'X'], -1.0),
        (['Y', 'Y', 'X', 'Y'], -1.0),
    ];
    let pi: [Pattern; 4] = [
        (['X', 'Y', 'Y', 'Y'], 1.0),
        (['X', 'X', 'X', 'Y'], 1.0),
        (['Y', 'X', 'X', 'X'], -1.0),
        (['Y', 'Y', 'Y', 'X'], -1.0),
    ];
    let build = |patterns: &[Pattern; 4]| {
        let terms = patterns.iter().map(|(chars, sign)| {
            let t = ladder_string_term(
                n_qubits,
                [(i, chars[0]), (j, chars[1]), (a, chars[2]), (b, chars[3])],
                [(i, j), (a, b)],
            );
            let c = t.coeff() * Complex64::new(0.0, 0.25 * sign);
            t.with_coeff(c)
        });
        PauliSum::from_terms(n_qubits, terms)
    };
    Ok((build(&xi)?, build(&pi)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryKind {
    Ne,
    Sz,
    Splus,
    Sminus,
    S2,
}

impl SymmetryKind {
    pub fn name(&self) -> &'static str {
        match self {
            SymmetryKind::Ne => "ne",
            SymmetryKind::Sz => "sz",
            SymmetryKind::Splus => "splus",
            SymmetryKind::Sminus => "sminus",
            SymmetryKind::S2 => "s2",
        }
    }
}

impl std::str::FromStr for SymmetryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ne" => Ok(SymmetryKind::Ne),
            "sz" => Ok(SymmetryKind::Sz),
            "splus" | "s+" => Ok(SymmetryKind::Splus),
            "sminus" | "s-" => Ok(SymmetryKind::Sminus),
            "s2" => Ok(SymmetryKind::S2),
            other => Err(Error::parse(0, format!("unknown symmetry {other:?}"))),
        }
    }
}

/// Number and spin operators as Jordan-Wigner Pauli sums.
///
/// `S^2` is composed as `S- S+ + Sz (Sz + 1)` from the qubit images.
pub fn symmetry_operator(kind: SymmetryKind, layout: SpinOrbitalLayout) -> PauliSum {
    let n = layout.n_modes();
    let one = Complex64::new(1.0, 0.0);
    let number = |p| jordan_wigner(&FermionOperator::number(n, p).expect("mode in range"));
    let splus = || {
        let mut f = FermionOperator::zero(n);
        for p in 0..layout.n_spatial() {
            let t = FermionOperator::from_string(
                n,
                one,
                &[
                    Ladder::create(layout.alpha(p)),
                    Ladder::annihilate(layout.beta(p)),
                ],
            )
            .expect("mode in range");
            f = f.add(&t).expect("same modes");
        }
        jordan_wigner(&f)
    };
    let sz = || {
        let mut s = PauliSum::zero(n);
        for p in 0..layout.n_spatial() {
            s = &s + &(&number(layout.alpha(p)) - &number(layout.beta(p)));
        }
        s.scale_real(0.5)
    };
    match kind {
        SymmetryKind::Ne => (0..n).fold(PauliSum::zero(n), |acc, p| &acc + &number(p)),
        SymmetryKind::Sz => sz(),
        SymmetryKind::Splus => splus(),
        SymmetryKind::Sminus => splus().adjoint(),
        SymmetryKind::S2 => {
            let sp = splus();
            let sm = sp.adjoint();
            let z = sz();
            let z_plus_one = &z + &PauliSum::identity(n, one);
            &(&sm * &sp) + &(&z * &z_plus_one)
        }
    }
}

/// True iff `op` commutes with `Sz`, `S+` and `S-`.
pub fn is_singlet_tensor(op: &PauliSum, layout: SpinOrbitalLayout) -> Result<bool> {
    for kind in [SymmetryKind::Sz, SymmetryKind::Splus, SymmetryKind::Sminus] {
        if !symmetry_operator(kind, layout).commutator(op)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Singlet combinations of excitation generators, in spatial-orbital indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingletKind {
    /// `kappa_i^a + kappa_ibar^abar`
    SinglePair { i: usize, a: usize },
    /// `kappa_{i ibar}^{a abar}`
    PairedDouble { i: usize, a: usize },
    /// `kappa_{i ibar}^{a bbar} + kappa_{i ibar}^{b abar}`
    Seniority2Pair { i: usize, a: usize, b: usize },
}

pub fn build_singlet(kind: SingletKind, layout: SpinOrbitalLayout) -> Result<FermionOperator> {
    let n = layout.n_modes();
    let (al, be) = (|p| 2 * p, |p| 2 * p + 1);
    match kind {
        SingletKind::SinglePair { i, a } => {
            layout.check_spatial(i)?;
            layout.check_spatial(a)?;
            if i == a {
                return Err(Error::InvalidIndices("i and a must differ".into()));
            }
            make_kappa(n, &[al(i)], &[al(a)])?.add(&make_kappa(n, &[be(i)], &[be(a)])?)
        }
        SingletKind::PairedDouble { i, a } => {
            layout.check_spatial(i)?;
            layout.check_spatial(a)?;
            make_kappa(n, &[al(i), be(i)], &[al(a), be(a)])
        }
        SingletKind::Seniority2Pair { i, a, b } => {
            for p in [i, a, b] {
                layout.check_spatial(p)?;
            }
            if a == b {
                return Err(Error::InvalidIndices("a and b must differ".into()));
            }
            make_kappa(n, &[al(i), be(i)], &[al(a), be(b)])?.add(&make_kappa(
                n,
                &[al(i), be(i)],
                &[al(b), be(a)],
            )?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normal_ordering_signs() {
        // a0 a1^ -> -a1^ a0
        let f = FermionOperator::from_string(
            2,
            c(1.0, 0.0),
            &[Ladder::annihilate(0), Ladder::create(1)],
        )
        .unwrap();
        let expected = FermionOperator::from_strings(
            2,
            [(c(-1.0, 0.0), vec![Ladder::create(1), Ladder::annihilate(0)])],
        )
        .unwrap();
        assert_eq!(f, expected);
        assert_eq!(
            f.terms().next().unwrap().0,
            &[Ladder::create(1), Ladder::annihilate(0)]
        );
        // a0 a0^ -> 1 - a0^ a0
        let f = FermionOperator::from_string(
            1,
            c(1.0, 0.0),
            &[Ladder::annihilate(0), Ladder::create(0)],
        )
        .unwrap();
        let want = FermionOperator::identity(1)
            .sub(&FermionOperator::number(1, 0).unwrap())
            .unwrap();
        assert_eq!(f, want);
        // a0^ a0^ = 0
        let f =
            FermionOperator::from_string(1, c(1.0, 0.0), &[Ladder::create(0), Ladder::create(0)])
                .unwrap();
        assert!(f.is_zero());
        // ascending creation indices are reordered descending
        let f =
            FermionOperator::from_string(3, c(1.0, 0.0), &[Ladder::create(0), Ladder::create(2)])
                .unwrap();
        let (ops, coeff) = f.terms().next().unwrap();
        assert_eq!(ops, &[Ladder::create(2), Ladder::create(0)]);
        assert_eq!(coeff, c(-1.0, 0.0));
    }

    #[test]
    fn out_of_range_mode_rejected() {
        assert!(FermionOperator::from_string(2, c(1.0, 0.0), &[Ladder::create(2)]).is_err());
    }

    #[test]
    fn jw_single_mode() {
        let a0 = FermionOperator::from_string(1, c(1.0, 0.0), &[Ladder::annihilate(0)]).unwrap();
        let want = PauliSum::from_labels([(c(0.5, 0.0), "X"), (c(0.0, 0.5), "Y")]).unwrap();
        assert_eq!(jordan_wigner(&a0), want);
    }

    #[test]
    fn jw_single_excitation_matches_closed_form() {
        // (i/2) Z_{i+1..a-1} (Y_i X_a - X_i Y_a) with i = 0, a = 3
        let k = jordan_wigner(&make_kappa(4, &[0], &[3]).unwrap());
        let want = PauliSum::from_labels([(c(0.0, 0.5), "YZZX"), (c(0.0, -0.5), "XZZY")]).unwrap();
        assert_eq!(k, want);
        assert!(k.is_antihermitian());
    }

    #[test]
    fn kappa_index_validation() {
        assert!(make_kappa(4, &[0], &[0]).is_err());
        assert!(make_kappa(4, &[0, 1], &[2]).is_err());
        assert!(make_kappa(4, &[], &[]).is_err());
        assert!(make_kappa(4, &[0], &[4]).is_err());
        assert!(make_kappa(4, &[0, 0], &[2, 3]).is_err());
    }

    #[test]
    fn kappa_strings() {
        let k = make_kappa(4, &[0], &[2]).unwrap();
        let want = FermionOperator::from_strings(
            4,
            [
                (c(1.0, 0.0), vec![Ladder::create(2), Ladder::annihilate(0)]),
                (c(-1.0, 0.0), vec![Ladder::create(0), Ladder::annihilate(2)]),
            ],
        )
        .unwrap();
        assert_eq!(k, want);
        let d = make_kappa(4, &[0, 1], &[2, 3]).unwrap();
        let want = FermionOperator::from_strings(
            4,
            [
                (
                    c(1.0, 0.0),
                    vec![
                        Ladder::create(2),
                        Ladder::create(3),
                        Ladder::annihilate(0),
                        Ladder::annihilate(1),
                    ],
                ),
                (
                    c(-1.0, 0.0),
                    vec![
                        Ladder::create(1),
                        Ladder::create(0),
                        Ladder::annihilate(3),
                        Ladder::annihilate(2),
                    ],
                ),
            ],
        )
        .unwrap();
        assert_eq!(d, want);
    }

    #[test]
    fn number_operator_two_modes() {
        let ne = symmetry_operator(SymmetryKind::Ne, SpinOrbitalLayout::new(1).unwrap());
        let want = PauliSum::from_labels([
            (c(1.0, 0.0), "II"),
            (c(-0.5, 0.0), "ZI"),
            (c(-0.5, 0.0), "IZ"),
        ])
        .unwrap();
        assert_eq!(ne, want);
    }

    #[test]
    fn spin_operators_commute() {
        let layout = SpinOrbitalLayout::new(2).unwrap();
        let s2 = symmetry_operator(SymmetryKind::S2, layout);
        let sz = symmetry_operator(SymmetryKind::Sz, layout);
        assert!(s2.is_hermitian());
        assert!(s2.commutator(&sz).unwrap().is_empty());
        let ne = symmetry_operator(SymmetryKind::Ne, layout);
        assert!(s2.commutator(&ne).unwrap().is_empty());
    }

    #[test]
    fn excitations_conserve_number() {
        let layout = SpinOrbitalLayout::new(2).unwrap();
        let ne = symmetry_operator(SymmetryKind::Ne, layout);
        for (o, v) in [
            (vec![0], vec![2]),
            (vec![1], vec![3]),
            (vec![0, 1], vec![2, 3]),
        ] {
            let k = jordan_wigner(&make_kappa(4, &o, &v).unwrap());
            assert!(k.commutator(&ne).unwrap().is_empty());
        }
    }

    #[test]
    fn singlet_constructions() {
        let layout = SpinOrbitalLayout::new(3).unwrap();
        let single = jordan_wigner(&make_kappa(6, &[0], &[2]).unwrap());
        assert!(!is_singlet_tensor(&single, layout).unwrap());
        for kind in [
            SingletKind::SinglePair { i: 0, a: 1 },
            SingletKind::PairedDouble { i: 0, a: 1 },
            SingletKind::Seniority2Pair { i: 0, a: 1, b: 2 },
        ] {
            let op = jordan_wigner(&build_singlet(kind, layout).unwrap());
            assert!(is_singlet_tensor(&op, layout).unwrap(), "{kind:?}");
        }
        assert!(build_singlet(SingletKind::SinglePair { i: 0, a: 0 }, layout).is_err());
        assert!(build_singlet(SingletKind::PairedDouble { i: 0, a: 3 }, layout).is_err());
        assert!(build_singlet(SingletKind::Seniority2Pair { i: 0, a: 1, b: 1 }, layout).is_err());
    }

    #[test]
    fn xi_pi_structure() {
        let (xi, pi) = make_xi_pi(4, 0, 1, 2, 3).unwrap();
        assert_eq!(xi.len(), 4);
        assert_eq!(pi.len(), 4);
        assert!(xi.terms_commute());
        assert!(pi.terms_commute());
        assert!(xi.commutator(&pi).unwrap().is_empty());
        let ne = symmetry_operator(SymmetryKind::Ne, SpinOrbitalLayout::new(2).unwrap());
        assert!(xi.commutator(&ne).unwrap().is_empty());
        assert!(pi.commutator(&ne).unwrap().is_empty());
        assert!(make_xi_pi(4, 1, 0, 2, 3).is_err());
        assert!(make_xi_pi(4, 0, 1, 1, 3).is_err());
    }

    #[test]
    fn text_format() {
        let text = "modes: 2\n# kappa\n1.0 2^ 0\n-1 0^ 2\n";
        let f = FermionOperator::parse(text, None).unwrap();
        assert_eq!(f.n_modes(), 4);
        assert_eq!(f, make_kappa(4, &[0], &[2]).unwrap());
        let again = FermionOperator::parse(&format!("modes: 2\n{f}"), None).unwrap();
        assert_eq!(again, f);
        assert!(FermionOperator::parse("1.0 2x", None).is_err());
        assert_eq!(FermionOperator::parse("1 3^ 0", None).unwrap().n_modes(), 4);
    }
}
