//! Dense state vectors, used as ground truth for the algebraic code paths.
//!
//! Basis index convention: qubit `i` (1-based) is bit `n - i` of the index,
//! so the binary form of an index reads as the label `|q_1 q_2 ... q_n>`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::codewords::{CodewordError, Encoder, FormalState};
use crate::family::{CodeSpec, FamilyError};
use crate::pauli::{Letter, PauliOperator};
use crate::stabilizer::{errors_up_to_weight, StabilizerGroup, Syndrome};

/// Largest qubit count the oracle accepts.
pub const MAX_ORACLE_QUBITS: usize = 12;

/// Tolerance for every "approximately zero" decision.
pub const TOLERANCE: f64 = 1e-10;

pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{n} qubits exceeds the dense oracle limit of {MAX_ORACLE_QUBITS}")]
    TooManyQubits { n: usize },
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },
    #[error("qubit index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Codeword(#[from] CodewordError),
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The four real basis matrices.
pub fn letter_matrix(letter: Letter) -> Matrix2 {
    match letter {
        Letter::I => [[c(1.0), c(0.0)], [c(0.0), c(1.0)]],
        Letter::X => [[c(0.0), c(1.0)], [c(1.0), c(0.0)]],
        Letter::Y => [[c(0.0), c(-1.0)], [c(1.0), c(0.0)]],
        Letter::Z => [[c(1.0), c(0.0)], [c(0.0), c(-1.0)]],
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(n: usize) -> Result<Self, OracleError> {
        if n > MAX_ORACLE_QUBITS {
            return Err(OracleError::TooManyQubits { n });
        }
        Ok(Self {
            n,
            amplitudes: vec![Complex64::new(0.0, 0.0); 1 << n],
        })
    }

    pub fn basis(n: usize, index: usize) -> Result<Self, OracleError> {
        let mut v = Self::zeros(n)?;
        v.amplitudes[index] = c(1.0);
        Ok(v)
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, OracleError> {
        let n = amplitudes.len().trailing_zeros() as usize;
        assert!(amplitudes.len().is_power_of_two(), "amplitude count must be a power of two");
        if n > MAX_ORACLE_QUBITS {
            return Err(OracleError::TooManyQubits { n });
        }
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Unit vector in the same direction; the zero vector stays zero.
    pub fn normalized(&self) -> Self {
        let norm = self.norm();
        if norm == 0.0 {
            return self.clone();
        }
        self.scaled(c(1.0 / norm))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    fn check_same_n(&self, other: &Self) -> Result<(), OracleError> {
        if self.n != other.n {
            return Err(OracleError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, OracleError> {
        self.check_same_n(other)?;
        Ok(Self {
            n: self.n,
            amplitudes: self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, OracleError> {
        self.check_same_n(other)?;
        Ok(Self {
            n: self.n,
            amplitudes: self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a - b).collect(),
        })
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64, OracleError> {
        self.check_same_n(other)?;
        Ok(self.inner_unchecked(other))
    }

    fn inner_unchecked(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn distance(&self, other: &Self) -> Result<f64, OracleError> {
        Ok(self.sub(other)?.norm())
    }
}

/// Unit vector with amplitude `coeff / sqrt(Σ coeff²)` at each label.
pub fn dense_from_formal(s: &FormalState) -> Result<StateVector, OracleError> {
    let mut v = StateVector::zeros(s.n())?;
    if s.is_zero() {
        return Ok(v);
    }
    let scale = 1.0 / (s.norm_squared() as f64).sqrt();
    for (label, coeff) in s.terms() {
        v.amplitudes[label.to_u64_msb_first() as usize] = c(coeff as f64 * scale);
    }
    Ok(v)
}

fn pauli_masks(p: &PauliOperator) -> (usize, usize) {
    let n = p.n();
    let to_mask = |bits: &crate::bits::BitString| bits.ones_iter().fold(0usize, |m, q| m | 1 << (n - 1 - q));
    (to_mask(p.x_bits()), to_mask(p.z_bits()))
}

/// `P|v>` computed as a signed permutation of amplitudes.
pub fn apply_pauli(p: &PauliOperator, v: &StateVector) -> Result<StateVector, OracleError> {
    if p.n() != v.n {
        return Err(OracleError::DimensionMismatch { left: p.n(), right: v.n });
    }
    let (x, z) = pauli_masks(p);
    let global = if p.sign().is_minus() { -1.0 } else { 1.0 };
    let mut out = StateVector::zeros(v.n)?;
    for (b, amp) in v.amplitudes.iter().enumerate() {
        let phase = if (b & z).count_ones() % 2 == 1 { -global } else { global };
        out.amplitudes[b ^ x] = amp * phase;
    }
    Ok(out)
}

/// Applies an arbitrary (not necessarily unitary) 2×2 matrix to qubit `i`.
pub fn apply_single_qubit(m: &Matrix2, i: usize, v: &StateVector) -> Result<StateVector, OracleError> {
    if i == 0 || i > v.n {
        return Err(OracleError::IndexOutOfRange { index: i, n: v.n });
    }
    let bit = 1usize << (v.n - i);
    let mut out = v.clone();
    for b in 0..v.amplitudes.len() {
        if b & bit != 0 {
            continue;
        }
        let a0 = v.amplitudes[b];
        let a1 = v.amplitudes[b | bit];
        out.amplitudes[b] = m[0][0] * a0 + m[0][1] * a1;
        out.amplitudes[b | bit] = m[1][0] * a0 + m[1][1] * a1;
    }
    Ok(out)
}

/// Dense `2^n × 2^n` matrix of a Pauli operator built as a Kronecker
/// product of the basis matrices. Intended for small `n`.
pub fn pauli_matrix(p: &PauliOperator) -> DMatrix<Complex64> {
    let mut acc = DMatrix::from_element(1, 1, c(if p.sign().is_minus() { -1.0 } else { 1.0 }));
    for letter in p.letters() {
        let m = letter_matrix(letter);
        let small = DMatrix::from_fn(2, 2, |r, col| m[r][col]);
        acc = acc.kronecker(&small);
    }
    acc
}

/// Matrix of inner products `G[r][s] = <states[r]|states[s]>`.
pub fn gram(states: &[StateVector]) -> Result<DMatrix<Complex64>, OracleError> {
    if let Some(first) = states.first() {
        for s in states {
            first.check_same_n(s)?;
        }
    }
    let m = states.len();
    let mut g = DMatrix::from_element(m, m, c(0.0));
    for r in 0..m {
        for s in r..m {
            let v = states[r].inner_unchecked(&states[s]);
            g[(r, s)] = v;
            g[(s, r)] = v.conj();
        }
    }
    Ok(g)
}

/// Number of singular values above `tolerance`.
pub fn numerical_rank(states: &[StateVector], tolerance: f64) -> Result<usize, OracleError> {
    let Some(first) = states.first() else {
        return Ok(0);
    };
    for s in states {
        first.check_same_n(s)?;
    }
    let dim = first.amplitudes.len();
    let m = DMatrix::from_fn(dim, states.len(), |r, col| states[col].amplitudes[r]);
    let svd = m.svd(false, false);
    Ok(svd.singular_values.iter().filter(|&&s| s > tolerance).count())
}

/// Dimension of the joint `+1` eigenspace of `generators`, computed as the
/// trace of `Π (I + M)/2`.
pub fn joint_eigenspace_dimension(n: usize, generators: &[PauliOperator]) -> Result<f64, OracleError> {
    let mut trace = 0.0;
    for b in 0..1usize << n {
        let mut v = StateVector::basis(n, b)?;
        for m in generators {
            let image = apply_pauli(m, &v)?;
            v = v.add(&image)?.scaled(c(0.5));
        }
        trace += v.amplitudes[b].re;
    }
    Ok(trace)
}

/// An error image `E|ψ_i>` in a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageLabel {
    pub error: String,
    pub syndrome: String,
    pub logical: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleFailure {
    ZeroCodeword { logical: usize },
    NotStabilized { generator: usize, logical: usize, distance: f64 },
    Overlap { left: ImageLabel, right: ImageLabel, magnitude: f64 },
    RankDeficient { rank: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub basis_states: usize,
    /// `max |G - I|` over the Gram matrix of the code-word basis.
    pub basis_orthonormality_error: f64,
    pub error_images: usize,
    pub rank: Option<usize>,
    pub failure: Option<OracleFailure>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Normalized dense basis vectors of a code (entry `i` encodes logical
/// index `i`).
pub fn code_basis_vectors(code: &CodeSpec) -> Result<(StabilizerGroup, Vec<StateVector>), OracleError> {
    if code.n > MAX_ORACLE_QUBITS {
        return Err(OracleError::TooManyQubits { n: code.n });
    }
    let group = code.stabilizer_group()?;
    let encoder = Encoder::new(&group)?;
    let words = encoder.basis(&code.seed_generators)?;
    let vectors = words.iter().map(dense_from_formal).collect::<Result<Vec<_>, _>>()?;
    Ok((group, vectors))
}

/// Dense verification of a code against errors of weight `<= t`:
/// generators fix every basis vector, error images with different
/// `(syndrome, logical index)` are orthogonal, and all images are linearly
/// independent.
pub fn verify_code(code: &CodeSpec, t: usize) -> Result<OracleReport, OracleError> {
    let (group, basis) = code_basis_vectors(code)?;
    let mut report = OracleReport {
        n: code.n,
        k: code.k,
        t,
        basis_states: basis.len(),
        basis_orthonormality_error: 0.0,
        error_images: 0,
        rank: None,
        failure: None,
    };

    if let Some(i) = basis.iter().position(|v| v.norm_squared() == 0.0) {
        report.failure = Some(OracleFailure::ZeroCodeword { logical: i });
        return Ok(report);
    }

    for (r, m) in group.generators().iter().enumerate() {
        for (i, psi) in basis.iter().enumerate() {
            let distance = apply_pauli(m, psi)?.distance(psi)?;
            if distance > TOLERANCE {
                report.failure = Some(OracleFailure::NotStabilized {
                    generator: r + 1,
                    logical: i,
                    distance,
                });
                return Ok(report);
            }
        }
    }

    let g = gram(&basis)?;
    report.basis_orthonormality_error = (0..basis.len())
        .flat_map(|r| (0..basis.len()).map(move |s| (r, s)))
        .map(|(r, s)| (g[(r, s)] - c(if r == s { 1.0 } else { 0.0 })).norm())
        .fold(0.0, f64::max);

    let mut images: Vec<(ImageLabel, Syndrome, StateVector)> = Vec::new();
    for e in errors_up_to_weight(code.n, t) {
        let op = e.to_pauli(code.n);
        let syndrome = group.syndrome(&op).expect("same qubit count");
        for (i, psi) in basis.iter().enumerate() {
            let label = ImageLabel {
                error: op.to_text(),
                syndrome: syndrome.to_string(),
                logical: i,
            };
            images.push((label, syndrome.clone(), apply_pauli(&op, psi)?));
        }
    }
    report.error_images = images.len();

    for right in 0..images.len() {
        for left in 0..right {
            let (la, sa, va) = &images[left];
            let (lb, sb, vb) = &images[right];
            if sa == sb && la.logical == lb.logical {
                continue;
            }
            let magnitude = va.inner_unchecked(vb).norm();
            if magnitude > TOLERANCE {
                report.failure = Some(OracleFailure::Overlap {
                    left: la.clone(),
                    right: lb.clone(),
                    magnitude,
                });
                return Ok(report);
            }
        }
    }

    let vectors: Vec<StateVector> = images.into_iter().map(|(_, _, v)| v).collect();
    let rank = numerical_rank(&vectors, TOLERANCE)?;
    report.rank = Some(rank);
    if rank != vectors.len() {
        report.failure = Some(OracleFailure::RankDeficient {
            rank,
            expected: vectors.len(),
        });
    }
    Ok(report)
}
