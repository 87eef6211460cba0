//! End-to-end simulation of the correction protocol on dense state vectors:
//! encode, corrupt, measure the generators with collapse, apply the
//! table correction and score the result.
//!
//! The ancilla is not simulated; each generator measurement is a projective
//! measurement whose outcome is recorded as a syndrome bit.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bits::BitString;
use crate::family::CodeSpec;
use crate::oracle::{self, apply_pauli, apply_single_qubit, Matrix2, OracleError, StateVector};
use crate::pauli::{Letter, PauliError, PauliOperator};
use crate::stabilizer::{errors_up_to_weight, Correctability, StabilizerGroup, Syndrome};

/// Fidelity threshold for a successful recovery.
pub const SUCCESS_THRESHOLD: f64 = 1.0 - 1e-10;

/// Outcome probabilities this close to 0 or 1 are treated as exact.
const SNAP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("errors {first} and {second} share syndrome {syndrome}")]
    DegenerateSyndromes {
        first: String,
        second: String,
        syndrome: String,
    },
    #[error("cannot measure the zero vector")]
    ZeroState,
    #[error("logical input has {found} amplitudes, expected {expected}")]
    WrongInputLength { expected: usize, found: usize },
    #[error("logical basis index {index} out of range for {k} logical qubits")]
    LogicalIndexOutOfRange { index: usize, k: usize },
    #[error("depolarizing probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("error operator acts on {found} qubits, code has {expected}")]
    ErrorSize { expected: usize, found: usize },
    #[error("malformed noise model {0:?}")]
    BadModel(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// Lookup from syndrome to the lowest-weight error producing it.
#[derive(Clone, Debug)]
pub struct SyndromeTable {
    n: usize,
    entries: HashMap<Syndrome, PauliOperator>,
}

impl SyndromeTable {
    pub fn lookup(&self, s: &Syndrome) -> Option<&PauliOperator> {
        self.entries.get(s)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries sorted by syndrome.
    pub fn sorted(&self) -> Vec<(&Syndrome, &PauliOperator)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by(|x, y| x.0.cmp(y.0));
        v
    }
}

/// Builds the correction table for errors of weight `<= t`. Errors are
/// visited in increasing weight and the first writer of a syndrome wins.
pub fn build_syndrome_table(h: &StabilizerGroup, t: usize) -> Result<SyndromeTable, SimError> {
    if let Correctability::Collision { first, second, syndrome } = h.check_correctability(t) {
        return Err(SimError::DegenerateSyndromes {
            first: first.to_text(),
            second: second.to_text(),
            syndrome: syndrome.to_string(),
        });
    }
    let singles = h.single_qubit_syndromes();
    let mut entries = HashMap::new();
    for e in errors_up_to_weight(h.n(), t) {
        let s = singles.of_local(&e, h.a());
        entries.entry(s).or_insert_with(|| e.to_pauli(h.n()));
    }
    Ok(SyndromeTable { n: h.n(), entries })
}

/// Measures `M_1, ..., M_a` in order. Returns the syndrome (bit `r` set for
/// outcome `-1`) and the normalized post-measurement state.
pub fn measure_syndrome<R: Rng + ?Sized>(
    v: &StateVector,
    h: &StabilizerGroup,
    rng: &mut R,
) -> Result<(Syndrome, StateVector), SimError> {
    if v.norm_squared() == 0.0 {
        return Err(SimError::ZeroState);
    }
    if v.n() != h.n() {
        return Err(SimError::ErrorSize { expected: h.n(), found: v.n() });
    }
    let mut state = v.normalized();
    let mut bits = BitString::zeros(h.a());
    for (r, m) in h.generators().iter().enumerate() {
        let image = apply_pauli(m, &state)?;
        let plus = state.add(&image)?.scaled(Complex64::new(0.5, 0.0));
        let mut p_plus = plus.norm_squared();
        if p_plus < SNAP {
            p_plus = 0.0;
        } else if p_plus > 1.0 - SNAP {
            p_plus = 1.0;
        }
        let u: f64 = rng.gen();
        if u < p_plus {
            state = plus.normalized();
        } else {
            bits.set(r, true);
            state = state.sub(&image)?.scaled(Complex64::new(0.5, 0.0)).normalized();
        }
    }
    Ok((Syndrome::from(bits), state))
}

/// The error applied in one trial.
#[derive(Clone, Debug, PartialEq)]
pub enum ErrorSpec {
    Pauli(PauliOperator),
    /// Arbitrary 2×2 matrix on 1-based `qubit`; need not be unitary.
    Matrix { matrix: Matrix2, qubit: usize },
    /// Independent `X`, `Y` or `Z` (each with probability `p/3`) per qubit.
    Depolarizing(f64),
}

/// The logical state that is encoded before the error.
#[derive(Clone, Debug, PartialEq)]
pub enum LogicalInput {
    /// Logical basis word with this index.
    Basis(usize),
    /// Amplitudes over the logical basis (normalized internally).
    Amplitudes(Vec<Complex64>),
    /// Normalized complex Gaussian amplitudes drawn from the trial RNG.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialOutcome {
    Corrected,
    /// The measured syndrome has no table entry.
    Unmatched,
    /// The error mapped the state to zero; nothing was measured.
    Annihilated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecoveryReport {
    pub syndrome: Option<Syndrome>,
    pub correction: Option<PauliOperator>,
    pub fidelity: f64,
    pub success: bool,
    pub outcome: TrialOutcome,
}

/// A code prepared for simulation: validated group, correction table and
/// dense logical basis.
pub struct Simulator {
    group: StabilizerGroup,
    table: SyndromeTable,
    basis: Vec<StateVector>,
}

impl Simulator {
    pub fn new(code: &CodeSpec, t: usize) -> Result<Self, SimError> {
        let (group, basis) = oracle::code_basis_vectors(code)?;
        let table = build_syndrome_table(&group, t)?;
        Ok(Self { group, table, basis })
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn group(&self) -> &StabilizerGroup {
        &self.group
    }

    pub fn table(&self) -> &SyndromeTable {
        &self.table
    }

    pub fn logical_dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[StateVector] {
        &self.basis
    }

    /// Encodes `Σ α_i |ψ_i>` for the given logical input.
    pub fn encode<R: Rng + ?Sized>(&self, input: &LogicalInput, rng: &mut R) -> Result<StateVector, SimError> {
        let dim = self.basis.len();
        let amplitudes: Vec<Complex64> = match input {
            LogicalInput::Basis(i) => {
                if *i >= dim {
                    return Err(SimError::LogicalIndexOutOfRange {
                        index: *i,
                        k: dim.trailing_zeros() as usize,
                    });
                }
                return Ok(self.basis[*i].clone());
            }
            LogicalInput::Amplitudes(a) => {
                if a.len() != dim {
                    return Err(SimError::WrongInputLength { expected: dim, found: a.len() });
                }
                a.clone()
            }
            LogicalInput::Random => (0..dim)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect(),
        };
        let mut state = StateVector::zeros(self.n())?;
        for (alpha, psi) in amplitudes.iter().zip(&self.basis) {
            state = state.add(&psi.scaled(*alpha))?;
        }
        if state.norm_squared() == 0.0 {
            return Err(SimError::ZeroState);
        }
        Ok(state.normalized())
    }

    fn corrupt<R: Rng + ?Sized>(&self, state: &StateVector, error: &ErrorSpec, rng: &mut R) -> Result<StateVector, SimError> {
        match error {
            ErrorSpec::Pauli(p) => {
                if p.n() != self.n() {
                    return Err(SimError::ErrorSize { expected: self.n(), found: p.n() });
                }
                Ok(apply_pauli(p, state)?)
            }
            ErrorSpec::Matrix { matrix, qubit } => Ok(apply_single_qubit(matrix, *qubit, state)?),
            ErrorSpec::Depolarizing(p) => {
                let op = sample_depolarizing(self.n(), *p, rng)?;
                Ok(apply_pauli(&op, state)?)
            }
        }
    }

    /// One round of encode, corrupt, measure, correct.
    pub fn run_trial<R: Rng + ?Sized>(
        &self,
        input: &LogicalInput,
        error: &ErrorSpec,
        rng: &mut R,
    ) -> Result<RecoveryReport, SimError> {
        let encoded = self.encode(input, rng)?;
        let corrupted = self.corrupt(&encoded, error, rng)?;
        if corrupted.norm_squared() == 0.0 {
            return Ok(RecoveryReport {
                syndrome: None,
                correction: None,
                fidelity: 0.0,
                success: false,
                outcome: TrialOutcome::Annihilated,
            });
        }
        let (syndrome, collapsed) = measure_syndrome(&corrupted, &self.group, rng)?;
        let Some(correction) = self.table.lookup(&syndrome) else {
            let fidelity = encoded.inner(&collapsed)?.norm().min(1.0);
            return Ok(RecoveryReport {
                syndrome: Some(syndrome),
                correction: None,
                fidelity,
                success: false,
                outcome: TrialOutcome::Unmatched,
            });
        };
        let recovered = apply_pauli(correction, &collapsed)?.normalized();
        let fidelity = encoded.inner(&recovered)?.norm().min(1.0);
        Ok(RecoveryReport {
            syndrome: Some(syndrome),
            correction: Some(correction.clone()),
            fidelity,
            success: fidelity >= SUCCESS_THRESHOLD,
            outcome: TrialOutcome::Corrected,
        })
    }
}

/// Draws a depolarizing error: each qubit independently gets `X`, `Y` or
/// `Z` with total probability `p`.
pub fn sample_depolarizing<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<PauliOperator, SimError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(SimError::BadProbability(p));
    }
    let mut op = PauliOperator::identity(n)?;
    for q in 1..=n {
        let u: f64 = rng.gen();
        if u < p {
            let letter = Letter::NONTRIVIAL[rng.gen_range(0..3)];
            op = op.multiply(&PauliOperator::single(n, q, letter)?)?;
        }
    }
    Ok(op)
}

/// Complex Gaussian 2×2 matrix, generally neither unitary nor invertible
/// in any special way.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    let mut entry = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    [[entry(), entry()], [entry(), entry()]]
}

/// Independent RNG stream for trial `index` of a campaign seeded with
/// `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Noise model of a campaign.
#[derive(Clone, Debug, PartialEq)]
pub enum NoiseModel {
    /// Every single-qubit Pauli on every logical basis word; the trial
    /// count is fixed at `3n · 2^k`.
    Exhaustive,
    Pauli(PauliOperator),
    Matrix { matrix: Matrix2, qubit: usize },
    /// Fresh random matrix on a uniformly chosen qubit per trial.
    RandomMatrix,
    Depolarizing(f64),
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseModel::Exhaustive => write!(f, "exhaustive"),
            NoiseModel::Pauli(p) => write!(f, "pauli:{p}"),
            NoiseModel::Matrix { matrix, qubit } => {
                let e = [matrix[0][0], matrix[0][1], matrix[1][0], matrix[1][1]];
                let parts: Vec<String> = e.iter().map(format_complex).collect();
                write!(f, "matrix:{}@{qubit}", parts.join(","))
            }
            NoiseModel::RandomMatrix => write!(f, "random-matrix"),
            NoiseModel::Depolarizing(p) => write!(f, "depolarizing:{p}"),
        }
    }
}

fn format_complex(z: &Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// Parses `x`, `yi`, `x+yi`, `x-yi`, `i` or `-i`.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return s.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| (bytes[p] == b'+' || bytes[p] == b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let parse_im = |t: &str| match t {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => t.parse::<f64>().ok(),
    };
    match split {
        Some(p) => Some(Complex64::new(body[..p].parse().ok()?, parse_im(&body[p..])?)),
        None => Some(Complex64::new(0.0, parse_im(body)?)),
    }
}

impl FromStr for NoiseModel {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SimError::BadModel(s.to_string());
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        match (kind, arg) {
            ("exhaustive", None) => Ok(NoiseModel::Exhaustive),
            ("random-matrix", None) => Ok(NoiseModel::RandomMatrix),
            ("pauli", Some(a)) => Ok(NoiseModel::Pauli(a.parse().map_err(|_| bad())?)),
            ("depolarizing", Some(a)) => {
                let p: f64 = a.parse().map_err(|_| bad())?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(SimError::BadProbability(p));
                }
                Ok(NoiseModel::Depolarizing(p))
            }
            ("matrix", Some(a)) => {
                let (entries, qubit) = a.rsplit_once('@').ok_or_else(bad)?;
                let qubit: usize = qubit.trim().parse().map_err(|_| bad())?;
                let e: Vec<Complex64> = entries.split(',').map(parse_complex).collect::<Option<_>>().ok_or_else(bad)?;
                if e.len() != 4 || qubit == 0 {
                    return Err(bad());
                }
                Ok(NoiseModel::Matrix {
                    matrix: [[e[0], e[1]], [e[2], e[3]]],
                    qubit,
                })
            }
            _ => Err(bad()),
        }
    }
}

/// Aggregated campaign results. Serializes deterministically.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignStats {
    pub model: String,
    pub seed: u64,
    pub trials: usize,
    pub successes: usize,
    pub unmatched: usize,
    pub annihilated: usize,
    pub success_rate: f64,
    pub min_fidelity: f64,
    pub syndrome_histogram: BTreeMap<String, usize>,
}

impl CampaignStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }
}

/// Runs `trials` independent trials (or the fixed exhaustive set) in
/// parallel; trial `i` uses [`trial_rng`]`(seed, i)`.
pub fn run_campaign(sim: &Simulator, model: &NoiseModel, trials: usize, seed: u64) -> Result<CampaignStats, SimError> {
    let n = sim.n();
    if let NoiseModel::Pauli(p) = model {
        if p.n() != n {
            return Err(SimError::ErrorSize { expected: n, found: p.n() });
        }
    }
    if let NoiseModel::Matrix { qubit, .. } = model {
        if *qubit > n {
            return Err(OracleError::IndexOutOfRange { index: *qubit, n }.into());
        }
    }
    let dim = sim.logical_dimension();
    let count = match model {
        NoiseModel::Exhaustive => 3 * n * dim,
        _ => trials,
    };
    let reports: Vec<RecoveryReport> = (0..count)
        .into_par_iter()
        .map(|index| {
            let mut rng = trial_rng(seed, index as u64);
            let (input, error) = match model {
                NoiseModel::Exhaustive => {
                    let e = index / dim;
                    let op = PauliOperator::single(n, e / 3 + 1, Letter::NONTRIVIAL[e % 3])?;
                    (LogicalInput::Basis(index % dim), ErrorSpec::Pauli(op))
                }
                NoiseModel::Pauli(p) => (LogicalInput::Random, ErrorSpec::Pauli(p.clone())),
                NoiseModel::Matrix { matrix, qubit } => (
                    LogicalInput::Random,
                    ErrorSpec::Matrix {
                        matrix: *matrix,
                        qubit: *qubit,
                    },
                ),
                NoiseModel::RandomMatrix => {
                    let matrix = random_matrix(&mut rng);
                    let qubit = rng.gen_range(1..=n);
                    (LogicalInput::Random, ErrorSpec::Matrix { matrix, qubit })
                }
                NoiseModel::Depolarizing(p) => (LogicalInput::Random, ErrorSpec::Depolarizing(*p)),
            };
            sim.run_trial(&input, &error, &mut rng)
        })
        .collect::<Result<_, _>>()?;

    let mut stats = CampaignStats {
        model: model.to_string(),
        seed,
        trials: count,
        successes: 0,
        unmatched: 0,
        annihilated: 0,
        success_rate: 0.0,
        min_fidelity: 1.0,
        syndrome_histogram: BTreeMap::new(),
    };
    for r in &reports {
        stats.successes += r.success as usize;
        match r.outcome {
            TrialOutcome::Corrected => {}
            TrialOutcome::Unmatched => stats.unmatched += 1,
            TrialOutcome::Annihilated => stats.annihilated += 1,
        }
        stats.min_fidelity = stats.min_fidelity.min(r.fidelity);
        if let Some(s) = &r.syndrome {
            *stats.syndrome_histogram.entry(s.to_string()).or_default() += 1;
        }
    }
    stats.success_rate = if count == 0 { 1.0 } else { stats.successes as f64 / count as f64 };
    Ok(stats)
}
