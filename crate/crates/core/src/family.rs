//! The `[[2^j, 2^j - j - 2]]` family of single-error-correcting codes that
//! meet the counting bound with equality.
//!
//! Every single-qubit error gets a `(j+2)`-bit syndrome: the first two bits
//! say which letter it is (`01` for X, `10` for Z, `11` for Y) and the last
//! `j` bits say which qubit. The generators are then read off column by
//! column from those numbers.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitString;
use crate::bounds::qhb_max_k;
use crate::codewords::{seed_generators, CodewordError, SeedGenerator};
use crate::pauli::{Letter, PauliError, PauliOperator, Sign};
use crate::stabilizer::{StabilizerError, StabilizerGroup};

pub const MIN_J: usize = 3;
pub const MAX_J: usize = 16;

/// Name stored in the `construction` field of generated code files.
pub const CONSTRUCTION_NAME: &str = "hamming-saturating";
pub const CODE_SPEC_VERSION: u32 = 1;

/// Above this many qubits, code files omit `seed_generators` (the strings
/// would be `O(n^2)` characters); readers recompute them deterministically.
pub const SEED_JSON_MAX_N: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("j = {j} outside the supported range {min}..={max}")]
    JOutOfRange { j: usize, min: usize, max: usize },
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    Codeword(#[from] CodewordError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("code file: {0}")]
    Spec(String),
}

fn check_j(j: usize) -> Result<(), FamilyError> {
    if !(MIN_J..=MAX_J).contains(&j) {
        return Err(FamilyError::JOutOfRange {
            j,
            min: MIN_J,
            max: MAX_J,
        });
    }
    Ok(())
}

/// Syndrome numbers of `X_i`, `Z_i`, `Y_i` (`i` 1-based), each `j + 2` bits
/// stored as integers with generator `M_1`'s bit most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberAssignment {
    j: usize,
    fx: Vec<u32>,
    fz: Vec<u32>,
    fy: Vec<u32>,
}

impl NumberAssignment {
    pub fn j(&self) -> usize {
        self.j
    }

    pub fn n(&self) -> usize {
        1 << self.j
    }

    /// Bits per number, `a = j + 2`.
    pub fn width(&self) -> usize {
        self.j + 2
    }

    pub fn value(&self, letter: Letter, i: usize) -> u32 {
        match letter {
            Letter::I => 0,
            Letter::X => self.fx[i - 1],
            Letter::Y => self.fy[i - 1],
            Letter::Z => self.fz[i - 1],
        }
    }

    /// The number as an `a`-character binary string.
    pub fn bits(&self, letter: Letter, i: usize) -> String {
        BitString::from_u64_msb_first(self.value(letter, i) as u64, self.width()).to_binary_string()
    }

    /// Bit of generator `M_r` (1-based, `M_1` leftmost) in the number.
    pub fn bit(&self, letter: Letter, i: usize, r: usize) -> bool {
        (self.value(letter, i) >> (self.width() - r)) & 1 == 1
    }

    /// True when all `3n` numbers differ.
    pub fn all_distinct(&self) -> bool {
        let mut seen = HashSet::with_capacity(3 * self.n());
        self.fx
            .iter()
            .chain(&self.fz)
            .chain(&self.fy)
            .all(|&v| seen.insert(v))
    }
}

/// Whether `Z_i` takes the bitwise NOT of its counter: for even `j` on odd
/// `i`; for odd `j` on odd `i` in the first half and even `i` in the second.
fn z_is_inverted(j: usize, i: usize) -> bool {
    let odd = i % 2 == 1;
    if j.is_multiple_of(2) || i <= 1 << (j - 1) {
        odd
    } else {
        !odd
    }
}

pub fn assign_numbers(j: usize) -> Result<NumberAssignment, FamilyError> {
    if j < MIN_J {
        return Err(FamilyError::JOutOfRange {
            j,
            min: MIN_J,
            max: MAX_J,
        });
    }
    let n = 1usize << j;
    let low_mask: u32 = (1u32 << j) - 1;
    let x_tag = 0b01u32 << j;
    let z_tag = 0b10u32 << j;
    let mut fx = Vec::with_capacity(n);
    let mut fz = Vec::with_capacity(n);
    let mut fy = Vec::with_capacity(n);
    for i in 1..=n {
        let x = x_tag | (i as u32 - 1);
        let mut counter = (i as u32 - 1) / 2;
        if z_is_inverted(j, i) {
            counter = !counter & low_mask;
        }
        let z = z_tag | counter;
        fx.push(x);
        fz.push(z);
        fy.push(x ^ z);
    }
    Ok(NumberAssignment { j, fx, fz, fy })
}

/// `M_r` has an X component on qubit `i` iff it must anticommute with `Z_i`
/// (bit `r` of `f(Z_i)`), and a Z component iff it must anticommute with
/// `X_i` (bit `r` of `f(X_i)`). All signs are `+1`.
pub fn derive_generators(numbers: &NumberAssignment) -> Vec<PauliOperator> {
    let n = numbers.n();
    (1..=numbers.width())
        .map(|r| {
            let mut x = BitString::zeros(n);
            let mut z = BitString::zeros(n);
            for i in 1..=n {
                x.set(i - 1, numbers.bit(Letter::Z, i, r));
                z.set(i - 1, numbers.bit(Letter::X, i, r));
            }
            PauliOperator::from_bits(x, z, Sign::Plus).expect("n >= 8")
        })
        .collect()
}

/// Seed generators printed for the 8-qubit member: `X1X2`, `X1X3`, `X1X5`.
fn pinned_j3_seeds() -> Vec<SeedGenerator> {
    vec![
        SeedGenerator::new(8, vec![0, 1]),
        SeedGenerator::new(8, vec![0, 2]),
        SeedGenerator::new(8, vec![0, 4]),
    ]
}

/// Persistent description of a stabilizer code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub n: usize,
    pub k: usize,
    pub j: Option<usize>,
    pub generators: Vec<PauliOperator>,
    pub seed_generators: Vec<SeedGenerator>,
    pub construction: String,
    pub version: u32,
}

#[derive(Serialize, Deserialize)]
struct CodeSpecFile {
    n: usize,
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    generators: Vec<PauliOperator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed_generators: Option<Vec<PauliOperator>>,
    #[serde(default)]
    construction: String,
    #[serde(default = "default_version")]
    version: u32,
}

fn default_version() -> u32 {
    CODE_SPEC_VERSION
}

impl CodeSpec {
    pub fn a(&self) -> usize {
        self.generators.len()
    }

    /// Validates the generator list (strictly: no redundant generators).
    pub fn stabilizer_group(&self) -> Result<StabilizerGroup, FamilyError> {
        Ok(StabilizerGroup::new(self.n, self.generators.clone())?)
    }

    pub fn seed_paulis(&self) -> Vec<PauliOperator> {
        self.seed_generators.iter().map(SeedGenerator::to_pauli).collect()
    }

    pub fn to_json(&self) -> String {
        let file = CodeSpecFile {
            n: self.n,
            k: self.k,
            j: self.j,
            generators: self.generators.clone(),
            seed_generators: (self.n <= SEED_JSON_MAX_N).then(|| self.seed_paulis()),
            construction: self.construction.clone(),
            version: self.version,
        };
        serde_json::to_string_pretty(&file).expect("code spec serializes")
    }

    /// Parses a code file. Generators are not validated here; call
    /// [`CodeSpec::stabilizer_group`]. Missing seed generators are
    /// recomputed, which does require a valid group.
    pub fn from_json(text: &str) -> Result<Self, FamilyError> {
        let file: CodeSpecFile = serde_json::from_str(text).map_err(|e| FamilyError::Spec(e.to_string()))?;
        for (k, g) in file.generators.iter().enumerate() {
            if g.n() != file.n {
                return Err(FamilyError::Spec(format!(
                    "generator {} has {} qubits, expected {}",
                    k + 1,
                    g.n(),
                    file.n
                )));
            }
        }
        let seed_generators = match file.seed_generators {
            Some(list) => list
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    if p.n() != file.n {
                        return Err(FamilyError::Spec(format!("seed generator {} has wrong length", k + 1)));
                    }
                    SeedGenerator::from_pauli(p).ok_or_else(|| {
                        FamilyError::Spec(format!("seed generator {} is not a +1 product of X", k + 1))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?,
            None => {
                let h = StabilizerGroup::new(file.n, file.generators.clone())?;
                seed_generators(&h)?
            }
        };
        Ok(CodeSpec {
            n: file.n,
            k: file.k,
            j: file.j,
            generators: file.generators,
            seed_generators,
            construction: file.construction,
            version: file.version,
        })
    }
}

/// Builds the family member with `n = 2^j`.
pub fn build_code(j: usize) -> Result<CodeSpec, FamilyError> {
    check_j(j)?;
    let numbers = assign_numbers(j)?;
    let generators = derive_generators(&numbers);
    let n = numbers.n();
    let h = StabilizerGroup::new(n, generators.clone())?;
    let seeds = if j == 3 { pinned_j3_seeds() } else { seed_generators(&h)? };
    let k = n - j - 2;
    assert_eq!(seeds.len(), k, "seed generator count must equal k");
    Ok(CodeSpec {
        n,
        k,
        j: Some(j),
        generators,
        seed_generators: seeds,
        construction: CONSTRUCTION_NAME.to_string(),
        version: CODE_SPEC_VERSION,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LetterCensus {
    pub i: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

pub fn letter_census(p: &PauliOperator) -> LetterCensus {
    let y = p.x_bits().and_count(p.z_bits());
    let x = p.x_bits().count_ones() - y;
    let z = p.z_bits().count_ones() - y;
    LetterCensus {
        i: p.n() - x - y - z,
        x,
        y,
        z,
    }
}

/// Commutation decided by counting qubits where both operators act
/// non-trivially with different letters; an even count means they commute.
pub fn commutes_by_disagreement(p: &PauliOperator, q: &PauliOperator) -> Result<bool, PauliError> {
    if p.n() != q.n() {
        return Err(PauliError::QubitCountMismatch {
            left: p.n(),
            right: q.n(),
        });
    }
    let (px, pz, qx, qz) = (p.x_bits().words(), p.z_bits().words(), q.x_bits().words(), q.z_bits().words());
    let count: u32 = (0..px.len())
        .map(|w| {
            let both = (px[w] | pz[w]) & (qx[w] | qz[w]);
            let differ = (px[w] ^ qx[w]) | (pz[w] ^ qz[w]);
            (both & differ).count_ones()
        })
        .sum();
    Ok(count.is_multiple_of(2))
}

/// Outcome of the algebraic checks run on one family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub j: usize,
    pub n: usize,
    pub k: usize,
    pub a: usize,
    pub numbers_distinct: bool,
    pub validates: bool,
    pub syndromes_distinct: bool,
    pub generators_commute: bool,
    pub squares_to_plus_one: bool,
    pub census_balanced: bool,
    pub saturates_bound: bool,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.numbers_distinct
            && self.validates
            && self.syndromes_distinct
            && self.generators_commute
            && self.squares_to_plus_one
            && self.census_balanced
            && self.saturates_bound
    }
}

pub fn check_family_member(j: usize) -> Result<FamilyCheck, FamilyError> {
    check_j(j)?;
    let numbers = assign_numbers(j)?;
    let generators = derive_generators(&numbers);
    let n = numbers.n();
    let group = StabilizerGroup::new(n, generators.clone());
    let syndromes_distinct = match &group {
        Ok(h) => h.check_correctability(1).passed(),
        Err(_) => false,
    };
    let generators_commute = generators
        .iter()
        .enumerate()
        .all(|(r, m)| generators[r + 1..].iter().all(|s| m.commutes_unchecked(s)));
    let quarter = n / 4;
    let census_balanced = generators.iter().enumerate().all(|(r, m)| {
        let c = letter_census(m);
        match r {
            0 => c == LetterCensus { x: n, ..Default::default() },
            1 => c == LetterCensus { z: n, ..Default::default() },
            _ => c == LetterCensus { i: quarter, x: quarter, y: quarter, z: quarter },
        }
    });
    let k = n - j - 2;
    Ok(FamilyCheck {
        j,
        n,
        k,
        a: generators.len(),
        numbers_distinct: numbers.all_distinct(),
        validates: group.is_ok(),
        syndromes_distinct,
        generators_commute,
        squares_to_plus_one: generators.iter().all(|m| m.square_sign() == Sign::Plus),
        census_balanced,
        saturates_bound: qhb_max_k(n, 1) == k as i64,
    })
}
