//! Exact code words as signed sums of computational basis states.
//!
//! Generators are split into type-1 (they move a basis state to a new basis
//! state) and type-2 (products of Z, which only attach a sign). A code word
//! is `Σ_{M ∈ H} M|φ>` for a seed label `φ`; summing over type-1 subsets is
//! enough because type-2 elements only repeat the same sum.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bits::BitString;
use crate::gf2::{rref, EchelonBasis, Insertion, PivotSide};
use crate::pauli::{PauliOperator, Sign};
use crate::stabilizer::{StabilizerError, StabilizerGroup, MAX_ENUMERATED_GENERATORS};

/// Largest `k` for which [`basis`] materializes all `2^k` code words.
pub const MAX_BASIS_LOGICAL_QUBITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodewordError {
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error("generator M_{index} reduces to {operator}, a product of Z with sign -1")]
    MinusSignPureZ { index: usize, operator: PauliOperator },
    #[error("{count} type-1 generators give 2^{count} terms per code word (limit 2^{limit})")]
    GroupTooLarge { count: usize, limit: usize },
    #[error("logical word has {found} bits, expected {expected}")]
    WrongLogicalLength { expected: usize, found: usize },
    #[error("{k} logical qubits give 2^{k} basis states (limit 2^{limit})")]
    BasisTooLarge { k: usize, limit: usize },
    #[error("seed label has {found} bits, expected {expected}")]
    WrongLabelLength { expected: usize, found: usize },
}

/// An integer combination of computational basis states. The empty map is
/// the zero vector.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalState {
    n: usize,
    terms: BTreeMap<BitString, i64>,
}

impl FormalState {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_state(label: BitString) -> Self {
        let n = label.len();
        let mut terms = BTreeMap::new();
        terms.insert(label, 1);
        Self { n, terms }
    }

    /// Builds a state from `(label, coefficient)` pairs, summing repeats and
    /// dropping zeros.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (BitString, i64)>) -> Self {
        let mut s = Self::zero(n);
        for (label, c) in terms {
            assert_eq!(label.len(), n, "label length mismatch");
            s.add_term(label, c);
        }
        s
    }

    fn add_term(&mut self, label: BitString, c: i64) {
        match self.terms.entry(label) {
            Entry::Vacant(v) => {
                if c != 0 {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
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

    /// Terms in ascending label order.
    pub fn terms(&self) -> impl Iterator<Item = (&BitString, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn coefficient(&self, label: &BitString) -> i64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &BitString> {
        self.terms.keys()
    }

    /// Squared Euclidean norm of the integer coefficients.
    pub fn norm_squared(&self) -> i64 {
        self.terms.values().map(|c| c * c).sum()
    }

    pub fn negated(&self) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// The state scaled by `±1` so that its smallest label has a positive
    /// coefficient.
    pub fn canonicalized(&self) -> Self {
        match self.terms.values().next() {
            Some(&c) if c < 0 => self.negated(),
            _ => self.clone(),
        }
    }

    /// Applies a Pauli operator; each basis state maps to `±` another one.
    pub fn apply(&self, p: &PauliOperator) -> Self {
        assert_eq!(p.n(), self.n, "qubit count mismatch");
        let mut out = Self::zero(self.n);
        for (label, &c) in &self.terms {
            let (s, image) = p.apply_to_label(label);
            out.add_term(image, s.as_i64() * c);
        }
        out
    }

    /// `self + P·self`, used to expand `(I + M)` factors.
    fn plus_image(&self, p: &PauliOperator) -> Self {
        let mut out = self.clone();
        for (label, &c) in &self.terms {
            let (s, image) = p.apply_to_label(label);
            out.add_term(image, s.as_i64() * c);
        }
        out
    }
}

impl fmt::Display for FormalState {
    /// `+|00000000> + |11111111> - |01010110> ...`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (label, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { '-' } else { '+' };
            if k > 0 {
                write!(f, " ")?;
            }
            if c.abs() == 1 {
                write!(f, "{sign} |{label}>")?;
            } else {
                write!(f, "{sign} {}|{label}>", c.abs())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FormalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalState({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    label: String,
    coeff: i64,
}

impl Serialize for FormalState {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (label, &coeff) in &self.terms {
            seq.serialize_element(&TermRecord {
                label: label.to_binary_string(),
                coeff,
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for FormalState {
    /// The qubit count is taken from the labels; an empty list cannot carry
    /// it and is rejected.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let first = records
            .first()
            .ok_or_else(|| D::Error::custom("empty term list has no qubit count"))?;
        let n = first.label.len();
        let mut terms = Vec::with_capacity(records.len());
        for r in &records {
            let label = BitString::from_binary(&r.label)
                .filter(|l| l.len() == n)
                .ok_or_else(|| D::Error::custom(format!("bad label {:?}", r.label)))?;
            terms.push((label, r.coeff));
        }
        Ok(FormalState::from_terms(n, terms))
    }
}

/// Type-1 generators keep a GF(2)-independent X part; type-2 generators are
/// products of Z with sign `+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorClassification {
    pub type1: Vec<PauliOperator>,
    pub type2: Vec<PauliOperator>,
    /// 1-based index of the generator each type-1 entry came from.
    pub type1_origin: Vec<usize>,
    /// 1-based index of the generator each type-2 entry was derived from.
    pub type2_origin: Vec<usize>,
}

impl GeneratorClassification {
    /// `b`, the number of type-1 generators.
    pub fn b(&self) -> usize {
        self.type1.len()
    }

    pub fn a(&self) -> usize {
        self.type1.len() + self.type2.len()
    }
}

/// Walks the generators in order. One whose X part is independent of the
/// earlier type-1 X parts stays as is (type 1). Otherwise it is multiplied by
/// the type-1 generators whose X parts sum to its own, leaving a product of
/// Z (a former type-3 generator becomes type-2).
pub fn classify_generators(h: &StabilizerGroup) -> Result<GeneratorClassification, CodewordError> {
    let n = h.n();
    let mut x_basis = EchelonBasis::new(n, h.a());
    let mut type1: Vec<PauliOperator> = Vec::new();
    let mut type1_origin = Vec::new();
    let mut type2 = Vec::new();
    let mut type2_origin = Vec::new();
    // insertion index into x_basis -> position in type1
    let mut inserted_to_type1: Vec<Option<usize>> = Vec::new();

    for (r, m) in h.generators().iter().enumerate() {
        let insertion = x_basis.insert(m.x_bits());
        match insertion {
            Insertion::Independent => {
                inserted_to_type1.push(Some(type1.len()));
                type1.push(m.clone());
                type1_origin.push(r + 1);
            }
            Insertion::Dependent(combo) => {
                inserted_to_type1.push(None);
                let reduced = combo.iter().fold(m.clone(), |acc, &i| {
                    let t = inserted_to_type1[i].expect("dependent items are never basis rows");
                    acc.mul_unchecked(&type1[t])
                });
                debug_assert!(reduced.is_pure_z());
                if reduced.sign() == Sign::Minus {
                    return Err(CodewordError::MinusSignPureZ {
                        index: r + 1,
                        operator: reduced,
                    });
                }
                type2.push(reduced);
                type2_origin.push(r + 1);
            }
        }
    }
    Ok(GeneratorClassification {
        type1,
        type2,
        type1_origin,
        type2_origin,
    })
}

/// A pure-X seed generator `N`, stored by its support.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SeedGenerator {
    n: usize,
    /// 0-based qubits, ascending.
    support: Vec<usize>,
}

impl SeedGenerator {
    /// `support` holds 0-based qubit indices.
    pub fn new(n: usize, mut support: Vec<usize>) -> Self {
        support.sort_unstable();
        support.dedup();
        assert!(support.iter().all(|&q| q < n), "seed support out of range");
        Self { n, support }
    }

    pub fn from_pauli(p: &PauliOperator) -> Option<Self> {
        if !p.is_pure_x() || p.sign() == Sign::Minus {
            return None;
        }
        Some(Self::new(p.n(), p.x_bits().ones_iter().collect()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based qubits carrying an `X`.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn x_bits(&self) -> BitString {
        BitString::from_positions(self.n, self.support.iter().copied())
    }

    pub fn to_pauli(&self) -> PauliOperator {
        PauliOperator::x_on(self.n, self.support.iter().copied()).expect("support checked in new")
    }
}

impl fmt::Display for SeedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pauli())
    }
}

/// Seed generators for a classified group.
///
/// Admissible seeds `N|0...0>` need `N` (pure X) to commute with every
/// type-2 generator, i.e. its X vector lies in the kernel `K` of the type-2
/// Z vectors. Two seeds give the same code word when they differ by the span
/// `W` of the type-1 X parts, so the answer is a basis of `K / W`.
///
/// The chosen basis is the lexicographically greedy one: each `N_i` is the
/// smallest vector of `K` outside `W + span(N_1..N_{i-1})`. Those vectors
/// are exactly the rows of the reduced echelon basis of `K ∩ {v : v_p = 0
/// for every pivot p of W}`, listed from the smallest up.
pub fn seed_generators_for(n: usize, classes: &GeneratorClassification) -> Vec<SeedGenerator> {
    let type1_x: Vec<BitString> = classes.type1.iter().map(|m| m.x_bits().clone()).collect();
    let w_pivots: Vec<usize> = rref(&type1_x, PivotSide::First).into_iter().map(|(p, _)| p).collect();
    let mut blocked = vec![false; n];
    for &p in &w_pivots {
        blocked[p] = true;
    }

    let constraints: Vec<BitString> = classes
        .type2
        .iter()
        .map(|m| {
            let mut z = m.z_bits().clone();
            for &p in &w_pivots {
                z.set(p, false);
            }
            z
        })
        .collect();
    // rightmost pivots: every row vanishes beyond its pivot, so the kernel
    // vector for a free column f has its leading one at f
    let reduced = rref(&constraints, PivotSide::Last);
    for (p, _) in &reduced {
        blocked[*p] = true;
    }

    (0..n)
        .rev()
        .filter(|&f| !blocked[f])
        .map(|f| {
            let mut support = vec![f];
            support.extend(reduced.iter().filter(|(_, row)| row.get(f)).map(|(p, _)| *p));
            SeedGenerator::new(n, support)
        })
        .collect()
}

pub fn seed_generators(h: &StabilizerGroup) -> Result<Vec<SeedGenerator>, CodewordError> {
    let classes = classify_generators(h)?;
    Ok(seed_generators_for(h.n(), &classes))
}

/// Expands code words for one stabilizer group.
#[derive(Clone, Debug)]
pub struct Encoder {
    n: usize,
    a: usize,
    classes: GeneratorClassification,
}

impl Encoder {
    pub fn new(h: &StabilizerGroup) -> Result<Self, CodewordError> {
        let classes = classify_generators(h)?;
        if classes.b() > MAX_ENUMERATED_GENERATORS {
            return Err(CodewordError::GroupTooLarge {
                count: classes.b(),
                limit: MAX_ENUMERATED_GENERATORS,
            });
        }
        Ok(Self {
            n: h.n(),
            a: h.a(),
            classes,
        })
    }

    pub fn classification(&self) -> &GeneratorClassification {
        &self.classes
    }

    /// `k = n - a`.
    pub fn logical_qubits(&self) -> usize {
        self.n - self.a
    }

    /// `Σ_{M ∈ H} M|seed>`, up to the factor `2^{a-b}` from type-2 elements.
    /// Zero when some type-2 generator has eigenvalue `-1` on the seed.
    pub fn codeword(&self, seed: &BitString) -> Result<FormalState, CodewordError> {
        if seed.len() != self.n {
            return Err(CodewordError::WrongLabelLength {
                expected: self.n,
                found: seed.len(),
            });
        }
        for m in &self.classes.type2 {
            let (s, image) = m.apply_to_label(seed);
            debug_assert_eq!(&image, seed);
            if s == Sign::Minus {
                return Ok(FormalState::zero(self.n));
            }
        }
        let mut state = FormalState::basis_state(seed.clone());
        for m in &self.classes.type1 {
            state = state.plus_image(m);
        }
        Ok(state)
    }

    /// `Π_{type 1}(I + M) N_1^{c_1} ... N_k^{c_k} |0...0>`, unnormalized
    /// (the normalization `2^{-b/2}` is left to the caller). `word[m]` is
    /// `c_{m+1}`.
    pub fn encode(&self, seeds: &[SeedGenerator], word: &[bool]) -> Result<FormalState, CodewordError> {
        if word.len() != seeds.len() {
            return Err(CodewordError::WrongLogicalLength {
                expected: seeds.len(),
                found: word.len(),
            });
        }
        let mut label = BitString::zeros(self.n);
        for (seed, &bit) in seeds.iter().zip(word) {
            if bit {
                for &q in seed.support() {
                    label.flip(q);
                }
            }
        }
        self.codeword(&label)
    }

    /// All `2^k` encodings; entry `i` encodes the word with
    /// `c_m = bit (m-1) of i`, so entry 1 is seeded by `N_1` alone.
    pub fn basis(&self, seeds: &[SeedGenerator]) -> Result<Vec<FormalState>, CodewordError> {
        let k = seeds.len();
        if k > MAX_BASIS_LOGICAL_QUBITS {
            return Err(CodewordError::BasisTooLarge {
                k,
                limit: MAX_BASIS_LOGICAL_QUBITS,
            });
        }
        (0..1usize << k)
            .map(|i| {
                let word = logical_word(i, k);
                self.encode(seeds, &word)
            })
            .collect()
    }
}

/// Bits `c_1..c_k` of logical basis index `i` (`c_1` least significant).
pub fn logical_word(i: usize, k: usize) -> Vec<bool> {
    (0..k).map(|m| (i >> m) & 1 == 1).collect()
}

pub fn codeword(h: &StabilizerGroup, seed: &BitString) -> Result<FormalState, CodewordError> {
    Encoder::new(h)?.codeword(seed)
}

pub fn encode(h: &StabilizerGroup, seeds: &[SeedGenerator], word: &[bool]) -> Result<FormalState, CodewordError> {
    Encoder::new(h)?.encode(seeds, word)
}

pub fn basis(h: &StabilizerGroup, seeds: &[SeedGenerator]) -> Result<Vec<FormalState>, CodewordError> {
    Encoder::new(h)?.basis(seeds)
}
