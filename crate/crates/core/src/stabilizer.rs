//! Stabilizer groups, the syndrome map and the non-degenerate
//! correctability criterion.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bits::BitString;
use crate::gf2::{EchelonBasis, Insertion};
use crate::pauli::{Letter, PauliError, PauliOperator, Sign};

/// Largest generator count for which the full group is ever enumerated.
pub const MAX_ENUMERATED_GENERATORS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizerError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("generator {index} acts on {found} qubits, expected {expected}")]
    QubitCountMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generators M_{r} and M_{s} anticommute")]
    NotAbelian { r: usize, s: usize },
    #[error("generator M_{r} squares to -1")]
    SquaresToMinusOne { r: usize },
    #[error("generators {subset:?} are linearly dependent")]
    DependentGenerators { subset: Vec<usize> },
    #[error("the product of generators {subset:?} is -I, so no state is fixed")]
    MinusIdentityInGroup { subset: Vec<usize> },
    #[error("group with {a} generators is too large to enumerate (limit {limit})")]
    GroupTooLarge { a: usize, limit: usize },
}

/// Non-fatal findings of [`StabilizerGroup::validate_reducing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationWarning {
    /// Generator `index` equals the product of `subset` and was dropped.
    RedundantGenerator { index: usize, subset: Vec<usize> },
}

impl fmt::Display for ValidationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationWarning::RedundantGenerator { index, subset } => write!(
                f,
                "generator M_{index} is the product of generators {subset:?}; dropped"
            ),
        }
    }
}

/// An `a`-bit anticommutation pattern, bit `r` set iff the error
/// anticommutes with `M_r`. Written with the `M_1` bit leftmost.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syndrome(BitString);

impl Syndrome {
    pub fn zeros(a: usize) -> Self {
        Syndrome(BitString::zeros(a))
    }

    pub fn bits(&self) -> &BitString {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_zero()
    }

    /// Bit of generator `M_r` (1-based).
    pub fn bit(&self, r: usize) -> bool {
        self.0.get(r - 1)
    }

    pub fn xor(&self, other: &Syndrome) -> Syndrome {
        Syndrome(self.0.xor(&other.0))
    }

    pub fn xor_assign(&mut self, other: &Syndrome) {
        self.0.xor_assign(&other.0);
    }

    pub fn parse(s: &str) -> Option<Self> {
        BitString::from_binary(s).map(Syndrome)
    }
}

impl From<BitString> for Syndrome {
    fn from(b: BitString) -> Self {
        Syndrome(b)
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Syndrome({})", self.0)
    }
}

impl Serialize for Syndrome {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_binary_string())
    }
}

impl<'de> Deserialize<'de> for Syndrome {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Syndrome::parse(&s).ok_or_else(|| serde::de::Error::custom("syndrome must be a binary string"))
    }
}

/// A Pauli error given by its non-identity factors (0-based qubits, sorted).
/// Used where building dense operators for every error would dominate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalError {
    pub factors: Vec<(usize, Letter)>,
}

impl LocalError {
    pub fn identity() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn weight(&self) -> usize {
        self.factors.len()
    }

    pub fn to_pauli(&self, n: usize) -> PauliOperator {
        let mut x = BitString::zeros(n);
        let mut z = BitString::zeros(n);
        for &(q, l) in &self.factors {
            let (xb, zb) = l.bits();
            x.set(q, xb);
            z.set(q, zb);
        }
        PauliOperator::from_bits(x, z, Sign::Plus).expect("n >= 1")
    }
}

/// Every Pauli error of weight `0..=max_weight` on `n` qubits, in increasing
/// weight; within a weight, qubit sets in lexicographic order and letters in
/// `X, Y, Z` order.
pub fn errors_up_to_weight(n: usize, max_weight: usize) -> impl Iterator<Item = LocalError> {
    (0..=max_weight.min(n)).flat_map(move |w| errors_of_weight(n, w))
}

fn errors_of_weight(n: usize, w: usize) -> impl Iterator<Item = LocalError> {
    let mut qubits: Option<Vec<usize>> = Some((0..w).collect());
    let mut letters = vec![0usize; w];
    std::iter::from_fn(move || {
        let qs = qubits.as_mut()?;
        let out = LocalError {
            factors: qs
                .iter()
                .zip(&letters)
                .map(|(&q, &l)| (q, Letter::NONTRIVIAL[l]))
                .collect(),
        };
        // advance letters (last position fastest), then qubit combination
        let mut pos = w;
        loop {
            if pos == 0 {
                letters.iter_mut().for_each(|l| *l = 0);
                if !next_combination(qs, n) {
                    qubits = None;
                }
                break;
            }
            pos -= 1;
            letters[pos] += 1;
            if letters[pos] < 3 {
                break;
            }
            letters[pos] = 0;
        }
        Some(out)
    })
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for t in i + 1..k {
                c[t] = c[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Outcome of [`StabilizerGroup::check_correctability`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Correctability {
    Pass {
        errors: usize,
        /// `2^a`, the number of possible syndromes.
        syndrome_space: u128,
    },
    Collision {
        first: PauliOperator,
        second: PauliOperator,
        syndrome: Syndrome,
    },
}

impl Correctability {
    pub fn passed(&self) -> bool {
        matches!(self, Correctability::Pass { .. })
    }
}

/// A validated stabilizer group given by independent, pairwise commuting
/// generators that each square to `+I`, with `-I` not in the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOperator>,
}

impl StabilizerGroup {
    /// Strict validation: any dependency among the generators is an error.
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self, StabilizerError> {
        let (group, warnings) = Self::validate_reducing(n, generators)?;
        if let Some(ValidationWarning::RedundantGenerator { index, subset }) = warnings.into_iter().next() {
            let mut subset = subset;
            subset.push(index);
            subset.sort_unstable();
            return Err(StabilizerError::DependentGenerators { subset });
        }
        Ok(group)
    }

    /// Validation that drops generators equal to a product of earlier ones
    /// and reports them as warnings. A dependency that produces `-I` is
    /// still an error.
    pub fn validate_reducing(
        n: usize,
        generators: Vec<PauliOperator>,
    ) -> Result<(Self, Vec<ValidationWarning>), StabilizerError> {
        if n == 0 {
            return Err(PauliError::ZeroQubits.into());
        }
        for (k, g) in generators.iter().enumerate() {
            if g.n() != n {
                return Err(StabilizerError::QubitCountMismatch {
                    index: k + 1,
                    expected: n,
                    found: g.n(),
                });
            }
        }
        for (k, g) in generators.iter().enumerate() {
            if g.square_sign() == Sign::Minus {
                return Err(StabilizerError::SquaresToMinusOne { r: k + 1 });
            }
        }
        for r in 0..generators.len() {
            for s in r + 1..generators.len() {
                if !generators[r].commutes_unchecked(&generators[s]) {
                    return Err(StabilizerError::NotAbelian { r: r + 1, s: s + 1 });
                }
            }
        }

        let mut basis = EchelonBasis::new(2 * n, generators.len());
        let mut kept = Vec::with_capacity(generators.len());
        let mut warnings = Vec::new();
        for (k, g) in generators.iter().enumerate() {
            match basis.insert(&g.x_bits().concat(g.z_bits())) {
                Insertion::Independent => kept.push(g.clone()),
                Insertion::Dependent(combo) => {
                    let product = combo
                        .iter()
                        .fold(g.clone(), |acc, &i| acc.mul_unchecked(&generators[i]));
                    debug_assert!(product.is_identity_up_to_sign());
                    let subset: Vec<usize> = combo.iter().map(|i| i + 1).collect();
                    if product.sign() == Sign::Minus {
                        let mut all = subset;
                        all.push(k + 1);
                        all.sort_unstable();
                        return Err(StabilizerError::MinusIdentityInGroup { subset: all });
                    }
                    warnings.push(ValidationWarning::RedundantGenerator { index: k + 1, subset });
                }
            }
        }
        Ok((Self { n, generators: kept }, warnings))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators `a`.
    pub fn a(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Generator `M_r`, 1-based.
    pub fn generator(&self, r: usize) -> &PauliOperator {
        &self.generators[r - 1]
    }

    pub fn syndrome(&self, error: &PauliOperator) -> Result<Syndrome, StabilizerError> {
        if error.n() != self.n {
            return Err(PauliError::QubitCountMismatch {
                left: self.n,
                right: error.n(),
            }
            .into());
        }
        let mut bits = BitString::zeros(self.a());
        for (r, m) in self.generators.iter().enumerate() {
            if !m.commutes_unchecked(error) {
                bits.set(r, true);
            }
        }
        Ok(Syndrome(bits))
    }

    /// Syndromes of `X_q` and `Z_q` for every 0-based qubit `q`, read
    /// column-wise from the generators: `M_r` anticommutes with `X_q` iff it
    /// has a Z component there, and with `Z_q` iff it has an X component.
    pub fn single_qubit_syndromes(&self) -> SingleQubitSyndromes {
        let a = self.a();
        let mut x = vec![BitString::zeros(a); self.n];
        let mut z = vec![BitString::zeros(a); self.n];
        for (r, m) in self.generators.iter().enumerate() {
            for q in m.z_bits().ones_iter() {
                x[q].set(r, true);
            }
            for q in m.x_bits().ones_iter() {
                z[q].set(r, true);
            }
        }
        SingleQubitSyndromes {
            x: x.into_iter().map(Syndrome).collect(),
            z: z.into_iter().map(Syndrome).collect(),
        }
    }

    /// All `2^a` group elements with signs, ordered by the binary mask of
    /// generators used (bit `r` of the index selects `M_{r+1}`).
    pub fn enumerate_elements(&self) -> Result<Vec<PauliOperator>, StabilizerError> {
        if self.a() > MAX_ENUMERATED_GENERATORS {
            return Err(StabilizerError::GroupTooLarge {
                a: self.a(),
                limit: MAX_ENUMERATED_GENERATORS,
            });
        }
        let mut elements = Vec::with_capacity(1 << self.a());
        elements.push(PauliOperator::identity(self.n)?);
        for g in &self.generators {
            let doubled: Vec<_> = elements.iter().map(|e| e.mul_unchecked(g)).collect();
            elements.extend(doubled);
        }
        Ok(elements)
    }

    /// Checks that every Pauli error of weight at most `t` has its own
    /// syndrome. Errors are visited in increasing weight, so the reported
    /// `first` of a collision never has larger weight than `second`.
    pub fn check_correctability(&self, t: usize) -> Correctability {
        let table = self.single_qubit_syndromes();
        let mut seen: HashMap<Syndrome, LocalError> = HashMap::new();
        let mut count = 0usize;
        for e in errors_up_to_weight(self.n, t) {
            let s = table.of_local(&e, self.a());
            count += 1;
            if let Some(prev) = seen.get(&s) {
                return Correctability::Collision {
                    first: prev.to_pauli(self.n),
                    second: e.to_pauli(self.n),
                    syndrome: s,
                };
            }
            seen.insert(s, e);
        }
        Correctability::Pass {
            errors: count,
            syndrome_space: 1u128.checked_shl(self.a() as u32).unwrap_or(u128::MAX),
        }
    }
}

/// Precomputed syndromes of single-qubit `X` and `Z` errors.
#[derive(Clone, Debug)]
pub struct SingleQubitSyndromes {
    pub x: Vec<Syndrome>,
    pub z: Vec<Syndrome>,
}

impl SingleQubitSyndromes {
    pub fn of(&self, q: usize, letter: Letter) -> Syndrome {
        match letter {
            Letter::I => Syndrome::zeros(self.x[q].len()),
            Letter::X => self.x[q].clone(),
            Letter::Z => self.z[q].clone(),
            Letter::Y => self.x[q].xor(&self.z[q]),
        }
    }

    pub fn of_local(&self, e: &LocalError, a: usize) -> Syndrome {
        let mut s = Syndrome::zeros(a);
        for &(q, l) in &e.factors {
            match l {
                Letter::I => {}
                Letter::X => s.xor_assign(&self.x[q]),
                Letter::Z => s.xor_assign(&self.z[q]),
                Letter::Y => {
                    s.xor_assign(&self.x[q]);
                    s.xor_assign(&self.z[q]);
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn table2() -> StabilizerGroup {
        let gens = ["XXXXXXXX", "ZZZZZZZZ", "XIXIZYZY", "XIYZXIYZ", "XZIYIYXZ"];
        StabilizerGroup::new(8, gens.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn validates_table_two() {
        assert_eq!(table2().a(), 5);
    }

    #[test]
    fn rejects_anticommuting_pair() {
        let err = StabilizerGroup::new(2, vec![p("XX"), p("ZX")]).unwrap_err();
        assert_eq!(err, StabilizerError::NotAbelian { r: 1, s: 2 });
    }

    #[test]
    fn rejects_generator_squaring_to_minus_one() {
        let err = StabilizerGroup::new(1, vec![p("Y")]).unwrap_err();
        assert_eq!(err, StabilizerError::SquaresToMinusOne { r: 1 });
    }

    #[test]
    fn rejects_minus_identity() {
        let err = StabilizerGroup::new(2, vec![p("ZZ"), p("-ZZ")]).unwrap_err();
        assert_eq!(err, StabilizerError::MinusIdentityInGroup { subset: vec![1, 2] });
        // XX·ZZ = +YY
        let err = StabilizerGroup::new(2, vec![p("XX"), p("ZZ"), p("YY")]).unwrap_err();
        assert_eq!(err, StabilizerError::DependentGenerators { subset: vec![1, 2, 3] });
        let err = StabilizerGroup::new(2, vec![p("XX"), p("ZZ"), p("-YY")]).unwrap_err();
        assert_eq!(err, StabilizerError::MinusIdentityInGroup { subset: vec![1, 2, 3] });
    }

    #[test]
    fn reducing_validation_drops_redundant_generators() {
        let (g, warnings) =
            StabilizerGroup::validate_reducing(3, vec![p("ZZI"), p("IZZ"), p("ZIZ")]).unwrap();
        assert_eq!(g.a(), 2);
        assert_eq!(
            warnings,
            vec![ValidationWarning::RedundantGenerator { index: 3, subset: vec![1, 2] }]
        );
        assert!(StabilizerGroup::new(2, vec![p("II")]).is_err());
    }

    #[test]
    fn mismatched_qubit_count() {
        let err = StabilizerGroup::new(2, vec![p("ZZ"), p("ZZZ")]).unwrap_err();
        assert_eq!(err, StabilizerError::QubitCountMismatch { index: 2, expected: 2, found: 3 });
        assert!(table2().syndrome(&p("X")).is_err());
    }

    #[test]
    fn syndromes_of_table_one_entries() {
        let h = table2();
        assert_eq!(h.syndrome(&p("XIIIIIII")).unwrap().to_string(), "01000");
        assert_eq!(h.syndrome(&p("IIIIIIII")).unwrap().to_string(), "00000");
        assert_eq!(h.syndrome(&p("XZIIIIII")).unwrap().to_string(), "11000");
        assert_eq!(h.syndrome(&p("IIIIIYII")).unwrap().to_string(), "11000");
    }

    #[test]
    fn column_syndromes_agree_with_direct_syndromes() {
        let h = table2();
        let cols = h.single_qubit_syndromes();
        for q in 0..8 {
            for l in Letter::NONTRIVIAL {
                let e = PauliOperator::single(8, q + 1, l).unwrap();
                assert_eq!(cols.of(q, l), h.syndrome(&e).unwrap());
            }
        }
    }

    #[test]
    fn enumerate_small_groups() {
        let h = StabilizerGroup::new(2, vec![p("ZZ")]).unwrap();
        let els: Vec<String> = h.enumerate_elements().unwrap().iter().map(|e| e.to_text()).collect();
        assert_eq!(els, vec!["+II", "+ZZ"]);
        let h0 = StabilizerGroup::new(3, vec![]).unwrap();
        assert_eq!(h0.enumerate_elements().unwrap(), vec![p("+III")]);
    }

    #[test]
    fn enumeration_of_table_two_is_distinct_and_stabilizing() {
        let h = table2();
        let els = h.enumerate_elements().unwrap();
        assert_eq!(els.len(), 32);
        let set: std::collections::HashSet<_> = els.iter().collect();
        assert_eq!(set.len(), 32);
        for e in &els {
            assert!(h.syndrome(e).unwrap().is_trivial());
            assert_eq!(e.square_sign(), Sign::Plus);
        }
    }

    #[test]
    fn error_enumeration_counts() {
        assert_eq!(errors_up_to_weight(8, 1).count(), 25);
        assert_eq!(errors_up_to_weight(8, 2).count(), 1 + 24 + 9 * 28);
        assert_eq!(errors_up_to_weight(2, 5).count(), 16);
        let firsts: Vec<_> = errors_up_to_weight(2, 2).take(5).map(|e| e.to_pauli(2).to_text()).collect();
        assert_eq!(firsts, vec!["+II", "+XI", "+YI", "+ZI", "+IX"]);
    }

    #[test]
    fn correctability() {
        let h = table2();
        assert_eq!(
            h.check_correctability(1),
            Correctability::Pass { errors: 25, syndrome_space: 32 }
        );
        match h.check_correctability(2) {
            Correctability::Collision { first, second, syndrome } => {
                assert!(first.weight() <= second.weight());
                assert_eq!(second.weight(), 2);
                assert_eq!(h.syndrome(&first).unwrap(), syndrome);
                assert_eq!(h.syndrome(&second).unwrap(), syndrome);
            }
            other => panic!("expected a collision, got {other:?}"),
        }
        let small = StabilizerGroup::new(2, vec![p("ZZ")]).unwrap();
        assert!(!small.check_correctability(1).passed());
        assert!(small.check_correctability(0).passed());
    }
}
