//! The real Pauli group on `n` qubits in binary-symplectic form.
//!
//! An operator is `sign · Π_i X_i^{x_i} Z_i^{z_i}` with the X factor to the
//! left of the Z factor on every qubit. With the real basis matrices
//!
//! ```text
//! X = [[0, 1], [1, 0]]   Y = [[0, -1], [1, 0]]   Z = [[1, 0], [0, -1]]
//! ```
//!
//! `X·Z = Y` exactly, so a qubit carrying both bits is the letter `Y` with no
//! extra phase, and the only phases that ever occur are `±1`.
//!
//! Qubit indices are 1-based in every public signature.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bits::BitString;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("a Pauli operator needs at least one qubit")]
    ZeroQubits,
    #[error("qubit index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },
    #[error("empty Pauli string")]
    Empty,
    #[error("illegal character {ch:?} at position {position} in Pauli string")]
    IllegalCharacter { ch: char, position: usize },
    #[error("group closure exceeds {limit} elements")]
    ClosureTooLarge { limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() ^ rhs.is_minus())
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign::from_parity(!self.is_minus())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const NONTRIVIAL: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitString,
    z: BitString,
    sign: Sign,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Result<Self, PauliError> {
        if n == 0 {
            return Err(PauliError::ZeroQubits);
        }
        Ok(Self {
            x: BitString::zeros(n),
            z: BitString::zeros(n),
            sign: Sign::Plus,
        })
    }

    /// `X_i`, `Y_i` or `Z_i` on `n` qubits (`i` is 1-based).
    pub fn single(n: usize, i: usize, letter: Letter) -> Result<Self, PauliError> {
        let mut p = Self::identity(n)?;
        if i == 0 || i > n {
            return Err(PauliError::IndexOutOfRange { index: i, n });
        }
        let (x, z) = letter.bits();
        p.x.set(i - 1, x);
        p.z.set(i - 1, z);
        Ok(p)
    }

    pub fn from_bits(x: BitString, z: BitString, sign: Sign) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::QubitCountMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        if x.is_empty() {
            return Err(PauliError::ZeroQubits);
        }
        Ok(Self { x, z, sign })
    }

    /// Pure-X operator on the given 0-based positions.
    pub fn x_on(n: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self, PauliError> {
        let mut p = Self::identity(n)?;
        for q in positions {
            if q >= n {
                return Err(PauliError::IndexOutOfRange { index: q + 1, n });
            }
            p.x.set(q, true);
        }
        Ok(p)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitString {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitString {
        &self.z
    }

    #[inline]
    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sign = sign;
        self
    }

    /// Letter on the 1-based qubit `i`.
    pub fn letter(&self, i: usize) -> Letter {
        Letter::from_bits(self.x.get(i - 1), self.z.get(i - 1))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.n()).map(|q| Letter::from_bits(self.x.get(q), self.z.get(q)))
    }

    pub fn is_identity_up_to_sign(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_pure_z(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_pure_x(&self) -> bool {
        self.z.is_zero()
    }

    fn check_same_n(&self, other: &Self) -> Result<(), PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::QubitCountMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// The product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self, PauliError> {
        self.check_same_n(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Moving each Z of `self` past an X of `other` costs a factor `-1`.
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let swaps = self.z.and_count(&other.x);
        Self {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            sign: self.sign * other.sign * Sign::from_parity(swaps % 2 == 1),
        }
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, PauliError> {
        self.check_same_n(other)?;
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        let parity = self.x.and_count(&other.z) + self.z.and_count(&other.x);
        parity.is_multiple_of(2)
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// `P² = square_sign(P) · I`; `-1` exactly when the number of `Y`s is odd.
    pub fn square_sign(&self) -> Sign {
        Sign::from_parity(self.x.and_count(&self.z) % 2 == 1)
    }

    /// Action on a computational basis state: `P|b> = s |b'>`.
    pub fn apply_to_label(&self, label: &BitString) -> (Sign, BitString) {
        assert_eq!(label.len(), self.n(), "label length mismatch");
        let phase = Sign::from_parity(self.z.and_count(label) % 2 == 1);
        (self.sign * phase, label.xor(&self.x))
    }

    /// Canonical text: explicit sign then one letter per qubit, qubit 1 first.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.n() + 1);
        s.push(self.sign.as_char());
        s.extend(self.letters().map(Letter::as_char));
        s
    }

    /// Compact form listing only the non-identity factors, e.g. `+X1X2`.
    pub fn to_sparse_text(&self) -> String {
        let mut s = String::new();
        s.push(self.sign.as_char());
        let mut any = false;
        for (q, l) in self.letters().enumerate() {
            if l != Letter::I {
                s.push(l.as_char());
                s.push_str(&(q + 1).to_string());
                any = true;
            }
        }
        if !any {
            s.push('I');
        }
        s
    }
}

impl Neg for PauliOperator {
    type Output = PauliOperator;
    fn neg(mut self) -> PauliOperator {
        self.sign = -self.sign;
        self
    }
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    /// Accepts an optional `+`, `-` or `−` prefix followed by `{I,X,Y,Z}^n`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (sign, body, offset) = if let Some(rest) = s.strip_prefix('+') {
            (Sign::Plus, rest, 1)
        } else if let Some(rest) = s.strip_prefix('-') {
            (Sign::Minus, rest, 1)
        } else if let Some(rest) = s.strip_prefix('\u{2212}') {
            (Sign::Minus, rest, 1)
        } else {
            (Sign::Plus, s, 0)
        };
        let n = body.chars().count();
        if n == 0 {
            return Err(PauliError::Empty);
        }
        let mut x = BitString::zeros(n);
        let mut z = BitString::zeros(n);
        for (q, ch) in body.chars().enumerate() {
            let letter = Letter::from_char(ch).ok_or(PauliError::IllegalCharacter {
                ch,
                position: q + offset,
            })?;
            let (xb, zb) = letter.bits();
            x.set(q, xb);
            z.set(q, zb);
        }
        Ok(Self { x, z, sign })
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({})", self.to_text())
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every product of `generators` (and the identity), found by breadth-first
/// multiplication. Sorted by text form. Fails once more than `limit`
/// elements have been found.
pub fn group_closure(generators: &[PauliOperator], limit: usize) -> Result<Vec<PauliOperator>, PauliError> {
    let Some(first) = generators.first() else {
        return Err(PauliError::Empty);
    };
    let n = first.n();
    let mut seen = std::collections::HashSet::new();
    let mut frontier = vec![PauliOperator::identity(n)?];
    seen.insert(frontier[0].clone());
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = p.multiply(g)?;
            if seen.insert(q.clone()) {
                if seen.len() > limit {
                    return Err(PauliError::ClosureTooLarge { limit });
                }
                frontier.push(q);
            }
        }
    }
    let mut all: Vec<_> = seen.into_iter().collect();
    all.sort_by_cached_key(PauliOperator::to_text);
    Ok(all)
}
