//! Construction and exhaustive verification of stabilizer quantum
//! error-correcting codes.
//!
//! The modules build on each other bottom-up:
//!
//! * [`pauli`]: the real Pauli group in binary-symplectic form.
//! * [`stabilizer`]: validated stabilizer groups, syndromes, correctability.
//! * [`codewords`]: generator classification, seed generators and exact
//!   integer code words.
//! * [`bounds`]: counting bounds, including the degenerate-code variant.
//! * [`family`]: the `n = 2^j` family that meets the counting bound.
//! * [`oracle`]: dense state vectors as an independent check (`n <= 12`).
//! * [`ecc_sim`]: encode, corrupt, measure, correct and score fidelity.
//! * [`cli`]: the `stabforge` command-line front end.

pub mod bits;
pub mod bounds;
pub mod cli;
pub mod codewords;
pub mod ecc_sim;
pub mod family;
pub mod gf2;
pub mod oracle;
pub mod pauli;
pub mod stabilizer;
pub mod tables;

pub use bits::BitString;
pub use codewords::{FormalState, GeneratorClassification, SeedGenerator};
pub use family::CodeSpec;
pub use pauli::{Letter, PauliOperator, Sign};
pub use stabilizer::{StabilizerGroup, Syndrome};
