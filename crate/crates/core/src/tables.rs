//! Byte-stable text renderings of the reference tables: single-qubit error
//! syndromes, generators with seed generators, code words and the counting
//! bound. Every line ends in `\n`.

use std::fmt::Write;

use crate::bounds::qhb_table;
use crate::codewords::FormalState;
use crate::family::{build_code, CodeSpec, FamilyError};
use crate::pauli::Letter;

const COLUMNS: usize = 4;

/// Syndromes of `X_i`, `Z_i`, `Y_i` computed from the generators, laid out
/// in blocks of four qubits with one row per letter.
pub fn syndrome_table(code: &CodeSpec) -> Result<String, FamilyError> {
    let group = code.stabilizer_group()?;
    let singles = group.single_qubit_syndromes();
    let mut out = String::new();
    writeln!(out, "Single-qubit error syndromes (n = {})", code.n).unwrap();
    let blocks: Vec<Vec<usize>> = (0..code.n).collect::<Vec<_>>().chunks(COLUMNS).map(<[usize]>::to_vec).collect();
    for (b, block) in blocks.iter().enumerate() {
        if b > 0 {
            writeln!(out, "--").unwrap();
        }
        for letter in [Letter::X, Letter::Z, Letter::Y] {
            let cells: Vec<String> = block
                .iter()
                .map(|&q| format!("{}_{} {}", letter.as_char(), q + 1, singles.of(q, letter)))
                .collect();
            writeln!(out, "{}", cells.join("  ")).unwrap();
        }
    }
    Ok(out)
}

/// Generators `M_r` followed by seed generators `N_i`.
pub fn generator_table(code: &CodeSpec) -> String {
    let mut out = String::new();
    writeln!(out, "Generators and seed generators (n = {}, k = {})", code.n, code.k).unwrap();
    for (r, m) in code.generators.iter().enumerate() {
        writeln!(out, "M_{}  {}", r + 1, m.to_text()).unwrap();
    }
    writeln!(out, "--").unwrap();
    for (i, s) in code.seed_generators.iter().enumerate() {
        writeln!(out, "N_{}  {}  {}", i + 1, s.to_pauli().to_text(), s.to_pauli().to_sparse_text().trim_start_matches('+')).unwrap();
    }
    out
}

/// Canonically signed code words, one per line.
pub fn codeword_table(code: &CodeSpec) -> Result<String, FamilyError> {
    let words: Vec<FormalState> = crate::codewords::basis(&code.stabilizer_group()?, &code.seed_generators)?;
    let mut out = String::new();
    writeln!(out, "Code words (n = {}, k = {}, {} terms each)", code.n, code.k, words.first().map_or(0, FormalState::len)).unwrap();
    for (i, w) in words.iter().enumerate() {
        writeln!(out, "psi_{i} = {}", w.canonicalized()).unwrap();
    }
    Ok(out)
}

/// `n k` rows of the counting bound for `min_n..=max_n`.
pub fn bound_table(min_n: usize, max_n: usize, t: usize) -> String {
    let mut out = String::new();
    writeln!(out, "Largest k allowed by the quantum Hamming bound (t = {t})").unwrap();
    writeln!(out, "{:>3}  {:>3}", "n", "k").unwrap();
    for row in qhb_table(max_n, t).into_iter().filter(|r| r.n >= min_n) {
        writeln!(out, "{:>3}  {:>3}", row.n, row.max_k).unwrap();
    }
    out
}

/// The three reference tables for the 8-qubit code, separated by blank
/// lines.
pub fn reference_tables() -> Result<String, FamilyError> {
    let code = build_code(3)?;
    Ok(format!(
        "{}\n{}\n{}",
        syndrome_table(&code)?,
        generator_table(&code),
        bound_table(5, 13, 1)
    ))
}
