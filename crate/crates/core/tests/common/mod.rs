#![allow(dead_code)]

use stabforge::{BitString, FormalState};

/// Code words of the 8-qubit code as printed, in printed order and signs.
pub const PRINTED_CODEWORDS: [[&str; 16]; 8] = [
    [
        "+00000000",
        "+11111111",
        "+10100101",
        "+10101010",
        "+10010110",
        "+01011010",
        "+01010101",
        "+01101001",
        "+00001111",
        "+00110011",
        "+00111100",
        "+11110000",
        "+11001100",
        "+11000011",
        "+10011001",
        "+01100110",
    ],
    [
        "+11000000",
        "+00111111",
        "+01100101",
        "+01101010",
        "-01010110",
        "+10011010",
        "+10010101",
        "-10101001",
        "+11001111",
        "-11110011",
        "-11111100",
        "+00110000",
        "-00001100",
        "-00000011",
        "-01011001",
        "-10100110",
    ],
    [
        "+10100000",
        "+01011111",
        "+00000101",
        "-00001010",
        "+00110110",
        "+11111010",
        "-11110101",
        "+11001001",
        "-10101111",
        "+10010011",
        "-10011100",
        "-01010000",
        "+01101100",
        "-01100011",
        "-00111001",
        "-11000110",
    ],
    [
        "+01100000",
        "+10011111",
        "+11000101",
        "-11001010",
        "-11110110",
        "+00111010",
        "-00110101",
        "-00001001",
        "-01101111",
        "-01010011",
        "+01011100",
        "-10010000",
        "-10101100",
        "+10100011",
        "+11111001",
        "+00000110",
    ],
    [
        "+10001000",
        "+01110111",
        "-00101101",
        "+00100010",
        "+00011110",
        "-11010010",
        "+11011101",
        "+11100001",
        "-10000111",
        "-10111011",
        "+10110100",
        "-01111000",
        "-01000100",
        "+01001011",
        "-00010001",
        "-11101110",
    ],
    [
        "+01001000",
        "+10110111",
        "-11101101",
        "+11100010",
        "-11011110",
        "-00010010",
        "+00011101",
        "-00100001",
        "-01000111",
        "+01111011",
        "-01110100",
        "-10111000",
        "+10000100",
        "-10001011",
        "+11010001",
        "+00101110",
    ],
    [
        "+00101000",
        "+11010111",
        "-10001101",
        "-10000010",
        "+10111110",
        "-01110010",
        "-01111101",
        "+01000001",
        "+00100111",
        "-00011011",
        "-00010100",
        "+11011000",
        "-11100100",
        "-11101011",
        "+10110001",
        "+01001110",
    ],
    [
        "+11101000",
        "+00010111",
        "-01001101",
        "-01000010",
        "-01111110",
        "-10110010",
        "-10111101",
        "-10000001",
        "+11100111",
        "+11011011",
        "+11010100",
        "+00011000",
        "+00100100",
        "+00101011",
        "-01110001",
        "-10001110",
    ],
];

/// Single-qubit error syndromes as printed: `(X_i, Z_i, Y_i)` for i = 1..8.
pub const PRINTED_SYNDROMES: [(&str, &str, &str); 8] = [
    ("01000", "10111", "11111"),
    ("01001", "10000", "11001"),
    ("01010", "10110", "11100"),
    ("01011", "10001", "11010"),
    ("01100", "10010", "11110"),
    ("01101", "10101", "11000"),
    ("01110", "10011", "11101"),
    ("01111", "10100", "11011"),
];

pub const PRINTED_GENERATORS: [&str; 5] = ["+XXXXXXXX", "+ZZZZZZZZ", "+XIXIZYZY", "+XIYZXIYZ", "+XZIYIYXZ"];
pub const PRINTED_SEEDS: [&str; 3] = ["+XXIIIIII", "+XIXIIIII", "+XIIIXIII"];

/// Rows n = 5..=13 of the printed bound table.
pub const HAMMING_LIMITS: [(usize, i64); 9] = [(5, 1), (6, 1), (7, 2), (8, 3), (9, 4), (10, 5), (11, 5), (12, 6), (13, 7)];

pub fn printed_state(terms: &[&str]) -> FormalState {
    FormalState::from_terms(
        8,
        terms.iter().map(|t| {
            let coeff = if t.starts_with('-') { -1 } else { 1 };
            (BitString::from_binary(&t[1..]).unwrap(), coeff)
        }),
    )
}
