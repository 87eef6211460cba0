mod common;

use std::collections::HashSet;

use common::{printed_state, PRINTED_CODEWORDS};
use stabforge::codewords::{basis, classify_generators, seed_generators, Encoder};
use stabforge::family::build_code;
use stabforge::oracle::{dense_from_formal, gram, joint_eigenspace_dimension};
use stabforge::{BitString, FormalState, PauliOperator, StabilizerGroup};

fn j3() -> (StabilizerGroup, Vec<FormalState>) {
    let code = build_code(3).unwrap();
    let h = code.stabilizer_group().unwrap();
    let words = basis(&h, &code.seed_generators).unwrap();
    (h, words)
}

#[test]
fn printed_code_words_match_exactly() {
    let (_, words) = j3();
    assert_eq!(words.len(), 8);
    for (i, printed) in PRINTED_CODEWORDS.iter().enumerate() {
        let expected = printed_state(printed);
        assert_eq!(expected.len(), 16, "printed psi_{i} has repeated labels");
        assert_eq!(words[i].canonicalized(), expected.canonicalized(), "psi_{i}");
    }
}

#[test]
fn printed_first_term_is_the_seed() {
    let code = build_code(3).unwrap();
    let seeds: Vec<BitString> = code.seed_generators.iter().map(|s| s.x_bits()).collect();
    for (i, printed) in PRINTED_CODEWORDS.iter().enumerate() {
        let mut label = BitString::zeros(8);
        for (m, seed) in seeds.iter().enumerate() {
            if i >> m & 1 == 1 {
                label.xor_assign(seed);
            }
        }
        assert_eq!(&printed[0][1..], label.to_binary_string(), "psi_{i}");
    }
}

#[test]
fn every_generator_fixes_every_code_word() {
    for j in [3, 4] {
        let code = build_code(j).unwrap();
        let h = code.stabilizer_group().unwrap();
        let words = basis(&h, &code.seed_generators).unwrap();
        for (i, w) in words.iter().enumerate() {
            for (r, m) in h.generators().iter().enumerate() {
                assert_eq!(&w.apply(m), w, "j = {j}, M_{} on psi_{i}", r + 1);
            }
        }
    }
}

#[test]
fn supports_are_disjoint_and_cover_the_even_subspace() {
    for j in [3, 4] {
        let code = build_code(j).unwrap();
        let h = code.stabilizer_group().unwrap();
        let classes = classify_generators(&h).unwrap();
        let words = basis(&h, &code.seed_generators).unwrap();
        assert_eq!(words.len(), 1 << code.k);
        let mut union = HashSet::new();
        for w in &words {
            assert_eq!(w.len(), 1 << classes.b());
            assert!(w.terms().all(|(_, c)| c == 1 || c == -1));
            for label in w.support() {
                assert!(union.insert(label.clone()), "label {label} in two code words");
            }
        }
        assert_eq!(union.len(), 1 << (code.n - classes.type2.len()));
    }
}

#[test]
fn equivalent_seeds_give_the_same_word() {
    let (h, words) = j3();
    let encoder = Encoder::new(&h).unwrap();
    let classes = encoder.classification().clone();
    let code = build_code(3).unwrap();
    for (i, w) in words.iter().enumerate() {
        let seed = w.support().next().unwrap().clone();
        for t1 in &classes.type1 {
            let shifted = seed.xor(t1.x_bits());
            let other = encoder.codeword(&shifted).unwrap();
            assert!(other == *w || other == w.negated(), "psi_{i} from {shifted}");
        }
    }
    // any two seed-generator choices span the same words up to sign
    let derived = seed_generators(&h).unwrap();
    let alternative = basis(&h, &derived).unwrap();
    let canon = |v: &[FormalState]| {
        let mut c: Vec<_> = v.iter().map(FormalState::canonicalized).collect();
        c.sort_by_key(|s| s.support().next().cloned());
        c
    };
    assert_eq!(canon(&alternative), canon(&words));
    assert_eq!(derived.len(), code.k);
}

#[test]
fn odd_parity_seed_is_annihilated() {
    let (h, _) = j3();
    let encoder = Encoder::new(&h).unwrap();
    let w = encoder.codeword(&BitString::from_binary("10000000").unwrap()).unwrap();
    assert!(w.is_zero());
    assert_eq!(dense_from_formal(&w).unwrap().norm(), 0.0);
}

#[test]
fn dense_basis_is_orthonormal() {
    let (_, words) = j3();
    let dense: Vec<_> = words.iter().map(|w| dense_from_formal(w).unwrap()).collect();
    let g = gram(&dense).unwrap();
    for r in 0..8 {
        for s in 0..8 {
            let expected = if r == s { 1.0 } else { 0.0 };
            assert!((g[(r, s)].re - expected).abs() < 1e-12 && g[(r, s)].im.abs() < 1e-12);
        }
    }
}

#[test]
fn code_space_dimension_is_eight() {
    let (h, _) = j3();
    let dim = joint_eigenspace_dimension(8, h.generators()).unwrap();
    assert!((dim - 8.0).abs() < 1e-10, "{dim}");
}

#[test]
fn small_custom_code_words() {
    // the stabilizer {ZZ} has code words |00> and |11>; {XX} gives |00> + |11> and |01> + |10>
    let zz = StabilizerGroup::new(2, vec!["+ZZ".parse::<PauliOperator>().unwrap()]).unwrap();
    let words = basis(&zz, &seed_generators(&zz).unwrap()).unwrap();
    let labels: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    assert_eq!(labels, vec!["+ |00>", "+ |11>"]);
    let xx = StabilizerGroup::new(2, vec!["+XX".parse::<PauliOperator>().unwrap()]).unwrap();
    let words = basis(&xx, &seed_generators(&xx).unwrap()).unwrap();
    let labels: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    assert_eq!(labels, vec!["+ |00> + |11>", "+ |01> + |10>"]);
}
