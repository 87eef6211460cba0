use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stabforge::family::{build_code, CodeSpec};
use stabforge::oracle::{apply_pauli, pauli_matrix, verify_code, OracleFailure, StateVector};
use stabforge::PauliOperator;

fn random_pauli(rng: &mut ChaCha8Rng, n: usize) -> PauliOperator {
    let s: String = std::iter::once(if rng.gen() { '+' } else { '-' })
        .chain((0..n).map(|_| ['I', 'X', 'Y', 'Z'][rng.gen_range(0..4)]))
        .collect();
    s.parse().unwrap()
}

#[test]
fn dense_matrices_agree_with_the_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..1000 {
        let n = 1 + trial % 3;
        let (p, q) = (random_pauli(&mut rng, n), random_pauli(&mut rng, n));
        let (mp, mq) = (pauli_matrix(&p), pauli_matrix(&q));
        assert_eq!(&mp * &mq, pauli_matrix(&p.multiply(&q).unwrap()));
        let commutator = &mp * &mq - &mq * &mp;
        assert_eq!(commutator.iter().all(|z| z.norm() == 0.0), p.commutes(&q).unwrap());
        // the signed-permutation action equals the matrix on basis vectors
        for b in 0..1usize << n {
            let image = apply_pauli(&p, &StateVector::basis(n, b).unwrap()).unwrap();
            for (row, amp) in image.amplitudes().iter().enumerate() {
                assert_eq!(*amp, mp[(row, b)]);
            }
        }
    }
}

#[test]
fn eight_qubit_code_passes_for_one_error() {
    let report = verify_code(&build_code(3).unwrap(), 1).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.error_images, 200);
    assert_eq!(report.rank, Some(200));
    assert!(report.basis_orthonormality_error < 1e-12);
}

#[test]
fn eight_qubit_code_fails_for_two_errors() {
    let report = verify_code(&build_code(3).unwrap(), 2).unwrap();
    let Some(OracleFailure::Overlap { left, right, magnitude }) = report.failure else {
        panic!("expected an overlap witness, got {:?}", report.failure);
    };
    assert_eq!(left.syndrome, right.syndrome);
    assert_ne!(left.logical, right.logical);
    assert!(magnitude > 0.5);
}

#[test]
fn five_qubit_code_is_perfect() {
    let gens = ["+XZZXI", "+IXZZX", "+XIXZZ", "+ZXIXZ"];
    let code = CodeSpec {
        n: 5,
        k: 1,
        j: None,
        generators: gens.iter().map(|g| g.parse().unwrap()).collect(),
        seed_generators: Vec::new(),
        construction: "custom".into(),
        version: 1,
    };
    let h = code.stabilizer_group().unwrap();
    let code = CodeSpec {
        seed_generators: stabforge::codewords::seed_generators(&h).unwrap(),
        ..code
    };
    let report = verify_code(&code, 1).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.error_images, 32);
}

#[test]
fn oracle_refuses_large_codes() {
    assert!(verify_code(&build_code(4).unwrap(), 1).is_err());
}
