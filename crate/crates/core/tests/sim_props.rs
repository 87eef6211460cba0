use num_complex::Complex64;
use proptest::prelude::*;
use stabforge::ecc_sim::{
    measure_syndrome, random_matrix, run_campaign, trial_rng, ErrorSpec, LogicalInput, NoiseModel, Simulator,
    TrialOutcome, SUCCESS_THRESHOLD,
};
use stabforge::family::build_code;
use stabforge::oracle::{apply_pauli, apply_single_qubit, StateVector};
use stabforge::{Letter, PauliOperator};

fn sim() -> Simulator {
    Simulator::new(&build_code(3).unwrap(), 1).unwrap()
}

fn single(i: usize, l: Letter) -> PauliOperator {
    PauliOperator::single(8, i, l).unwrap()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn same_ray(a: &StateVector, b: &StateVector) -> bool {
    (a.inner(b).unwrap().norm() - 1.0).abs() < 1e-10
}

#[test]
fn pauli_image_gives_its_syndrome_deterministically() {
    let s = sim();
    let psi0 = s.basis()[0].clone();
    let corrupted = apply_pauli(&single(3, Letter::X), &psi0).unwrap();
    for seed in 0..20 {
        let (syndrome, after) = measure_syndrome(&corrupted, s.group(), &mut trial_rng(seed, 0)).unwrap();
        assert_eq!(syndrome.to_string(), "01010");
        assert!(after.distance(&corrupted).unwrap() < 1e-12);
    }
    let (syndrome, after) = measure_syndrome(&psi0, s.group(), &mut trial_rng(0, 0)).unwrap();
    assert_eq!(syndrome.to_string(), "00000");
    assert!(after.distance(&psi0).unwrap() < 1e-12);
}

#[test]
fn superposed_error_collapses_to_one_component() {
    let s = sim();
    let psi0 = s.basis()[0].clone();
    let x_image = apply_pauli(&single(1, Letter::X), &psi0).unwrap();
    let z_image = apply_pauli(&single(1, Letter::Z), &psi0).unwrap();
    let mixed = x_image.add(&z_image).unwrap().scaled(c(std::f64::consts::FRAC_1_SQRT_2));
    let trials = 2000;
    let mut x_count = 0;
    for seed in 0..trials {
        let (syndrome, after) = measure_syndrome(&mixed, s.group(), &mut trial_rng(seed, 3)).unwrap();
        match syndrome.to_string().as_str() {
            "01000" => {
                x_count += 1;
                assert!(same_ray(&after, &x_image));
            }
            "10111" => assert!(same_ray(&after, &z_image)),
            other => panic!("unexpected syndrome {other}"),
        }
    }
    let freq = x_count as f64 / trials as f64;
    assert!((freq - 0.5).abs() < 0.05, "{freq}");
}

#[test]
fn every_single_qubit_pauli_on_every_basis_word() {
    let s = sim();
    for i in 1..=8 {
        for l in Letter::NONTRIVIAL {
            for word in 0..8 {
                let r = s
                    .run_trial(&LogicalInput::Basis(word), &ErrorSpec::Pauli(single(i, l)), &mut trial_rng(5, word as u64))
                    .unwrap();
                assert!(r.success, "{l}{i} on word {word}: {r:?}");
                assert_eq!(r.correction.unwrap(), single(i, l));
            }
        }
    }
}

#[test]
fn y6_on_superpositions() {
    let s = sim();
    for t in 0..100 {
        let r = s
            .run_trial(&LogicalInput::Random, &ErrorSpec::Pauli(single(6, Letter::Y)), &mut trial_rng(11, t))
            .unwrap();
        assert_eq!(r.syndrome.unwrap().to_string(), "11000");
        assert!(r.fidelity >= SUCCESS_THRESHOLD);
    }
}

#[test]
fn projector_error_only_shows_its_components() {
    let s = sim();
    let projector = [[c(1.0), c(0.0)], [c(0.0), c(0.0)]];
    for q in 1..=8 {
        let z_syndrome = s.group().syndrome(&single(q, Letter::Z)).unwrap().to_string();
        for t in 0..40 {
            let r = s
                .run_trial(&LogicalInput::Random, &ErrorSpec::Matrix { matrix: projector, qubit: q }, &mut trial_rng(q as u64, t))
                .unwrap();
            let got = r.syndrome.clone().unwrap().to_string();
            assert!(got == "00000" || got == z_syndrome, "qubit {q}: {got}");
            assert!(r.success, "{r:?}");
        }
    }
}

#[test]
fn heavy_error_is_reported_not_thrown() {
    let s = sim();
    let e: PauliOperator = "+XXIIIIII".parse().unwrap();
    let r = s.run_trial(&LogicalInput::Basis(0), &ErrorSpec::Pauli(e), &mut trial_rng(0, 0)).unwrap();
    assert_eq!(r.outcome, TrialOutcome::Unmatched);
    assert_eq!(r.syndrome.unwrap().to_string(), "00001");
    assert!(!r.success);
}

#[test]
fn campaigns() {
    let s = sim();
    let exhaustive = run_campaign(&s, &NoiseModel::Exhaustive, 0, 1).unwrap();
    assert_eq!(exhaustive.trials, 192);
    assert_eq!(exhaustive.success_rate, 1.0);
    assert_eq!(exhaustive.syndrome_histogram.len(), 24);

    let clean = run_campaign(&s, &NoiseModel::Depolarizing(0.0), 50, 1).unwrap();
    assert_eq!(clean.success_rate, 1.0);
    assert_eq!(clean.syndrome_histogram.get("00000"), Some(&50));

    let noisy = |seed| run_campaign(&s, &NoiseModel::Depolarizing(0.2), 300, seed).unwrap().to_json();
    assert_eq!(noisy(42), noisy(42));
    assert_ne!(noisy(42), noisy(43));

    let random = run_campaign(&s, &NoiseModel::RandomMatrix, 200, 7).unwrap();
    assert_eq!(random.success_rate, 1.0);
}

#[test]
fn wrong_sized_error_is_rejected() {
    let s = sim();
    let bad = NoiseModel::Pauli("+XX".parse().unwrap());
    assert!(run_campaign(&s, &bad, 1, 0).is_err());
    assert!(s.run_trial(&LogicalInput::Basis(8), &ErrorSpec::Depolarizing(0.0), &mut trial_rng(0, 0)).is_err());
    assert!(s
        .run_trial(&LogicalInput::Amplitudes(vec![c(1.0)]), &ErrorSpec::Depolarizing(0.0), &mut trial_rng(0, 0))
        .is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arbitrary_single_qubit_matrix_is_corrected(seed in any::<u64>(), qubit in 1usize..=8) {
        let s = sim();
        let mut rng = trial_rng(seed, 0);
        let matrix = random_matrix(&mut rng);
        let r = s.run_trial(&LogicalInput::Random, &ErrorSpec::Matrix { matrix, qubit }, &mut rng).unwrap();
        prop_assert!(r.success, "{:?}", r);
    }

    #[test]
    fn matrix_action_is_linear(seed in any::<u64>(), qubit in 1usize..=3) {
        let mut rng = trial_rng(seed, 1);
        let m = random_matrix(&mut rng);
        let v = StateVector::from_amplitudes((0..8).map(|_| random_matrix(&mut rng)[0][0]).collect()).unwrap();
        let w = StateVector::from_amplitudes((0..8).map(|_| random_matrix(&mut rng)[0][1]).collect()).unwrap();
        let lhs = apply_single_qubit(&m, qubit, &v.add(&w).unwrap()).unwrap();
        let rhs = apply_single_qubit(&m, qubit, &v).unwrap().add(&apply_single_qubit(&m, qubit, &w).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs).unwrap() < 1e-9);
    }
}
